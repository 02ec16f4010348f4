#include "metrics.hpp"

#include <algorithm>
#include <map>

#include "errors.hpp"

namespace commsched {

MakespanBounds makespan_bounds(const Graph& g, const TimeOracle& time) {
  time.check_covers(g);
  MakespanBounds b;
  std::map<std::string, std::int64_t> per_resource;
  for (const Op& op : g.ops()) {
    const std::int64_t t = time.at(op.id);
    b.upper += t;
    per_resource[op.resource.key()] += t;
  }
  for (const auto& [key, total] : per_resource)
    b.lower = std::max(b.lower, total);
  return b;
}

Rational efficiency(const MakespanBounds& bounds, std::int64_t makespan) {
  if (bounds.upper == bounds.lower)
    throw DomainError(
        "degenerate bounds (upper = lower): scheduling cannot matter");
  return Rational(bounds.upper - makespan, bounds.upper - bounds.lower);
}

Rational speedup(const MakespanBounds& bounds) {
  if (bounds.lower == 0)
    throw DomainError("degenerate bounds (lower = 0)");
  return Rational(bounds.upper - bounds.lower, bounds.lower);
}

BruteForceResult brute_force_best(const Graph& g, const TimeOracle& time,
                                  const SimPolicy& policy, int max_recvs) {
  std::vector<std::string> recvs = g.recv_ids();
  if (static_cast<int>(recvs.size()) > max_recvs)
    throw ParameterError("brute force refused: " +
                         std::to_string(recvs.size()) + " recv ops exceed " +
                         std::to_string(max_recvs));
  SimPolicy gated = policy;
  gated.enforcement = Enforcement::CounterGate;

  BruteForceResult result;
  std::sort(recvs.begin(), recvs.end());
  bool first = true;
  do {
    PrioritySchedule s;
    s.graph_name = g.name();
    s.algorithm = "random";
    for (std::size_t i = 0; i < recvs.size(); ++i)
      s.priorities[recvs[i]] = static_cast<int>(i);
    s.total_order = true;
    const std::int64_t m =
        simulate(g, time, recvs.empty() ? nullptr : &s, gated).makespan;
    result.distribution.push_back(m);
    if (first || m < result.best_makespan) {
      result.best_makespan = m;
      result.best_order = recvs;
      first = false;
    }
  } while (std::next_permutation(recvs.begin(), recvs.end()));

  std::sort(result.distribution.begin(), result.distribution.end());
  result.distribution.erase(
      std::unique(result.distribution.begin(), result.distribution.end()),
      result.distribution.end());
  return result;
}

Json BruteForceResult::to_json() const {
  Json j;
  j["order"] = best_order;
  j["makespan_us"] = best_makespan;
  j["distribution"] = distribution;
  return j;
}

Json metrics_report(const MakespanBounds& bounds, std::int64_t makespan,
                    const std::optional<Rational>& straggler) {
  Json j;
  j["U_us"] = bounds.upper;
  j["L_us"] = bounds.lower;
  j["m_us"] = makespan;
  if (bounds.upper == bounds.lower)
    j["E"] = nullptr;
  else {
    const Rational e = efficiency(bounds, makespan);
    j["E"] = {{"num", e.num}, {"den", e.den}};
  }
  if (bounds.lower == 0)
    j["S"] = nullptr;
  else {
    const Rational s = speedup(bounds);
    j["S"] = {{"num", s.num}, {"den", s.den}};
  }
  if (straggler)
    j["straggler"] = {{"num", straggler->num}, {"den", straggler->den}};
  else
    j["straggler"] = nullptr;
  return j;
}

}  // namespace commsched
