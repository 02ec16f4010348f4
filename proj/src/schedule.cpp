#include "schedule.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"
#include "json_io.hpp"
#include "rng.hpp"

namespace commsched {

bool precedes(const RecvRank& a, const RecvRank& b) {
  std::int64_t ab = std::min(b.p, a.m);
  std::int64_t ba = std::min(a.p, b.m);
  if (ab != ba) return ab < ba;
  if (duration_less(a.m_plus, b.m_plus)) return true;
  if (duration_less(b.m_plus, a.m_plus)) return false;
  return a.id < b.id;
}

PrioritySchedule tic(const Graph& g, PropertyMode mode) {
  std::set<std::string> outstanding;
  for (const std::string& r : g.recv_ids()) outstanding.insert(r);
  TimeOracle unit = TimeOracle::general(g);
  PropertyTable t = update_properties(g, unit, outstanding, mode);

  // Dense rank over M+ values, ascending, unbounded last.
  std::vector<MaybeDuration> values;
  for (const auto& [id, v] : t.m_plus) values.push_back(v);
  std::sort(values.begin(), values.end(), duration_less);
  values.erase(std::unique(values.begin(), values.end()), values.end());

  PrioritySchedule s;
  s.graph_name = g.name();
  s.algorithm = "tic";
  for (const auto& [id, v] : t.m_plus) {
    auto it = std::lower_bound(values.begin(), values.end(), v, duration_less);
    s.priorities[id] = static_cast<int>(it - values.begin());
  }
  s.total_order = values.size() == t.m_plus.size();
  return s;
}

PrioritySchedule tac(const Graph& g, const TimeOracle& time) {
  std::set<std::string> outstanding;
  for (const std::string& r : g.recv_ids()) outstanding.insert(r);

  PrioritySchedule s;
  s.graph_name = g.name();
  s.algorithm = "tac";
  int next = 0;
  while (!outstanding.empty()) {
    PropertyTable t = update_properties(g, time, outstanding);
    // Scan in ascending id order; a later candidate only displaces the
    // incumbent by strictly preceding it, so the result is deterministic
    // even where the comparator is not transitive.
    RecvRank best;
    bool have = false;
    for (const std::string& id : outstanding) {
      RecvRank c{id, t.p.at(id), t.m.at(id), t.m_plus.at(id)};
      if (!have || precedes(c, best)) {
        best = std::move(c);
        have = true;
      }
    }
    s.priorities[best.id] = next++;
    outstanding.erase(best.id);
  }
  s.total_order = true;
  return s;
}

PrioritySchedule random_schedule(const Graph& g, std::uint64_t seed) {
  std::vector<std::string> recvs = g.recv_ids();
  Rng rng(seed);
  shuffle(recvs, rng);
  PrioritySchedule s;
  s.graph_name = g.name();
  s.algorithm = "random";
  for (std::size_t i = 0; i < recvs.size(); ++i)
    s.priorities[recvs[i]] = static_cast<int>(i);
  s.total_order = true;
  return s;
}

std::string serialize_schedule(const PrioritySchedule& s) {
  Json doc;
  doc["graph"] = s.graph_name;
  doc["algorithm"] = s.algorithm;
  doc["priorities"] = Json::object();
  for (const auto& [id, rank] : s.priorities) doc["priorities"][id] = rank;
  return dump_json(doc);
}

PrioritySchedule parse_schedule(std::string_view json_text) {
  Json doc = parse_json(json_text, "schedule");
  if (!doc.is_object() || !doc.contains("graph") ||
      !doc["graph"].is_string() || !doc.contains("algorithm") ||
      !doc["algorithm"].is_string() || !doc.contains("priorities") ||
      !doc["priorities"].is_object())
    throw ValidationError(
        "schedule document needs graph, algorithm and priorities");
  PrioritySchedule s;
  s.graph_name = doc["graph"].get<std::string>();
  s.algorithm = doc["algorithm"].get<std::string>();
  if (s.algorithm != "tic" && s.algorithm != "tac" && s.algorithm != "random")
    throw ValidationError("unknown schedule algorithm: " + s.algorithm);
  for (auto& [id, rank] : doc["priorities"].items()) {
    if (!rank.is_number_integer() || rank.get<std::int64_t>() < 0)
      throw ValidationError("priority for " + id +
                            " must be a non-negative integer");
    s.priorities[id] = rank.get<int>();
  }
  // Total order iff priorities are a bijection onto [0, n).
  std::set<int> seen;
  for (const auto& [id, rank] : s.priorities) seen.insert(rank);
  s.total_order =
      seen.size() == s.priorities.size() &&
      (s.priorities.empty() ||
       (*seen.begin() == 0 &&
        *seen.rbegin() == static_cast<int>(s.priorities.size()) - 1));
  return s;
}

}  // namespace commsched
