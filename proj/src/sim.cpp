#include "sim.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "errors.hpp"
#include "rng.hpp"

namespace commsched {

namespace {

constexpr std::uint64_t kNoiseStreamSalt = 0x9e3779b97f4a7c15ull;

struct OpState {
  std::size_t resource = 0;
  std::int64_t duration = 0;
  int priority = -1;       // -1 = unprioritized
  int gate_rank = -1;      // dense per-channel rank after noise swaps
  int original_rank = -1;  // rank straight from (priority, id)
  bool force_released = false;
};

}  // namespace

std::vector<std::string> worker_devices(const Graph& g) {
  std::set<std::string> devices;
  for (const Op& op : g.ops()) {
    switch (op.kind) {
      case OpKind::Recv:
      case OpKind::Send:
      case OpKind::Compute:
        devices.insert(op.resource.device);
        break;
      default:
        break;
    }
  }
  return {devices.begin(), devices.end()};
}

Graph worker_partition(const Graph& g, const std::string& device) {
  std::vector<Op> ops;
  std::set<std::string> kept;
  for (const Op& op : g.ops()) {
    if (op.resource.device == device) {
      ops.push_back(op);
      kept.insert(op.id);
    }
  }
  if (ops.empty())
    throw DomainError("no ops on device: " + device);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (kept.count(e.first) && kept.count(e.second)) edges.push_back(e);
  return Graph::create(g.name() + "/" + device, Partition::Worker,
                       std::move(ops), std::move(edges));
}

SimReport simulate(const Graph& g, const TimeOracle& time,
                   const PrioritySchedule* schedule, const SimPolicy& policy) {
  time.check_covers(g);
  if (policy.reorder_noise < 0.0 || policy.reorder_noise > 1.0)
    throw ParameterError("reorder_noise must be within [0, 1]");

  const auto& ops = g.ops();
  const std::size_t n = ops.size();
  std::vector<ResourceId> resources = g.resources();
  std::map<ResourceId, std::size_t> resource_index;
  for (std::size_t i = 0; i < resources.size(); ++i)
    resource_index[resources[i]] = i;

  std::vector<OpState> st(n);
  for (std::size_t i = 0; i < n; ++i) {
    st[i].resource = resource_index.at(ops[i].resource);
    st[i].duration = time.at(ops[i].id);
  }
  if (schedule) {
    for (const auto& [id, rank] : schedule->priorities) {
      if (!g.has_op(id))
        throw DomainError("schedule references unknown op: " + id);
      std::size_t i = g.index_of(id);
      if (ops[i].kind != OpKind::Recv)
        throw DomainError("schedule priority on non-recv op: " + id);
      st[i].priority = rank;
    }
  }

  // Dense ranks per channel from (priority, id). Under gating these drive
  // admission; noise may swap a transfer one slot toward the front of the
  // gate sequence. Original ranks are kept either way for violation counts.
  const bool gated = policy.enforcement == Enforcement::CounterGate;
  Rng noise_rng(splitmix64(policy.choice_seed ^ kNoiseStreamSalt));
  for (std::size_t r = 0; r < resources.size(); ++r) {
    if (resources[r].unit != ResourceUnit::Channel) continue;
    std::vector<std::size_t> ranked;
    for (std::size_t i = 0; i < n; ++i)
      if (st[i].resource == r && st[i].priority >= 0) ranked.push_back(i);
    std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
      if (st[a].priority != st[b].priority)
        return st[a].priority < st[b].priority;
      return ops[a].id < ops[b].id;
    });
    for (std::size_t pos = 0; pos < ranked.size(); ++pos)
      st[ranked[pos]].original_rank = static_cast<int>(pos);
    if (!gated) continue;
    if (policy.reorder_noise > 0.0) {
      for (std::size_t pos = 1; pos < ranked.size(); ++pos)
        if (noise_rng.unit() < policy.reorder_noise)
          std::swap(ranked[pos - 1], ranked[pos]);
    }
    for (std::size_t pos = 0; pos < ranked.size(); ++pos)
      st[ranked[pos]].gate_rank = static_cast<int>(pos);
  }

  Rng choice_rng(policy.choice_seed);
  std::vector<std::size_t> missing(n);
  std::vector<std::vector<std::size_t>> queue(resources.size());
  for (std::size_t i = 0; i < n; ++i) {
    missing[i] = g.preds()[i].size();
    if (missing[i] == 0) queue[st[i].resource].push_back(i);
  }

  constexpr std::size_t kIdle = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> running(resources.size(), kIdle);
  std::vector<std::int64_t> run_end(resources.size(), 0);
  std::vector<std::int64_t> counter(resources.size(), 0);
  std::vector<std::vector<int>> completion_ranks(resources.size());

  SimReport report;
  report.resources = resources;
  std::int64_t t = 0;
  std::size_t finished = 0;
  std::int64_t forced = 0;

  auto admitted = [&](std::size_t i) {
    if (!gated || st[i].gate_rank < 0) return true;
    if (st[i].force_released) return true;
    return static_cast<std::int64_t>(st[i].gate_rank) <=
           counter[st[i].resource];
  };

  auto complete_ending_now = [&]() {
    bool any = false;
    for (std::size_t r = 0; r < resources.size(); ++r) {
      if (running[r] == kIdle || run_end[r] != t) continue;
      std::size_t i = running[r];
      running[r] = kIdle;
      ++finished;
      any = true;
      if (st[i].priority >= 0 &&
          resources[r].unit == ResourceUnit::Channel) {
        ++counter[r];
        completion_ranks[r].push_back(st[i].original_rank);
      }
      for (std::size_t w : g.succs()[i])
        if (--missing[w] == 0) queue[st[w].resource].push_back(w);
    }
    return any;
  };

  auto try_start = [&](std::size_t r) {
    if (running[r] != kIdle || queue[r].empty()) return false;
    std::sort(queue[r].begin(), queue[r].end());
    // Candidates: the admitted ops holding the lowest priority number, plus
    // every unprioritized op.
    std::vector<std::size_t> cands;
    int best_priority = -1;
    for (std::size_t i : queue[r]) {
      if (st[i].priority < 0 || !admitted(i)) continue;
      if (best_priority < 0 || st[i].priority < best_priority)
        best_priority = st[i].priority;
    }
    for (std::size_t i : queue[r]) {
      if (st[i].priority < 0) {
        cands.push_back(i);
      } else if (admitted(i) && st[i].priority == best_priority) {
        cands.push_back(i);
      }
    }
    if (cands.empty()) return false;
    std::size_t pick = cands.size() == 1
                           ? cands.front()
                           : cands[static_cast<std::size_t>(
                                 choice_rng.bounded(cands.size()))];
    queue[r].erase(std::find(queue[r].begin(), queue[r].end(), pick));
    running[r] = pick;
    run_end[r] = t + st[pick].duration;
    report.events.push_back(SimEvent{g.ops()[pick].id, r, t, run_end[r]});
    return true;
  };

  while (finished < n) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t r = 0; r < resources.size(); ++r)
        progress = try_start(r) || progress;
      progress = complete_ending_now() || progress;
    }
    if (finished == n) break;

    bool any_running = false;
    std::int64_t next_t = std::numeric_limits<std::int64_t>::max();
    for (std::size_t r = 0; r < resources.size(); ++r) {
      if (running[r] == kIdle) continue;
      any_running = true;
      next_t = std::min(next_t, run_end[r]);
    }
    if (!any_running) {
      // Every ready op is gate-blocked; release the lowest-rank blocked
      // transfer so the run can make progress and count the breach.
      std::size_t victim = kIdle;
      for (std::size_t r = 0; r < resources.size(); ++r) {
        for (std::size_t i : queue[r]) {
          if (st[i].gate_rank < 0 || admitted(i)) continue;
          if (victim == kIdle ||
              st[i].gate_rank < st[victim].gate_rank ||
              (st[i].gate_rank == st[victim].gate_rank &&
               ops[i].id < ops[victim].id))
            victim = i;
        }
      }
      if (victim == kIdle)
        throw DomainError("simulation stalled with no runnable op");
      st[victim].force_released = true;
      ++forced;
      continue;
    }
    t = next_t;
    complete_ending_now();
  }

  report.makespan = 0;
  for (const SimEvent& e : report.events) {
    report.makespan = std::max(report.makespan, e.end);
    report.busy[resources[e.resource].key()] += e.end - e.start;
  }
  std::sort(report.events.begin(), report.events.end(),
            [](const SimEvent& a, const SimEvent& b) {
              if (a.start != b.start) return a.start < b.start;
              if (a.resource != b.resource) return a.resource < b.resource;
              return a.op < b.op;
            });

  // Violations: pairwise rank inversions in each channel's completion
  // sequence, plus any forced releases.
  std::int64_t inversions = 0;
  for (const auto& seq : completion_ranks)
    for (std::size_t i = 0; i < seq.size(); ++i)
      for (std::size_t j = i + 1; j < seq.size(); ++j)
        if (seq[i] > seq[j]) ++inversions;
  report.violations = inversions + forced;
  return report;
}

IterationStats iteration_stats(const Graph& g, const SimReport& report) {
  IterationStats stats;
  for (const std::string& d : worker_devices(g))
    stats.per_worker_makespan[d] = 0;
  for (const SimEvent& e : report.events) {
    auto it = stats.per_worker_makespan.find(
        report.resources[e.resource].device);
    if (it != stats.per_worker_makespan.end())
      it->second = std::max(it->second, e.end);
  }
  if (stats.per_worker_makespan.empty())
    throw DomainError("graph has no worker devices");
  std::int64_t lo = std::numeric_limits<std::int64_t>::max();
  std::int64_t hi = 0;
  for (const auto& [d, m] : stats.per_worker_makespan) {
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  stats.iteration_time = hi;
  stats.straggler = hi == 0 ? Rational() : Rational(hi - lo, hi);
  return stats;
}

std::pair<SimReport, IterationStats> simulate_cluster(
    const Graph& g, const TimeOracle& time,
    const std::map<std::string, PrioritySchedule>& per_worker_schedules,
    const SimPolicy& policy) {
  if (g.partition() != Partition::Cluster)
    throw DomainError("cluster simulation needs a cluster graph");
  PrioritySchedule merged;
  merged.graph_name = g.name();
  merged.algorithm = "random";
  for (const auto& [device, sched] : per_worker_schedules) {
    for (const auto& [id, rank] : sched.priorities) {
      if (!g.has_op(id))
        throw DomainError("schedule references unknown op: " + id);
      if (g.op(id).resource.device != device)
        throw DomainError("schedule for " + device +
                          " references op on another device: " + id);
      merged.priorities[id] = rank;
    }
  }
  SimReport report = simulate(
      g, time, merged.priorities.empty() ? nullptr : &merged, policy);
  return {report, iteration_stats(g, report)};
}

Json SimReport::to_json() const {
  Json j;
  j["makespan_us"] = makespan;
  j["violations"] = violations;
  j["busy"] = Json::object();
  for (const auto& [key, us] : busy) j["busy"][key] = us;
  j["events"] = Json::array();
  for (const SimEvent& e : events) {
    Json je;
    je["op"] = e.op;
    je["resource"] = resources[e.resource].key();
    je["start_us"] = e.start;
    je["end_us"] = e.end;
    j["events"].push_back(std::move(je));
  }
  return j;
}

Json SimReport::chrome_trace() const {
  std::vector<std::string> devices;
  for (const ResourceId& r : resources) devices.push_back(r.device);
  std::sort(devices.begin(), devices.end());
  devices.erase(std::unique(devices.begin(), devices.end()), devices.end());
  auto device_index = [&](const std::string& d) {
    return static_cast<int>(
        std::lower_bound(devices.begin(), devices.end(), d) - devices.begin());
  };

  Json trace = Json::array();
  for (std::size_t d = 0; d < devices.size(); ++d) {
    Json meta;
    meta["name"] = "process_name";
    meta["ph"] = "M";
    meta["pid"] = static_cast<int>(d);
    meta["args"] = {{"name", devices[d]}};
    trace.push_back(std::move(meta));
  }
  for (std::size_t r = 0; r < resources.size(); ++r) {
    Json meta;
    meta["name"] = "thread_name";
    meta["ph"] = "M";
    meta["pid"] = device_index(resources[r].device);
    meta["tid"] = static_cast<int>(r);
    meta["args"] = {{"name", std::string(unit_name(resources[r].unit)) + "/" +
                                 resources[r].name}};
    trace.push_back(std::move(meta));
  }
  for (const SimEvent& e : events) {
    Json je;
    je["name"] = e.op;
    je["cat"] = unit_name(resources[e.resource].unit);
    je["ph"] = "X";
    je["pid"] = device_index(resources[e.resource].device);
    je["tid"] = static_cast<int>(e.resource);
    je["ts"] = e.start;
    je["dur"] = e.end - e.start;
    trace.push_back(std::move(je));
  }
  Json j;
  j["traceEvents"] = std::move(trace);
  return j;
}

Json IterationStats::to_json() const {
  Json j;
  j["per_worker_makespan_us"] = Json::object();
  for (const auto& [d, m] : per_worker_makespan)
    j["per_worker_makespan_us"][d] = m;
  j["iteration_us"] = iteration_time;
  j["straggler"] = {{"num", straggler.num}, {"den", straggler.den}};
  return j;
}

}  // namespace commsched
