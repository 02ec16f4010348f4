#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graph.hpp"
#include "json_io.hpp"
#include "rational.hpp"
#include "schedule.hpp"
#include "time_oracle.hpp"

namespace commsched {

enum class Enforcement { None, CounterGate };

struct SimPolicy {
  Enforcement enforcement = Enforcement::CounterGate;
  // Seed for uniform choices among equally eligible ready ops.
  std::uint64_t choice_seed = 0;
  // Probability that a gated transfer is released one slot early (swapped
  // with its predecessor in the gate sequence), modeling transport reorder.
  double reorder_noise = 0.0;
};

struct SimEvent {
  std::string op;
  std::size_t resource = 0;  // index into SimReport::resources
  std::int64_t start = 0;
  std::int64_t end = 0;
};

struct SimReport {
  std::int64_t makespan = 0;
  std::vector<ResourceId> resources;
  std::vector<SimEvent> events;  // sorted by (start, resource, op)
  std::map<std::string, std::int64_t> busy;  // resource key -> occupied us
  std::int64_t violations = 0;

  Json to_json() const;
  Json chrome_trace() const;
};

struct IterationStats {
  std::map<std::string, std::int64_t> per_worker_makespan;
  std::int64_t iteration_time = 0;
  Rational straggler;  // share of the iteration the fastest worker waits

  Json to_json() const;
};

// Devices that run worker-side ops (recv/send/compute), as opposed to
// parameter-server devices that only host ps_* ops.
std::vector<std::string> worker_devices(const Graph& g);

// Induced subgraph of the ops on one device (its compute units and channels).
Graph worker_partition(const Graph& g, const std::string& device);

SimReport simulate(const Graph& g, const TimeOracle& time,
                   const PrioritySchedule* schedule, const SimPolicy& policy);

IterationStats iteration_stats(const Graph& g, const SimReport& report);

// One synchronized iteration over a cluster graph with one schedule per
// worker device; devices absent from the map run unenforced.
std::pair<SimReport, IterationStats> simulate_cluster(
    const Graph& g, const TimeOracle& time,
    const std::map<std::string, PrioritySchedule>& per_worker_schedules,
    const SimPolicy& policy);

}  // namespace commsched
