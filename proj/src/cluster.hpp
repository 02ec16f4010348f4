#pragma once

#include <cstdint>
#include <string>

#include "graph.hpp"
#include "schedule.hpp"
#include "time_oracle.hpp"

namespace commsched {

// Replicates a worker DAG across n_workers devices in model-replica mode,
// placing its parameters (one per recv root, ascending id, round-robin)
// across n_ps parameter servers. Each worker-PS pair gets one channel; each
// parameter gets a gradient push per worker plus aggregate/update/read ops
// of duration ps_op_time_us on its server.
Graph expand_to_mr(const Graph& worker, int n_workers, int n_ps,
                   std::int64_t ps_op_time_us);

// Runs tic/tac/random on a worker graph directly; on a cluster graph, per
// worker partition with the results merged. Random draws an independent
// derived seed per worker. time may be null except for tac.
PrioritySchedule schedule_for(const Graph& g, const std::string& algo,
                              PropertyMode mode, std::uint64_t seed,
                              const TimeOracle* time);

}  // namespace commsched
