#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "json_io.hpp"
#include "rational.hpp"
#include "sim.hpp"
#include "time_oracle.hpp"

namespace commsched {

struct MakespanBounds {
  std::int64_t upper = 0;  // every op strictly in sequence
  std::int64_t lower = 0;  // busiest single resource
};

// upper = total time over all ops; lower = max per-resource total.
MakespanBounds makespan_bounds(const Graph& g, const TimeOracle& time);

// Scheduling efficiency (U - m) / (U - L); 1 at the lower bound, 0 at the
// upper. Degenerate when U = L.
Rational efficiency(const MakespanBounds& bounds, std::int64_t makespan);

// Best-over-worst headroom (U - L) / L. Degenerate when L = 0.
Rational speedup(const MakespanBounds& bounds);

struct BruteForceResult {
  std::vector<std::string> best_order;  // lexicographically least optimum
  std::int64_t best_makespan = 0;
  std::vector<std::int64_t> distribution;  // distinct makespans, ascending

  Json to_json() const;
};

// Exhausts every recv permutation under counter-gated enforcement. Refuses
// graphs with more than max_recvs recv ops.
BruteForceResult brute_force_best(const Graph& g, const TimeOracle& time,
                                  const SimPolicy& policy, int max_recvs = 8);

// {"U_us", "L_us", "m_us", "E", "S", "straggler"}; E and S are null when
// their denominators degenerate, straggler is null for single-worker runs.
Json metrics_report(const MakespanBounds& bounds, std::int64_t makespan,
                    const std::optional<Rational>& straggler);

}  // namespace commsched
