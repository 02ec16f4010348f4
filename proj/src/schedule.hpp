#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "graph.hpp"
#include "properties.hpp"
#include "time_oracle.hpp"

namespace commsched {

struct PrioritySchedule {
  std::string graph_name;
  std::string algorithm;  // "tic" | "tac" | "random"
  std::map<std::string, int> priorities;  // recv op id -> rank, lower first
  bool total_order = false;
};

// Recv properties fed to the order comparator.
struct RecvRank {
  std::string id;
  std::int64_t p = 0;
  std::int64_t m = 0;
  MaybeDuration m_plus;
};

// True when a should transfer before b. Primary rule compares the makespans
// of the two activation orders via min(P_b, M_a) < min(P_a, M_b); ties fall
// through to M+ and then to the op id.
bool precedes(const RecvRank& a, const RecvRank& b);

// Priorities from impending communication load alone, computed under the
// unit-cost oracle; independent of measured timings. Equal loads share a
// priority number (dense ranks, unbounded load last).
PrioritySchedule tic(const Graph& g, PropertyMode mode = PropertyMode::Amended);

// Timing-aware: repeatedly recomputes properties over the outstanding set and
// emits the comparator minimum, yielding a total order.
PrioritySchedule tac(const Graph& g, const TimeOracle& time);

// Seeded uniform permutation of the recv ops.
PrioritySchedule random_schedule(const Graph& g, std::uint64_t seed);

std::string serialize_schedule(const PrioritySchedule& s);
PrioritySchedule parse_schedule(std::string_view json_text);

}  // namespace commsched
