#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "graph.hpp"
#include "json_io.hpp"
#include "time_oracle.hpp"

namespace commsched {

// Which consumers contribute to a recv's impending-communication value.
// Literal: only consumers depending on more than one outstanding recv.
// Amended (default): single-dependency consumers contribute as well, so the
// value is the minimum over all consumers and never stays unbounded for a
// recv that has any consumer.
enum class PropertyMode { Literal, Amended };

std::string_view property_mode_name(PropertyMode m);
PropertyMode property_mode_from_name(std::string_view s);

// Unbounded sentinel: nullopt sorts above every finite duration.
using MaybeDuration = std::optional<std::int64_t>;

inline bool duration_less(MaybeDuration a, MaybeDuration b) {
  if (!b) return a.has_value();
  if (!a) return false;
  return *a < *b;
}

inline MaybeDuration duration_min(MaybeDuration a, MaybeDuration b) {
  return duration_less(a, b) ? a : b;
}

struct PropertyTable {
  PropertyMode mode = PropertyMode::Amended;
  // dep: per op, the recv ops it directly or transitively depends on (a recv
  // includes itself). Vectors sorted ascending.
  std::map<std::string, std::vector<std::string>> dep;
  // M: outstanding communication time among an op's dependencies.
  std::map<std::string, std::int64_t> m;
  // P: compute unlocked by completing this recv alone. Keys = outstanding set.
  std::map<std::string, std::int64_t> p;
  // M+: minimum outstanding communication activating some consumer.
  std::map<std::string, MaybeDuration> m_plus;

  Json to_json() const;
};

std::map<std::string, std::vector<std::string>> find_dependencies(
    const Graph& g);

PropertyTable update_properties(const Graph& g, const TimeOracle& time,
                                const std::set<std::string>& outstanding,
                                PropertyMode mode = PropertyMode::Amended);

}  // namespace commsched
