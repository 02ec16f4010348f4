#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "graph.hpp"
#include "rational.hpp"

namespace commsched {

enum class Shape { Chain, Layered, SeriesParallel };

std::string_view shape_name(Shape s);
Shape shape_from_name(std::string_view s);

struct SyntheticSpec {
  Shape shape = Shape::Chain;
  int layers = 1;
  int params_per_layer = 1;
  // Total channel time divided by total compute time.
  Rational comm_comp_ratio{1, 1};
  std::uint64_t seed = 0;
};

// Deterministic worker DAG with layers*params_per_layer recv roots and
// integer-microsecond times whose channel/compute ratio hits
// comm_comp_ratio within 1%.
Graph generate_synthetic(const SyntheticSpec& spec);

}  // namespace commsched
