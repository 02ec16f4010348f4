#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "graph.hpp"
#include "synthetic.hpp"
#include "time_oracle.hpp"

using namespace commsched;

namespace {

std::int64_t total_time(const Graph& g, OpKind kind) {
  std::int64_t sum = 0;
  for (const Op& op : g.ops())
    if (op.kind == kind) sum += op.time_us.value_or(0);
  return sum;
}

std::size_t count_kind(const Graph& g, OpKind kind) {
  std::size_t n = 0;
  for (const Op& op : g.ops())
    if (op.kind == kind) ++n;
  return n;
}

}  // namespace

TEST_CASE("chain generator pairs each transfer with one compute") {
  SyntheticSpec spec;
  spec.shape = Shape::Chain;
  spec.layers = 3;
  spec.params_per_layer = 1;
  spec.comm_comp_ratio = Rational(1, 1);
  spec.seed = 42;
  const Graph g = generate_synthetic(spec);
  CHECK(g.name() == "chain-l3-k1-r1-1-s42");
  CHECK(count_kind(g, OpKind::Recv) == 3);
  CHECK(count_kind(g, OpKind::Compute) == 3);
  // Ratio 1 is achievable exactly: channel and compute totals match.
  CHECK(total_time(g, OpKind::Recv) == total_time(g, OpKind::Compute));
  // recvNNN feeds compNNN and the computes form a chain.
  CHECK(std::count(g.edges().begin(), g.edges().end(),
                   Edge{"recv000", "comp000"}) == 1);
  CHECK(std::count(g.edges().begin(), g.edges().end(),
                   Edge{"comp000", "comp001"}) == 1);
  CHECK(g.edges().size() == 5);
}

TEST_CASE("layered generator fans each layer's transfers into one compute") {
  SyntheticSpec spec;
  spec.shape = Shape::Layered;
  spec.layers = 2;
  spec.params_per_layer = 2;
  spec.seed = 7;
  const Graph g = generate_synthetic(spec);
  CHECK(count_kind(g, OpKind::Recv) == 4);
  CHECK(count_kind(g, OpKind::Compute) == 2);
  CHECK(std::count(g.edges().begin(), g.edges().end(),
                   Edge{"recv000", "comp000"}) == 1);
  CHECK(std::count(g.edges().begin(), g.edges().end(),
                   Edge{"recv001", "comp000"}) == 1);
  CHECK(std::count(g.edges().begin(), g.edges().end(),
                   Edge{"recv002", "comp001"}) == 1);
  CHECK(std::count(g.edges().begin(), g.edges().end(),
                   Edge{"comp000", "comp001"}) == 1);
}

TEST_CASE("series-parallel graphs stay acyclic and keep one compute per recv") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SyntheticSpec spec;
    spec.shape = Shape::SeriesParallel;
    spec.layers = 5;
    spec.params_per_layer = 1;
    spec.seed = seed;
    const Graph g = generate_synthetic(spec);  // create() validates acyclicity
    CHECK(count_kind(g, OpKind::Recv) == 5);
    CHECK(count_kind(g, OpKind::Compute) == 5);
    CHECK(g.topo_order().size() == 10);
  }
}

TEST_CASE("generation is deterministic per seed and differs across seeds") {
  SyntheticSpec spec;
  spec.shape = Shape::SeriesParallel;
  spec.layers = 4;
  spec.params_per_layer = 1;
  spec.seed = 11;
  const Graph a = generate_synthetic(spec);
  const Graph b = generate_synthetic(spec);
  CHECK(a.serialize() == b.serialize());
  spec.seed = 12;
  const Graph c = generate_synthetic(spec);
  CHECK_FALSE(a.serialize() == c.serialize());
}

TEST_CASE("achieved channel/compute ratio lands within one percent") {
  for (const Rational& ratio :
       {Rational(1, 2), Rational(1, 1), Rational(2, 1)}) {
    SyntheticSpec spec;
    spec.shape = Shape::Layered;
    spec.layers = 3;
    spec.params_per_layer = 2;
    spec.comm_comp_ratio = ratio;
    spec.seed = 5;
    const Graph g = generate_synthetic(spec);
    const std::int64_t recv_total = total_time(g, OpKind::Recv);
    const std::int64_t comp_total = total_time(g, OpKind::Compute);
    // |recv_total / comp_total - ratio| <= ratio / 100
    const Rational achieved(recv_total, comp_total);
    const Rational drift = achieved < ratio ? ratio - achieved
                                            : achieved - ratio;
    CHECK(drift * Rational(100, 1) <= ratio);
  }
}

TEST_CASE("unreachable ratios are refused, not approximated") {
  SyntheticSpec spec;
  spec.shape = Shape::Chain;
  spec.layers = 1;
  spec.params_per_layer = 1;
  spec.comm_comp_ratio = Rational(1, 100000);
  spec.seed = 1;
  CHECK_THROWS_AS(generate_synthetic(spec), ParameterError);
}

TEST_CASE("generator rejects out-of-range parameters") {
  SyntheticSpec spec;
  spec.layers = 0;
  CHECK_THROWS_AS(generate_synthetic(spec), ParameterError);
  spec.layers = 1;
  spec.params_per_layer = 0;
  CHECK_THROWS_AS(generate_synthetic(spec), ParameterError);
  spec.params_per_layer = 1;
  spec.comm_comp_ratio = Rational(0, 1);
  CHECK_THROWS_AS(generate_synthetic(spec), ParameterError);
}
