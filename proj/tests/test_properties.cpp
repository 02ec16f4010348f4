#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "properties.hpp"

using namespace commsched;

namespace {

std::set<std::string> all_recvs(const Graph& g) {
  const auto ids = g.recv_ids();
  return {ids.begin(), ids.end()};
}

}  // namespace

TEST_CASE("unbounded durations sort above every finite value") {
  const MaybeDuration inf;  // nullopt
  CHECK(duration_less(MaybeDuration{3}, inf));
  CHECK_FALSE(duration_less(inf, MaybeDuration{3}));
  CHECK_FALSE(duration_less(inf, inf));
  CHECK(duration_less(MaybeDuration{1}, MaybeDuration{2}));
  CHECK(duration_min(inf, MaybeDuration{5}) == MaybeDuration{5});
  CHECK(duration_min(MaybeDuration{2}, MaybeDuration{5}) == MaybeDuration{2});
}

TEST_CASE("dependency sets close over transitive recv ancestors") {
  const Graph g = fixtures::toy_graph();
  const auto dep = find_dependencies(g);
  CHECK(dep.at("recv1") == std::vector<std::string>{"recv1"});
  CHECK(dep.at("recv2") == std::vector<std::string>{"recv2"});
  CHECK(dep.at("op1") == std::vector<std::string>{"recv1"});
  CHECK(dep.at("op2") == std::vector<std::string>{"recv1", "recv2"});
}

TEST_CASE("property update on the toy graph, declared times") {
  const Graph g = fixtures::toy_graph();
  const TimeOracle time = TimeOracle::declared(g);
  const auto outstanding = all_recvs(g);

  const PropertyTable lit =
      update_properties(g, time, outstanding, PropertyMode::Literal);
  CHECK(lit.m.at("recv1") == 3);
  CHECK(lit.m.at("recv2") == 1);
  CHECK(lit.m.at("op1") == 3);
  CHECK(lit.m.at("op2") == 4);
  CHECK(lit.p.at("recv1") == 4);
  CHECK(lit.p.at("recv2") == 0);
  CHECK(lit.m_plus.at("recv1") == MaybeDuration{4});
  CHECK(lit.m_plus.at("recv2") == MaybeDuration{4});

  // The amended rule lets op1, which waits on recv1 alone, pull recv1's
  // impending load down to 3.
  const PropertyTable amd =
      update_properties(g, time, outstanding, PropertyMode::Amended);
  CHECK(amd.m == lit.m);
  CHECK(amd.p == lit.p);
  CHECK(amd.m_plus.at("recv1") == MaybeDuration{3});
  CHECK(amd.m_plus.at("recv2") == MaybeDuration{4});
}

TEST_CASE("property update narrows with the outstanding set") {
  const Graph g = fixtures::toy_graph();
  const TimeOracle time = TimeOracle::declared(g);

  const PropertyTable t =
      update_properties(g, time, {"recv2"}, PropertyMode::Amended);
  // recv1 already delivered: op1 has no outstanding dependencies and op2
  // waits on recv2 alone.
  CHECK(t.m.at("op1") == 0);
  CHECK(t.m.at("op2") == 1);
  CHECK(t.p.count("recv1") == 0);
  CHECK(t.p.at("recv2") == 2);
  CHECK(t.m_plus.at("recv2") == MaybeDuration{1});
}

TEST_CASE("a recv with no consumers keeps unbounded impending load") {
  using fixtures::net;
  using fixtures::recv_op;
  const Graph g = Graph::create(
      "g", Partition::Worker,
      {recv_op("r1", net("w0"), 2), recv_op("r2", net("w0"), 5)}, {});
  const TimeOracle time = TimeOracle::declared(g);
  const auto t = update_properties(g, time, all_recvs(g));
  CHECK_FALSE(t.m_plus.at("r1").has_value());
  CHECK_FALSE(t.m_plus.at("r2").has_value());
  CHECK(t.p.at("r1") == 0);
}

TEST_CASE("outstanding set must contain only recv ops") {
  const Graph g = fixtures::toy_graph();
  const TimeOracle time = TimeOracle::declared(g);
  CHECK_THROWS_AS(update_properties(g, time, {"op1"}), DomainError);
  CHECK_THROWS_AS(update_properties(g, time, {"ghost"}), DomainError);
}

TEST_CASE("property table serializes with null for unbounded loads") {
  using fixtures::net;
  using fixtures::recv_op;
  const Graph g =
      Graph::create("g", Partition::Worker, {recv_op("r", net("w0"), 2)}, {});
  const auto t = update_properties(g, TimeOracle::declared(g), {"r"});
  const Json j = t.to_json();
  CHECK(j["mode"] == "amended");
  CHECK(j["M_plus"]["r"].is_null());
  CHECK(j["M"]["r"] == 2);
  CHECK(j["dep"]["r"][0] == "r");
}

TEST_CASE("property mode names round-trip") {
  CHECK(property_mode_from_name("literal") == PropertyMode::Literal);
  CHECK(property_mode_from_name("amended") == PropertyMode::Amended);
  CHECK(property_mode_name(PropertyMode::Literal) == "literal");
  CHECK_THROWS_AS(property_mode_from_name("other"), ParameterError);
}
