#pragma once

// Shared fixtures for the unit suites. The four-op graph below is the
// canonical worked example: two parameter transfers on one channel feeding
// two compute ops on one core. Transfer order decides whether the core
// idles, so every layer (properties, schedulers, simulator, metrics) has
// hand-checked expected values against it.

#include <string>

#include "graph.hpp"

namespace fixtures {

inline const char* kToyJson = R"({
  "name": "toy",
  "partition": "worker",
  "ops": [
    {"id": "op1", "kind": "compute",
     "resource": {"device": "w0", "unit": "compute", "name": "cpu0"},
     "time_us": 4},
    {"id": "op2", "kind": "compute",
     "resource": {"device": "w0", "unit": "compute", "name": "cpu0"},
     "time_us": 2},
    {"id": "recv1", "kind": "recv",
     "resource": {"device": "w0", "unit": "channel", "name": "net0"},
     "time_us": 3},
    {"id": "recv2", "kind": "recv",
     "resource": {"device": "w0", "unit": "channel", "name": "net0"},
     "time_us": 1}
  ],
  "edges": [["recv1", "op1"], ["op1", "op2"], ["recv2", "op2"]]
})";

inline commsched::Graph toy_graph() {
  return commsched::Graph::parse(kToyJson);
}

inline commsched::ResourceId cpu(const std::string& device,
                                 const std::string& name = "cpu0") {
  return {device, commsched::ResourceUnit::Compute, name};
}

inline commsched::ResourceId net(const std::string& device,
                                 const std::string& name = "net0") {
  return {device, commsched::ResourceUnit::Channel, name};
}

inline commsched::Op compute_op(const std::string& id,
                                const commsched::ResourceId& r,
                                std::int64_t us) {
  commsched::Op op;
  op.id = id;
  op.kind = commsched::OpKind::Compute;
  op.resource = r;
  op.time_us = us;
  return op;
}

inline commsched::Op recv_op(const std::string& id,
                             const commsched::ResourceId& r, std::int64_t us) {
  commsched::Op op;
  op.id = id;
  op.kind = commsched::OpKind::Recv;
  op.resource = r;
  op.time_us = us;
  return op;
}

}  // namespace fixtures
