#include "graph.hpp"

#include <algorithm>
#include <set>

#include "errors.hpp"
#include "json_io.hpp"

namespace commsched {

bool is_transfer(OpKind k) { return k == OpKind::Recv || k == OpKind::Send; }

std::string_view kind_name(OpKind k) {
  switch (k) {
    case OpKind::Compute: return "compute";
    case OpKind::Recv: return "recv";
    case OpKind::Send: return "send";
    case OpKind::PsAggregate: return "ps_aggregate";
    case OpKind::PsRead: return "ps_read";
    case OpKind::PsUpdate: return "ps_update";
  }
  return "compute";
}

OpKind kind_from_name(std::string_view s) {
  if (s == "compute") return OpKind::Compute;
  if (s == "recv") return OpKind::Recv;
  if (s == "send") return OpKind::Send;
  if (s == "ps_aggregate") return OpKind::PsAggregate;
  if (s == "ps_read") return OpKind::PsRead;
  if (s == "ps_update") return OpKind::PsUpdate;
  throw ValidationError("unknown op kind: " + std::string(s));
}

std::string_view unit_name(ResourceUnit u) {
  return u == ResourceUnit::Compute ? "compute" : "channel";
}

ResourceUnit unit_from_name(std::string_view s) {
  if (s == "compute") return ResourceUnit::Compute;
  if (s == "channel") return ResourceUnit::Channel;
  throw ValidationError("unknown resource unit: " + std::string(s));
}

std::string ResourceId::key() const {
  std::string k = device;
  k += '/';
  k += unit_name(unit);
  k += '/';
  k += name;
  return k;
}

Graph Graph::create(std::string name, Partition partition, std::vector<Op> ops,
                    std::vector<Edge> edges) {
  Graph g;
  g.name_ = std::move(name);
  g.partition_ = partition;
  g.ops_ = std::move(ops);
  g.edges_ = std::move(edges);
  std::sort(g.ops_.begin(), g.ops_.end(),
            [](const Op& a, const Op& b) { return a.id < b.id; });
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()),
                 g.edges_.end());
  g.build_adjacency();
  g.validate();
  return g;
}

void Graph::build_adjacency() {
  index_.clear();
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (ops_[i].id.empty()) throw ValidationError("op has empty id");
    auto [it, inserted] = index_.emplace(ops_[i].id, i);
    if (!inserted) throw ValidationError("duplicate op id: " + ops_[i].id);
  }
  preds_.assign(ops_.size(), {});
  succs_.assign(ops_.size(), {});
  for (const auto& [from, to] : edges_) {
    auto fi = index_.find(from);
    auto ti = index_.find(to);
    if (fi == index_.end())
      throw ValidationError("edge " + from + " -> " + to + ": unknown op " +
                            from);
    if (ti == index_.end())
      throw ValidationError("edge " + from + " -> " + to + ": unknown op " +
                            to);
    if (fi->second == ti->second)
      throw ValidationError("edge " + from + " -> " + to + ": self loop");
    succs_[fi->second].push_back(ti->second);
    preds_[ti->second].push_back(fi->second);
  }
  for (auto& v : preds_) std::sort(v.begin(), v.end());
  for (auto& v : succs_) std::sort(v.begin(), v.end());
}

void Graph::validate() const {
  if (ops_.empty()) throw ValidationError("graph has no ops");
  for (const Op& op : ops_) {
    if (op.bytes && !is_transfer(op.kind))
      throw ValidationError("op " + op.id + ": bytes set on non-transfer op");
    if (op.bytes && *op.bytes < 0)
      throw ValidationError("op " + op.id + ": negative bytes");
    if (op.time_us && *op.time_us < 0)
      throw ValidationError("op " + op.id + ": negative time_us");
    if (is_transfer(op.kind) && op.resource.unit != ResourceUnit::Channel)
      throw ValidationError("op " + op.id +
                            ": transfer op assigned to a compute resource");
    if (!is_transfer(op.kind) && op.resource.unit != ResourceUnit::Compute)
      throw ValidationError("op " + op.id +
                            ": non-transfer op assigned to a channel resource");
  }
  if (partition_ == Partition::Worker) {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      if (ops_[i].kind == OpKind::Recv && !preds_[i].empty())
        throw ValidationError("op " + ops_[i].id +
                              ": recv op has incoming edge");
      if (ops_[i].kind == OpKind::Send && !succs_[i].empty())
        throw ValidationError("op " + ops_[i].id +
                              ": send op has outgoing edge");
    }
  }
  // Cycle check: iterative DFS with colors (0 new, 1 on stack, 2 done).
  std::vector<int> color(ops_.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < ops_.size(); ++root) {
    if (color[root] != 0) continue;
    stack.push_back(root);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      if (color[v] == 0) {
        color[v] = 1;
        for (std::size_t w : succs_[v]) {
          if (color[w] == 1)
            throw ValidationError("cycle detected at op " + ops_[w].id);
          if (color[w] == 0) stack.push_back(w);
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
}

bool Graph::has_op(std::string_view id) const {
  return index_.find(std::string(id)) != index_.end();
}

std::size_t Graph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end())
    throw DomainError("unknown op: " + std::string(id));
  return it->second;
}

std::vector<std::string> Graph::topo_order() const {
  // Longest distance from any root; edges always go to strictly deeper ops,
  // so sorting by (depth, id) yields a valid deterministic order.
  std::vector<std::size_t> depth(ops_.size(), 0);
  std::vector<std::size_t> missing(ops_.size());
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    missing[i] = preds_[i].size();
    if (missing[i] == 0) queue.push_back(i);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t v = queue[head];
    for (std::size_t w : succs_[v]) {
      depth[w] = std::max(depth[w], depth[v] + 1);
      if (--missing[w] == 0) queue.push_back(w);
    }
  }
  std::vector<std::size_t> order(ops_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (depth[a] != depth[b]) return depth[a] < depth[b];
    return ops_[a].id < ops_[b].id;
  });
  std::vector<std::string> ids;
  ids.reserve(order.size());
  for (std::size_t i : order) ids.push_back(ops_[i].id);
  return ids;
}

std::vector<std::string> Graph::recv_ids() const {
  std::vector<std::string> out;
  for (const Op& op : ops_)
    if (op.kind == OpKind::Recv) out.push_back(op.id);
  return out;
}

std::vector<ResourceId> Graph::resources() const {
  std::set<ResourceId> seen;
  for (const Op& op : ops_) seen.insert(op.resource);
  return {seen.begin(), seen.end()};
}

Graph Graph::parse(std::string_view json_text) {
  Json doc = parse_json(json_text, "graph");
  if (!doc.is_object()) throw ValidationError("graph document must be an object");
  for (auto& [key, value] : doc.items()) {
    if (key != "name" && key != "partition" && key != "ops" && key != "edges")
      throw ValidationError("graph document has unknown key: " + key);
  }
  if (!doc.contains("name") || !doc["name"].is_string())
    throw ValidationError("graph document needs a string \"name\"");
  if (!doc.contains("partition") || !doc["partition"].is_string())
    throw ValidationError("graph document needs a string \"partition\"");
  std::string part = doc["partition"].get<std::string>();
  Partition partition;
  if (part == "worker") {
    partition = Partition::Worker;
  } else if (part == "cluster") {
    partition = Partition::Cluster;
  } else {
    throw ValidationError("unknown partition: " + part);
  }
  if (!doc.contains("ops") || !doc["ops"].is_array())
    throw ValidationError("graph document needs an \"ops\" array");
  std::vector<Op> ops;
  for (const Json& jop : doc["ops"]) {
    if (!jop.is_object()) throw ValidationError("op entry must be an object");
    Op op;
    if (!jop.contains("id") || !jop["id"].is_string())
      throw ValidationError("op entry needs a string \"id\"");
    op.id = jop["id"].get<std::string>();
    if (!jop.contains("kind") || !jop["kind"].is_string())
      throw ValidationError("op " + op.id + ": needs a string \"kind\"");
    op.kind = kind_from_name(jop["kind"].get<std::string>());
    if (!jop.contains("resource") || !jop["resource"].is_object())
      throw ValidationError("op " + op.id + ": needs a \"resource\" object");
    const Json& jres = jop["resource"];
    if (!jres.contains("device") || !jres["device"].is_string() ||
        !jres.contains("unit") || !jres["unit"].is_string() ||
        !jres.contains("name") || !jres["name"].is_string())
      throw ValidationError("op " + op.id +
                            ": resource needs device/unit/name strings");
    op.resource.device = jres["device"].get<std::string>();
    op.resource.unit = unit_from_name(jres["unit"].get<std::string>());
    op.resource.name = jres["name"].get<std::string>();
    if (jop.contains("time_us")) {
      if (!jop["time_us"].is_number_integer())
        throw ValidationError("op " + op.id + ": time_us must be an integer");
      op.time_us = jop["time_us"].get<std::int64_t>();
    }
    if (jop.contains("bytes")) {
      if (!jop["bytes"].is_number_integer())
        throw ValidationError("op " + op.id + ": bytes must be an integer");
      op.bytes = jop["bytes"].get<std::int64_t>();
    }
    ops.push_back(std::move(op));
  }
  std::vector<Edge> edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array())
      throw ValidationError("graph \"edges\" must be an array");
    for (const Json& je : doc["edges"]) {
      if (!je.is_array() || je.size() != 2 || !je[0].is_string() ||
          !je[1].is_string())
        throw ValidationError("edge entry must be a [from, to] string pair");
      edges.emplace_back(je[0].get<std::string>(), je[1].get<std::string>());
    }
  }
  return create(doc["name"].get<std::string>(), partition, std::move(ops),
                std::move(edges));
}

std::string Graph::serialize() const {
  Json doc;
  doc["name"] = name_;
  doc["partition"] = partition_ == Partition::Worker ? "worker" : "cluster";
  doc["ops"] = Json::array();
  for (const Op& op : ops_) {
    Json jop;
    jop["id"] = op.id;
    jop["kind"] = kind_name(op.kind);
    jop["resource"] = {{"device", op.resource.device},
                       {"unit", unit_name(op.resource.unit)},
                       {"name", op.resource.name}};
    if (op.time_us) jop["time_us"] = *op.time_us;
    if (op.bytes) jop["bytes"] = *op.bytes;
    doc["ops"].push_back(std::move(jop));
  }
  doc["edges"] = Json::array();
  for (const auto& [from, to] : edges_)
    doc["edges"].push_back(Json::array({from, to}));
  return dump_json(doc);
}

}  // namespace commsched
