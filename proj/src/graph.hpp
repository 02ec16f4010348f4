#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace commsched {

enum class OpKind { Compute, Recv, Send, PsAggregate, PsRead, PsUpdate };

enum class ResourceUnit { Compute, Channel };

bool is_transfer(OpKind k);
std::string_view kind_name(OpKind k);
OpKind kind_from_name(std::string_view s);
std::string_view unit_name(ResourceUnit u);
ResourceUnit unit_from_name(std::string_view s);

// A schedulable execution resource. Identity is the full triple; two ops
// share a resource only if all three fields match.
struct ResourceId {
  std::string device;
  ResourceUnit unit = ResourceUnit::Compute;
  std::string name;

  // Canonical display/lookup key, e.g. "w0/channel/net0".
  std::string key() const;

  friend bool operator==(const ResourceId& a, const ResourceId& b) {
    return a.device == b.device && a.unit == b.unit && a.name == b.name;
  }
  friend bool operator<(const ResourceId& a, const ResourceId& b) {
    if (a.device != b.device) return a.device < b.device;
    if (a.unit != b.unit) return a.unit < b.unit;
    return a.name < b.name;
  }
};

struct Op {
  std::string id;
  OpKind kind = OpKind::Compute;
  ResourceId resource;
  std::optional<std::int64_t> time_us;
  std::optional<std::int64_t> bytes;

  friend bool operator==(const Op& a, const Op& b) {
    return a.id == b.id && a.kind == b.kind && a.resource == b.resource &&
           a.time_us == b.time_us && a.bytes == b.bytes;
  }
};

enum class Partition { Worker, Cluster };

using Edge = std::pair<std::string, std::string>;

// Immutable DAG of ops. Construction validates all structural invariants;
// a Graph that exists is well formed.
class Graph {
 public:
  static Graph create(std::string name, Partition partition,
                      std::vector<Op> ops, std::vector<Edge> edges);
  static Graph parse(std::string_view json_text);
  std::string serialize() const;

  const std::string& name() const { return name_; }
  Partition partition() const { return partition_; }
  const std::vector<Op>& ops() const { return ops_; }  // sorted by id
  const std::vector<Edge>& edges() const { return edges_; }  // sorted

  bool has_op(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;  // throws DomainError
  const Op& op(std::string_view id) const { return ops_[index_of(id)]; }

  // Adjacency by index into ops(); each list sorted ascending.
  const std::vector<std::vector<std::size_t>>& preds() const { return preds_; }
  const std::vector<std::vector<std::size_t>>& succs() const { return succs_; }

  // Deterministic topological order: ops sorted by (longest distance from a
  // root, id), so same-depth ops come out in ascending id order.
  std::vector<std::string> topo_order() const;

  std::vector<std::string> recv_ids() const;        // ascending
  std::vector<ResourceId> resources() const;        // unique, sorted

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.name_ == b.name_ && a.partition_ == b.partition_ &&
           a.ops_ == b.ops_ && a.edges_ == b.edges_;
  }

 private:
  Graph() = default;
  void build_adjacency();
  void validate() const;

  std::string name_;
  Partition partition_ = Partition::Worker;
  std::vector<Op> ops_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<std::vector<std::size_t>> succs_;
};

}  // namespace commsched
