#include "cluster.hpp"

#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "sim.hpp"

namespace commsched {

Graph expand_to_mr(const Graph& worker, int n_workers, int n_ps,
                   std::int64_t ps_op_time_us) {
  if (n_workers < 1) throw ParameterError("n_workers must be positive");
  if (n_ps < 1) throw ParameterError("n_ps must be positive");
  if (ps_op_time_us < 0) throw ParameterError("ps_op_time must be >= 0");
  if (worker.partition() != Partition::Worker)
    throw ParameterError("expansion needs a worker graph");
  for (const Op& op : worker.ops())
    if (op.kind == OpKind::Send)
      throw ParameterError("worker graph with send ops not supported: " +
                           op.id);

  const std::vector<std::string> params = worker.recv_ids();
  auto ps_of = [&](std::size_t p) { return static_cast<int>(p % n_ps); };

  // Gradient pushes leave once the replica's compute finishes: they hang off
  // the sink computes (or all sinks, if the worker has no compute sink).
  std::vector<std::string> grad_sources;
  for (std::size_t i = 0; i < worker.ops().size(); ++i)
    if (worker.succs()[i].empty() &&
        worker.ops()[i].kind == OpKind::Compute)
      grad_sources.push_back(worker.ops()[i].id);
  if (grad_sources.empty())
    for (std::size_t i = 0; i < worker.ops().size(); ++i)
      if (worker.succs()[i].empty()) grad_sources.push_back(worker.ops()[i].id);

  std::vector<Op> ops;
  std::vector<Edge> edges;
  for (int w = 0; w < n_workers; ++w) {
    const std::string dev = "w" + std::to_string(w);
    const std::string prefix = dev + "/";
    for (const Op& op : worker.ops()) {
      Op copy = op;
      copy.id = prefix + op.id;
      copy.resource.device = dev;
      if (op.kind == OpKind::Recv) {
        std::size_t p = 0;
        while (params[p] != op.id) ++p;
        copy.resource.name = dev + "-ps" + std::to_string(ps_of(p));
      }
      ops.push_back(std::move(copy));
    }
    for (const Edge& e : worker.edges())
      edges.emplace_back(prefix + e.first, prefix + e.second);
    for (std::size_t p = 0; p < params.size(); ++p) {
      const Op& orig = worker.op(params[p]);
      Op grad;
      grad.id = prefix + "grad/" + orig.id;
      grad.kind = OpKind::Send;
      grad.resource = ResourceId{dev, ResourceUnit::Channel,
                                 dev + "-ps" + std::to_string(ps_of(p))};
      grad.time_us = orig.time_us;
      grad.bytes = orig.bytes;
      ops.push_back(std::move(grad));
      for (const std::string& src : grad_sources)
        edges.emplace_back(prefix + src, prefix + "grad/" + orig.id);
    }
  }
  for (std::size_t p = 0; p < params.size(); ++p) {
    const std::string& rid = params[p];
    const std::string psdev = "ps" + std::to_string(ps_of(p));
    const ResourceId cpu{psdev, ResourceUnit::Compute, "cpu0"};
    const std::string agg = psdev + "/agg/" + rid;
    const std::string upd = psdev + "/upd/" + rid;
    const std::string read = psdev + "/read/" + rid;
    ops.push_back(Op{agg, OpKind::PsAggregate, cpu, ps_op_time_us, {}});
    ops.push_back(Op{upd, OpKind::PsUpdate, cpu, ps_op_time_us, {}});
    ops.push_back(Op{read, OpKind::PsRead, cpu, ps_op_time_us, {}});
    for (int w = 0; w < n_workers; ++w)
      edges.emplace_back("w" + std::to_string(w) + "/grad/" + rid, agg);
    edges.emplace_back(agg, upd);
    edges.emplace_back(upd, read);
  }

  return Graph::create(worker.name() + "-mr" + std::to_string(n_workers) +
                           "x" + std::to_string(n_ps),
                       Partition::Cluster, std::move(ops), std::move(edges));
}

PrioritySchedule schedule_for(const Graph& g, const std::string& algo,
                              PropertyMode mode, std::uint64_t seed,
                              const TimeOracle* time) {
  auto one = [&](const Graph& target, std::uint64_t s) {
    if (algo == "tic") return tic(target, mode);
    if (algo == "tac") {
      if (!time) throw ParameterError("tac needs a time oracle");
      return tac(target, *time);
    }
    if (algo == "random") return random_schedule(target, s);
    throw ParameterError("unknown scheduling algorithm: " + algo);
  };
  if (g.partition() == Partition::Worker) return one(g, seed);

  PrioritySchedule merged;
  merged.graph_name = g.name();
  merged.algorithm = algo;
  const std::vector<std::string> devices = worker_devices(g);
  bool total = true;
  for (std::size_t i = 0; i < devices.size(); ++i) {
    const Graph part = worker_partition(g, devices[i]);
    const std::uint64_t derived =
        splitmix64(seed ^ (0x9e3779b97f4a7c15ull * (i + 1)));
    PrioritySchedule s = one(part, derived);
    total = total && s.total_order;
    for (const auto& [id, rank] : s.priorities) merged.priorities[id] = rank;
  }
  // Priority numbers restart per worker, so the merged map is only a total
  // order in the degenerate single-worker case.
  merged.total_order = total && devices.size() <= 1;
  return merged;
}

}  // namespace commsched
