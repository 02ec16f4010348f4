#include "synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "errors.hpp"
#include "rng.hpp"

namespace commsched {

namespace {

std::string padded(std::string_view prefix, std::size_t i, std::size_t count) {
  std::size_t width = 3;
  for (std::size_t hi = 1000; hi < count; hi *= 10) ++width;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", static_cast<int>(width), i);
  return std::string(prefix) + buf;
}

struct Block {
  std::vector<std::size_t> sources;  // compute indices
  std::vector<std::size_t> sinks;
};

// Recursive series/parallel composition over compute units [lo, hi).
Block compose(std::size_t lo, std::size_t hi, Rng& rng,
              std::vector<std::pair<std::size_t, std::size_t>>& comp_edges) {
  if (hi - lo == 1) return Block{{lo}, {lo}};
  const std::size_t split =
      lo + 1 + static_cast<std::size_t>(rng.bounded(hi - lo - 1));
  const bool series = rng.bounded(2) == 0;
  Block left = compose(lo, split, rng, comp_edges);
  Block right = compose(split, hi, rng, comp_edges);
  if (series) {
    for (std::size_t a : left.sinks)
      for (std::size_t b : right.sources) comp_edges.emplace_back(a, b);
    return Block{std::move(left.sources), std::move(right.sinks)};
  }
  Block merged;
  std::merge(left.sources.begin(), left.sources.end(), right.sources.begin(),
             right.sources.end(), std::back_inserter(merged.sources));
  std::merge(left.sinks.begin(), left.sinks.end(), right.sinks.begin(),
             right.sinks.end(), std::back_inserter(merged.sinks));
  return merged;
}

std::int64_t draw_compute_time(Rng& rng) {
  return 500 + static_cast<std::int64_t>(rng.bounded(1000));
}

}  // namespace

std::string_view shape_name(Shape s) {
  switch (s) {
    case Shape::Chain: return "chain";
    case Shape::Layered: return "layered";
    case Shape::SeriesParallel: return "seriesparallel";
  }
  return "chain";
}

Shape shape_from_name(std::string_view s) {
  if (s == "chain") return Shape::Chain;
  if (s == "layered") return Shape::Layered;
  if (s == "seriesparallel") return Shape::SeriesParallel;
  throw ParameterError("unknown shape: " + std::string(s));
}

Graph generate_synthetic(const SyntheticSpec& spec) {
  if (spec.layers < 1) throw ParameterError("layers must be positive");
  if (spec.params_per_layer < 1)
    throw ParameterError("params_per_layer must be positive");
  if (spec.comm_comp_ratio.num <= 0)
    throw ParameterError("comm_comp_ratio must be positive");

  const std::size_t n_recvs =
      static_cast<std::size_t>(spec.layers) *
      static_cast<std::size_t>(spec.params_per_layer);
  Rng rng(spec.seed);

  // Structure first, then compute times, then recv weights: one fixed draw
  // order keeps graphs reproducible across shapes.
  std::size_t n_computes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> comp_edges;
  std::vector<std::pair<std::size_t, std::size_t>> recv_edges;  // recv->comp
  switch (spec.shape) {
    case Shape::Chain:
      // One compute per parameter, all computes in a single chain.
      n_computes = n_recvs;
      for (std::size_t i = 0; i < n_computes; ++i) {
        recv_edges.emplace_back(i, i);
        if (i > 0) comp_edges.emplace_back(i - 1, i);
      }
      break;
    case Shape::Layered:
      // One compute per layer, fed by every recv of that layer.
      n_computes = static_cast<std::size_t>(spec.layers);
      for (std::size_t l = 0; l < n_computes; ++l) {
        for (int k = 0; k < spec.params_per_layer; ++k)
          recv_edges.emplace_back(
              l * static_cast<std::size_t>(spec.params_per_layer) + k, l);
        if (l > 0) comp_edges.emplace_back(l - 1, l);
      }
      break;
    case Shape::SeriesParallel:
      n_computes = n_recvs;
      for (std::size_t i = 0; i < n_computes; ++i) recv_edges.emplace_back(i, i);
      compose(0, n_computes, rng, comp_edges);
      break;
  }

  std::vector<std::int64_t> comp_times(n_computes);
  for (auto& t : comp_times) t = draw_compute_time(rng);
  const std::int64_t total_compute =
      std::accumulate(comp_times.begin(), comp_times.end(), std::int64_t{0});

  // Channel total: nearest integer to total_compute * ratio, half up.
  const std::int64_t rn = spec.comm_comp_ratio.num;
  const std::int64_t rd = spec.comm_comp_ratio.den;
  const std::int64_t target = (2 * total_compute * rn + rd) / (2 * rd);
  // Postcondition check: achieved ratio within 1% of the requested one.
  const std::int64_t drift =
      target * rd > total_compute * rn ? target * rd - total_compute * rn
                                       : total_compute * rn - target * rd;
  if (100 * drift > total_compute * rn)
    throw ParameterError(
        "comm_comp_ratio unachievable within 1% at integer microseconds");

  // Apportion the channel total over recvs by random weights, exactly
  // (largest remainder, ties to the lower index).
  std::vector<std::int64_t> weights(n_recvs);
  for (auto& w : weights) w = 1 + static_cast<std::int64_t>(rng.bounded(1000));
  const std::int64_t total_weight =
      std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
  std::vector<std::int64_t> recv_times(n_recvs);
  std::vector<std::pair<std::int64_t, std::size_t>> remainders;
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n_recvs; ++i) {
    recv_times[i] = target * weights[i] / total_weight;
    assigned += recv_times[i];
    remainders.emplace_back(target * weights[i] % total_weight, i);
  }
  std::sort(remainders.begin(), remainders.end(),
            [](const auto& a, const auto& b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  const std::int64_t leftover = target - assigned;
  for (std::int64_t k = 0; k < leftover; ++k)
    ++recv_times[remainders[static_cast<std::size_t>(k)].second];

  const ResourceId channel{"w0", ResourceUnit::Channel, "net0"};
  const ResourceId cpu{"w0", ResourceUnit::Compute, "cpu0"};
  std::vector<Op> ops;
  for (std::size_t i = 0; i < n_recvs; ++i)
    ops.push_back(Op{padded("recv", i, n_recvs), OpKind::Recv, channel,
                     recv_times[i], std::nullopt});
  for (std::size_t i = 0; i < n_computes; ++i)
    ops.push_back(Op{padded("comp", i, n_computes), OpKind::Compute, cpu,
                     comp_times[i], std::nullopt});
  std::vector<Edge> edges;
  for (const auto& [r, c] : recv_edges)
    edges.emplace_back(padded("recv", r, n_recvs),
                       padded("comp", c, n_computes));
  for (const auto& [a, b] : comp_edges)
    edges.emplace_back(padded("comp", a, n_computes),
                       padded("comp", b, n_computes));

  char name[128];
  std::snprintf(name, sizeof name, "%s-l%d-k%d-r%lld-%lld-s%llu",
                std::string(shape_name(spec.shape)).c_str(), spec.layers,
                spec.params_per_layer, static_cast<long long>(rn),
                static_cast<long long>(rd),
                static_cast<unsigned long long>(spec.seed));
  return Graph::create(name, Partition::Worker, std::move(ops),
                       std::move(edges));
}

}  // namespace commsched
