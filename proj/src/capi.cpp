#include "commsched.h"

#include <cstring>
#include <optional>
#include <set>
#include <string>

#include "cluster.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "json_io.hpp"
#include "metrics.hpp"
#include "properties.hpp"
#include "schedule.hpp"
#include "sim.hpp"
#include "synthetic.hpp"
#include "time_oracle.hpp"

using namespace commsched;

struct cs_graph {
  Graph g;
};
struct cs_oracle {
  TimeOracle o;
};
struct cs_schedule {
  PrioritySchedule s;
};
struct cs_report {
  SimReport r;
  std::optional<IterationStats> stats;
};

namespace {

thread_local std::string t_last_error;

template <typename F>
int guarded(F&& f) {
  try {
    t_last_error.clear();
    f();
    return CS_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return e.exit_code();
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return CS_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw ValidationError(std::string("null argument: ") + what);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SimPolicy to_policy(const cs_sim_policy* p) {
  SimPolicy policy;
  if (p) {
    policy.enforcement =
        p->counter_gate ? Enforcement::CounterGate : Enforcement::None;
    policy.choice_seed = p->choice_seed;
    policy.reorder_noise = p->reorder_noise;
  }
  return policy;
}

Rational parse_ratio_arg(const char* text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw ParameterError(std::string("not a ratio: ") + text);
  }
}

}  // namespace

extern "C" {

int cs_graph_parse(const char* json_text, cs_graph** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = new cs_graph{Graph::parse(json_text)};
  });
}

int cs_graph_serialize(const cs_graph* g, char** out_json) {
  return guarded([&] {
    require(g, "graph");
    require(out_json, "out_json");
    *out_json = dup_string(g->g.serialize());
  });
}

int cs_graph_generate(const char* shape, int layers, int params_per_layer,
                      const char* comm_comp_ratio, uint64_t seed,
                      cs_graph** out) {
  return guarded([&] {
    require(shape, "shape");
    require(comm_comp_ratio, "comm_comp_ratio");
    require(out, "out");
    SyntheticSpec spec;
    spec.shape = shape_from_name(shape);
    spec.layers = layers;
    spec.params_per_layer = params_per_layer;
    spec.comm_comp_ratio = parse_ratio_arg(comm_comp_ratio);
    spec.seed = seed;
    *out = new cs_graph{generate_synthetic(spec)};
  });
}

int cs_graph_expand(const cs_graph* worker, int n_workers, int n_ps,
                    int64_t ps_op_time_us, cs_graph** out) {
  return guarded([&] {
    require(worker, "worker");
    require(out, "out");
    *out = new cs_graph{expand_to_mr(worker->g, n_workers, n_ps,
                                     ps_op_time_us)};
  });
}

int cs_graph_name(const cs_graph* g, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = dup_string(g->g.name());
  });
}

int cs_graph_op_count(const cs_graph* g, int64_t* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = static_cast<int64_t>(g->g.ops().size());
  });
}

int cs_graph_edge_count(const cs_graph* g, int64_t* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = static_cast<int64_t>(g->g.edges().size());
  });
}

int cs_graph_recv_count(const cs_graph* g, int64_t* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = static_cast<int64_t>(g->g.recv_ids().size());
  });
}

int cs_graph_is_cluster(const cs_graph* g, int* out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = g->g.partition() == Partition::Cluster ? 1 : 0;
  });
}

int cs_graph_topo_order(const cs_graph* g, char** out_json) {
  return guarded([&] {
    require(g, "graph");
    require(out_json, "out_json");
    *out_json = dup_string(dump_json(Json(g->g.topo_order())));
  });
}

int cs_graph_worker_devices(const cs_graph* g, char** out_json) {
  return guarded([&] {
    require(g, "graph");
    require(out_json, "out_json");
    *out_json = dup_string(dump_json(Json(worker_devices(g->g))));
  });
}

int cs_graph_worker_partition(const cs_graph* g, const char* device,
                              cs_graph** out) {
  return guarded([&] {
    require(g, "graph");
    require(device, "device");
    require(out, "out");
    *out = new cs_graph{worker_partition(g->g, device)};
  });
}

void cs_graph_free(cs_graph* g) { delete g; }

int cs_oracle_declared(const cs_graph* g, cs_oracle** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new cs_oracle{TimeOracle::declared(g->g)};
  });
}

int cs_oracle_general(const cs_graph* g, cs_oracle** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new cs_oracle{TimeOracle::general(g->g)};
  });
}

int cs_oracle_from_traces(const cs_graph* g, const char* trace_jsonl,
                          cs_oracle** out) {
  return guarded([&] {
    require(g, "graph");
    require(trace_jsonl, "trace_jsonl");
    require(out, "out");
    *out = new cs_oracle{
        TimeOracle::from_traces(parse_trace_jsonl(trace_jsonl), g->g)};
  });
}

int cs_oracle_bandwidth(const cs_graph* g, int64_t bytes_per_us,
                        cs_oracle** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new cs_oracle{TimeOracle::from_bandwidth(g->g, bytes_per_us)};
  });
}

int cs_oracle_json(const cs_oracle* o, char** out_json) {
  return guarded([&] {
    require(o, "oracle");
    require(out_json, "out_json");
    *out_json = dup_string(dump_json(o->o.to_json()));
  });
}

void cs_oracle_free(cs_oracle* o) { delete o; }

int cs_properties_json(const cs_graph* g, const cs_oracle* o,
                       const char* mode, char** out_json) {
  return guarded([&] {
    require(g, "graph");
    require(o, "oracle");
    require(mode, "mode");
    require(out_json, "out_json");
    std::set<std::string> outstanding;
    for (const std::string& r : g->g.recv_ids()) outstanding.insert(r);
    PropertyTable t = update_properties(g->g, o->o, outstanding,
                                        property_mode_from_name(mode));
    *out_json = dup_string(dump_json(t.to_json()));
  });
}

int cs_schedule_tic(const cs_graph* g, const char* mode, cs_schedule** out) {
  return guarded([&] {
    require(g, "graph");
    require(mode, "mode");
    require(out, "out");
    *out = new cs_schedule{schedule_for(
        g->g, "tic", property_mode_from_name(mode), 0, nullptr)};
  });
}

int cs_schedule_tac(const cs_graph* g, const cs_oracle* o, cs_schedule** out) {
  return guarded([&] {
    require(g, "graph");
    require(o, "oracle");
    require(out, "out");
    *out = new cs_schedule{
        schedule_for(g->g, "tac", PropertyMode::Amended, 0, &o->o)};
  });
}

int cs_schedule_random(const cs_graph* g, uint64_t seed, cs_schedule** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = new cs_schedule{
        schedule_for(g->g, "random", PropertyMode::Amended, seed, nullptr)};
  });
}

int cs_schedule_parse(const char* json_text, cs_schedule** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = new cs_schedule{parse_schedule(json_text)};
  });
}

int cs_schedule_serialize(const cs_schedule* s, char** out_json) {
  return guarded([&] {
    require(s, "schedule");
    require(out_json, "out_json");
    *out_json = dup_string(serialize_schedule(s->s));
  });
}

int cs_schedule_total_order(const cs_schedule* s, int* out) {
  return guarded([&] {
    require(s, "schedule");
    require(out, "out");
    *out = s->s.total_order ? 1 : 0;
  });
}

void cs_schedule_free(cs_schedule* s) { delete s; }

int cs_simulate(const cs_graph* g, const cs_oracle* o, const cs_schedule* s,
                const cs_sim_policy* policy, cs_report** out) {
  return guarded([&] {
    require(g, "graph");
    require(o, "oracle");
    require(out, "out");
    auto* rep = new cs_report{};
    try {
      rep->r = simulate(g->g, o->o, s ? &s->s : nullptr, to_policy(policy));
      if (g->g.partition() == Partition::Cluster)
        rep->stats = iteration_stats(g->g, rep->r);
    } catch (...) {
      delete rep;
      throw;
    }
    *out = rep;
  });
}

int cs_report_makespan(const cs_report* r, int64_t* out_us) {
  return guarded([&] {
    require(r, "report");
    require(out_us, "out_us");
    *out_us = r->r.makespan;
  });
}

int cs_report_violations(const cs_report* r, int64_t* out) {
  return guarded([&] {
    require(r, "report");
    require(out, "out");
    *out = r->r.violations;
  });
}

int cs_report_json(const cs_report* r, char** out_json) {
  return guarded([&] {
    require(r, "report");
    require(out_json, "out_json");
    *out_json = dup_string(dump_json(r->r.to_json()));
  });
}

int cs_report_chrome_trace(const cs_report* r, char** out_json) {
  return guarded([&] {
    require(r, "report");
    require(out_json, "out_json");
    *out_json = dup_string(dump_json(r->r.chrome_trace()));
  });
}

int cs_report_iteration_json(const cs_report* r, char** out_json) {
  return guarded([&] {
    require(r, "report");
    require(out_json, "out_json");
    if (!r->stats)
      throw ValidationError("iteration stats need a cluster simulation");
    *out_json = dup_string(dump_json(r->stats->to_json()));
  });
}

void cs_report_free(cs_report* r) { delete r; }

int cs_makespan_bounds(const cs_graph* g, const cs_oracle* o,
                       int64_t* upper_us, int64_t* lower_us) {
  return guarded([&] {
    require(g, "graph");
    require(o, "oracle");
    require(upper_us, "upper_us");
    require(lower_us, "lower_us");
    const MakespanBounds b = makespan_bounds(g->g, o->o);
    *upper_us = b.upper;
    *lower_us = b.lower;
  });
}

int cs_metrics_json(const cs_graph* g, const cs_oracle* o, const cs_report* r,
                    char** out_json) {
  return guarded([&] {
    require(g, "graph");
    require(o, "oracle");
    require(r, "report");
    require(out_json, "out_json");
    const MakespanBounds b = makespan_bounds(g->g, o->o);
    std::optional<Rational> straggler;
    if (r->stats) straggler = r->stats->straggler;
    *out_json =
        dup_string(dump_json(metrics_report(b, r->r.makespan, straggler)));
  });
}

int cs_brute_force(const cs_graph* g, const cs_oracle* o,
                   const cs_sim_policy* policy, int max_recvs,
                   char** out_json) {
  return guarded([&] {
    require(g, "graph");
    require(o, "oracle");
    require(out_json, "out_json");
    const BruteForceResult res =
        brute_force_best(g->g, o->o, to_policy(policy), max_recvs);
    *out_json = dup_string(dump_json(res.to_json()));
  });
}

const char* cs_last_error(void) { return t_last_error.c_str(); }

void cs_string_free(char* s) { delete[] s; }

const char* cs_version(void) { return "0.1.0"; }

}  // extern "C"
