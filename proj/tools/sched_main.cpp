// Command-line front end over the commsched C API: generate or ingest
// graphs, build time oracles, compute transfer schedules, simulate, sweep
// seeds and emit reports and traces.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <list>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "commsched.h"

namespace {

using Json = nlohmann::ordered_json;

struct Exit {
  int code;
  std::string message;
};

void check(int status) {
  if (status != CS_OK) throw Exit{status, cs_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  cs_string_free(s);
  return out;
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (ptr) Free(ptr);
  }
  T** out() { return &ptr; }
  operator T*() const { return ptr; }
};

using GraphH = Handle<cs_graph, cs_graph_free>;
using OracleH = Handle<cs_oracle, cs_oracle_free>;
using ScheduleH = Handle<cs_schedule, cs_schedule_free>;
using ReportH = Handle<cs_report, cs_report_free>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{CS_ERR_IO, "cannot read " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Exit{CS_ERR_IO, "cannot read " + path};
  return buf.str();
}

// Outputs are staged in memory and written only after the whole pipeline
// succeeded; a failing write rolls back anything already on disk.
struct Artifacts {
  std::vector<std::pair<std::string, std::string>> files;

  void add(const std::string& path, std::string content) {
    if (!path.empty()) files.emplace_back(path, std::move(content));
  }

  void commit() {
    std::vector<std::string> written;
    for (const auto& [path, content] : files) {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (out) out << content;
      if (!out) {
        std::remove(path.c_str());
        for (const std::string& w : written) std::remove(w.c_str());
        throw Exit{CS_ERR_IO, "cannot write " + path};
      }
      written.push_back(path);
    }
  }
};

std::string decimal6(std::int64_t num, std::int64_t den) {
  __int128 scaled = static_cast<__int128>(num) * 1000000;
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  __int128 q = scaled / den;
  if (2 * (scaled % den) >= den) ++q;
  const long long whole = static_cast<long long>(q / 1000000);
  const long long frac = static_cast<long long>(q % 1000000);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%lld.%06lld", negative ? "-" : "", whole,
                frac);
  return buf;
}

std::string rational_str(const Json& j) {
  if (j.is_null()) return "none";
  const std::int64_t num = j.at("num").get<std::int64_t>();
  const std::int64_t den = j.at("den").get<std::int64_t>();
  std::ostringstream out;
  out << num << "/" << den << " (" << decimal6(num, den) << ")";
  return out.str();
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  auto parse_one = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const std::uint64_t v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Exit{CS_ERR_PARAMETER, "bad seed value: " + s};
    }
  };
  std::vector<std::uint64_t> seeds;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const std::uint64_t lo = parse_one(text.substr(0, range));
    const std::uint64_t hi = parse_one(text.substr(range + 2));
    if (hi < lo) throw Exit{CS_ERR_PARAMETER, "seed range is empty: " + text};
    if (hi - lo >= 1000000)
      throw Exit{CS_ERR_PARAMETER, "seed range too large: " + text};
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) seeds.push_back(parse_one(item));
  if (seeds.empty()) throw Exit{CS_ERR_PARAMETER, "no seeds in: " + text};
  return seeds;
}

// Options shared by the pipeline subcommands. A JSON config file can fill
// any flag that was not given on the command line.
struct Opts {
  std::string config;
  std::string graph_path;
  std::string oracle_kind = "declared";
  std::string traces_path;
  std::int64_t bandwidth = 0;
  std::string algo = "none";
  std::string mode = "amended";
  std::string schedule_path;
  std::uint64_t seed = 0;
  bool choice_seed_set = false;
  std::uint64_t choice_seed = 0;
  std::string enforce = "counter";
  double noise = 0.0;
  std::string seeds_text;
  std::string out_path;
  std::string report_path;
  std::string trace_path;
  int workers = 1;
  int ps = 1;
  std::int64_t ps_op_time = 0;
  std::string shape = "chain";
  int layers = 1;
  int params = 1;
  std::string ratio = "1";
  int max_recvs = 8;
};

struct ConfigFill {
  std::vector<std::function<void(const Json&)>> setters;

  template <typename T>
  void bind(CLI::Option* opt, std::string key, T& var) {
    setters.push_back([opt, key = std::move(key), &var](const Json& cfg) {
      if (opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
    });
  }

  void apply(const Json& cfg) const {
    for (const auto& set : setters) set(cfg);
  }
};

void add_graph_flag(CLI::App* cmd, Opts& o, ConfigFill& fill) {
  fill.bind(cmd->add_option("--graph", o.graph_path, "graph JSON file"),
            "graph", o.graph_path);
}

void add_oracle_flags(CLI::App* cmd, Opts& o, ConfigFill& fill) {
  fill.bind(cmd->add_option("--oracle", o.oracle_kind,
                            "declared|general|traces|bandwidth"),
            "oracle", o.oracle_kind);
  fill.bind(cmd->add_option("--traces", o.traces_path, "trace JSONL file"),
            "traces", o.traces_path);
  fill.bind(cmd->add_option("--bandwidth", o.bandwidth,
                            "channel bandwidth in bytes per microsecond"),
            "bandwidth", o.bandwidth);
}

void add_algo_flags(CLI::App* cmd, Opts& o, ConfigFill& fill, bool with_file) {
  fill.bind(cmd->add_option("--algo", o.algo,
                            with_file ? "tic|tac|random|none|file"
                                      : "tic|tac|random"),
            "algo", o.algo);
  fill.bind(cmd->add_option("--mode", o.mode,
                            "property mode for tic: literal|amended"),
            "mode", o.mode);
  fill.bind(cmd->add_option("--seed", o.seed, "schedule seed"), "seed",
            o.seed);
  if (with_file)
    fill.bind(cmd->add_option("--schedule", o.schedule_path,
                              "schedule JSON file (with --algo file)"),
              "schedule", o.schedule_path);
}

void add_policy_flags(CLI::App* cmd, Opts& o, ConfigFill& fill) {
  fill.bind(cmd->add_option("--enforce", o.enforce,
                            "transfer-order enforcement: counter|none"),
            "enforce", o.enforce);
  fill.bind(cmd->add_option("--noise", o.noise,
                            "chance a gated transfer is released one slot "
                            "early"),
            "noise", o.noise);
  CLI::Option* cs = cmd->add_option("--choice-seed", o.choice_seed,
                                    "seed for choices among equally eligible "
                                    "ops (defaults to --seed)");
  fill.setters.push_back([cs, &o](const Json& cfg) {
    if (cs->count() == 0 && cfg.contains("choice-seed")) {
      o.choice_seed = cfg.at("choice-seed").get<std::uint64_t>();
      o.choice_seed_set = true;
    }
  });
  cs->each([&o](const std::string&) { o.choice_seed_set = true; });
}

CLI::Option* add_config_flag(CLI::App* cmd, Opts& o) {
  return cmd->add_option("--config", o.config,
                         "JSON file of defaults for these flags");
}

void apply_config(const Opts& o, const ConfigFill& fill) {
  if (o.config.empty()) return;
  Json cfg;
  try {
    cfg = Json::parse(read_file(o.config));
  } catch (const Json::parse_error& e) {
    throw Exit{CS_ERR_VALIDATION, "config: " + std::string(e.what())};
  }
  if (!cfg.is_object())
    throw Exit{CS_ERR_VALIDATION, "config must be a JSON object"};
  fill.apply(cfg);
}

void load_graph(const Opts& o, GraphH& g) {
  if (o.graph_path.empty())
    throw Exit{CS_ERR_PARAMETER, "--graph is required"};
  check(cs_graph_parse(read_file(o.graph_path).c_str(), g.out()));
}

void make_oracle(const Opts& o, const GraphH& g, OracleH& oracle) {
  if (o.oracle_kind == "declared") {
    check(cs_oracle_declared(g, oracle.out()));
  } else if (o.oracle_kind == "general") {
    check(cs_oracle_general(g, oracle.out()));
  } else if (o.oracle_kind == "traces") {
    if (o.traces_path.empty())
      throw Exit{CS_ERR_PARAMETER, "--oracle traces needs --traces"};
    check(cs_oracle_from_traces(g, read_file(o.traces_path).c_str(),
                                oracle.out()));
  } else if (o.oracle_kind == "bandwidth") {
    if (o.bandwidth <= 0)
      throw Exit{CS_ERR_PARAMETER, "--oracle bandwidth needs --bandwidth > 0"};
    check(cs_oracle_bandwidth(g, o.bandwidth, oracle.out()));
  } else {
    throw Exit{CS_ERR_PARAMETER, "unknown oracle source: " + o.oracle_kind};
  }
}

// May leave the handle empty (--algo none).
void make_schedule(const Opts& o, const GraphH& g, const OracleH& oracle,
                   ScheduleH& schedule) {
  if (!o.schedule_path.empty() && o.algo != "file")
    throw Exit{CS_ERR_PARAMETER, "--schedule needs --algo file"};
  if (o.algo == "none") return;
  if (o.algo == "tic") {
    check(cs_schedule_tic(g, o.mode.c_str(), schedule.out()));
  } else if (o.algo == "tac") {
    check(cs_schedule_tac(g, oracle, schedule.out()));
  } else if (o.algo == "random") {
    check(cs_schedule_random(g, o.seed, schedule.out()));
  } else if (o.algo == "file") {
    if (o.schedule_path.empty())
      throw Exit{CS_ERR_PARAMETER, "--algo file needs --schedule"};
    const std::string text = read_file(o.schedule_path);
    check(cs_schedule_parse(text.c_str(), schedule.out()));
    char* name_c = nullptr;
    check(cs_graph_name(g, &name_c));
    const std::string graph_name = take(name_c);
    const std::string sched_for = Json::parse(text).at("graph");
    if (sched_for != graph_name)
      throw Exit{CS_ERR_VALIDATION, "schedule was computed for graph '" +
                                        sched_for + "', not '" + graph_name +
                                        "'"};
  } else {
    throw Exit{CS_ERR_PARAMETER, "unknown algorithm: " + o.algo};
  }
}

cs_sim_policy make_policy(const Opts& o) {
  cs_sim_policy p;
  if (o.enforce == "counter") {
    p.counter_gate = 1;
  } else if (o.enforce == "none") {
    p.counter_gate = 0;
  } else {
    throw Exit{CS_ERR_PARAMETER, "unknown enforcement: " + o.enforce};
  }
  p.choice_seed = o.choice_seed_set ? o.choice_seed : o.seed;
  p.reorder_noise = o.noise;
  return p;
}

std::string summary_line(const Opts& o, const GraphH& g, const OracleH& oracle,
                         const ReportH& report) {
  char* metrics_c = nullptr;
  check(cs_metrics_json(g, oracle, report, &metrics_c));
  const Json metrics = Json::parse(take(metrics_c));
  std::ostringstream line;
  line << "algo=" << o.algo << " m_us=" << metrics.at("m_us").get<long long>()
       << " E=" << rational_str(metrics.at("E"))
       << " S=" << rational_str(metrics.at("S"))
       << " straggler=" << rational_str(metrics.at("straggler"));
  return line.str();
}

int cmd_validate(const Opts& o) {
  GraphH g;
  load_graph(o, g);
  char* name_c = nullptr;
  check(cs_graph_name(g, &name_c));
  std::int64_t ops = 0, edges = 0;
  int cluster = 0;
  check(cs_graph_op_count(g, &ops));
  check(cs_graph_edge_count(g, &edges));
  check(cs_graph_is_cluster(g, &cluster));
  std::printf("valid: %s (%lld ops, %lld edges, %s)\n", take(name_c).c_str(),
              static_cast<long long>(ops), static_cast<long long>(edges),
              cluster ? "cluster" : "worker");
  return 0;
}

int cmd_generate(const Opts& o) {
  if (o.out_path.empty()) throw Exit{CS_ERR_PARAMETER, "--out is required"};
  GraphH g;
  check(cs_graph_generate(o.shape.c_str(), o.layers, o.params,
                          o.ratio.c_str(), o.seed, g.out()));
  char* json_c = nullptr;
  check(cs_graph_serialize(g, &json_c));
  Artifacts artifacts;
  artifacts.add(o.out_path, take(json_c));
  artifacts.commit();
  char* name_c = nullptr;
  check(cs_graph_name(g, &name_c));
  std::printf("generated %s\n", take(name_c).c_str());
  return 0;
}

int cmd_expand(const Opts& o) {
  if (o.out_path.empty()) throw Exit{CS_ERR_PARAMETER, "--out is required"};
  GraphH worker;
  load_graph(o, worker);
  GraphH cluster;
  check(cs_graph_expand(worker, o.workers, o.ps, o.ps_op_time,
                        cluster.out()));
  char* json_c = nullptr;
  check(cs_graph_serialize(cluster, &json_c));
  Artifacts artifacts;
  artifacts.add(o.out_path, take(json_c));
  artifacts.commit();
  char* name_c = nullptr;
  check(cs_graph_name(cluster, &name_c));
  std::printf("expanded %s\n", take(name_c).c_str());
  return 0;
}

int cmd_oracle(const Opts& o) {
  if (o.out_path.empty()) throw Exit{CS_ERR_PARAMETER, "--out is required"};
  GraphH g;
  load_graph(o, g);
  OracleH oracle;
  make_oracle(o, g, oracle);
  char* json_c = nullptr;
  check(cs_oracle_json(oracle, &json_c));
  Artifacts artifacts;
  artifacts.add(o.out_path, take(json_c));
  artifacts.commit();
  return 0;
}

int cmd_schedule(const Opts& o) {
  if (o.out_path.empty()) throw Exit{CS_ERR_PARAMETER, "--out is required"};
  if (o.algo != "tic" && o.algo != "tac" && o.algo != "random")
    throw Exit{CS_ERR_PARAMETER,
               "schedule computes tic, tac or random priorities"};
  GraphH g;
  load_graph(o, g);
  OracleH oracle;
  if (o.algo == "tac") make_oracle(o, g, oracle);
  ScheduleH schedule;
  make_schedule(o, g, oracle, schedule);
  char* json_c = nullptr;
  check(cs_schedule_serialize(schedule, &json_c));
  Artifacts artifacts;
  artifacts.add(o.out_path, take(json_c));
  artifacts.commit();
  return 0;
}

int run_simulation(const Opts& o, bool want_report_out) {
  GraphH g;
  load_graph(o, g);
  OracleH oracle;
  make_oracle(o, g, oracle);
  ScheduleH schedule;
  make_schedule(o, g, oracle, schedule);
  const cs_sim_policy policy = make_policy(o);
  ReportH report;
  check(cs_simulate(g, oracle, schedule, &policy, report.out()));

  Artifacts artifacts;
  const std::string report_path = want_report_out ? o.out_path : o.report_path;
  if (want_report_out && report_path.empty())
    throw Exit{CS_ERR_PARAMETER, "--out is required"};
  if (!report_path.empty()) {
    char* metrics_c = nullptr;
    check(cs_metrics_json(g, oracle, report, &metrics_c));
    artifacts.add(report_path, take(metrics_c));
  }
  if (!o.trace_path.empty()) {
    char* trace_c = nullptr;
    check(cs_report_chrome_trace(report, &trace_c));
    artifacts.add(o.trace_path, take(trace_c));
  }
  artifacts.commit();
  std::printf("%s\n", summary_line(o, g, oracle, report).c_str());
  return 0;
}

int cmd_sweep(const Opts& o) {
  if (o.out_path.empty()) throw Exit{CS_ERR_PARAMETER, "--out is required"};
  if (o.seeds_text.empty()) throw Exit{CS_ERR_PARAMETER, "--seeds is required"};
  const std::vector<std::uint64_t> seeds = parse_seeds(o.seeds_text);
  GraphH g;
  load_graph(o, g);
  OracleH oracle;
  make_oracle(o, g, oracle);
  int cluster = 0;
  check(cs_graph_is_cluster(g, &cluster));

  // For non-random algorithms the schedule is fixed across the sweep.
  ScheduleH fixed;
  if (o.algo != "random") make_schedule(o, g, oracle, fixed);

  std::ostringstream csv;
  csv << (cluster ? "seed,makespan_us,iteration_us,straggler\n"
                  : "seed,makespan_us\n");
  std::int64_t min_us = 0, max_us = 0;
  bool first = true;
  for (const std::uint64_t seed : seeds) {
    ScheduleH per_seed;
    if (o.algo == "random") check(cs_schedule_random(g, seed, per_seed.out()));
    cs_sim_policy policy = make_policy(o);
    policy.choice_seed = seed;
    ReportH report;
    check(cs_simulate(g, oracle, o.algo == "random" ? per_seed : fixed,
                      &policy, report.out()));
    std::int64_t m = 0;
    check(cs_report_makespan(report, &m));
    csv << seed << "," << m;
    if (cluster) {
      char* stats_c = nullptr;
      check(cs_report_iteration_json(report, &stats_c));
      const Json stats = Json::parse(take(stats_c));
      csv << "," << stats.at("iteration_us").get<long long>() << ","
          << decimal6(stats.at("straggler").at("num").get<std::int64_t>(),
                      stats.at("straggler").at("den").get<std::int64_t>());
    }
    csv << "\n";
    min_us = first ? m : std::min(min_us, m);
    max_us = first ? m : std::max(max_us, m);
    first = false;
  }
  Artifacts artifacts;
  artifacts.add(o.out_path, csv.str());
  artifacts.commit();
  std::printf("sweep seeds=%zu min_us=%lld max_us=%lld\n", seeds.size(),
              static_cast<long long>(min_us), static_cast<long long>(max_us));
  return 0;
}

int cmd_bruteforce(const Opts& o) {
  GraphH g;
  load_graph(o, g);
  OracleH oracle;
  make_oracle(o, g, oracle);
  const cs_sim_policy policy = make_policy(o);
  char* result_c = nullptr;
  check(cs_brute_force(g, oracle, &policy, o.max_recvs, &result_c));
  const std::string result_text = take(result_c);
  Artifacts artifacts;
  artifacts.add(o.out_path, result_text);
  artifacts.commit();
  const Json result = Json::parse(result_text);
  std::string order;
  for (const auto& id : result.at("order")) {
    if (!order.empty()) order += ",";
    order += id.get<std::string>();
  }
  std::printf("best m_us=%lld order=%s\n",
              result.at("makespan_us").get<long long>(), order.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"communication scheduling for parameter-server training DAGs"};
  app.require_subcommand(1);

  Opts o;
  // One ConfigFill per subcommand: a config key must only fill options
  // belonging to the subcommand actually parsed.
  std::list<ConfigFill> fills;
  std::function<int()> run;

  auto wire = [&](CLI::App* cmd, ConfigFill& fill, std::function<int()> body) {
    add_config_flag(cmd, o);
    cmd->callback([&o, &fill, body = std::move(body), &run] {
      run = [&o, &fill, body] {
        apply_config(o, fill);
        return body();
      };
    });
  };

  auto* validate = app.add_subcommand("validate", "check a graph file");
  {
    ConfigFill& fill = fills.emplace_back();
    add_graph_flag(validate, o, fill);
    wire(validate, fill, [&o] { return cmd_validate(o); });
  }

  auto* generate =
      app.add_subcommand("generate", "emit a synthetic worker graph");
  {
    ConfigFill& fill = fills.emplace_back();
    fill.bind(generate->add_option("--shape", o.shape,
                                   "chain|layered|seriesparallel"),
              "shape", o.shape);
    fill.bind(generate->add_option("--layers", o.layers, "layer count"),
              "layers", o.layers);
    fill.bind(generate->add_option("--params", o.params,
                                   "parameters per layer"),
              "params", o.params);
    fill.bind(generate->add_option("--ratio", o.ratio,
                                   "channel/compute time ratio, e.g. 0.5"),
              "ratio", o.ratio);
    fill.bind(generate->add_option("--seed", o.seed, "generator seed"),
              "seed", o.seed);
    fill.bind(generate->add_option("--out", o.out_path, "output graph file"),
              "out", o.out_path);
    wire(generate, fill, [&o] { return cmd_generate(o); });
  }

  auto* expand = app.add_subcommand(
      "expand", "model-replica expansion over workers and parameter servers");
  {
    ConfigFill& fill = fills.emplace_back();
    add_graph_flag(expand, o, fill);
    fill.bind(expand->add_option("--workers", o.workers, "worker count"),
              "workers", o.workers);
    fill.bind(expand->add_option("--ps", o.ps, "parameter server count"),
              "ps", o.ps);
    fill.bind(expand->add_option("--ps-op-time", o.ps_op_time,
                                 "duration of each ps-side op in us"),
              "ps-op-time", o.ps_op_time);
    fill.bind(expand->add_option("--out", o.out_path, "output graph file"),
              "out", o.out_path);
    wire(expand, fill, [&o] { return cmd_expand(o); });
  }

  auto* oracle_cmd =
      app.add_subcommand("oracle", "build a time oracle for a graph");
  {
    ConfigFill& fill = fills.emplace_back();
    add_graph_flag(oracle_cmd, o, fill);
    add_oracle_flags(oracle_cmd, o, fill);
    fill.bind(
        oracle_cmd->add_option("--out", o.out_path, "output oracle file"),
        "out", o.out_path);
    wire(oracle_cmd, fill, [&o] { return cmd_oracle(o); });
  }

  auto* schedule_cmd =
      app.add_subcommand("schedule", "compute transfer priorities");
  {
    ConfigFill& fill = fills.emplace_back();
    add_graph_flag(schedule_cmd, o, fill);
    add_oracle_flags(schedule_cmd, o, fill);
    add_algo_flags(schedule_cmd, o, fill, false);
    fill.bind(
        schedule_cmd->add_option("--out", o.out_path, "output schedule file"),
        "out", o.out_path);
    wire(schedule_cmd, fill, [&o] { return cmd_schedule(o); });
  }

  auto* simulate_cmd =
      app.add_subcommand("simulate", "run one simulated iteration");
  {
    ConfigFill& fill = fills.emplace_back();
    add_graph_flag(simulate_cmd, o, fill);
    add_oracle_flags(simulate_cmd, o, fill);
    add_algo_flags(simulate_cmd, o, fill, true);
    add_policy_flags(simulate_cmd, o, fill);
    fill.bind(simulate_cmd->add_option("--report", o.report_path,
                                       "write metrics report JSON here"),
              "report", o.report_path);
    fill.bind(simulate_cmd->add_option("--trace", o.trace_path,
                                       "write chrome trace JSON here"),
              "trace", o.trace_path);
    wire(simulate_cmd, fill, [&o] { return run_simulation(o, false); });
  }

  auto* report_cmd =
      app.add_subcommand("report", "simulate and write the metrics report");
  {
    ConfigFill& fill = fills.emplace_back();
    add_graph_flag(report_cmd, o, fill);
    add_oracle_flags(report_cmd, o, fill);
    add_algo_flags(report_cmd, o, fill, true);
    add_policy_flags(report_cmd, o, fill);
    fill.bind(report_cmd->add_option("--out", o.out_path, "report JSON path"),
              "out", o.out_path);
    fill.bind(report_cmd->add_option("--trace", o.trace_path,
                                     "write chrome trace JSON here"),
              "trace", o.trace_path);
    wire(report_cmd, fill, [&o] { return run_simulation(o, true); });
  }

  auto* sweep_cmd =
      app.add_subcommand("sweep", "simulate across a list of seeds");
  {
    ConfigFill& fill = fills.emplace_back();
    add_graph_flag(sweep_cmd, o, fill);
    add_oracle_flags(sweep_cmd, o, fill);
    add_algo_flags(sweep_cmd, o, fill, true);
    add_policy_flags(sweep_cmd, o, fill);
    fill.bind(sweep_cmd->add_option("--seeds", o.seeds_text,
                                    "seed list: 1..100 or 1,5,9"),
              "seeds", o.seeds_text);
    fill.bind(sweep_cmd->add_option("--out", o.out_path, "CSV output path"),
              "out", o.out_path);
    wire(sweep_cmd, fill, [&o] { return cmd_sweep(o); });
  }

  auto* brute_cmd = app.add_subcommand(
      "bruteforce", "exhaust all recv orders for the optimum");
  {
    ConfigFill& fill = fills.emplace_back();
    add_graph_flag(brute_cmd, o, fill);
    add_oracle_flags(brute_cmd, o, fill);
    add_policy_flags(brute_cmd, o, fill);
    fill.bind(brute_cmd->add_option("--max-recvs", o.max_recvs,
                                    "refuse graphs with more recvs than this"),
              "max-recvs", o.max_recvs);
    fill.bind(brute_cmd->add_option("--out", o.out_path, "result JSON path"),
              "out", o.out_path);
    wire(brute_cmd, fill, [&o] { return cmd_bruteforce(o); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return CS_ERR_PARAMETER;
  }

  try {
    return run();
  } catch (const Exit& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return CS_ERR_INTERNAL;
  }
}
