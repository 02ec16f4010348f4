#ifndef COMMSCHED_H
#define COMMSCHED_H

/* C interface to the communication-scheduling library: computational graphs,
 * time oracles, transfer-priority schedules, the deterministic event
 * simulator, and makespan/efficiency metrics.
 *
 * Every function returns a status code (CS_OK on success). Objects come back
 * through out parameters as opaque handles owned by the caller; free them
 * with the matching *_free. Strings returned through char** are owned by the
 * caller and freed with cs_string_free. On failure the out parameter is left
 * untouched and cs_last_error() carries a message for the calling thread.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; nonzero values match the CLI exit codes. */
#define CS_OK 0
#define CS_ERR_INTERNAL 1
#define CS_ERR_VALIDATION 2
#define CS_ERR_COVERAGE 3
#define CS_ERR_PARAMETER 4
#define CS_ERR_IO 5

typedef struct cs_graph cs_graph;
typedef struct cs_oracle cs_oracle;
typedef struct cs_schedule cs_schedule;
typedef struct cs_report cs_report;

typedef struct cs_sim_policy {
  int counter_gate;     /* nonzero: counter-gated channel admission */
  uint64_t choice_seed; /* seed for uniform choices among eligible ops */
  double reorder_noise; /* [0,1] chance a transfer jumps one gate slot */
} cs_sim_policy;

/* ---- graphs ---- */

int cs_graph_parse(const char* json_text, cs_graph** out);
int cs_graph_serialize(const cs_graph* g, char** out_json);

/* shape: "chain" | "layered" | "seriesparallel";
 * comm_comp_ratio: "2", "1/2" or "0.5". */
int cs_graph_generate(const char* shape, int layers, int params_per_layer,
                      const char* comm_comp_ratio, uint64_t seed,
                      cs_graph** out);

/* Model-replica expansion of a worker graph over n_workers workers and n_ps
 * parameter servers; ps_op_time_us is the duration of each aggregate /
 * update / read op. */
int cs_graph_expand(const cs_graph* worker, int n_workers, int n_ps,
                    int64_t ps_op_time_us, cs_graph** out);

int cs_graph_name(const cs_graph* g, char** out);
int cs_graph_op_count(const cs_graph* g, int64_t* out);
int cs_graph_edge_count(const cs_graph* g, int64_t* out);
int cs_graph_recv_count(const cs_graph* g, int64_t* out);
int cs_graph_is_cluster(const cs_graph* g, int* out);
int cs_graph_topo_order(const cs_graph* g, char** out_json);
int cs_graph_worker_devices(const cs_graph* g, char** out_json);
int cs_graph_worker_partition(const cs_graph* g, const char* device,
                              cs_graph** out);
void cs_graph_free(cs_graph* g);

/* ---- time oracles ---- */

int cs_oracle_declared(const cs_graph* g, cs_oracle** out);
int cs_oracle_general(const cs_graph* g, cs_oracle** out);
/* trace_jsonl: one {"op", "run", "us"} object per line. */
int cs_oracle_from_traces(const cs_graph* g, const char* trace_jsonl,
                          cs_oracle** out);
int cs_oracle_bandwidth(const cs_graph* g, int64_t bytes_per_us,
                        cs_oracle** out);
int cs_oracle_json(const cs_oracle* o, char** out_json);
void cs_oracle_free(cs_oracle* o);

/* Dependency/property dump (dep, M, P, M+) with every recv outstanding;
 * mode: "literal" | "amended". */
int cs_properties_json(const cs_graph* g, const cs_oracle* o,
                       const char* mode, char** out_json);

/* ---- schedules ---- */

/* On a cluster graph each scheduler runs per worker partition and the
 * per-worker priorities are merged. mode: "literal" | "amended". */
int cs_schedule_tic(const cs_graph* g, const char* mode, cs_schedule** out);
int cs_schedule_tac(const cs_graph* g, const cs_oracle* o, cs_schedule** out);
/* Per-worker seeds are derived from seed on cluster graphs, so every worker
 * draws an independent permutation. */
int cs_schedule_random(const cs_graph* g, uint64_t seed, cs_schedule** out);
int cs_schedule_parse(const char* json_text, cs_schedule** out);
int cs_schedule_serialize(const cs_schedule* s, char** out_json);
int cs_schedule_total_order(const cs_schedule* s, int* out);
void cs_schedule_free(cs_schedule* s);

/* ---- simulation ---- */

/* schedule may be NULL (fully unprioritized run); policy may be NULL for
 * the defaults {counter_gate=1, choice_seed=0, reorder_noise=0}. For cluster
 * graphs the report also carries per-worker iteration statistics. */
int cs_simulate(const cs_graph* g, const cs_oracle* o, const cs_schedule* s,
                const cs_sim_policy* policy, cs_report** out);

int cs_report_makespan(const cs_report* r, int64_t* out_us);
int cs_report_violations(const cs_report* r, int64_t* out);
int cs_report_json(const cs_report* r, char** out_json);
int cs_report_chrome_trace(const cs_report* r, char** out_json);
/* Fails with CS_ERR_VALIDATION when the simulated graph was not a cluster. */
int cs_report_iteration_json(const cs_report* r, char** out_json);
void cs_report_free(cs_report* r);

/* ---- metrics ---- */

int cs_makespan_bounds(const cs_graph* g, const cs_oracle* o,
                       int64_t* upper_us, int64_t* lower_us);
/* {"U_us","L_us","m_us","E","S","straggler"} for a finished run. */
int cs_metrics_json(const cs_graph* g, const cs_oracle* o, const cs_report* r,
                    char** out_json);
/* Exhaustive permutation search; {"order","makespan_us","distribution"}. */
int cs_brute_force(const cs_graph* g, const cs_oracle* o,
                   const cs_sim_policy* policy, int max_recvs,
                   char** out_json);

const char* cs_last_error(void);
void cs_string_free(char* s);
const char* cs_version(void);

#ifdef __cplusplus
}
#endif

#endif /* COMMSCHED_H */
