#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "graph.hpp"
#include "json_io.hpp"

namespace commsched {

struct TraceRecord {
  std::string op_id;
  std::int64_t run = 0;
  std::int64_t us = 0;
};

// One measured-duration record per line: {"op": str, "run": int, "us": int}.
std::vector<TraceRecord> parse_trace_jsonl(std::string_view text);

enum class OracleOrigin { Measured, Declared, General, Synthetic };

std::string_view origin_name(OracleOrigin o);

// Total map op id -> duration in microseconds for one graph.
class TimeOracle {
 public:
  TimeOracle(std::map<std::string, std::int64_t> entries, OracleOrigin origin);

  // Declared times copied verbatim from the graph.
  static TimeOracle declared(const Graph& g);
  // Unit cost for every recv, zero for everything else.
  static TimeOracle general(const Graph& g);
  // Minimum duration over each op's trace records.
  static TimeOracle from_traces(const std::vector<TraceRecord>& records,
                                const Graph& g);
  // Transfers timed as bytes / bandwidth (rounded to nearest us, ties up),
  // falling back to declared times; non-transfers keep declared times.
  static TimeOracle from_bandwidth(const Graph& g,
                                   std::int64_t bytes_per_us);

  std::int64_t at(const std::string& op_id) const;
  const std::map<std::string, std::int64_t>& entries() const {
    return entries_;
  }
  OracleOrigin origin() const { return origin_; }

  // Throws a coverage error listing any graph op without an entry.
  void check_covers(const Graph& g) const;

  Json to_json() const;

 private:
  std::map<std::string, std::int64_t> entries_;
  OracleOrigin origin_;
};

}  // namespace commsched
