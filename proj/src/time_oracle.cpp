#include "time_oracle.hpp"

#include <algorithm>

#include "errors.hpp"

namespace commsched {

namespace {

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const std::string& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

}  // namespace

std::vector<TraceRecord> parse_trace_jsonl(std::string_view text) {
  std::vector<TraceRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    Json j = parse_json(line, "trace line " + std::to_string(line_no));
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string() ||
        !j.contains("run") || !j["run"].is_number_integer() ||
        !j.contains("us") || !j["us"].is_number_integer())
      throw ValidationError("trace line " + std::to_string(line_no) +
                            ": expected {\"op\", \"run\", \"us\"}");
    TraceRecord r;
    r.op_id = j["op"].get<std::string>();
    r.run = j["run"].get<std::int64_t>();
    r.us = j["us"].get<std::int64_t>();
    if (r.run < 0)
      throw ValidationError("trace line " + std::to_string(line_no) +
                            ": negative run index");
    if (r.us < 0)
      throw ValidationError("trace line " + std::to_string(line_no) +
                            ": negative duration");
    records.push_back(std::move(r));
  }
  return records;
}

std::string_view origin_name(OracleOrigin o) {
  switch (o) {
    case OracleOrigin::Measured: return "measured";
    case OracleOrigin::Declared: return "declared";
    case OracleOrigin::General: return "general";
    case OracleOrigin::Synthetic: return "synthetic";
  }
  return "declared";
}

TimeOracle::TimeOracle(std::map<std::string, std::int64_t> entries,
                       OracleOrigin origin)
    : entries_(std::move(entries)), origin_(origin) {
  for (const auto& [id, us] : entries_)
    if (us < 0)
      throw ValidationError("oracle entry " + id + ": negative duration");
}

TimeOracle TimeOracle::declared(const Graph& g) {
  std::map<std::string, std::int64_t> entries;
  std::vector<std::string> missing;
  for (const Op& op : g.ops()) {
    if (op.time_us)
      entries[op.id] = *op.time_us;
    else
      missing.push_back(op.id);
  }
  if (!missing.empty())
    throw CoverageError("ops without declared time: " + join_ids(missing));
  return TimeOracle(std::move(entries), OracleOrigin::Declared);
}

TimeOracle TimeOracle::general(const Graph& g) {
  std::map<std::string, std::int64_t> entries;
  for (const Op& op : g.ops())
    entries[op.id] = op.kind == OpKind::Recv ? 1 : 0;
  return TimeOracle(std::move(entries), OracleOrigin::General);
}

TimeOracle TimeOracle::from_traces(const std::vector<TraceRecord>& records,
                                   const Graph& g) {
  std::map<std::string, std::int64_t> entries;
  for (const TraceRecord& r : records) {
    auto it = entries.find(r.op_id);
    if (it == entries.end())
      entries[r.op_id] = r.us;
    else
      it->second = std::min(it->second, r.us);
  }
  std::vector<std::string> missing;
  for (const Op& op : g.ops())
    if (entries.find(op.id) == entries.end()) missing.push_back(op.id);
  if (!missing.empty())
    throw CoverageError("ops without trace records: " + join_ids(missing));
  // Drop records for ops outside the graph so the oracle stays exactly total.
  std::map<std::string, std::int64_t> kept;
  for (const Op& op : g.ops()) kept[op.id] = entries[op.id];
  return TimeOracle(std::move(kept), OracleOrigin::Measured);
}

TimeOracle TimeOracle::from_bandwidth(const Graph& g,
                                      std::int64_t bytes_per_us) {
  if (bytes_per_us <= 0)
    throw ParameterError("bandwidth must be positive bytes per microsecond");
  std::map<std::string, std::int64_t> entries;
  std::vector<std::string> missing;
  for (const Op& op : g.ops()) {
    if (is_transfer(op.kind) && op.bytes) {
      // Nearest microsecond, half rounds up.
      entries[op.id] = (2 * *op.bytes + bytes_per_us) / (2 * bytes_per_us);
    } else if (op.time_us) {
      entries[op.id] = *op.time_us;
    } else {
      missing.push_back(op.id);
    }
  }
  if (!missing.empty())
    throw CoverageError("ops without bytes or declared time: " +
                        join_ids(missing));
  return TimeOracle(std::move(entries), OracleOrigin::Synthetic);
}

std::int64_t TimeOracle::at(const std::string& op_id) const {
  auto it = entries_.find(op_id);
  if (it == entries_.end())
    throw CoverageError("oracle has no entry for op: " + op_id);
  return it->second;
}

void TimeOracle::check_covers(const Graph& g) const {
  std::vector<std::string> missing;
  for (const Op& op : g.ops())
    if (entries_.find(op.id) == entries_.end()) missing.push_back(op.id);
  if (!missing.empty())
    throw CoverageError("oracle missing entries for: " + join_ids(missing));
}

Json TimeOracle::to_json() const {
  Json j;
  j["origin"] = origin_name(origin_);
  j["entries"] = Json::object();
  for (const auto& [id, us] : entries_) j["entries"][id] = us;
  return j;
}

}  // namespace commsched
