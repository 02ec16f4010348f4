#include "properties.hpp"

#include <algorithm>

#include "errors.hpp"

namespace commsched {

std::string_view property_mode_name(PropertyMode m) {
  return m == PropertyMode::Literal ? "literal" : "amended";
}

PropertyMode property_mode_from_name(std::string_view s) {
  if (s == "literal") return PropertyMode::Literal;
  if (s == "amended") return PropertyMode::Amended;
  throw ParameterError("unknown property mode: " + std::string(s));
}

std::map<std::string, std::vector<std::string>> find_dependencies(
    const Graph& g) {
  const auto& ops = g.ops();
  std::vector<std::vector<std::string>> dep(ops.size());
  std::vector<bool> done(ops.size(), false);
  // Post-order DFS: an op's set is the union over predecessors, plus itself
  // for recvs.
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < ops.size(); ++root) {
    if (done[root]) continue;
    stack.push_back(root);
    while (!stack.empty()) {
      std::size_t v = stack.back();
      if (done[v]) {
        stack.pop_back();
        continue;
      }
      bool ready = true;
      for (std::size_t p : g.preds()[v]) {
        if (!done[p]) {
          stack.push_back(p);
          ready = false;
        }
      }
      if (!ready) continue;
      std::vector<std::string> acc;
      for (std::size_t p : g.preds()[v]) {
        std::vector<std::string> merged;
        std::set_union(acc.begin(), acc.end(), dep[p].begin(), dep[p].end(),
                       std::back_inserter(merged));
        acc = std::move(merged);
      }
      if (ops[v].kind == OpKind::Recv) {
        std::vector<std::string> merged;
        std::vector<std::string> self{ops[v].id};
        std::set_union(acc.begin(), acc.end(), self.begin(), self.end(),
                       std::back_inserter(merged));
        acc = std::move(merged);
      }
      dep[v] = std::move(acc);
      done[v] = true;
      stack.pop_back();
    }
  }
  std::map<std::string, std::vector<std::string>> out;
  for (std::size_t i = 0; i < ops.size(); ++i) out[ops[i].id] = std::move(dep[i]);
  return out;
}

PropertyTable update_properties(const Graph& g, const TimeOracle& time,
                                const std::set<std::string>& outstanding,
                                PropertyMode mode) {
  for (const std::string& id : outstanding) {
    if (!g.has_op(id)) throw DomainError("outstanding set: unknown op " + id);
    if (g.op(id).kind != OpKind::Recv)
      throw DomainError("outstanding set: " + id + " is not a recv op");
  }
  time.check_covers(g);

  PropertyTable t;
  t.mode = mode;
  t.dep = find_dependencies(g);

  for (const Op& op : g.ops()) {
    std::int64_t m = 0;
    for (const std::string& r : t.dep[op.id])
      if (outstanding.count(r)) m += time.at(r);
    t.m[op.id] = m;
  }
  for (const std::string& r : outstanding) {
    t.p[r] = 0;
    t.m_plus[r] = std::nullopt;
  }
  for (const Op& op : g.ops()) {
    if (outstanding.count(op.id)) continue;
    std::vector<std::string> d;
    for (const std::string& r : t.dep[op.id])
      if (outstanding.count(r)) d.push_back(r);
    if (d.empty()) continue;
    if (d.size() == 1) {
      t.p[d.front()] += time.at(op.id);
      if (mode == PropertyMode::Amended)
        t.m_plus[d.front()] =
            duration_min(t.m_plus[d.front()], t.m[op.id]);
    } else {
      for (const std::string& r : d)
        t.m_plus[r] = duration_min(t.m_plus[r], t.m[op.id]);
    }
  }
  return t;
}

Json PropertyTable::to_json() const {
  Json j;
  j["mode"] = property_mode_name(mode);
  j["dep"] = Json::object();
  for (const auto& [id, recvs] : dep) j["dep"][id] = recvs;
  j["M"] = Json::object();
  for (const auto& [id, v] : m) j["M"][id] = v;
  j["P"] = Json::object();
  for (const auto& [id, v] : p) j["P"][id] = v;
  j["M_plus"] = Json::object();
  for (const auto& [id, v] : m_plus) {
    if (v)
      j["M_plus"][id] = *v;
    else
      j["M_plus"][id] = nullptr;
  }
  return j;
}

}  // namespace commsched
