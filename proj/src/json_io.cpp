#include "nf/json_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace nf {

namespace {

const char* orient_text(EdgeOrient o) {
  switch (o) {
    case EdgeOrient::u_in_v:
      return "u_in_v";
    case EdgeOrient::v_in_u:
      return "v_in_u";
    case EdgeOrient::none:
      return "none";
  }
  return "?";
}

}  // namespace

json graph_json(const VarGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"id", e.occurrence},
                     {"u", e.u},
                     {"v", e.v},
                     {"kind", e.kind == Rel::member ? "member" : "equal"},
                     {"orient", orient_text(e.orient)}});
  }
  return {{"vertices", g.vertices}, {"edges", edges}};
}

json cycle_json(const CycleWitness& w) {
  return {{"vertices", w.vertex_sequence}, {"edges", w.edge_ids}};
}

json acyclic_verdict_json(const std::optional<CycleWitness>& cycle) {
  return {{"acyclic", !cycle.has_value()},
          {"cycle", cycle ? cycle_json(*cycle) : json(nullptr)}};
}

json types_json(const TypeAssignment& t) {
  json out = json::object();
  for (const auto& [var, type] : t) out[var] = type;
  return out;
}

json certificate_json(const UnsatCertificate& c) {
  json walk = json::array();
  for (const auto& step : c.closed_walk)
    walk.push_back({{"edge", step.occurrence}, {"dir", step.forward ? "forward" : "backward"}});
  return {{"walk", walk}, {"net_weight", c.net_weight}};
}

json stratify_verdict_json(const StratifyResult& r) {
  if (const auto* t = std::get_if<TypeAssignment>(&r)) {
    return {{"stratified", true}, {"types", types_json(*t)}, {"certificate", nullptr}};
  }
  return {{"stratified", false},
          {"types", nullptr},
          {"certificate", certificate_json(std::get<UnsatCertificate>(r))}};
}

json trace_json(const PathTypingTrace& t) {
  json roots = json::object();
  for (const auto& [comp, root] : t.roots) roots[std::to_string(comp)] = root;
  return {{"roots", roots}, {"types", types_json(t.assignment)}};
}

json corpus_report_json(const CorpusReport& r) {
  json entries = json::array();
  for (const auto& v : r.entries) {
    json e = {{"name", v.name},
              {"admissible", v.admissibility.ok()},
              {"acyclic", v.acyclic},
              {"stratified", v.stratified},
              {"ok", v.ok}};
    e["types"] = v.types ? types_json(*v.types) : json(nullptr);
    e["cycle"] = v.cycle ? cycle_json(*v.cycle) : json(nullptr);
    e["path_types"] = v.path_types ? types_json(*v.path_types) : json(nullptr);
    entries.push_back(std::move(e));
  }
  return {{"entries", entries}, {"pass", r.pass}};
}

json universe_json(const Universe& u) {
  json pairs = json::array();
  for (int m = 0; m < u.size(); ++m)
    for (int c = 0; c < u.size(); ++c)
      if (u.member(m, c)) pairs.push_back({u.elements[m], u.elements[c]});
  json labels = json::object();
  for (const auto& [name, elem] : u.labels) labels[name] = elem;
  return {{"elements", u.elements}, {"membership", pairs}, {"labels", labels}};
}

Universe universe_from_json(const json& j) {
  Universe u;
  u.elements = j.at("elements").get<std::vector<std::string>>();
  int n = static_cast<int>(u.elements.size());
  u.membership.assign(n, std::vector<bool>(n, false));
  for (const auto& pair : j.at("membership")) {
    if (!pair.is_array() || pair.size() != 2)
      throw ModelError("universe: membership entries must be [member, container]");
    int m = u.index_of(pair[0].get<std::string>());
    int c = u.index_of(pair[1].get<std::string>());
    if (m < 0 || c < 0)
      throw ModelError("universe: membership pair references unknown element");
    u.membership[m][c] = true;
  }
  if (j.contains("labels")) {
    for (const auto& [name, elem] : j.at("labels").items()) {
      if (u.index_of(elem.get<std::string>()) < 0)
        throw ModelError("universe: label '" + name + "' references unknown element");
      u.labels[name] = elem.get<std::string>();
    }
  }
  // Extensionality: no two elements with identical member sets.
  u.extensional = true;
  for (int a = 0; a < n && u.extensional; ++a)
    for (int b = a + 1; b < n && u.extensional; ++b) {
      bool same = true;
      for (int m = 0; m < n && same; ++m)
        if (u.membership[m][a] != u.membership[m][b]) same = false;
      if (same) u.extensional = false;
    }
  return u;
}

Universe load_universe(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open universe file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    throw ModelError("bad universe file " + path + ": " + ex.what());
  }
  return universe_from_json(j);
}

}  // namespace nf
