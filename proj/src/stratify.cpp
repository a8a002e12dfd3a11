#include "nf/stratify.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace nf {

namespace {

// Weight of traversing edge e in the given direction.
int step_weight(const Edge& e, bool forward) {
  if (e.kind == Rel::equal) return 0;
  return forward ? 1 : -1;
}

}  // namespace

StratifyResult stratify(const Formula& f) {
  VarGraph g = build_graph(f);
  std::map<VarName, std::vector<int>> adj;
  for (const auto& v : g.vertices) adj[v];
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    adj[g.edges[i].u].push_back(static_cast<int>(i));
    if (g.edges[i].u != g.edges[i].v)
      adj[g.edges[i].v].push_back(static_cast<int>(i));
  }

  TypeAssignment types;
  // Parent step taken to first label each vertex, for certificate extraction.
  std::map<VarName, UnsatCertificate::Step> parent;

  auto walk_to_anchor = [&](const VarName& from) {
    // Steps from the anchor down to `from`, using recorded parents.
    std::vector<UnsatCertificate::Step> steps;
    VarName cur = from;
    while (parent.count(cur)) {
      auto st = parent.at(cur);
      steps.push_back(st);
      const Edge& e = g.edges[st.occurrence];
      cur = st.forward ? e.u : e.v;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  };

  for (const auto& anchor : g.vertices) {
    if (types.count(anchor)) continue;
    // g.vertices is sorted, so the anchor is the least name of its component.
    types[anchor] = 0;
    std::deque<VarName> queue{anchor};
    while (!queue.empty()) {
      VarName cur = queue.front();
      queue.pop_front();
      for (int eid : adj[cur]) {
        const Edge& e = g.edges[eid];
        bool forward = e.u == cur;
        VarName to = forward ? e.v : e.u;
        int want = types.at(cur) + step_weight(e, forward);
        auto it = types.find(to);
        if (it == types.end()) {
          types[to] = want;
          parent[to] = {eid, forward};
          queue.push_back(to);
          continue;
        }
        if (it->second == want) continue;
        // Conflict. Certificate walk: anchor down to `to`, across the
        // conflicting edge to `cur`, then back up to the anchor.
        UnsatCertificate cert;
        cert.closed_walk = walk_to_anchor(to);
        cert.closed_walk.push_back({eid, !forward});
        auto up = walk_to_anchor(cur);
        std::reverse(up.begin(), up.end());
        for (auto& st : up) cert.closed_walk.push_back({st.occurrence, !st.forward});
        cert.net_weight = it->second - want;
        return cert;
      }
    }
  }
  return canonicalize(types, g);
}

bool check_assignment(const Formula& f, const TypeAssignment& t) {
  for (const auto& a : atom_occurrences(f)) {
    auto li = t.find(a.lhs);
    auto ri = t.find(a.rhs);
    if (li == t.end() || ri == t.end())
      throw std::invalid_argument("check_assignment: missing variable " +
                                  (li == t.end() ? a.lhs : a.rhs));
    if (a.rel == Rel::member) {
      if (ri->second != li->second + 1) return false;
    } else {
      if (li->second != ri->second) return false;
    }
  }
  return true;
}

bool check_certificate(const Formula& f, const UnsatCertificate& c) {
  auto atoms = atom_occurrences(f);
  if (c.closed_walk.empty()) return false;
  int weight = 0;
  VarName start, cur;
  bool first = true;
  for (const auto& st : c.closed_walk) {
    if (st.occurrence < 0 || st.occurrence >= static_cast<int>(atoms.size()))
      throw std::invalid_argument("check_certificate: dangling occurrence id " +
                                  std::to_string(st.occurrence));
    const auto& a = atoms[st.occurrence];
    VarName from = st.forward ? a.lhs : a.rhs;
    VarName to = st.forward ? a.rhs : a.lhs;
    if (first) {
      start = from;
      cur = from;
      first = false;
    }
    if (from != cur) return false;  // walk not connected
    cur = to;
    if (a.rel == Rel::member) weight += st.forward ? 1 : -1;
  }
  if (cur != start) return false;  // walk not closed
  return weight == c.net_weight && weight != 0;
}

TypeAssignment canonicalize(const TypeAssignment& t, const VarGraph& g) {
  TypeAssignment out;
  for (const auto& comp : components(g)) {
    int lo = 0;
    bool have = false;
    for (const auto& v : comp) {
      auto it = t.find(v);
      if (it == t.end())
        throw std::invalid_argument("canonicalize: missing variable " + v);
      lo = have ? std::min(lo, it->second) : it->second;
      have = true;
    }
    for (const auto& v : comp) out[v] = t.at(v) - lo;
  }
  return out;
}

}  // namespace nf
