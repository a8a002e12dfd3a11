#include "nf/pathtype.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nf {

namespace {

std::map<VarName, std::vector<int>> adjacency(const VarGraph& g) {
  std::map<VarName, std::vector<int>> adj;
  for (const auto& v : g.vertices) adj[v];
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    adj[g.edges[i].u].push_back(static_cast<int>(i));
    if (g.edges[i].u != g.edges[i].v)
      adj[g.edges[i].v].push_back(static_cast<int>(i));
  }
  return adj;
}

int signed_step(const Edge& e, const VarName& from) {
  if (e.kind == Rel::equal) return 0;
  // Traversing element -> container raises the type by one.
  return from == e.u ? 1 : -1;
}

}  // namespace

TypeAssignment component_types_from_root(const VarGraph& g, const VarName& root) {
  auto adj = adjacency(g);
  if (!adj.count(root)) throw std::invalid_argument("unknown root " + root);
  TypeAssignment types;
  types[root] = 0;
  std::vector<VarName> stack{root};
  while (!stack.empty()) {
    VarName cur = stack.back();
    stack.pop_back();
    for (int eid : adj[cur]) {
      const Edge& e = g.edges[eid];
      VarName to = e.u == cur ? e.v : e.u;
      if (types.count(to)) continue;
      types[to] = types.at(cur) + signed_step(e, cur);
      stack.push_back(to);
    }
  }
  return types;
}

PathTypingTrace type_acyclic(const Formula& f) {
  VarGraph g = build_graph(f);
  if (auto cycle = find_cycle(g)) throw CyclicFormulaError(*cycle);

  auto adj = adjacency(g);
  PathTypingTrace trace;
  TypeAssignment raw;
  auto comps = components(g);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& comp = comps[ci];
    const VarName& root = comp.front();  // least name of the component
    trace.roots[static_cast<int>(ci)] = root;
    raw[root] = 0;
    trace.paths[root] = {};
    // In a forest the discovery path from the root is the unique path.
    std::vector<VarName> stack{root};
    while (!stack.empty()) {
      VarName cur = stack.back();
      stack.pop_back();
      for (int eid : adj[cur]) {
        const Edge& e = g.edges[eid];
        VarName to = e.u == cur ? e.v : e.u;
        if (raw.count(to)) continue;
        raw[to] = raw.at(cur) + signed_step(e, cur);
        // Path from `to` to the root: this edge, then cur's path.
        auto path = trace.paths.at(cur);
        path.insert(path.begin(), eid);
        trace.paths[to] = std::move(path);
        stack.push_back(to);
      }
    }
  }
  trace.assignment = canonicalize(raw, g);
  return trace;
}

namespace {

// Counts simple paths from `cur` to `goal`, stopping early past `limit`.
int count_simple_paths(const VarGraph& g,
                       const std::map<VarName, std::vector<int>>& adj,
                       const VarName& cur, const VarName& goal,
                       std::set<VarName>& visited, int limit) {
  if (cur == goal) return 1;
  int total = 0;
  visited.insert(cur);
  for (int eid : adj.at(cur)) {
    const Edge& e = g.edges[eid];
    VarName to = e.u == cur ? e.v : e.u;
    if (visited.count(to)) continue;
    total += count_simple_paths(g, adj, to, goal, visited, limit - total);
    if (total > limit) break;
  }
  visited.erase(cur);
  return total;
}

}  // namespace

bool verify_uniqueness(const VarGraph& g) {
  auto adj = adjacency(g);
  for (const auto& comp : components(g)) {
    const VarName& root = comp.front();
    for (const auto& v : comp) {
      std::set<VarName> visited;
      if (count_simple_paths(g, adj, v, root, visited, 1) != 1) return false;
    }
  }
  return true;
}

}  // namespace nf
