#include "nf/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace nf {

namespace {

std::map<VarName, std::vector<int>> adjacency(const VarGraph& g) {
  std::map<VarName, std::vector<int>> adj;
  for (const auto& v : g.vertices) adj[v];
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    adj[g.edges[i].u].push_back(static_cast<int>(i));
    if (g.edges[i].v != g.edges[i].u) adj[g.edges[i].v].push_back(static_cast<int>(i));
  }
  return adj;
}

const VarName& other_end(const Edge& e, const VarName& from) {
  return from == e.u ? e.v : e.u;
}

}  // namespace

VarGraph build_graph(const Formula& f) {
  if (!is_desugared(f)) throw std::invalid_argument("build_graph: formula has sugar");
  if (!is_rectified(f)) throw std::invalid_argument("build_graph: formula not rectified");
  VarGraph g;
  auto vars = all_vars(f);
  g.vertices.assign(vars.begin(), vars.end());
  auto atoms = atom_occurrences(f);
  g.edges.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& a = atoms[i];
    g.edges.push_back({a.lhs, a.rhs, a.rel,
                       a.rel == Rel::member ? EdgeOrient::u_in_v : EdgeOrient::none,
                       static_cast<int>(i)});
  }
  return g;
}

std::optional<CycleWitness> find_cycle(const VarGraph& g) {
  auto adj = adjacency(g);
  // Self-loops first: a reflexive atom is a length-1 cycle.
  for (const auto& e : g.edges) {
    if (e.u == e.v)
      return CycleWitness{{e.occurrence}, {e.u, e.u}};
  }
  std::map<VarName, int> state;  // 0 unseen, 1 visited
  std::map<VarName, std::pair<VarName, int>> parent;  // vertex -> (parent, edge id)
  for (const auto& root : g.vertices) {
    if (state.count(root)) continue;
    // Iterative DFS; frame holds the vertex and the next adjacency index.
    std::vector<std::pair<VarName, std::size_t>> stack;
    state[root] = 1;
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [cur, next] = stack.back();
      const auto& out = adj[cur];
      if (next >= out.size()) {
        stack.pop_back();
        continue;
      }
      int eid = out[next++];
      const Edge& e = g.edges[eid];
      auto pit = parent.find(cur);
      if (pit != parent.end() && pit->second.second == eid) continue;  // tree edge back
      const VarName& to = other_end(e, cur);
      if (!state.count(to)) {
        state[to] = 1;
        parent[to] = {cur, eid};
        stack.emplace_back(to, 0);
        continue;
      }
      // Back edge: `to` is an ancestor of `cur` on the DFS stack. Walk the
      // parent chain from cur up to to.
      std::vector<int> up_edges;
      std::vector<VarName> up_vertices{cur};
      VarName walk = cur;
      while (walk != to) {
        auto& [p, pe] = parent.at(walk);
        up_edges.push_back(pe);
        walk = p;
        up_vertices.push_back(walk);
      }
      CycleWitness w;
      w.vertex_sequence.assign(up_vertices.rbegin(), up_vertices.rend());
      w.edge_ids.assign(up_edges.rbegin(), up_edges.rend());
      w.edge_ids.push_back(eid);
      w.vertex_sequence.push_back(to);
      return w;
    }
  }
  return std::nullopt;
}

bool check_witness(const VarGraph& g, const CycleWitness& w) {
  if (w.edge_ids.empty()) return false;
  if (w.vertex_sequence.size() != w.edge_ids.size() + 1) return false;
  if (w.vertex_sequence.front() != w.vertex_sequence.back()) return false;
  for (std::size_t i = 0; i < w.edge_ids.size(); ++i) {
    int id = w.edge_ids[i];
    if (id < 0 || id >= static_cast<int>(g.edges.size())) return false;
    const Edge& e = g.edges[id];
    const VarName& from = w.vertex_sequence[i];
    const VarName& to = w.vertex_sequence[i + 1];
    bool matches = (e.u == from && e.v == to) || (e.v == from && e.u == to);
    if (!matches) return false;
    if (i + 1 < w.edge_ids.size() && w.edge_ids[i] == w.edge_ids[i + 1]) return false;
  }
  return true;
}

bool is_acyclic_chain(const Formula& f) {
  auto atoms = atom_occurrences(f);
  // Connections between variables, one per occurrence.
  struct Conn {
    VarName a;
    VarName b;
  };
  std::vector<Conn> conns;
  conns.reserve(atoms.size());
  for (const auto& at : atoms) conns.push_back({at.lhs, at.rhs});

  std::set<VarName> vars = all_vars(f);
  // A chain from x to x exists iff some non-backtracking walk returns to its
  // start. States are (current variable, last occurrence used); walks longer
  // than 2*|occurrences|+1 revisit a state, so the bounded search is exact.
  const int max_len = 2 * static_cast<int>(conns.size()) + 1;
  for (const auto& start : vars) {
    std::set<std::pair<VarName, int>> seen;
    std::vector<std::pair<VarName, int>> frontier;
    for (std::size_t i = 0; i < conns.size(); ++i) {
      const auto& c = conns[i];
      VarName next;
      if (c.a == start)
        next = c.b;
      else if (c.b == start)
        next = c.a;
      else
        continue;
      if (next == start) return false;  // reflexive occurrence closes immediately
      auto st = std::make_pair(next, static_cast<int>(i));
      if (seen.insert(st).second) frontier.push_back(st);
    }
    for (int len = 2; len <= max_len && !frontier.empty(); ++len) {
      std::vector<std::pair<VarName, int>> next_frontier;
      for (const auto& [cur, last] : frontier) {
        for (std::size_t i = 0; i < conns.size(); ++i) {
          if (static_cast<int>(i) == last) continue;  // backtracking step
          const auto& c = conns[i];
          VarName next;
          if (c.a == cur)
            next = c.b;
          else if (c.b == cur)
            next = c.a;
          else
            continue;
          if (next == start) return false;
          auto st = std::make_pair(next, static_cast<int>(i));
          if (seen.insert(st).second) next_frontier.push_back(st);
        }
      }
      frontier = std::move(next_frontier);
    }
  }
  return true;
}

namespace {

std::string dot_id(const VarName& name) {
  if (name.empty()) return "\"\"";
  bool all_digits = true;
  bool word = true;
  for (char c : name) {
    if (!std::isdigit(static_cast<unsigned char>(c))) all_digits = false;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') word = false;
  }
  // DOT ids are either numerals or alphanumeric words not starting with a digit.
  bool bare = word && (all_digits || !std::isdigit(static_cast<unsigned char>(name[0])));
  return bare ? name : "\"" + name + "\"";
}

}  // namespace

std::string to_dot(const VarGraph& g, const std::map<VarName, std::string>& labels) {
  std::string out = "digraph G {\n";
  for (const auto& v : g.vertices) {
    auto it = labels.find(v);
    if (it != labels.end())
      out += "  " + dot_id(v) + " [label=\"" + it->second + "\"];\n";
    else
      out += "  " + dot_id(v) + ";\n";
  }
  for (const auto& e : g.edges) {
    if (e.kind == Rel::member) {
      const VarName& from = e.orient == EdgeOrient::v_in_u ? e.v : e.u;
      const VarName& to = e.orient == EdgeOrient::v_in_u ? e.u : e.v;
      out += "  " + dot_id(from) + " -> " + dot_id(to) + ";\n";
    } else {
      out += "  " + dot_id(e.u) + " -> " + dot_id(e.v) + " [dir=none, style=dashed];\n";
    }
  }
  out += "}\n";
  return out;
}

std::vector<std::vector<VarName>> components(const VarGraph& g) {
  auto adj = adjacency(g);
  std::set<VarName> unseen(g.vertices.begin(), g.vertices.end());
  std::vector<std::vector<VarName>> out;
  // g.vertices is sorted, so components come out ordered by least vertex.
  for (const auto& root : g.vertices) {
    if (!unseen.count(root)) continue;
    std::vector<VarName> comp;
    std::vector<VarName> stack{root};
    unseen.erase(root);
    while (!stack.empty()) {
      VarName cur = stack.back();
      stack.pop_back();
      comp.push_back(cur);
      for (int eid : adj[cur]) {
        const VarName& to = other_end(g.edges[eid], cur);
        if (unseen.erase(to)) stack.push_back(to);
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace nf
