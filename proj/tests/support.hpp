#ifndef NF_TESTS_SUPPORT_HPP
#define NF_TESTS_SUPPORT_HPP

// Test-side oracles, written independently of the library algorithms they
// cross-check.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "nf/formula.hpp"
#include "nf/model.hpp"

namespace nft {

struct OracleAtom {
  nf::VarName lhs;
  bool member;  // false: equality
  nf::VarName rhs;
};

// Fresh recursive walk over the AST, independent of nf::atom_occurrences.
inline void collect_atoms(const nf::Formula& f, std::vector<OracleAtom>& out) {
  if (const auto* a = std::get_if<nf::AtomNode>(&f.node())) {
    out.push_back({a->lhs, a->rel == nf::Rel::member, a->rhs});
  } else if (const auto* n = std::get_if<nf::NotNode>(&f.node())) {
    collect_atoms(*n->sub, out);
  } else if (const auto* b = std::get_if<nf::BinNode>(&f.node())) {
    collect_atoms(*b->lhs, out);
    collect_atoms(*b->rhs, out);
  } else if (const auto* q = std::get_if<nf::QuantNode>(&f.node())) {
    collect_atoms(*q->body, out);
  }
}

inline void collect_vars(const nf::Formula& f, std::set<nf::VarName>& out) {
  if (const auto* a = std::get_if<nf::AtomNode>(&f.node())) {
    out.insert(a->lhs);
    out.insert(a->rhs);
  } else if (const auto* n = std::get_if<nf::NotNode>(&f.node())) {
    collect_vars(*n->sub, out);
  } else if (const auto* b = std::get_if<nf::BinNode>(&f.node())) {
    collect_vars(*b->lhs, out);
    collect_vars(*b->rhs, out);
  } else if (const auto* q = std::get_if<nf::QuantNode>(&f.node())) {
    out.insert(q->var);
    collect_vars(*q->body, out);
  }
}

// Exhaustive stratifiability decision: tries every assignment of types in
// [0, #vars) to the variables of f.
inline bool brute_force_stratifiable(const nf::Formula& f) {
  std::set<nf::VarName> var_set;
  collect_vars(f, var_set);
  std::vector<nf::VarName> vars(var_set.begin(), var_set.end());
  std::vector<OracleAtom> atoms;
  collect_atoms(f, atoms);
  int n = static_cast<int>(vars.size());
  if (n == 0) return true;

  std::vector<int> assign(n, 0);
  while (true) {
    std::map<nf::VarName, int> types;
    for (int i = 0; i < n; ++i) types[vars[i]] = assign[i];
    bool ok = true;
    for (const auto& a : atoms) {
      if (a.member ? types[a.rhs] != types[a.lhs] + 1 : types[a.lhs] != types[a.rhs])
        ok = false;
    }
    if (ok) return true;
    int i = 0;
    while (i < n && ++assign[i] == n) assign[i++] = 0;
    if (i == n) return false;
  }
}

// Exhaustive search for a closed non-backtracking walk over atom occurrences
// (depth-first over walk states, bounded by 2*atoms+1 steps).
inline bool brute_force_has_cycle(const nf::Formula& f) {
  std::vector<OracleAtom> atoms;
  collect_atoms(f, atoms);
  std::set<nf::VarName> var_set;
  collect_vars(f, var_set);
  int limit = 2 * static_cast<int>(atoms.size()) + 1;

  struct Walker {
    const std::vector<OracleAtom>& atoms;
    int limit;
    bool found = false;

    void walk(const nf::VarName& start, const nf::VarName& cur, int last, int len) {
      if (found || len > limit) return;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (static_cast<int>(i) == last) continue;
        const auto& a = atoms[i];
        std::optional<nf::VarName> next;
        if (a.lhs == cur)
          next = a.rhs;
        else if (a.rhs == cur)
          next = a.lhs;
        if (!next) continue;
        if (*next == start) {
          found = true;
          return;
        }
        walk(start, *next, static_cast<int>(i), len + 1);
      }
    }
  };

  for (const auto& v : var_set) {
    Walker w{atoms, limit};
    w.walk(v, v, -1, 1);
    if (w.found) return true;
  }
  return false;
}

// Hand-rolled transitive closure over HF values.
inline std::set<std::string> closure_keys(const std::vector<nf::HfSet>& seeds) {
  std::set<std::string> keys;
  std::vector<nf::HfSet> todo = seeds;
  while (!todo.empty()) {
    nf::HfSet s = todo.back();
    todo.pop_back();
    if (!keys.insert(s.key()).second) continue;
    for (const auto& m : s.members()) todo.push_back(m);
  }
  return keys;
}

}  // namespace nft

#endif
