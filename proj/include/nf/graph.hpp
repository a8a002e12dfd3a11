#ifndef NF_GRAPH_HPP
#define NF_GRAPH_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nf/formula.hpp"

namespace nf {

enum class EdgeOrient { u_in_v, v_in_u, none };

// One edge per atomic-formula occurrence; `occurrence` is the preorder atom
// index of that occurrence in the formula.
struct Edge {
  VarName u;
  VarName v;
  Rel kind;
  EdgeOrient orient;  // none iff kind == equal
  int occurrence;
};

struct VarGraph {
  std::vector<VarName> vertices;  // sorted, unique
  std::vector<Edge> edges;        // ordered by occurrence
};

// A closed walk witnessing a cycle: consecutive edges are distinct
// occurrences, consecutive edges share the listed vertices, and the first
// and last vertex coincide. A single self-loop edge is a length-1 witness.
struct CycleWitness {
  std::vector<int> edge_ids;
  std::vector<VarName> vertex_sequence;  // edge_ids.size() + 1 entries
};

// Vertices are all variables of f (free and bound, including vacuous
// binders); one edge per atom occurrence, negated atoms included.
// Requires a desugared, rectified formula.
VarGraph build_graph(const Formula& f);

// Empty result iff the multigraph is a forest. Parallel edges form a
// length-2 cycle and a reflexive atom a length-1 cycle.
std::optional<CycleWitness> find_cycle(const VarGraph& g);

// Re-checks a witness against the graph without consulting find_cycle.
bool check_witness(const VarGraph& g, const CycleWitness& w);

// Direct bounded search for a closed non-backtracking walk over the atom
// occurrences of f (the chain-based definition of acyclicity); independent
// of build_graph/find_cycle.
bool is_acyclic_chain(const Formula& f);

// DOT text: membership edges as arrows from element to container, equality
// edges without direction; deterministic ordering. Vertices present in
// `labels` are annotated with the given label.
std::string to_dot(const VarGraph& g,
                   const std::map<VarName, std::string>& labels = {});

// Connected components as sorted vertex sets, ordered by least vertex.
std::vector<std::vector<VarName>> components(const VarGraph& g);

}  // namespace nf

#endif
