#ifndef NF_PATHTYPE_HPP
#define NF_PATHTYPE_HPP

#include <map>
#include <vector>

#include "nf/errors.hpp"
#include "nf/graph.hpp"
#include "nf/stratify.hpp"

namespace nf {

// Thrown when an operation requiring an acyclic formula receives a cyclic
// one; carries the offending cycle.
struct CyclicFormulaError : Error {
  explicit CyclicFormulaError(CycleWitness w)
      : Error("formula is not acyclic"), witness(std::move(w)) {}
  CycleWitness witness;
};

struct PathTypingTrace {
  std::map<int, VarName> roots;                  // component id -> chosen root
  std::map<VarName, std::vector<int>> paths;     // vertex -> edge ids to its root
  TypeAssignment assignment;                     // canonicalized
};

// Types an acyclic formula by walking, for every variable, the unique path
// to its component root (the lexicographically least vertex) and summing
// signed membership steps; the result is canonicalized. Throws
// CyclicFormulaError on cyclic input.
PathTypingTrace type_acyclic(const Formula& f);

// Raw component typing relative to an explicit root (type 0 at the root,
// no canonical shift). The component is the one containing `root`.
TypeAssignment component_types_from_root(const VarGraph& g, const VarName& root);

// Exhaustively enumerates simple paths and confirms that every vertex has
// exactly one simple path to its component root. Requires an acyclic graph.
bool verify_uniqueness(const VarGraph& g);

}  // namespace nf

#endif
