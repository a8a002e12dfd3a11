#ifndef NF_STRATIFY_HPP
#define NF_STRATIFY_HPP

#include <map>
#include <variant>
#include <vector>

#include "nf/graph.hpp"

namespace nf {

// Integer types per variable. Valid when every membership atom "a in b"
// has types[b] == types[a] + 1 and every equality atom has equal types.
// Canonical form: minimum type 0 within each graph component.
using TypeAssignment = std::map<VarName, int>;

// A closed walk whose net membership weight is nonzero refutes every type
// assignment: traversing a membership edge element-to-container adds 1,
// container-to-element subtracts 1, equality edges add 0.
struct UnsatCertificate {
  struct Step {
    int occurrence;
    bool forward;  // true: traversed from edge.u towards edge.v
  };
  std::vector<Step> closed_walk;
  int net_weight;
};

using StratifyResult = std::variant<TypeAssignment, UnsatCertificate>;

// Exact decision by breadth-first constraint propagation per component.
// Success yields a canonical assignment; failure yields a certificate that
// passes check_certificate. Requires a desugared, rectified formula.
StratifyResult stratify(const Formula& f);

inline bool is_stratified(const StratifyResult& r) {
  return std::holds_alternative<TypeAssignment>(r);
}

// True iff every atom constraint of f holds under t. Throws
// std::invalid_argument when t misses a variable of f.
bool check_assignment(const Formula& f, const TypeAssignment& t);

// Recomputes the walk against the atoms of f: true iff the walk is closed
// and its recomputed net weight equals c.net_weight and is nonzero. Throws
// std::invalid_argument on occurrence ids outside f.
bool check_certificate(const Formula& f, const UnsatCertificate& c);

// Uniform per-component shift making each component's minimum type 0.
// Throws std::invalid_argument when t misses a vertex of g.
TypeAssignment canonicalize(const TypeAssignment& t, const VarGraph& g);

}  // namespace nf

#endif
