#ifndef NF_FORMULA_HPP
#define NF_FORMULA_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace nf {

// Identifiers are letters, digits, underscore and prime; "0" and "V" are
// ordinary names with no built-in meaning.
using VarName = std::string;

enum class Rel { member, equal };

// Relation of one link in a sugared atom chain ("a in b != c ...").
enum class ChainRel { member, not_member, equal, not_equal };

enum class BinOp { conj, disj, implies, iff };

enum class Quant { forall, exists, exists_unique };

struct SourceLoc {
  int line = 0;
  int col = 0;
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct AtomNode {
  VarName lhs;
  Rel rel;
  VarName rhs;
};

// Sugar: chain of adjacent relations, vars.size() == rels.size() + 1.
struct ChainNode {
  std::vector<VarName> vars;
  std::vector<ChainRel> rels;
};

struct NotNode {
  FormulaPtr sub;
};

struct BinNode {
  BinOp op;
  FormulaPtr lhs;
  FormulaPtr rhs;
};

// `bound` is the bounded-quantifier sugar ("exists m in R . ...").
struct QuantNode {
  Quant q;
  VarName var;
  std::optional<VarName> bound;
  FormulaPtr body;
};

class Formula {
 public:
  using Node = std::variant<AtomNode, ChainNode, NotNode, BinNode, QuantNode>;

  Formula(Node node, SourceLoc loc) : node_(std::move(node)), loc_(loc) {}

  const Node& node() const { return node_; }
  SourceLoc loc() const { return loc_; }

 private:
  Node node_;
  SourceLoc loc_;
};

FormulaPtr make_atom(VarName lhs, Rel rel, VarName rhs, SourceLoc loc = {});
FormulaPtr make_chain(std::vector<VarName> vars, std::vector<ChainRel> rels,
                      SourceLoc loc = {});
FormulaPtr make_not(FormulaPtr sub, SourceLoc loc = {});
FormulaPtr make_bin(BinOp op, FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc = {});
FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_or(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_implies(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_iff(FormulaPtr lhs, FormulaPtr rhs);
FormulaPtr make_quant(Quant q, VarName var, FormulaPtr body,
                      std::optional<VarName> bound = std::nullopt,
                      SourceLoc loc = {});
FormulaPtr make_forall(VarName var, FormulaPtr body);
FormulaPtr make_exists(VarName var, FormulaPtr body);
FormulaPtr make_unique(VarName var, FormulaPtr body);

// Structural equality; source locations are ignored.
bool equal(const Formula& a, const Formula& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) { return equal(*a, *b); }

std::set<VarName> free_vars(const Formula& f);

// Every name occurring anywhere: free occurrences, bound occurrences and
// binder positions (including vacuous binders).
std::set<VarName> all_vars(const Formula& f);

// True when no sugar nodes remain (no chain, no bounded quantifier, no
// exists-unique).
bool is_desugared(const Formula& f);

// True when binders are pairwise distinct and disjoint from free names.
bool is_rectified(const Formula& f);

// Rewrites sugar away: chains become conjunctions of adjacent atoms,
// negative links become negated atoms, "exists x in R" conjoins the bound,
// "forall x in R" guards with an implication, and "exists! x phi" becomes
// "exists z forall x (phi <-> x = z)" with z fresh for phi.
FormulaPtr desugar(const FormulaPtr& f);

// Alpha-renames binders so bound names are pairwise distinct and disjoint
// from free names; fresh names are the original name plus a numeric suffix.
FormulaPtr rectify(const FormulaPtr& f);

// Canonical text; parse(pretty(f)) is structurally equal to f.
std::string pretty(const Formula& f);
inline std::string pretty(const FormulaPtr& f) { return pretty(*f); }

// One positive atom per occurrence of an atomic subformula, in preorder;
// the vector index is the occurrence id used by the graph modules.
// Requires a desugared formula.
struct AtomOcc {
  VarName lhs;
  Rel rel;
  VarName rhs;
};
std::vector<AtomOcc> atom_occurrences(const Formula& f);

// All subformulas including f itself, preorder.
std::vector<FormulaPtr> subformulas(const FormulaPtr& f);

// Smallest name in {base, base1, base2, ...} not contained in `used`.
VarName fresh_name(const VarName& base, const std::set<VarName>& used);

struct ComprehensionInstance {
  VarName target;                    // the variable the set collects
  FormulaPtr body;                   // membership condition
  std::vector<VarName> parameters;   // declared free names other than target
};

struct InstanceVerdict {
  enum class Status { admissible, target_not_free, undeclared_free_variable };
  Status status = Status::admissible;
  std::vector<VarName> undeclared;  // populated for undeclared_free_variable

  bool ok() const { return status == Status::admissible; }
};

// Checks target freeness and parameter coverage; acyclicity of the body is
// the graph module's job. The set variable introduced by a comprehension is
// always chosen fresh, so "does not occur in the body" holds by construction.
InstanceVerdict check_instance(const ComprehensionInstance& ci);

}  // namespace nf

#endif
