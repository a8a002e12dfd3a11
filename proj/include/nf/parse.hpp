#ifndef NF_PARSE_HPP
#define NF_PARSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "nf/errors.hpp"
#include "nf/formula.hpp"

namespace nf {

// Parses one formula in the keyword syntax:
//
//   formula := iff
//   iff     := imp (("<->" | "iff") imp)*          (left-associative)
//   imp     := or ("->" imp)?                      (right-associative)
//   or      := and ("or" and)*
//   and     := unary ("and" unary)*
//   unary   := "not" unary | quant | atomchain | "(" formula ")"
//   quant   := ("forall"|"exists"|"exists!") var+ ["in" var] ["."] formula
//   atomchain := var (("in"|"notin"|"="|"!=") var)+
//   var     := ident                               ([A-Za-z0-9_']+)
//
// "#" starts a comment running to end of line. Commas may separate binder
// variables. A bounded quantifier takes exactly one variable.
FormulaPtr parse(const std::string& text, const std::string& file = {});

// A .nf file: comment lines, optional "params:" / "target:" directives,
// then one formula (possibly spanning several lines).
struct FormulaFile {
  std::vector<VarName> params;
  std::optional<VarName> target;
  FormulaPtr formula;
};

FormulaFile parse_formula_file(const std::string& text, const std::string& file = {});
FormulaFile load_formula_file(const std::string& path);

}  // namespace nf

#endif
