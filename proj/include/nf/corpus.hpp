#ifndef NF_CORPUS_HPP
#define NF_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nf/formula.hpp"
#include "nf/graph.hpp"
#include "nf/pathtype.hpp"
#include "nf/stratify.hpp"

namespace nf {

// One encoded set-comprehension definition. Every bundled definition is
// expected to be acyclic and stratified; previously defined set names
// (0, V, R, S, Pairs, V_1, ...) appear as declared parameters, and repeated
// uses of the constant 0 within one definition are distinct primed
// parameters (0, 0', ...) since the constant carries no type constraint.
struct CorpusEntry {
  std::string name;               // file stem, e.g. "01_universal_set"
  std::string file;
  VarName target;
  std::vector<VarName> parameters;
  FormulaPtr formula;             // desugared and rectified
  struct Expected {
    bool acyclic = true;
    bool stratified = true;
  } expected;
};

struct EntryVerdict {
  std::string name;
  InstanceVerdict admissibility;
  bool acyclic = false;
  std::optional<CycleWitness> cycle;
  bool stratified = false;
  std::optional<TypeAssignment> types;
  std::optional<UnsatCertificate> certificate;
  std::optional<TypeAssignment> path_types;  // path-typer result when acyclic
  bool ok = false;  // admissible and both verdicts match the expectation
};

struct CorpusReport {
  std::vector<EntryVerdict> entries;
  bool pass = false;  // every entry ok
};

// Loads every .nf file of dir in name order. Throws Error/ParseError naming
// the file on unreadable input, a parse failure or a missing target header.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

EntryVerdict verify_entry(const CorpusEntry& e);

CorpusReport verify_all(const std::string& dir);

}  // namespace nf

#endif
