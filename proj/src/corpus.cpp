#include "nf/corpus.hpp"

#include <algorithm>
#include <filesystem>

#include "nf/parse.hpp"

namespace nf {

namespace fs = std::filesystem;

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  if (!fs::is_directory(dir)) throw Error("corpus directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".nf")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  out.reserve(files.size());
  for (const auto& path : files) {
    FormulaFile ff = load_formula_file(path.string());
    if (!ff.target)
      throw Error(path.string() + ": missing target header");
    CorpusEntry e;
    e.name = path.stem().string();
    e.file = path.string();
    e.target = *ff.target;
    e.parameters = ff.params;
    e.formula = rectify(desugar(ff.formula));
    out.push_back(std::move(e));
  }
  return out;
}

EntryVerdict verify_entry(const CorpusEntry& e) {
  EntryVerdict v;
  v.name = e.name;
  v.admissibility = check_instance({e.target, e.formula, e.parameters});

  VarGraph g = build_graph(*e.formula);
  v.cycle = find_cycle(g);
  v.acyclic = !v.cycle.has_value();

  StratifyResult r = stratify(*e.formula);
  if (auto* t = std::get_if<TypeAssignment>(&r)) {
    v.stratified = true;
    v.types = *t;
  } else {
    v.certificate = std::get<UnsatCertificate>(r);
  }

  if (v.acyclic) v.path_types = type_acyclic(*e.formula).assignment;

  v.ok = v.admissibility.ok() && v.acyclic == e.expected.acyclic &&
         v.stratified == e.expected.stratified;
  return v;
}

CorpusReport verify_all(const std::string& dir) {
  CorpusReport report;
  report.pass = true;
  for (const auto& entry : load_corpus(dir)) {
    EntryVerdict v = verify_entry(entry);
    report.pass = report.pass && v.ok;
    report.entries.push_back(std::move(v));
  }
  return report;
}

}  // namespace nf
