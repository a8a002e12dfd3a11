// nfcheck: analyses formulas over membership and equality for acyclicity
// and stratifiability, verifies the bundled definition corpus, evaluates
// formulas in finite membership structures, and generates test formulas.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nf/corpus.hpp"
#include "nf/errors.hpp"
#include "nf/gen.hpp"
#include "nf/graph.hpp"
#include "nf/json_io.hpp"
#include "nf/model.hpp"
#include "nf/parse.hpp"
#include "nf/pathtype.hpp"
#include "nf/stratify.hpp"

namespace {

constexpr int exit_ok = 0;        // positive verdict / success
constexpr int exit_negative = 1;  // cyclic, unstratified, eval false, corpus fail
constexpr int exit_error = 2;     // usage, parse or IO error

bool color_enabled() {
  const char* mode = std::getenv("NFCHECK_COLOR");
  std::string m = mode ? mode : "auto";
  if (m == "always") return true;
  if (m == "never") return false;
  return isatty(fileno(stdout));
}

std::string mark(bool good, const std::string& text) {
  if (!color_enabled()) return text;
  return (good ? "\033[32m" : "\033[31m") + text + "\033[0m";
}

nf::FormulaFile read_formula(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return nf::parse_formula_file(buf.str(), "<stdin>");
  }
  return nf::load_formula_file(path);
}

nf::FormulaPtr read_normalized(const std::string& path) {
  return nf::rectify(nf::desugar(read_formula(path).formula));
}

void emit(const nf::json& j) { std::cout << j.dump(2) << "\n"; }

void write_dot(const std::string& path, const nf::VarGraph& g) {
  std::ofstream out(path);
  if (!out) throw nf::Error("cannot write " + path);
  out << nf::to_dot(g);
}

int cmd_parse(const std::string& input, bool json_out) {
  nf::FormulaFile ff = read_formula(input);
  auto fv = nf::free_vars(*ff.formula);
  if (json_out) {
    nf::json j = {{"ok", true},
                  {"pretty", nf::pretty(ff.formula)},
                  {"free_vars", std::vector<std::string>(fv.begin(), fv.end())},
                  {"desugared", nf::pretty(nf::rectify(nf::desugar(ff.formula)))}};
    if (ff.target) j["target"] = *ff.target;
    if (!ff.params.empty()) j["params"] = ff.params;
    emit(j);
  } else {
    std::cout << nf::pretty(ff.formula) << "\n";
  }
  return exit_ok;
}

int cmd_graph(const std::string& input, bool json_out, const std::string& dot_path) {
  auto f = read_normalized(input);
  nf::VarGraph g = nf::build_graph(*f);
  if (!dot_path.empty()) write_dot(dot_path, g);
  if (json_out) {
    emit(nf::graph_json(g));
  } else {
    std::cout << g.vertices.size() << " vertices, " << g.edges.size() << " edges\n";
    std::cout << nf::to_dot(g);
  }
  return exit_ok;
}

int cmd_acyclic(const std::string& input, bool json_out, const std::string& method,
                const std::string& dot_path) {
  auto f = read_normalized(input);
  nf::VarGraph g = nf::build_graph(*f);
  if (!dot_path.empty()) write_dot(dot_path, g);

  std::optional<nf::CycleWitness> cycle;
  bool acyclic = false;
  if (method == "graph" || method == "both") {
    cycle = nf::find_cycle(g);
    acyclic = !cycle.has_value();
  }
  if (method == "chain" || method == "both") {
    bool chain_verdict = nf::is_acyclic_chain(*f);
    if (method == "both" && chain_verdict != acyclic)
      throw nf::Error("internal: graph and chain deciders disagree");
    acyclic = chain_verdict;
  }
  if (json_out) {
    emit(nf::acyclic_verdict_json(cycle));
  } else {
    std::cout << mark(acyclic, acyclic ? "acyclic" : "cyclic") << "\n";
    if (cycle) {
      std::cout << "cycle:";
      for (const auto& v : cycle->vertex_sequence) std::cout << " " << v;
      std::cout << "\n";
    }
  }
  return acyclic ? exit_ok : exit_negative;
}

int cmd_stratify(const std::string& input, bool json_out) {
  auto f = read_normalized(input);
  nf::StratifyResult r = nf::stratify(*f);
  if (json_out) {
    emit(nf::stratify_verdict_json(r));
  } else if (const auto* t = std::get_if<nf::TypeAssignment>(&r)) {
    std::cout << mark(true, "stratified") << "\n";
    for (const auto& [var, type] : *t) std::cout << "  " << var << ": " << type << "\n";
  } else {
    const auto& cert = std::get<nf::UnsatCertificate>(r);
    std::cout << mark(false, "not stratified") << " (closed walk of net weight "
              << cert.net_weight << ")\n";
  }
  return nf::is_stratified(r) ? exit_ok : exit_negative;
}

int cmd_typepath(const std::string& input, bool json_out, const std::string& dot_path) {
  auto f = read_normalized(input);
  try {
    nf::PathTypingTrace trace = nf::type_acyclic(*f);
    if (!dot_path.empty()) {
      nf::VarGraph g = nf::build_graph(*f);
      std::map<nf::VarName, std::string> labels;
      for (const auto& [var, type] : trace.assignment)
        labels[var] = var + ":" + std::to_string(type);
      std::ofstream out(dot_path);
      if (!out) throw nf::Error("cannot write " + dot_path);
      out << nf::to_dot(g, labels);
    }
    if (json_out) {
      emit(nf::trace_json(trace));
    } else {
      std::cout << mark(true, "typed") << "\n";
      for (const auto& [var, type] : trace.assignment)
        std::cout << "  " << var << ": " << type << "\n";
    }
    return exit_ok;
  } catch (const nf::CyclicFormulaError& ex) {
    if (json_out) {
      emit({{"error", "not_acyclic"}, {"cycle", nf::cycle_json(ex.witness)}});
    } else {
      std::cout << mark(false, "not acyclic") << "\n";
    }
    return exit_negative;
  }
}

int cmd_corpus(const std::string& dir, bool json_out) {
  nf::CorpusReport report = nf::verify_all(dir);
  if (json_out) {
    emit(nf::corpus_report_json(report));
  } else {
    for (const auto& v : report.entries) {
      std::cout << (v.ok ? mark(true, "pass") : mark(false, "FAIL")) << "  "
                << v.name << "  acyclic=" << (v.acyclic ? "yes" : "no")
                << " stratified=" << (v.stratified ? "yes" : "no") << "\n";
    }
    std::cout << (report.pass ? mark(true, "corpus pass") : mark(false, "corpus FAIL"))
              << " (" << report.entries.size() << " entries)\n";
  }
  return report.pass ? exit_ok : exit_negative;
}

int cmd_eval(const std::string& input, const std::string& universe_path,
             const std::vector<std::string>& binds, bool json_out) {
  auto ff = read_formula(input);
  nf::Universe u = nf::load_universe(universe_path);
  nf::Environment env;
  for (const auto& b : binds) {
    auto pos = b.find('=');
    if (pos == std::string::npos)
      throw nf::Error("--bind expects var=element, got '" + b + "'");
    env[b.substr(0, pos)] = u.resolve(b.substr(pos + 1));
  }
  bool value = nf::eval(*ff.formula, u, env);
  if (json_out) {
    emit({{"value", value}});
  } else {
    std::cout << (value ? "true" : "false") << "\n";
  }
  return value ? exit_ok : exit_negative;
}

int cmd_gen(std::uint64_t seed, int size, int atoms, const std::string& mode,
            int count, const std::string& out_dir) {
  nf::GenConfig cfg;
  cfg.seed = seed;
  cfg.num_vars = size;
  if (mode == "arbitrary")
    cfg.mode = nf::GenMode::arbitrary;
  else if (mode == "acyclic")
    cfg.mode = nf::GenMode::acyclic;
  else if (mode == "stratified")
    cfg.mode = nf::GenMode::stratified;
  else
    throw nf::Error("unknown mode '" + mode + "'");
  for (int i = 0; i < count; ++i) {
    cfg.seed = seed + static_cast<std::uint64_t>(i);
    cfg.num_atoms = atoms > 0 ? atoms
                    : cfg.mode == nf::GenMode::acyclic ? std::max(1, size - 1)
                                                       : 2 * size;
    auto f = nf::generate(cfg);
    std::string text = "# generated: seed=" + std::to_string(cfg.seed) +
                       " size=" + std::to_string(cfg.num_vars) +
                       " atoms=" + std::to_string(cfg.num_atoms) + " mode=" + mode +
                       "\n" + nf::pretty(f) + "\n";
    if (out_dir.empty()) {
      std::cout << text;
      if (i + 1 < count) std::cout << "\n";
    } else {
      std::string path =
          out_dir + "/gen_" + std::to_string(cfg.seed) + ".nf";
      std::ofstream out(path);
      if (!out) throw nf::Error("cannot write " + path);
      out << text;
    }
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analyzer for acyclicity and stratifiability of formulas over "
               "membership and equality"};
  app.require_subcommand(1);
  bool json_out = false;
  app.add_flag("--json", json_out, "machine-readable JSON output");

  std::string input = "-";
  std::string dot_path;
  std::string method = "graph";
  std::string corpus_dir = "corpus";
  std::string corpus_action = "verify";
  std::string universe_path;
  std::vector<std::string> binds;
  std::uint64_t seed = 0;
  int size = 6;
  int atoms = 0;
  std::string mode = "arbitrary";
  int count = 1;
  std::string out_dir;

  auto* parse_cmd = app.add_subcommand("parse", "parse a formula and echo it");
  parse_cmd->add_option("input", input, "formula file or - for stdin");

  auto* graph_cmd = app.add_subcommand("graph", "build the variable graph");
  graph_cmd->add_option("input", input);
  graph_cmd->add_option("--dot", dot_path, "write DOT to this path");

  auto* acyclic_cmd = app.add_subcommand("acyclic", "decide acyclicity");
  acyclic_cmd->add_option("input", input);
  acyclic_cmd->add_option("--method", method, "graph, chain or both")
      ->check(CLI::IsMember({"graph", "chain", "both"}));
  acyclic_cmd->add_option("--dot", dot_path);

  auto* stratify_cmd = app.add_subcommand("stratify", "decide stratifiability");
  stratify_cmd->add_option("input", input);

  auto* typepath_cmd =
      app.add_subcommand("typepath", "type an acyclic formula by root paths");
  typepath_cmd->add_option("input", input);
  typepath_cmd->add_option("--dot", dot_path, "write type-annotated DOT");

  auto* corpus_cmd = app.add_subcommand("corpus", "verify a definition corpus");
  corpus_cmd->add_option("action", corpus_action)->check(CLI::IsMember({"verify"}));
  corpus_cmd->add_option("dir", corpus_dir, "corpus directory (default: corpus)");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate in a finite universe");
  eval_cmd->add_option("input", input);
  eval_cmd->add_option("--universe", universe_path, "universe .u.json file")
      ->required();
  eval_cmd->add_option("--bind", binds, "var=element binding (repeatable)");

  auto* gen_cmd = app.add_subcommand("gen", "generate pseudo-random formulas");
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--size", size, "number of variables");
  gen_cmd->add_option("--atoms", atoms, "number of atoms (0 = derived)");
  gen_cmd->add_option("--mode", mode)
      ->check(CLI::IsMember({"arbitrary", "acyclic", "stratified"}));
  gen_cmd->add_option("--count", count, "how many formulas");
  gen_cmd->add_option("--out", out_dir, "write .nf files here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_error;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(input, json_out);
    if (graph_cmd->parsed()) return cmd_graph(input, json_out, dot_path);
    if (acyclic_cmd->parsed()) return cmd_acyclic(input, json_out, method, dot_path);
    if (stratify_cmd->parsed()) return cmd_stratify(input, json_out);
    if (typepath_cmd->parsed()) return cmd_typepath(input, json_out, dot_path);
    if (corpus_cmd->parsed()) return cmd_corpus(corpus_dir, json_out);
    if (eval_cmd->parsed())
      return cmd_eval(input, universe_path, binds, json_out);
    if (gen_cmd->parsed()) return cmd_gen(seed, size, atoms, mode, count, out_dir);
  } catch (const std::exception& ex) {
    std::cerr << "nfcheck: " << ex.what() << "\n";
    return exit_error;
  }
  return exit_error;
}
