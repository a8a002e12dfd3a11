#include <doctest.h>

#include "nf/formula.hpp"
#include "nf/gen.hpp"
#include "nf/model.hpp"
#include "nf/parse.hpp"
#include "support.hpp"

using namespace nf;

TEST_CASE("parse: single atoms") {
  auto f = parse("y = a");
  CHECK(equal(f, make_atom("y", Rel::equal, "a")));
  CHECK(equal(parse("y in x"), make_atom("y", Rel::member, "x")));
}

TEST_CASE("parse: quantifier with conjunction body") {
  auto f = parse("exists z (y in z and z in a)");
  auto want = make_exists("z", make_and(make_atom("y", Rel::member, "z"),
                                        make_atom("z", Rel::member, "a")));
  CHECK(equal(f, want));
}

TEST_CASE("parse: malformed input reports position") {
  CHECK_THROWS_AS(parse("y in x iff"), ParseError);
  try {
    parse("y in x iff");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 11);
  }
  CHECK_THROWS_AS(parse("y in x @"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("y"), ParseError);
  CHECK_THROWS_AS(parse("y in x extra"), ParseError);
  CHECK_THROWS_AS(parse("(y in x"), ParseError);
  CHECK_THROWS_AS(parse("exists a b in R . a in b"), ParseError);
}

TEST_CASE("parse: iff keyword and arrow are interchangeable") {
  CHECK(equal(parse("a in b iff c in d"), parse("a in b <-> c in d")));
}

TEST_CASE("parse: precedence and associativity") {
  // not > and > or > -> > <->, -> right-associative.
  auto f = parse("not a in b and c in d or e in g");
  auto want = make_or(
      make_and(make_not(make_atom("a", Rel::member, "b")),
               make_atom("c", Rel::member, "d")),
      make_atom("e", Rel::member, "g"));
  CHECK(equal(f, want));

  auto imp = parse("a = b -> c = d -> e = g");
  auto want_imp = make_implies(
      make_atom("a", Rel::equal, "b"),
      make_implies(make_atom("c", Rel::equal, "d"), make_atom("e", Rel::equal, "g")));
  CHECK(equal(imp, want_imp));
}

TEST_CASE("parse: primes and the numeral 0 are identifiers") {
  auto f = parse("0 in q and 0' in l");
  auto vars = free_vars(*f);
  CHECK(vars == std::set<VarName>{"0", "0'", "q", "l"});
}

TEST_CASE("desugar: exists-unique uses the equality template") {
  auto f = desugar(parse("exists! i . i in y"));
  auto want = parse("exists z forall i (i in y <-> i = z)");
  CHECK(equal(f, desugar(want)));
  // The template introduces exactly one fresh variable, and it occurs in
  // exactly one equality atom.
  auto before = all_vars(*parse("exists! i . i in y"));
  auto after = all_vars(*f);
  std::vector<VarName> fresh;
  for (const auto& v : after)
    if (!before.count(v)) fresh.push_back(v);
  REQUIRE(fresh.size() == 1);
  CHECK(fresh[0] == "z");
  int eq_with_fresh = 0;
  for (const auto& a : atom_occurrences(*f))
    if (a.rel == Rel::equal && (a.lhs == fresh[0] || a.rhs == fresh[0])) ++eq_with_fresh;
  CHECK(eq_with_fresh == 1);
}

TEST_CASE("desugar: fresh variable avoids a clashing z") {
  auto f = desugar(parse("exists! i (i in z)"));
  auto vars = all_vars(*f);
  CHECK(vars.count("z1") == 1);  // z is taken by the free variable
  CHECK(free_vars(*f) == std::set<VarName>{"z"});
}

TEST_CASE("desugar: chains become conjunctions of adjacent atoms") {
  auto f = desugar(parse("y in p in q in m"));
  auto want = make_and(make_and(make_atom("y", Rel::member, "p"),
                                make_atom("p", Rel::member, "q")),
                       make_atom("q", Rel::member, "m"));
  CHECK(equal(f, want));

  auto mixed = desugar(parse("i in p in y and k = a"));
  CHECK(is_desugared(*mixed));
  CHECK(atom_occurrences(*mixed).size() == 3);
}

TEST_CASE("desugar: negative relations become negated atoms") {
  auto f = desugar(parse("i != 0"));
  CHECK(equal(f, make_not(make_atom("i", Rel::equal, "0"))));
  auto g = desugar(parse("i notin q"));
  CHECK(equal(g, make_not(make_atom("i", Rel::member, "q"))));
}

TEST_CASE("desugar: bounded quantifiers") {
  auto f = desugar(parse("exists m in R . m = m"));
  auto want = make_exists("m", make_and(make_atom("m", Rel::member, "R"),
                                        make_atom("m", Rel::equal, "m")));
  CHECK(equal(f, want));
  auto g = desugar(parse("forall m in R . m = m"));
  auto want_g = make_forall("m", make_implies(make_atom("m", Rel::member, "R"),
                                              make_atom("m", Rel::equal, "m")));
  CHECK(equal(g, want_g));
}

TEST_CASE("desugar: binder shadowing its own bound") {
  // "exists x in x": the bound names the enclosing x, so the binder moves.
  auto f = desugar(parse("exists x in x . x = x"));
  CHECK(free_vars(*f) == std::set<VarName>{"x"});
  const auto* q = std::get_if<QuantNode>(&f->node());
  REQUIRE(q != nullptr);
  CHECK(q->var != "x");
}

TEST_CASE("desugar: idempotent") {
  std::vector<std::string> samples = {
      "exists! i . i in y",
      "y in p in q in m",
      "i != 0 and 0 notin q",
      "exists m in R . exists p q (y in p in q in m and 0 in q)",
      "forall x (x = x)",
  };
  for (const auto& s : samples) {
    auto once = desugar(parse(s));
    CHECK(equal(desugar(once), once));
  }
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.num_vars = 5;
    cfg.num_atoms = 6;
    auto f = generate(cfg);
    CHECK(equal(desugar(f), f));  // generator output has no sugar
  }
}

TEST_CASE("rectify: spec examples") {
  auto f = rectify(parse("(forall y (y in a)) and (forall y (y in b))"));
  auto want = parse("(forall y (y in a)) and (forall y1 (y1 in b))");
  CHECK(equal(f, want));

  auto id = parse("y in a");
  CHECK(equal(rectify(id), id));

  auto g = rectify(parse("forall y exists y (y in a)"));
  auto want_g = parse("forall y exists y1 (y1 in a)");
  CHECK(equal(g, want_g));
}

TEST_CASE("rectify: result is rectified and preserves free variables") {
  std::vector<std::string> samples = {
      "(forall y (y in a)) and (forall y (y in b)) and y = c",
      "forall y exists y (y in y1 and y1 in a)",
      "exists x (x in a) and exists x (x in b) and exists x1 (x1 in x)",
      "forall x (forall x (forall x (x in x)))",
  };
  for (const auto& s : samples) {
    auto f = desugar(parse(s));
    auto r = rectify(f);
    CHECK(is_rectified(*r));
    CHECK(free_vars(*r) == free_vars(*f));
  }
}

TEST_CASE("rectify: preserves finite-model satisfaction") {
  // Capture-avoidance oracle: evaluation in small universes must agree
  // before and after renaming.
  Universe u = build_hf_universe({HfSet::parse("{{},{{}}}")}, 3);
  std::vector<std::string> samples = {
      "forall y exists y (y in a)",
      "(forall y (y in a)) and (forall y (y = b))",
      "exists x (x in a and exists x (x in x1) and x1 = x)",
      "forall x (exists x (x in a) -> x in a)",
  };
  for (const auto& s : samples) {
    auto f = desugar(parse(s));
    auto r = rectify(f);
    auto fv = free_vars(*f);
    REQUIRE(free_vars(*r) == fv);
    std::vector<VarName> vars(fv.begin(), fv.end());
    // All environments over the universe.
    std::vector<int> env_idx(vars.size(), 0);
    while (true) {
      Environment env;
      for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = env_idx[i];
      CHECK(eval(*f, u, env) == eval(*r, u, env));
      std::size_t i = 0;
      while (i < vars.size() && ++env_idx[i] == u.size()) env_idx[i++] = 0;
      if (i == vars.size()) break;
    }
  }
}

TEST_CASE("free_vars: spec examples") {
  CHECK(free_vars(*parse("y = a")) == std::set<VarName>{"y", "a"});
  CHECK(free_vars(*parse("exists z (y in z and z in a)")) ==
        std::set<VarName>{"y", "a"});
  CHECK(free_vars(*parse("forall x (x = x)")).empty());
}

TEST_CASE("check_instance: spec examples") {
  ComprehensionInstance singleton{"y", parse("y = a"), {"a"}};
  CHECK(check_instance(singleton).ok());

  ComprehensionInstance not_free{"y", parse("forall y (y = y)"), {}};
  auto v1 = check_instance(not_free);
  CHECK(v1.status == InstanceVerdict::Status::target_not_free);

  ComprehensionInstance undeclared{"y", parse("y in w"), {}};
  auto v2 = check_instance(undeclared);
  CHECK(v2.status == InstanceVerdict::Status::undeclared_free_variable);
  CHECK(v2.undeclared == std::vector<VarName>{"w"});
}

TEST_CASE("pretty: spec examples") {
  CHECK(pretty(make_atom("y", Rel::equal, "a")) == "y = a");
  CHECK(pretty(make_and(make_atom("y", Rel::member, "z"),
                        make_atom("z", Rel::member, "a"))) == "(y in z and z in a)");
}

TEST_CASE("pretty: sugar survives round trips") {
  std::vector<std::string> texts = {
      "y in p in q in m",
      "exists! i . i in y",
      "exists m in R . exists p q (y in p in q in m and 0 in q)",
      "i != 0 and 0 notin q",
  };
  for (const auto& t : texts) {
    auto f = parse(t);
    CHECK(equal(parse(pretty(f)), f));
  }
}

TEST_CASE("pretty: round trip over generated formulas") {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.num_vars = 1 + static_cast<int>(seed % 8);
    cfg.num_atoms = 1 + static_cast<int>(seed % 11);
    cfg.mode = seed % 3 == 0 ? GenMode::arbitrary
               : seed % 3 == 1 ? GenMode::stratified
                               : GenMode::acyclic;
    if (cfg.mode == GenMode::acyclic) {
      cfg.num_vars = std::max(cfg.num_vars, 2);
      cfg.num_atoms = std::min(cfg.num_atoms, cfg.num_vars - 1);
    }
    auto f = generate(cfg);
    auto again = parse(pretty(f));
    CHECK(equal(again, f));
  }
}

TEST_CASE("formula file: directives") {
  auto ff = parse_formula_file("# comment\nparams: a, b, 0\ntarget: y\ny = a\n");
  CHECK(ff.params == std::vector<VarName>{"a", "b", "0"});
  REQUIRE(ff.target.has_value());
  CHECK(*ff.target == "y");
  CHECK(equal(ff.formula, make_atom("y", Rel::equal, "a")));

  auto plain = parse_formula_file("x in y\n");
  CHECK(!plain.target.has_value());
  CHECK(plain.params.empty());

  CHECK_THROWS_AS(parse_formula_file("params: a\n"), ParseError);       // no formula
  CHECK_THROWS_AS(parse_formula_file("target: y\ntarget: z\nx = x\n"), ParseError);
}

TEST_CASE("formula file: multi-line formula keeps positions") {
  try {
    parse_formula_file("# header\ntarget: y\ny in a and\nq q\n", "f.nf");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
    CHECK(e.file == "f.nf");
  }
}
