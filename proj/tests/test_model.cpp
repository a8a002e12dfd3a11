#include <doctest.h>

#include <set>

#include "nf/gen.hpp"
#include "nf/model.hpp"
#include "nf/parse.hpp"
#include "support.hpp"

using namespace nf;

namespace {

// "y = (a, b)" with the Wiener encoding spelled out extensionally;
// free variables: y, a, b, 0.
const char* kPairEq =
    "forall v (v in y <-> "
    "((forall w (w in v <-> (forall k (k in w <-> k = a)) or w = 0)) "
    "or (forall u (u in v <-> forall n (n in u <-> n = b)))))";

// Membership condition of the pair set itself; true of the two members
// {{a}, 0} and {{b}}. Free variables: y, a, b, 0.
const char* kPairMember =
    "(forall w (w in y <-> (forall k (k in w <-> k = a)) or w = 0)) "
    "or (forall u (u in y <-> forall n (n in u <-> n = b)))";

std::set<int> member_set(const Universe& u, int container) {
  std::set<int> out;
  for (int m = 0; m < u.size(); ++m)
    if (u.member(m, container)) out.insert(m);
  return out;
}

// Finds the element of u extensionally equal to the HF value s.
int find_hf(const Universe& u, const HfSet& s) {
  std::set<int> want;
  for (const auto& m : s.members()) {
    int idx = find_hf(u, m);
    if (idx < 0) return -1;
    want.insert(idx);
  }
  for (int c = 0; c < u.size(); ++c)
    if (member_set(u, c) == want) return c;
  return -1;
}

}  // namespace

TEST_CASE("HfSet: canonical form") {
  auto e = HfSet::empty();
  CHECK(e.key() == "{}");
  CHECK(e.rank() == 0);
  auto s = HfSet::parse("{{},{{}},{}}");  // duplicates collapse
  CHECK(s.key() == "{{},{{}}}");
  CHECK(s.rank() == 2);
  CHECK(HfSet::parse("{{{}},{}}") == s);  // order does not matter
  CHECK_THROWS_AS(HfSet::parse("{{}"), ModelError);
  CHECK_THROWS_AS(HfSet::parse("{} x"), ModelError);
}

TEST_CASE("hf_sets_up_to_rank: counts 1, 2, 4, 16") {
  CHECK(hf_sets_up_to_rank(0).size() == 1);
  CHECK(hf_sets_up_to_rank(1).size() == 2);
  CHECK(hf_sets_up_to_rank(2).size() == 4);
  CHECK(hf_sets_up_to_rank(3).size() == 16);
}

TEST_CASE("build_hf_universe: single empty seed") {
  Universe u = build_hf_universe({HfSet::empty()}, 1);
  CHECK(u.size() == 1);
  CHECK(u.labels.at("0") == "e0");
  CHECK(u.extensional);
}

TEST_CASE("build_hf_universe: closure matches an independent oracle") {
  HfSet a = HfSet::empty();
  HfSet b = HfSet::parse("{{}}");
  HfSet pair = hf_wiener_pair(a, b);
  Universe u = build_hf_universe({pair}, 5);
  // Independent hand-rolled closure: the universe must hold exactly the
  // closure of the pair plus the empty set.
  auto keys = nft::closure_keys({pair});
  keys.insert("{}");
  CHECK(u.size() == static_cast<int>(keys.size()));
  CHECK(u.size() == 6);

  // Every element realizes one closure member: check extensional lookup.
  for (const auto& key : keys) CHECK(find_hf(u, HfSet::parse(key)) >= 0);

  // Idempotence: duplicate seeds change nothing.
  Universe u2 = build_hf_universe({pair, pair, a}, 5);
  CHECK(u2.size() == u.size());
  CHECK(u2.elements == u.elements);
}

TEST_CASE("build_hf_universe: rank guard") {
  CHECK_THROWS_AS(build_hf_universe({HfSet::parse("{{{}}}")}, 1), ModelError);
  CHECK_THROWS_AS(build_hf_universe({}, 7), ModelError);
}

TEST_CASE("eval: atoms and guarded quantifiers") {
  // Elements: e0 = {}, e1 = {0}.
  Universe u = build_hf_universe({HfSet::parse("{{}}")}, 2);
  REQUIRE(u.size() == 2);
  int empty = u.resolve("0");
  int sing = empty == 0 ? 1 : 0;
  CHECK(eval(*parse("x in y"), u, {{"x", empty}, {"y", sing}}));
  CHECK(!eval(*parse("x in y"), u, {{"x", sing}, {"y", empty}}));
  // y = {a}: every member of y is a.
  CHECK(eval(*parse("forall w (w in y -> w = a)"), u, {{"y", sing}, {"a", empty}}));
  CHECK_THROWS_AS(eval(*parse("x in y"), u, {{"x", empty}}), ModelError);
}

TEST_CASE("wiener_pair: smallest case and membership shape") {
  HfSet a = HfSet::empty();
  HfSet b = HfSet::parse("{{}}");

  // a = b = empty: {{{0},0},{{0}}}.
  Universe u0 = build_hf_universe({hf_wiener_pair(a, a)}, 4);
  int zero = u0.resolve("0");
  int pair0 = wiener_pair(zero, zero, u0);
  CHECK(pair0 == find_hf(u0, hf_wiener_pair(a, a)));

  Universe u = build_hf_universe({hf_wiener_pair(a, b)}, 5);
  int ea = u.resolve("0");
  int eb = find_hf(u, b);
  REQUIRE(eb >= 0);
  int pr = wiener_pair(ea, eb, u);
  // The pair's members are exactly {{a}, 0} and {{b}}.
  std::set<int> want{
      find_hf(u, HfSet(std::vector<HfSet>{HfSet::singleton(a), HfSet::empty()})),
      find_hf(u, HfSet::singleton(HfSet::singleton(b)))};
  CHECK(member_set(u, pr) == want);

  // Missing intermediates raise.
  Universe tiny = build_hf_universe({HfSet::empty()}, 1);
  CHECK_THROWS_AS(wiener_pair(0, 0, tiny), ModelError);
}

TEST_CASE("wiener_pair: injective over the rank-2 carrier") {
  auto carrier = hf_sets_up_to_rank(2);
  REQUIRE(carrier.size() == 4);
  std::set<std::string> keys;
  std::vector<HfSet> seeds;
  for (const auto& x : carrier)
    for (const auto& y : carrier) {
      keys.insert(hf_wiener_pair(x, y).key());
      seeds.push_back(hf_wiener_pair(x, y));
    }
  CHECK(keys.size() == 16);  // all 16 combinations distinct as HF values

  // The same through the in-universe extensional search.
  Universe u = build_hf_universe(seeds, 5);
  std::set<int> pair_elems;
  for (const auto& x : carrier)
    for (const auto& y : carrier) {
      int ix = find_hf(u, x);
      int iy = find_hf(u, y);
      REQUIRE(ix >= 0);
      REQUIRE(iy >= 0);
      pair_elems.insert(wiener_pair(ix, iy, u));
    }
  CHECK(pair_elems.size() == 16);
}

TEST_CASE("pair formula: true at exactly the pair, member form at its members") {
  HfSet a = HfSet::empty();
  HfSet b = HfSet::parse("{{}}");
  HfSet pair = hf_wiener_pair(a, b);
  std::vector<HfSet> seeds = hf_sets_up_to_rank(3);
  seeds.push_back(pair);
  Universe u = build_hf_universe(seeds, 4);
  REQUIRE(u.extensional);

  int e0 = u.resolve("0");
  int eb = find_hf(u, b);
  REQUIRE(eb >= 0);
  int expected_pair = wiener_pair(e0, eb, u);

  auto eq = parse(kPairEq);
  int hits = 0, hit = -1;
  for (int y = 0; y < u.size(); ++y) {
    if (eval(*eq, u, {{"y", y}, {"a", e0}, {"b", eb}, {"0", e0}})) {
      ++hits;
      hit = y;
    }
  }
  CHECK(hits == 1);
  CHECK(hit == expected_pair);

  // The membership form is true at exactly the two members of the pair.
  auto member_form = parse(kPairMember);
  std::set<int> sat;
  for (int y = 0; y < u.size(); ++y)
    if (eval(*member_form, u, {{"y", y}, {"a", e0}, {"b", eb}, {"0", e0}}))
      sat.insert(y);
  CHECK(sat == member_set(u, expected_pair));
  CHECK(sat.size() == 2);
}

TEST_CASE("eval: sugar agrees with its desugaring") {
  Universe u = build_hf_universe(hf_sets_up_to_rank(2), 3);
  std::vector<std::string> texts = {
      "exists! w (w in y)",
      "exists w in y . w = a",
      "forall w in y . w in a",
      "a in y in b",
      "a != b and a notin y",
  };
  for (const auto& t : texts) {
    auto sugared = parse(t);
    auto plain = desugar(sugared);
    auto fv = free_vars(*sugared);
    REQUIRE(fv == free_vars(*plain));
    std::vector<VarName> vars(fv.begin(), fv.end());
    std::vector<int> idx(vars.size(), 0);
    while (true) {
      Environment env;
      for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = idx[i];
      CHECK(eval(*sugared, u, env) == eval(*plain, u, env));
      std::size_t i = 0;
      while (i < vars.size() && ++idx[i] == u.size()) idx[i++] = 0;
      if (i == vars.size()) break;
    }
  }
}
