#include "nf/gen.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace nf {

namespace {

std::vector<VarName> var_pool(int n) {
  std::vector<VarName> pool;
  pool.reserve(n);
  for (int i = 0; i < n; ++i) pool.push_back("x" + std::to_string(i));
  return pool;
}

FormulaPtr random_atom_between(SplitMix64& rng, const VarName& a, const VarName& b) {
  // Four atom shapes: two relations, two writing orders.
  switch (rng.below(4)) {
    case 0:
      return make_atom(a, Rel::member, b);
    case 1:
      return make_atom(b, Rel::member, a);
    case 2:
      return make_atom(a, Rel::equal, b);
    default:
      return make_atom(b, Rel::equal, a);
  }
}

struct Piece {
  FormulaPtr f;
  int height;
};

// Combines atoms bottom-up with random connectives and sprinkled negations,
// then closes a random subset of the pool under a quantifier prefix. The
// wrapping never adds or removes atom occurrences.
FormulaPtr wrap(SplitMix64& rng, std::vector<Piece> pieces,
                const std::vector<VarName>& pool, int max_height) {
  while (pieces.size() > 1) {
    std::size_t i = rng.below(pieces.size());
    std::swap(pieces[i], pieces.back());
    Piece rhs = std::move(pieces.back());
    pieces.pop_back();
    std::size_t j = rng.below(pieces.size());
    if (std::max(pieces[j].height, rhs.height) + 1 > max_height) {
      // Stay inside the height budget by joining the shallowest piece.
      j = 0;
      for (std::size_t k = 1; k < pieces.size(); ++k)
        if (pieces[k].height < pieces[j].height) j = k;
    }
    Piece& lhs = pieces[j];
    BinOp op;
    switch (rng.below(4)) {
      case 0:
        op = BinOp::conj;
        break;
      case 1:
        op = BinOp::disj;
        break;
      case 2:
        op = BinOp::implies;
        break;
      default:
        op = BinOp::iff;
        break;
    }
    FormulaPtr left = lhs.f;
    FormulaPtr right = rhs.f;
    int height = std::max(lhs.height, rhs.height) + 1;
    if (height < max_height && rng.coin(20)) {
      left = make_not(left);
      ++height;
    }
    lhs = {make_bin(op, left, right), height};
  }
  FormulaPtr out = pieces.front().f;
  // Quantify a suffix of the pool; binders are pairwise distinct pool names,
  // so the result stays rectified.
  std::uint64_t quantified = rng.below(pool.size() + 1);
  for (std::uint64_t i = 0; i < quantified; ++i) {
    const VarName& v = pool[pool.size() - 1 - i];
    out = rng.coin(50) ? make_forall(v, out) : make_exists(v, out);
  }
  return out;
}

FormulaPtr gen_arbitrary(SplitMix64& rng, const GenConfig& cfg,
                         const std::vector<VarName>& pool) {
  std::vector<Piece> pieces;
  for (int i = 0; i < cfg.num_atoms; ++i) {
    const VarName& a = pool[rng.below(pool.size())];
    const VarName& b = pool[rng.below(pool.size())];
    pieces.push_back({random_atom_between(rng, a, b), 0});
  }
  return wrap(rng, std::move(pieces), pool, cfg.connective_depth);
}

FormulaPtr gen_acyclic(SplitMix64& rng, const GenConfig& cfg,
                       const std::vector<VarName>& pool) {
  if (cfg.num_atoms > cfg.num_vars - 1)
    throw std::invalid_argument("acyclic mode needs num_atoms <= num_vars - 1");
  if (cfg.num_vars < 2)
    throw std::invalid_argument("acyclic mode needs num_vars >= 2");
  // Random-parent forest over a shuffled ordering; each chosen slot links a
  // vertex to one earlier vertex, so no cycle can arise.
  std::vector<VarName> order = pool;
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<int> slots;
  for (int i = 1; i < cfg.num_vars; ++i) slots.push_back(i);
  for (std::size_t i = slots.size(); i > 1; --i)
    std::swap(slots[i - 1], slots[rng.below(i)]);
  slots.resize(cfg.num_atoms);
  std::sort(slots.begin(), slots.end());
  std::vector<Piece> pieces;
  for (int slot : slots) {
    const VarName& child = order[slot];
    const VarName& parent = order[rng.below(slot)];
    pieces.push_back({random_atom_between(rng, child, parent), 0});
  }
  return wrap(rng, std::move(pieces), pool, cfg.connective_depth);
}

FormulaPtr gen_stratified(SplitMix64& rng, const GenConfig& cfg,
                          const std::vector<VarName>& pool) {
  // Sample types first, then emit only atoms consistent with them.
  std::vector<int> type_of(pool.size());
  for (auto& t : type_of) t = static_cast<int>(rng.below(4));
  std::vector<Piece> pieces;
  for (int i = 0; i < cfg.num_atoms; ++i) {
    FormulaPtr atom;
    for (int attempt = 0; attempt < 64 && !atom; ++attempt) {
      std::size_t a = rng.below(pool.size());
      std::size_t b = rng.below(pool.size());
      if (rng.coin(50)) {
        if (type_of[b] == type_of[a] + 1) atom = make_atom(pool[a], Rel::member, pool[b]);
      } else {
        if (type_of[a] == type_of[b]) atom = make_atom(pool[a], Rel::equal, pool[b]);
      }
    }
    // Equality between same-typed variables always exists as a fallback.
    if (!atom) {
      std::size_t a = rng.below(pool.size());
      atom = make_atom(pool[a], Rel::equal, pool[a]);
    }
    pieces.push_back({atom, 0});
  }
  return wrap(rng, std::move(pieces), pool, cfg.connective_depth);
}

}  // namespace

FormulaPtr generate(const GenConfig& cfg) {
  if (cfg.num_vars < 1) throw std::invalid_argument("num_vars must be at least 1");
  if (cfg.num_atoms < 1) throw std::invalid_argument("num_atoms must be at least 1");
  SplitMix64 rng(cfg.seed);
  auto pool = var_pool(cfg.num_vars);
  switch (cfg.mode) {
    case GenMode::arbitrary:
      return gen_arbitrary(rng, cfg, pool);
    case GenMode::acyclic:
      return gen_acyclic(rng, cfg, pool);
    case GenMode::stratified:
      return gen_stratified(rng, cfg, pool);
  }
  throw std::invalid_argument("bad mode");
}

}  // namespace nf
