#include "nf/model.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <variant>

namespace nf {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

}  // namespace

HfSet::HfSet(std::vector<HfSet> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  rank_ = 0;
  key_ = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    rank_ = std::max(rank_, members_[i].rank() + 1);
    if (i) key_ += ',';
    key_ += members_[i].key();
  }
  key_ += '}';
}

HfSet HfSet::singleton(HfSet member) {
  return HfSet(std::vector<HfSet>{std::move(member)});
}

HfSet HfSet::parse(const std::string& text) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto parse_set = [&](auto&& self) -> HfSet {
    skip_space();
    if (pos >= text.size() || text[pos] != '{')
      throw ModelError("set literal: expected '{' at position " + std::to_string(pos));
    ++pos;
    std::vector<HfSet> members;
    skip_space();
    if (pos < text.size() && text[pos] == '}') {
      ++pos;
      return HfSet(std::move(members));
    }
    while (true) {
      members.push_back(self(self));
      skip_space();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == '}') {
        ++pos;
        return HfSet(std::move(members));
      }
      throw ModelError("set literal: expected ',' or '}' at position " +
                       std::to_string(pos));
    }
  };
  HfSet result = parse_set(parse_set);
  skip_space();
  if (pos != text.size())
    throw ModelError("set literal: trailing characters at position " +
                     std::to_string(pos));
  return result;
}

HfSet hf_wiener_pair(const HfSet& a, const HfSet& b) {
  HfSet first(std::vector<HfSet>{HfSet::singleton(a), HfSet::empty()});
  HfSet second = HfSet::singleton(HfSet::singleton(b));
  return HfSet(std::vector<HfSet>{first, second});
}

std::vector<HfSet> hf_sets_up_to_rank(int max_rank) {
  if (max_rank < 0 || max_rank > 4)
    throw ModelError("hf_sets_up_to_rank: rank out of range");
  std::vector<HfSet> pool{HfSet::empty()};
  for (int r = 1; r <= max_rank; ++r) {
    // All subsets of the previous pool.
    std::vector<HfSet> next;
    std::size_t n = pool.size();
    for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
      std::vector<HfSet> members;
      for (std::size_t i = 0; i < n; ++i)
        if (bits & (std::size_t{1} << i)) members.push_back(pool[i]);
      next.emplace_back(std::move(members));
    }
    pool = std::move(next);
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

int Universe::index_of(const std::string& element) const {
  auto it = std::find(elements.begin(), elements.end(), element);
  return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
}

int Universe::resolve(const std::string& name) const {
  auto lit = labels.find(name);
  int idx = index_of(lit != labels.end() ? lit->second : name);
  if (idx < 0) throw ModelError("unknown element or label: " + name);
  return idx;
}

Universe build_hf_universe(const std::vector<HfSet>& seeds, int rank_cap) {
  if (rank_cap > 6) throw ModelError("rank cap above 6 is not supported");
  std::set<HfSet> closed;
  closed.insert(HfSet::empty());
  std::vector<HfSet> todo = seeds;
  while (!todo.empty()) {
    HfSet s = std::move(todo.back());
    todo.pop_back();
    if (s.rank() > rank_cap)
      throw ModelError("rank cap exceeded: set of rank " + std::to_string(s.rank()) +
                       " with cap " + std::to_string(rank_cap));
    if (!closed.insert(s).second) continue;
    for (const auto& m : s.members()) todo.push_back(m);
  }
  std::vector<HfSet> ordered(closed.begin(), closed.end());  // (rank, key) order

  Universe u;
  u.elements.reserve(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i)
    u.elements.push_back("e" + std::to_string(i));
  u.membership.assign(ordered.size(), std::vector<bool>(ordered.size(), false));
  std::map<std::string, int> by_key;
  for (std::size_t i = 0; i < ordered.size(); ++i) by_key[ordered[i].key()] = i;
  for (std::size_t c = 0; c < ordered.size(); ++c)
    for (const auto& m : ordered[c].members())
      u.membership[by_key.at(m.key())][c] = true;
  u.labels["0"] = u.elements[by_key.at(HfSet::empty().key())];
  u.extensional = true;  // distinct canonical sets have distinct member sets
  return u;
}

namespace {

// Index of the element whose member set is exactly `members`, or -1.
int element_with_members(const Universe& u, const std::set<int>& members) {
  for (int c = 0; c < u.size(); ++c) {
    bool match = true;
    for (int m = 0; m < u.size() && match; ++m) {
      bool want = members.count(m) > 0;
      if (u.member(m, c) != want) match = false;
    }
    if (match) return c;
  }
  return -1;
}

}  // namespace

int wiener_pair(int a, int b, const Universe& u) {
  if (a < 0 || b < 0 || a >= u.size() || b >= u.size())
    throw ModelError("wiener_pair: element out of range");
  auto require = [&](const std::set<int>& members, const std::string& what) {
    int idx = element_with_members(u, members);
    if (idx < 0) throw ModelError("wiener_pair: universe lacks " + what);
    return idx;
  };
  int zero = require({}, "the empty set");
  int sing_a = require({a}, "{a}");
  int first = require({sing_a, zero}, "{{a}, 0}");
  int sing_b = require({b}, "{b}");
  int second = require({sing_b}, "{{b}}");
  return require({first, second}, "the pair {{{a}, 0}, {{b}}}");
}

namespace {

bool eval_rec(const Formula& f, const Universe& u, Environment& env);

int lookup(const Environment& env, const VarName& v) {
  auto it = env.find(v);
  if (it == env.end()) throw ModelError("unbound variable: " + v);
  return it->second;
}

bool eval_atom(Rel rel, int lhs, int rhs, const Universe& u) {
  return rel == Rel::member ? u.member(lhs, rhs) : lhs == rhs;
}

// Evaluates the body for each binding of var inside the bound (when given),
// returning the count of satisfying elements; stops once past `enough`.
int count_satisfying(const QuantNode& q, const Universe& u, Environment& env,
                     int enough) {
  // The bound names an enclosing-scope variable, so resolve it first.
  std::optional<int> bound_elem;
  if (q.bound) bound_elem = lookup(env, *q.bound);
  auto saved = env.find(q.var);
  std::optional<int> old;
  if (saved != env.end()) old = saved->second;
  int count = 0;
  for (int e = 0; e < u.size() && count <= enough; ++e) {
    if (bound_elem && !u.member(e, *bound_elem)) continue;
    env[q.var] = e;
    if (eval_rec(*q.body, u, env)) ++count;
  }
  if (old)
    env[q.var] = *old;
  else
    env.erase(q.var);
  return count;
}

bool eval_rec(const Formula& f, const Universe& u, Environment& env) {
  return std::visit(
      Overload{
          [&](const AtomNode& n) {
            return eval_atom(n.rel, lookup(env, n.lhs), lookup(env, n.rhs), u);
          },
          [&](const ChainNode& n) {
            for (std::size_t i = 0; i < n.rels.size(); ++i) {
              int lhs = lookup(env, n.vars[i]);
              int rhs = lookup(env, n.vars[i + 1]);
              bool pos = eval_atom(n.rels[i] == ChainRel::member ||
                                           n.rels[i] == ChainRel::not_member
                                       ? Rel::member
                                       : Rel::equal,
                                   lhs, rhs, u);
              bool want = n.rels[i] == ChainRel::member || n.rels[i] == ChainRel::equal;
              if (pos != want) return false;
            }
            return true;
          },
          [&](const NotNode& n) { return !eval_rec(*n.sub, u, env); },
          [&](const BinNode& n) {
            switch (n.op) {
              case BinOp::conj:
                return eval_rec(*n.lhs, u, env) && eval_rec(*n.rhs, u, env);
              case BinOp::disj:
                return eval_rec(*n.lhs, u, env) || eval_rec(*n.rhs, u, env);
              case BinOp::implies:
                return !eval_rec(*n.lhs, u, env) || eval_rec(*n.rhs, u, env);
              case BinOp::iff:
                return eval_rec(*n.lhs, u, env) == eval_rec(*n.rhs, u, env);
            }
            return false;
          },
          [&](const QuantNode& n) {
            switch (n.q) {
              case Quant::forall: {
                // "forall x in R" ranges over the members of R only.
                int total = u.size();
                if (n.bound) {
                  int bound_elem = lookup(env, *n.bound);
                  total = 0;
                  for (int e = 0; e < u.size(); ++e)
                    if (u.member(e, bound_elem)) ++total;
                }
                return count_satisfying(n, u, env, u.size()) == total;
              }
              case Quant::exists:
                return count_satisfying(n, u, env, 0) > 0;
              case Quant::exists_unique:
                return count_satisfying(n, u, env, 1) == 1;
            }
            return false;
          },
      },
      f.node());
}

}  // namespace

bool eval(const Formula& f, const Universe& u, const Environment& env) {
  Environment scratch = env;
  return eval_rec(f, u, scratch);
}

}  // namespace nf
