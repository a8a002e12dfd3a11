#include "nf/formula.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nf {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

}  // namespace

FormulaPtr make_atom(VarName lhs, Rel rel, VarName rhs, SourceLoc loc) {
  return std::make_shared<Formula>(AtomNode{std::move(lhs), rel, std::move(rhs)}, loc);
}

FormulaPtr make_chain(std::vector<VarName> vars, std::vector<ChainRel> rels,
                      SourceLoc loc) {
  if (vars.size() != rels.size() + 1 || rels.empty())
    throw std::invalid_argument("chain needs n+1 variables for n links");
  return std::make_shared<Formula>(ChainNode{std::move(vars), std::move(rels)}, loc);
}

FormulaPtr make_not(FormulaPtr sub, SourceLoc loc) {
  return std::make_shared<Formula>(NotNode{std::move(sub)}, loc);
}

FormulaPtr make_bin(BinOp op, FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc) {
  return std::make_shared<Formula>(BinNode{op, std::move(lhs), std::move(rhs)}, loc);
}

FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs) {
  return make_bin(BinOp::conj, std::move(lhs), std::move(rhs));
}
FormulaPtr make_or(FormulaPtr lhs, FormulaPtr rhs) {
  return make_bin(BinOp::disj, std::move(lhs), std::move(rhs));
}
FormulaPtr make_implies(FormulaPtr lhs, FormulaPtr rhs) {
  return make_bin(BinOp::implies, std::move(lhs), std::move(rhs));
}
FormulaPtr make_iff(FormulaPtr lhs, FormulaPtr rhs) {
  return make_bin(BinOp::iff, std::move(lhs), std::move(rhs));
}

FormulaPtr make_quant(Quant q, VarName var, FormulaPtr body,
                      std::optional<VarName> bound, SourceLoc loc) {
  return std::make_shared<Formula>(
      QuantNode{q, std::move(var), std::move(bound), std::move(body)}, loc);
}

FormulaPtr make_forall(VarName var, FormulaPtr body) {
  return make_quant(Quant::forall, std::move(var), std::move(body));
}
FormulaPtr make_exists(VarName var, FormulaPtr body) {
  return make_quant(Quant::exists, std::move(var), std::move(body));
}
FormulaPtr make_unique(VarName var, FormulaPtr body) {
  return make_quant(Quant::exists_unique, std::move(var), std::move(body));
}

bool equal(const Formula& a, const Formula& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      Overload{
          [&](const AtomNode& x) {
            const auto& y = std::get<AtomNode>(b.node());
            return x.lhs == y.lhs && x.rel == y.rel && x.rhs == y.rhs;
          },
          [&](const ChainNode& x) {
            const auto& y = std::get<ChainNode>(b.node());
            return x.vars == y.vars && x.rels == y.rels;
          },
          [&](const NotNode& x) {
            const auto& y = std::get<NotNode>(b.node());
            return equal(*x.sub, *y.sub);
          },
          [&](const BinNode& x) {
            const auto& y = std::get<BinNode>(b.node());
            return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
          },
          [&](const QuantNode& x) {
            const auto& y = std::get<QuantNode>(b.node());
            return x.q == y.q && x.var == y.var && x.bound == y.bound &&
                   equal(*x.body, *y.body);
          },
      },
      a.node());
}

namespace {

void free_vars_into(const Formula& f, std::set<VarName>& bound,
                    std::set<VarName>& out) {
  std::visit(
      Overload{
          [&](const AtomNode& n) {
            if (!bound.count(n.lhs)) out.insert(n.lhs);
            if (!bound.count(n.rhs)) out.insert(n.rhs);
          },
          [&](const ChainNode& n) {
            for (const auto& v : n.vars)
              if (!bound.count(v)) out.insert(v);
          },
          [&](const NotNode& n) { free_vars_into(*n.sub, bound, out); },
          [&](const BinNode& n) {
            free_vars_into(*n.lhs, bound, out);
            free_vars_into(*n.rhs, bound, out);
          },
          [&](const QuantNode& n) {
            if (n.bound && !bound.count(*n.bound)) out.insert(*n.bound);
            bool fresh = bound.insert(n.var).second;
            free_vars_into(*n.body, bound, out);
            if (fresh) bound.erase(n.var);
          },
      },
      f.node());
}

}  // namespace

std::set<VarName> free_vars(const Formula& f) {
  std::set<VarName> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

std::set<VarName> all_vars(const Formula& f) {
  std::set<VarName> out;
  std::visit(Overload{
                 [&](const AtomNode& n) {
                   out.insert(n.lhs);
                   out.insert(n.rhs);
                 },
                 [&](const ChainNode& n) { out.insert(n.vars.begin(), n.vars.end()); },
                 [&](const NotNode& n) {
                   auto sub = all_vars(*n.sub);
                   out.insert(sub.begin(), sub.end());
                 },
                 [&](const BinNode& n) {
                   auto l = all_vars(*n.lhs);
                   auto r = all_vars(*n.rhs);
                   out.insert(l.begin(), l.end());
                   out.insert(r.begin(), r.end());
                 },
                 [&](const QuantNode& n) {
                   out.insert(n.var);
                   if (n.bound) out.insert(*n.bound);
                   auto sub = all_vars(*n.body);
                   out.insert(sub.begin(), sub.end());
                 },
             },
             f.node());
  return out;
}

bool is_desugared(const Formula& f) {
  return std::visit(
      Overload{
          [](const AtomNode&) { return true; },
          [](const ChainNode&) { return false; },
          [](const NotNode& n) { return is_desugared(*n.sub); },
          [](const BinNode& n) { return is_desugared(*n.lhs) && is_desugared(*n.rhs); },
          [](const QuantNode& n) {
            if (n.q == Quant::exists_unique || n.bound) return false;
            return is_desugared(*n.body);
          },
      },
      f.node());
}

namespace {

bool binders_ok(const Formula& f, std::set<VarName>& seen,
                const std::set<VarName>& free) {
  return std::visit(
      Overload{
          [](const AtomNode&) { return true; },
          [](const ChainNode&) { return true; },
          [&](const NotNode& n) { return binders_ok(*n.sub, seen, free); },
          [&](const BinNode& n) {
            return binders_ok(*n.lhs, seen, free) && binders_ok(*n.rhs, seen, free);
          },
          [&](const QuantNode& n) {
            if (free.count(n.var)) return false;
            if (!seen.insert(n.var).second) return false;
            return binders_ok(*n.body, seen, free);
          },
      },
      f.node());
}

}  // namespace

bool is_rectified(const Formula& f) {
  std::set<VarName> seen;
  auto free = free_vars(f);
  return binders_ok(f, seen, free);
}

VarName fresh_name(const VarName& base, const std::set<VarName>& used) {
  if (!used.count(base)) return base;
  for (int k = 1;; ++k) {
    VarName candidate = base + std::to_string(k);
    if (!used.count(candidate)) return candidate;
  }
}

namespace {

// Replaces free occurrences of `from` with `to`; `to` must not occur in f.
FormulaPtr rename_free(const FormulaPtr& f, const VarName& from, const VarName& to) {
  return std::visit(
      Overload{
          [&](const AtomNode& n) {
            return make_atom(n.lhs == from ? to : n.lhs, n.rel,
                             n.rhs == from ? to : n.rhs, f->loc());
          },
          [&](const ChainNode& n) {
            std::vector<VarName> vars;
            vars.reserve(n.vars.size());
            for (const auto& v : n.vars) vars.push_back(v == from ? to : v);
            return make_chain(std::move(vars), n.rels, f->loc());
          },
          [&](const NotNode& n) {
            return make_not(rename_free(n.sub, from, to), f->loc());
          },
          [&](const BinNode& n) {
            return make_bin(n.op, rename_free(n.lhs, from, to),
                            rename_free(n.rhs, from, to), f->loc());
          },
          [&](const QuantNode& n) {
            std::optional<VarName> bound = n.bound;
            if (bound && *bound == from) bound = to;
            if (n.var == from) return make_quant(n.q, n.var, n.body, bound, f->loc());
            return make_quant(n.q, n.var, rename_free(n.body, from, to), bound,
                              f->loc());
          },
      },
      f->node());
}

FormulaPtr chain_link(const VarName& a, ChainRel rel, const VarName& b,
                      SourceLoc loc) {
  switch (rel) {
    case ChainRel::member:
      return make_atom(a, Rel::member, b, loc);
    case ChainRel::equal:
      return make_atom(a, Rel::equal, b, loc);
    case ChainRel::not_member:
      return make_not(make_atom(a, Rel::member, b, loc), loc);
    case ChainRel::not_equal:
      return make_not(make_atom(a, Rel::equal, b, loc), loc);
  }
  throw std::logic_error("bad chain relation");
}

}  // namespace

FormulaPtr desugar(const FormulaPtr& f) {
  return std::visit(
      Overload{
          [&](const AtomNode&) { return f; },
          [&](const ChainNode& n) {
            FormulaPtr acc = chain_link(n.vars[0], n.rels[0], n.vars[1], f->loc());
            for (std::size_t i = 1; i < n.rels.size(); ++i) {
              acc = make_and(acc,
                             chain_link(n.vars[i], n.rels[i], n.vars[i + 1], f->loc()));
            }
            return acc;
          },
          [&](const NotNode& n) {
            auto sub = desugar(n.sub);
            return sub == n.sub ? f : make_not(sub, f->loc());
          },
          [&](const BinNode& n) {
            auto lhs = desugar(n.lhs);
            auto rhs = desugar(n.rhs);
            if (lhs == n.lhs && rhs == n.rhs) return f;
            return make_bin(n.op, lhs, rhs, f->loc());
          },
          [&](const QuantNode& n) {
            FormulaPtr body = desugar(n.body);
            VarName var = n.var;
            if (n.bound) {
              if (*n.bound == var) {
                // The bound refers to the enclosing scope; rename the binder
                // so the guard atom keeps pointing there.
                auto used = all_vars(*body);
                used.insert(var);
                VarName renamed = fresh_name(var, used);
                body = rename_free(body, var, renamed);
                var = renamed;
              }
              auto guard = make_atom(var, Rel::member, *n.bound, f->loc());
              // "exists x in R" conjoins the bound, "forall x in R" guards it.
              body = n.q == Quant::forall ? make_implies(guard, body)
                                          : make_and(guard, body);
            }
            if (n.q == Quant::exists_unique) {
              auto used = all_vars(*body);
              used.insert(var);
              VarName z = fresh_name("z", used);
              auto iff = make_iff(body, make_atom(var, Rel::equal, z, f->loc()));
              return make_exists(z, make_forall(var, iff));
            }
            if (body == n.body && !n.bound) return f;
            return make_quant(n.q, var, body, std::nullopt, f->loc());
          },
      },
      f->node());
}

namespace {

VarName rename_of(const std::map<VarName, VarName>& env, const VarName& v) {
  auto it = env.find(v);
  return it == env.end() ? v : it->second;
}

FormulaPtr rectify_walk(const FormulaPtr& f, std::map<VarName, VarName>& env,
                        std::set<VarName>& claimed) {
  return std::visit(
      Overload{
          [&](const AtomNode& n) {
            return make_atom(rename_of(env, n.lhs), n.rel, rename_of(env, n.rhs),
                             f->loc());
          },
          [&](const ChainNode& n) {
            std::vector<VarName> vars;
            vars.reserve(n.vars.size());
            for (const auto& v : n.vars) vars.push_back(rename_of(env, v));
            return make_chain(std::move(vars), n.rels, f->loc());
          },
          [&](const NotNode& n) {
            return make_not(rectify_walk(n.sub, env, claimed), f->loc());
          },
          [&](const BinNode& n) {
            auto lhs = rectify_walk(n.lhs, env, claimed);
            auto rhs = rectify_walk(n.rhs, env, claimed);
            return make_bin(n.op, lhs, rhs, f->loc());
          },
          [&](const QuantNode& n) {
            VarName fresh = fresh_name(n.var, claimed);
            claimed.insert(fresh);
            std::optional<VarName> bound;
            if (n.bound) bound = rename_of(env, *n.bound);
            auto saved = env.find(n.var);
            std::optional<VarName> old;
            if (saved != env.end()) old = saved->second;
            env[n.var] = fresh;
            auto body = rectify_walk(n.body, env, claimed);
            if (old)
              env[n.var] = *old;
            else
              env.erase(n.var);
            return make_quant(n.q, fresh, body, bound, f->loc());
          },
      },
      f->node());
}

}  // namespace

FormulaPtr rectify(const FormulaPtr& f) {
  std::map<VarName, VarName> env;
  std::set<VarName> claimed = free_vars(*f);
  return rectify_walk(f, env, claimed);
}

namespace {

const char* chain_rel_text(ChainRel r) {
  switch (r) {
    case ChainRel::member:
      return "in";
    case ChainRel::not_member:
      return "notin";
    case ChainRel::equal:
      return "=";
    case ChainRel::not_equal:
      return "!=";
  }
  return "?";
}

const char* bin_op_text(BinOp op) {
  switch (op) {
    case BinOp::conj:
      return "and";
    case BinOp::disj:
      return "or";
    case BinOp::implies:
      return "->";
    case BinOp::iff:
      return "<->";
  }
  return "?";
}

// Quantifier bodies that start with a bare identifier would be swallowed by
// the binder list, so atoms and chains get parentheses there. Quantifier
// scope is greedy, so a quantifier (possibly under negations) appearing left
// of a connective must be parenthesized or it would swallow the connective.
bool starts_with_ident(const Formula& body) {
  return std::holds_alternative<AtomNode>(body.node()) ||
         std::holds_alternative<ChainNode>(body.node());
}

bool swallows_right(const Formula& f) {
  if (std::holds_alternative<QuantNode>(f.node())) return true;
  if (const auto* n = std::get_if<NotNode>(&f.node())) return swallows_right(*n->sub);
  return false;
}

void pretty_into(const Formula& f, std::string& out) {
  std::visit(
      Overload{
          [&](const AtomNode& n) {
            out += n.lhs;
            out += n.rel == Rel::member ? " in " : " = ";
            out += n.rhs;
          },
          [&](const ChainNode& n) {
            out += n.vars[0];
            for (std::size_t i = 0; i < n.rels.size(); ++i) {
              out += ' ';
              out += chain_rel_text(n.rels[i]);
              out += ' ';
              out += n.vars[i + 1];
            }
          },
          [&](const NotNode& n) {
            out += "not ";
            pretty_into(*n.sub, out);
          },
          [&](const BinNode& n) {
            out += '(';
            if (swallows_right(*n.lhs)) {
              out += '(';
              pretty_into(*n.lhs, out);
              out += ')';
            } else {
              pretty_into(*n.lhs, out);
            }
            out += ' ';
            out += bin_op_text(n.op);
            out += ' ';
            pretty_into(*n.rhs, out);
            out += ')';
          },
          [&](const QuantNode& n) {
            switch (n.q) {
              case Quant::forall:
                out += "forall ";
                break;
              case Quant::exists:
                out += "exists ";
                break;
              case Quant::exists_unique:
                out += "exists! ";
                break;
            }
            out += n.var;
            if (n.bound) {
              out += " in ";
              out += *n.bound;
            }
            out += ' ';
            if (starts_with_ident(*n.body)) {
              out += '(';
              pretty_into(*n.body, out);
              out += ')';
            } else {
              pretty_into(*n.body, out);
            }
          },
      },
      f.node());
}

}  // namespace

std::string pretty(const Formula& f) {
  std::string out;
  pretty_into(f, out);
  return out;
}

namespace {

void atoms_into(const Formula& f, std::vector<AtomOcc>& out) {
  std::visit(Overload{
                 [&](const AtomNode& n) { out.push_back({n.lhs, n.rel, n.rhs}); },
                 [&](const ChainNode&) -> void {
                   throw std::invalid_argument(
                       "atom_occurrences requires a desugared formula");
                 },
                 [&](const NotNode& n) { atoms_into(*n.sub, out); },
                 [&](const BinNode& n) {
                   atoms_into(*n.lhs, out);
                   atoms_into(*n.rhs, out);
                 },
                 [&](const QuantNode& n) {
                   if (n.bound || n.q == Quant::exists_unique)
                     throw std::invalid_argument(
                         "atom_occurrences requires a desugared formula");
                   atoms_into(*n.body, out);
                 },
             },
             f.node());
}

}  // namespace

std::vector<AtomOcc> atom_occurrences(const Formula& f) {
  std::vector<AtomOcc> out;
  atoms_into(f, out);
  return out;
}

std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
  std::vector<FormulaPtr> out;
  std::vector<FormulaPtr> stack{f};
  while (!stack.empty()) {
    FormulaPtr cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    std::visit(Overload{
                   [](const AtomNode&) {},
                   [](const ChainNode&) {},
                   [&](const NotNode& n) { stack.push_back(n.sub); },
                   [&](const BinNode& n) {
                     stack.push_back(n.rhs);
                     stack.push_back(n.lhs);
                   },
                   [&](const QuantNode& n) { stack.push_back(n.body); },
               },
               cur->node());
  }
  return out;
}

InstanceVerdict check_instance(const ComprehensionInstance& ci) {
  auto fv = free_vars(*ci.body);
  if (!fv.count(ci.target))
    return {InstanceVerdict::Status::target_not_free, {}};
  std::set<VarName> declared(ci.parameters.begin(), ci.parameters.end());
  declared.insert(ci.target);
  std::vector<VarName> undeclared;
  for (const auto& v : fv)
    if (!declared.count(v)) undeclared.push_back(v);
  if (!undeclared.empty())
    return {InstanceVerdict::Status::undeclared_free_variable, std::move(undeclared)};
  return {};
}

}  // namespace nf
