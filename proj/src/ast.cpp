#include "rholog/ast.hpp"

namespace rholog {

Literal Literal::rho(Term st, Hedge lhs, Hedge rhs, bool negative) {
  Literal l;
  l.kind = negative ? LiteralKind::negative : LiteralKind::positive;
  l.strategy = std::move(st);
  l.lhs = std::move(lhs);
  l.rhs = std::move(rhs);
  return l;
}

Literal Literal::call(Term goal) {
  Literal l;
  l.kind = LiteralKind::call;
  l.goal = std::move(goal);
  return l;
}

Literal Literal::cut() {
  Literal l;
  l.kind = LiteralKind::cut;
  return l;
}

Literal Literal::match(Hedge pattern, Hedge subject) {
  Literal l;
  l.kind = LiteralKind::match;
  l.rhs = std::move(pattern);
  l.lhs = std::move(subject);
  return l;
}

Literal Literal::cut_to(std::size_t barrier) {
  Literal l;
  l.kind = LiteralKind::cut_to;
  l.barrier = barrier;
  return l;
}

Literal Literal::soft_cut(std::uint64_t target) {
  Literal l;
  l.kind = LiteralKind::soft_cut;
  l.target = target;
  return l;
}

Literal Literal::commit() {
  Literal l;
  l.kind = LiteralKind::commit;
  return l;
}

Literal Literal::soft_commit() {
  Literal l;
  l.kind = LiteralKind::soft_commit;
  return l;
}

Literal apply_subst(const Substitution& sigma, const Literal& lit) {
  if (sigma.empty()) return lit;
  Literal out = lit;
  switch (lit.kind) {
    case LiteralKind::positive:
    case LiteralKind::negative:
      out.strategy = apply_subst_term(sigma, lit.strategy);
      out.lhs = apply_subst(sigma, lit.lhs);
      out.rhs = apply_subst(sigma, lit.rhs);
      break;
    case LiteralKind::match:
      out.lhs = apply_subst(sigma, lit.lhs);
      out.rhs = apply_subst(sigma, lit.rhs);
      break;
    case LiteralKind::call: out.goal = apply_subst_term(sigma, lit.goal); break;
    default: break;
  }
  return out;
}

RhoClause expand_abbreviation(const Abbreviation& a) {
  std::vector<Variable> used;
  collect_vars(a.name, used);
  collect_vars(a.strategy, used);
  auto fresh = [&used](std::string base) {
    std::string name = base;
    for (int i = 1;; ++i) {
      bool clash = false;
      for (const auto& v : used) clash = clash || v.name == name;
      if (!clash) break;
      name = base + std::to_string(i);
    }
    Variable v{VarKind::sequence, name, 0, false};
    used.push_back(v);
    return Term::variable(v);
  };
  Term in = fresh("s_X");
  Term out = fresh("s_Y");
  RhoClause c;
  c.head = Literal::rho(a.name, {in}, {out});
  c.body.push_back(Literal::rho(a.strategy, {in}, {out}));
  c.pos = a.pos;
  return c;
}

}  // namespace rholog
