#include "rholog/strategies.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace rholog {

const std::vector<std::string>& native_names() {
  static const std::vector<std::string> names = {"id",        "compose", "choice", "first_one",   "first_all", "nf",
                                                 "iterate",   "map1",    "map",    "interactive", "rewrite"};
  return names;
}

bool is_native(std::string_view name) {
  const auto& n = native_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

bool handles(const Term& st, const NativeContext& ctx) {
  if (st.kind() != NodeKind::app || !is_native(st.symbol())) return false;
  return ctx.native_rewrite || st.symbol() != "rewrite";
}

namespace {

Term var_term(const NativeContext& ctx, VarKind k) { return Term::variable(ctx.fresh(k)); }

void require_arity(const Term& st, std::size_t lo, std::size_t hi) {
  const std::size_t n = st.args().size();
  if (n < lo || n > hi) {
    std::string want = lo == hi ? std::to_string(lo) : hi == SIZE_MAX ? "at least " + std::to_string(lo)
                                                                      : std::to_string(lo) + ".." + std::to_string(hi);
    throw StrategyError(st.symbol() + " expects " + want + " argument(s), got " + std::to_string(n));
  }
}

std::uint64_t natural(const Term& t) {
  const bool digits = t.kind() == NodeKind::app && t.args().empty() && !t.symbol().empty() &&
                      std::all_of(t.symbol().begin(), t.symbol().end(), [](char c) { return c >= '0' && c <= '9'; });
  if (!digits || t.symbol().size() > 18) throw StrategyError("iterate expects a natural number, got " + print(t));
  return std::stoull(t.symbol());
}

Expansion single(std::vector<Literal> goals) {
  Expansion e;
  e.alternatives.push_back(std::move(goals));
  return e;
}

// first_one / first_all: the first strategy with an answer wins.
Expansion first_of(const Literal& lit, const NativeContext& ctx, bool all) {
  Expansion e;
  for (const Term& st : lit.strategy.args()) {
    Term tmp = var_term(ctx, VarKind::sequence);
    e.alternatives.push_back({Literal::rho(st, lit.lhs, {tmp}), all ? Literal::soft_commit() : Literal::commit(),
                              Literal::match(lit.rhs, {tmp})});
  }
  return e;
}

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

// Reads one instruction: a strategy term ending in a period, or `finish`.
// Returns nullopt for finish and end of input.
std::optional<std::string> read_instruction(std::istream& in, std::ostream* out) {
  std::string text;
  std::string line;
  while (true) {
    if (out) *out << (text.empty() ? "strategy> " : "|    ") << std::flush;
    if (!std::getline(in, line)) return std::nullopt;
    text += line;
    text += '\n';
    std::string t = trim(text);
    if (t.empty()) {
      text.clear();
      continue;
    }
    if (t == "finish" || t == "finish.") return std::nullopt;
    if (t.back() == '.') {
      t.pop_back();
      return t;
    }
  }
}

Expansion interactive(const Literal& lit, const NativeContext& ctx) {
  Hedge current = lit.lhs;
  const OpTable ops = ctx.ops ? *ctx.ops : OpTable::standard();
  std::ostream* out = ctx.interaction.out;
  if (ctx.interaction.in && ctx.apply_first) {
    if (out) *out << "current: " << print(current, ops) << '\n';
    while (auto text = read_instruction(*ctx.interaction.in, out)) {
      Term st;
      try {
        st = parse_term(*text, ops);
      } catch (const SyntaxError& err) {
        if (out) *out << "syntax error: " << err.message << '\n';
        continue;
      }
      if (!st.ground()) {
        if (out) *out << "strategy must be ground\n";
        continue;
      }
      if (auto next = ctx.apply_first(st, current)) {
        current = std::move(*next);
        if (out) *out << "current: " << print(current, ops) << '\n';
      } else if (out) {
        *out << "strategy failed; hedge unchanged\n";
      }
    }
  }
  return single({Literal::match(lit.rhs, current)});
}

}  // namespace

Expansion expand(const Literal& lit, const NativeContext& ctx) {
  const Term& st = lit.strategy;
  const std::string& name = st.symbol();
  const Hedge& args = st.args();

  if (name == "id") {
    require_arity(st, 0, 0);
    return single({Literal::match(lit.rhs, lit.lhs)});
  }
  if (name == "compose") {
    require_arity(st, 2, SIZE_MAX);
    Term tmp = var_term(ctx, VarKind::sequence);
    Term rest = args.size() == 2 ? args[1] : Term::app("compose", Hedge(args.begin() + 1, args.end()));
    return single({Literal::rho(args[0], lit.lhs, {tmp}), Literal::rho(rest, {tmp}, lit.rhs)});
  }
  if (name == "choice") {
    require_arity(st, 1, SIZE_MAX);
    Expansion e;
    for (const Term& s : args) e.alternatives.push_back({Literal::rho(s, lit.lhs, lit.rhs)});
    return e;
  }
  if (name == "first_one" || name == "first_all") {
    require_arity(st, 1, SIZE_MAX);
    return first_of(lit, ctx, name == "first_all");
  }
  if (name == "nf") {
    require_arity(st, 1, 1);
    Term tmp = var_term(ctx, VarKind::sequence);
    Expansion e;
    e.alternatives.push_back({Literal::rho(args[0], lit.lhs, {tmp}), Literal::soft_commit(),
                              Literal::rho(st, {tmp}, lit.rhs)});
    e.alternatives.push_back({Literal::match(lit.rhs, lit.lhs)});
    return e;
  }
  if (name == "iterate") {
    require_arity(st, 2, 2);
    const std::uint64_t n = natural(args[1]);
    if (n == 0) return single({Literal::match(lit.rhs, lit.lhs)});
    Term tmp = var_term(ctx, VarKind::sequence);
    Term rest = Term::app("iterate", {args[0], Term::app(std::to_string(n - 1))});
    return single({Literal::rho(args[0], lit.lhs, {tmp}), Literal::rho(rest, {tmp}, lit.rhs)});
  }
  if (name == "map1" || name == "map") {
    require_arity(st, 1, 1);
    const VarKind k = name == "map1" ? VarKind::individual : VarKind::sequence;
    std::vector<Literal> goals;
    Hedge images;
    for (const Term& t : lit.lhs) {
      Term v = var_term(ctx, k);
      goals.push_back(Literal::rho(args[0], {t}, {v}));
      images.push_back(v);
    }
    goals.push_back(Literal::match(lit.rhs, images));
    return single(std::move(goals));
  }
  if (name == "rewrite") {
    require_arity(st, 1, 1);
    Variable ctx_var = ctx.fresh(VarKind::context);
    Term redex = var_term(ctx, VarKind::individual);
    Term contractum = var_term(ctx, VarKind::individual);
    Expansion e;
    e.match = MatchExpansion{
        {Term::ctx_app(ctx_var, redex)},
        lit.lhs,
        {Literal::rho(args[0], {redex}, {contractum}), Literal::match(lit.rhs, {Term::ctx_app(ctx_var, contractum)})}};
    return e;
  }
  if (name == "interactive") {
    require_arity(st, 0, 0);
    return interactive(lit, ctx);
  }
  throw StrategyError("not a native strategy: " + name);
}

}  // namespace rholog
