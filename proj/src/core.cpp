#include "rholog/core.hpp"

#include <algorithm>
#include <cassert>

namespace rholog {

std::string_view kind_name(VarKind k) {
  switch (k) {
    case VarKind::individual: return "individual";
    case VarKind::sequence: return "sequence";
    case VarKind::function: return "function";
    case VarKind::context: return "context";
    case VarKind::prolog: return "prolog";
  }
  return "?";
}

namespace {

std::shared_ptr<Node> make_node(NodeKind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

void summarize(Node& n) {
  n.ground = n.kind == NodeKind::app || n.kind == NodeKind::hole;
  n.holes = n.kind == NodeKind::hole ? 1 : 0;
  n.size = 1;
  for (const auto& a : n.args) {
    n.ground = n.ground && a.ground();
    n.holes += a.holes();
    n.size += a.size();
  }
}

int compare_vars(const Variable& a, const Variable& b) {
  auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

int compare_terms(const Term& a, const Term& b);

int compare_hedges(const Hedge& a, const Hedge& b) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare_terms(a[i], b[i])) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

int compare_terms(const Term& a, const Term& b) {
  if (a.identity() == b.identity()) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case NodeKind::hole: return 0;
    case NodeKind::ind_var:
    case NodeKind::seq_var:
    case NodeKind::prolog_var: return compare_vars(a.var(), b.var());
    case NodeKind::app:
      if (int c = a.symbol().compare(b.symbol())) return c < 0 ? -1 : 1;
      return compare_hedges(a.args(), b.args());
    case NodeKind::fun_app:
    case NodeKind::ctx_app:
      if (int c = compare_vars(a.var(), b.var())) return c;
      return compare_hedges(a.args(), b.args());
  }
  return 0;
}

}  // namespace

Term Term::variable(Variable v) {
  NodeKind k = NodeKind::ind_var;
  switch (v.kind) {
    case VarKind::individual: k = NodeKind::ind_var; break;
    case VarKind::sequence: k = NodeKind::seq_var; break;
    case VarKind::prolog: k = NodeKind::prolog_var; break;
    case VarKind::function: return fun_app(std::move(v));
    case VarKind::context: throw std::logic_error("context variable must be applied to a term");
  }
  auto n = make_node(k);
  n->var = std::move(v);
  summarize(*n);
  return Term{std::move(n)};
}

Term Term::hole() {
  static const Term h = [] {
    auto n = make_node(NodeKind::hole);
    summarize(*n);
    return Term{std::move(n)};
  }();
  return h;
}

Term Term::app(std::string symbol, Hedge args) {
  auto n = make_node(NodeKind::app);
  n->symbol = std::move(symbol);
  n->args = std::move(args);
  summarize(*n);
  return Term{std::move(n)};
}

Term Term::fun_app(Variable head, Hedge args) {
  assert(head.kind == VarKind::function);
  auto n = make_node(NodeKind::fun_app);
  n->var = std::move(head);
  n->args = std::move(args);
  summarize(*n);
  return Term{std::move(n)};
}

Term Term::ctx_app(Variable ctx, Term arg) {
  assert(ctx.kind == VarKind::context);
  assert(arg.kind() != NodeKind::seq_var);
  auto n = make_node(NodeKind::ctx_app);
  n->var = std::move(ctx);
  n->args.push_back(std::move(arg));
  summarize(*n);
  return Term{std::move(n)};
}

NodeKind Term::kind() const { return node_->kind; }
const std::string& Term::symbol() const { return node_->symbol; }
const Variable& Term::var() const { return node_->var; }
const Hedge& Term::args() const { return node_->args; }
const Term& Term::ctx_arg() const { return node_->args.front(); }
bool Term::is_var() const {
  auto k = node_->kind;
  return k == NodeKind::ind_var || k == NodeKind::seq_var || k == NodeKind::prolog_var;
}
bool Term::ground() const { return node_->ground; }
std::size_t Term::holes() const { return node_->holes; }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.identity() == b.identity()) return true;
  if (!a.valid() || !b.valid()) return false;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case NodeKind::hole: return true;
    case NodeKind::ind_var:
    case NodeKind::seq_var:
    case NodeKind::prolog_var: return a.var() == b.var();
    case NodeKind::app: return a.symbol() == b.symbol() && a.args() == b.args();
    case NodeKind::fun_app:
    case NodeKind::ctx_app: return a.var() == b.var() && a.args() == b.args();
  }
  return false;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  int c = compare_terms(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool is_ground(const Hedge& h) {
  return std::all_of(h.begin(), h.end(), [](const Term& t) { return t.ground(); });
}

std::size_t hole_count(const Hedge& h) {
  std::size_t n = 0;
  for (const auto& t : h) n += t.holes();
  return n;
}

Hedge hedge_concat(const Hedge& h1, const Hedge& h2) {
  Hedge out;
  out.reserve(h1.size() + h2.size());
  out.insert(out.end(), h1.begin(), h1.end());
  out.insert(out.end(), h2.begin(), h2.end());
  return out;
}

void Substitution::bind(const Variable& v, Binding b) {
  assert(!v.anonymous);
  map_.insert_or_assign(v, std::move(b));
}

const Binding* Substitution::lookup(const Variable& v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

std::strong_ordering operator<=>(const Substitution& a, const Substitution& b) {
  return std::lexicographical_compare_three_way(a.map_.begin(), a.map_.end(), b.map_.begin(),
                                                b.map_.end());
}

namespace {

Term fill_hole(const Term& ctx, const Term& t) {
  if (ctx.kind() == NodeKind::hole) return t;
  Hedge args = ctx.args();
  for (auto& a : args) {
    if (a.holes() > 0) {
      a = fill_hole(a, t);
      break;
    }
  }
  switch (ctx.kind()) {
    case NodeKind::app: return Term::app(ctx.symbol(), std::move(args));
    case NodeKind::fun_app: return Term::fun_app(ctx.var(), std::move(args));
    case NodeKind::ctx_app: return Term::ctx_app(ctx.var(), std::move(args.front()));
    default: return ctx;
  }
}

void apply_into(const Substitution& sigma, const Term& t, Hedge& out);

Hedge apply_args(const Substitution& sigma, const Hedge& args, bool& changed) {
  Hedge out;
  out.reserve(args.size());
  for (const auto& a : args) {
    const auto before = out.size();
    apply_into(sigma, a, out);
    if (out.size() != before + 1 || out.back().identity() != a.identity()) changed = true;
  }
  return out;
}

void apply_into(const Substitution& sigma, const Term& t, Hedge& out) {
  if (t.ground()) {
    out.push_back(t);
    return;
  }
  switch (t.kind()) {
    case NodeKind::hole:
    case NodeKind::app: {
      bool changed = false;
      Hedge args = apply_args(sigma, t.args(), changed);
      out.push_back(changed ? Term::app(t.symbol(), std::move(args)) : t);
      return;
    }
    case NodeKind::ind_var:
    case NodeKind::prolog_var: {
      const Binding* b = t.var().anonymous ? nullptr : sigma.lookup(t.var());
      out.push_back(b ? std::get<Term>(*b) : t);
      return;
    }
    case NodeKind::seq_var: {
      const Binding* b = t.var().anonymous ? nullptr : sigma.lookup(t.var());
      if (!b) {
        out.push_back(t);
        return;
      }
      const auto& h = std::get<Hedge>(*b);
      out.insert(out.end(), h.begin(), h.end());
      return;
    }
    case NodeKind::fun_app: {
      bool changed = false;
      Hedge args = apply_args(sigma, t.args(), changed);
      const Binding* b = t.var().anonymous ? nullptr : sigma.lookup(t.var());
      if (b)
        out.push_back(Term::app(std::get<Symbol>(*b).name, std::move(args)));
      else
        out.push_back(changed ? Term::fun_app(t.var(), std::move(args)) : t);
      return;
    }
    case NodeKind::ctx_app: {
      Term arg = apply_subst_term(sigma, t.ctx_arg());
      const Binding* b = t.var().anonymous ? nullptr : sigma.lookup(t.var());
      if (b)
        out.push_back(apply_context(std::get<Term>(*b), arg));
      else
        out.push_back(arg.identity() == t.ctx_arg().identity() ? t : Term::ctx_app(t.var(), arg));
      return;
    }
  }
}

void positions_rec(const Term& t, Position& cur, std::vector<Position>& out, Traversal order) {
  if (order == Traversal::leftmost_outermost) out.push_back(cur);
  if (t.kind() == NodeKind::app || t.kind() == NodeKind::fun_app) {
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (t.args()[i].kind() == NodeKind::seq_var) continue;
      cur.push_back(i + 1);
      positions_rec(t.args()[i], cur, out, order);
      cur.pop_back();
    }
  }
  if (order == Traversal::leftmost_innermost) out.push_back(cur);
}

Term replace_rec(const Term& t, const Position& p, std::size_t depth, const Term& r) {
  if (depth == p.size()) return r;
  Hedge args = t.args();
  auto& slot = args.at(p[depth] - 1);
  slot = replace_rec(slot, p, depth + 1, r);
  switch (t.kind()) {
    case NodeKind::app: return Term::app(t.symbol(), std::move(args));
    case NodeKind::fun_app: return Term::fun_app(t.var(), std::move(args));
    case NodeKind::ctx_app: return Term::ctx_app(t.var(), std::move(args.front()));
    default: throw std::out_of_range("position does not exist");
  }
}

void add_var(const Variable& v, std::vector<Variable>& out) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

}  // namespace

Term apply_context(const Term& ctx, const Term& t) {
  if (ctx.holes() != 1)
    throw MalformedContext("context must contain exactly one hole, found " +
                           std::to_string(ctx.holes()));
  return fill_hole(ctx, t);
}

Hedge apply_subst(const Substitution& sigma, const Hedge& h) {
  if (sigma.empty()) return h;
  Hedge out;
  out.reserve(h.size());
  for (const auto& t : h) apply_into(sigma, t, out);
  return out;
}

Hedge apply_subst(const Substitution& sigma, const Term& t) {
  Hedge out;
  apply_into(sigma, t, out);
  return out;
}

Term apply_subst_term(const Substitution& sigma, const Term& t) {
  if (t.kind() == NodeKind::seq_var) throw std::logic_error("sequence variable where a term is required");
  Hedge out;
  apply_into(sigma, t, out);
  return out.front();
}

std::vector<Position> hole_positions(const Term& t, Traversal order) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out, order);
  return out;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (auto i : p) cur = &cur->args().at(i - 1);
  return *cur;
}

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
  return replace_rec(t, p, 0, replacement);
}

void collect_vars(const Term& t, std::vector<Variable>& out) {
  if (t.ground()) return;
  switch (t.kind()) {
    case NodeKind::ind_var:
    case NodeKind::seq_var:
    case NodeKind::prolog_var: add_var(t.var(), out); return;
    case NodeKind::fun_app:
    case NodeKind::ctx_app: add_var(t.var(), out); break;
    default: break;
  }
  collect_vars(t.args(), out);
}

void collect_vars(const Hedge& h, std::vector<Variable>& out) {
  for (const auto& t : h) collect_vars(t, out);
}

}  // namespace rholog
