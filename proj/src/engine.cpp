#include "rholog/engine.hpp"

#include <algorithm>
#include <climits>
#include <ostream>
#include <set>

namespace rholog {

ConsultError::ConsultError(std::vector<std::string> ps)
    : std::runtime_error(ps.empty() ? std::string("consult failed") : ps.front()), problems(std::move(ps)) {}

// ---------------------------------------------------------------------------
// Program

Program::Program(ProgramOptions options) : options_(options) {}

namespace {

bool builtin_predicate(const std::string& name, std::size_t arity) {
  static const std::set<std::pair<std::string, std::size_t>> builtins = {
      {"true", 0}, {"fail", 0}, {"nl", 0},  {"write", 1}, {"is", 2},  {"<", 2},
      {">", 2},    {"=<", 2},   {">=", 2},  {"=:=", 2},   {"=\\=", 2}};
  return builtins.contains({name, arity});
}

std::string at_line(const SourcePos& p) { return "line " + std::to_string(p.line) + ": "; }

}  // namespace

std::vector<Violation> Program::consult(const SourceProgram& src) {
  std::vector<std::string> problems;
  std::vector<RhoClause> added;
  for (const auto& item : src.items) {
    if (const auto* rc = std::get_if<RhoClause>(&item)) {
      added.push_back(*rc);
    } else if (const auto* ab = std::get_if<Abbreviation>(&item)) {
      added.push_back(expand_abbreviation(*ab));
    } else if (const auto* pc = std::get_if<PrologClause>(&item)) {
      if (builtin_predicate(pc->head.symbol(), pc->head.args().size()))
        problems.push_back(at_line(pc->pos) + "cannot redefine builtin " + pc->head.symbol() + "/" +
                           std::to_string(pc->head.args().size()));
    }
  }
  for (const auto& c : added) {
    const Term& st = c.head.strategy;
    if (st.kind() != NodeKind::app || !is_native(st.symbol())) continue;
    if (st.symbol() == "rewrite" && !options_.native_rewrite) continue;
    problems.push_back(at_line(c.pos) + "clause for built-in strategy " + st.symbol());
  }

  std::vector<const SourceProgram*> all;
  for (const auto& s : sources_) all.push_back(&s);
  all.push_back(&src);
  std::vector<Violation> violations = program_check(all);
  // Violations of earlier sources were already reported when they were consulted.
  if (!sources_.empty()) {
    std::vector<const SourceProgram*> before(all.begin(), all.end() - 1);
    auto old = program_check(before);
    std::vector<std::string> seen;
    for (const auto& v : old) seen.push_back(describe(v));
    std::erase_if(violations, [&seen](const Violation& v) {
      auto it = std::find(seen.begin(), seen.end(), describe(v));
      if (it == seen.end()) return false;
      seen.erase(it);
      return true;
    });
  }
  if (options_.strict)
    for (const auto& v : violations) problems.push_back(describe(v));
  if (!problems.empty()) throw ConsultError(std::move(problems));

  sources_.push_back(src);
  clauses_.insert(clauses_.end(), added.begin(), added.end());
  for (const auto& item : src.items)
    if (const auto* pc = std::get_if<PrologClause>(&item))
      prolog_[{pc->head.symbol(), pc->head.args().size()}].push_back(*pc);
  ops_ = src.ops;
  std::vector<const SourceProgram*> ptrs;
  for (const auto& s : sources_) ptrs.push_back(&s);
  modes_ = mode_table(ptrs);
  reindex();
  return violations;
}

void Program::reindex() {
  by_symbol_.clear();
  wildcard_.clear();
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    const Term& st = clauses_[i].head.strategy;
    if (st.kind() == NodeKind::app)
      by_symbol_[st.symbol()].push_back(i);
    else
      wildcard_.push_back(i);
  }
  if (wildcard_.empty()) return;
  for (auto& [name, idx] : by_symbol_) {
    std::vector<std::size_t> merged;
    std::merge(idx.begin(), idx.end(), wildcard_.begin(), wildcard_.end(), std::back_inserter(merged));
    idx = std::move(merged);
  }
}

const std::vector<std::size_t>& Program::candidates(const Term& st) const {
  if (st.kind() == NodeKind::app) {
    auto it = by_symbol_.find(st.symbol());
    if (it != by_symbol_.end()) return it->second;
  }
  return wildcard_;
}

const std::vector<PrologClause>* Program::prolog_clauses(const std::string& name, std::size_t arity) const {
  auto it = prolog_.find({name, arity});
  return it == prolog_.end() ? nullptr : &it->second;
}

Substitution Answer::substitution() const {
  Substitution s;
  for (const auto& [v, b] : bindings) s.bind(v, b);
  return s;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

struct Cell;
using Goals = std::shared_ptr<const Cell>;
struct Cell {
  Literal lit;
  Goals next;
};

Goals prepend(const std::vector<Literal>& lits, Goals rest) {
  for (auto it = lits.rbegin(); it != lits.rend(); ++it) rest = std::make_shared<const Cell>(Cell{*it, rest});
  return rest;
}

Goals apply_goals(const Substitution& th, const Goals& g) {
  if (th.empty() || !g) return g;
  std::vector<Literal> lits;
  for (const Cell* c = g.get(); c; c = c->next.get()) lits.push_back(apply_subst(th, c->lit));
  return prepend(lits, nullptr);
}

bool binding_ground(const Binding& b) {
  if (const auto* t = std::get_if<Term>(&b)) return t->ground();
  if (const auto* h = std::get_if<Hedge>(&b)) return is_ground(*h);
  return true;
}

bool subst_ground(const Substitution& s) {
  return std::all_of(s.bindings().begin(), s.bindings().end(), [](const auto& kv) { return binding_ground(kv.second); });
}

Binding apply_binding(const Substitution& th, const Binding& b) {
  if (const auto* t = std::get_if<Term>(&b)) return apply_subst_term(th, *t);
  if (const auto* h = std::get_if<Hedge>(&b)) return apply_subst(th, *h);
  return b;
}

// Copies clause variables with fresh serials. Anonymous variables stay
// distinct per occurrence.
class Renamer {
 public:
  explicit Renamer(std::uint64_t& counter) : counter_(counter), serial_(++counter) {}

  Variable var(const Variable& v) {
    Variable r = v;
    r.serial = v.anonymous ? ++counter_ : serial_;
    return r;
  }

  Term term(const Term& t) {
    if (t.ground()) return t;
    switch (t.kind()) {
      case NodeKind::ind_var:
      case NodeKind::seq_var:
      case NodeKind::prolog_var: return Term::variable(var(t.var()));
      case NodeKind::hole: return t;
      case NodeKind::app: return Term::app(t.symbol(), hedge(t.args()));
      case NodeKind::fun_app: return Term::fun_app(var(t.var()), hedge(t.args()));
      case NodeKind::ctx_app: return Term::ctx_app(var(t.var()), term(t.ctx_arg()));
    }
    return t;
  }

  Hedge hedge(const Hedge& h) {
    Hedge out;
    out.reserve(h.size());
    for (const auto& t : h) out.push_back(term(t));
    return out;
  }

  Literal literal(const Literal& l, std::size_t barrier, std::size_t depth) {
    Literal r = l;
    switch (l.kind) {
      case LiteralKind::positive:
      case LiteralKind::negative:
        r.strategy = term(l.strategy);
        r.lhs = hedge(l.lhs);
        r.rhs = hedge(l.rhs);
        break;
      case LiteralKind::call: r.goal = term(l.goal); break;
      case LiteralKind::cut: r = Literal::cut_to(barrier); break;
      default: break;
    }
    r.depth = depth;
    return r;
  }

 private:
  std::uint64_t& counter_;
  std::uint64_t serial_;
};

bool is_unifiable_var(const Term& t) { return t.kind() == NodeKind::ind_var || t.kind() == NodeKind::prolog_var; }

bool occurs(const Variable& v, const Term& t) {
  if (t.ground()) return false;
  std::vector<Variable> vs;
  collect_vars(t, vs);
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

// First-order unification with occurs check. The result is idempotent.
bool unify(const Term& a, const Term& b, Substitution& th) {
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    x = apply_subst_term(th, x);
    y = apply_subst_term(th, y);
    if (x == y) continue;
    if (!is_unifiable_var(x) && is_unifiable_var(y)) std::swap(x, y);
    if (is_unifiable_var(x)) {
      if (occurs(x.var(), y)) return false;
      Substitution one;
      one.bind(x.var(), y);
      Substitution next;
      for (const auto& [v, bnd] : th.bindings()) next.bind(v, apply_binding(one, bnd));
      next.bind(x.var(), y);
      th = std::move(next);
      continue;
    }
    if (x.kind() != NodeKind::app || y.kind() != NodeKind::app) return false;
    if (x.symbol() != y.symbol() || x.args().size() != y.args().size()) return false;
    for (std::size_t i = 0; i < x.args().size(); ++i) work.emplace_back(x.args()[i], y.args()[i]);
  }
  return true;
}

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool number_symbol(const std::string& s) {
  std::string_view d = s;
  if (d.starts_with('-')) d.remove_prefix(1);
  return !d.empty() && d.size() <= 18 && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; });
}

long long eval(const Term& t) {
  if (!t.ground()) throw EvalError("arguments are not sufficiently instantiated: " + print(t));
  if (t.kind() != NodeKind::app) throw EvalError("not a number: " + print(t));
  const std::string& f = t.symbol();
  const Hedge& a = t.args();
  if (a.empty()) {
    if (!number_symbol(f)) throw EvalError("not a number: " + print(t));
    return std::stoll(f);
  }
  long long r = 0;
  if (a.size() == 1 && (f == "-" || f == "+")) {
    const long long x = eval(a[0]);
    if (f == "+") return x;
    if (__builtin_sub_overflow(0LL, x, &r)) throw EvalError("integer overflow");
    return r;
  }
  if (a.size() != 2) throw EvalError("unknown arithmetic function " + f + "/" + std::to_string(a.size()));
  const long long x = eval(a[0]);
  const long long y = eval(a[1]);
  bool overflow = false;
  if (f == "+") {
    overflow = __builtin_add_overflow(x, y, &r);
  } else if (f == "-") {
    overflow = __builtin_sub_overflow(x, y, &r);
  } else if (f == "*") {
    overflow = __builtin_mul_overflow(x, y, &r);
  } else if (f == "//" || f == "mod") {
    if (y == 0) throw EvalError("division by zero");
    if (x == LLONG_MIN && y == -1) throw EvalError("integer overflow");
    if (f == "//") {
      r = x / y;
    } else {
      r = x % y;
      if (r != 0 && ((r < 0) != (y < 0))) r += y;
    }
  } else {
    throw EvalError("unknown arithmetic function " + f + "/2");
  }
  if (overflow) throw EvalError("integer overflow");
  return r;
}

Term number_term(long long v) { return Term::app(std::to_string(v)); }

}  // namespace

struct Solver::Impl {
  struct State {
    Goals goals;
    Substitution answer;
  };

  enum class CpKind { alternatives, clause, match, prolog };

  struct ChoicePoint {
    CpKind kind = CpKind::alternatives;
    std::uint64_t serial = 0;
    bool dead = false;
    std::size_t barrier = 0;
    Literal lit;
    Goals rest;
    Substitution answer;
    // alternatives
    std::vector<std::vector<Literal>> alts;
    std::size_t next_alt = 0;
    bool naf = false;
    // clause and prolog
    const std::vector<std::size_t>* candidates = nullptr;
    const std::vector<PrologClause>* pclauses = nullptr;
    std::size_t next_clause = 0;
    std::size_t clause_no = 0;
    std::uint64_t matcher_no = 0;
    RhoClause renamed;
    // clause and match
    std::optional<MatcherStream> stream;
    std::vector<Literal> continuation;
  };

  const Program& program;
  SolveOptions options;
  Query query;
  std::vector<Variable> query_vars;
  std::set<Variable> query_var_set;
  std::vector<ChoicePoint> cps;
  State state;
  bool started = false;
  bool finished = false;
  std::uint64_t counter = std::uint64_t{1} << 40;
  std::uint64_t cp_serial = 0;
  std::vector<std::string> errors;
  SolveStats stats;
  NativeContext native;

  Impl(const Program& p, Query q, SolveOptions o) : program(p), options(std::move(o)), query(std::move(q)) {
    for (const auto& l : query) {
      std::vector<Variable> vs;
      switch (l.kind) {
        case LiteralKind::positive:
        case LiteralKind::negative:
          collect_vars(l.strategy, vs);
          collect_vars(l.lhs, vs);
          collect_vars(l.rhs, vs);
          break;
        case LiteralKind::call: collect_vars(l.goal, vs); break;
        default: break;
      }
      for (const auto& v : vs)
        if (!v.anonymous && query_var_set.insert(v).second) query_vars.push_back(v);
    }
    std::vector<Literal> goals;
    for (const auto& l : query) {
      Literal g = l.kind == LiteralKind::cut ? Literal::cut_to(0) : l;
      g.depth = 0;
      goals.push_back(std::move(g));
    }
    state.goals = prepend(goals, nullptr);

    native.fresh = [this](VarKind k) { return fresh_var(k); };
    native.ops = &program.ops();
    native.interaction = options.interaction;
    native.native_rewrite = program.options().native_rewrite;
    native.apply_first = [this](const Term& st, const Hedge& in) { return apply_first(st, in); };
  }

  Variable fresh_var(VarKind k) {
    static const char* names[] = {"i_T", "s_T", "f_T", "c_T", "T"};
    return Variable{k, names[static_cast<int>(k)], ++counter, false};
  }

  std::optional<Hedge> apply_first(const Term& st, const Hedge& in) {
    const Variable out{VarKind::sequence, "s_Out", 0, false};
    SolveOptions sub;
    sub.out = options.out;
    sub.diagnostics = options.diagnostics;
    sub.depth_limit = options.depth_limit;
    sub.match = options.match;
    Solver solver(program, {Literal::rho(st, in, {Term::variable(out)})}, sub);
    auto a = solver.next();
    for (const auto& e : solver.errors()) errors.push_back(e);
    if (!a) return std::nullopt;
    for (const auto& [v, b] : a->bindings)
      if (v == out) return std::get<Hedge>(b);
    return Hedge{};
  }

  void report(const std::string& msg) {
    errors.push_back(msg);
    if (options.diagnostics) *options.diagnostics << "error: " << msg << '\n';
  }

  void trace(const Literal& l, const std::string& action) {
    if (!options.trace) return;
    *options.trace << l.depth << ' ' << print(l, program.ops()) << " [" << action << "]\n";
  }

  // Applies new bindings to the pending goals and the answer.
  void extend(State& s, const Substitution& th) {
    if (th.empty()) return;
    s.goals = apply_goals(th, s.goals);
    if (!subst_ground(s.answer)) {
      Substitution next;
      for (const auto& [v, b] : s.answer.bindings()) next.bind(v, apply_binding(th, b));
      s.answer = std::move(next);
    }
    for (const auto& [v, b] : th.bindings())
      if (query_var_set.contains(v)) s.answer.bind(v, b);
  }

  Answer make_answer() const {
    Answer a;
    for (const auto& v : query_vars)
      if (const Binding* b = state.answer.lookup(v)) a.bindings.emplace_back(v, *b);
    return a;
  }

  ChoicePoint& push(CpKind kind, const Literal& lit, Goals rest) {
    ChoicePoint cp;
    cp.kind = kind;
    cp.serial = ++cp_serial;
    cp.barrier = cps.size();
    cp.lit = lit;
    cp.rest = std::move(rest);
    cp.answer = state.answer;
    cps.push_back(std::move(cp));
    return cps.back();
  }

  // Resumes the topmost choice point. Returns false when it is exhausted.
  bool resume(ChoicePoint& cp) {
    switch (cp.kind) {
      case CpKind::alternatives: return resume_alternatives(cp);
      case CpKind::clause: return resume_clause(cp);
      case CpKind::match: return resume_match(cp);
      case CpKind::prolog: return resume_prolog(cp);
    }
    return false;
  }

  bool resume_alternatives(ChoicePoint& cp) {
    if (cp.next_alt >= cp.alts.size()) return false;
    const std::size_t i = cp.next_alt++;
    std::vector<Literal> lits;
    for (const auto& l : cp.alts[i]) {
      Literal r = l;
      if (l.kind == LiteralKind::commit) r = Literal::cut_to(cp.barrier);
      if (l.kind == LiteralKind::soft_commit) r = Literal::soft_cut(cp.serial);
      r.depth = cp.lit.depth + 1;
      lits.push_back(std::move(r));
    }
    if (cp.naf) {
      trace(cp.lit, i == 0 ? "naf enter" : "naf exit: succeeds");
    } else {
      trace(cp.lit, "alternative " + std::to_string(i + 1));
    }
    state.goals = prepend(lits, cp.rest);
    state.answer = cp.answer;
    return true;
  }

  bool resume_clause(ChoicePoint& cp) {
    while (true) {
      if (!cp.stream) {
        if (cp.next_clause >= cp.candidates->size()) return false;
        cp.clause_no = cp.next_clause + 1;
        const RhoClause& c = program.clauses()[(*cp.candidates)[cp.next_clause++]];
        Renamer r(counter);
        cp.renamed.head = r.literal(c.head, cp.barrier, cp.lit.depth + 1);
        cp.renamed.body.clear();
        for (const auto& l : c.body) cp.renamed.body.push_back(r.literal(l, cp.barrier, cp.lit.depth + 1));
        Hedge pattern{cp.renamed.head.strategy};
        pattern.insert(pattern.end(), cp.renamed.head.lhs.begin(), cp.renamed.head.lhs.end());
        Hedge subject{cp.lit.strategy};
        subject.insert(subject.end(), cp.lit.lhs.begin(), cp.lit.lhs.end());
        cp.stream.emplace(match_hedge(std::move(pattern), std::move(subject), options.match));
        cp.matcher_no = 0;
        ++stats.clause_tries;
      }
      auto th = cp.stream->next();
      if (!th) {
        cp.stream.reset();
        continue;
      }
      ++stats.matchers;
      ++cp.matcher_no;
      trace(cp.lit, "clause " + std::to_string(cp.clause_no) + ", matcher " + std::to_string(cp.matcher_no));
      std::vector<Literal> goals;
      for (const auto& l : cp.renamed.body) goals.push_back(apply_subst(*th, l));
      Literal out = Literal::match(cp.lit.rhs, apply_subst(*th, cp.renamed.head.rhs));
      out.depth = cp.lit.depth + 1;
      goals.push_back(std::move(out));
      state.goals = prepend(goals, cp.rest);
      state.answer = cp.answer;
      return true;
    }
  }

  bool resume_match(ChoicePoint& cp) {
    auto th = cp.stream->next();
    if (!th) return false;
    ++stats.matchers;
    ++cp.matcher_no;
    if (cp.lit.kind == LiteralKind::match) trace(cp.lit, "matcher " + std::to_string(cp.matcher_no));
    else trace(cp.lit, "native " + cp.lit.strategy.symbol() + ", matcher " + std::to_string(cp.matcher_no));
    state.goals = prepend(cp.continuation, cp.rest);
    state.answer = cp.answer;
    extend(state, *th);
    return true;
  }

  bool resume_prolog(ChoicePoint& cp) {
    while (cp.next_clause < cp.pclauses->size()) {
      const PrologClause& c = (*cp.pclauses)[cp.next_clause++];
      Renamer r(counter);
      Term head = r.term(c.head);
      Substitution th;
      ++stats.clause_tries;
      if (!unify(cp.lit.goal, head, th)) continue;
      trace(cp.lit, "clause " + std::to_string(cp.next_clause));
      std::vector<Literal> body;
      for (const auto& l : c.body) body.push_back(r.literal(l, cp.barrier, cp.lit.depth + 1));
      state.goals = prepend(body, cp.rest);
      state.answer = cp.answer;
      extend(state, th);
      return true;
    }
    return false;
  }

  bool backtrack() {
    while (!cps.empty()) {
      ChoicePoint& cp = cps.back();
      if (!cp.dead && resume(cp)) {
        // The last alternative needs no choice point.
        if (cp.kind == CpKind::alternatives && cp.next_alt >= cp.alts.size()) cps.pop_back();
        return true;
      }
      cps.pop_back();
    }
    return false;
  }

  bool ground_inputs(const Literal& l) {
    if (l.strategy.ground() && is_ground(l.lhs)) return true;
    report("non-ground input in " + print(l, program.ops()));
    return false;
  }

  // Executes the leftmost goal. Returns false on failure.
  bool step() {
    const Goals hold = state.goals;
    const Cell* cell = hold.get();
    const Literal& lit = cell->lit;
    Goals rest = cell->next;
    ++stats.steps;
    if (options.depth_limit && lit.depth > *options.depth_limit)
      throw DepthLimitExceeded("depth limit " + std::to_string(*options.depth_limit) + " exceeded");

    switch (lit.kind) {
      case LiteralKind::positive: return positive(lit, std::move(rest));
      case LiteralKind::negative: {
        if (!ground_inputs(lit)) return false;
        Literal pos = Literal::rho(lit.strategy, lit.lhs, lit.rhs);
        Literal fail = Literal::call(Term::app("fail"));
        ChoicePoint& cp = push(CpKind::alternatives, lit, std::move(rest));
        cp.alts = {{pos, Literal::commit(), fail}, {}};
        cp.naf = true;
        return backtrack();
      }
      case LiteralKind::call: return call(lit, std::move(rest));
      case LiteralKind::cut:
      case LiteralKind::cut_to: {
        const std::size_t barrier = lit.kind == LiteralKind::cut ? 0 : lit.barrier;
        trace(lit, "cut");
        if (cps.size() > barrier) cps.resize(barrier);
        state.goals = std::move(rest);
        return true;
      }
      case LiteralKind::soft_cut: {
        for (auto it = cps.rbegin(); it != cps.rend(); ++it)
          if (it->serial == lit.target) {
            it->dead = true;
            break;
          }
        state.goals = std::move(rest);
        return true;
      }
      case LiteralKind::match: {
        if (!is_ground(lit.lhs)) {
          report("non-ground output " + print(lit.lhs, program.ops()) + " matched against " +
                 print(lit.rhs, program.ops()));
          return false;
        }
        ChoicePoint& cp = push(CpKind::match, lit, std::move(rest));
        cp.stream.emplace(match_hedge(lit.rhs, lit.lhs, options.match));
        return backtrack();
      }
      case LiteralKind::commit:
      case LiteralKind::soft_commit: report("misplaced commit"); return false;
    }
    return false;
  }

  bool positive(const Literal& lit, Goals rest) {
    if (!ground_inputs(lit)) return false;
    if (handles(lit.strategy, native)) {
      Expansion e;
      try {
        e = expand(lit, native);
      } catch (const StrategyError& err) {
        report(err.what());
        return false;
      }
      if (e.match) {
        ChoicePoint& cp = push(CpKind::match, lit, std::move(rest));
        for (auto l : e.match->continuation) {
          l.depth = lit.depth + 1;
          cp.continuation.push_back(std::move(l));
        }
        cp.stream.emplace(match_hedge(std::move(e.match->pattern), std::move(e.match->subject), options.match));
        return backtrack();
      }
      const bool plain = e.alternatives.size() == 1 &&
                         std::none_of(e.alternatives[0].begin(), e.alternatives[0].end(), [](const Literal& l) {
                           return l.kind == LiteralKind::commit || l.kind == LiteralKind::soft_commit;
                         });
      if (plain) {
        trace(lit, "native " + lit.strategy.symbol());
        std::vector<Literal> goals = std::move(e.alternatives[0]);
        for (auto& l : goals) l.depth = lit.depth + 1;
        state.goals = prepend(goals, std::move(rest));
        return true;
      }
      if (e.alternatives.empty()) return false;
      ChoicePoint& cp = push(CpKind::alternatives, lit, std::move(rest));
      cp.alts = std::move(e.alternatives);
      return backtrack();
    }
    ChoicePoint& cp = push(CpKind::clause, lit, std::move(rest));
    cp.candidates = &program.candidates(lit.strategy);
    return backtrack();
  }

  bool call(const Literal& lit, Goals rest) {
    const Term& g = lit.goal;
    if (g.kind() != NodeKind::app) {
      report("callable term expected: " + print(g, program.ops()));
      return false;
    }
    const std::string& f = g.symbol();
    const Hedge& a = g.args();
    if (builtin_predicate(f, a.size())) {
      trace(lit, "builtin");
      try {
        if (f == "true") {
        } else if (f == "fail") {
          return false;
        } else if (f == "nl") {
          if (options.out) *options.out << '\n';
        } else if (f == "write") {
          if (options.out) *options.out << print(a[0], program.ops());
        } else if (f == "is") {
          Substitution th;
          if (!unify(a[0], number_term(eval(a[1])), th)) return false;
          state.goals = std::move(rest);
          extend(state, th);
          return true;
        } else {
          const long long x = eval(a[0]);
          const long long y = eval(a[1]);
          bool ok = f == "<"     ? x < y
                    : f == ">"   ? x > y
                    : f == "=<"  ? x <= y
                    : f == ">="  ? x >= y
                    : f == "=:=" ? x == y
                                 : x != y;
          if (!ok) return false;
        }
      } catch (const EvalError& err) {
        report(std::string(err.what()) + " in " + print(lit, program.ops()));
        return false;
      }
      state.goals = std::move(rest);
      return true;
    }
    const auto* clauses = program.prolog_clauses(f, a.size());
    if (!clauses) {
      report("unknown predicate " + f + "/" + std::to_string(a.size()));
      return false;
    }
    ChoicePoint& cp = push(CpKind::prolog, lit, std::move(rest));
    cp.pclauses = clauses;
    return backtrack();
  }

  std::optional<Answer> next() {
    if (finished) return std::nullopt;
    bool ok = true;
    if (started) {
      ok = backtrack();
    } else {
      started = true;
    }
    while (ok) {
      if (!state.goals) return make_answer();
      ok = step() || backtrack();
    }
    finished = true;
    return std::nullopt;
  }
};

Solver::Solver(const Program& program, Query query, SolveOptions options)
    : impl_(std::make_unique<Impl>(program, std::move(query), std::move(options))) {}

Solver::~Solver() = default;

std::optional<Answer> Solver::next() { return impl_->next(); }
const std::vector<std::string>& Solver::errors() const { return impl_->errors; }
const SolveStats& Solver::stats() const { return impl_->stats; }

std::vector<Answer> solve_all(const Program& program, const Query& query, SolveOptions options, std::size_t limit) {
  Solver s(program, query, std::move(options));
  std::vector<Answer> out;
  while (out.size() < limit) {
    auto a = s.next();
    if (!a) break;
    out.push_back(std::move(*a));
  }
  return out;
}

}  // namespace rholog
