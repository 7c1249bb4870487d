#include "rholog/wellmoded.hpp"

#include <algorithm>
#include <set>

namespace rholog {

ModeTable ModeTable::builtin() {
  ModeTable t;
  t.declare("is", {false, true});
  for (const char* cmp : {"<", ">", "=<", ">=", "=:=", "=\\="}) t.declare(cmp, {true, true});
  t.declare("write", {true});
  t.declare("nl", {});
  t.declare("true", {});
  t.declare("fail", {});
  return t;
}

void ModeTable::declare(const std::string& name, std::vector<bool> inputs) {
  const auto arity = inputs.size();
  modes_[{name, arity}] = std::move(inputs);
}

const std::vector<bool>* ModeTable::lookup(const std::string& name, std::size_t arity) const {
  auto it = modes_.find({name, arity});
  return it == modes_.end() ? nullptr : &it->second;
}

std::string_view violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::unbound_input: return "unbound-input";
    case ViolationKind::unbound_negative_output: return "unbound-negative-output";
    case ViolationKind::nonground_strategy: return "nonground-strategy";
    case ViolationKind::strategy_var_escape: return "strategy-var-escape";
    case ViolationKind::unbound_output: return "unbound-output";
    case ViolationKind::unknown_predicate: return "unknown-predicate";
  }
  return "?";
}

std::string describe(const Violation& v) {
  std::string out = v.location;
  out += v.literal == 0 ? ", head" : ", literal " + std::to_string(v.literal);
  out += ": ";
  out += violation_name(v.kind);
  if (!v.predicate.empty()) out += " " + v.predicate;
  if (!v.variables.empty()) {
    out += ":";
    for (const auto& var : v.variables) out += " " + print_var(var);
  }
  return out;
}

namespace {

using VarSet = std::set<Variable>;

struct Moded {
  VarSet in;
  VarSet out;
  bool known = true;
};

VarSet vars_of(const Term& t) {
  std::vector<Variable> vs;
  collect_vars(t, vs);
  return {vs.begin(), vs.end()};
}

VarSet vars_of(const Hedge& h) {
  std::vector<Variable> vs;
  collect_vars(h, vs);
  return {vs.begin(), vs.end()};
}

void merge(VarSet& into, const VarSet& from) { into.insert(from.begin(), from.end()); }

Moded moded(const Literal& l, const ModeTable& modes) {
  Moded m;
  switch (l.kind) {
    case LiteralKind::positive:
    case LiteralKind::negative:
      m.in = vars_of(l.strategy);
      merge(m.in, vars_of(l.lhs));
      m.out = vars_of(l.rhs);
      break;
    case LiteralKind::call: {
      const auto* mode = modes.lookup(l.goal.symbol(), l.goal.args().size());
      if (!mode) {
        m.known = false;
        break;
      }
      for (std::size_t i = 0; i < mode->size(); ++i)
        merge((*mode)[i] ? m.in : m.out, vars_of(l.goal.args()[i]));
      break;
    }
    default: break;
  }
  return m;
}

std::vector<Variable> missing(const VarSet& need, const VarSet& have, bool allow_anonymous) {
  std::vector<Variable> out;
  for (const auto& v : need) {
    if (v.anonymous && allow_anonymous) continue;
    if (v.anonymous || !have.contains(v)) out.push_back(v);
  }
  return out;
}

std::string predicate_name(const Term& goal) {
  return goal.symbol() + "/" + std::to_string(goal.args().size());
}

std::string line_of(const SourcePos& p) { return "line " + std::to_string(p.line); }

// Shared body walk. `bound` starts as the head inputs (empty for queries).
void check_body(const std::vector<Literal>& body, const ModeTable& modes, const std::string& location,
                VarSet& bound, const VarSet* head_strategy_vars, std::vector<Violation>& out) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    const Literal& l = body[i];
    const std::size_t index = i + 1;
    Moded m = moded(l, modes);
    if (!m.known) {
      out.push_back({location, index, ViolationKind::unknown_predicate, {}, predicate_name(l.goal)});
      continue;
    }
    if (auto miss = missing(m.in, bound, false); !miss.empty())
      out.push_back({location, index, ViolationKind::unbound_input, std::move(miss), {}});
    if (l.kind == LiteralKind::negative) {
      if (auto miss = missing(m.out, bound, true); !miss.empty())
        out.push_back({location, index, ViolationKind::unbound_negative_output, std::move(miss), {}});
    }
    if (l.is_rho()) {
      if (head_strategy_vars) {
        std::vector<Variable> escaped;
        for (const auto& v : vars_of(l.strategy))
          if (!head_strategy_vars->contains(v)) escaped.push_back(v);
        if (!escaped.empty())
          out.push_back({location, index, ViolationKind::strategy_var_escape, std::move(escaped), {}});
      } else if (!l.strategy.ground()) {
        auto vs = vars_of(l.strategy);
        out.push_back({location, index, ViolationKind::nonground_strategy, {vs.begin(), vs.end()}, {}});
      }
    }
    for (const auto& v : m.out)
      if (!v.anonymous) bound.insert(v);
  }
}

VarSet without_anonymous(VarSet s) {
  std::erase_if(s, [](const Variable& v) { return v.anonymous; });
  return s;
}

}  // namespace

std::vector<Violation> check_query(const Query& q, const ModeTable& modes) {
  std::vector<Violation> out;
  VarSet bound;
  check_body(q, modes, "query", bound, nullptr, out);
  return out;
}

std::vector<Violation> check_clause(const RhoClause& c, const ModeTable& modes) {
  std::vector<Violation> out;
  const std::string location = line_of(c.pos);
  Moded head = moded(c.head, modes);
  VarSet bound = without_anonymous(head.in);
  const VarSet head_strategy = vars_of(c.head.strategy);
  check_body(c.body, modes, location, bound, &head_strategy, out);
  if (auto miss = missing(head.out, bound, false); !miss.empty())
    out.push_back({location, 0, ViolationKind::unbound_output, std::move(miss), {}});
  return out;
}

std::vector<Violation> check_prolog_clause(const PrologClause& c, const ModeTable& modes) {
  std::vector<Violation> out;
  const std::string location = line_of(c.pos);
  const auto* mode = modes.lookup(c.head.symbol(), c.head.args().size());
  if (!mode) {
    out.push_back({location, 0, ViolationKind::unknown_predicate, {}, predicate_name(c.head)});
    return out;
  }
  VarSet in, outs;
  for (std::size_t i = 0; i < mode->size(); ++i) merge((*mode)[i] ? in : outs, vars_of(c.head.args()[i]));
  VarSet bound = without_anonymous(in);
  check_body(c.body, modes, location, bound, nullptr, out);
  // Strategy checks do not apply to Prolog bodies (they hold no ρ-literals).
  std::erase_if(out, [](const Violation& v) { return v.kind == ViolationKind::nonground_strategy; });
  if (auto miss = missing(outs, bound, false); !miss.empty())
    out.push_back({location, 0, ViolationKind::unbound_output, std::move(miss), {}});
  return out;
}

ModeTable mode_table(const std::vector<const SourceProgram*>& sources) {
  ModeTable modes = ModeTable::builtin();
  for (const auto* src : sources)
    for (const auto& item : src->items)
      if (const auto* md = std::get_if<ModeDirective>(&item)) modes.declare(md->name, md->inputs);
  return modes;
}

std::vector<Violation> program_check(const std::vector<const SourceProgram*>& sources) {
  const ModeTable modes = mode_table(sources);
  std::vector<Violation> out;
  std::set<std::pair<std::string, std::size_t>> called;
  auto note_calls = [&called](const RhoClause& c) {
    for (const auto& l : c.body)
      if (l.kind == LiteralKind::call) called.insert({l.goal.symbol(), l.goal.args().size()});
  };
  for (const auto* src : sources) {
    for (const auto& item : src->items) {
      const RhoClause* rc = std::get_if<RhoClause>(&item);
      RhoClause expanded;
      if (const auto* ab = std::get_if<Abbreviation>(&item)) {
        expanded = expand_abbreviation(*ab);
        rc = &expanded;
      }
      if (!rc) continue;
      auto vs = check_clause(*rc, modes);
      out.insert(out.end(), vs.begin(), vs.end());
      note_calls(*rc);
    }
  }
  for (const auto* src : sources) {
    for (const auto& item : src->items) {
      const auto* pc = std::get_if<PrologClause>(&item);
      if (!pc || !called.contains({pc->head.symbol(), pc->head.args().size()})) continue;
      auto vs = check_prolog_clause(*pc, modes);
      out.insert(out.end(), vs.begin(), vs.end());
    }
  }
  return out;
}

std::vector<Violation> program_check(const SourceProgram& source) { return program_check({&source}); }

}  // namespace rholog
