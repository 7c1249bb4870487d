#include "rholog/matcher.hpp"

#include <set>
#include <span>

namespace rholog {

namespace {

using Elems = std::span<const Term>;

MatcherStream match_seq(Elems ps, Elems ss, Substitution sigma, const MatchOptions* opts);

// Minimum number of subject elements the pattern elements consume.
std::size_t min_length(Elems ps) {
  std::size_t n = 0;
  for (const auto& p : ps)
    if (p.kind() != NodeKind::seq_var) ++n;
  return n;
}

MatcherStream match_one(const Term* p, const Term* t, Substitution sigma, const MatchOptions* opts) {
  if (p->ground()) {
    if (*p == *t) co_yield std::move(sigma);
    co_return;
  }
  switch (p->kind()) {
    case NodeKind::ind_var:
    case NodeKind::prolog_var: {
      if (p->var().anonymous) {
        co_yield std::move(sigma);
        co_return;
      }
      if (const Binding* b = sigma.lookup(p->var())) {
        if (std::get<Term>(*b) == *t) co_yield std::move(sigma);
        co_return;
      }
      sigma.bind(p->var(), *t);
      co_yield std::move(sigma);
      co_return;
    }
    case NodeKind::app: {
      if (t->kind() != NodeKind::app || t->symbol() != p->symbol()) co_return;
      for (auto& s : match_seq(p->args(), t->args(), std::move(sigma), opts)) co_yield std::move(s);
      co_return;
    }
    case NodeKind::fun_app: {
      if (t->kind() != NodeKind::app) co_return;
      if (!p->var().anonymous) {
        if (const Binding* b = sigma.lookup(p->var())) {
          if (std::get<Symbol>(*b).name != t->symbol()) co_return;
        } else {
          sigma.bind(p->var(), Symbol{t->symbol()});
        }
      }
      for (auto& s : match_seq(p->args(), t->args(), std::move(sigma), opts)) co_yield std::move(s);
      co_return;
    }
    case NodeKind::ctx_app: {
      if (!p->var().anonymous) {
        if (const Binding* b = sigma.lookup(p->var())) {
          const Term filled = apply_context(std::get<Term>(*b), p->ctx_arg());
          for (auto& s : match_one(&filled, t, std::move(sigma), opts)) co_yield std::move(s);
          co_return;
        }
      }
      for (const auto& pos : hole_positions(*t, opts->traversal)) {
        const Term& sub = subterm_at(*t, pos);
        Substitution next = sigma;
        if (!p->var().anonymous) next.bind(p->var(), replace_at(*t, pos, Term::hole()));
        for (auto& s : match_one(&p->ctx_arg(), &sub, std::move(next), opts)) co_yield std::move(s);
      }
      co_return;
    }
    case NodeKind::seq_var:
    case NodeKind::hole: co_return;
  }
}

MatcherStream match_seq(Elems ps, Elems ss, Substitution sigma, const MatchOptions* opts) {
  if (ps.empty()) {
    if (ss.empty()) co_yield std::move(sigma);
    co_return;
  }
  const Term& p = ps.front();
  if (p.kind() == NodeKind::seq_var) {
    const Elems rest = ps.subspan(1);
    if (!p.var().anonymous) {
      if (const Binding* b = sigma.lookup(p.var())) {
        const auto& h = std::get<Hedge>(*b);
        if (h.size() > ss.size() || !std::equal(h.begin(), h.end(), ss.begin())) co_return;
        for (auto& s : match_seq(rest, ss.subspan(h.size()), std::move(sigma), opts))
          co_yield std::move(s);
        co_return;
      }
    }
    const std::size_t need = min_length(rest);
    if (need > ss.size()) co_return;
    for (std::size_t k = 0; k <= ss.size() - need; ++k) {
      Substitution next = sigma;
      if (!p.var().anonymous) next.bind(p.var(), Hedge(ss.begin(), ss.begin() + k));
      for (auto& s : match_seq(rest, ss.subspan(k), std::move(next), opts)) co_yield std::move(s);
    }
    co_return;
  }
  if (ss.empty()) co_return;
  for (auto& s1 : match_one(&p, &ss.front(), std::move(sigma), opts))
    for (auto& s2 : match_seq(ps.subspan(1), ss.subspan(1), std::move(s1), opts))
      co_yield std::move(s2);
}

}  // namespace

MatcherStream match_hedge(Hedge pattern, Hedge subject, MatchOptions options) {
  std::set<Substitution> seen;
  for (auto& s : match_seq(pattern, subject, Substitution{}, &options)) {
    if (seen.insert(s).second) co_yield std::move(s);
  }
}

MatcherStream match_term(Term pattern, Term subject, MatchOptions options) {
  return match_hedge(Hedge{std::move(pattern)}, Hedge{std::move(subject)}, options);
}

}  // namespace rholog
