// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gen.hpp"
#include "oracle.hpp"
#include "rholog/engine.hpp"
#include "rholog/matcher.hpp"
#include "rholog/syntax.hpp"
#include "rholog/wellmoded.hpp"
#include "support.hpp"

using namespace rholog;
using support::values;

namespace {

struct Check {
  std::vector<std::string> failures;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  template <typename T>
  void equal(const T& got, const T& want, const std::string& what) {
    expect(got == want, what);
  }
};

std::string join(const std::vector<std::string>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " | " : "") + v[i];
  return s + "]";
}

void seq(Check& c, const std::vector<std::string>& got, const std::vector<std::string>& want, const std::string& what) {
  c.expect(got == want, what + ": got " + join(got) + ", want " + join(want));
}

std::set<Substitution> all_matchers(const Hedge& p, const Hedge& s) {
  std::set<Substitution> out;
  for (auto m : match_hedge(p, s)) out.insert(m);
  return out;
}

void matching(Check& c) {
  auto got = all_matchers(parse_hedge("c_X(f(s_Y))"), parse_hedge("g(f(a, b), h(f(a), f))"));
  std::set<Substitution> want = {
      parse_substitution("{c_X = g(hole, h(f(a), f)), s_Y = (a, b)}"),
      parse_substitution("{c_X = g(f(a, b), h(hole, f)), s_Y = a}"),
      parse_substitution("{c_X = g(f(a, b), h(f(a), hole)), s_Y = eps}"),
  };
  c.equal(got, want, "context/sequence matchers");
  auto got2 = all_matchers(parse_hedge("(s_X, f_F(i_X, a, s_), s_Y)"), parse_hedge("(a, f(b), g(a, b), h(b, a))"));
  std::set<Substitution> want2 = {parse_substitution("{s_X = (a, f(b), g(a, b)), f_F = h, i_X = b, s_Y = eps}")};
  c.equal(got2, want2, "function/sequence matcher");
}

void elementary(Check& c) {
  Program p = support::load({"examples/elementary.rholog"});
  const std::string in = " :: (a, b, a, f(a)) ==> s_X";
  seq(c, values(p, "str1" + in, "s_X"), {"(f(a), b, a, f(a))", "(a, b, f(a), f(a))"}, "str1");
  seq(c, support::answers(p, "str1 :: (a, b, a, f(a)) ==> (s_X, f(a), s_Y)"),
      {"s_X = eps; s_Y = (b, a, f(a))", "s_X = (f(a), b, a); s_Y = eps", "s_X = (a, b); s_Y = f(a)",
       "s_X = (a, b, f(a)); s_Y = eps"},
      "str1 with output pattern");
  seq(c, support::answers(p, "str1 :: (a, b, a, f(a)) =\\=> s_"), {}, "negation fails");
  seq(c, support::answers(p, "str1 :: (a, b, a, f(a)) =\\=> (b, s_)"), {"true"}, "negation succeeds");
  seq(c, values(p, "compose(str1, str2)" + in, "s_X"), {"(f(a), b, a)", "(a, b, f(a))"}, "compose");
  seq(c, values(p, "choice(str1, str2)" + in, "s_X"), {"(f(a), b, a, f(a))", "(a, b, f(a), f(a))", "(a, b, f(a))"},
      "choice");
  seq(c, values(p, "nf(compose(str1, str2))" + in, "s_X"), {"(f(a), b)", "(f(a), b)"}, "nf");
  seq(c, values(p, "first_one(str1, str2)" + in, "s_X"), {"(f(a), b, a, f(a))"}, "first_one");
  seq(c, values(p, "first_all(str1, str2)" + in, "s_X"), {"(f(a), b, a, f(a))", "(a, b, f(a), f(a))"}, "first_all");
}

void flattening(Check& c) {
  Program p = support::load({"examples/flatten.rholog"});
  seq(c, values(p, "flatten_one :: f(a, f(b, f(c)), f(d)) ==> i_X", "i_X", 1), {"f(a, b, f(c), f(d))"}, "flatten_one");
  seq(c, values(p, "flatten :: f(a, f(b, f(c)), f(d)) ==> i_X", "i_X", 1), {"f(a, b, c, d)"}, "flatten");
  seq(c, values(p, "map1(flatten) :: (a, f(f(a)), g(a, g(b))) ==> s_X", "s_X", 1), {"(a, f(a), g(a, b))"},
      "map1(flatten)");
}

void replacement(Check& c) {
  Program p = support::load({"examples/replace.rholog"});
  seq(c, values(p, "replace_all :: (f(x, g(x, y)), x -> z, y -> a) ==> i_X", "i_X", 1), {"f(z, g(z, a))"},
      "replace_all first answer");
}

void prover(Check& c) {
  Program p = support::load({"examples/prover.rholog"});
  seq(c, values(p, "prove :: sequent(ant(eps), cons(-(p) v p)) ==> i_X", "i_X", 1), {"true"}, "provable sequent");
  seq(c, values(p, "prove :: sequent(ant(eps), cons(p)) ==> i_X", "i_X", 1), {"false"}, "unprovable sequent");
}

void rewriting(Check& c) {
  Program p = support::load({"examples/strat.rholog", "prelude/rewrite.rholog"});
  const std::string in = "(strat) :: h(f(f(a)), f(a)) ==> i_X";
  seq(c, values(p, "rewrite" + in, "i_X"), {"h(g(f(a)), f(a))", "h(a, f(a))", "h(f(g(a)), f(a))", "h(f(f(a)), g(a))"},
      "rewrite");
  seq(c, values(p, "rewrite" + in + ", !", "i_X"), {"h(g(f(a)), f(a))"}, "rewrite with cut");
  seq(c, values(p, "rewrite_left_out" + in, "i_X"), {"h(g(f(a)), f(a))", "h(a, f(a))"}, "rewrite_left_out");
  seq(c, values(p, "rewrite_out" + in, "i_X"), {"h(g(f(a)), f(a))", "h(a, f(a))", "h(f(f(a)), g(a))"}, "rewrite_out");
  seq(c, values(p, "rewrite_left_in" + in, "i_X"), {"h(f(g(a)), f(a))"}, "rewrite_left_in");
  seq(c, values(p, "rewrite_left_in_one" + in, "i_X"), {"h(f(g(a)), f(a))"}, "rewrite_left_in_one");
  seq(c, values(p, "rewrite_in" + in, "i_X"), {"h(f(g(a)), f(a))", "h(f(f(a)), g(a))"}, "rewrite_in");
}

std::set<std::string> offending(const std::vector<Violation>& vs) {
  std::set<std::string> out;
  for (const auto& v : vs)
    for (const auto& var : v.variables) out.insert(print_var(var));
  return out;
}

void modes(Check& c) {
  const ModeTable m = ModeTable::builtin();
  auto check = [&m](const std::string& q) { return check_query(parse_query(q), m); };
  auto bad1 = check("str1 :: a ==> i_X, str2 :: i_Y ==> i_Z");
  c.expect(bad1.size() == 1 && bad1[0].kind == ViolationKind::unbound_input, "unbound input rejected");
  c.equal(offending(bad1), std::set<std::string>{"i_Y"}, "offending variable i_Y");
  c.expect(check("str1 :: a ==> i_X, str2 :: i_X ==> i_Z").empty(), "chained query accepted");
  auto bad2 = check("str1 :: a ==> i_X, str2 :: i_X =\\=> i_Z");
  c.expect(bad2.size() == 1 && bad2[0].kind == ViolationKind::unbound_negative_output, "negative output rejected");
  c.equal(offending(bad2), std::set<std::string>{"i_Z"}, "offending variable i_Z");
  c.expect(check("str1 :: a ==> (i_X, i_Z), str2 :: i_X =\\=> i_Z").empty(), "bound negative output accepted");
  c.expect(check("str1 :: a ==> i_X, str2 :: i_X =\\=> i_").empty(), "anonymous negative output accepted");
}

std::string format_bindings(const Answer& a, const Program& p) {
  std::string s;
  for (const auto& [v, b] : a.bindings) s += print_var(v) + "=" + print(b, p.ops()) + ";";
  return s;
}

std::vector<std::string> printed(const Program& p, const std::string& q) {
  std::vector<std::string> out;
  for (const auto& a : solve_all(p, parse_query(q, p.ops()))) out.push_back(format_bindings(a, p));
  return out;
}

bool is_prefix(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

void properties(Check& c) {
  gen::Rng rng(20240611);
  std::ostringstream note;

  // Matcher soundness and completeness on one corpus.
  std::size_t emitted = 0;
  for (int i = 0; i < 10000; ++i) {
    auto mc = gen::match_case(rng);
    std::set<Substitution> got;
    bool duplicate = false;
    for (auto m : match_hedge(mc.pattern, mc.subject)) {
      if (apply_subst(m, mc.pattern) != mc.subject) {
        c.expect(false, "unsound matcher for " + print(mc.pattern) + " against " + print(mc.subject));
        break;
      }
      duplicate = duplicate || !got.insert(m).second;
    }
    c.expect(!duplicate, "duplicate matcher for " + print(mc.pattern));
    emitted += got.size();
    if (got != oracle::brute_force(mc.pattern, mc.subject))
      c.expect(false, "incomplete matching for " + print(mc.pattern) + " against " + print(mc.subject));
    if (c.failures.size() > 5) return;
  }
  note << "matching 10000 cases/" << emitted << " matchers";

  // Printer/parser round trip.
  for (int i = 0; i < 10000; ++i) {
    Term t = gen::syntax_term(rng, 4);
    const std::string text = print(t);
    try {
      if (parse_term(text) != t) c.expect(false, "round trip changed " + text);
    } catch (const SyntaxError& e) {
      c.expect(false, "round trip failed to parse " + text + ": " + e.message);
    }
    if (c.failures.size() > 5) return;
  }
  note << ", round trip 10000";

  // Native rewrite against the clause definition.
  const SourceProgram clause_src = parse_program(support::read_file(support::corpus("prelude/rewrite_clause.rholog")));
  std::size_t rewrites = 0;
  for (int i = 0; i < 1000; ++i) {
    SourceProgram rules;
    for (std::size_t n = 1 + gen::pick(rng, 3); n > 0; --n) rules.items.push_back(gen::rule(rng, "r"));
    Program native;
    native.consult(rules);
    Program clause({.strict = true, .native_rewrite = false});
    clause.consult(rules);
    clause.consult(clause_src);
    std::size_t budget = 12;
    const Term subject = gen::ground_term(rng, budget, 3);
    const std::string q = "rewrite(r) :: " + print(subject) + " ==> i_X";
    auto a = printed(native, q);
    auto b = printed(clause, q);
    rewrites += a.size();
    c.expect(a == b, "rewrite mismatch on " + q + ": " + join(a) + " vs " + join(b));
    if (c.failures.size() > 5) return;
  }
  note << ", rewrite 1000/" << rewrites << " answers";

  // first_one is a prefix of first_all, which is a prefix of choice.
  for (int i = 0; i < 1000; ++i) {
    SourceProgram rules;
    for (const char* name : {"r1", "r2", "r3"})
      for (std::size_t n = gen::pick(rng, 3); n > 0; --n) rules.items.push_back(gen::rule(rng, name, 2));
    Program p;
    p.consult(rules);
    std::string sts;
    for (std::size_t n = 1 + gen::pick(rng, 3); n > 0; --n)
      sts += std::string(sts.empty() ? "" : ", ") + "r" + std::to_string(1 + gen::pick(rng, 3));
    std::size_t budget = 8;
    const std::string in = print(gen::ground_term(rng, budget, 2));
    auto one = printed(p, "first_one(" + sts + ") :: " + in + " ==> s_X");
    auto all = printed(p, "first_all(" + sts + ") :: " + in + " ==> s_X");
    auto choice = printed(p, "choice(" + sts + ") :: " + in + " ==> s_X");
    c.expect(is_prefix(one, all) && one.size() == std::min<std::size_t>(1, all.size()),
             "first_one/first_all on " + sts + " " + in);
    c.expect(is_prefix(all, choice) && all.empty() == choice.empty(), "first_all/choice on " + sts + " " + in);
    if (c.failures.size() > 5) return;
  }
  note << ", prefix laws 1000";
  c.note = note.str();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "matching with context, sequence and function variables", matching},
      {2, "elementary strategies and combinators", elementary},
      {3, "flattening with function and sequence variables", flattening},
      {4, "replacement rules", replacement},
      {5, "propositional sequent prover", prover},
      {6, "rewriting strategies", rewriting},
      {7, "well-modedness of queries", modes},
      {8, "property suites", properties},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.failures.empty();
    failed += !ok;
    std::printf("[%s] %d %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", cr.id, cr.name, secs, c.note.empty() ? "" : ": ",
                c.note.c_str());
    for (const auto& f : c.failures) std::printf("       %s\n", f.c_str());
  }
  return failed;
}
