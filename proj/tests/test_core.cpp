#include "doctest.h"
#include "rholog/core.hpp"
#include "rholog/syntax.hpp"

using namespace rholog;

namespace {
Term T(const char* s) { return parse_term(s); }
Hedge H(const char* s) { return parse_hedge(s); }
}  // namespace

TEST_CASE("apply_context fills the hole") {
  CHECK(apply_context(T("f(hole, b)"), T("g(a)")) == T("f(g(a), b)"));
  CHECK(apply_context(Term::hole(), T("g(a)")) == T("g(a)"));
  CHECK(apply_context(T("g(f(a, b), h(hole, f))"), T("f(a)")) == T("g(f(a, b), h(f(a), f))"));
}

TEST_CASE("apply_context rejects malformed contexts") {
  CHECK_THROWS_AS(apply_context(T("f(a)"), T("b")), MalformedContext);
  CHECK_THROWS_AS(apply_context(T("f(hole, hole)"), T("b")), MalformedContext);
}

TEST_CASE("apply_context result has the term at the former hole") {
  const Term ctx = T("h(f(a), g(b, hole, c))");
  const Term t = T("k(a)");
  const Term r = apply_context(ctx, t);
  CHECK(r.holes() == 0);
  const auto ps = hole_positions(ctx);
  bool found = false;
  for (const auto& p : ps) found = found || subterm_at(ctx, p).kind() == NodeKind::hole;
  CHECK(found);
  CHECK(subterm_at(r, {2, 2}) == t);
}

TEST_CASE("apply_subst splices and instantiates simultaneously") {
  const Substitution s = parse_substitution(
      "{c_Ctx = f(hole), i_Term = g(s_X), f_Funct = g, s_Terms1 = eps, s_Terms2 = (b, c)}");
  CHECK(apply_subst(s, H("(c_Ctx(i_Term), f_Funct(s_Terms1, a, s_Terms2))")) == H("(f(g(s_X)), g(a, b, c))"));
}

TEST_CASE("apply_subst with the empty substitution is the identity") {
  const Hedge h = H("(c_X(i_Y), f_F(s_Z, a), s_W)");
  CHECK(apply_subst(Substitution{}, h) == h);
}

TEST_CASE("empty sequence binding splices to nothing") {
  CHECK(apply_subst(parse_substitution("{s_X = eps}"), H("(a, s_X, b)")) == H("(a, b)"));
}

TEST_CASE("apply_subst is not iterated") {
  // i_X maps to a term containing i_Y; i_Y's own binding is not applied to it.
  const Substitution s = parse_substitution("{i_X = f(i_Y), i_Y = a}");
  CHECK(apply_subst(s, H("(i_X, i_Y)")) == H("(f(i_Y), a)"));
}

TEST_CASE("apply_subst keeps hole-free hedges hole-free") {
  const Substitution s = parse_substitution("{c_C = g(a, hole), i_X = b}");
  const Hedge out = apply_subst(s, H("(c_C(i_X), c_C(c_C(a)))"));
  CHECK(hole_count(out) == 0);
  CHECK(out == H("(g(a, b), g(a, g(a, a)))"));
}

TEST_CASE("hedge_concat is flat with eps as unit") {
  CHECK(hedge_concat({}, H("(a, b)")) == H("(a, b)"));
  CHECK(hedge_concat(H("a"), H("(b, c)")) == H("(a, b, c)"));
  CHECK(hedge_concat({}, {}).empty());
  CHECK(hedge_concat(hedge_concat(H("(a, b)"), H("c")), {}) == hedge_concat(H("a"), H("(b, c)")));
}

TEST_CASE("hole_positions in pre-order and post-order") {
  CHECK(hole_positions(T("a")) == std::vector<Position>{{}});
  CHECK(hole_positions(T("h(f(f(a)), f(a))")) ==
        std::vector<Position>{{}, {1}, {1, 1}, {1, 1, 1}, {2}, {2, 1}});
  CHECK(hole_positions(T("f(b, c)")) == std::vector<Position>{{}, {1}, {2}});
  CHECK(hole_positions(T("h(f(f(a)), f(a))"), Traversal::leftmost_innermost) ==
        std::vector<Position>{{1, 1, 1}, {1, 1}, {1}, {2, 1}, {2}, {}});
}

TEST_CASE("replace_at and subterm_at agree") {
  const Term t = T("h(f(f(a)), f(a))");
  CHECK(subterm_at(t, {1, 1}) == T("f(a)"));
  CHECK(replace_at(t, {1, 1}, T("g(a)")) == T("h(f(g(a)), f(a))"));
  CHECK(replace_at(t, {}, T("b")) == T("b"));
}

TEST_CASE("terms compare structurally") {
  CHECK(T("f(a, g(b))") == T("f(a, g(b))"));
  CHECK(T("f(a)") != T("f(a, a)"));
  CHECK(T("f(a)") != T("g(a)"));
  CHECK(T("f") == Term::app("f", {}));
  CHECK(T("f(a)").size() == 2);
  CHECK(T("f(i_X)").ground() == false);
}

TEST_CASE("collect_vars lists variables once in first-occurrence order") {
  std::vector<Variable> vs;
  collect_vars(H("(f_F(i_X, s_Y), c_C(i_X), s_Y)"), vs);
  REQUIRE(vs.size() == 4);
  CHECK(vs[0].name == "f_F");
  CHECK(vs[1].name == "i_X");
  CHECK(vs[2].name == "s_Y");
  CHECK(vs[3].name == "c_C");
}
