#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "rholog/engine.hpp"
#include "rholog/strategies.hpp"
#include "support.hpp"

using namespace rholog;
using support::values;
using V = std::vector<std::string>;

namespace {

Program base() {
  return support::load({"examples/elementary.rholog", "examples/flatten.rholog", "examples/strat.rholog"});
}

V run(const Program& p, const std::string& st, const std::string& in) {
  return values(p, st + " :: " + in + " ==> s_Out", "s_Out");
}

}  // namespace

TEST_CASE("native names") {
  for (const char* n : {"id", "compose", "choice", "first_one", "first_all", "nf", "iterate", "map1", "map", "rewrite",
                        "interactive"})
    CHECK(is_native(n));
  CHECK_FALSE(is_native("str1"));
}

TEST_CASE("id") {
  const Program p = base();
  CHECK(run(p, "id", "(a, b)") == V{"(a, b)"});
  CHECK(run(p, "id", "eps") == V{"eps"});
  CHECK(values(p, "id :: (a, b) ==> (i_X, s_Y)", "i_X") == V{"a"});
}

TEST_CASE("compose") {
  const Program p = base();
  CHECK(run(p, "compose(str2, str2)", "(a, a, a)") == V{"a", "a", "a"});
  CHECK(run(p, "compose(str1, str2)", "b").empty());
}

TEST_CASE("choice collects every alternative in order") {
  const Program p = base();
  CHECK(run(p, "choice(str2, str1)", "(a, a)") == V{"a", "(f(a), a)", "(a, f(a))"});
  CHECK(run(p, "choice(str2, str2)", "(b, b)") == V{"b", "b"});
}

TEST_CASE("first_one and first_all stop at the first applicable strategy") {
  const Program p = base();
  CHECK(run(p, "first_all(str2, str1)", "(a, a)") == V{"a"});
  CHECK(run(p, "first_all(str2, str1)", "(a, b)") == V{"(f(a), b)"});
  CHECK(run(p, "first_one(str1, str2)", "(a, a)") == V{"(f(a), a)"});
  CHECK(run(p, "first_one(str2, str2)", "b").empty());
}

TEST_CASE("first_one and first_all with a fixed output") {
  const Program p = base();
  CHECK(support::answers(p, "first_all(str1) :: (a, a) ==> (a, f(a))") == V{"true"});
  CHECK(support::answers(p, "first_one(str1) :: (a, a) ==> (a, f(a))").empty());
}

TEST_CASE("nf") {
  const Program p = base();
  CHECK(run(p, "nf(str2)", "(a, b, a, b)") == V{"(a, b)", "(a, b)"});
  CHECK(run(p, "nf(str2)", "c") == V{"c"});
  CHECK(run(p, "flatten", "f(a, f(b, f(c)), d)") == V{"f(a, b, c, d)"});
}

TEST_CASE("iterate") {
  const Program p = base();
  CHECK(run(p, "iterate(flatten_one, 2)", "f(f(f(a)))") == V{"f(a)"});
  CHECK(run(p, "iterate(flatten_one, 0)", "f(f(a))") == V{"f(f(a))"});
  CHECK(run(p, "iterate(flatten_one, 3)", "f(f(a))").empty());
  Solver s(p, parse_query("iterate(str1, -1) :: a ==> s_Out"));
  CHECK_FALSE(s.next());
  CHECK_FALSE(s.errors().empty());
}

TEST_CASE("map1 and map") {
  Program p = base();
  p.consult(parse_program("dup :: i_X ==> (i_X, i_X).\nskip :: i_X ==> eps."));
  CHECK(run(p, "map(dup)", "(a, b)") == V{"(a, a, b, b)"});
  CHECK(run(p, "map1(dup)", "(a, b)").empty());
  CHECK(run(p, "map1(str1)", "eps") == V{"eps"});
  CHECK(run(p, "map(skip)", "(a, b, c)") == V{"eps"});
  CHECK(run(p, "map1(str2)", "(a, b)").empty());
  CHECK(run(p, "map1(choice(str1, id))", "(a, a)") == V{"(f(a), f(a))", "(f(a), a)", "(a, f(a))", "(a, a)"});
}

TEST_CASE("rewrite") {
  const Program p = base();
  CHECK(run(p, "rewrite(strat)", "f(a)") == V{"g(a)"});
  CHECK(run(p, "rewrite(strat)", "h(f(f(a)), f(a))") ==
        V{"h(g(f(a)), f(a))", "h(a, f(a))", "h(f(g(a)), f(a))", "h(f(f(a)), g(a))"});
  CHECK(run(p, "rewrite(strat)", "(f(a), b)").empty());
}

TEST_CASE("bad combinator arguments are reported") {
  const Program p = base();
  for (const char* q : {"iterate(str1, x) :: a ==> s_Out", "map1(a, b) :: a ==> s_Out", "nf :: a ==> s_Out", "compose(str1) :: a ==> s_Out"}) {
    CAPTURE(q);
    Solver s(p, parse_query(q));
    CHECK_FALSE(s.next());
    CHECK_FALSE(s.errors().empty());
  }
}

TEST_CASE("nf answers are irreducible") {
  const Program p = base();
  gen::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const std::string in = print(gen::ground_hedge(rng, 8));
    for (const auto& out : run(p, "nf(choice(str2, flatten_one))", in)) {
      CAPTURE(in);
      CAPTURE(out);
      CHECK(support::answers(p, "choice(str2, flatten_one) :: " + out + " =\\=> i_") == V{"true"});
    }
  }
}

TEST_CASE("compose is associative and iterate(st, 1) is st") {
  const Program p = base();
  gen::Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const std::string in = print(gen::ground_hedge(rng, 8));
    CAPTURE(in);
    CHECK(run(p, "compose(compose(str1, str2), flatten_one)", in) ==
          run(p, "compose(str1, compose(str2, flatten_one))", in));
    CHECK(run(p, "iterate(str2, 1)", in) == run(p, "str2", in));
    CHECK(run(p, "iterate(str2, 2)", in) == run(p, "compose(str2, str2)", in));
  }
}

TEST_CASE("interactive session") {
  const Program p = base();
  auto session = [&](const std::string& input, const std::string& subject) {
    std::istringstream in(input);
    std::ostringstream out;
    SolveOptions o;
    o.interaction = {&in, &out};
    std::vector<std::string> r;
    for (const auto& a : solve_all(p, parse_query("interactive :: " + subject + " ==> s_Out"), o))
      r.push_back(print(a.bindings.at(0).second));
    return std::pair{r, out.str()};
  };

  auto [r1, o1] = session("str1.\nfinish.\n", "a");
  CHECK(r1 == V{"f(a)"});
  CHECK(o1.find("current: f(a)") != std::string::npos);
  CHECK(o1.find("strategy> ") != std::string::npos);

  auto [r2, o2] = session("finish.\n", "(a, b)");
  CHECK(r2 == V{"(a, b)"});

  auto [r3, o3] = session("str2.\nfinish.\n", "a");
  CHECK(r3 == V{"a"});
  CHECK(o3.find("strategy failed; hedge unchanged") != std::string::npos);

  auto [r4, o4] = session("", "a");
  CHECK(r4 == V{"a"});

  auto [r5, o5] = session("str1.\nstr1.\n", "(a, a)");
  CHECK(r5 == V{"(f(a), f(a))"});
}
