#include "doctest.h"
#include "rholog/syntax.hpp"
#include "rholog/wellmoded.hpp"
#include "support.hpp"

using namespace rholog;

namespace {
std::vector<Violation> query(const char* q) { return check_query(parse_query(q), ModeTable::builtin()); }

std::vector<Violation> program(const std::string& text) { return program_check(parse_program(text)); }

std::vector<std::string> names(const Violation& v) {
  std::vector<std::string> out;
  for (const auto& x : v.variables) out.push_back(print_var(x));
  return out;
}
}  // namespace

TEST_CASE("query with an unbound input") {
  auto v = query("str1 :: a ==> i_X, str2 :: i_Y ==> i_Z");
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::unbound_input);
  CHECK(v[0].literal == 2);
  CHECK(names(v[0]) == std::vector<std::string>{"i_Y"});
}

TEST_CASE("chained query is well-moded") { CHECK(query("str1 :: a ==> i_X, str2 :: i_X ==> i_Z").empty()); }

TEST_CASE("negative literal with an unbound output") {
  auto v = query("str1 :: a ==> i_X, str2 :: i_X =\\=> i_Z");
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::unbound_negative_output);
  CHECK(names(v[0]) == std::vector<std::string>{"i_Z"});
}

TEST_CASE("negative literals with bound or anonymous outputs") {
  CHECK(query("str1 :: a ==> (i_X, i_Z), str2 :: i_X =\\=> i_Z").empty());
  CHECK(query("str1 :: a ==> i_X, str2 :: i_X =\\=> i_").empty());
}

TEST_CASE("query strategies must be ground") {
  auto v = query("str1 :: a ==> i_X, f(i_X) :: a ==> i_Y");
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::nonground_strategy);
  CHECK(query("i_S :: a ==> b").size() == 2);
}

TEST_CASE("anonymous inputs are never bound") {
  auto v = query("s :: i_ ==> i_X");
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::unbound_input);
}

TEST_CASE("builtin modes") {
  CHECK(query("i_X is 2 + 3, i_X > 4").empty());
  auto v = query("i_X is i_Y + 1");
  REQUIRE(v.size() == 1);
  CHECK(names(v[0]) == std::vector<std::string>{"i_Y"});
  CHECK(query("true, write(a), nl, fail").empty());
}

TEST_CASE("unknown predicates are reported separately") {
  auto v = query("foo(a)");
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::unknown_predicate);
  CHECK(v[0].predicate == "foo/1");
}

TEST_CASE("clause checks") {
  CHECK(program("rewrite(i_Str) :: c_Context(i_Redex) ==> c_Context(i_Contractum) :- "
                "i_Str :: i_Redex ==> i_Contractum.")
            .empty());
  auto v = program("p :: a ==> i_Y :- q :: i_X ==> i_Y.");
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::unbound_input);
  CHECK(names(v[0]) == std::vector<std::string>{"i_X"});

  // i_B is also an input of the body literal that nothing binds.
  v = program("s(i_A) :: i_X ==> i_Y :- t(i_B) :: i_X ==> i_Y.");
  REQUIRE(v.size() == 2);
  CHECK(v[0].kind == ViolationKind::unbound_input);
  CHECK(v[1].kind == ViolationKind::strategy_var_escape);
  CHECK(names(v[1]) == std::vector<std::string>{"i_B"});
  CHECK(program("s(i_A) :: i_X ==> i_Y :- t(i_A) :: i_X ==> i_Y.").empty());
}

TEST_CASE("head outputs must be produced") {
  auto v = program("bad :: i_X ==> i_Y.");
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::unbound_output);
  CHECK(names(v[0]) == std::vector<std::string>{"i_Y"});
  CHECK(v[0].literal == 0);
  CHECK(program("good :: i_X ==> i_Y :- s :: i_X ==> i_Y.").empty());
}

TEST_CASE("negative body literal may use head inputs") {
  CHECK(program("p :: (i_X, i_Y) ==> i_X :- q :: i_X =\\=> i_Y.").empty());
  auto v = program("p :: i_X ==> i_X :- q :: i_X =\\=> i_Z.");
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::unbound_negative_output);
}

TEST_CASE("abbreviations are checked after expansion") {
  CHECK(program("flatten := nf(flatten_one).").empty());
  auto v = program("p(i_A) := q(i_B).");
  REQUIRE(v.size() == 2);
  CHECK(v[1].kind == ViolationKind::strategy_var_escape);
}

TEST_CASE("Prolog clauses are checked only when used from a rho-clause") {
  const std::string defs = ":- mode(twice(+, -)).\ntwice(X, Y) :- Y is Z * 2.\n";
  CHECK(program(defs).empty());
  auto v = program(defs + "t :: i_X ==> i_Y :- twice(i_X, i_Y).");
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::unbound_input);
  CHECK(program(":- mode(twice(+, -)).\ntwice(X, Y) :- Y is X * 2.\nt :: i_X ==> i_Y :- twice(i_X, i_Y).").empty());
  auto u = program("t :: i_X ==> i_Y :- nomode(i_X, i_Y).");
  REQUIRE(u.size() >= 1);
  CHECK(u[0].kind == ViolationKind::unknown_predicate);
}

TEST_CASE("the shipped corpus is well-moded") {
  for (const char* f : {"examples/elementary.rholog", "examples/strat.rholog", "examples/flatten.rholog",
                        "examples/replace.rholog", "examples/prover.rholog", "prelude/rewrite.rholog",
                        "prelude/rewrite_clause.rholog"}) {
    CAPTURE(f);
    auto v = program(support::read_file(support::corpus(f)));
    CHECK(v.empty());
    for (const auto& x : v) MESSAGE(describe(x));
  }
}

TEST_CASE("describe names location, kind and variables") {
  auto v = query("str1 :: a ==> i_X, str2 :: i_Y ==> i_Z");
  REQUIRE(v.size() == 1);
  CHECK(describe(v[0]) == "query, literal 2: unbound-input: i_Y");
}
