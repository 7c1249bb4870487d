#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "rholog/core.hpp"

namespace rholog {

enum class LiteralKind : std::uint8_t {
  positive,  // st :: lhs ==> rhs
  negative,  // st :: lhs =\=> rhs
  call,      // builtin or user Prolog-subset predicate
  cut,       // !
  // Engine-internal literals; never produced by the parser.
  match,        // force matching pattern `rhs` against subject `lhs`
  cut_to,       // discard choice points above `barrier`
  soft_cut,     // disable the choice point with serial `target`
  commit,       // placeholder resolved to cut_to by the engine
  soft_commit,  // placeholder resolved to soft_cut by the engine
};

struct Literal {
  LiteralKind kind = LiteralKind::call;
  Term strategy;
  Hedge lhs;
  Hedge rhs;
  Term goal;
  std::size_t barrier = 0;
  std::uint64_t target = 0;
  std::size_t depth = 0;

  static Literal rho(Term st, Hedge lhs, Hedge rhs, bool negative = false);
  static Literal call(Term goal);
  static Literal cut();
  static Literal match(Hedge pattern, Hedge subject);
  static Literal cut_to(std::size_t barrier);
  static Literal soft_cut(std::uint64_t target);
  static Literal commit();
  static Literal soft_commit();

  bool is_rho() const { return kind == LiteralKind::positive || kind == LiteralKind::negative; }
};

Literal apply_subst(const Substitution& sigma, const Literal& lit);

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

struct RhoClause {
  Literal head;  // always positive
  std::vector<Literal> body;
  SourcePos pos;
};

struct PrologClause {
  Term head;
  std::vector<Literal> body;
  SourcePos pos;
};

// name := strategy
struct Abbreviation {
  Term name;
  Term strategy;
  SourcePos pos;
};

enum class OpType : std::uint8_t { xfx, xfy, yfx, fy, fx, xf, yf };

struct OpDirective {
  int priority = 0;
  OpType type = OpType::xfx;
  std::string name;
  SourcePos pos;
};

// :- mode(p(+, -)).  true marks an input position.
struct ModeDirective {
  std::string name;
  std::vector<bool> inputs;
  SourcePos pos;
};

using Item = std::variant<RhoClause, PrologClause, Abbreviation, OpDirective, ModeDirective>;

using Query = std::vector<Literal>;

// `name := st` stands for `name :: s_X ==> s_Y :- st :: s_X ==> s_Y`.
RhoClause expand_abbreviation(const Abbreviation& a);

}  // namespace rholog
