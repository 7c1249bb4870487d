#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rholog/ast.hpp"
#include "rholog/syntax.hpp"

namespace rholog {

// Names of the built-in combinators. A program may not define clauses for them.
bool is_native(std::string_view name);
const std::vector<std::string>& native_names();

class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Channel used by `interactive`. Strategy terms end with a period; `finish`
// (or end of input) stops the loop.
struct Interaction {
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
};

// Matching followed by a continuation, one branch per matcher.
struct MatchExpansion {
  Hedge pattern;
  Hedge subject;
  std::vector<Literal> continuation;
};

// Replacement goals for a combinator literal. Alternatives are tried in
// order; `commit` and `soft_commit` placeholders refer to the choice point
// that holds them. When `match` is set it replaces the alternatives.
struct Expansion {
  std::vector<std::vector<Literal>> alternatives;
  std::optional<MatchExpansion> match;
};

struct NativeContext {
  std::function<Variable(VarKind)> fresh;
  const OpTable* ops = nullptr;
  Interaction interaction;
  // First result of `st :: in ==> s_Out`, used by `interactive`.
  std::function<std::optional<Hedge>(const Term& st, const Hedge& in)> apply_first;
  bool native_rewrite = true;
};

// Whether `st` is handled natively under `ctx` (rewrite can be switched off).
bool handles(const Term& st, const NativeContext& ctx);

// Expansion of a positive literal whose strategy is a native combinator.
// Strategy and input are ground. Throws StrategyError on bad arguments.
Expansion expand(const Literal& lit, const NativeContext& ctx);

}  // namespace rholog
