#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rholog/engine.hpp"

namespace rholog {

struct SessionConfig {
  std::vector<std::string> files;
  std::optional<std::string> query;
  bool all = false;
  std::optional<std::size_t> max_answers;
  bool check = false;
  bool lenient = false;
  bool trace = false;
  std::optional<std::size_t> depth_limit;
  bool native_rewrite = true;
};

// Exit codes of run_batch.
inline constexpr int kExitAnswers = 0;
inline constexpr int kExitNoAnswers = 1;
inline constexpr int kExitError = 2;

// Consults the files, then checks (--check) or runs the query. `in` feeds
// the interactive strategy.
int run_batch(const SessionConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

// Read-query-print loop. Returns when input ends or on `halt.`.
int repl(const SessionConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

// `Var = value` lines, or `true.` for an answer without bindings.
std::string format_answer(const Answer& a, const OpTable& ops);

}  // namespace rholog
