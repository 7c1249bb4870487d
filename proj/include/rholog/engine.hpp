#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rholog/ast.hpp"
#include "rholog/matcher.hpp"
#include "rholog/strategies.hpp"
#include "rholog/syntax.hpp"
#include "rholog/wellmoded.hpp"

namespace rholog {

class ConsultError : public std::runtime_error {
 public:
  explicit ConsultError(std::vector<std::string> problems);
  std::vector<std::string> problems;
};

struct ProgramOptions {
  bool strict = true;  // reject sources with mode violations
  // When false, `rewrite` is looked up among the program clauses, which lets
  // the one-clause definition stand in for the native combinator.
  bool native_rewrite = true;
};

class Program {
 public:
  explicit Program(ProgramOptions options = {});

  // Adds the items of `src` after the current ones. Returns the mode
  // violations found (only possible in lenient mode). Throws ConsultError on
  // strict-mode violations and on clauses for native strategies; the program
  // is left unchanged in that case.
  std::vector<Violation> consult(const SourceProgram& src);

  const std::vector<RhoClause>& clauses() const { return clauses_; }
  // Indices of the clauses whose head strategy may match `st`, in source order.
  const std::vector<std::size_t>& candidates(const Term& st) const;
  const std::vector<PrologClause>* prolog_clauses(const std::string& name, std::size_t arity) const;

  const OpTable& ops() const { return ops_; }
  const ModeTable& modes() const { return modes_; }
  const ProgramOptions& options() const { return options_; }

 private:
  void reindex();

  ProgramOptions options_;
  std::vector<SourceProgram> sources_;
  std::vector<RhoClause> clauses_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_symbol_;
  std::vector<std::size_t> wildcard_;
  std::map<std::pair<std::string, std::size_t>, std::vector<PrologClause>> prolog_;
  OpTable ops_ = OpTable::standard();
  ModeTable modes_ = ModeTable::builtin();
};

class DepthLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  std::ostream* out = nullptr;          // target of write/1 and nl/0
  std::ostream* trace = nullptr;        // one line per selected literal
  std::ostream* diagnostics = nullptr;  // runtime errors, also kept in errors()
  std::optional<std::size_t> depth_limit;
  Interaction interaction;
  MatchOptions match;
};

// Bindings of the query's named variables, in order of first occurrence.
struct Answer {
  std::vector<std::pair<Variable, Binding>> bindings;
  Substitution substitution() const;
};

struct SolveStats {
  std::uint64_t matchers = 0;  // matchers pulled from all matcher streams
  std::uint64_t clause_tries = 0;
  std::uint64_t steps = 0;
};

// Lazy, depth-first evaluation of one query. The program must outlive the
// solver.
class Solver {
 public:
  Solver(const Program& program, Query query, SolveOptions options = {});
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  // Next answer, or nullopt when the search space is exhausted.
  std::optional<Answer> next();

  const std::vector<std::string>& errors() const;
  const SolveStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience: all answers (or the first `limit`).
std::vector<Answer> solve_all(const Program& program, const Query& query, SolveOptions options = {},
                              std::size_t limit = SIZE_MAX);

}  // namespace rholog
