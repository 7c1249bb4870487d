#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rholog/ast.hpp"
#include "rholog/syntax.hpp"

namespace rholog {

// Input/output assignment for Prolog-subset predicates. The ρ-relation
// `st :: h1 ==> h2` is fixed (inputs st and h1, output h2) and not stored.
class ModeTable {
 public:
  // is/2 (out, in), comparisons (in, in), write/1 (in), nl/0, true/0, fail/0.
  static ModeTable builtin();

  void declare(const std::string& name, std::vector<bool> inputs);
  const std::vector<bool>* lookup(const std::string& name, std::size_t arity) const;

 private:
  std::map<std::pair<std::string, std::size_t>, std::vector<bool>> modes_;
};

enum class ViolationKind {
  unbound_input,            // input variable not produced by an earlier literal
  unbound_negative_output,  // named output variable of a negative literal not yet bound
  nonground_strategy,       // query ρ-literal with variables in its strategy
  strategy_var_escape,      // body strategy variable not in the head strategy
  unbound_output,           // head output variable never produced
  unknown_predicate,        // call to a predicate without a mode
};

std::string_view violation_name(ViolationKind k);

struct Violation {
  std::string location;    // "query" or "line N"
  std::size_t literal = 0;  // 1-based body/query index; 0 for the clause head
  ViolationKind kind = ViolationKind::unbound_input;
  std::vector<Variable> variables;
  std::string predicate;  // for unknown_predicate
};

std::string describe(const Violation& v);

std::vector<Violation> check_query(const Query& q, const ModeTable& modes);
std::vector<Violation> check_clause(const RhoClause& c, const ModeTable& modes);
std::vector<Violation> check_prolog_clause(const PrologClause& c, const ModeTable& modes);

// Builtin modes plus the program's mode directives.
ModeTable mode_table(const std::vector<const SourceProgram*>& sources);

// Checks every ρ-clause and expanded abbreviation, and the Prolog clauses of
// predicates called from some ρ-clause body.
std::vector<Violation> program_check(const std::vector<const SourceProgram*>& sources);
std::vector<Violation> program_check(const SourceProgram& source);

}  // namespace rholog
