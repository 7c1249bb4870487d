#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rholog/ast.hpp"
#include "rholog/core.hpp"

namespace rholog {

struct OpDef {
  int priority = 0;
  OpType type = OpType::xfx;
};

class OpTable {
 public:
  // The default operators: arithmetic, comparison and `->`.
  static OpTable standard();

  // Throws std::invalid_argument for reserved names, bad priorities and
  // infix/postfix clashes.
  void add(const OpDirective& d);

  std::optional<OpDef> prefix(std::string_view name) const;
  std::optional<OpDef> infix(std::string_view name) const;
  std::optional<OpDef> postfix(std::string_view name) const;
  bool is_op(std::string_view name) const;

 private:
  std::map<std::string, OpDef, std::less<>> prefix_, infix_, postfix_;
};

std::string_view op_type_name(OpType t);
std::optional<OpType> parse_op_type(std::string_view s);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(SourcePos pos, std::string message);
  SourcePos pos;
  std::string message;
};

struct SourceProgram {
  std::vector<Item> items;
  OpTable ops;  // table in effect after the last directive
};

// Program text. Directives update `ops` as they are read.
SourceProgram parse_program(std::string_view text, OpTable ops = OpTable::standard());
Query parse_query(std::string_view text, const OpTable& ops = OpTable::standard());

// Single values. `hole` is accepted here, unlike in programs and queries.
Term parse_term(std::string_view text, const OpTable& ops = OpTable::standard());
Hedge parse_hedge(std::string_view text, const OpTable& ops = OpTable::standard());
// `{i_X = a, s_Y = (b, c), f_F = g, c_C = f(hole)}`
Substitution parse_substitution(std::string_view text, const OpTable& ops = OpTable::standard());

std::string print(const Term& t, const OpTable& ops = OpTable::standard());
// eps, a single element, or a parenthesized sequence.
std::string print(const Hedge& h, const OpTable& ops = OpTable::standard());
std::string print(const Binding& b, const OpTable& ops = OpTable::standard());
std::string print(const Substitution& s, const OpTable& ops = OpTable::standard());
std::string print(const Literal& l, const OpTable& ops = OpTable::standard());
std::string print_var(const Variable& v);
std::string print_position(const Position& p);

}  // namespace rholog
