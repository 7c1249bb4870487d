#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rholog {

enum class VarKind : std::uint8_t { individual, sequence, function, context, prolog };

std::string_view kind_name(VarKind k);

// A variable is identified by kind, source name and a renaming serial.
// Source variables have serial 0; renamed clause copies and engine-made
// variables carry a fresh serial. Anonymous variables carry a serial unique
// to their textual occurrence.
struct Variable {
  VarKind kind = VarKind::individual;
  std::string name;
  std::uint64_t serial = 0;
  bool anonymous = false;

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

struct Symbol {
  std::string name;
  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

enum class NodeKind : std::uint8_t {
  ind_var,   // i_X
  seq_var,   // s_X; only ever a hedge element
  hole,
  app,       // f(h)
  fun_app,   // f_X(h)
  ctx_app,   // c_X(t)
  prolog_var
};

class Term;
using Hedge = std::vector<Term>;

struct Node;

// Immutable, structurally shared term. Equality and ordering are structural.
class Term {
 public:
  Term() = default;

  static Term variable(Variable v);  // kind chosen from v.kind
  static Term hole();
  static Term app(std::string symbol, Hedge args = {});
  static Term fun_app(Variable head, Hedge args = {});
  static Term ctx_app(Variable ctx, Term arg);

  NodeKind kind() const;
  const std::string& symbol() const;  // app only
  const Variable& var() const;        // variables, fun_app head, ctx_app variable
  const Hedge& args() const;          // app, fun_app; ctx_app holds its single argument here
  const Term& ctx_arg() const;

  bool is_var() const;  // ind, seq or prolog variable node
  bool ground() const;
  std::size_t holes() const;
  std::size_t size() const;  // node count
  bool valid() const { return static_cast<bool>(node_); }
  const Node* identity() const { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  NodeKind kind;
  std::string symbol;
  Variable var;
  Hedge args;
  bool ground = true;
  std::size_t holes = 0;
  std::size_t size = 1;
};

bool is_ground(const Hedge& h);
std::size_t hole_count(const Hedge& h);

// Flat concatenation; the empty hedge is the unit.
Hedge hedge_concat(const Hedge& h1, const Hedge& h2);

// Image of a function or context variable in a substitution.
using Binding = std::variant<Term, Hedge, Symbol>;

class Substitution {
 public:
  using Map = std::map<Variable, Binding>;

  Substitution() = default;

  // Binding for an individual, prolog or context variable (a Term), a
  // sequence variable (a Hedge) or a function variable (a Symbol).
  void bind(const Variable& v, Binding b);
  const Binding* lookup(const Variable& v) const;
  bool contains(const Variable& v) const { return map_.contains(v); }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const Map& bindings() const { return map_; }

  friend bool operator==(const Substitution&, const Substitution&) = default;
  friend std::strong_ordering operator<=>(const Substitution& a, const Substitution& b);

 private:
  Map map_;
};

class MalformedContext : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Replaces the single hole of ctx by t. Throws MalformedContext when ctx does
// not have exactly one hole.
Term apply_context(const Term& ctx, const Term& t);

// Simultaneous application. Sequence variables splice in place; c_X(t)
// becomes apply_context(sigma(c_X), sigma(t)).
Hedge apply_subst(const Substitution& sigma, const Hedge& h);
Hedge apply_subst(const Substitution& sigma, const Term& t);
// Single-term form; t must not be a sequence variable.
Term apply_subst_term(const Substitution& sigma, const Term& t);

// Tree positions, 1-based argument indices from the root.
using Position = std::vector<std::size_t>;

enum class Traversal : std::uint8_t { leftmost_outermost, leftmost_innermost };

// Positions of a ground term: pre-order (root first) for leftmost-outermost,
// post-order (children first) for leftmost-innermost.
std::vector<Position> hole_positions(const Term& t, Traversal order = Traversal::leftmost_outermost);

const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);

// Variables occurring in a term/hedge, in first-occurrence order.
void collect_vars(const Term& t, std::vector<Variable>& out);
void collect_vars(const Hedge& h, std::vector<Variable>& out);

}  // namespace rholog
