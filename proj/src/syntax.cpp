#include "rholog/syntax.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>

namespace rholog {

// ---------------------------------------------------------------------------
// Operators

OpTable OpTable::standard() {
  OpTable t;
  auto add = [&t](int p, OpType ty, const char* name) { t.add(OpDirective{p, ty, name, {}}); };
  add(1050, OpType::xfy, "->");
  for (const char* op : {"=", "\\=", "==", "\\==", "is", "<", ">", "=<", ">=", "=:=", "=\\="})
    add(700, OpType::xfx, op);
  add(500, OpType::yfx, "+");
  add(500, OpType::yfx, "-");
  add(400, OpType::yfx, "*");
  add(400, OpType::yfx, "/");
  add(400, OpType::yfx, "//");
  add(400, OpType::yfx, "mod");
  add(200, OpType::xfy, "^");
  add(200, OpType::fy, "-");
  add(200, OpType::fy, "+");
  return t;
}

namespace {

bool is_structural(std::string_view name) {
  return name == "::" || name == "==>" || name == "=\\=>" || name == ":-" || name == ":=" ||
         name == "," || name == "(" || name == ")" || name == "{" || name == "}";
}

bool is_prefix_type(OpType t) { return t == OpType::fy || t == OpType::fx; }
bool is_postfix_type(OpType t) { return t == OpType::xf || t == OpType::yf; }

}  // namespace

void OpTable::add(const OpDirective& d) {
  if (d.priority < 1 || d.priority > 1200)
    throw std::invalid_argument("operator priority must be in [1, 1200]: " + std::to_string(d.priority));
  if (is_structural(d.name) || d.name.empty())
    throw std::invalid_argument("cannot redefine reserved token `" + d.name + "` as an operator");
  OpDef def{d.priority, d.type};
  if (is_prefix_type(d.type)) {
    prefix_[d.name] = def;
  } else if (is_postfix_type(d.type)) {
    if (infix_.contains(d.name))
      throw std::invalid_argument("`" + d.name + "` is already an infix operator");
    postfix_[d.name] = def;
  } else {
    if (postfix_.contains(d.name))
      throw std::invalid_argument("`" + d.name + "` is already a postfix operator");
    infix_[d.name] = def;
  }
}

std::optional<OpDef> OpTable::prefix(std::string_view name) const {
  auto it = prefix_.find(name);
  return it == prefix_.end() ? std::nullopt : std::optional<OpDef>(it->second);
}
std::optional<OpDef> OpTable::infix(std::string_view name) const {
  auto it = infix_.find(name);
  return it == infix_.end() ? std::nullopt : std::optional<OpDef>(it->second);
}
std::optional<OpDef> OpTable::postfix(std::string_view name) const {
  auto it = postfix_.find(name);
  return it == postfix_.end() ? std::nullopt : std::optional<OpDef>(it->second);
}
bool OpTable::is_op(std::string_view name) const {
  return prefix_.contains(name) || infix_.contains(name) || postfix_.contains(name);
}

std::string_view op_type_name(OpType t) {
  switch (t) {
    case OpType::xfx: return "xfx";
    case OpType::xfy: return "xfy";
    case OpType::yfx: return "yfx";
    case OpType::fy: return "fy";
    case OpType::fx: return "fx";
    case OpType::xf: return "xf";
    case OpType::yf: return "yf";
  }
  return "?";
}

std::optional<OpType> parse_op_type(std::string_view s) {
  for (OpType t : {OpType::xfx, OpType::xfy, OpType::yfx, OpType::fy, OpType::fx, OpType::xf, OpType::yf})
    if (op_type_name(t) == s) return t;
  return std::nullopt;
}

SyntaxError::SyntaxError(SourcePos p, std::string msg)
    : std::runtime_error(std::to_string(p.line) + ":" + std::to_string(p.column) + ": " + msg),
      pos(p),
      message(std::move(msg)) {}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok { name, quoted, var, pvar, number, punct, end, eof };

struct Token {
  Tok kind = Tok::eof;
  std::string text;
  SourcePos pos;
  bool layout_before = false;
};

constexpr std::string_view kSymbolChars = "+-*/\\^<>=~:.?@#&$";

bool is_symbol_char(char c) { return kSymbolChars.find(c) != std::string_view::npos; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::optional<VarKind> var_prefix(std::string_view name) {
  if (name.size() < 2 || name[1] != '_') return std::nullopt;
  switch (name[0]) {
    case 'i': return VarKind::individual;
    case 's': return VarKind::sequence;
    case 'f': return VarKind::function;
    case 'c': return VarKind::context;
    default: return std::nullopt;
  }
}

std::atomic<std::uint64_t> g_anonymous_serial{1};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      bool layout = skip_layout();
      Token t = next();
      t.layout_before = layout;
      out.push_back(t);
      if (t.kind == Tok::eof) break;
    }
    return out;
  }

 private:
  char peek(std::size_t k = 0) const { return i_ + k < src_.size() ? src_[i_ + k] : '\0'; }
  bool at_end() const { return i_ >= src_.size(); }
  SourcePos here() const { return {line_, col_}; }

  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  bool skip_layout() {
    bool any = false;
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        any = true;
      } else if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
        any = true;
      } else if (c == '/' && peek(1) == '*') {
        SourcePos start = here();
        advance();
        advance();
        while (!at_end() && !(peek() == '*' && peek(1) == '/')) advance();
        if (at_end()) throw SyntaxError(start, "unterminated block comment");
        advance();
        advance();
        any = true;
      } else {
        break;
      }
    }
    return any;
  }

  bool end_follows(std::size_t k) const {
    char c = peek(k);
    return c == '\0' || c == '%' || std::isspace(static_cast<unsigned char>(c));
  }

  Token next() {
    Token t;
    t.pos = here();
    if (at_end()) {
      t.kind = Tok::eof;
      return t;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::number;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.text += peek();
        advance();
      }
      return t;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      while (is_alnum(peek())) {
        t.text += peek();
        advance();
      }
      t.kind = var_prefix(t.text) ? Tok::var : Tok::name;
      return t;
    }
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      while (is_alnum(peek())) {
        t.text += peek();
        advance();
      }
      t.kind = Tok::pvar;
      return t;
    }
    if (c == '\'') return quoted();
    if (c == '.' && end_follows(1)) {
      advance();
      t.kind = Tok::end;
      t.text = ".";
      return t;
    }
    if (is_symbol_char(c)) {
      t.kind = Tok::name;
      while (is_symbol_char(peek())) {
        // A trailing '.' before layout terminates the clause.
        if (peek() == '.' && end_follows(1) && !t.text.empty()) break;
        t.text += peek();
        advance();
      }
      return t;
    }
    if (c == '!' || c == ';') {
      t.kind = Tok::name;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    if (c == '(' || c == ')' || c == ',' || c == '{' || c == '}') {
      t.kind = Tok::punct;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    throw SyntaxError(t.pos, std::string("unexpected character `") + c + "`");
  }

  Token quoted() {
    Token t;
    t.pos = here();
    t.kind = Tok::quoted;
    advance();
    for (;;) {
      if (at_end()) throw SyntaxError(t.pos, "unterminated quoted atom");
      char c = peek();
      if (c == '\'') {
        if (peek(1) == '\'') {
          t.text += '\'';
          advance();
          advance();
          continue;
        }
        advance();
        return t;
      }
      if (c == '\\') {
        advance();
        if (at_end()) throw SyntaxError(t.pos, "unterminated quoted atom");
        char e = peek();
        switch (e) {
          case 'n': t.text += '\n'; break;
          case 't': t.text += '\t'; break;
          case '\\': t.text += '\\'; break;
          case '\'': t.text += '\''; break;
          default: throw SyntaxError(here(), std::string("unknown escape `\\") + e + "`");
        }
        advance();
        continue;
      }
      t.text += c;
      advance();
    }
  }

  std::string_view src_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

constexpr int kArgPriority = 1199;

// The result of parsing an expression: a single term, or a hedge fragment
// from `eps`, a sequence variable or a parenthesized group.
struct Chunk {
  Hedge items;
  int prec = 0;
  bool is_term() const { return items.size() == 1 && items.front().kind() != NodeKind::seq_var; }
};

class Parser {
 public:
  Parser(std::string_view text, OpTable ops, bool allow_hole)
      : tokens_(Lexer(text).run()), ops_(std::move(ops)), allow_hole_(allow_hole) {}

  const OpTable& ops() const { return ops_; }

  bool at_eof() const { return peek().kind == Tok::eof; }

  SourceProgram program() {
    SourceProgram prog;
    while (!at_eof()) prog.items.push_back(item());
    prog.ops = ops_;
    return prog;
  }

  Query query() {
    Query q = body();
    if (peek().kind == Tok::end) ++i_;
    expect_eof();
    validate_query(q);
    return q;
  }

  Term single_term() {
    Chunk c = expr(kArgPriority);
    Term t = as_term(c, peek().pos);
    if (peek().kind == Tok::end) ++i_;
    expect_eof();
    return t;
  }

  Hedge hedge() {
    Hedge h = hedge_list();
    if (peek().kind == Tok::end) ++i_;
    expect_eof();
    return h;
  }

  Substitution substitution() {
    Substitution s;
    expect_punct("{");
    if (!is_punct("}")) {
      for (;;) {
        const Token& vt = peek();
        if (vt.kind != Tok::var && vt.kind != Tok::pvar) error(vt, "expected a variable");
        Variable v = make_var(vt);
        ++i_;
        if (v.anonymous) error(vt, "anonymous variables cannot be bound");
        if (!(peek().kind == Tok::name && peek().text == "=")) error(peek(), "expected `=`");
        ++i_;
        SourcePos vp = peek().pos;
        Chunk c = expr(699);
        switch (v.kind) {
          case VarKind::sequence: s.bind(v, c.items); break;
          case VarKind::function: {
            Term t = as_term(c, vp);
            if (t.kind() != NodeKind::app || !t.args().empty())
              throw SyntaxError(vp, "function variable must be bound to a symbol");
            s.bind(v, Symbol{t.symbol()});
            break;
          }
          case VarKind::context: {
            Term t = as_term(c, vp);
            if (t.holes() != 1) throw SyntaxError(vp, "context must contain exactly one hole");
            s.bind(v, t);
            break;
          }
          default: s.bind(v, as_term(c, vp)); break;
        }
        if (is_punct(",")) {
          ++i_;
          continue;
        }
        break;
      }
    }
    expect_punct("}");
    expect_eof();
    return s;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return tokens_[std::min(i_ + k, tokens_.size() - 1)];
  }
  bool is_punct(std::string_view p, std::size_t k = 0) const {
    return peek(k).kind == Tok::punct && peek(k).text == p;
  }
  bool is_name(std::string_view n, std::size_t k = 0) const {
    return peek(k).kind == Tok::name && peek(k).text == n;
  }

  [[noreturn]] void error(const Token& t, const std::string& msg) const {
    std::string found = t.kind == Tok::eof ? "end of input" : "`" + t.text + "`";
    throw SyntaxError(t.pos, msg + ", found " + found);
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) error(peek(), "expected `" + std::string(p) + "`");
    ++i_;
  }
  void expect_end() {
    if (peek().kind != Tok::end) error(peek(), "expected `.`");
    ++i_;
  }
  void expect_eof() {
    if (!at_eof()) error(peek(), "expected end of input");
  }

  Variable make_var(const Token& t) {
    Variable v;
    if (t.kind == Tok::pvar) {
      v.kind = VarKind::prolog;
      v.name = t.text;
      v.anonymous = t.text == "_";
    } else {
      v.kind = *var_prefix(t.text);
      v.name = t.text;
      v.anonymous = t.text.size() == 2;
    }
    if (v.anonymous) v.serial = g_anonymous_serial.fetch_add(1);
    return v;
  }

  Term as_term(const Chunk& c, SourcePos pos) const {
    if (!c.is_term()) {
      if (c.items.empty()) throw SyntaxError(pos, "expected a term, found the empty hedge");
      if (c.items.size() == 1) throw SyntaxError(pos, "expected a term, found a sequence variable");
      throw SyntaxError(pos, "expected a term, found a hedge of " + std::to_string(c.items.size()) + " elements");
    }
    return c.items.front();
  }

  // Can the token at offset k begin a term operand?
  bool starts_term(std::size_t k) const {
    const Token& t = peek(k);
    switch (t.kind) {
      case Tok::number:
      case Tok::quoted:
      case Tok::var:
      case Tok::pvar: return true;
      case Tok::punct: return t.text == "(";
      case Tok::name:
        if (is_structural(t.text)) return false;
        if (ops_.infix(t.text) && !ops_.prefix(t.text)) return peek(k + 1).kind == Tok::punct && peek(k + 1).text == "(" && !peek(k + 1).layout_before;
        return true;
      default: return false;
    }
  }

  bool adjacent_paren() const { return is_punct("(", 1) && !peek(1).layout_before; }

  Hedge arg_list() {
    expect_punct("(");
    if (is_punct(")")) {
      ++i_;
      return {};
    }
    Hedge h = hedge_list();
    expect_punct(")");
    return h;
  }

  Hedge hedge_list() {
    Hedge h;
    for (;;) {
      Chunk c = expr(kArgPriority);
      h.insert(h.end(), c.items.begin(), c.items.end());
      if (!is_punct(",")) break;
      ++i_;
    }
    return h;
  }

  Chunk primary(int max_prec) {
    const Token& t = peek();
    Chunk c;
    switch (t.kind) {
      case Tok::number:
        ++i_;
        c.items.push_back(Term::app(t.text));
        return c;
      case Tok::quoted: {
        std::string name = t.text;
        ++i_;
        if (is_punct("(") && !peek().layout_before) {
          Hedge args = arg_list();
          c.items.push_back(Term::app(std::move(name), std::move(args)));
        } else {
          c.items.push_back(Term::app(std::move(name)));
        }
        return c;
      }
      case Tok::var: {
        Variable v = make_var(t);
        const bool paren = adjacent_paren();
        ++i_;
        switch (v.kind) {
          case VarKind::individual:
            if (paren) error(peek(), "individual variable cannot take arguments");
            c.items.push_back(Term::variable(std::move(v)));
            return c;
          case VarKind::sequence:
            if (paren) error(peek(), "sequence variable cannot take arguments");
            c.items.push_back(Term::variable(std::move(v)));
            return c;
          case VarKind::function:
            c.items.push_back(Term::fun_app(std::move(v), paren ? arg_list() : Hedge{}));
            return c;
          case VarKind::context: {
            if (!paren) error(peek(), "context variable must be applied to one term");
            SourcePos ap = peek().pos;
            Hedge args = arg_list();
            if (args.size() != 1 || args.front().kind() == NodeKind::seq_var)
              throw SyntaxError(ap, "context variable must be applied to exactly one term");
            c.items.push_back(Term::ctx_app(std::move(v), args.front()));
            return c;
          }
          case VarKind::prolog: break;
        }
        return c;
      }
      case Tok::pvar: {
        if (adjacent_paren()) error(peek(1), "variable cannot take arguments");
        Variable v = make_var(t);
        ++i_;
        c.items.push_back(Term::variable(std::move(v)));
        return c;
      }
      case Tok::punct:
        if (t.text == "(") {
          ++i_;
          if (is_punct(")")) {
            ++i_;
            return c;  // () is the empty hedge
          }
          c.items = hedge_list();
          expect_punct(")");
          return c;
        }
        error(t, "expected a term");
      case Tok::name: return name_primary(max_prec);
      case Tok::end:
      case Tok::eof: error(t, "expected a term");
    }
    error(t, "expected a term");
  }

  Chunk name_primary(int max_prec) {
    const Token t = peek();
    Chunk c;
    if (is_structural(t.text)) error(t, "expected a term");
    if (t.text == "-" && peek(1).kind == Tok::number && !peek(1).layout_before) {
      c.items.push_back(Term::app("-" + peek(1).text));
      i_ += 2;
      return c;
    }
    if (adjacent_paren()) {
      if (t.text == "hole") error(t, "reserved symbol `hole` takes no arguments");
      if (t.text == "eps") error(t, "reserved symbol `eps` takes no arguments");
      ++i_;
      Hedge args = arg_list();
      c.items.push_back(Term::app(t.text, std::move(args)));
      return c;
    }
    if (t.text == "eps") {
      ++i_;
      return c;
    }
    if (t.text == "hole") {
      if (!allow_hole_) error(t, "reserved symbol `hole` may only appear in contexts");
      ++i_;
      c.items.push_back(Term::hole());
      return c;
    }
    if (auto op = ops_.prefix(t.text); op && starts_term(1)) {
      if (op->priority > max_prec) error(t, "operator priority clash");
      ++i_;
      const int arg_max = op->type == OpType::fy ? op->priority : op->priority - 1;
      SourcePos ap = peek().pos;
      Chunk arg = expr(arg_max);
      c.items.push_back(Term::app(t.text, {as_term(arg, ap)}));
      c.prec = op->priority;
      return c;
    }
    ++i_;
    c.items.push_back(Term::app(t.text));
    return c;
  }

  Chunk expr(int max_prec) {
    SourcePos start = peek().pos;
    Chunk left = primary(max_prec);
    for (;;) {
      const Token& t = peek();
      if (t.kind != Tok::name) break;
      if (auto op = ops_.infix(t.text)) {
        const int p = op->priority;
        const int lmax = op->type == OpType::yfx ? p : p - 1;
        const int rmax = op->type == OpType::xfy ? p : p - 1;
        if (p > max_prec || left.prec > lmax) break;
        Term l = as_term(left, start);
        std::string name = t.text;
        ++i_;
        SourcePos rp = peek().pos;
        Chunk right = expr(rmax);
        Term r = as_term(right, rp);
        left = Chunk{{Term::app(std::move(name), {l, r})}, p};
        continue;
      }
      if (auto op = ops_.postfix(t.text)) {
        const int p = op->priority;
        const int lmax = op->type == OpType::yf ? p : p - 1;
        if (p > max_prec || left.prec > lmax) break;
        Term l = as_term(left, start);
        std::string name = t.text;
        ++i_;
        left = Chunk{{Term::app(std::move(name), {l})}, p};
        continue;
      }
      break;
    }
    return left;
  }

  // -- clauses and literals ------------------------------------------------

  Literal rho_literal_rest(Term st) {
    expect_name("::");
    Hedge lhs = expr(kArgPriority).items;
    bool negative = false;
    if (is_name("=\\=>")) {
      negative = true;
    } else if (!is_name("==>")) {
      error(peek(), "expected `==>` or `=\\=>`");
    }
    ++i_;
    Hedge rhs = expr(kArgPriority).items;
    return Literal::rho(std::move(st), std::move(lhs), std::move(rhs), negative);
  }

  void expect_name(std::string_view n) {
    if (!is_name(n)) error(peek(), "expected `" + std::string(n) + "`");
    ++i_;
  }

  Literal literal() {
    SourcePos pos = peek().pos;
    Chunk c = expr(kArgPriority);
    if (is_name("::")) return rho_literal_rest(as_term(c, pos));
    Term t = as_term(c, pos);
    if (t.kind() == NodeKind::app && t.symbol() == "!" && t.args().empty()) return Literal::cut();
    if (t.kind() != NodeKind::app) throw SyntaxError(pos, "expected a callable term");
    return Literal::call(std::move(t));
  }

  std::vector<Literal> body() {
    std::vector<Literal> lits;
    for (;;) {
      lits.push_back(literal());
      if (!is_punct(",")) break;
      ++i_;
    }
    return lits;
  }

  Item item() {
    SourcePos pos = peek().pos;
    if (is_name(":-")) {
      ++i_;
      return directive(pos);
    }
    Chunk c = expr(kArgPriority);
    if (is_name("::")) {
      Literal head = rho_literal_rest(as_term(c, pos));
      if (head.kind == LiteralKind::negative) throw SyntaxError(pos, "a clause head cannot be a negative literal");
      std::vector<Literal> b;
      if (is_name(":-")) {
        ++i_;
        b = body();
      }
      expect_end();
      RhoClause rc{std::move(head), std::move(b), pos};
      validate_rho_clause(rc);
      return rc;
    }
    if (is_name(":=")) {
      Term name = as_term(c, pos);
      ++i_;
      SourcePos sp = peek().pos;
      Term st = as_term(expr(kArgPriority), sp);
      expect_end();
      Abbreviation a{std::move(name), std::move(st), pos};
      for (const Term* t : {&a.name, &a.strategy}) {
        check_no_hole(*t, pos);
        if (has_var_kind(*t, [](VarKind k) { return k == VarKind::prolog; }))
          throw SyntaxError(pos, "abbreviations cannot contain Prolog variables");
      }
      return a;
    }
    Term head = as_term(c, pos);
    if (head.kind() != NodeKind::app) throw SyntaxError(pos, "expected a callable clause head");
    std::vector<Literal> b;
    if (is_name(":-")) {
      ++i_;
      b = body();
    }
    expect_end();
    PrologClause pc{std::move(head), std::move(b), pos};
    validate_prolog_clause(pc);
    return pc;
  }

  Item directive(SourcePos pos) {
    SourcePos tp = peek().pos;
    Term d = as_term(expr(kArgPriority), tp);
    expect_end();
    if (d.kind() == NodeKind::app && d.symbol() == "op" && d.args().size() == 3) {
      const auto& a = d.args();
      OpDirective od;
      od.pos = pos;
      if (a[0].kind() != NodeKind::app || !a[0].args().empty() ||
          !std::all_of(a[0].symbol().begin(), a[0].symbol().end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) ||
          a[0].symbol().empty() || a[0].symbol().size() > 5)
        throw SyntaxError(pos, "op/3: priority must be an integer");
      od.priority = std::stoi(a[0].symbol());
      if (a[1].kind() != NodeKind::app || !a[1].args().empty() || !parse_op_type(a[1].symbol()))
        throw SyntaxError(pos, "op/3: unknown operator type");
      od.type = *parse_op_type(a[1].symbol());
      if (a[2].kind() != NodeKind::app || !a[2].args().empty())
        throw SyntaxError(pos, "op/3: operator name must be an atom");
      od.name = a[2].symbol();
      try {
        ops_.add(od);
      } catch (const std::invalid_argument& e) {
        throw SyntaxError(pos, e.what());
      }
      return od;
    }
    if (d.kind() == NodeKind::app && d.symbol() == "mode" && d.args().size() == 1 &&
        d.args()[0].kind() == NodeKind::app) {
      const Term& spec = d.args()[0];
      ModeDirective md;
      md.pos = pos;
      md.name = spec.symbol();
      for (const auto& m : spec.args()) {
        if (m.kind() != NodeKind::app || !m.args().empty() || (m.symbol() != "+" && m.symbol() != "-"))
          throw SyntaxError(pos, "mode/1: each argument must be + or -");
        md.inputs.push_back(m.symbol() == "+");
      }
      return md;
    }
    throw SyntaxError(pos, "unknown directive; expected op/3 or mode/1");
  }

  // -- variable discipline -------------------------------------------------

  template <typename Pred>
  static bool has_var_kind(const Term& t, Pred pred) {
    std::vector<Variable> vs;
    collect_vars(t, vs);
    return std::any_of(vs.begin(), vs.end(), [&](const Variable& v) { return pred(v.kind); });
  }
  template <typename Pred>
  static bool has_var_kind(const Hedge& h, Pred pred) {
    return std::any_of(h.begin(), h.end(), [&](const Term& t) { return has_var_kind(t, pred); });
  }
  template <typename Pred>
  static bool literal_has(const Literal& l, Pred pred) {
    if (l.is_rho()) return has_var_kind(l.strategy, pred) || has_var_kind(l.lhs, pred) || has_var_kind(l.rhs, pred);
    if (l.kind == LiteralKind::call) return has_var_kind(l.goal, pred);
    return false;
  }

  static bool is_prolog(VarKind k) { return k == VarKind::prolog; }
  static bool is_rho_var(VarKind k) { return k != VarKind::prolog; }
  static bool is_non_individual_rho(VarKind k) { return k != VarKind::prolog && k != VarKind::individual; }

  void check_no_hole(const Term& t, SourcePos pos) const {
    if (t.holes() > 0) throw SyntaxError(pos, "reserved symbol `hole` may only appear in contexts");
  }
  void check_literal_holes(const Literal& l, SourcePos pos) const {
    if (l.is_rho()) {
      check_no_hole(l.strategy, pos);
      if (hole_count(l.lhs) || hole_count(l.rhs))
        throw SyntaxError(pos, "reserved symbol `hole` may only appear in contexts");
    } else if (l.kind == LiteralKind::call) {
      check_no_hole(l.goal, pos);
    }
  }

  void validate_rho_clause(const RhoClause& c) const {
    check_literal_holes(c.head, c.pos);
    if (literal_has(c.head, &Parser::is_prolog)) throw SyntaxError(c.pos, "ρ-clauses cannot contain Prolog variables");
    for (const auto& l : c.body) {
      check_literal_holes(l, c.pos);
      if (literal_has(l, &Parser::is_prolog)) throw SyntaxError(c.pos, "ρ-clauses cannot contain Prolog variables");
      if (l.kind == LiteralKind::call && literal_has(l, &Parser::is_non_individual_rho))
        throw SyntaxError(c.pos, "only individual variables may occur in Prolog literals");
    }
  }

  void validate_prolog_clause(const PrologClause& c) const {
    check_no_hole(c.head, c.pos);
    if (has_var_kind(c.head, &Parser::is_rho_var)) throw SyntaxError(c.pos, "Prolog clauses cannot contain ρ-variables");
    for (const auto& l : c.body) {
      if (l.is_rho()) throw SyntaxError(c.pos, "ρ-literals may appear only in ρ-clauses and queries");
      check_literal_holes(l, c.pos);
      if (literal_has(l, &Parser::is_rho_var)) throw SyntaxError(c.pos, "Prolog clauses cannot contain ρ-variables");
    }
  }

  void validate_query(const Query& q) const {
    SourcePos pos{1, 1};
    bool rho_vars = false, prolog_vars = false;
    for (const auto& l : q) {
      check_literal_holes(l, pos);
      rho_vars = rho_vars || literal_has(l, &Parser::is_rho_var);
      prolog_vars = prolog_vars || literal_has(l, &Parser::is_prolog);
      if (l.kind == LiteralKind::call && literal_has(l, &Parser::is_non_individual_rho))
        throw SyntaxError(pos, "only individual variables may occur in Prolog literals");
    }
    if (rho_vars && prolog_vars) throw SyntaxError(pos, "a query cannot mix ρ-variables and Prolog variables");
    bool has_rho = std::any_of(q.begin(), q.end(), [](const Literal& l) { return l.is_rho(); });
    if (has_rho && prolog_vars) throw SyntaxError(pos, "ρ-queries cannot contain Prolog variables");
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
  OpTable ops_;
  bool allow_hole_;
};

}  // namespace

SourceProgram parse_program(std::string_view text, OpTable ops) {
  return Parser(text, std::move(ops), false).program();
}

Query parse_query(std::string_view text, const OpTable& ops) { return Parser(text, ops, false).query(); }

Term parse_term(std::string_view text, const OpTable& ops) { return Parser(text, ops, true).single_term(); }

Hedge parse_hedge(std::string_view text, const OpTable& ops) { return Parser(text, ops, true).hedge(); }

Substitution parse_substitution(std::string_view text, const OpTable& ops) {
  return Parser(text, ops, true).substitution();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

bool plain_name(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  if (!std::all_of(s.begin(), s.end(), is_alnum)) return false;
  if (var_prefix(s)) return false;
  return s != "eps" && s != "hole";
}

bool symbolic_name(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), is_symbol_char)) return false;
  if (is_structural(s) || s.back() == '.' || s.starts_with("/*")) return false;
  return true;
}

bool number_name(std::string_view s) {
  std::string_view digits = s.starts_with('-') ? s.substr(1) : s;
  return !digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

std::string quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    switch (c) {
      case '\'': out += "\\'"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "'";
}

class Printer {
 public:
  explicit Printer(const OpTable& ops) : ops_(ops) {}

  std::string atom(const std::string& s) const {
    if (number_name(s)) return s;
    if (ops_.is_op(s)) return quote(s);
    if (plain_name(s) || symbolic_name(s) || s == "!" || s == ";") return s;
    return quote(s);
  }

  std::string functor(const std::string& s) const {
    if (plain_name(s) || symbolic_name(s) || s == "!" || s == ";") return s;
    return quote(s);
  }

  int prec(const Term& t) const {
    if (auto op = infix_form(t)) return op->priority;
    return 0;
  }

  std::optional<OpDef> infix_form(const Term& t) const {
    if (t.kind() != NodeKind::app || t.args().size() != 2) return std::nullopt;
    if (!plain_name(t.symbol()) && !symbolic_name(t.symbol()) && t.symbol() != "mod") return std::nullopt;
    for (const auto& a : t.args())
      if (a.kind() == NodeKind::seq_var) return std::nullopt;
    return ops_.infix(t.symbol());
  }

  void term(const Term& t, int max_prec, std::string& out) const {
    switch (t.kind()) {
      case NodeKind::ind_var:
      case NodeKind::seq_var:
      case NodeKind::prolog_var: out += print_var(t.var()); return;
      case NodeKind::hole: out += "hole"; return;
      case NodeKind::fun_app:
        out += print_var(t.var());
        if (!t.args().empty()) args(t.args(), out);
        return;
      case NodeKind::ctx_app:
        out += print_var(t.var());
        args(t.args(), out);
        return;
      case NodeKind::app: break;
    }
    if (t.args().empty()) {
      out += atom(t.symbol());
      return;
    }
    if (auto op = infix_form(t)) {
      const int p = op->priority;
      const int lmax = op->type == OpType::yfx ? p : p - 1;
      const int rmax = op->type == OpType::xfy ? p : p - 1;
      const bool paren = p > max_prec;
      if (paren) out += '(';
      term(t.args()[0], lmax, out);
      out += ' ';
      out += t.symbol();
      out += ' ';
      term(t.args()[1], rmax, out);
      if (paren) out += ')';
      return;
    }
    out += functor(t.symbol());
    args(t.args(), out);
  }

  void args(const Hedge& h, std::string& out) const {
    out += '(';
    elements(h, out);
    out += ')';
  }

  void elements(const Hedge& h, std::string& out) const {
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (i) out += ", ";
      const bool wrap = prec(h[i]) > kArgPriority;
      if (wrap) out += '(';
      term(h[i], 1200, out);
      if (wrap) out += ')';
    }
  }

  void hedge(const Hedge& h, int max_prec, std::string& out) const {
    if (h.empty()) {
      out += "eps";
    } else if (h.size() == 1) {
      const bool wrap = prec(h[0]) > max_prec;
      if (wrap) out += '(';
      term(h[0], 1200, out);
      if (wrap) out += ')';
    } else {
      out += '(';
      elements(h, out);
      out += ')';
    }
  }

  void binding(const Binding& b, int max_prec, std::string& out) const {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Term>) {
            hedge(Hedge{v}, max_prec, out);
          } else if constexpr (std::is_same_v<T, Hedge>) {
            hedge(v, max_prec, out);
          } else {
            out += atom(v.name);
          }
        },
        b);
  }

 private:
  const OpTable& ops_;
};

}  // namespace

std::string print_var(const Variable& v) {
  if (v.anonymous || v.serial == 0) return v.name;
  return v.name + "__" + std::to_string(v.serial);
}

std::string print_position(const Position& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(p[i]);
  }
  return out;
}

std::string print(const Term& t, const OpTable& ops) {
  std::string out;
  Printer(ops).hedge(Hedge{t}, kArgPriority, out);
  return out;
}

std::string print(const Hedge& h, const OpTable& ops) {
  std::string out;
  Printer(ops).hedge(h, kArgPriority, out);
  return out;
}

std::string print(const Binding& b, const OpTable& ops) {
  std::string out;
  Printer(ops).binding(b, kArgPriority, out);
  return out;
}

std::string print(const Substitution& s, const OpTable& ops) {
  Printer p(ops);
  std::string out = "{";
  bool first = true;
  for (const auto& [v, b] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += print_var(v);
    out += " = ";
    p.binding(b, 699, out);
  }
  return out + "}";
}

std::string print(const Literal& l, const OpTable& ops) {
  switch (l.kind) {
    case LiteralKind::positive:
    case LiteralKind::negative:
      return print(l.strategy, ops) + " :: " + print(l.lhs, ops) +
             (l.kind == LiteralKind::positive ? " ==> " : " =\\=> ") + print(l.rhs, ops);
    case LiteralKind::call: return print(l.goal, ops);
    case LiteralKind::cut: return "!";
    case LiteralKind::match: return "match " + print(l.rhs, ops) + " against " + print(l.lhs, ops);
    case LiteralKind::cut_to: return "!/" + std::to_string(l.barrier);
    case LiteralKind::soft_cut: return "soft-cut #" + std::to_string(l.target);
    case LiteralKind::commit: return "commit";
    case LiteralKind::soft_commit: return "soft-commit";
  }
  return "?";
}

}  // namespace rholog
