// Problem files and expressions.
//
// A statement starts on a line whose first word is a keyword and runs until
// the next such line, so long systems may be wrapped freely.

#include <algorithm>
#include <cctype>
#include <set>

#include "liesym/errors.hpp"
#include "liesym/parse.hpp"

namespace liesym {

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"indep",      "dep",     "param",    "unknown", "system",
                                          "vf",         "lagrangian", "current", "dimmatrix"};
  return k;
}

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;     // identifier, digits, or the punctuation character
  std::string sub;      // subscript after '_' (identifiers only)
  bool has_sub = false;
  bool braced = false;  // subscript written as _{a,b}
  std::size_t pos = 0;  // offset into the source
};

class Source {
 public:
  explicit Source(std::string_view text) : text_(text) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') line_starts_.push_back(i + 1);
  }

  std::string_view text() const { return text_; }

  [[noreturn]] void fail(std::size_t pos, const std::string& msg) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), pos);
    std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    std::size_t col = pos - line_starts_[line - 1] + 1;
    throw ParseError(msg, line, col);
  }

 private:
  std::string_view text_;
  std::vector<std::size_t> line_starts_;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  Lexer(const Source& src, std::size_t begin, std::size_t end) : src_(src), pos_(begin), end_(end) { advance(); }

  const Token& peek() const { return cur_; }

  Token next() {
    Token t = cur_;
    advance();
    return t;
  }

  bool at_punct(char c) const { return cur_.kind == Tok::Punct && cur_.text[0] == c; }
  bool at_end() const { return cur_.kind == Tok::End; }

  void expect(char c, const char* what) {
    if (!at_punct(c)) fail(std::string("expected ") + what);
    advance();
  }

  std::string expect_ident(const char* what) {
    if (cur_.kind != Tok::Ident || cur_.has_sub) fail(std::string("expected ") + what);
    return next().text;
  }

  [[noreturn]] void fail(const std::string& msg) const { src_.fail(cur_.pos, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const { src_.fail(pos, msg); }

 private:
  void advance() {
    std::string_view s = src_.text();
    while (pos_ < end_) {
      char c = s[pos_];
      if (c == '#') {
        while (pos_ < end_ && s[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
    cur_ = Token{};
    cur_.pos = pos_;
    if (pos_ >= end_) {
      cur_.kind = Tok::End;
      return;
    }
    char c = s[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < end_ && std::isdigit(static_cast<unsigned char>(s[pos_]))) ++pos_;
      if (pos_ < end_ && s[pos_] == '.') src_.fail(pos_, "decimal literals are not supported; write a fraction");
      cur_.kind = Tok::Number;
      cur_.text = std::string(s.substr(b, pos_ - b));
      return;
    }
    if (ident_start(c)) {
      std::size_t b = pos_;
      while (pos_ < end_ && ident_char(s[pos_])) ++pos_;
      cur_.kind = Tok::Ident;
      cur_.text = std::string(s.substr(b, pos_ - b));
      if (pos_ < end_ && s[pos_] == '_') {
        ++pos_;
        cur_.has_sub = true;
        if (pos_ < end_ && s[pos_] == '{') {
          std::size_t open = pos_++;
          std::size_t sb = pos_;
          while (pos_ < end_ && s[pos_] != '}' && s[pos_] != '\n') ++pos_;
          if (pos_ >= end_ || s[pos_] != '}') src_.fail(open, "unterminated '{' in subscript");
          cur_.sub = std::string(s.substr(sb, pos_ - sb));
          cur_.braced = true;
          ++pos_;
        } else {
          std::size_t sb = pos_;
          while (pos_ < end_ && ident_char(s[pos_])) ++pos_;
          if (sb == pos_) src_.fail(sb, "empty subscript");
          cur_.sub = std::string(s.substr(sb, pos_ - sb));
        }
      }
      return;
    }
    static const std::string punct = "+-*/^(),;:=[]";
    if (punct.find(c) != std::string::npos) {
      cur_.kind = Tok::Punct;
      cur_.text = std::string(1, c);
      ++pos_;
      return;
    }
    src_.fail(pos_, std::string("unexpected character '") + c + "'");
  }

  const Source& src_;
  std::size_t pos_;
  std::size_t end_;
  Token cur_;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

class ExprParser {
 public:
  ExprParser(Lexer& lex, const Context& ctx) : lex_(lex), ctx_(ctx) {}

  Expr expression() {
    ++depth_;
    if (depth_ > 200) lex_.fail("expression nested too deeply");
    std::vector<Expr> terms{term()};
    while (lex_.at_punct('+') || lex_.at_punct('-')) {
      bool minus = lex_.next().text == "-";
      Expr t = term();
      terms.push_back(minus ? Expr::raw_product({Expr(-1), t}) : t);
    }
    --depth_;
    return terms.size() == 1 ? terms.front() : Expr::raw_sum(std::move(terms));
  }

 private:
  Expr term() {
    std::vector<Expr> factors{unary()};
    while (lex_.at_punct('*') || lex_.at_punct('/')) {
      Token op = lex_.next();
      Expr f = unary();
      if (op.text == "/") {
        Expr d = normalize(f);
        if (d.is_zero_const()) lex_.fail_at(op.pos, "division by zero");
        f = Expr::raw_power(d, Rational(-1));
      }
      factors.push_back(f);
    }
    return factors.size() == 1 ? factors.front() : Expr::raw_product(std::move(factors));
  }

  Expr unary() {
    if (lex_.at_punct('-')) {
      lex_.next();
      guard();
      Expr e = unary();
      --depth_;
      return Expr::raw_product({Expr(-1), e});
    }
    if (lex_.at_punct('+')) {
      lex_.next();
      guard();
      Expr e = unary();
      --depth_;
      return e;
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!lex_.at_punct('^')) return base;
    Token op = lex_.next();
    guard();
    Expr ex = normalize(unary());
    --depth_;
    if (!ex.is_const()) lex_.fail_at(op.pos, "exponent must be a rational constant");
    if (abs(ex.value().get_num()) > 100 || ex.value().get_den() > 100)
      lex_.fail_at(op.pos, "exponent too large");
    Expr b = normalize(base);
    if (b.is_zero_const() && ex.value() < 0) lex_.fail_at(op.pos, "division by zero");
    return Expr::raw_power(b, ex.value());
  }

  void guard() {
    if (++depth_ > 200) lex_.fail("expression nested too deeply");
  }

  Expr primary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Number) {
      Token n = lex_.next();
      return Expr::constant(Rational(Integer(n.text, 10)));
    }
    if (lex_.at_punct('(')) {
      lex_.next();
      Expr e = expression();
      lex_.expect(')', "')'");
      return e;
    }
    if (t.kind == Tok::Ident) return identifier();
    if (lex_.at_end()) lex_.fail("unexpected end of expression");
    lex_.fail("unexpected '" + t.text + "'");
  }

  std::vector<std::string> call_args() {
    std::vector<std::string> out;
    lex_.expect('(', "'('");
    out.push_back(lex_.expect_ident("a name"));
    while (lex_.at_punct(',')) {
      lex_.next();
      out.push_back(lex_.expect_ident("a name"));
    }
    lex_.expect(')', "')'");
    return out;
  }

  int indep_or_fail(const std::string& name, std::size_t pos) {
    auto i = ctx_.find_indep(name);
    if (!i) lex_.fail_at(pos, "'" + name + "' is not an independent variable");
    return *i;
  }

  Expr jet_from_sub(int dep, const Token& t) {
    std::vector<int> idx;
    if (t.braced) {
      for (const auto& n : split_list(t.sub)) idx.push_back(indep_or_fail(n, t.pos));
    } else {
      if (!ctx_.single_char_indeps())
        lex_.fail_at(t.pos, "derivative shorthand needs single-character independent variables; use D(" +
                                t.text + ",...)");
      for (char c : t.sub) idx.push_back(indep_or_fail(std::string(1, c), t.pos));
    }
    return Expr::jet(dep, MultiIndex(idx));
  }

  Expr unknown_from_names(const Context::UnknownSignature& sig, const std::vector<std::string>& names,
                          std::size_t pos) {
    std::vector<int> deriv;
    for (const auto& n : names) {
      int slot = -1;
      for (std::size_t k = 0; k < sig.args.size(); ++k) {
        const Expr& a = sig.args[k];
        std::string an = a.kind() == Kind::Indep ? ctx_.indep_name(a.index()) : ctx_.dep_name(a.jet_var().dep);
        if (an == n) slot = static_cast<int>(k);
      }
      if (slot < 0) lex_.fail_at(pos, "'" + n + "' is not an argument of '" + sig.name + "'");
      deriv.push_back(slot);
    }
    return Expr::unknown(sig.name, sig.args, deriv);
  }

  Expr unknown_from_sub(const Context::UnknownSignature& sig, const Token& t) {
    if (t.braced) return unknown_from_names(sig, split_list(t.sub), t.pos);
    // Try the whole subscript as one argument name, then as single characters.
    for (const Expr& a : sig.args) {
      std::string an = a.kind() == Kind::Indep ? ctx_.indep_name(a.index()) : ctx_.dep_name(a.jet_var().dep);
      if (an == t.sub) return unknown_from_names(sig, {t.sub}, t.pos);
    }
    std::vector<std::string> chars;
    for (char c : t.sub) chars.emplace_back(1, c);
    return unknown_from_names(sig, chars, t.pos);
  }

  Expr identifier() {
    Token t = lex_.next();
    const std::string& name = t.text;

    if (!t.has_sub && lex_.at_punct('(')) {
      if (name == "D") return derivative_call(t);
      if (name == "sqrt") {
        lex_.next();
        Expr a = expression();
        lex_.expect(')', "')'");
        return Expr::raw_power(normalize(a), make_rational(1, 2));
      }
      if (auto fn = func_from_name(name)) {
        lex_.next();
        Expr a = expression();
        lex_.expect(')', "')'");
        return Expr::func(*fn, a);
      }
      if (const auto* sig = ctx_.find_unknown(name)) {
        std::size_t pos = lex_.peek().pos;
        auto names = call_args();
        Expr self = Expr::unknown(sig->name, sig->args);
        if (names.size() != sig->args.size()) lex_.fail_at(pos, "wrong number of arguments for '" + name + "'");
        for (std::size_t k = 0; k < names.size(); ++k) {
          const Expr& a = sig->args[k];
          std::string an = a.kind() == Kind::Indep ? ctx_.indep_name(a.index()) : ctx_.dep_name(a.jet_var().dep);
          if (an != names[k]) lex_.fail_at(pos, "arguments of '" + name + "' must be its declared arguments");
        }
        return self;
      }
    }

    if (auto i = ctx_.find_indep(name)) {
      if (t.has_sub) lex_.fail_at(t.pos, "independent variable '" + name + "' cannot carry a subscript");
      return Expr::indep(*i);
    }
    if (auto d = ctx_.find_dep(name)) {
      if (!t.has_sub) return Expr::jet(*d);
      return jet_from_sub(*d, t);
    }
    if (ctx_.has_param(name)) {
      if (t.has_sub) lex_.fail_at(t.pos, "parameter '" + name + "' cannot carry a subscript");
      return Expr::param(name);
    }
    if (const auto* sig = ctx_.find_unknown(name)) {
      if (!t.has_sub) return Expr::unknown(sig->name, sig->args);
      return unknown_from_sub(*sig, t);
    }
    lex_.fail_at(t.pos, "undeclared identifier '" + name + "'");
  }

  Expr derivative_call(const Token& t) {
    std::size_t pos = lex_.peek().pos;
    auto names = call_args();
    const std::string& head = names.front();
    std::vector<std::string> rest(names.begin() + 1, names.end());
    if (auto d = ctx_.find_dep(head)) {
      std::vector<int> idx;
      for (const auto& n : rest) idx.push_back(indep_or_fail(n, pos));
      return Expr::jet(*d, MultiIndex(idx));
    }
    if (const auto* sig = ctx_.find_unknown(head)) return unknown_from_names(*sig, rest, pos);
    lex_.fail_at(t.pos, "D(...) needs a dependent variable or unknown function, got '" + head + "'");
  }

  Lexer& lex_;
  const Context& ctx_;
  int depth_ = 0;
};

Expr parse_bounded(Lexer& lex, const Context& ctx) {
  ExprParser p(lex, ctx);
  return normalize(p.expression());
}

Rational parse_signed_rational(Lexer& lex) {
  bool neg = false;
  if (lex.at_punct('-')) {
    lex.next();
    neg = true;
  }
  if (lex.peek().kind != Tok::Number) lex.fail("expected a rational number");
  Rational r(Integer(lex.next().text, 10));
  if (lex.at_punct('/')) {
    lex.next();
    if (lex.peek().kind != Tok::Number) lex.fail("expected a denominator");
    Token d = lex.next();
    Integer den(d.text);
    if (den == 0) lex.fail_at(d.pos, "zero denominator");
    r /= Rational(den);
  }
  return neg ? Rational(-r) : r;
}

template <class T>
void add_named(std::vector<Named<T>>& list, const std::string& name, T value, Lexer& lex, std::size_t pos) {
  for (const auto& n : list)
    if (n.name == name) lex.fail_at(pos, "duplicate item name '" + name + "'");
  list.push_back(Named<T>{name, std::move(value)});
}

class ProblemParser {
 public:
  explicit ProblemParser(std::string_view text) : src_(text) {}

  Problem run() {
    std::string_view s = src_.text();
    std::vector<std::size_t> starts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t eol = s.find('\n', pos);
      if (eol == std::string_view::npos) eol = s.size();
      std::size_t b = pos;
      while (b < eol && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
      if (b < eol && s[b] != '#') {
        std::size_t e = b;
        while (e < eol && ident_char(s[e])) ++e;
        if (keywords().count(std::string(s.substr(b, e - b)))) {
          starts.push_back(b);
        } else if (starts.empty()) {
          src_.fail(b, "expected a declaration or item keyword");
        }
      }
      pos = eol + 1;
    }
    for (std::size_t k = 0; k < starts.size(); ++k) {
      std::size_t end = k + 1 < starts.size() ? starts[k + 1] : s.size();
      Lexer lex(src_, starts[k], end);
      statement(lex);
    }
    return std::move(problem_);
  }

 private:
  std::string declared_name(Lexer& lex) {
    std::size_t pos = lex.peek().pos;
    std::string n = lex.expect_ident("a name");
    if (keywords().count(n)) lex.fail_at(pos, "'" + n + "' is a keyword");
    return n;
  }

  template <class F>
  void declare(Lexer& lex, F&& add) {
    if (lex.at_end()) lex.fail("expected at least one name");
    while (!lex.at_end()) {
      std::size_t pos = lex.peek().pos;
      std::string n = declared_name(lex);
      try {
        add(n);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        lex.fail_at(pos, e.what());
      }
      if (lex.at_punct(',')) lex.next();
    }
  }

  void statement(Lexer& lex) {
    std::string kw = lex.next().text;
    Context& ctx = problem_.context;
    if (kw == "indep") return declare(lex, [&](const std::string& n) { ctx.add_indep(n); });
    if (kw == "dep") return declare(lex, [&](const std::string& n) { ctx.add_dep(n); });
    if (kw == "param") return declare(lex, [&](const std::string& n) { ctx.add_param(n); });
    if (kw == "unknown") {
      std::size_t pos = lex.peek().pos;
      std::string n = declared_name(lex);
      std::vector<std::string> args;
      lex.expect('(', "'('");
      args.push_back(lex.expect_ident("an argument name"));
      while (lex.at_punct(',')) {
        lex.next();
        args.push_back(lex.expect_ident("an argument name"));
      }
      lex.expect(')', "')'");
      finish(lex);
      try {
        ctx.add_unknown(n, args);
      } catch (const Error& e) {
        lex.fail_at(pos, e.what());
      }
      return;
    }

    std::size_t name_pos = lex.peek().pos;
    std::string name = declared_name(lex);
    lex.expect(':', "':'");
    if (kw == "system") return system(lex, name, name_pos);
    if (kw == "vf") return vfield(lex, name, name_pos);
    if (kw == "lagrangian") {
      Expr L = parse_bounded(lex, ctx);
      finish(lex);
      add_named(problem_.lagrangians, name, L, lex, name_pos);
      return;
    }
    if (kw == "current") {
      std::vector<Expr> F{parse_bounded(lex, ctx)};
      while (lex.at_punct(',')) {
        lex.next();
        F.push_back(parse_bounded(lex, ctx));
      }
      finish(lex);
      if (F.size() != static_cast<std::size_t>(ctx.p()))
        lex.fail_at(name_pos, "current needs " + std::to_string(ctx.p()) + " components");
      add_named(problem_.currents, name, F, lex, name_pos);
      return;
    }
    if (kw == "dimmatrix") return dimmatrix(lex, name, name_pos);
    lex.fail("unknown statement");
  }

  void finish(Lexer& lex) {
    if (lex.at_punct(';')) lex.next();
    if (!lex.at_end()) lex.fail("unexpected '" + lex.peek().text + "'");
  }

  void system(Lexer& lex, const std::string& name, std::size_t name_pos) {
    const Context& ctx = problem_.context;
    std::vector<SystemEquation> eqs;
    while (!lex.at_end()) {
      std::size_t pos = lex.peek().pos;
      Expr lead = parse_bounded(lex, ctx);
      if (lead.kind() != Kind::Jet) lex.fail_at(pos, "left-hand side must be a single derivative (solved form)");
      lex.expect('=', "'='");
      Expr rhs = parse_bounded(lex, ctx);
      eqs.push_back(SystemEquation{lead.jet_var(), rhs});
      if (lex.at_punct(';')) {
        lex.next();
      } else if (!lex.at_end()) {
        lex.fail("expected ';' between equations");
      }
    }
    if (eqs.empty()) lex.fail_at(name_pos, "system '" + name + "' has no equations");
    try {
      add_named(problem_.systems, name, DiffSystem(std::move(eqs), ctx), lex, name_pos);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      lex.fail_at(name_pos, e.what());
    }
  }

  void vfield(Lexer& lex, const std::string& name, std::size_t name_pos) {
    const Context& ctx = problem_.context;
    VectorField v = VectorField::zero(ctx.p(), ctx.q());
    std::vector<bool> seen_xi(static_cast<std::size_t>(ctx.p())), seen_phi(static_cast<std::size_t>(ctx.q()));
    while (!lex.at_end()) {
      std::size_t pos = lex.peek().pos;
      std::string slot = lex.expect_ident("xi[...] or phi[...]");
      if (slot != "xi" && slot != "phi") lex.fail_at(pos, "expected xi[...] or phi[...]");
      lex.expect('[', "'['");
      std::size_t vpos = lex.peek().pos;
      std::string var = lex.expect_ident("a variable name");
      lex.expect(']', "']'");
      lex.expect('=', "'='");
      std::size_t epos = lex.peek().pos;
      Expr e = parse_bounded(lex, ctx);
      if (jet_order(e) > 0 || has_unknowns(e))
        lex.fail_at(epos, "vector field coefficients may only involve x and u (no derivatives)");
      if (slot == "xi") {
        auto i = ctx.find_indep(var);
        if (!i) lex.fail_at(vpos, "'" + var + "' is not an independent variable");
        if (seen_xi[static_cast<std::size_t>(*i)]) lex.fail_at(pos, "xi[" + var + "] given twice");
        seen_xi[static_cast<std::size_t>(*i)] = true;
        v.xi[static_cast<std::size_t>(*i)] = e;
      } else {
        auto a = ctx.find_dep(var);
        if (!a) lex.fail_at(vpos, "'" + var + "' is not a dependent variable");
        if (seen_phi[static_cast<std::size_t>(*a)]) lex.fail_at(pos, "phi[" + var + "] given twice");
        seen_phi[static_cast<std::size_t>(*a)] = true;
        v.phi[static_cast<std::size_t>(*a)] = e;
      }
      if (lex.at_punct(';')) {
        lex.next();
      } else if (!lex.at_end()) {
        lex.fail("expected ';' between components");
      }
    }
    add_named(problem_.vfields, name, std::move(v), lex, name_pos);
  }

  std::size_t count(Lexer& lex) {
    if (lex.peek().kind != Tok::Number) lex.fail("expected a count");
    Token t = lex.next();
    Integer n(t.text);
    if (n <= 0 || n > 10000) lex.fail_at(t.pos, "count out of range");
    return n.get_ui();
  }

  void dimmatrix(Lexer& lex, const std::string& name, std::size_t name_pos) {
    std::size_t r = count(lex);
    // "3 x 5" or "3 x5"
    const Token& xt = lex.peek();
    std::size_t m = 0;
    if (xt.kind == Tok::Ident && xt.text == "x" && !xt.has_sub) {
      lex.next();
      m = count(lex);
    } else if (xt.kind == Tok::Ident && xt.text.size() > 1 && xt.text[0] == 'x' && !xt.has_sub &&
               std::all_of(xt.text.begin() + 1, xt.text.end(), [](char c) { return std::isdigit(c); })) {
      Integer n(xt.text.substr(1));
      if (n <= 0 || n > 10000) lex.fail("count out of range");
      m = n.get_ui();
      lex.next();
    } else {
      lex.fail("expected 'x' between the row and column counts");
    }
    std::size_t rows_pos = lex.peek().pos;
    if (lex.expect_ident("'rows'") != "rows") lex.fail_at(rows_pos, "expected 'rows'");

    DimensionalModel model;
    model.A = RatMatrix(r, m);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (lex.at_punct(';') || lex.at_end()) lex.fail("row " + std::to_string(i + 1) + " is too short");
        model.A(i, j) = parse_signed_rational(lex);
      }
      if (lex.at_punct(';')) {
        lex.next();
      } else if (!lex.at_end()) {
        lex.fail("row " + std::to_string(i + 1) + " is too long");
      } else if (i + 1 < r) {
        lex.fail("expected " + std::to_string(r) + " rows");
      }
    }
    while (!lex.at_end()) {
      std::size_t pos = lex.peek().pos;
      std::string clause = lex.expect_ident("'derived' or 'fundamental'");
      std::vector<std::string> names;
      auto clause_word = [&] {
        const Token& t = lex.peek();
        return t.kind == Tok::Ident && !t.has_sub && (t.text == "derived" || t.text == "fundamental");
      };
      while (!lex.at_end() && !lex.at_punct(';') && !clause_word()) names.push_back(lex.expect_ident("a name"));
      if (lex.at_punct(';')) lex.next();
      if (clause == "derived") {
        if (names.size() != m) lex.fail_at(pos, "expected " + std::to_string(m) + " derived names");
        model.derived_names = names;
      } else if (clause == "fundamental") {
        if (names.size() != r) lex.fail_at(pos, "expected " + std::to_string(r) + " fundamental names");
        model.fundamental_names = names;
      } else {
        lex.fail_at(pos, "expected 'derived' or 'fundamental'");
      }
    }
    if (model.derived_names.empty())
      for (std::size_t j = 0; j < m; ++j) model.derived_names.push_back("x" + std::to_string(j + 1));
    if (model.fundamental_names.empty())
      for (std::size_t i = 0; i < r; ++i) model.fundamental_names.push_back("z" + std::to_string(i + 1));
    add_named(problem_.dimension_models, name, std::move(model), lex, name_pos);
  }

  Source src_;
  Problem problem_;
};

template <class T>
const T& find_named(const std::vector<Named<T>>& list, const std::string& name, const char* what) {
  for (const auto& n : list)
    if (n.name == name) return n.value;
  throw UnknownSymbol(std::string("no ") + what + " named '" + name + "'");
}

}  // namespace

const DiffSystem& Problem::system(const std::string& name) const { return find_named(systems, name, "system"); }
const VectorField& Problem::vfield(const std::string& name) const {
  return find_named(vfields, name, "vector field");
}
const Expr& Problem::lagrangian(const std::string& name) const {
  return find_named(lagrangians, name, "lagrangian");
}
const std::vector<Expr>& Problem::current(const std::string& name) const {
  return find_named(currents, name, "current");
}
const DimensionalModel& Problem::dimension_model(const std::string& name) const {
  return find_named(dimension_models, name, "dimension matrix");
}

Problem parse_problem(std::string_view text) { return ProblemParser(text).run(); }

Expr parse_expr(std::string_view text, const Context& ctx) {
  Source src(text);
  Lexer lex(src, 0, text.size());
  Expr e = parse_bounded(lex, ctx);
  if (!lex.at_end()) lex.fail("unexpected '" + lex.peek().text + "'");
  return e;
}

}  // namespace liesym
