#include "quartic/expr.hpp"

#include <cctype>
#include <utility>

#include "quartic/error.hpp"

namespace quartic {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = column;
    std::size_t j = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = TokenKind::Int;
      if (j < text.size() && (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
        tok.kind = TokenKind::Ident;
      }
      tok.text = std::string(text.substr(i, j - i));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      tok.kind = TokenKind::Ident;
      tok.text = std::string(text.substr(i, j - i));
    } else if (c == '"') {
      ++j;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"') {
        fail(ErrorCode::SyntaxError,
             "line " + std::to_string(line) + ", column " + std::to_string(column) + ": unterminated string");
      }
      tok.kind = TokenKind::String;
      tok.text = std::string(text.substr(i + 1, j - i - 1));
      ++j;
    } else if (std::string_view("+-*/^(),;{}").find(c) != std::string_view::npos) {
      tok.kind = TokenKind::Symbol;
      tok.text = std::string(1, c);
      j = i + 1;
    } else {
      fail(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                       ": unexpected character '" + std::string(1, c) + "'");
    }
    advance(j - i);
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = TokenKind::End;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

TokenStream::TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty() || tokens_.back().kind != TokenKind::End) tokens_.push_back(Token{});
}

const Token& TokenStream::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

bool TokenStream::accept_symbol(std::string_view symbol) {
  if (peek().kind == TokenKind::Symbol && peek().text == symbol) {
    next();
    return true;
  }
  return false;
}

bool TokenStream::accept_ident(std::string_view ident) {
  if (peek().kind == TokenKind::Ident && peek().text == ident) {
    next();
    return true;
  }
  return false;
}

namespace {

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::End:
      return "end of input";
    case TokenKind::String:
      return "string \"" + t.text + "\"";
    default:
      return "'" + t.text + "'";
  }
}

}  // namespace

void TokenStream::expect_symbol(std::string_view symbol) {
  if (!accept_symbol(symbol)) error("expected '" + std::string(symbol) + "', found " + describe(peek()));
}

void TokenStream::expect_ident(std::string_view ident) {
  if (!accept_ident(ident)) error("expected '" + std::string(ident) + "', found " + describe(peek()));
}

long TokenStream::expect_int() {
  const bool negative = accept_symbol("-");
  if (peek().kind != TokenKind::Int) error("expected an integer, found " + describe(peek()));
  const Token t = next();
  if (t.text.size() > 18) error_at(t, "integer too large");
  const long v = std::stol(t.text);
  return negative ? -v : v;
}

std::string TokenStream::expect_name() {
  if (peek().kind != TokenKind::Ident && peek().kind != TokenKind::Int) {
    error("expected a name, found " + describe(peek()));
  }
  return next().text;
}

std::string TokenStream::expect_string() {
  if (peek().kind != TokenKind::String) error("expected a string, found " + describe(peek()));
  return next().text;
}

void TokenStream::error(const std::string& message) const { error_at(peek(), message); }

void TokenStream::error_at(const Token& token, const std::string& message) {
  fail(ErrorCode::SyntaxError,
       "line " + std::to_string(token.line) + ", column " + std::to_string(token.column) + ": " + message);
}

// ---------------------------------------------------------------------------

namespace {

void add_term(SparsePoly& p, const Exponent& e, const CycScalar& c) {
  if (c.is_zero()) return;
  auto it = p.find(e);
  if (it == p.end()) {
    p.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) p.erase(it);
}

SparsePoly constant(const CycScalar& c, int num_vars) {
  SparsePoly p;
  add_term(p, Exponent(static_cast<std::size_t>(num_vars), 0), c);
  return p;
}

SparsePoly add(SparsePoly a, const SparsePoly& b, bool subtract) {
  for (const auto& [e, c] : b) add_term(a, e, subtract ? -c : c);
  return a;
}

SparsePoly multiply(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exponent e = ea;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      add_term(out, e, ca * cb);
    }
  }
  return out;
}

bool is_constant(const SparsePoly& p) {
  if (p.empty()) return true;
  if (p.size() > 1) return false;
  for (int v : p.begin()->first) {
    if (v != 0) return false;
  }
  return true;
}

class Parser {
 public:
  Parser(TokenStream& ts, const CyclotomicField& field, int num_vars)
      : ts_(ts), field_(field), num_vars_(num_vars) {}

  SparsePoly expr() {
    SparsePoly acc = term();
    for (;;) {
      if (ts_.accept_symbol("+")) {
        acc = add(std::move(acc), term(), false);
      } else if (ts_.accept_symbol("-")) {
        acc = add(std::move(acc), term(), true);
      } else {
        return acc;
      }
    }
  }

 private:
  SparsePoly term() {
    SparsePoly acc = factor();
    for (;;) {
      if (ts_.accept_symbol("*")) {
        acc = multiply(acc, factor());
      } else if (ts_.peek().kind == TokenKind::Symbol && ts_.peek().text == "/") {
        const Token slash = ts_.next();
        SparsePoly den = factor();
        if (!is_constant(den)) TokenStream::error_at(slash, "division by a non-constant expression");
        if (den.empty()) fail(ErrorCode::DivisionByZero, "line " + std::to_string(slash.line) + ", column " +
                                                             std::to_string(slash.column) + ": division by zero");
        const CycScalar inv = den.begin()->second.inverse();
        for (auto& [e, c] : acc) c *= inv;
      } else {
        return acc;
      }
    }
  }

  // Unary minus binds looser than '^', so -z^2 means -(z^2).
  SparsePoly factor() {
    if (ts_.accept_symbol("-")) {
      SparsePoly p = factor();
      for (auto& [e, c] : p) c = -c;
      return p;
    }
    SparsePoly b = base();
    if (ts_.peek().kind == TokenKind::Symbol && ts_.peek().text == "^") {
      const Token caret = ts_.next();
      const long k = ts_.expect_int();
      if (k < 0) {
        if (!is_constant(b)) TokenStream::error_at(caret, "negative power of a non-constant expression");
        if (b.empty()) fail(ErrorCode::DivisionByZero, "negative power of zero");
        return constant(b.begin()->second.pow(k), num_vars_);
      }
      if (is_constant(b)) {
        if (b.empty()) return k == 0 ? constant(CycScalar(field_, 1), num_vars_) : b;
        return constant(b.begin()->second.pow(k), num_vars_);
      }
      if (k > 64) TokenStream::error_at(caret, "exponent too large");
      SparsePoly out = constant(CycScalar(field_, 1), num_vars_);
      for (long i = 0; i < k; ++i) out = multiply(out, b);
      return out;
    }
    return b;
  }

  SparsePoly base() {
    const Token t = ts_.peek();
    if (t.kind == TokenKind::Int) {
      ts_.next();
      return constant(CycScalar(field_, mpq_class(mpz_class(t.text))), num_vars_);
    }
    if (ts_.accept_symbol("(")) {
      SparsePoly inner = expr();
      ts_.expect_symbol(")");
      return inner;
    }
    if (t.kind == TokenKind::Ident) {
      ts_.next();
      if (t.text == "z") return constant(CycScalar::zeta_power(field_, 1), num_vars_);
      if (t.text == "sqrt") {
        ts_.expect_symbol("(");
        const Token arg = ts_.peek();
        const long m = ts_.expect_int();
        ts_.expect_symbol(")");
        if (m <= 0) TokenStream::error_at(arg, "sqrt expects a positive integer");
        if (!sqrt_in_field(field_.conductor(), m)) {
          fail(ErrorCode::NotInField, "line " + std::to_string(arg.line) + ", column " + std::to_string(arg.column) +
                                          ": sqrt(" + std::to_string(m) + ") is not in Q(zeta_" +
                                          std::to_string(field_.conductor()) + ")");
        }
        return constant(sqrt_int(field_.conductor(), m), num_vars_);
      }
      if (t.text.size() >= 2 && t.text[0] == 'x') {
        bool digits = true;
        for (std::size_t k = 1; k < t.text.size(); ++k) digits = digits && std::isdigit(static_cast<unsigned char>(t.text[k]));
        if (digits && t.text.size() < 6) {
          const int v = std::stoi(t.text.substr(1));
          if (v >= num_vars_) TokenStream::error_at(t, "variable " + t.text + " is out of range");
          Exponent e(static_cast<std::size_t>(num_vars_), 0);
          e[static_cast<std::size_t>(v)] = 1;
          SparsePoly p;
          p.emplace(e, CycScalar(field_, 1));
          return p;
        }
      }
      TokenStream::error_at(t, "unknown identifier '" + t.text + "'");
    }
    ts_.error("expected an expression, found " + describe(t));
  }

  TokenStream& ts_;
  const CyclotomicField& field_;
  int num_vars_;
};

}  // namespace

SparsePoly parse_expression(TokenStream& ts, const CyclotomicField& field, int num_vars) {
  return Parser(ts, field, num_vars).expr();
}

CycScalar parse_scalar(std::string_view text, const CyclotomicField& field) {
  TokenStream ts(tokenize(text));
  SparsePoly p = parse_expression(ts, field, 0);
  if (!ts.at_end()) ts.error("unexpected " + describe(ts.peek()));
  return p.empty() ? CycScalar(field) : p.begin()->second;
}

SparsePoly parse_polynomial(std::string_view text, const CyclotomicField& field, int num_vars) {
  TokenStream ts(tokenize(text));
  SparsePoly p = parse_expression(ts, field, num_vars);
  if (!ts.at_end()) ts.error("unexpected " + describe(ts.peek()));
  return p;
}

}  // namespace quartic
