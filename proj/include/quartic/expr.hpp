#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "quartic/cyclotomic.hpp"

namespace quartic {

enum class TokenKind { Int, Ident, String, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

/// Splits text into tokens. Whitespace and `#` comments are skipped.
std::vector<Token> tokenize(std::string_view text);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == TokenKind::End; }

  bool accept_symbol(std::string_view symbol);
  bool accept_ident(std::string_view ident);
  void expect_symbol(std::string_view symbol);
  void expect_ident(std::string_view ident);
  long expect_int();
  std::string expect_name();
  std::string expect_string();

  [[noreturn]] void error(const std::string& message) const;
  [[noreturn]] static void error_at(const Token& token, const std::string& message);

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

using Exponent = std::vector<int>;

/// Sparse polynomial with exact coefficients; zero coefficients are never stored.
using SparsePoly = std::map<Exponent, CycScalar>;

/// Parses one expression from the stream. `num_vars` is the number of admissible
/// variables x0..x{num_vars-1}; zero allows scalars only.
SparsePoly parse_expression(TokenStream& ts, const CyclotomicField& field, int num_vars);

/// Parses a whole string as a scalar expression over the field.
CycScalar parse_scalar(std::string_view text, const CyclotomicField& field);

/// Parses a whole string as a polynomial in x0..x{num_vars-1}.
SparsePoly parse_polynomial(std::string_view text, const CyclotomicField& field, int num_vars);

}  // namespace quartic
