#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quartic/expr.hpp"
#include "quartic/linalg.hpp"

namespace quartic {

/// Monomials of degree d in n+1 variables, graded-lex with x0 greatest.
/// Index 0 is x0^d. Instances are interned and never destroyed.
class MonomialBasis {
 public:
  static const MonomialBasis& of(int n_plus_1, int d);

  int variables() const { return variables_; }
  int degree() const { return degree_; }
  std::size_t size() const { return exponents_.size(); }
  const Exponent& exponent(std::size_t i) const { return exponents_[i]; }
  const std::vector<Exponent>& exponents() const { return exponents_; }

  /// Index of an exponent vector of this degree; nullopt if it is not one.
  std::optional<std::size_t> find(const Exponent& e) const;
  std::size_t index(const Exponent& e) const;

  /// "x0^2*x1" style text; "1" for the empty monomial.
  std::string monomial_string(std::size_t i) const;

  MonomialBasis(const MonomialBasis&) = delete;
  MonomialBasis& operator=(const MonomialBasis&) = delete;

 private:
  MonomialBasis(int n_plus_1, int d);

  int variables_;
  int degree_;
  std::vector<Exponent> exponents_;
  std::map<Exponent, std::size_t> index_;
};

inline const MonomialBasis& monomial_basis(int n_plus_1, int d) { return MonomialBasis::of(n_plus_1, d); }

/// Homogeneous form with exact coefficients; only nonzero coefficients are stored.
class Form {
 public:
  Form(const MonomialBasis& basis, const CyclotomicField& field);

  static Form from_poly(const SparsePoly& poly, const CyclotomicField& field, int n_plus_1,
                        std::optional<int> degree = std::nullopt);
  static Form parse(std::string_view text, const CyclotomicField& field, int n_plus_1 = 4,
                    std::optional<int> degree = std::nullopt);
  static Form from_vector(const MonomialBasis& basis, const ExactVector& coords);
  static Form monomial(const MonomialBasis& basis, const CyclotomicField& field, std::size_t index,
                       const CycScalar& coeff);

  const MonomialBasis& basis() const { return *basis_; }
  const CyclotomicField& field() const { return *field_; }
  int conductor() const { return field_->conductor(); }
  int variables() const { return basis_->variables(); }
  int degree() const { return basis_->degree(); }

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<std::size_t, CycScalar>& terms() const { return coeffs_; }
  CycScalar coeff(std::size_t index) const;
  CycScalar coeff(const Exponent& e) const;
  void set(std::size_t index, const CycScalar& c);
  void add_to(std::size_t index, const CycScalar& c);

  ExactVector to_vector() const;

  Form operator-() const;
  Form& operator+=(const Form& other);
  Form& operator-=(const Form& other);
  Form& operator*=(const CycScalar& c);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const CycScalar& c) { return a *= c; }
  friend Form operator*(const CycScalar& c, Form a) { return a *= c; }
  friend Form operator*(const Form& a, const Form& b);
  friend bool operator==(const Form& a, const Form& b);
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  Form lift(const CyclotomicField& target) const;
  Form derivative(int variable) const;
  CycScalar evaluate(const ExactVector& point) const;

  /// First nonzero coefficient in basis order, scaled to 1.
  Form normalized() const;

  /// Expression text in the form grammar, monomials in basis order.
  std::string to_string() const;

 private:
  void check_compatible(const Form& other) const;

  const MonomialBasis* basis_;
  const CyclotomicField* field_;
  std::map<std::size_t, CycScalar> coeffs_;
};

/// (A f)(x) = f(A x).
Form act(const ExactMatrix& a, const Form& f);

/// Matrix of f -> act(A, f) on degree-d forms: column j is the image of basis monomial j.
ExactMatrix substitution_matrix(const ExactMatrix& a, int d);

/// Matrix of f -> act(A, f) - kj f.
ExactMatrix operator_matrix_B(const ExactMatrix& a, const CycScalar& kj, int d);

/// lambda with act(A, f) = lambda f, or nullopt. Throws ZeroForm for f = 0.
std::optional<CycScalar> projective_invariance_factor(const ExactMatrix& a, const Form& f);

/// Whether g = c f for some nonzero scalar c (both nonzero), or both are zero.
bool proportional(const Form& f, const Form& g);

/// Coefficients reduced into F_p, indexed by the form's basis.
std::vector<std::uint64_t> reduce_form(const Form& f, const PrimeEmbedding& e);

}  // namespace quartic
