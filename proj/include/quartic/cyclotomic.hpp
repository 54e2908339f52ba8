#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace quartic {

long euler_phi(long n);
long gcd_long(long a, long b);
long lcm_long(long a, long b);

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<long> cyclotomic_polynomial(int n);

class CycScalar;

/// Q(zeta_N) presented as Q[x]/Phi_N. Instances are interned per conductor and
/// live for the whole process, so scalars can hold plain pointers to them.
class CyclotomicField {
 public:
  static const CyclotomicField& of(int conductor);

  int conductor() const { return conductor_; }
  int degree() const { return degree_; }
  const std::vector<long>& modulus() const { return modulus_; }

  /// x^j mod Phi_N as an integer coefficient vector of length degree(); j is taken mod N.
  const std::vector<long>& zeta_power(long j) const;

  /// Order of the group of roots of unity in the field: lcm(2, N).
  int unit_group_order() const { return conductor_ % 2 == 0 ? conductor_ : 2 * conductor_; }

  /// All roots of unity w^0 .. w^{W-1} for the generator w (zeta_N, or -zeta_N for odd N).
  const std::vector<CycScalar>& roots_of_unity() const;

  CyclotomicField(const CyclotomicField&) = delete;
  CyclotomicField& operator=(const CyclotomicField&) = delete;

 private:
  explicit CyclotomicField(int conductor);

  int conductor_;
  int degree_;
  std::vector<long> modulus_;
  std::vector<std::vector<long>> powers_;
  mutable std::vector<CycScalar>* roots_ = nullptr;
};

/// Exact element of Q(zeta_N): integer numerators over a common positive denominator,
/// in the power basis 1, zeta, ..., zeta^{phi(N)-1}. Always kept reduced.
class CycScalar {
 public:
  CycScalar();
  explicit CycScalar(const CyclotomicField& field);
  CycScalar(const CyclotomicField& field, const mpq_class& value);
  CycScalar(const CyclotomicField& field, long value);

  /// Builds sum coeffs[j] * zeta^j; longer inputs are reduced modulo Phi_N.
  static CycScalar from_coeffs(const CyclotomicField& field, const std::vector<mpq_class>& coeffs);
  static CycScalar zeta_power(const CyclotomicField& field, long j);

  const CyclotomicField& field() const { return *field_; }
  int conductor() const { return field_->conductor(); }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;

  mpq_class coeff(int j) const;
  std::vector<mpq_class> coeffs() const;
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  CycScalar operator-() const;
  CycScalar& operator+=(const CycScalar& other);
  CycScalar& operator-=(const CycScalar& other);
  CycScalar& operator*=(const CycScalar& other);
  CycScalar& operator/=(const CycScalar& other);
  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(const CycScalar& a, const CycScalar& b);
  friend CycScalar operator/(const CycScalar& a, const CycScalar& b);

  CycScalar inverse() const;
  CycScalar pow(long exponent) const;

  /// The Galois automorphism zeta -> zeta^k (gcd(k, N) = 1).
  CycScalar galois(long k) const;
  /// Complex conjugation under the canonical embedding.
  CycScalar conjugate() const { return galois(-1); }

  /// Image under Q(zeta_N) -> Q(zeta_M), zeta_N -> zeta_M^{M/N}; requires N | M.
  CycScalar lift(const CyclotomicField& target) const;

  friend bool operator==(const CycScalar& a, const CycScalar& b);
  friend bool operator!=(const CycScalar& a, const CycScalar& b) { return !(a == b); }

  /// Lexicographic order on the rational coefficient vectors.
  friend int compare(const CycScalar& a, const CycScalar& b);

  std::size_t hash() const;

  /// Expression text in the registry grammar, e.g. "1/2 - 3*z^2".
  std::string to_string() const;

 private:
  void normalize();
  void scale_rational(const mpq_class& q);

  const CyclotomicField* field_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

struct CycScalarHash {
  std::size_t operator()(const CycScalar& a) const { return a.hash(); }
};

/// zeta_N^j.
CycScalar root_of_unity(int conductor, long j);

/// The square root of m that is real and positive under zeta_N -> exp(2 pi i / N).
/// Throws NotInField when Q(sqrt m) is not a subfield of Q(zeta_N).
CycScalar sqrt_int(int conductor, long m);

/// Whether sqrt(m) lies in Q(zeta_N).
bool sqrt_in_field(int conductor, long m);

struct ComplexInterval {
  double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;

  double re() const { return 0.5 * (re_lo + re_hi); }
  double im() const { return 0.5 * (im_lo + im_hi); }
  bool contains(double re_value, double im_value) const {
    return re_lo <= re_value && re_value <= re_hi && im_lo <= im_value && im_value <= im_hi;
  }
};

/// Encloses the complex value of `a` under zeta_N -> exp(2 pi i / N). The bounds are
/// rounded outward, so they stay valid even though doubles carry fewer digits.
ComplexInterval embed_complex(const CycScalar& a, int digits = 30);

/// Sign of the real part under the canonical embedding; exact zero test first,
/// then interval evaluation with increasing precision.
int real_part_sign(const CycScalar& a);

/// If `a` is a root of unity, the exponent j with a = w^j for the generator w of
/// CyclotomicField::roots_of_unity().
std::optional<int> root_of_unity_index(const CycScalar& a);

/// Multiplicative order of a root of unity, or nullopt if `a` is not one.
std::optional<int> root_of_unity_order(const CycScalar& a);

}  // namespace quartic
