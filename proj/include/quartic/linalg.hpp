#pragma once

#include <cstdint>
#include <vector>

#include "quartic/cyclotomic.hpp"
#include "quartic/modp.hpp"

namespace quartic {

using ExactVector = std::vector<CycScalar>;

/// Dense matrix over one cyclotomic field, row-major.
class ExactMatrix {
 public:
  ExactMatrix(const CyclotomicField& field, std::size_t rows, std::size_t cols);

  static ExactMatrix identity(const CyclotomicField& field, std::size_t n);
  static ExactMatrix from_rows(const CyclotomicField& field, const std::vector<ExactVector>& rows);

  const CyclotomicField& field() const { return *field_; }
  int conductor() const { return field_->conductor(); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  CycScalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const CycScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ExactVector row(std::size_t r) const;
  ExactVector column(std::size_t c) const;

  bool is_zero() const;
  /// Whether the matrix equals c * identity for some scalar c; writes c.
  bool is_scalar(CycScalar* scalar = nullptr) const;

  ExactMatrix transpose() const;
  ExactMatrix scaled(const CycScalar& c) const;
  ExactMatrix lift(const CyclotomicField& target) const;
  ExactMatrix pow(long exponent) const;
  ExactMatrix inverse() const;

  /// Multiplies by a nonzero scalar so the first nonzero entry (row-major) is 1.
  ExactMatrix projective_canonical() const;

  std::size_t hash() const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator!=(const ExactMatrix& a, const ExactMatrix& b) { return !(a == b); }

 private:
  const CyclotomicField* field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<CycScalar> data_;
};

/// Ordinary matrix product (also the composition of substitutions).
ExactMatrix mat_action_compose(const ExactMatrix& a, const ExactMatrix& b);
inline ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) { return mat_action_compose(a, b); }
ExactVector operator*(const ExactMatrix& a, const ExactVector& v);

struct RowEchelon {
  ExactMatrix matrix;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form, first-nonzero pivoting in column order.
RowEchelon rref(ExactMatrix m);

/// Right null space in canonical form: the rows of the reduced echelon form of the
/// kernel, leading coefficient 1, ordered by pivot column. Empty iff trivial kernel.
std::vector<ExactVector> kernel_basis(const ExactMatrix& m);

/// Canonical basis of the row span of the given vectors (reduced echelon rows).
std::vector<ExactVector> canonical_span(const CyclotomicField& field, std::size_t dim,
                                        const std::vector<ExactVector>& vectors);

std::size_t rank(const ExactMatrix& m);

/// Exact determinant by fraction-free (Bareiss) elimination.
CycScalar determinant(const ExactMatrix& m);

struct ProjectiveOrder {
  int sigma;
  CycScalar tau;
};

inline constexpr int kDefaultOrderCap = 256;

/// Least s >= 1 with A^s = tau * E, and that tau (verified to be a root of unity).
ProjectiveOrder projective_order_and_tau(const ExactMatrix& a, int cap = kDefaultOrderCap);

/// Dense matrix over F_p.
class ModMatrix {
 public:
  ModMatrix(std::uint64_t p, std::size_t rows, std::size_t cols);

  std::uint64_t prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  static ModMatrix reduce(const ExactMatrix& m, const PrimeEmbedding& e);

 private:
  std::uint64_t p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> data_;
};

std::uint64_t determinant(const ModMatrix& m);
std::size_t rank(const ModMatrix& m);

/// det(x I - M) over F_p, constant term first, via reduction to Hessenberg form.
std::vector<std::uint64_t> characteristic_polynomial(const ModMatrix& m);

}  // namespace quartic
