#include "quartic/linalg.hpp"

#include <utility>

#include "quartic/error.hpp"

namespace quartic {

ExactMatrix::ExactMatrix(const CyclotomicField& field, std::size_t rows, std::size_t cols)
    : field_(&field), rows_(rows), cols_(cols), data_(rows * cols, CycScalar(field)) {}

ExactMatrix ExactMatrix::identity(const CyclotomicField& field, std::size_t n) {
  ExactMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = CycScalar(field, 1);
  return m;
}

ExactMatrix ExactMatrix::from_rows(const CyclotomicField& field, const std::vector<ExactVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorCode::ShapeMismatch, "ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (&rows[r][c].field() != &field) fail(ErrorCode::ConductorMismatch, "matrix entry in another field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

ExactVector ExactMatrix::row(std::size_t r) const {
  return ExactVector(data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_));
}

ExactVector ExactMatrix::column(std::size_t c) const {
  ExactVector out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
  return out;
}

bool ExactMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool ExactMatrix::is_scalar(CycScalar* scalar) const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (r != c && !(*this)(r, c).is_zero()) return false;
    }
  }
  for (std::size_t i = 1; i < rows_; ++i) {
    if ((*this)(i, i) != (*this)(0, 0)) return false;
  }
  if (scalar != nullptr && rows_ > 0) *scalar = (*this)(0, 0);
  return true;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(*field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

ExactMatrix ExactMatrix::scaled(const CycScalar& c) const {
  ExactMatrix out = *this;
  for (auto& x : out.data_) {
    if (!x.is_zero()) x *= c;
  }
  return out;
}

ExactMatrix ExactMatrix::lift(const CyclotomicField& target) const {
  ExactMatrix out(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].lift(target);
  return out;
}

ExactMatrix ExactMatrix::pow(long exponent) const {
  if (!is_square()) fail(ErrorCode::NotSquare, "power of a non-square matrix");
  if (exponent < 0) return inverse().pow(-exponent);
  ExactMatrix result = identity(*field_, rows_);
  ExactMatrix base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

ExactMatrix ExactMatrix::inverse() const {
  if (!is_square()) fail(ErrorCode::NotSquare, "inverse of a non-square matrix");
  const std::size_t n = rows_;
  ExactMatrix aug(*field_, n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
    aug(r, n + r) = CycScalar(*field_, 1);
  }
  RowEchelon ech = rref(std::move(aug));
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1) fail(ErrorCode::NonInvertible, "singular matrix");
  ExactMatrix inv(*field_, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = ech.matrix(r, n + c);
  }
  return inv;
}

ExactMatrix ExactMatrix::projective_canonical() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return x.is_one() ? *this : scaled(x.inverse());
  }
  return *this;
}

std::size_t ExactMatrix::hash() const {
  std::size_t h = rows_ * 31 + cols_;
  for (const auto& x : data_) h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

ExactMatrix mat_action_compose(const ExactMatrix& a, const ExactMatrix& b) {
  if (&a.field() != &b.field()) fail(ErrorCode::ConductorMismatch, "matrix product across fields");
  if (a.cols() != b.rows()) fail(ErrorCode::ShapeMismatch, "matrix product shapes");
  ExactMatrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const CycScalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const CycScalar& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

ExactVector operator*(const ExactMatrix& a, const ExactVector& v) {
  if (a.cols() != v.size()) fail(ErrorCode::ShapeMismatch, "matrix-vector shapes");
  ExactVector out(a.rows(), CycScalar(a.field()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero() || v[k].is_zero()) continue;
      out[i] += a(i, k) * v[k];
    }
  }
  return out;
}

RowEchelon rref(ExactMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pr = row;
    while (pr < m.rows() && m(pr, col).is_zero()) ++pr;
    if (pr == m.rows()) continue;
    if (pr != row) {
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(pr, c), m(row, c));
    }
    if (!m(row, col).is_one()) {
      const CycScalar inv = m(row, col).inverse();
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(row, c) *= inv;
      }
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const CycScalar factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(r, c) -= factor * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  const RowEchelon ech = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<ExactVector> raw;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    ExactVector v(n, CycScalar(m.field()));
    v[free] = CycScalar(m.field(), 1);
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = -ech.matrix(i, free);
    raw.push_back(std::move(v));
  }
  return canonical_span(m.field(), n, raw);
}

std::vector<ExactVector> canonical_span(const CyclotomicField& field, std::size_t dim,
                                        const std::vector<ExactVector>& vectors) {
  if (vectors.empty()) return {};
  ExactMatrix stacked(field, vectors.size(), dim);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != dim) fail(ErrorCode::ShapeMismatch, "vector length");
    for (std::size_t c = 0; c < dim; ++c) stacked(r, c) = vectors[r][c];
  }
  const RowEchelon ech = rref(std::move(stacked));
  std::vector<ExactVector> out;
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) out.push_back(ech.matrix.row(r));
  return out;
}

std::size_t rank(const ExactMatrix& m) { return rref(m).pivots.size(); }

CycScalar determinant(const ExactMatrix& input) {
  if (!input.is_square()) fail(ErrorCode::NotSquare, "determinant of a non-square matrix");
  const std::size_t n = input.rows();
  const auto& field = input.field();
  if (n == 0) return CycScalar(field, 1);
  ExactMatrix m = input;
  CycScalar prev(field, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t pr = k + 1;
      while (pr < n && m(pr, k).is_zero()) ++pr;
      if (pr == n) return CycScalar(field);
      for (std::size_t c = 0; c < n; ++c) std::swap(m(pr, c), m(k, c));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        CycScalar v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        m(i, j) = v.is_zero() ? v : v / prev;
      }
      m(i, k) = CycScalar(field);
    }
    prev = m(k, k);
  }
  CycScalar det = m(n - 1, n - 1);
  return negate ? -det : det;
}

ProjectiveOrder projective_order_and_tau(const ExactMatrix& a, int cap) {
  if (!a.is_square()) fail(ErrorCode::NotSquare, "projective order of a non-square matrix");
  ExactMatrix power = a;
  for (int s = 1; s <= cap; ++s) {
    CycScalar tau(a.field());
    if (power.is_scalar(&tau)) {
      if (tau.is_zero()) fail(ErrorCode::NonInvertible, "matrix is nilpotent");
      if (!root_of_unity_index(tau)) {
        // A root of unity outside the field would still have tau^k = 1 for some k <= cap.
        CycScalar t = tau;
        int k = 1;
        for (; k <= cap && !t.is_one(); ++k) t *= tau;
        if (k > cap) fail(ErrorCode::NotFiniteOrder, "scalar A^sigma is not a root of unity");
      }
      return {s, tau};
    }
    power = power * a;
  }
  fail(ErrorCode::OrderCapExceeded, "projective order exceeds cap " + std::to_string(cap));
}

// ---------------------------------------------------------------------------

ModMatrix::ModMatrix(std::uint64_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ModMatrix ModMatrix::reduce(const ExactMatrix& m, const PrimeEmbedding& e) {
  ModMatrix out(e.p, m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = reduce_mod_prime(m(r, c), e);
  }
  return out;
}

namespace {

// In-place elimination; returns rank and accumulates the determinant when square.
std::size_t eliminate(ModMatrix& m, std::uint64_t* det) {
  const PrimeField f{m.prime()};
  std::uint64_t d = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pr = row;
    while (pr < m.rows() && m(pr, col) == 0) ++pr;
    if (pr == m.rows()) {
      d = 0;
      continue;
    }
    if (pr != row) {
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(pr, c), m(row, c));
      d = f.neg(d);
    }
    const std::uint64_t pivot = m(row, col);
    d = f.mul(d, pivot);
    const std::uint64_t inv = f.inv(pivot);
    for (std::size_t r = row + 1; r < m.rows(); ++r) {
      const std::uint64_t x = m(r, col);
      if (x == 0) continue;
      const std::uint64_t factor = f.mul(x, inv);
      const std::uint64_t neg = f.p - factor;
      std::uint64_t* dst = &m(r, 0);
      const std::uint64_t* src = &m(row, 0);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (src[c] != 0) dst[c] = (dst[c] + neg * src[c]) % f.p;
      }
    }
    ++row;
  }
  if (det != nullptr) *det = row == m.rows() ? d : 0;
  return row;
}

}  // namespace

std::uint64_t determinant(const ModMatrix& input) {
  if (input.rows() != input.cols()) fail(ErrorCode::NotSquare, "determinant of a non-square matrix");
  if (input.rows() == 0) return 1;
  ModMatrix m = input;
  std::uint64_t det = 0;
  eliminate(m, &det);
  return det;
}

std::size_t rank(const ModMatrix& input) {
  ModMatrix m = input;
  return eliminate(m, nullptr);
}

std::vector<std::uint64_t> characteristic_polynomial(const ModMatrix& input) {
  if (input.rows() != input.cols()) fail(ErrorCode::NotSquare, "characteristic polynomial of a non-square matrix");
  const std::size_t n = input.rows();
  const PrimeField f{input.prime()};
  ModMatrix h = input;
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && h(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(j + 1, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, j + 1));
    }
    const std::uint64_t inv = f.inv(h(j + 1, j));
    for (std::size_t r = j + 2; r < n; ++r) {
      const std::uint64_t u = f.mul(h(r, j), inv);
      if (u == 0) continue;
      const std::uint64_t neg = f.p - u;
      for (std::size_t c = j; c < n; ++c) {
        if (h(j + 1, c) != 0) h(r, c) = (h(r, c) + neg * h(j + 1, c)) % f.p;
      }
      for (std::size_t row = 0; row < n; ++row) {
        if (h(row, r) != 0) h(row, j + 1) = (h(row, j + 1) + u * h(row, r)) % f.p;
      }
    }
  }
  // p_k = (x - h_{k-1,k-1}) p_{k-1} - sum_i h_{k-1-i,k-1} (prod of subdiagonal) p_{k-1-i}
  std::vector<std::vector<std::uint64_t>> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::uint64_t> next(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
      next[i + 1] = f.add(next[i + 1], p[k - 1][i]);
      next[i] = f.sub(next[i], f.mul(h(k - 1, k - 1), p[k - 1][i]));
    }
    std::uint64_t t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t = f.mul(t, h(k - i, k - i - 1));
      if (t == 0) break;
      const std::uint64_t c = f.mul(t, h(k - 1 - i, k - 1));
      if (c == 0) continue;
      for (std::size_t m = 0; m < p[k - 1 - i].size(); ++m) next[m] = f.sub(next[m], f.mul(c, p[k - 1 - i][m]));
    }
    p[k] = std::move(next);
  }
  return p[n];
}

}  // namespace quartic
