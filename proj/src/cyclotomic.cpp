#include "quartic/cyclotomic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "quartic/error.hpp"

namespace quartic {

long gcd_long(long a, long b) {
  a = std::labs(a);
  b = std::labs(b);
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long lcm_long(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return std::labs(a / gcd_long(a, b) * b);
}

long euler_phi(long n) {
  long result = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Exact quotient of integer polynomials (divisor monic up to sign), low degree first.
std::vector<long> poly_exact_div(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  const long lead = den.back();
  std::vector<long> quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    long c = num[k];
    if (c == 0) continue;
    long q = c / lead;
    quot[k - dn] = q;
    for (std::size_t m = 0; m <= dn; ++m) num[k - dn + m] -= q * den[m];
  }
  return quot;
}

}  // namespace

std::vector<long> cyclotomic_polynomial(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "conductor must be >= 1");
  std::vector<long> xn(static_cast<std::size_t>(n) + 1, 0);
  xn[0] = -1;
  xn[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) xn = poly_exact_div(xn, cyclotomic_polynomial(d));
  }
  return xn;
}

// ---------------------------------------------------------------------------

CyclotomicField::CyclotomicField(int conductor)
    : conductor_(conductor),
      degree_(static_cast<int>(euler_phi(conductor))),
      modulus_(cyclotomic_polynomial(conductor)) {
  const auto phi = static_cast<std::size_t>(degree_);
  powers_.reserve(static_cast<std::size_t>(conductor_));
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  for (int j = 0; j < conductor_; ++j) {
    powers_.push_back(cur);
    // multiply by x and reduce
    long top = cur[phi - 1];
    for (std::size_t m = phi - 1; m > 0; --m) cur[m] = cur[m - 1];
    cur[0] = 0;
    if (top != 0) {
      for (std::size_t m = 0; m < phi; ++m) cur[m] -= top * modulus_[m];
    }
  }
}

const CyclotomicField& CyclotomicField::of(int conductor) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CyclotomicField>> cache;
  if (conductor < 1) fail(ErrorCode::InvalidArgument, "conductor must be >= 1");
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(conductor);
  if (it == cache.end()) {
    it = cache.emplace(conductor, std::unique_ptr<CyclotomicField>(new CyclotomicField(conductor))).first;
  }
  return *it->second;
}

const std::vector<long>& CyclotomicField::zeta_power(long j) const {
  long r = j % conductor_;
  if (r < 0) r += conductor_;
  return powers_[static_cast<std::size_t>(r)];
}

const std::vector<CycScalar>& CyclotomicField::roots_of_unity() const {
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  if (roots_ == nullptr) {
    auto* roots = new std::vector<CycScalar>();
    const int w = unit_group_order();
    CycScalar gen = CycScalar::zeta_power(*this, 1);
    if (conductor_ % 2 != 0) gen = -gen;
    CycScalar cur(*this, 1);
    for (int j = 0; j < w; ++j) {
      roots->push_back(cur);
      cur *= gen;
    }
    roots_ = roots;
  }
  return *roots_;
}

// ---------------------------------------------------------------------------

CycScalar::CycScalar() : CycScalar(CyclotomicField::of(1)) {}

CycScalar::CycScalar(const CyclotomicField& field)
    : field_(&field), num_(static_cast<std::size_t>(field.degree())), den_(1) {}

CycScalar::CycScalar(const CyclotomicField& field, const mpq_class& value) : CycScalar(field) {
  num_[0] = value.get_num();
  den_ = value.get_den();
}

CycScalar::CycScalar(const CyclotomicField& field, long value) : CycScalar(field) { num_[0] = value; }

CycScalar CycScalar::from_coeffs(const CyclotomicField& field, const std::vector<mpq_class>& coeffs) {
  mpz_class den = 1;
  for (const auto& c : coeffs) {
    if (c != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  }
  CycScalar out(field);
  out.den_ = den;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    mpz_class scaled = coeffs[j].get_num() * (den / coeffs[j].get_den());
    const auto& pw = field.zeta_power(static_cast<long>(j));
    for (std::size_t m = 0; m < pw.size(); ++m) {
      if (pw[m] != 0) out.num_[m] += scaled * pw[m];
    }
  }
  out.normalize();
  return out;
}

CycScalar CycScalar::zeta_power(const CyclotomicField& field, long j) {
  CycScalar out(field);
  const auto& pw = field.zeta_power(j);
  for (std::size_t m = 0; m < pw.size(); ++m) out.num_[m] = pw[m];
  return out;
}

bool CycScalar::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return c == 0; });
}

bool CycScalar::is_rational() const {
  return std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& c) { return c == 0; });
}

bool CycScalar::is_one() const { return is_rational() && den_ == 1 && num_[0] == 1; }

mpq_class CycScalar::coeff(int j) const {
  mpq_class q(num_[static_cast<std::size_t>(j)], den_);
  q.canonicalize();
  return q;
}

std::vector<mpq_class> CycScalar::coeffs() const {
  std::vector<mpq_class> out;
  out.reserve(num_.size());
  for (int j = 0; j < static_cast<int>(num_.size()); ++j) out.push_back(coeff(j));
  return out;
}

void CycScalar::normalize() {
  if (den_ == 1) return;
  mpz_class g = den_;
  bool any = false;
  for (const auto& c : num_) {
    if (c == 0) continue;
    any = true;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return;
  }
  if (!any) {
    den_ = 1;
    return;
  }
  if (g == 1) return;
  for (auto& c : num_) {
    if (c != 0) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

namespace {

void check_same_field(const CycScalar& a, const CycScalar& b) {
  if (&a.field() != &b.field()) {
    fail(ErrorCode::ConductorMismatch, "conductors " + std::to_string(a.conductor()) + " and " +
                                           std::to_string(b.conductor()));
  }
}

}  // namespace

CycScalar CycScalar::operator-() const {
  CycScalar out = *this;
  for (auto& c : out.num_) c = -c;
  return out;
}

CycScalar& CycScalar::operator+=(const CycScalar& other) {
  check_same_field(*this, other);
  if (other.is_zero()) return *this;
  if (den_ == other.den_) {
    for (std::size_t j = 0; j < num_.size(); ++j) num_[j] += other.num_[j];
  } else {
    for (std::size_t j = 0; j < num_.size(); ++j) {
      num_[j] *= other.den_;
      mpz_addmul(num_[j].get_mpz_t(), other.num_[j].get_mpz_t(), den_.get_mpz_t());
    }
    den_ *= other.den_;
  }
  normalize();
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& other) { return *this += -other; }

void CycScalar::scale_rational(const mpq_class& q) {
  for (auto& c : num_) c *= q.get_num();
  den_ *= q.get_den();
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  normalize();
}

CycScalar operator*(const CycScalar& a, const CycScalar& b) {
  check_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return CycScalar(a.field());
  if (b.is_rational()) {
    CycScalar out = a;
    out.scale_rational(mpq_class(b.num_[0], b.den_));
    return out;
  }
  if (a.is_rational()) {
    CycScalar out = b;
    out.scale_rational(mpq_class(a.num_[0], a.den_));
    return out;
  }
  const std::size_t phi = a.num_.size();
  std::vector<mpz_class> prod(2 * phi - 1);
  for (std::size_t i = 0; i < phi; ++i) {
    if (a.num_[i] == 0) continue;
    for (std::size_t j = 0; j < phi; ++j) {
      if (b.num_[j] == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
  }
  const auto& mod = a.field().modulus();
  for (std::size_t k = 2 * phi - 1; k-- > phi;) {
    if (prod[k] == 0) continue;
    for (std::size_t m = 0; m < phi; ++m) {
      const long c = mod[m];
      if (c > 0) {
        mpz_submul_ui(prod[k - phi + m].get_mpz_t(), prod[k].get_mpz_t(), static_cast<unsigned long>(c));
      } else if (c < 0) {
        mpz_addmul_ui(prod[k - phi + m].get_mpz_t(), prod[k].get_mpz_t(), static_cast<unsigned long>(-c));
      }
    }
  }
  CycScalar out(a.field());
  for (std::size_t j = 0; j < phi; ++j) out.num_[j].swap(prod[j]);
  out.den_ = a.den_ * b.den_;
  out.normalize();
  return out;
}

CycScalar& CycScalar::operator*=(const CycScalar& other) {
  *this = *this * other;
  return *this;
}

CycScalar operator/(const CycScalar& a, const CycScalar& b) {
  check_same_field(a, b);
  return a * b.inverse();
}

CycScalar& CycScalar::operator/=(const CycScalar& other) {
  *this = *this / other;
  return *this;
}

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

void poly_divmod(const QPoly& a, const QPoly& b, QPoly& quot, QPoly& rem) {
  rem = a;
  quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const mpq_class lead = b.back();
  while (!rem.empty() && rem.size() >= b.size()) {
    const std::size_t shift = rem.size() - b.size();
    mpq_class q = rem.back() / lead;
    quot[shift] = q;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= q * b[i];
    rem.back() = 0;
    trim(rem);
  }
  trim(quot);
}

}  // namespace

CycScalar CycScalar::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) {
    mpq_class q(den_, num_[0]);
    q.canonicalize();
    return CycScalar(*field_, q);
  }
  QPoly r0;
  for (long c : field_->modulus()) r0.emplace_back(c);
  QPoly r1 = coeffs();
  trim(r1);
  QPoly s0, s1{mpq_class(1)};
  while (r1.size() > 1) {
    QPoly q, r;
    poly_divmod(r0, r1, q, r);
    QPoly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) fail(ErrorCode::DivisionByZero, "element is a zero divisor");
  const mpq_class c = r1[0];
  for (auto& v : s1) v /= c;
  return from_coeffs(*field_, s1);
}

CycScalar CycScalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  CycScalar result(*field_, 1);
  CycScalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

CycScalar CycScalar::galois(long k) const {
  const long n = field_->conductor();
  if (gcd_long(k, n) != 1) fail(ErrorCode::InvalidArgument, "Galois exponent must be coprime to the conductor");
  CycScalar out(*field_);
  out.den_ = den_;
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    const auto& pw = field_->zeta_power(static_cast<long>(j) * k);
    for (std::size_t m = 0; m < pw.size(); ++m) {
      if (pw[m] != 0) out.num_[m] += num_[j] * pw[m];
    }
  }
  out.normalize();
  return out;
}

CycScalar CycScalar::lift(const CyclotomicField& target) const {
  if (&target == field_) return *this;
  const int n = conductor();
  const int m = target.conductor();
  if (m % n != 0) {
    fail(ErrorCode::ConductorMismatch,
         "cannot lift conductor " + std::to_string(n) + " into " + std::to_string(m));
  }
  const long step = m / n;
  CycScalar out(target);
  out.den_ = den_;
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    const auto& pw = target.zeta_power(static_cast<long>(j) * step);
    for (std::size_t k = 0; k < pw.size(); ++k) {
      if (pw[k] != 0) out.num_[k] += num_[j] * pw[k];
    }
  }
  out.normalize();
  return out;
}

bool operator==(const CycScalar& a, const CycScalar& b) {
  return a.field_ == b.field_ && a.den_ == b.den_ && a.num_ == b.num_;
}

int compare(const CycScalar& a, const CycScalar& b) {
  check_same_field(a, b);
  for (std::size_t j = 0; j < a.num_.size(); ++j) {
    // a_j/da vs b_j/db  <=>  a_j*db vs b_j*da (denominators positive)
    mpz_class lhs = a.num_[j] * b.den_;
    mpz_class rhs = b.num_[j] * a.den_;
    int c = cmp(lhs, rhs);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

namespace {

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 7);
  const std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

std::size_t CycScalar::hash() const {
  std::size_t h = static_cast<std::size_t>(conductor());
  for (const auto& c : num_) h ^= hash_mpz(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= hash_mpz(den_) + (h << 6) + (h >> 2);
  return h;
}

std::string CycScalar::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    mpq_class c(num_[j], den_);
    c.canonicalize();
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << "z";
      if (j > 1) os << "^" << j;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

CycScalar root_of_unity(int conductor, long j) {
  return CycScalar::zeta_power(CyclotomicField::of(conductor), j);
}

namespace {

long legendre(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long result = 1;
  long e = (p - 1) / 2;
  long base = a;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

// m = square^2 * core with core squarefree
void split_square(long m, long& square, long& core) {
  square = 1;
  core = 1;
  for (long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square *= p;
    if (e % 2 == 1) core *= p;
  }
  core *= m;
}

long quadratic_conductor(long core) { return core % 4 == 1 ? core : 4 * core; }

}  // namespace

bool sqrt_in_field(int conductor, long m) {
  if (m <= 0) return false;
  long square, core;
  split_square(m, square, core);
  return conductor % quadratic_conductor(core) == 0;
}

CycScalar sqrt_int(int conductor, long m) {
  if (m <= 0) fail(ErrorCode::InvalidArgument, "sqrt_int expects a positive integer");
  const auto& field = CyclotomicField::of(conductor);
  long square, core;
  split_square(m, square, core);
  if (conductor % quadratic_conductor(core) != 0) {
    fail(ErrorCode::NotInField, "sqrt(" + std::to_string(m) + ") is not in Q(zeta_" + std::to_string(conductor) + ")");
  }
  CycScalar root(field, square);
  if (core == 1) return root;

  long odd = core;
  bool even = false;
  if (odd % 2 == 0) {
    odd /= 2;
    even = true;
  }
  // Product of quadratic Gauss sums g_p, g_p^2 = (-1)^((p-1)/2) p.
  CycScalar value(field, 1);
  long sign = 1;
  long rest = odd;
  for (long p = 3; rest > 1; p += 2) {
    if (rest % p != 0) continue;
    rest /= p;
    CycScalar gauss(field);
    const long step = conductor / p;
    for (long a = 1; a < p; ++a) {
      CycScalar term = CycScalar::zeta_power(field, a * step);
      gauss += legendre(a, p) == 1 ? term : -term;
    }
    value *= gauss;
    if (p % 4 == 3) sign = -sign;
  }
  if (even) {
    const long step = conductor / 8;
    value *= CycScalar::zeta_power(field, step) + CycScalar::zeta_power(field, -step);
  }
  if (sign < 0) value *= CycScalar::zeta_power(field, conductor / 4);
  if (real_part_sign(value) < 0) value = -value;
  return value * root;
}

// ---------------------------------------------------------------------------

namespace {

struct MpfrVar {
  mpfr_t v;
  explicit MpfrVar(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~MpfrVar() { mpfr_clear(v); }
  MpfrVar(const MpfrVar&) = delete;
  MpfrVar& operator=(const MpfrVar&) = delete;
};

// Midpoints and a common error radius for the real and imaginary parts.
void embed_mpfr(const CycScalar& a, mpfr_prec_t prec, mpfr_t re, mpfr_t im, mpfr_t radius) {
  const int n = a.conductor();
  MpfrVar angle(prec), c(prec), s(prec), coef(prec), tmp(prec), absum(prec);
  mpfr_set_zero(re, 1);
  mpfr_set_zero(im, 1);
  mpfr_set_zero(absum.v, 1);
  const auto& num = a.numerators();
  for (std::size_t j = 0; j < num.size(); ++j) {
    if (num[j] == 0) continue;
    mpfr_const_pi(angle.v, MPFR_RNDN);
    mpfr_mul_ui(angle.v, angle.v, 2 * static_cast<unsigned long>(j), MPFR_RNDN);
    mpfr_div_ui(angle.v, angle.v, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_sin_cos(s.v, c.v, angle.v, MPFR_RNDN);
    mpfr_set_z(coef.v, num[j].get_mpz_t(), MPFR_RNDN);
    mpfr_div_z(coef.v, coef.v, a.denominator().get_mpz_t(), MPFR_RNDN);
    mpfr_mul(tmp.v, coef.v, c.v, MPFR_RNDN);
    mpfr_add(re, re, tmp.v, MPFR_RNDN);
    mpfr_mul(tmp.v, coef.v, s.v, MPFR_RNDN);
    mpfr_add(im, im, tmp.v, MPFR_RNDN);
    mpfr_abs(tmp.v, coef.v, MPFR_RNDU);
    mpfr_add(absum.v, absum.v, tmp.v, MPFR_RNDU);
  }
  // Each term carries a few ulps of relative error; bound generously.
  mpfr_add_ui(absum.v, absum.v, 1, MPFR_RNDU);
  mpfr_mul_2si(radius, absum.v, 8 - static_cast<long>(prec), MPFR_RNDU);
}

}  // namespace

ComplexInterval embed_complex(const CycScalar& a, int digits) {
  const auto prec = static_cast<mpfr_prec_t>(std::max(digits, 1) * 3.33 + 32);
  MpfrVar re(prec), im(prec), radius(prec), bound(prec);
  embed_mpfr(a, prec, re.v, im.v, radius.v);
  ComplexInterval out;
  mpfr_sub(bound.v, re.v, radius.v, MPFR_RNDD);
  out.re_lo = mpfr_get_d(bound.v, MPFR_RNDD);
  mpfr_add(bound.v, re.v, radius.v, MPFR_RNDU);
  out.re_hi = mpfr_get_d(bound.v, MPFR_RNDU);
  mpfr_sub(bound.v, im.v, radius.v, MPFR_RNDD);
  out.im_lo = mpfr_get_d(bound.v, MPFR_RNDD);
  mpfr_add(bound.v, im.v, radius.v, MPFR_RNDU);
  out.im_hi = mpfr_get_d(bound.v, MPFR_RNDU);
  return out;
}

int real_part_sign(const CycScalar& a) {
  if ((a + a.conjugate()).is_zero()) return 0;
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    MpfrVar re(prec), im(prec), radius(prec), bound(prec);
    embed_mpfr(a, prec, re.v, im.v, radius.v);
    mpfr_sub(bound.v, re.v, radius.v, MPFR_RNDD);
    if (mpfr_sgn(bound.v) > 0) return 1;
    mpfr_add(bound.v, re.v, radius.v, MPFR_RNDU);
    if (mpfr_sgn(bound.v) < 0) return -1;
  }
}

std::optional<int> root_of_unity_index(const CycScalar& a) {
  if (a.is_zero()) return std::nullopt;
  const auto& roots = a.field().roots_of_unity();
  for (std::size_t j = 0; j < roots.size(); ++j) {
    if (roots[j] == a) return static_cast<int>(j);
  }
  return std::nullopt;
}

std::optional<int> root_of_unity_order(const CycScalar& a) {
  auto idx = root_of_unity_index(a);
  if (!idx) return std::nullopt;
  const int w = a.field().unit_group_order();
  return static_cast<int>(w / gcd_long(w, *idx));
}

}  // namespace quartic
