#include "quartic/modp.hpp"

#include <algorithm>
#include <random>

#include "quartic/error.hpp"

namespace quartic {

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p == 0) fail(ErrorCode::DivisionByZero, "inverse of 0 mod p");
  return pow(a, p - 2);
}

std::uint64_t PrimeField::from_signed(long v) const {
  long r = v % static_cast<long>(p);
  if (r < 0) r += static_cast<long>(p);
  return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::from_mpz(const mpz_class& z) const {
  return mpz_fdiv_ui(z.get_mpz_t(), static_cast<unsigned long>(p));
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

PrimeEmbedding make_prime_embedding(std::uint64_t p, int conductor) {
  if (p >= (1ULL << 31) || !is_prime(p)) fail(ErrorCode::BadPrime, std::to_string(p) + " is not a usable prime");
  if ((p - 1) % static_cast<std::uint64_t>(conductor) != 0) {
    fail(ErrorCode::BadPrime, std::to_string(p) + " is not 1 mod " + std::to_string(conductor));
  }
  PrimeField f{p};
  const auto factors = prime_factors(p - 1);
  std::uint64_t g = 2;
  for (;; ++g) {
    bool primitive = true;
    for (auto q : factors) {
      if (f.pow(g, (p - 1) / q) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) break;
  }
  PrimeEmbedding e;
  e.p = p;
  e.conductor = conductor;
  e.zeta_image = f.pow(g, (p - 1) / static_cast<std::uint64_t>(conductor));
  return e;
}

PrimeEmbedding PrimeEmbedding::restrict_to(int sub_conductor) const {
  if (sub_conductor <= 0 || conductor % sub_conductor != 0) {
    fail(ErrorCode::ConductorMismatch, "conductor " + std::to_string(sub_conductor) + " does not divide " +
                                           std::to_string(conductor));
  }
  PrimeEmbedding out = *this;
  out.conductor = sub_conductor;
  out.zeta_image = field().pow(zeta_image, static_cast<std::uint64_t>(conductor / sub_conductor));
  return out;
}

std::vector<PrimeEmbedding> find_prime_embeddings(int conductor, std::size_t count, std::uint64_t min_prime) {
  std::vector<PrimeEmbedding> out;
  const auto n = static_cast<std::uint64_t>(conductor);
  std::uint64_t p = (min_prime / n + 1) * n + 1;
  for (; out.size() < count; p += n) {
    if (is_prime(p)) out.push_back(make_prime_embedding(p, conductor));
  }
  return out;
}

std::uint64_t reduce_mod_prime(const CycScalar& a, const PrimeEmbedding& e) {
  if (e.conductor % a.conductor() != 0) {
    fail(ErrorCode::ConductorMismatch, "scalar conductor " + std::to_string(a.conductor()) +
                                           " does not divide embedding conductor " + std::to_string(e.conductor));
  }
  const PrimeField f = e.field();
  const std::uint64_t den = f.from_mpz(a.denominator());
  if (den == 0) fail(ErrorCode::BadPrime, "p = " + std::to_string(e.p) + " divides a denominator");
  const std::uint64_t z = f.pow(e.zeta_image, static_cast<std::uint64_t>(e.conductor / a.conductor()));
  std::uint64_t acc = 0;
  std::uint64_t zp = 1;
  for (const auto& c : a.numerators()) {
    if (c != 0) acc = f.add(acc, f.mul(f.from_mpz(c), zp));
    zp = f.mul(zp, z);
  }
  return f.mul(acc, f.inv(den));
}

// ---------------------------------------------------------------------------

namespace fp_poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

std::uint64_t eval(const PrimeField& f, const Poly& a, std::uint64_t x) {
  std::uint64_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
  return acc;
}

Poly mul(const PrimeField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

Poly sub(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = f.sub(out[i], b[i]);
  trim(out);
  return out;
}

void divmod(const PrimeField& f, const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  if (b.empty()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  rem = a;
  trim(rem);
  quot.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, 0);
  const std::uint64_t inv_lead = f.inv(b.back());
  while (!rem.empty() && rem.size() >= b.size()) {
    const std::size_t shift = rem.size() - b.size();
    const std::uint64_t q = f.mul(rem.back(), inv_lead);
    quot[shift] = q;
    for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] = f.sub(rem[shift + i], f.mul(q, b[i]));
    trim(rem);
  }
  trim(quot);
}

Poly mod(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(f, a, b, q, r);
  return r;
}

Poly make_monic(const PrimeField& f, Poly a) {
  trim(a);
  if (a.empty()) return a;
  const std::uint64_t inv_lead = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, inv_lead);
  return a;
}

Poly gcd(const PrimeField& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(f, a);
}

Poly powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& modulus) {
  Poly result{1};
  base = mod(f, base, modulus);
  while (e > 0) {
    if (e & 1) result = mod(f, mul(f, result, base), modulus);
    e >>= 1;
    if (e > 0) base = mod(f, mul(f, base, base), modulus);
  }
  return result;
}

Poly interpolate(const PrimeField& f, std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys) {
  const std::size_t n = xs.size();
  // Newton divided differences.
  std::vector<std::uint64_t> coef(ys.begin(), ys.end());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const std::uint64_t dx = f.sub(xs[i], xs[i - level]);
      if (dx == 0) fail(ErrorCode::InterpolationDegenerate, "repeated interpolation node");
      coef[i] = f.mul(f.sub(coef[i], coef[i - 1]), f.inv(dx));
    }
  }
  Poly result;
  for (std::size_t i = n; i-- > 0;) {
    // result = result * (x - xs[i]) + coef[i]
    Poly next(result.size() + 1, 0);
    for (std::size_t k = 0; k < result.size(); ++k) {
      next[k + 1] = f.add(next[k + 1], result[k]);
      next[k] = f.sub(next[k], f.mul(result[k], xs[i]));
    }
    next[0] = f.add(next[0], coef[i]);
    result = std::move(next);
  }
  trim(result);
  return result;
}

namespace {

// Splits a monic squarefree product of distinct linear factors into its roots.
void split_linear(const PrimeField& f, const Poly& a, std::mt19937_64& rng, std::vector<std::uint64_t>& out) {
  const int deg = degree(a);
  if (deg <= 0) return;
  if (deg == 1) {
    out.push_back(f.neg(f.mul(a[0], f.inv(a[1]))));
    return;
  }
  std::uniform_int_distribution<std::uint64_t> dist(0, f.p - 1);
  for (;;) {
    Poly probe{dist(rng), 1};
    Poly h = powmod(f, probe, (f.p - 1) / 2, a);
    h = sub(f, h, Poly{1});
    Poly g = gcd(f, a, h);
    const int dg = degree(g);
    if (dg > 0 && dg < deg) {
      Poly q, r;
      divmod(f, a, g, q, r);
      split_linear(f, g, rng, out);
      split_linear(f, make_monic(f, q), rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Root> roots(const PrimeField& f, const Poly& input) {
  Poly a = make_monic(f, input);
  if (degree(a) <= 0) return {};
  std::vector<std::uint64_t> values;
  if (a[0] == 0) values.push_back(0);
  // Distinct nonzero roots: gcd(a, x^{p-1} - 1).
  Poly xp = powmod(f, Poly{0, 1}, f.p - 1, a);
  Poly g = gcd(f, a, sub(f, xp, Poly{1}));
  std::mt19937_64 rng(0x5eed);
  split_linear(f, g, rng, values);
  std::sort(values.begin(), values.end());
  std::vector<Root> out;
  for (auto v : values) {
    int mult = 0;
    Poly cur = a;
    Poly lin{f.neg(v), 1};
    for (;;) {
      Poly q, r;
      divmod(f, cur, lin, q, r);
      if (!r.empty()) break;
      ++mult;
      cur = std::move(q);
    }
    out.push_back({v, mult});
  }
  return out;
}

}  // namespace fp_poly

}  // namespace quartic
