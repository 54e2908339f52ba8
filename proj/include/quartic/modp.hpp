#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "quartic/cyclotomic.hpp"

namespace quartic {

/// Arithmetic in F_p for primes below 2^31 (products fit in 64 bits).
struct PrimeField {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p - a; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t from_signed(long v) const;
  std::uint64_t from_mpz(const mpz_class& z) const;
};

bool is_prime(std::uint64_t n);

/// Ring homomorphism Z[zeta_N] -> F_p with zeta_N -> zeta_image of exact order N.
struct PrimeEmbedding {
  std::uint64_t p = 0;
  int conductor = 1;
  std::uint64_t zeta_image = 1;

  PrimeField field() const { return PrimeField{p}; }

  /// Embedding for a subfield Q(zeta_M), M | N, compatible with this one.
  PrimeEmbedding restrict_to(int sub_conductor) const;
};

/// Builds the embedding for p = 1 (mod N) using the least primitive root g and
/// zeta_image = g^{(p-1)/N}.
PrimeEmbedding make_prime_embedding(std::uint64_t p, int conductor);

inline constexpr std::uint64_t kDefaultMinPrime = 1000000;

/// The `count` smallest primes p = 1 (mod N) with p > min_prime.
std::vector<PrimeEmbedding> find_prime_embeddings(int conductor, std::size_t count,
                                                  std::uint64_t min_prime = kDefaultMinPrime);

/// Image of a scalar in F_p; the scalar's conductor must divide the embedding's.
/// Throws BadPrime when p divides the denominator.
std::uint64_t reduce_mod_prime(const CycScalar& a, const PrimeEmbedding& e);

/// Dense polynomials over F_p, constant term first, no trailing zeros.
namespace fp_poly {

using Poly = std::vector<std::uint64_t>;

void trim(Poly& a);
int degree(const Poly& a);
std::uint64_t eval(const PrimeField& f, const Poly& a, std::uint64_t x);
Poly mul(const PrimeField& f, const Poly& a, const Poly& b);
Poly sub(const PrimeField& f, const Poly& a, const Poly& b);
void divmod(const PrimeField& f, const Poly& a, const Poly& b, Poly& quot, Poly& rem);
Poly mod(const PrimeField& f, const Poly& a, const Poly& b);
Poly gcd(const PrimeField& f, Poly a, Poly b);
Poly make_monic(const PrimeField& f, Poly a);
Poly powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& modulus);

/// Lagrange interpolation through (xs[i], ys[i]) with distinct xs.
Poly interpolate(const PrimeField& f, std::span<const std::uint64_t> xs, std::span<const std::uint64_t> ys);

struct Root {
  std::uint64_t value;
  int multiplicity;
};

/// All roots in F_p with multiplicities, ascending by value. Deterministic.
std::vector<Root> roots(const PrimeField& f, const Poly& a);

}  // namespace fp_poly

}  // namespace quartic
