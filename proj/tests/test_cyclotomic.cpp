#include <cmath>

#include "doctest.h"
#include "quartic/cyclotomic.hpp"
#include "quartic/error.hpp"
#include "quartic/modp.hpp"

using namespace quartic;

namespace {

int legendre(long a, long p) {
  long r = 1;
  for (long e = (p - 1) / 2, b = a % p; e > 0; e >>= 1, b = b * b % p) {
    if (e & 1) r = r * b % p;
  }
  return r == 1 ? 1 : -1;
}

// Quadratic Gauss sum: equals sqrt(p) for p = 1 (mod 4).
CycScalar gauss_sum(int p) {
  const auto& field = CyclotomicField::of(p);
  CycScalar s(field);
  for (int a = 1; a < p; ++a) s += CycScalar(field, legendre(a, p)) * CycScalar::zeta_power(field, a);
  return s;
}

}  // namespace

TEST_CASE("cyclotomic polynomials and field degrees") {
  CHECK(cyclotomic_polynomial(8) == std::vector<long>{1, 0, 0, 0, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<long>{1, 1, 1});
  CHECK(cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
  CHECK(euler_phi(120) == 32);
  CHECK(CyclotomicField::of(24).degree() == 8);
  CHECK(CyclotomicField::of(28).degree() == 12);
}

TEST_CASE("products and inverses") {
  const auto& f8 = CyclotomicField::of(8);
  const auto z = root_of_unity(8, 1);
  const auto s = z + root_of_unity(8, 7);
  CHECK(s * s == CycScalar(f8, 2));

  const auto& f24 = CyclotomicField::of(24);
  const auto a = CycScalar(f24, 3) + root_of_unity(24, 1);
  CHECK((a * a.inverse()).is_one());

  const auto w = root_of_unity(24, 8);
  const auto t = CycScalar(f24, 2) * w + CycScalar(f24, 1);
  CHECK(t * t == CycScalar(f24, -3));
  CHECK_THROWS_AS(CycScalar(f24).inverse(), Error);
}

TEST_CASE("roots of unity") {
  const auto w = root_of_unity(24, 8);
  CHECK(w.pow(3).is_one());
  CHECK_FALSE(w.is_one());
  const auto i = root_of_unity(24, 6);
  CHECK(i * i == CycScalar(CyclotomicField::of(24), -1));
  CHECK(root_of_unity(40, 0).is_one());
  CHECK(root_of_unity(8, 9) == root_of_unity(8, 1));

  for (int n : {3, 5, 8, 12, 24, 28, 40, 60, 120}) {
    const auto z = root_of_unity(n, 1);
    // Phi_N(zeta) = 0 and zeta has exact order N.
    const auto phi = cyclotomic_polynomial(n);
    CycScalar v(z.field());
    for (std::size_t k = 0; k < phi.size(); ++k) v += CycScalar(z.field(), phi[k]) * z.pow(static_cast<long>(k));
    CHECK(v.is_zero());
    CHECK(z.pow(n).is_one());
    for (int d = 1; d < n; ++d) {
      if (n % d == 0) CHECK_FALSE(z.pow(d).is_one());
    }
    CHECK(root_of_unity_order(z) == n);
  }
  CHECK(root_of_unity_order(CycScalar(CyclotomicField::of(8), 2)) == std::nullopt);
}

TEST_CASE("square roots") {
  const auto r2 = sqrt_int(8, 2);
  CHECK(r2 == root_of_unity(8, 1) + root_of_unity(8, 7));

  const auto r5 = sqrt_int(5, 5);
  CHECK(r5 == gauss_sum(5));
  const auto z = root_of_unity(5, 1);
  CHECK(r5 == z - z.pow(2) - z.pow(3) + z.pow(4));
  CHECK(r5 * r5 == CycScalar(r5.field(), 5));
  CHECK(std::fabs(embed_complex(r5).re() - 2.2360679) < 1e-7);
  CHECK(sqrt_int(13, 13) == gauss_sum(13));

  CHECK_THROWS_WITH_AS(sqrt_int(8, 3), doctest::Contains("NotInField"), Error);
  CHECK_FALSE(sqrt_in_field(8, 3));
  CHECK(sqrt_in_field(24, 6));

  for (auto [n, m] : std::vector<std::pair<int, long>>{{8, 2}, {12, 3}, {24, 6}, {28, 7}, {60, 15}, {120, 10}, {40, 5}}) {
    const auto r = sqrt_int(n, m);
    CHECK(r * r == CycScalar(r.field(), m));
    const auto box = embed_complex(r);
    CHECK(box.re_lo > 0);
    CHECK(box.contains(std::sqrt(static_cast<double>(m)), 0.0));
  }
}

TEST_CASE("complex embedding") {
  CHECK(embed_complex(root_of_unity(4, 1)).contains(0.0, 1.0));
  CHECK(embed_complex(sqrt_int(8, 2)).contains(1.41421356237309505, 0.0));
  CHECK(embed_complex(CycScalar(CyclotomicField::of(8))).contains(0.0, 0.0));
  const auto a = CycScalar(CyclotomicField::of(24), 3) + root_of_unity(24, 5);
  const auto b = sqrt_int(24, 3) - root_of_unity(24, 7);
  const auto ea = embed_complex(a), eb = embed_complex(b), eab = embed_complex(a * b);
  const double re = ea.re() * eb.re() - ea.im() * eb.im();
  const double im = ea.re() * eb.im() + ea.im() * eb.re();
  CHECK(std::fabs(eab.re() - re) < 1e-12);
  CHECK(std::fabs(eab.im() - im) < 1e-12);
  CHECK(real_part_sign(sqrt_int(24, 3) - CycScalar(CyclotomicField::of(24), 2)) < 0);
}

TEST_CASE("galois action and lifting") {
  const auto z = root_of_unity(8, 1);
  CHECK(z.conjugate() == root_of_unity(8, 7));
  CHECK(sqrt_int(8, 2).galois(3) == -sqrt_int(8, 2));
  const auto& f24 = CyclotomicField::of(24);
  CHECK(z.lift(f24) == root_of_unity(24, 3));
  CHECK_THROWS_AS(z.lift(CyclotomicField::of(12)), Error);
}

TEST_CASE("reduction modulo primes") {
  const auto embeddings = find_prime_embeddings(24, 3);
  REQUIRE(embeddings.size() == 3);
  for (const auto& e : embeddings) {
    CHECK(e.p > kDefaultMinPrime);
    CHECK(e.p % 24 == 1);
    const PrimeField f = e.field();
    CHECK(reduce_mod_prime(CycScalar(CyclotomicField::of(24), 1), e) == 1);
    const auto r = reduce_mod_prime(sqrt_int(24, 2), e);
    CHECK(f.mul(r, r) == 2);
    CHECK(reduce_mod_prime(root_of_unity(8, 1), e.restrict_to(8)) == f.pow(e.zeta_image, 3));
    CHECK(reduce_mod_prime(CycScalar(CyclotomicField::of(24), mpq_class(1, 3)), e) == f.inv(3));
  }
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(1000033));
  CHECK_THROWS_AS(make_prime_embedding(1000003, 24), Error);
}

TEST_CASE("polynomials over F_p") {
  const PrimeField f{1000033};
  // (x - 2)^2 (x - 5)
  fp_poly::Poly a{f.neg(20), 24, f.neg(9), 1};
  const auto roots = fp_poly::roots(f, a);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].value == 2);
  CHECK(roots[0].multiplicity == 2);
  CHECK(roots[1].value == 5);
  CHECK(roots[1].multiplicity == 1);
  const std::vector<std::uint64_t> xs{1, 2, 3, 4}, ys{fp_poly::eval(f, a, 1), fp_poly::eval(f, a, 2),
                                                    fp_poly::eval(f, a, 3), fp_poly::eval(f, a, 4)};
  CHECK(fp_poly::interpolate(f, xs, ys) == a);
  CHECK(fp_poly::roots(PrimeField{1000003}, fp_poly::Poly{1, 0, 1}).empty());
}
