#include <tuple>

#include "doctest.h"
#include "quartic/error.hpp"
#include "quartic/smoothness.hpp"

using namespace quartic;

namespace {

const CyclotomicField& q() { return CyclotomicField::of(1); }

Form fermat() { return Form::parse("x0^4 + x1^4 + x2^4 + x3^4", q()); }

}  // namespace

TEST_CASE("MSC witnesses") {
  const auto i1 = Form::parse("x1^2*x2^2 + x0^2*x3^2 - 2*x0*x1*x2*x3", q());
  const auto w = msc_test(i1);
  REQUIRE(w.has_value());
  CHECK(w->a() == 0);
  CHECK(w->quadratic == std::vector<int>{0, 1});
  CHECK(msc_holds(i1, *w));

  CHECK_FALSE(msc_test(fermat()).has_value());

  const auto q11a = Form::parse("x1^4+4*x2*x3*x1^2+4*x2^2*x3^2", q());
  const auto q11b = Form::parse("x1^2*x0^2+2*x2*x3*x0^2", q());
  const auto q11c = Form::parse("x0^4", q());
  for (auto [a, b, c] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {2, -3, 5}, {0, 1, 7}, {-4, 0, 1}}) {
    const Form f = CycScalar(q(), a) * q11a + CycScalar(q(), b) * q11b + CycScalar(q(), c) * q11c;
    const auto wf = msc_test(f);
    REQUIRE(wf.has_value());
    CHECK(msc_holds(f, *wf));
    CHECK(2 * wf->a() + wf->b() <= 3);
  }

  // No x_0^3 x_j term at all.
  const auto missing = Form::parse("x1^4 + x2^4 + x3^4 + x0^2*x1*x2", q());
  const auto wm = msc_test(missing);
  REQUIRE(wm.has_value());
  CHECK(msc_holds(missing, *wm));
  MSCWitness bogus;
  bogus.linear = {0};
  CHECK_FALSE(msc_holds(fermat(), bogus));
}

TEST_CASE("singular points") {
  const auto& f8 = CyclotomicField::of(8);
  const auto sq = Form::parse("(x1*x2 - x0*x3)^2", q());
  CHECK(singular_point_check(sq, {CycScalar(q(), 1), CycScalar(q()), CycScalar(q()), CycScalar(q())}));
  CHECK_FALSE(singular_point_check(fermat(), {CycScalar(f8, 1), root_of_unity(8, 1), CycScalar(f8), CycScalar(f8)}));
  CHECK(singular_point_check(Form::parse("x0^4", q()), {CycScalar(q()), CycScalar(q(), 1), CycScalar(q()), CycScalar(q())}));
  CHECK_THROWS_WITH_AS(singular_point_check(fermat(), ExactVector(4, CycScalar(q()))), doctest::Contains("ZeroPoint"),
                       Error);
  const auto found = find_singular_point(sq, nullptr, 4096);
  REQUIRE(found.has_value());
  CHECK(singular_point_check(sq, *found));
  CHECK_FALSE(find_singular_point(fermat(), nullptr, 4096).has_value());
}

TEST_CASE("Macaulay layout") {
  const auto& layout = MacaulayLayout::of(4, 4);
  CHECK(layout.critical_degree == 9);
  CHECK(layout.columns->size() == 220);
  CHECK(layout.nonreduced.size() == 112);
  CHECK(discriminant_degree(4, 4) == 108);
  CHECK(discriminant_degree(3, 3) == 12);
}

TEST_CASE("discriminant modulo p") {
  const auto phi = Form::parse("(x0^4 + x1^4 + x2^4 + x3^4)/4", q());
  const auto sq = Form::parse("(x1*x2 - x0*x3)^2", q());
  for (const auto& e : find_prime_embeddings(8, 3)) {
    const PrimeField f = e.field();
    CHECK(macaulay_disc_mod_p(phi, e) == 1);
    CHECK(macaulay_disc_mod_p(sq, e) == 0);
    CHECK(macaulay_disc_mod_p(fermat(), e) == f.pow(4, 108));
    CHECK(macaulay_disc_mod_p(Form::parse("x1^2*x2^2 + x0^2*x3^2 - 2*x0*x1*x2*x3 + x0^3*x1", q()), e) == 0);
  }
  CHECK_THROWS_WITH_AS(macaulay_disc_mod_p(phi, make_prime_embedding(2, 1)), doctest::Contains("BadPrime"), Error);
  const auto third = Form::parse("x0^4/1000037 + x1^4 + x2^4 + x3^4", q());
  CHECK_THROWS_AS(macaulay_disc_mod_p(third, make_prime_embedding(1000037, 1)), Error);
}

TEST_CASE("verdicts") {
  const auto& f8 = CyclotomicField::of(8);
  const auto k = Form::parse("x0^4+x1^4+x2^4+x3^4+6*(x0^2*x1^2-x2^2*x1^2+x3^2*x1^2+x0^2*x2^2-x0^2*x3^2+x2^2*x3^2)", f8);
  const auto vk = smoothness_verdict(k);
  CHECK(vk.kind == VerdictKind::Smooth);
  CHECK(vk.disc_mod_p != 0);
  CHECK(recheck_verdict(k, vk));
  // A second independent prime also certifies.
  const auto primes = good_primes(k, 2);
  REQUIRE(primes.size() == 2);
  CHECK(macaulay_disc_mod_p(k, primes[1]) != 0);

  const auto& f28 = CyclotomicField::of(28);
  const auto qf = Form::parse("2*x0^4 + 6*x0*x1*x2*x3 + x1*x3^3 + x1^3*x2 + x2^3*x3", f28);
  CHECK(smoothness_verdict(qf).kind == VerdictKind::Smooth);

  const auto& f24 = CyclotomicField::of(24);
  const auto i2 = Form::parse(
      "x0^4+x1^4+x2^4+x3^4 - 8*x0*x1*x2*x3 - 2*(x1^2*x2^2+x0^2*x3^2) + "
      "2*z^6*sqrt(3)*(x0^2*x1^2+x3^2*x1^2+x0^2*x2^2+x2^2*x3^2)",
      f24);
  SmoothnessPolicy policy;
  policy.group = &lookup_group("1deg");
  const auto vi2 = smoothness_verdict(i2, policy);
  CHECK(vi2.kind == VerdictKind::Singular);
  REQUIRE(vi2.point.has_value());
  CHECK(singular_point_check(i2, *vi2.point));
  CHECK(recheck_verdict(i2, vi2));

  const auto i1 = Form::parse("x1^2*x2^2 + x0^2*x3^2 - 2*x0*x1*x2*x3", q());
  const auto vi1 = smoothness_verdict(i1);
  CHECK(vi1.kind == VerdictKind::Singular);
  CHECK(vi1.witness.has_value());
  for (const auto& e : good_primes(i1, 3)) CHECK(macaulay_disc_mod_p(i1, e) == 0);

  CHECK_THROWS_AS(smoothness_verdict(Form(MonomialBasis::of(4, 4), q())), Error);
  CHECK(verdict_name(VerdictKind::SingularProbable) == "singular_probable");
}

TEST_CASE("pencils") {
  const auto f0 = fermat();
  const auto f1 = Form::parse("x0^4 + 2*x1^4 + 3*x2^4 + 5*x3^4 + x0*x1*x2*x3", q());
  const auto e = find_prime_embeddings(1, 1).front();
  const auto d = pencil_disc_poly_mod_p({f0, f1}, e);
  CHECK_FALSE(d.poly.empty());
  CHECK(fp_poly::degree(d.poly) <= 108);
  CHECK(fp_poly::eval(e.field(), d.poly, 0) == macaulay_disc_mod_p(f0, e));
  CHECK(fp_poly::eval(e.field(), d.poly, 7) == macaulay_disc_mod_p(f0 + CycScalar(q(), 7) * f1, e));
  CHECK(d.at_infinity == macaulay_disc_mod_p(f1, e));

  const auto& f28 = CyclotomicField::of(28);
  const auto p0 = Form::parse("x0^4", f28);
  const auto p1 = Form::parse("x2*x1^3 + x3^3*x1 + x2^3*x3", f28);
  const auto dp = pencil_disc_poly_mod_p({p0, p1}, find_prime_embeddings(28, 1).front());
  CHECK(dp.at_infinity == 0);
  REQUIRE_FALSE(dp.poly.empty());
  const auto roots = pencil_roots(dp);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].value == 0);
  CHECK(static_cast<std::size_t>(roots[0].multiplicity) + 1 == dp.poly.size());

  CHECK_THROWS_WITH_AS(pencil_disc_poly_mod_p({f0, CycScalar(q(), 3) * f0}, e), doctest::Contains("NotAPencil"), Error);
  CHECK_THROWS_WITH_AS(pencil_disc_poly_mod_p({f0, f1}, make_prime_embedding(97, 1)), doctest::Contains("BadPrime"),
                       Error);
}

TEST_CASE("equivalence witnesses") {
  const auto& f1 = q();
  CHECK(verify_equivalence_witness(ExactMatrix::identity(f1, 4), fermat(), fermat()));
  ExactMatrix swap(f1, 4, 4);
  swap(0, 1) = swap(1, 0) = swap(2, 2) = swap(3, 3) = CycScalar(f1, 1);
  CHECK(verify_equivalence_witness(swap, fermat(), fermat()));
  auto flip = ExactMatrix::identity(f1, 4);
  flip(3, 3) = CycScalar(f1, -1);
  const auto h12 = Form::parse("x0^4+x1^4+x2^4+x3^4+12*x0*x1*x2*x3", f1);
  const auto h12m = Form::parse("x0^4+x1^4+x2^4+x3^4-12*x0*x1*x2*x3", f1);
  CHECK(verify_equivalence_witness(flip, h12, h12m));
  CHECK_FALSE(verify_equivalence_witness(ExactMatrix::identity(f1, 4), h12, h12m));
  CHECK_THROWS_AS(verify_equivalence_witness(ExactMatrix(f1, 4, 4), h12, h12m), Error);
  CHECK_THROWS_AS(verify_equivalence_witness(ExactMatrix::identity(f1, 3), h12, h12m), Error);
}
