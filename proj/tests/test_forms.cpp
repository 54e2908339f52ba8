#include "doctest.h"
#include "properties.hpp"
#include "quartic/error.hpp"
#include "quartic/registry.hpp"

using namespace quartic;

TEST_CASE("monomial bases") {
  CHECK(MonomialBasis::of(4, 4).size() == 35);
  const auto& b22 = MonomialBasis::of(2, 2);
  REQUIRE(b22.size() == 3);
  CHECK(b22.exponent(0) == Exponent{2, 0});
  CHECK(b22.exponent(1) == Exponent{1, 1});
  CHECK(b22.exponent(2) == Exponent{0, 2});
  const auto& b41 = MonomialBasis::of(4, 1);
  REQUIRE(b41.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(b41.monomial_string(static_cast<std::size_t>(i)) == "x" + std::to_string(i));
  CHECK(MonomialBasis::of(4, 0).size() == 1);
  CHECK(MonomialBasis::of(4, 4).monomial_string(0) == "x0^4");
  CHECK(MonomialBasis::of(4, 4).find(Exponent{1, 1, 1, 0}) == std::nullopt);
}

TEST_CASE("parsing and printing forms") {
  const auto& f24 = CyclotomicField::of(24);
  const auto f = Form::parse("x0^4 + 2*x1*x2^3 - sqrt(3)*x3^4", f24);
  CHECK(f.terms().size() == 3);
  CHECK(f.coeff(Exponent{0, 0, 0, 4}) == -sqrt_int(24, 3));
  CHECK(Form::parse(f.to_string(), f24) == f);
  CHECK(Form::parse("(x0 + x1)^2", f24, 2) == Form::parse("x0^2 + 2*x0*x1 + x1^2", f24, 2));
  CHECK_THROWS_AS(Form::parse("x0^4 + x1", f24), Error);
  CHECK_THROWS_AS(Form::parse("x4^4", f24), Error);
  CHECK_THROWS_AS(Form::parse("x0^4 + sqrt(5)*x1^4", f24), Error);
}

TEST_CASE("act") {
  const auto& f24 = CyclotomicField::of(24);
  const auto f = Form::parse("x0^4 + x1^3*x2 + 5*x0*x1*x2*x3", f24);
  CHECK(act(ExactMatrix::identity(f24, 4), f) == f);

  const auto& f1 = lookup_group("A").find_generator("F1")->matrix;
  const auto x2x3 = Form::parse("x2*x3", f24, 4, 2);
  CHECK(act(f1, x2x3) == x2x3);
  CHECK(act(f1, Form::parse("x2^2", f24, 4, 2)) == root_of_unity(24, 16) * Form::parse("x2^2", f24, 4, 2));

  // (A f)(x) = f(Ax): with A = [[1, 1], [0, 1]], x0^2 becomes (x0 + x1)^2.
  auto a = ExactMatrix::identity(f24, 2);
  a(0, 1) = CycScalar(f24, 1);
  CHECK(act(a, Form::parse("x0^2", f24, 2)) == Form::parse("x0^2 + 2*x0*x1 + x1^2", f24, 2));
  CHECK(act(a.inverse(), act(a, Form::parse("x0^3*x1 + 7*x1^4", f24, 2))) == Form::parse("x0^3*x1 + 7*x1^4", f24, 2));

  const auto& f2 = lookup_group("A").find_generator("F2")->matrix;
  CHECK(act(f2.inverse(), act(f2, f)) == f);
  CHECK(Form::from_poly(testing::expand_substitution(f2, f), f24, 4, 4) == act(f2, f));
}

TEST_CASE("operator matrix B") {
  const auto& f8 = CyclotomicField::of(8);
  const auto id = ExactMatrix::identity(f8, 4);
  CHECK(operator_matrix_B(id, CycScalar(f8, 1), 4).is_zero());
  CycScalar c;
  CHECK(operator_matrix_B(id, CycScalar(f8, 2), 4).is_scalar(&c));
  CHECK(c == CycScalar(f8, -1));

  const auto& f1 = lookup_group("A").find_generator("F1")->matrix;
  const auto& basis = MonomialBasis::of(4, 4);
  const auto k = root_of_unity(24, 3);
  const auto b = operator_matrix_B(f1, k, 4);
  const auto j = basis.index(Exponent{0, 0, 4, 0});
  const auto w = root_of_unity(24, 8);
  CHECK(b(j, j) == w.pow(4) - k);
  CHECK(b(j, j) == w - k);
  CHECK(b.rows() == 35);
  CHECK(substitution_matrix(f1, 4) == operator_matrix_B(f1, CycScalar(f1.field()), 4));
}

TEST_CASE("projective invariance factors") {
  const auto& e = lookup_group("E");
  const auto q = Form::parse("2*x0^4 + 6*x0*x1*x2*x3 + x1*x3^3 + x1^3*x2 + x2^3*x3", e.field());
  for (const auto& g : e.generators) {
    const auto lambda = projective_invariance_factor(g.matrix, q);
    REQUIRE(lambda.has_value());
    CHECK(lambda->is_one());
  }
  const auto& f1 = lookup_group("A").find_generator("F1")->matrix;
  CHECK(projective_invariance_factor(f1, Form::parse("x0^4", f1.field())) == CycScalar(f1.field(), 1));
  const auto& s1 = lookup_group("13deg").find_generator("S1")->matrix;
  CHECK(projective_invariance_factor(s1, Form::parse("x0^4", s1.field())) == std::nullopt);
  CHECK_THROWS_WITH_AS(projective_invariance_factor(s1, Form(MonomialBasis::of(4, 4), s1.field())),
                       doctest::Contains("ZeroForm"), Error);
}

TEST_CASE("form arithmetic") {
  const auto& f8 = CyclotomicField::of(8);
  const auto f = Form::parse("x0 + x1", f8, 4, 1);
  const auto g = Form::parse("x0 - x1", f8, 4, 1);
  CHECK(f * g == Form::parse("x0^2 - x1^2", f8, 4, 2));
  CHECK(proportional(Form::parse("2*x0^4 + 4*x1^4", f8), Form::parse("x0^4 + 2*x1^4", f8)));
  CHECK_FALSE(proportional(Form::parse("x0^4 + x1^4", f8), Form::parse("x0^4 - x1^4", f8)));
  CHECK(Form::parse("3*x1^4 + z*x2^4", f8).normalized().coeff(Exponent{0, 4, 0, 0}).is_one());
  const auto fermat = Form::parse("x0^4 + x1^4 + x2^4 + x3^4", f8);
  CHECK(fermat.derivative(2) == Form::parse("4*x2^3", f8, 4, 3));
  CHECK(fermat.evaluate({CycScalar(f8, 1), root_of_unity(8, 1), CycScalar(f8), CycScalar(f8)}).is_zero());
}
