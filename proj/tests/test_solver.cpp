#include <algorithm>
#include <map>

#include "doctest.h"
#include "quartic/error.hpp"
#include "quartic/solver.hpp"

using namespace quartic;

namespace {

std::vector<std::size_t> dimensions(const std::vector<InvariantSubspace>& subs) {
  std::vector<std::size_t> out;
  for (const auto& s : subs) out.push_back(s.dimension());
  return out;
}

bool same_subspaces(const std::vector<InvariantSubspace>& a, const std::vector<InvariantSubspace>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].character != b[i].character || a[i].basis != b[i].basis) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("candidate characters") {
  const auto& e = lookup_group("E");
  const auto candidates = character_candidates(e, 4);
  CHECK(candidates.size() == 42);

  // Oracle: every root of unity of the working field, filtered by k^sigma = tau^d.
  const auto& field = CyclotomicField::of(working_conductor(e, 4));
  const auto per_gen = generator_candidates(e, 4);
  REQUIRE(per_gen.size() == 3);
  const std::size_t sigmas[] = {7, 3, 2};
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& g = e.generators[j];
    CHECK(static_cast<std::size_t>(g.sigma) == sigmas[j]);
    std::vector<CycScalar> oracle;
    for (const auto& w : field.roots_of_unity()) {
      if (w.pow(g.sigma) == g.tau.lift(field).pow(4)) oracle.push_back(w);
    }
    auto got = per_gen[j];
    auto cmp = [](const CycScalar& x, const CycScalar& y) { return compare(x, y) < 0; };
    std::sort(got.begin(), got.end(), cmp);
    std::sort(oracle.begin(), oracle.end(), cmp);
    CHECK(got == oracle);
  }

  const auto trivial = make_group("one", {{"I", ExactMatrix::identity(CyclotomicField::of(1), 4)}});
  const auto t = character_candidates(trivial, 4);
  REQUIRE(t.size() == 1);
  CHECK(t[0].size() == 1);
  CHECK(t[0][0].is_one());

  // kappa = 1 for n = 3, d = 4: the coarse set holds sigma_j roots per generator.
  const auto coarse = generator_candidates(lookup_group("A"), 4, true);
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    CHECK(coarse[j].size() == static_cast<std::size_t>(lookup_group("A").generators[j].sigma));
  }
}

TEST_CASE("catalog of invariant subspaces") {
  const std::map<std::string, std::vector<std::size_t>> expected{
      {"1deg", {1, 1, 1, 1, 1}}, {"13deg", {1, 1, 1, 1, 1}}, {"14deg", {1}}, {"15deg", {1}}, {"16deg", {}},
      {"17deg", {1}},            {"19deg", {1}},             {"A", {2}},     {"G", {1, 1}},  {"C", {}},
      {"E", {1}},                {"B", {2}},                 {"H", {2}},     {"Q1", {3}},    {"Q4", {1}},
      {"Q5", {}},                {"R3", {}},                 {"Q7", {}},     {"P", {2}}};
  for (const auto& g : builtin_groups()) {
    INFO(g.name);
    const auto subs = invariant_subspaces(g, 4);
    CHECK(dimensions(subs) == expected.at(g.name));

    // Soundness and disjointness.
    std::vector<ExactVector> all;
    for (const auto& s : subs) {
      for (const auto& f : s.basis) {
        for (std::size_t j = 0; j < g.generators.size(); ++j) {
          const auto& m = g.generators[j].matrix.lift(f.field());
          CHECK(act(m, f) == s.character[j] * f);
        }
        all.push_back(f.to_vector());
      }
      CHECK(is_group_invariant(g, s.basis.front()));
    }
    for (std::size_t i = 1; i < subs.size(); ++i) CHECK(compare_characters(subs[i - 1].character, subs[i].character) < 0);
    if (!all.empty()) CHECK(canonical_span(subs.front().field(), 35, all).size() == all.size());
  }
}

TEST_CASE("membership") {
  const auto& a = lookup_group("A");
  const auto subs = invariant_subspaces(a, 4);
  REQUIRE(subs.size() == 1);
  const auto& f24 = CyclotomicField::of(24);
  const auto h0 = Form::parse(
      "x0^4/(2*sqrt(3)) + 1/3*x1*x0^3 + x2*x3*x0^2 + 1/3*x1^3*x0 + 1/3*sqrt(2)*x2^3*x0 + sqrt(6)/3*x3^3*x0 + "
      "sqrt(6)/3*x1*x2^3 - 1/3*sqrt(2)*x1*x3^3 + x1^2*x2*x3 - x1^4/(2*sqrt(3))",
      f24);
  CHECK(contains_form(subs[0], h0));
  CHECK_FALSE(contains_form(subs[0], Form::parse("x0^4", f24)));
  CHECK(contains_form(subs[0], Form(MonomialBasis::of(4, 4), f24)));
  CHECK_THROWS_AS(contains_form(subs[0], Form::parse("x0^3", f24)), Error);

  const auto& f8 = CyclotomicField::of(8);
  const auto k = Form::parse("x0^4+x1^4+x2^4+x3^4+6*(x0^2*x1^2-x2^2*x1^2+x3^2*x1^2+x0^2*x2^2-x0^2*x3^2+x2^2*x3^2)", f8);
  CHECK(is_group_invariant(lookup_group("19deg"), k));
  CHECK_FALSE(is_group_invariant(lookup_group("16deg"), k));
  CHECK_THROWS_AS(is_group_invariant(lookup_group("19deg"), Form(MonomialBasis::of(4, 4), f8)), Error);
}

TEST_CASE("degree edge cases") {
  const auto& a = lookup_group("A");
  const auto d0 = invariant_subspaces(a, 0);
  REQUIRE(d0.size() == 1);
  CHECK(d0[0].dimension() == 1);
  for (const auto& c : d0[0].character) CHECK(c.is_one());
  CHECK_THROWS_AS(invariant_subspaces(a, -1), Error);
}

TEST_CASE("routes and candidate sets agree") {
  for (const char* name : {"1deg", "13deg", "A", "E", "B", "P", "Q1"}) {
    INFO(name);
    const auto& g = lookup_group(name);
    const auto base = invariant_subspaces(g, 4);
    SolverOptions coarse;
    coarse.coarse_candidates = true;
    CHECK(same_subspaces(base, invariant_subspaces(g, 4, coarse)));
    SolverOptions nofilter;
    nofilter.modp_filter = false;
    nofilter.threads = 1;
    CHECK(same_subspaces(base, invariant_subspaces(g, 4, nofilter)));
  }
  for (const char* name : {"13deg", "E", "A"}) {
    SolverOptions stacked;
    stacked.stacked = true;
    CHECK(same_subspaces(invariant_subspaces(lookup_group(name), 4), invariant_subspaces(lookup_group(name), 4, stacked)));
  }
}

TEST_CASE("generator order does not change the subspaces") {
  for (const char* name : {"13deg", "G", "Q1"}) {
    INFO(name);
    const auto& g = lookup_group(name);
    std::vector<std::pair<std::string, ExactMatrix>> gens;
    for (auto it = g.generators.rbegin(); it != g.generators.rend(); ++it) gens.emplace_back(it->name, it->matrix);
    const auto reversed = make_group(g.name, gens);
    const auto a = invariant_subspaces(g, 4);
    const auto b = invariant_subspaces(reversed, 4);
    REQUIRE(a.size() == b.size());
    std::vector<std::vector<Form>> spans_a, spans_b;
    for (const auto& s : a) spans_a.push_back(s.basis);
    for (const auto& s : b) spans_b.push_back(s.basis);
    std::sort(spans_a.begin(), spans_a.end(), [](const auto& x, const auto& y) { return x.front().to_string() < y.front().to_string(); });
    std::sort(spans_b.begin(), spans_b.end(), [](const auto& x, const auto& y) { return x.front().to_string() < y.front().to_string(); });
    CHECK(spans_a == spans_b);
  }
}
