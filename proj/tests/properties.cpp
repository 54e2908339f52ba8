#include "properties.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "quartic/smoothness.hpp"
#include "quartic/solver.hpp"

namespace quartic::testing {

namespace {

using Rng = std::mt19937_64;

int pick(Rng& rng, std::initializer_list<int> values) {
  std::uniform_int_distribution<std::size_t> d(0, values.size() - 1);
  return *(values.begin() + d(rng));
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

CycScalar random_scalar(Rng& rng, const CyclotomicField& field, int range = 3) {
  std::vector<mpq_class> c(static_cast<std::size_t>(field.degree()));
  for (auto& x : c) {
    if (uniform(rng, 0, 1) == 0) continue;
    x = mpq_class(uniform(rng, -range, range), uniform(rng, 1, 3));
    x.canonicalize();
  }
  return CycScalar::from_coeffs(field, c);
}

CycScalar random_nonzero(Rng& rng, const CyclotomicField& field) {
  for (;;) {
    auto a = random_scalar(rng, field);
    if (!a.is_zero()) return a;
  }
}

// Sparse small entries keep the expansions cheap.
ExactMatrix random_matrix(Rng& rng, const CyclotomicField& field, std::size_t rows, std::size_t cols) {
  ExactMatrix m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      switch (uniform(rng, 0, 4)) {
        case 0: break;
        case 1: m(r, c) = CycScalar(field, uniform(rng, -2, 2)); break;
        case 2: m(r, c) = root_of_unity(field.conductor(), uniform(rng, 0, field.conductor() - 1)).lift(field); break;
        default: m(r, c) = random_scalar(rng, field, 2); break;
      }
    }
  }
  return m;
}

Form random_form(Rng& rng, const MonomialBasis& basis, const CyclotomicField& field, int terms) {
  Form f(basis, field);
  for (int i = 0; i < terms; ++i) {
    const auto idx = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(basis.size()) - 1));
    f.add_to(idx, random_nonzero(rng, field));
  }
  return f;
}

SparsePoly poly_mul(const SparsePoly& a, const SparsePoly& b) {
  SparsePoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      Exponent e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto it = out.find(e);
      if (it == out.end()) {
        out.emplace(e, ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

void poly_add(SparsePoly& acc, const SparsePoly& b) {
  for (const auto& [e, c] : b) {
    auto it = acc.find(e);
    if (it == acc.end()) {
      acc.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

class Recorder {
 public:
  explicit Recorder(std::string name) { result_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (result_.failures == 0) result_.first_failure = "case " + std::to_string(result_.cases) + ": " + what;
    ++result_.failures;
  }
  void next() { ++result_.cases; }
  PropertyResult done() { return result_; }

 private:
  PropertyResult result_;
};

const std::vector<int> kConductors = {1, 3, 5, 8, 12, 24, 28, 40, 60};

}  // namespace

SparsePoly expand_substitution(const ExactMatrix& a, const Form& f) {
  const int n1 = f.variables();
  std::vector<SparsePoly> images(static_cast<std::size_t>(n1));
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n1; ++j) {
      const auto& c = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (c.is_zero()) continue;
      Exponent e(static_cast<std::size_t>(n1), 0);
      e[static_cast<std::size_t>(j)] = 1;
      images[static_cast<std::size_t>(i)].emplace(e, c.lift(f.field()));
    }
  }
  SparsePoly out;
  for (const auto& [idx, c] : f.terms()) {
    SparsePoly term{{Exponent(static_cast<std::size_t>(n1), 0), c}};
    const auto& e = f.basis().exponent(idx);
    for (int i = 0; i < n1; ++i) {
      for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) term = poly_mul(term, images[static_cast<std::size_t>(i)]);
    }
    poly_add(out, term);
  }
  return out;
}

std::uint64_t cofactor_determinant(const std::vector<std::vector<std::uint64_t>>& m, const PrimeField& field) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0] % field.p;
  std::uint64_t det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::uint64_t>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<std::uint64_t> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    const auto term = field.mul(m[0][c] % field.p, cofactor_determinant(minor, field));
    det = c % 2 == 0 ? field.add(det, term) : field.sub(det, term);
  }
  return det;
}

PropertyResult field_axioms(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed);
  Recorder rec("field axioms");
  for (std::size_t i = 0; i < cases; ++i) {
    rec.next();
    const auto& field = CyclotomicField::of(kConductors[static_cast<std::size_t>(uniform(rng, 0, 8))]);
    const auto a = random_scalar(rng, field), b = random_scalar(rng, field), c = random_scalar(rng, field);
    const CycScalar one(field, 1), zero(field);
    rec.check((a + b) + c == a + (b + c), "additive associativity");
    rec.check(a + b == b + a, "additive commutativity");
    rec.check((a * b) * c == a * (b * c), "multiplicative associativity");
    rec.check(a * b == b * a, "multiplicative commutativity");
    rec.check(a * (b + c) == a * b + a * c, "distributivity");
    rec.check(a - a == zero && a + zero == a && a * one == a, "identities");
    if (!a.is_zero()) {
      rec.check(a * a.inverse() == one, "inverse");
      rec.check((b / a) * a == b, "division");
    }
    const int n = field.conductor();
    long k = uniform(rng, 1, std::max(1, 2 * n));
    while (gcd_long(k, std::max(n, 1)) != 1) ++k;
    rec.check((a * b).galois(k) == a.galois(k) * b.galois(k) && (a + b).galois(k) == a.galois(k) + b.galois(k),
              "galois automorphism");
    const auto& big = CyclotomicField::of(static_cast<int>(lcm_long(n, 24)));
    rec.check((a * b).lift(big) == a.lift(big) * b.lift(big) && (a + b).lift(big) == a.lift(big) + b.lift(big),
              "lift homomorphism");
  }
  return rec.done();
}

PropertyResult reduction_homomorphism(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed + 1);
  Recorder rec("reduce_mod_prime homomorphism");
  for (std::size_t i = 0; i < cases; ++i) {
    rec.next();
    const int n = kConductors[static_cast<std::size_t>(uniform(rng, 0, 8))];
    const auto& field = CyclotomicField::of(n);
    const auto e = find_prime_embeddings(n, 1, kDefaultMinPrime + static_cast<std::uint64_t>(uniform(rng, 0, 1 << 20)))
                       .front();
    const PrimeField pf = e.field();
    const auto a = random_scalar(rng, field), b = random_scalar(rng, field);
    const auto ra = reduce_mod_prime(a, e), rb = reduce_mod_prime(b, e);
    rec.check(reduce_mod_prime(a * b, e) == pf.mul(ra, rb), "product");
    rec.check(reduce_mod_prime(a + b, e) == pf.add(ra, rb), "sum");
    rec.check(reduce_mod_prime(-a, e) == pf.neg(ra), "negation");
    if (!a.is_zero()) rec.check(reduce_mod_prime(a.inverse(), e) == pf.inv(ra), "inverse");
    rec.check(pf.pow(e.zeta_image, static_cast<std::uint64_t>(std::max(n, 1))) == 1, "zeta image order");
  }
  return rec.done();
}

PropertyResult act_contravariance(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed + 2);
  Recorder rec("act contravariance");
  for (std::size_t i = 0; i < cases; ++i) {
    rec.next();
    const auto& field = CyclotomicField::of(pick(rng, {1, 3, 4, 8, 12}));
    const int n1 = uniform(rng, 2, 4);
    const int d = uniform(rng, 1, n1 == 4 ? 3 : 4);
    const auto& basis = MonomialBasis::of(n1, d);
    const auto f = random_form(rng, basis, field, uniform(rng, 1, 4));
    const auto a = random_matrix(rng, field, static_cast<std::size_t>(n1), static_cast<std::size_t>(n1));
    const auto b = random_matrix(rng, field, static_cast<std::size_t>(n1), static_cast<std::size_t>(n1));
    const auto af = act(a, f);
    rec.check(af == Form::from_poly(expand_substitution(a, f), field, n1, d), "act against direct expansion");
    rec.check(act(a, act(b, f)) == act(b * a, f), "act(A, act(B, f)) = act(BA, f)");
    const auto g = random_form(rng, MonomialBasis::of(n1, 1), field, 2);
    rec.check(act(a, f * g) == af * act(a, g), "multiplicativity");
    const auto h = random_form(rng, basis, field, 2);
    rec.check(act(a, f + h) == af + act(a, h), "linearity");
  }
  return rec.done();
}

PropertyResult operator_matrix_oracle(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed + 3);
  Recorder rec("operator matrix oracle");
  for (std::size_t i = 0; i < cases; ++i) {
    rec.next();
    const auto& field = CyclotomicField::of(pick(rng, {1, 4, 8, 12}));
    const int n1 = uniform(rng, 2, 4);
    const int d = uniform(rng, 1, n1 == 4 ? 3 : 4);
    const auto& basis = MonomialBasis::of(n1, d);
    const auto f = random_form(rng, basis, field, uniform(rng, 1, 5));
    const auto a = random_matrix(rng, field, static_cast<std::size_t>(n1), static_cast<std::size_t>(n1));
    const auto k = random_scalar(rng, field);
    const Form expected = Form::from_poly(expand_substitution(a, f), field, n1, d) - k * f;
    rec.check(operator_matrix_B(a, k, d) * f.to_vector() == expected.to_vector(), "B_k f");
    rec.check(substitution_matrix(a, d) * f.to_vector() == (expected + k * f).to_vector(), "substitution matrix");
  }
  return rec.done();
}

PropertyResult kernel_determinism(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed + 4);
  Recorder rec("kernel determinism");
  for (std::size_t i = 0; i < cases; ++i) {
    rec.next();
    const auto& field = CyclotomicField::of(pick(rng, {1, 3, 8, 24}));
    const auto rows = static_cast<std::size_t>(uniform(rng, 1, 5));
    const auto cols = static_cast<std::size_t>(uniform(rng, 1, 6));
    const auto inner = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(std::min(rows, cols))));
    ExactMatrix m(field, rows, cols);
    if (inner > 0) m = random_matrix(rng, field, rows, inner) * random_matrix(rng, field, inner, cols);
    const auto k1 = kernel_basis(m);
    const auto k2 = kernel_basis(m);
    rec.check(k1 == k2, "two runs differ");
    std::vector<ExactVector> reversed;
    for (std::size_t r = rows; r-- > 0;) reversed.push_back(m.row(r));
    rec.check(kernel_basis(ExactMatrix::from_rows(field, reversed)) == k1, "row order changes the basis");
    rec.check(rank(m) + k1.size() == cols, "rank-nullity");
    for (const auto& v : k1) {
      const auto mv = m * v;
      rec.check(std::all_of(mv.begin(), mv.end(), [](const CycScalar& x) { return x.is_zero(); }), "M v != 0");
      const auto lead = std::find_if(v.begin(), v.end(), [](const CycScalar& x) { return !x.is_zero(); });
      rec.check(lead != v.end() && lead->is_one(), "leading coefficient");
    }
  }
  return rec.done();
}

PropertyResult solver_completeness(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed + 5);
  Recorder rec("solver brute-force completeness");
  for (std::size_t i = 0; i < cases; ++i) {
    rec.next();
    const int n = pick(rng, {2, 3, 4, 5, 6, 8, 12});
    const auto& field = CyclotomicField::of(n);
    const int d = uniform(rng, 1, 3);
    const int gens = uniform(rng, 0, 3) == 0 ? 2 : 1;
    std::vector<std::pair<int, int>> exps;
    std::vector<std::pair<std::string, ExactMatrix>> matrices;
    for (int g = 0; g < gens; ++g) {
      const int a = uniform(rng, 0, n - 1), b = uniform(rng, 0, n - 1);
      exps.emplace_back(a, b);
      ExactMatrix m(field, 2, 2);
      m(0, 0) = CycScalar::zeta_power(field, a);
      m(1, 1) = CycScalar::zeta_power(field, b);
      matrices.emplace_back("D" + std::to_string(g), m);
    }
    const auto group = make_group("diag", matrices);
    const auto& basis = MonomialBasis::of(2, d);

    // Every monomial is an eigenvector; group them by their eigenvalue exponents.
    std::map<std::vector<int>, std::vector<std::size_t>> expected;
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
      const auto& e = basis.exponent(idx);
      std::vector<int> key;
      for (const auto& [a, b] : exps) key.push_back((a * e[0] + b * e[1]) % n);
      expected[key].push_back(idx);
    }

    SolverOptions options;
    options.stacked = i % 2 == 1;
    options.threads = 1;
    const auto subs = invariant_subspaces(group, d, options);
    rec.check(subs.size() == expected.size(), "subspace count " + std::to_string(subs.size()) + " vs " +
                                                  std::to_string(expected.size()));
    for (const auto& s : subs) {
      std::vector<std::size_t> indices;
      for (const auto& f : s.basis) {
        const bool monomial = f.terms().size() == 1 && f.terms().begin()->second.is_one();
        rec.check(monomial, "basis element is not a monomial");
        if (monomial) indices.push_back(f.terms().begin()->first);
      }
      std::sort(indices.begin(), indices.end());
      bool found = false;
      for (const auto& [key, idx] : expected) {
        if (idx != indices) continue;
        bool same = true;
        for (std::size_t g = 0; g < key.size(); ++g) {
          const auto& common = common_field(s.character[g].field(), field);
          same = same && s.character[g].lift(common) == CycScalar::zeta_power(field, key[g]).lift(common);
        }
        found = found || same;
      }
      rec.check(found, "subspace missing from the eigenvalue oracle");
    }
  }
  return rec.done();
}

PropertyResult disc_normalization(std::size_t cases, std::uint64_t seed) {
  (void)seed;
  Recorder rec("Disc(phi) = 1");
  const auto& field = CyclotomicField::of(1);
  const Form phi = Form::parse("(x0^4 + x1^4 + x2^4 + x3^4)/4", field);
  for (const auto& e : find_prime_embeddings(4, cases)) {
    rec.next();
    rec.check(macaulay_disc_mod_p(phi, e) == 1, "Disc(phi) != 1 mod " + std::to_string(e.p));
  }
  return rec.done();
}

PropertyResult disc_homogeneity(std::size_t cases, std::uint64_t seed) {
  Rng rng(seed + 7);
  Recorder rec("Disc degree-108 homogeneity");
  const auto& basis = MonomialBasis::of(4, 4);
  const auto embeddings = find_prime_embeddings(1, 16);
  const auto degree = static_cast<std::uint64_t>(discriminant_degree(4, 4));
  rec.check(degree == 108, "discriminant degree");
  for (std::size_t i = 0; i < cases; ++i) {
    rec.next();
    const PrimeField pf = embeddings[i % embeddings.size()].field();
    std::uniform_int_distribution<std::uint64_t> u(1, pf.p - 1);
    std::vector<std::uint64_t> coeffs(basis.size());
    for (auto& c : coeffs) c = uniform(rng, 0, 2) == 0 ? 0 : u(rng);
    const std::uint64_t c = u(rng);
    std::vector<std::uint64_t> scaled(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) scaled[j] = pf.mul(c, coeffs[j]);
    const auto d1 = disc_from_coefficients(basis, coeffs, pf);
    const auto d2 = disc_from_coefficients(basis, scaled, pf);
    std::ostringstream what;
    what << "p = " << pf.p << ", c = " << c;
    rec.check(d2 == pf.mul(pf.pow(c, degree), d1), what.str());
  }
  return rec.done();
}

std::vector<PropertyResult> run_all_properties(std::size_t cases, std::uint64_t seed) {
  return {field_axioms(cases, seed),       reduction_homomorphism(cases, seed), act_contravariance(cases, seed),
          operator_matrix_oracle(cases, seed), kernel_determinism(cases, seed),     solver_completeness(cases, seed),
          disc_normalization(cases, seed), disc_homogeneity(cases, seed)};
}

}  // namespace quartic::testing
