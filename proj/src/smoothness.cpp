#include "quartic/smoothness.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "quartic/error.hpp"
#include "quartic/solver.hpp"

namespace quartic {

// ---------------------------------------------------------------- MSC

std::string MSCWitness::describe() const {
  std::ostringstream out;
  if (missing_variable) {
    out << "no monomial x" << *missing_variable << "^(d-1)*x_j";
    return out.str();
  }
  auto ideal = [&](const std::vector<int>& vars) {
    out << "(";
    for (std::size_t i = 0; i < vars.size(); ++i) out << (i ? ", " : "") << "x" << vars[i];
    out << ")";
  };
  if (!linear.empty()) ideal(linear);
  if (!linear.empty() && !quadratic.empty()) out << " + ";
  if (!quadratic.empty()) {
    ideal(quadratic);
    out << "^2";
  }
  return out.str();
}

namespace {

bool monomial_in_ideal(const Exponent& e, const std::vector<int>& linear, const std::vector<int>& quadratic) {
  for (int v : linear) {
    if (e[static_cast<std::size_t>(v)] > 0) return true;
  }
  int q = 0;
  for (int v : quadratic) q += e[static_cast<std::size_t>(v)];
  return q >= 2;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int v = start; v < n; ++v) {
    cur.push_back(v);
    subsets(n, k, v + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

}  // namespace

bool msc_holds(const Form& f, const MSCWitness& w) {
  if (w.a() + w.b() == 0) return f.is_zero();
  if (2 * w.a() + w.b() > f.variables() - 1) return false;
  for (const auto& [i, c] : f.terms()) {
    if (!monomial_in_ideal(f.basis().exponent(i), w.linear, w.quadratic)) return false;
  }
  return true;
}

std::optional<MSCWitness> msc_test(const Form& f) {
  const int vars = f.variables();
  const int n = vars - 1;
  for (int a = 0; 2 * a <= n; ++a) {
    for (int b = (a == 0 ? 1 : 0); 2 * a + b <= n; ++b) {
      if (a + b > vars) continue;
      if (a == 0 && b == n) {
        // The x_i^(d-1) x_j clause: all variables but x_i in the squared ideal.
        for (int i = 0; i < vars; ++i) {
          MSCWitness w;
          for (int v = 0; v < vars; ++v) {
            if (v != i) w.quadratic.push_back(v);
          }
          w.missing_variable = i;
          if (msc_holds(f, w)) return w;
        }
        continue;
      }
      for (const auto& lin : subsets(vars, a)) {
        for (const auto& quad : subsets(vars, b)) {
          bool disjoint = true;
          for (int v : quad) disjoint = disjoint && std::find(lin.begin(), lin.end(), v) == lin.end();
          if (!disjoint) continue;
          MSCWitness w{lin, quad, std::nullopt};
          if (msc_holds(f, w)) return w;
        }
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- singular points

namespace {

struct Partials {
  const CyclotomicField* field;
  std::vector<Form> d;

  Partials(const Form& f, const CyclotomicField& target) : field(&target) {
    const Form g = f.lift(target);
    for (int v = 0; v < g.variables(); ++v) d.push_back(g.derivative(v));
  }

  bool vanish(const ExactVector& point) const {
    for (const auto& p : d) {
      if (!p.evaluate(point).is_zero()) return false;
    }
    return true;
  }
};

ExactVector lift_vector(const ExactVector& v, const CyclotomicField& field) {
  ExactVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.lift(field));
  return out;
}

bool is_zero_vector(const ExactVector& v) {
  return std::all_of(v.begin(), v.end(), [](const CycScalar& x) { return x.is_zero(); });
}

ExactVector projective_normalize(ExactVector v) {
  for (const auto& x : v) {
    if (!x.is_zero()) {
      const CycScalar inv = x.inverse();
      for (auto& y : v) y *= inv;
      break;
    }
  }
  return v;
}

}  // namespace

bool singular_point_check(const Form& f, const ExactVector& point) {
  if (static_cast<int>(point.size()) != f.variables()) fail(ErrorCode::ShapeMismatch, "point dimension");
  if (is_zero_vector(point)) fail(ErrorCode::ZeroPoint, "the zero vector is not a projective point");
  int conductor = f.conductor();
  for (const auto& x : point) conductor = static_cast<int>(lcm_long(conductor, x.field().conductor()));
  const auto& field = CyclotomicField::of(conductor);
  return Partials(f, field).vanish(lift_vector(point, field));
}

std::optional<ExactVector> find_singular_point(const Form& f, const GroupSpec* group, std::size_t budget) {
  if (f.is_zero()) fail(ErrorCode::ZeroForm, "singular points of the zero form");
  std::size_t tried = 0;
  const int vars = f.variables();
  {
    const auto& field = CyclotomicField::of(static_cast<int>(lcm_long(f.conductor(), 4)));
    const Partials partials(f, field);
    const std::vector<CycScalar> values = {CycScalar(field, 0), CycScalar(field, 1), CycScalar(field, -1),
                                           root_of_unity(field.conductor(), field.conductor() / 4),
                                           root_of_unity(field.conductor(), 3 * field.conductor() / 4)};
    std::vector<std::size_t> digits(static_cast<std::size_t>(vars), 0);
    while (true) {
      std::size_t lead = 0;
      while (lead < digits.size() && digits[lead] == 0) ++lead;
      if (lead < digits.size() && digits[lead] == 1) {
        ExactVector p;
        for (auto dgt : digits) p.push_back(values[dgt]);
        if (tried++ >= budget) return std::nullopt;
        if (partials.vanish(p)) return p;
      }
      std::size_t k = digits.size();
      while (k > 0 && digits[k - 1] == values.size() - 1) digits[--k] = 0;
      if (k == 0) break;
      ++digits[k - 1];
    }
  }
  if (group == nullptr) return std::nullopt;
  for (const auto& g : group->generators) {
    const long tau_order = root_of_unity_order(g.tau).value_or(1);
    long conductor = lcm_long(lcm_long(f.conductor(), group->conductor), 4);
    conductor = lcm_long(conductor, static_cast<long>(g.sigma) * tau_order);
    const auto& field = CyclotomicField::of(static_cast<int>(conductor));
    const Partials partials(f, field);
    const ExactMatrix a = g.matrix.lift(field);
    const CycScalar tau = g.tau.lift(field);
    const CycScalar i_unit = root_of_unity(field.conductor(), field.conductor() / 4);
    for (const auto& lambda : field.roots_of_unity()) {
      if (lambda.pow(g.sigma) != tau) continue;
      ExactMatrix shifted = a;
      for (std::size_t r = 0; r < a.rows(); ++r) shifted(r, r) -= lambda;
      const auto ker = kernel_basis(shifted);
      std::vector<ExactVector> candidates = ker;
      if (ker.size() == 2) {
        for (const CycScalar& c : {CycScalar(field, 1), CycScalar(field, -1), i_unit, -i_unit}) {
          ExactVector v = ker[0];
          for (std::size_t r = 0; r < v.size(); ++r) v[r] += c * ker[1][r];
          candidates.push_back(std::move(v));
        }
      }
      for (auto& v : candidates) {
        if (tried++ >= budget) return std::nullopt;
        if (partials.vanish(v)) return projective_normalize(v);
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- Macaulay matrices

int discriminant_degree(int n_plus_1, int d) {
  long deg = n_plus_1;
  for (int i = 0; i + 1 < n_plus_1; ++i) deg *= d - 1;
  return static_cast<int>(deg);
}

const MacaulayLayout& MacaulayLayout::of(int n_plus_1, int d) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<MacaulayLayout>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n_plus_1, d}];
  if (!slot) {
    if (d < 2 || n_plus_1 < 1) fail(ErrorCode::InvalidArgument, "Macaulay matrices need d >= 2");
    auto layout = std::make_unique<MacaulayLayout>();
    layout->variables = n_plus_1;
    layout->degree = d;
    layout->critical_degree = n_plus_1 * (d - 2) + 1;
    layout->columns = &MonomialBasis::of(n_plus_1, layout->critical_degree);
    for (std::size_t c = 0; c < layout->columns->size(); ++c) {
      const Exponent& e = layout->columns->exponent(c);
      int owner = -1;
      int big = 0;
      for (int i = 0; i < n_plus_1; ++i) {
        if (e[static_cast<std::size_t>(i)] >= d - 1) {
          if (owner < 0) owner = i;
          ++big;
        }
      }
      layout->owner.push_back(owner);
      if (big >= 2) layout->nonreduced.push_back(c);
    }
    slot = std::move(layout);
  }
  return *slot;
}

ModMatrix macaulay_matrix(const MacaulayLayout& layout, const std::vector<std::uint64_t>& coeffs,
                          const PrimeField& field) {
  const auto& basis = MonomialBasis::of(layout.variables, layout.degree);
  if (coeffs.size() != basis.size()) fail(ErrorCode::ShapeMismatch, "coefficient vector length");
  const auto& cols = *layout.columns;
  // Partials: for each variable, (exponent of degree d-1, coefficient) pairs.
  std::vector<std::vector<std::pair<Exponent, std::uint64_t>>> partials(static_cast<std::size_t>(layout.variables));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    for (int v = 0; v < layout.variables; ++v) {
      Exponent e = basis.exponent(i);
      const auto vi = static_cast<std::size_t>(v);
      if (e[vi] == 0) continue;
      const std::uint64_t c = field.mul(coeffs[i], field.from_signed(e[vi]));
      --e[vi];
      partials[vi].emplace_back(std::move(e), c);
    }
  }
  ModMatrix q(field.p, cols.size(), cols.size());
  for (std::size_t r = 0; r < cols.size(); ++r) {
    const auto owner = static_cast<std::size_t>(layout.owner[r]);
    Exponent shift = cols.exponent(r);
    shift[owner] -= layout.degree - 1;
    for (const auto& [e, c] : partials[owner]) {
      Exponent m = shift;
      for (std::size_t v = 0; v < m.size(); ++v) m[v] += e[v];
      auto& cell = q(r, cols.index(m));
      cell = field.add(cell, c);
    }
  }
  return q;
}

ModMatrix macaulay_submatrix(const MacaulayLayout& layout, const ModMatrix& q) {
  const auto& idx = layout.nonreduced;
  ModMatrix out(q.prime(), idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = q(idx[r], idx[c]);
  }
  return out;
}

namespace {

ModMatrix negated(const ModMatrix& m) {
  ModMatrix out = m;
  const PrimeField f{m.prime()};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = f.neg(m(r, c));
  }
  return out;
}

}  // namespace

std::uint64_t disc_from_coefficients(const MonomialBasis& basis, const std::vector<std::uint64_t>& coeffs,
                                     const PrimeField& field) {
  const auto& layout = MacaulayLayout::of(basis.variables(), basis.degree());
  if (static_cast<std::uint64_t>(basis.degree()) % field.p == 0) fail(ErrorCode::BadPrime, "p divides the degree");
  const ModMatrix q = macaulay_matrix(layout, coeffs, field);
  const ModMatrix qp = macaulay_submatrix(layout, q);
  const std::uint64_t den = determinant(qp);
  if (den != 0) return field.mul(determinant(q), field.inv(den));
  // Q(f + mu phi) = Q(f) + mu I since Q(phi) = I, so both determinants are characteristic
  // polynomials of the negated matrices; the quotient at mu = 0 is the ratio of the lowest terms.
  const auto num_poly = characteristic_polynomial(negated(q));
  const auto den_poly = characteristic_polynomial(negated(qp));
  std::size_t k = 0;
  while (den_poly[k] == 0) ++k;
  for (std::size_t i = 0; i < k; ++i) {
    if (num_poly[i] != 0) fail(ErrorCode::InterpolationDegenerate, "perturbed quotient is not a polynomial");
  }
  return field.mul(num_poly[k], field.inv(den_poly[k]));
}

std::uint64_t macaulay_disc_mod_p(const Form& f, const PrimeEmbedding& e) {
  if (e.conductor % f.conductor() != 0) fail(ErrorCode::ConductorMismatch, "embedding does not cover the form's field");
  return disc_from_coefficients(f.basis(), reduce_form(f, e), e.field());
}

std::vector<PrimeEmbedding> good_primes(const Form& f, std::size_t count) {
  std::vector<PrimeEmbedding> out;
  std::uint64_t floor = kDefaultMinPrime;
  while (out.size() < count) {
    for (const auto& e : find_prime_embeddings(f.conductor(), count - out.size(), floor)) {
      floor = e.p;
      if (static_cast<std::uint64_t>(f.degree()) % e.p == 0) continue;
      try {
        reduce_form(f, e);
        out.push_back(e);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::BadPrime) throw;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- verdicts

std::string verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Smooth: return "smooth";
    case VerdictKind::Singular: return "singular";
    case VerdictKind::SingularProbable: return "singular_probable";
    case VerdictKind::Unknown: return "unknown";
  }
  return "unknown";
}

SmoothnessVerdict smoothness_verdict(const Form& f, const SmoothnessPolicy& policy) {
  if (f.is_zero()) fail(ErrorCode::ZeroForm, "smoothness of the zero form");
  SmoothnessVerdict v;
  if (auto w = msc_test(f)) {
    v.kind = VerdictKind::Singular;
    v.witness = std::move(w);
    return v;
  }
  if (policy.primes_to_try == 0) return v;
  const auto primes = good_primes(f, policy.primes_to_try);
  const std::uint64_t first = macaulay_disc_mod_p(f, primes.front());
  v.primes.push_back(primes.front().p);
  if (first != 0) {
    v.kind = VerdictKind::Smooth;
    v.prime = primes.front().p;
    v.disc_mod_p = first;
    return v;
  }
  if (auto point = find_singular_point(f, policy.group, policy.point_search_budget)) {
    v.kind = VerdictKind::Singular;
    v.point = std::move(point);
    return v;
  }
  for (std::size_t i = 1; i < primes.size(); ++i) {
    const std::uint64_t d = macaulay_disc_mod_p(f, primes[i]);
    v.primes.push_back(primes[i].p);
    if (d != 0) {
      v.kind = VerdictKind::Smooth;
      v.prime = primes[i].p;
      v.disc_mod_p = d;
      return v;
    }
  }
  v.kind = VerdictKind::SingularProbable;
  return v;
}

bool recheck_verdict(const Form& f, const SmoothnessVerdict& v) {
  switch (v.kind) {
    case VerdictKind::Singular:
      if (v.witness) return msc_holds(f, *v.witness);
      if (v.point) return singular_point_check(f, *v.point);
      return false;
    case VerdictKind::Smooth: {
      if (v.prime == 0) return false;
      const auto e = make_prime_embedding(v.prime, f.conductor());
      const std::uint64_t d = macaulay_disc_mod_p(f, e);
      return d != 0 && d == v.disc_mod_p;
    }
    case VerdictKind::SingularProbable:
      return !v.primes.empty();
    case VerdictKind::Unknown:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------- pencils

PencilDisc pencil_disc_poly_mod_p(const PencilQuery& q, const PrimeEmbedding& e) {
  if (q.f0.is_zero() || q.f1.is_zero() || &q.f0.basis() != &q.f1.basis()) {
    fail(ErrorCode::NotAPencil, "pencil forms must be nonzero and of one shape");
  }
  const auto& common = common_field(q.f0.field(), q.f1.field());
  if (proportional(q.f0.lift(common), q.f1.lift(common))) fail(ErrorCode::NotAPencil, "pencil forms are proportional");
  if (e.p <= 109) fail(ErrorCode::BadPrime, "prime too small for interpolation");
  if (e.conductor % common.conductor() != 0) fail(ErrorCode::ConductorMismatch, "embedding does not cover the pencil");
  const PrimeField field = e.field();
  const auto c0 = reduce_form(q.f0, e.restrict_to(q.f0.conductor()));
  const auto c1 = reduce_form(q.f1, e.restrict_to(q.f1.conductor()));
  const auto& basis = q.f0.basis();
  const std::size_t total = kPencilSamples + kPencilHeldOut;
  std::vector<std::uint64_t> xs(total), ys(total);
  for (std::size_t i = 0; i < total; ++i) xs[i] = i + 1;
  auto sample = [&](std::size_t i) {
    std::vector<std::uint64_t> c(c0.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = field.add(c0[k], field.mul(xs[i], c1[k]));
    ys[i] = disc_from_coefficients(basis, c, field);
  };
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> futures;
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < total; i = next++) sample(i);
    }));
  }
  for (auto& f : futures) f.get();
  PencilDisc out;
  out.embedding = e;
  out.poly = fp_poly::interpolate(field, std::span(xs).first(kPencilSamples), std::span(ys).first(kPencilSamples));
  for (std::size_t i = kPencilSamples; i < total; ++i) {
    if (fp_poly::eval(field, out.poly, xs[i]) != ys[i]) {
      fail(ErrorCode::InterpolationDegenerate, "held-out sample disagrees with the interpolant");
    }
  }
  if (fp_poly::degree(out.poly) > discriminant_degree(basis.variables(), basis.degree())) {
    fail(ErrorCode::InterpolationDegenerate, "interpolant exceeds the discriminant degree");
  }
  out.at_infinity = disc_from_coefficients(basis, c1, field);
  return out;
}

std::vector<fp_poly::Root> pencil_roots(const PencilDisc& d) {
  if (d.poly.empty()) return {};
  return fp_poly::roots(d.embedding.field(), d.poly);
}

bool verify_equivalence_witness(const ExactMatrix& t, const Form& f, const Form& g) {
  if (t.rows() != t.cols()) fail(ErrorCode::NotSquare, "witness must be square");
  if (determinant(t).is_zero()) fail(ErrorCode::NonInvertible, "witness is singular");
  if (static_cast<int>(t.rows()) != f.variables()) fail(ErrorCode::ShapeMismatch, "witness size");
  const auto& field = common_field(common_field(t.field(), f.field()), g.field());
  return proportional(act(t.lift(field), f.lift(field)), g.lift(field));
}

}  // namespace quartic
