#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quartic/forms.hpp"
#include "quartic/modp.hpp"
#include "quartic/registry.hpp"

namespace quartic {

/// f in (x_i : i in linear) + (x_j : j in quadratic)^2 with 2a + b <= n.
struct MSCWitness {
  std::vector<int> linear;
  std::vector<int> quadratic;
  /// Set when the witness is the clause "no monomial x_i^(d-1) x_j occurs".
  std::optional<int> missing_variable;

  int a() const { return static_cast<int>(linear.size()); }
  int b() const { return static_cast<int>(quadratic.size()); }
  std::string describe() const;
};

std::optional<MSCWitness> msc_test(const Form& f);

/// Exact membership recheck of a witness.
bool msc_holds(const Form& f, const MSCWitness& w);

/// All partials vanish at the point. The point is lifted with f to a common field.
bool singular_point_check(const Form& f, const ExactVector& point);

/// Row/column indexing of the Macaulay matrices Q and Q' for n+1 variables, degree d.
struct MacaulayLayout {
  int variables = 0;
  int degree = 0;
  int critical_degree = 0;              // t = (n+1)(d-2) + 1
  const MonomialBasis* columns = nullptr;
  std::vector<int> owner;               // per degree-t monomial: least i with alpha_i >= d-1
  std::vector<std::size_t> nonreduced;  // monomials with two or more i having alpha_i >= d-1

  static const MacaulayLayout& of(int n_plus_1, int d);
};

/// Q(f) over F_p from coefficients indexed by MonomialBasis::of(n+1, d).
ModMatrix macaulay_matrix(const MacaulayLayout& layout, const std::vector<std::uint64_t>& coeffs,
                          const PrimeField& field);
ModMatrix macaulay_submatrix(const MacaulayLayout& layout, const ModMatrix& q);

/// Disc of a form given by its coefficients mod p, normalized by Disc(phi) = 1.
std::uint64_t disc_from_coefficients(const MonomialBasis& basis, const std::vector<std::uint64_t>& coeffs,
                                     const PrimeField& field);

/// Disc(f) mod p. Throws BadPrime when f does not reduce or p divides d.
std::uint64_t macaulay_disc_mod_p(const Form& f, const PrimeEmbedding& e);

/// (n+1)(d-1)^n.
int discriminant_degree(int n_plus_1, int d);

enum class VerdictKind { Smooth, Singular, SingularProbable, Unknown };

std::string verdict_name(VerdictKind k);

struct SmoothnessVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::uint64_t prime = 0;      // Smooth: the certifying prime
  std::uint64_t disc_mod_p = 0; // Smooth: the nonzero residue
  std::optional<MSCWitness> witness;
  std::optional<ExactVector> point;
  std::vector<std::uint64_t> primes;  // primes at which Disc was evaluated
};

struct SmoothnessPolicy {
  std::size_t primes_to_try = 5;
  std::size_t point_search_budget = 4096;
  /// Generators whose eigenvectors are tried as singular points.
  const GroupSpec* group = nullptr;
};

SmoothnessVerdict smoothness_verdict(const Form& f, const SmoothnessPolicy& policy = {});

/// Re-verifies a verdict's exact certificate (MSC membership or vanishing partials),
/// or for Smooth recomputes Disc at the recorded prime.
bool recheck_verdict(const Form& f, const SmoothnessVerdict& v);

/// Exact search over {0, +-1, +-i} points and generator eigenvectors.
std::optional<ExactVector> find_singular_point(const Form& f, const GroupSpec* group, std::size_t budget);

/// The first `count` primes of the embedding scan at which f reduces and p does not divide d.
std::vector<PrimeEmbedding> good_primes(const Form& f, std::size_t count);

struct PencilQuery {
  Form f0;
  Form f1;
};

struct PencilDisc {
  PrimeEmbedding embedding;
  std::vector<std::uint64_t> poly;  // D(1, t), constant term first
  std::uint64_t at_infinity = 0;    // D(0, 1)
};

inline constexpr std::size_t kPencilSamples = 120;
inline constexpr std::size_t kPencilHeldOut = 10;

/// D(1, t) mod p by interpolation over kPencilSamples values checked on kPencilHeldOut more.
PencilDisc pencil_disc_poly_mod_p(const PencilQuery& q, const PrimeEmbedding& e);

/// Roots of D(1, t) in F_p with multiplicities, ascending.
std::vector<fp_poly::Root> pencil_roots(const PencilDisc& d);

/// act(T, f) is proportional to g.
bool verify_equivalence_witness(const ExactMatrix& t, const Form& f, const Form& g);

}  // namespace quartic
