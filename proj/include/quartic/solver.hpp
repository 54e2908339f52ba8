#pragma once

#include <vector>

#include "quartic/forms.hpp"
#include "quartic/registry.hpp"

namespace quartic {

/// One proportionality factor per generator, in generator order.
using CharacterTuple = std::vector<CycScalar>;

/// Lexicographic comparison of character tuples (component-wise `compare`).
int compare_characters(const CharacterTuple& a, const CharacterTuple& b);

struct InvariantSubspace {
  CharacterTuple character;
  std::vector<Form> basis;  // reduced echelon rows over the monomial basis

  std::size_t dimension() const { return basis.size(); }
  const CyclotomicField& field() const { return basis.front().field(); }
};

struct SolverOptions {
  /// Use the coarse candidate set k_i^(kappa sigma_i) = 1 instead of k_i^sigma_i = tau_i^d.
  bool coarse_candidates = false;
  /// Build the full stacked (m D) x D matrix per candidate instead of restricting level by level.
  bool stacked = false;
  /// Discard candidates whose kernel is already trivial modulo a prime.
  bool modp_filter = true;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Conductor in which every candidate character lives.
int working_conductor(const GroupSpec& group, int d, bool coarse = false);

/// Per-generator candidate values, in the working field.
std::vector<std::vector<CycScalar>> generator_candidates(const GroupSpec& group, int d, bool coarse = false);

/// Full cartesian product of the per-generator candidates.
std::vector<CharacterTuple> character_candidates(const GroupSpec& group, int d, bool coarse = false);

/// The (m D) x D matrix stacking B_{k_j, j} for every generator, over the working field.
ExactMatrix stacked_operator_matrix(const GroupSpec& group, const CharacterTuple& k, int d);

/// All nonzero kernels ker(T_k), sorted by character.
std::vector<InvariantSubspace> invariant_subspaces(const GroupSpec& group, int d, const SolverOptions& options = {});

/// Whether f lies in the span of the subspace (exact rank test over a common field).
/// The zero form always does.
bool contains_form(const InvariantSubspace& sub, const Form& f);

/// Whether every generator maps f to a multiple of itself. Throws ZeroForm.
bool is_group_invariant(const GroupSpec& group, const Form& f);

/// Field Q(zeta_lcm(a, b)).
const CyclotomicField& common_field(const CyclotomicField& a, const CyclotomicField& b);

}  // namespace quartic
