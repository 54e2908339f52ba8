#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quartic/forms.hpp"

namespace quartic::testing {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && cases > 0; }
};

inline constexpr std::size_t kPropertyCases = 200;
inline constexpr std::uint64_t kPropertySeed = 20240611;

PropertyResult field_axioms(std::size_t cases, std::uint64_t seed = kPropertySeed);
PropertyResult reduction_homomorphism(std::size_t cases, std::uint64_t seed = kPropertySeed);
PropertyResult act_contravariance(std::size_t cases, std::uint64_t seed = kPropertySeed);
PropertyResult operator_matrix_oracle(std::size_t cases, std::uint64_t seed = kPropertySeed);
PropertyResult kernel_determinism(std::size_t cases, std::uint64_t seed = kPropertySeed);
PropertyResult solver_completeness(std::size_t cases, std::uint64_t seed = kPropertySeed);
PropertyResult disc_normalization(std::size_t cases, std::uint64_t seed = kPropertySeed);
PropertyResult disc_homogeneity(std::size_t cases, std::uint64_t seed = kPropertySeed);

std::vector<PropertyResult> run_all_properties(std::size_t cases = kPropertyCases, std::uint64_t seed = kPropertySeed);

/// f(Ax) by expanding every product of linear forms term by term.
SparsePoly expand_substitution(const ExactMatrix& a, const Form& f);

/// Cofactor expansion along the first row.
std::uint64_t cofactor_determinant(const std::vector<std::vector<std::uint64_t>>& m, const PrimeField& field);

}  // namespace quartic::testing
