#pragma once

#include <string>

#include "json.hpp"
#include "quartic/smoothness.hpp"
#include "quartic/solver.hpp"

namespace quartic {

using Json = nlohmann::ordered_json;

/// {"conductor": N, "coeffs": ["p/q", ...], "approx": [re, im]}
Json scalar_to_json(const CycScalar& a);
CycScalar scalar_from_json(const Json& j);

/// {"conductor", "variables", "degree", "text", "terms": [{"exponent", "coeff"}]}
Json form_to_json(const Form& f);
Form form_from_json(const Json& j);

Json point_to_json(const ExactVector& v);
ExactVector point_from_json(const Json& j);

/// {"group", "degree", "subspaces": [{"character", "dimension", "basis"}]}
Json subspaces_to_json(const std::string& group, int degree, const std::vector<InvariantSubspace>& subs);

/// {"verdict", "certificate", "primes"}
Json verdict_to_json(const SmoothnessVerdict& v);
SmoothnessVerdict verdict_from_json(const Json& j);

/// Two-space indented dump with a trailing newline; parse and dump again reproduces it.
std::string dump_json(const Json& j);

/// Six significant digits of the complex embedding, e.g. "0.707107+0.707107i".
std::string approx_string(const CycScalar& a);

}  // namespace quartic
