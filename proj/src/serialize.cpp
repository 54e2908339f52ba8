#include "quartic/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "quartic/error.hpp"

namespace quartic {

namespace {

Json require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::SyntaxError, std::string("missing JSON key \"") + key + "\"");
  return j.at(key);
}

double clean(double x) { return std::fabs(x) < 1e-15 ? 0.0 : x; }

}  // namespace

Json scalar_to_json(const CycScalar& a) {
  Json j;
  j["conductor"] = a.field().conductor();
  Json coeffs = Json::array();
  for (const auto& c : a.coeffs()) coeffs.push_back(c.get_str());
  j["coeffs"] = std::move(coeffs);
  const auto z = embed_complex(a);
  j["approx"] = Json::array({clean(z.re()), clean(z.im())});
  return j;
}

CycScalar scalar_from_json(const Json& j) {
  const int conductor = require(j, "conductor").get<int>();
  const auto& field = CyclotomicField::of(conductor);
  std::vector<mpq_class> coeffs;
  for (const auto& c : require(j, "coeffs")) {
    mpq_class q;
    if (q.set_str(c.get<std::string>(), 10) != 0) fail(ErrorCode::SyntaxError, "bad rational " + c.get<std::string>());
    q.canonicalize();
    coeffs.push_back(q);
  }
  return CycScalar::from_coeffs(field, coeffs);
}

Json form_to_json(const Form& f) {
  Json j;
  j["conductor"] = f.conductor();
  j["variables"] = f.variables();
  j["degree"] = f.degree();
  j["text"] = f.to_string();
  Json terms = Json::array();
  for (const auto& [i, c] : f.terms()) {
    terms.push_back(Json{{"exponent", f.basis().exponent(i)}, {"coeff", scalar_to_json(c)}});
  }
  j["terms"] = std::move(terms);
  return j;
}

Form form_from_json(const Json& j) {
  const auto& field = CyclotomicField::of(require(j, "conductor").get<int>());
  const auto& basis = MonomialBasis::of(require(j, "variables").get<int>(), require(j, "degree").get<int>());
  Form f(basis, field);
  for (const auto& t : require(j, "terms")) {
    f.add_to(basis.index(require(t, "exponent").get<Exponent>()), scalar_from_json(require(t, "coeff")).lift(field));
  }
  return f;
}

Json point_to_json(const ExactVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(scalar_to_json(x));
  return j;
}

ExactVector point_from_json(const Json& j) {
  ExactVector v;
  for (const auto& x : j) v.push_back(scalar_from_json(x));
  return v;
}

Json subspaces_to_json(const std::string& group, int degree, const std::vector<InvariantSubspace>& subs) {
  Json j;
  j["group"] = group;
  j["degree"] = degree;
  Json arr = Json::array();
  for (const auto& s : subs) {
    Json e;
    Json ch = Json::array();
    for (const auto& c : s.character) ch.push_back(scalar_to_json(c));
    e["character"] = std::move(ch);
    e["dimension"] = s.dimension();
    Json basis = Json::array();
    for (const auto& f : s.basis) basis.push_back(form_to_json(f));
    e["basis"] = std::move(basis);
    arr.push_back(std::move(e));
  }
  j["subspaces"] = std::move(arr);
  return j;
}

Json verdict_to_json(const SmoothnessVerdict& v) {
  Json j;
  j["verdict"] = verdict_name(v.kind);
  Json cert = Json::object();
  if (v.kind == VerdictKind::Smooth) {
    cert["kind"] = "discriminant";
    cert["prime"] = v.prime;
    cert["disc_mod_p"] = v.disc_mod_p;
  } else if (v.witness) {
    cert["kind"] = "msc";
    cert["linear"] = v.witness->linear;
    cert["quadratic"] = v.witness->quadratic;
    if (v.witness->missing_variable) cert["missing_variable"] = *v.witness->missing_variable;
    cert["description"] = v.witness->describe();
  } else if (v.point) {
    cert["kind"] = "point";
    cert["point"] = point_to_json(*v.point);
  }
  j["certificate"] = std::move(cert);
  j["primes"] = v.primes;
  return j;
}

SmoothnessVerdict verdict_from_json(const Json& j) {
  SmoothnessVerdict v;
  const auto name = require(j, "verdict").get<std::string>();
  bool known = false;
  for (auto k : {VerdictKind::Smooth, VerdictKind::Singular, VerdictKind::SingularProbable, VerdictKind::Unknown}) {
    if (verdict_name(k) == name) {
      v.kind = k;
      known = true;
    }
  }
  if (!known) fail(ErrorCode::SyntaxError, "unknown verdict " + name);
  const Json cert = require(j, "certificate");
  const std::string kind = cert.value("kind", "");
  if (kind == "discriminant") {
    v.prime = require(cert, "prime").get<std::uint64_t>();
    v.disc_mod_p = require(cert, "disc_mod_p").get<std::uint64_t>();
  } else if (kind == "msc") {
    MSCWitness w;
    w.linear = require(cert, "linear").get<std::vector<int>>();
    w.quadratic = require(cert, "quadratic").get<std::vector<int>>();
    if (cert.contains("missing_variable")) w.missing_variable = cert.at("missing_variable").get<int>();
    v.witness = std::move(w);
  } else if (kind == "point") {
    v.point = point_from_json(require(cert, "point"));
  }
  v.primes = require(j, "primes").get<std::vector<std::uint64_t>>();
  return v;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string approx_string(const CycScalar& a) {
  const auto z = embed_complex(a);
  const double re = clean(z.re());
  const double im = clean(z.im());
  char buf[64];
  if (im == 0.0) {
    std::snprintf(buf, sizeof buf, "%.6g", re);
  } else if (re == 0.0) {
    std::snprintf(buf, sizeof buf, "%.6gi", im);
  } else {
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", re, im);
  }
  return buf;
}

}  // namespace quartic
