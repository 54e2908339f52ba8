#include "quartic/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "quartic/error.hpp"

namespace quartic {

namespace {

std::string resolve_dir(const std::string& dir) { return dir.empty() ? data_directory() : dir; }

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << "]";
  return out.str();
}

std::string describe(const SmoothnessVerdict& v) {
  std::ostringstream out;
  out << verdict_name(v.kind);
  if (v.witness) out << " (MSC: " << v.witness->describe() << ")";
  if (v.point) {
    out << " (singular point [";
    for (std::size_t i = 0; i < v.point->size(); ++i) out << (i ? ", " : "") << approx_string((*v.point)[i]);
    out << "])";
  }
  if (v.kind == VerdictKind::Smooth) out << " (Disc = " << v.disc_mod_p << " mod " << v.prime << ")";
  if (v.kind == VerdictKind::SingularProbable) out << " (Disc = 0 at " << v.primes.size() << " primes)";
  return out.str();
}

bool all_ok(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

Check verdict_check(const std::string& item, const Form& f, const std::string& expected, const GroupSpec* group,
                    bool msc_only = false) {
  SmoothnessPolicy policy;
  policy.group = group;
  const auto v = smoothness_verdict(f, policy);
  bool ok = false;
  if (expected == "smooth") {
    ok = v.kind == VerdictKind::Smooth && recheck_verdict(f, v);
  } else if (expected == "singular") {
    ok = v.kind == VerdictKind::Singular && recheck_verdict(f, v) && (!msc_only || v.witness.has_value());
  }
  return {item, ok, "expected " + expected + ", got " + describe(v)};
}

// A fiber [a : b] as the dehomogenized parameter t = b / a, or nullopt for a = 0.
std::optional<std::uint64_t> fiber_parameter(const CycScalar& a, const CycScalar& b, const PrimeEmbedding& e) {
  const PrimeField f = e.field();
  const std::uint64_t ra = reduce_mod_prime(a, e.restrict_to(a.field().conductor()));
  const std::uint64_t rb = reduce_mod_prime(b, e.restrict_to(b.field().conductor()));
  if (ra == 0) return std::nullopt;
  return f.mul(rb, f.inv(ra));
}

std::string point_name(const std::optional<std::uint64_t>& t) { return t ? std::to_string(*t) : "inf"; }

std::vector<PrimeEmbedding> usable_primes(int conductor, std::size_t count, const std::vector<const CycScalar*>& scalars,
                                          const std::vector<const Form*>& forms) {
  std::vector<PrimeEmbedding> out;
  std::uint64_t floor = kDefaultMinPrime;
  while (out.size() < count) {
    for (const auto& e : find_prime_embeddings(conductor, count - out.size(), floor)) {
      floor = e.p;
      try {
        for (const auto* s : scalars) reduce_mod_prime(*s, e.restrict_to(s->field().conductor()));
        for (const auto* f : forms) reduce_form(*f, e.restrict_to(f->conductor()));
        out.push_back(e);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::BadPrime) throw;
      }
    }
  }
  return out;
}

struct Fiber {
  CycScalar a;
  CycScalar b;
  std::string label;
};

std::vector<Fiber> parse_fibers(const Json& arr, const CyclotomicField& field) {
  std::vector<Fiber> out;
  for (const auto& pair : arr) {
    const auto sa = pair.at(0).get<std::string>();
    const auto sb = pair.at(1).get<std::string>();
    out.push_back({parse_scalar(sa, field), parse_scalar(sb, field), "[" + sa + " : " + sb + "]"});
  }
  return out;
}

Form member(const Form& f0, const Form& f1, const Fiber& fib) {
  const auto& field = common_field(common_field(f0.field(), f1.field()), fib.a.field());
  return f0.lift(field) * fib.a.lift(field) + f1.lift(field) * fib.b.lift(field);
}

Json roots_json(const std::vector<fp_poly::Root>& roots) {
  Json arr = Json::array();
  for (const auto& r : roots) arr.push_back(Json{{"value", r.value}, {"multiplicity", r.multiplicity}});
  return arr;
}

}  // namespace

Form golden_form(const Json& entry) {
  return Form::parse(entry.at("text").get<std::string>(), CyclotomicField::of(entry.at("conductor").get<int>()));
}

Json load_golden(const std::string& data_dir) {
  const auto path = std::filesystem::path(resolve_dir(data_dir)) / "golden.json";
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::SyntaxError, path.string() + ": " + e.what());
  }
}

GroupRecord check_group(const GroupSpec& group, const Json& entry) {
  GroupRecord rec;
  rec.group = group.name;
  const int degree = 4;
  if (group.meta.expected_order) {
    const long order = group_order_closure(group);
    rec.checks.push_back({"order", order == *group.meta.expected_order,
                          "closure " + std::to_string(order) + ", declared " + std::to_string(*group.meta.expected_order)});
  }
  const auto subs = invariant_subspaces(group, degree);
  for (const auto& s : subs) rec.computed_dimensions.push_back(s.dimension());
  rec.expected_dimensions = entry.at("dimensions").get<std::vector<std::size_t>>();
  auto a = rec.expected_dimensions;
  auto b = rec.computed_dimensions;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  rec.checks.push_back({"subspaces", a == b, "expected " + join(rec.expected_dimensions) + ", computed " +
                                                 join(rec.computed_dimensions)});
  std::map<std::string, Form> named;
  for (const auto& fe : entry.at("forms")) {
    const auto name = fe.at("name").get<std::string>();
    const Form f = golden_form(fe);
    named.emplace(name, f);
    const bool inside = std::any_of(subs.begin(), subs.end(), [&](const auto& s) { return contains_form(s, f); });
    rec.checks.push_back({name + " in span", inside, inside ? "contained" : "not in any computed subspace"});
    if (fe.contains("verdict")) rec.checks.push_back(verdict_check(name + " verdict", f, fe.at("verdict"), &group));
    if (fe.contains("note")) rec.annotations.push_back(name + ": " + fe.at("note").get<std::string>());
    if (fe.contains("literal_text")) {
      const Form lit = Form::parse(fe.at("literal_text").get<std::string>(), f.field());
      const bool lit_in = std::any_of(subs.begin(), subs.end(), [&](const auto& s) { return contains_form(s, lit); });
      rec.annotations.push_back(name + ": literal reading " + (lit_in ? "matches" : "does not match") +
                                " a computed subspace");
    }
  }
  if (entry.contains("span_members")) {
    const auto& sm = entry.at("span_members");
    std::vector<Form> basis;
    for (const auto& n : sm.at("basis")) basis.push_back(named.at(n.get<std::string>()));
    const auto expected = sm.at("verdict").get<std::string>();
    for (const auto& combo : sm.at("combinations")) {
      Form f(basis.front().basis(), basis.front().field());
      std::string label = "span member (";
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const long c = combo.at(i).get<long>();
        label += (i ? ", " : "") + std::to_string(c);
        f += basis[i].lift(f.field()) * CycScalar(f.field(), c);
      }
      label += ")";
      if (f.is_zero()) continue;
      rec.checks.push_back(verdict_check(label, f, expected, &group, true));
    }
  }
  rec.match = all_ok(rec.checks);
  return rec;
}

PencilRecord check_pencil(const Json& entry, std::size_t primes) {
  PencilRecord rec;
  rec.name = entry.at("name").get<std::string>();
  rec.group = entry.value("group", "");
  const int conductor = entry.at("conductor").get<int>();
  const auto& field = CyclotomicField::of(conductor);
  const Form f0 = Form::parse(entry.at("f0").get<std::string>(), field);
  const Form f1 = Form::parse(entry.at("f1").get<std::string>(), field);
  const GroupSpec* group = nullptr;
  if (!rec.group.empty()) group = &lookup_group(rec.group);
  const std::size_t count = primes != 0 ? primes : entry.value("primes", std::size_t{3});

  const int points_conductor = entry.value("points_conductor", conductor);
  const auto& points_field = CyclotomicField::of(points_conductor);
  const auto fibers = entry.contains("fibers") ? parse_fibers(entry.at("fibers"), field) : std::vector<Fiber>{};
  const auto singular_members =
      entry.contains("singular_members") ? parse_fibers(entry.at("singular_members"), points_field) : std::vector<Fiber>{};
  const auto smooth_members =
      entry.contains("smooth_members") ? parse_fibers(entry.at("smooth_members"), points_field) : std::vector<Fiber>{};

  std::optional<SparsePoly> factor;
  int factor_degree = 0;
  if (entry.contains("factor")) {
    factor = parse_polynomial(entry.at("factor").get<std::string>(), field, 2);
    for (const auto& [e, c] : *factor) factor_degree = std::max(factor_degree, e[0] + e[1]);
  }

  std::vector<const CycScalar*> scalars;
  for (const auto* list : {&fibers, &singular_members}) {
    for (const auto& f : *list) {
      scalars.push_back(&f.a);
      scalars.push_back(&f.b);
    }
  }
  if (factor) {
    for (const auto& [e, c] : *factor) scalars.push_back(&c);
  }
  const int embed_conductor = static_cast<int>(lcm_long(conductor, points_conductor));
  const auto embeddings = usable_primes(embed_conductor, count, scalars, {&f0, &f1});
  const int disc_degree = discriminant_degree(f0.variables(), f0.degree());

  Json per_prime = Json::array();
  bool fibers_vanish = true, factor_divides = true, factor_roots_exact = true, support_exact = true,
       members_are_roots = true;
  std::string fiber_detail, factor_detail, support_detail, member_detail;
  for (const auto& e : embeddings) {
    const PrimeField pf = e.field();
    const auto disc = pencil_disc_poly_mod_p(PencilQuery{f0, f1}, e);
    const auto roots = pencil_roots(disc);
    const int deg = fp_poly::degree(disc.poly);
    std::set<std::string> d_support;
    for (const auto& r : roots) d_support.insert(std::to_string(r.value));
    if (disc.at_infinity == 0) d_support.insert("inf");
    Json pj{{"prime", e.p},
            {"degree", deg},
            {"vanishes_at_infinity", disc.at_infinity == 0},
            {"roots", roots_json(roots)}};

    if (!fibers.empty()) {
      std::set<std::string> expected;
      for (const auto& fib : fibers) {
        const auto t = fiber_parameter(fib.a, fib.b, e);
        expected.insert(point_name(t));
        const bool zero = t ? fp_poly::eval(pf, disc.poly, *t) == 0 : disc.at_infinity == 0;
        if (!zero) {
          fibers_vanish = false;
          fiber_detail = "D does not vanish at " + fib.label + " mod " + std::to_string(e.p);
        }
      }
      if (entry.value("exact_support", false) && d_support != expected) {
        support_exact = false;
        std::string got;
        for (const auto& s : d_support) got += (got.empty() ? "" : ", ") + s;
        support_detail = "mod " + std::to_string(e.p) + " D vanishes at {" + got + "}";
      }
      if (factor) {
        // Dehomogenize at lambda0 = 1: coefficient of t^k is that of x0^(deg-k) x1^k.
        fp_poly::Poly fpoly;
        for (const auto& [ex, c] : *factor) {
          const auto k = static_cast<std::size_t>(ex[1]);
          if (fpoly.size() <= k) fpoly.resize(k + 1, 0);
          fpoly[k] = pf.add(fpoly[k], reduce_mod_prime(c, e.restrict_to(conductor)));
        }
        fp_poly::trim(fpoly);
        const int lambda0_in_factor = factor_degree - fp_poly::degree(fpoly);
        const int lambda0_in_disc = disc.at_infinity == 0 ? disc_degree - deg : 0;
        fp_poly::Poly quot, rem;
        fp_poly::divmod(pf, disc.poly, fpoly, quot, rem);
        if (!rem.empty() || lambda0_in_factor > lambda0_in_disc || disc.poly.empty()) {
          factor_divides = false;
          factor_detail = "factor does not divide D mod " + std::to_string(e.p);
        }
        std::set<std::string> froots;
        for (const auto& r : fp_poly::roots(pf, fpoly)) froots.insert(std::to_string(r.value));
        if (lambda0_in_factor > 0) froots.insert("inf");
        if (froots != expected) {
          factor_roots_exact = false;
          factor_detail = "factor roots mod " + std::to_string(e.p) + " differ from the listed fibers";
        }
      }
    }
    for (const auto& m : singular_members) {
      const auto t = fiber_parameter(m.a, m.b, e);
      const bool zero = t ? fp_poly::eval(pf, disc.poly, *t) == 0 : disc.at_infinity == 0;
      if (!zero) {
        members_are_roots = false;
        member_detail = m.label + " is not a root mod " + std::to_string(e.p);
      }
    }
    per_prime.push_back(std::move(pj));
  }
  rec.details["primes"] = std::move(per_prime);
  if (!fibers.empty()) {
    rec.checks.push_back({"listed fibers are roots", fibers_vanish, fibers_vanish ? "at every prime" : fiber_detail});
    if (factor) {
      rec.checks.push_back({"factor divides D", factor_divides, factor_divides ? "at every prime" : factor_detail});
      rec.checks.push_back({"factor roots are the listed fibers", factor_roots_exact,
                            factor_roots_exact ? "at every prime" : factor_detail});
    }
    if (entry.value("exact_support", false)) {
      rec.checks.push_back({"D vanishes only at the listed fibers", support_exact,
                            support_exact ? "at every prime" : support_detail});
    }
  }
  if (!singular_members.empty()) {
    rec.checks.push_back({"singular members are roots", members_are_roots,
                          members_are_roots ? "at every prime" : member_detail});
  }
  if (entry.contains("fiber_points")) {
    for (const auto& fp : entry.at("fiber_points")) {
      const Fiber fib = parse_fibers(Json::array({fp.at("fiber")}), field).front();
      ExactVector point;
      for (const auto& s : fp.at("point")) point.push_back(parse_scalar(s.get<std::string>(), field));
      const bool ok = singular_point_check(member(f0, f1, fib), point);
      rec.checks.push_back({"fiber " + fib.label + " singular point", ok, ok ? "partials vanish exactly" : "not singular"});
    }
  }
  for (const auto& m : singular_members) {
    const Form f = member(f0, f1, m);
    SmoothnessPolicy policy;
    policy.group = group;
    policy.primes_to_try = std::max<std::size_t>(5, count);
    const auto v = smoothness_verdict(f, policy);
    const bool ok = (v.kind == VerdictKind::Singular && recheck_verdict(f, v)) ||
                    (v.kind == VerdictKind::SingularProbable && v.primes.size() >= count);
    rec.checks.push_back({"member " + m.label, ok, "expected singular, got " + describe(v)});
  }
  for (const auto& m : smooth_members) {
    rec.checks.push_back(verdict_check("member " + m.label, member(f0, f1, m), "smooth", group));
  }
  rec.match = all_ok(rec.checks);
  return rec;
}

PencilRecord describe_pencil(const std::string& name, const Form& f0, const Form& f1, std::size_t primes) {
  PencilRecord rec;
  rec.name = name;
  const auto& field = common_field(f0.field(), f1.field());
  const Form g0 = f0.lift(field);
  const Form g1 = f1.lift(field);
  Json per_prime = Json::array();
  for (const auto& e : usable_primes(field.conductor(), primes, {}, {&g0, &g1})) {
    const auto disc = pencil_disc_poly_mod_p(PencilQuery{g0, g1}, e);
    per_prime.push_back(Json{{"prime", e.p},
                             {"degree", fp_poly::degree(disc.poly)},
                             {"vanishes_at_infinity", disc.at_infinity == 0},
                             {"roots", roots_json(pencil_roots(disc))}});
  }
  rec.details["primes"] = std::move(per_prime);
  rec.match = true;
  return rec;
}

ReproReport reproduce_paper(const HarnessOptions& options) {
  ReproReport report;
  const std::string dir = resolve_dir(options.data_dir);
  const Json golden = load_golden(dir);
  bool found = options.only.empty();
  for (const auto& entry : golden.at("groups")) {
    const auto name = entry.at("group").get<std::string>();
    if (!options.only.empty() && name != options.only) continue;
    found = true;
    try {
      const GroupSpec group = load_group_file((std::filesystem::path(dir) / "groups" / (name + ".grp")).string());
      report.groups.push_back(check_group(group, entry));
    } catch (const Error& e) {
      GroupRecord rec;
      rec.group = name;
      rec.checks.push_back({"load", false, e.what()});
      report.groups.push_back(std::move(rec));
    }
  }
  if (!found) fail(ErrorCode::UnknownGroup, "no golden entry for group " + options.only);
  for (const auto& entry : golden.at("pencils")) {
    if (!options.only.empty() && entry.value("group", "") != options.only) continue;
    report.pencils.push_back(check_pencil(entry, options.pencil_primes));
  }
  if (options.only.empty() && golden.contains("burnside")) {
    for (const auto& fe : golden.at("burnside").at("forms")) {
      report.burnside.push_back(verdict_check(fe.at("name").get<std::string>() + " verdict", golden_form(fe),
                                              fe.at("verdict").get<std::string>(), nullptr));
    }
  }
  report.match = all_ok(report.burnside);
  for (const auto& g : report.groups) report.match = report.match && g.match;
  for (const auto& p : report.pencils) report.match = report.match && p.match;
  return report;
}

namespace {

Json checks_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) arr.push_back(Json{{"item", c.item}, {"ok", c.ok}, {"detail", c.detail}});
  return arr;
}

}  // namespace

Json report_to_json(const ReproReport& r) {
  Json j;
  Json groups = Json::array();
  for (const auto& g : r.groups) {
    groups.push_back(Json{{"group", g.group},
                          {"expected", Json{{"dimensions", g.expected_dimensions}}},
                          {"computed", Json{{"dimensions", g.computed_dimensions}}},
                          {"checks", checks_json(g.checks)},
                          {"annotations", g.annotations},
                          {"match", g.match}});
  }
  j["groups"] = std::move(groups);
  Json pencils = Json::array();
  for (const auto& p : r.pencils) {
    pencils.push_back(Json{{"pencil", p.name},
                           {"group", p.group},
                           {"checks", checks_json(p.checks)},
                           {"details", p.details},
                           {"match", p.match}});
  }
  j["pencils"] = std::move(pencils);
  j["burnside"] = checks_json(r.burnside);
  j["match"] = r.match;
  return j;
}

std::string render_report(const ReproReport& r) {
  std::ostringstream out;
  auto failed = [&](const std::vector<Check>& checks) {
    for (const auto& c : checks) {
      if (!c.ok) out << "    FAIL " << c.item << ": " << c.detail << "\n";
    }
  };
  for (const auto& g : r.groups) {
    out << (g.match ? "match    " : "MISMATCH ") << g.group << "  expected " << join(g.expected_dimensions)
        << "  computed " << join(g.computed_dimensions) << "\n";
    failed(g.checks);
    for (const auto& a : g.annotations) out << "    note " << a << "\n";
  }
  for (const auto& p : r.pencils) {
    out << (p.match ? "match    " : "MISMATCH ") << "pencil " << p.name << "\n";
    failed(p.checks);
  }
  if (!r.burnside.empty()) {
    out << (all_ok(r.burnside) ? "match    " : "MISMATCH ") << "burnside\n";
    failed(r.burnside);
  }
  out << (r.match ? "reproduction: match\n" : "reproduction: MISMATCH\n");
  return out.str();
}

std::optional<std::string> first_mismatch(const ReproReport& r) {
  for (const auto& g : r.groups) {
    for (const auto& c : g.checks) {
      if (!c.ok) return "group " + g.group + ": " + c.item + ": " + c.detail;
    }
  }
  for (const auto& p : r.pencils) {
    for (const auto& c : p.checks) {
      if (!c.ok) return "pencil " + p.name + ": " + c.item + ": " + c.detail;
    }
  }
  for (const auto& c : r.burnside) {
    if (!c.ok) return "burnside: " + c.item + ": " + c.detail;
  }
  return std::nullopt;
}

}  // namespace quartic
