#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "quartic/error.hpp"
#include "quartic/harness.hpp"

using namespace quartic;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::NotInField:
    case ErrorCode::DivisionByZero:
    case ErrorCode::NonInvertibleGenerator:
    case ErrorCode::InfiniteOrderGenerator:
    case ErrorCode::Io:
      return kExitParse;
    case ErrorCode::UnknownGroup:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotAPencil:
    case ErrorCode::ZeroForm:
    case ErrorCode::NonInvertible:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::ConductorMismatch:
      return kExitUsage;
    default:
      return kExitMismatch;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string scalar_cell(const CycScalar& c) { return approx_string(c) + "  [" + c.to_string() + "]"; }

void print_verdict(const std::string& label, const SmoothnessVerdict& v) {
  std::cout << "  " << label << ": " << verdict_name(v.kind);
  if (v.witness) std::cout << "  MSC " << v.witness->describe();
  if (v.point) {
    std::cout << "  point (";
    for (std::size_t i = 0; i < v.point->size(); ++i) std::cout << (i ? ", " : "") << (*v.point)[i].to_string();
    std::cout << ")";
  }
  if (v.kind == VerdictKind::Smooth) std::cout << "  Disc = " << v.disc_mod_p << " mod " << v.prime;
  if (v.kind == VerdictKind::SingularProbable) {
    std::cout << "  Disc = 0 mod";
    for (auto p : v.primes) std::cout << " " << p;
  }
  std::cout << "\n";
}

struct Options {
  bool json = false;
  std::string group;
  std::string file;
  int degree = 4;
  bool classify = false;
  std::vector<std::string> combinations;
  std::string form;
  int conductor = 1;
  std::size_t primes = 0;
  std::string f0, f1;
  std::string witness, from, to;
  std::string only;
  std::string data_dir;
};

int cmd_groups_list(const Options& o) {
  const auto groups = o.data_dir.empty() ? builtin_groups() : load_group_directory(o.data_dir + "/groups");
  if (o.json) {
    Json arr = Json::array();
    for (const auto& g : groups) {
      arr.push_back(Json{{"name", g.name},
                         {"conductor", g.conductor},
                         {"generators", g.generators.size()},
                         {"order", group_order_closure(g)},
                         {"class", g.meta.isomorphism_class},
                         {"primitive", g.meta.primitive}});
    }
    std::cout << dump_json(arr);
    return 0;
  }
  std::cout << std::left << std::setw(8) << "name" << std::setw(11) << "conductor" << std::setw(12) << "generators"
            << std::setw(8) << "order" << std::setw(22) << "class"
            << "primitive\n";
  for (const auto& g : groups) {
    std::cout << std::left << std::setw(8) << g.name << std::setw(11) << g.conductor << std::setw(12)
              << g.generators.size() << std::setw(8) << group_order_closure(g) << std::setw(22)
              << g.meta.isomorphism_class << (g.meta.primitive ? "yes" : "no") << "\n";
  }
  return 0;
}

GroupSpec resolve_group(const Options& o) {
  if (!o.file.empty()) return load_group_file(o.file);
  if (!o.data_dir.empty()) return load_group_file(o.data_dir + "/groups/" + o.group + ".grp");
  return lookup_group(o.group);
}

// "INDEX:c0;c1;..." with coefficients in the subspace's field.
Form combination(const std::vector<InvariantSubspace>& subs, const std::string& text) {
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  if (colon == std::string::npos || head.empty() || head.find_first_not_of("0123456789") != std::string::npos) {
    fail(ErrorCode::InvalidArgument, "combination must look like INDEX:c0;c1;...");
  }
  const std::size_t index = std::stoul(head);
  if (index >= subs.size()) fail(ErrorCode::InvalidArgument, "no subspace " + std::to_string(index));
  const auto& sub = subs[index];
  std::vector<std::string> parts;
  std::stringstream rest(text.substr(colon + 1));
  for (std::string item; std::getline(rest, item, ';');) parts.push_back(item);
  if (parts.size() != sub.dimension()) fail(ErrorCode::InvalidArgument, "combination needs one coefficient per basis form");
  Form f(sub.basis.front().basis(), sub.field());
  for (std::size_t i = 0; i < parts.size(); ++i) f += sub.basis[i] * parse_scalar(parts[i], sub.field());
  return f;
}

int cmd_invariants(const Options& o) {
  const GroupSpec g = resolve_group(o);
  const auto subs = invariant_subspaces(g, o.degree);
  SmoothnessPolicy policy;
  policy.group = &g;
  if (o.json) {
    Json j = subspaces_to_json(g.name, o.degree, subs);
    if (o.classify) {
      for (std::size_t i = 0; i < subs.size(); ++i) {
        Json verdicts = Json::array();
        for (const auto& f : subs[i].basis) verdicts.push_back(verdict_to_json(smoothness_verdict(f, policy)));
        j["subspaces"][i]["verdicts"] = std::move(verdicts);
      }
      Json combos = Json::array();
      for (const auto& c : o.combinations) {
        const Form f = combination(subs, c);
        combos.push_back(Json{{"combination", c}, {"form", form_to_json(f)}, {"verdict", verdict_to_json(smoothness_verdict(f, policy))}});
      }
      if (!o.combinations.empty()) j["combinations"] = std::move(combos);
    }
    std::cout << dump_json(j);
    return 0;
  }
  std::cout << "group " << g.name << ", degree " << o.degree << ": " << subs.size() << " subspace"
            << (subs.size() == 1 ? "" : "s") << "\n";
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& s = subs[i];
    std::cout << "[" << i << "] dimension " << s.dimension() << "\n  character:";
    for (std::size_t k = 0; k < s.character.size(); ++k) {
      std::cout << "\n    " << g.generators[k].name << " -> " << scalar_cell(s.character[k]);
    }
    std::cout << "\n  basis:\n";
    for (const auto& f : s.basis) std::cout << "    " << f.to_string() << "\n";
    if (o.classify) {
      for (std::size_t b = 0; b < s.basis.size(); ++b) {
        print_verdict("basis " + std::to_string(b), smoothness_verdict(s.basis[b], policy));
      }
    }
  }
  if (o.classify) {
    for (const auto& c : o.combinations) print_verdict("combination " + c, smoothness_verdict(combination(subs, c), policy));
  }
  return 0;
}

int cmd_smooth(const Options& o) {
  const Form f = Form::parse(o.form, CyclotomicField::of(o.conductor));
  SmoothnessPolicy policy;
  std::optional<GroupSpec> g;
  if (!o.group.empty()) {
    g = resolve_group(o);
    policy.group = &*g;
  }
  if (o.primes != 0) policy.primes_to_try = o.primes;
  const auto v = smoothness_verdict(f, policy);
  if (o.json) {
    std::cout << dump_json(verdict_to_json(v));
  } else {
    print_verdict(f.to_string(), v);
  }
  return 0;
}

void print_pencil(const PencilRecord& rec) {
  std::cout << "pencil " << rec.name << "\n";
  for (const auto& p : rec.details.at("primes")) {
    std::cout << "  p = " << p.at("prime") << ": deg D(1,t) = " << p.at("degree")
              << (p.at("vanishes_at_infinity").get<bool>() ? ", D(0,1) = 0" : ", D(0,1) != 0") << ", roots:";
    for (const auto& r : p.at("roots")) std::cout << " " << r.at("value") << "^" << r.at("multiplicity");
    std::cout << "\n";
  }
  for (const auto& c : rec.checks) std::cout << "  " << (c.ok ? "ok   " : "FAIL ") << c.item << ": " << c.detail << "\n";
}

int cmd_pencil(const Options& o) {
  PencilRecord rec;
  if (!o.group.empty()) {
    const Json golden = load_golden(o.data_dir);
    const Json* entry = nullptr;
    for (const auto& p : golden.at("pencils")) {
      if (p.value("group", "") == o.group) entry = &p;
    }
    if (entry != nullptr) {
      rec = check_pencil(*entry, o.primes);
    } else {
      const GroupSpec g = resolve_group(o);
      const auto subs = invariant_subspaces(g, 4);
      if (subs.size() != 1 || subs.front().dimension() != 2) {
        fail(ErrorCode::NotAPencil, "group " + g.name + " has no two-dimensional invariant subspace");
      }
      rec = describe_pencil(g.name, subs.front().basis[0], subs.front().basis[1], o.primes == 0 ? 3 : o.primes);
    }
  } else {
    if (o.f0.empty() || o.f1.empty()) fail(ErrorCode::InvalidArgument, "pencil needs --group or both --f0 and --f1");
    const auto& field = CyclotomicField::of(o.conductor);
    rec = describe_pencil("f0, f1", Form::parse(o.f0, field), Form::parse(o.f1, field), o.primes == 0 ? 3 : o.primes);
  }
  if (o.json) {
    Json j{{"pencil", rec.name}, {"group", rec.group}, {"details", rec.details}, {"match", rec.match}};
    Json checks = Json::array();
    for (const auto& c : rec.checks) checks.push_back(Json{{"item", c.item}, {"ok", c.ok}, {"detail", c.detail}});
    j["checks"] = std::move(checks);
    std::cout << dump_json(j);
  } else {
    print_pencil(rec);
  }
  return rec.match ? 0 : kExitMismatch;
}

int cmd_verify_equivalence(const Options& o) {
  const ExactMatrix t = parse_witness_file(read_file(o.witness));
  const auto& field = CyclotomicField::of(static_cast<int>(lcm_long(o.conductor, t.conductor())));
  const bool ok = verify_equivalence_witness(t, Form::parse(o.from, field), Form::parse(o.to, field));
  if (o.json) {
    std::cout << dump_json(Json{{"equivalent", ok}});
  } else {
    std::cout << (ok ? "equivalent: T maps the first form to a multiple of the second\n"
                     : "not equivalent under this witness\n");
  }
  return ok ? 0 : kExitMismatch;
}

int cmd_reproduce(const Options& o) {
  HarnessOptions h;
  h.only = o.only;
  h.data_dir = o.data_dir;
  h.pencil_primes = o.primes;
  const auto report = reproduce_paper(h);
  if (o.json) {
    std::cout << dump_json(report_to_json(report));
  } else {
    std::cout << render_report(report);
  }
  if (!report.match) {
    if (const auto m = first_mismatch(report)) std::cerr << "first mismatch: " << *m << "\n";
    return kExitMismatch;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant quartic forms of finite subgroups of PGL_4"};
  app.require_subcommand(1);
  Options o;
  if (const char* dir = std::getenv("QUARTIC_DATA_DIR")) o.data_dir = dir;
  app.add_option("--data-dir", o.data_dir, "Directory with groups/ and golden.json (overrides QUARTIC_DATA_DIR)");

  auto* groups = app.add_subcommand("groups", "Group registry");
  auto* list = groups->add_subcommand("list", "List the bundled groups");
  list->add_flag("--json", o.json);
  groups->require_subcommand(1);

  auto* inv = app.add_subcommand("invariants", "Maximal invariant subspaces of forms");
  auto* inv_group = inv->add_option("--group", o.group, "Registry group name");
  auto* inv_file = inv->add_option("--file", o.file, "Group file");
  inv_group->excludes(inv_file);
  inv->add_option("--degree", o.degree, "Form degree")->default_val(4);
  inv->add_flag("--classify", o.classify, "Append smoothness verdicts");
  inv->add_option("--combination", o.combinations, "Linear combination INDEX:c0;c1;... to classify (implies --classify)");
  inv->add_flag("--json", o.json);

  auto* smooth = app.add_subcommand("smooth", "Smoothness verdict for one form");
  smooth->add_option("--form", o.form, "Form expression in x0..x3")->required();
  smooth->add_option("--conductor", o.conductor, "Conductor of the coefficient field")->default_val(1);
  smooth->add_option("--group", o.group, "Group whose eigenvectors are tried as singular points");
  smooth->add_option("--primes", o.primes, "Primes to try before answering singular_probable");
  smooth->add_flag("--json", o.json);

  auto* pencil = app.add_subcommand("pencil", "Discriminant of a pencil modulo primes");
  pencil->add_option("--group", o.group, "Group with a two-dimensional invariant subspace");
  pencil->add_option("--f0", o.f0, "First form");
  pencil->add_option("--f1", o.f1, "Second form");
  pencil->add_option("--conductor", o.conductor, "Conductor for --f0/--f1")->default_val(1);
  pencil->add_option("--primes", o.primes, "Number of primes");
  pencil->add_flag("--json", o.json);

  auto* equiv = app.add_subcommand("verify-equivalence", "Check act(T, f) ~ g for a witness T");
  equiv->add_option("--witness", o.witness, "Witness matrix file")->required();
  equiv->add_option("--from", o.from, "Form f")->required();
  equiv->add_option("--to", o.to, "Form g")->required();
  equiv->add_option("--conductor", o.conductor, "Conductor of the forms")->default_val(1);
  equiv->add_flag("--json", o.json);

  auto* repro = app.add_subcommand("reproduce-paper", "Run the golden catalog");
  repro->add_option("--only", o.only, "Single group");
  repro->add_option("--primes", o.primes, "Primes per pencil");
  repro->add_flag("--json", o.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (groups->parsed()) return cmd_groups_list(o);
    if (inv->parsed()) {
      if (o.group.empty() && o.file.empty()) fail(ErrorCode::InvalidArgument, "invariants needs --group or --file");
      o.classify = o.classify || !o.combinations.empty();
      return cmd_invariants(o);
    }
    if (smooth->parsed()) return cmd_smooth(o);
    if (pencil->parsed()) return cmd_pencil(o);
    if (equiv->parsed()) return cmd_verify_equivalence(o);
    if (repro->parsed()) return cmd_reproduce(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kExitUsage;
}
