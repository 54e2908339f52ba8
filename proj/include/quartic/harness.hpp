#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quartic/serialize.hpp"

namespace quartic {

struct Check {
  std::string item;
  bool ok = false;
  std::string detail;
};

struct GroupRecord {
  std::string group;
  std::vector<std::size_t> expected_dimensions;
  std::vector<std::size_t> computed_dimensions;
  std::vector<Check> checks;
  std::vector<std::string> annotations;
  bool match = false;
};

struct PencilRecord {
  std::string name;
  std::string group;
  std::vector<Check> checks;
  Json details = Json::object();
  bool match = false;
};

struct ReproReport {
  std::vector<GroupRecord> groups;
  std::vector<PencilRecord> pencils;
  std::vector<Check> burnside;
  bool match = false;
};

struct HarnessOptions {
  /// Restrict to one group (and its pencil); empty runs everything.
  std::string only;
  /// Directory with golden.json and groups/; empty uses data_directory().
  std::string data_dir;
  /// Primes per pencil; 0 uses the golden value.
  std::size_t pencil_primes = 0;
};

Json load_golden(const std::string& data_dir = {});

ReproReport reproduce_paper(const HarnessOptions& options = {});

Json report_to_json(const ReproReport& r);
std::string render_report(const ReproReport& r);

/// "group X: item: detail" for the first failed check.
std::optional<std::string> first_mismatch(const ReproReport& r);

/// Checks one group against its golden entry, with the group already loaded.
GroupRecord check_group(const GroupSpec& group, const Json& entry);

/// Pencil against its golden entry: fibers, factor divisibility, support, member verdicts.
PencilRecord check_pencil(const Json& entry, std::size_t primes = 0);

/// Root report for an arbitrary pencil with no expectations.
PencilRecord describe_pencil(const std::string& name, const Form& f0, const Form& f1, std::size_t primes);

/// Form of the golden entry {"conductor", "text"}.
Form golden_form(const Json& entry);

}  // namespace quartic
