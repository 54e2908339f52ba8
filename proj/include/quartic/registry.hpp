#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quartic/linalg.hpp"

namespace quartic {

struct Generator {
  std::string name;
  ExactMatrix matrix;
  int sigma = 1;   // projective order
  CycScalar tau;   // matrix^sigma = tau * E
};

struct GroupMeta {
  std::string isomorphism_class;
  std::optional<long> expected_order;
  bool primitive = true;
  std::string diagram;
  std::vector<std::string> contains;
};

struct GroupSpec {
  std::string name;
  int conductor = 1;
  int size = 0;
  std::vector<Generator> generators;
  GroupMeta meta;

  const CyclotomicField& field() const { return CyclotomicField::of(conductor); }
  const Generator* find_generator(std::string_view gen_name) const;
};

/// Parses and validates a group file. Errors carry line and column.
GroupSpec parse_group_file(std::string_view text);

/// Matrix file `witness conductor N size S rows { a, b, ...; ... }`.
ExactMatrix parse_witness_file(std::string_view text);

/// Writes a group in the file format; parse_group_file(serialize(g)) reproduces g.
std::string serialize_group(const GroupSpec& group);

/// Builds a validated group from matrices already over one field.
GroupSpec make_group(std::string name, std::vector<std::pair<std::string, ExactMatrix>> generators,
                     GroupMeta meta = {});

/// Directory holding the bundled data; QUARTIC_DATA_DIR overrides the built-in path.
std::string data_directory();

/// The bundled groups, in registry order. Loaded once.
const std::vector<GroupSpec>& builtin_groups();

/// Looks a group up by name among the builtin ones; throws UnknownGroup.
const GroupSpec& lookup_group(std::string_view name);

/// Loads every `*.grp` file of a directory, sorted by registry order then name.
std::vector<GroupSpec> load_group_directory(const std::string& directory);

GroupSpec load_group_file(const std::string& path);

inline constexpr long kDefaultClosureCap = 4096;

/// Order of the group generated in PGL, by breadth-first closure over projectively
/// canonical matrices. Throws CapExceeded once more than `cap` elements are found.
long group_order_closure(const GroupSpec& group, long cap = kDefaultClosureCap);

/// All elements of the closure, projectively canonical, in BFS order.
std::vector<ExactMatrix> group_elements(const GroupSpec& group, long cap = kDefaultClosureCap);

}  // namespace quartic
