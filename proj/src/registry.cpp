#include "quartic/registry.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "quartic/error.hpp"
#include "quartic/expr.hpp"

namespace quartic {

const Generator* GroupSpec::find_generator(std::string_view gen_name) const {
  for (const auto& g : generators) {
    if (g.name == gen_name) return &g;
  }
  return nullptr;
}

namespace {

Generator validate_generator(std::string name, ExactMatrix m) {
  if (determinant(m).is_zero()) fail(ErrorCode::NonInvertibleGenerator, "generator " + name + " is singular");
  ProjectiveOrder po{1, CycScalar()};
  try {
    po = projective_order_and_tau(m);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OrderCapExceeded || e.code() == ErrorCode::NotFiniteOrder) {
      fail(ErrorCode::InfiniteOrderGenerator, "generator " + name + ": " + e.detail());
    }
    throw;
  }
  return Generator{std::move(name), std::move(m), po.sigma, po.tau};
}

}  // namespace

GroupSpec make_group(std::string name, std::vector<std::pair<std::string, ExactMatrix>> generators, GroupMeta meta) {
  if (generators.empty()) fail(ErrorCode::InvalidArgument, "group " + name + " has no generators");
  GroupSpec g;
  g.name = std::move(name);
  g.conductor = generators.front().second.conductor();
  g.size = static_cast<int>(generators.front().second.rows());
  g.meta = std::move(meta);
  for (auto& [gname, m] : generators) {
    if (m.conductor() != g.conductor) fail(ErrorCode::ConductorMismatch, "generator " + gname + " in another field");
    if (!m.is_square() || static_cast<int>(m.rows()) != g.size) fail(ErrorCode::ShapeMismatch, "generator " + gname);
    g.generators.push_back(validate_generator(gname, std::move(m)));
  }
  return g;
}

namespace {

ExactMatrix parse_rows(TokenStream& ts, const CyclotomicField& field, std::size_t n, const std::string& what) {
  ts.expect_ident("rows");
  ts.expect_symbol("{");
  ExactMatrix m(field, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (r > 0) ts.expect_symbol(";");
    for (std::size_t c = 0; c < n; ++c) {
      if (c > 0) ts.expect_symbol(",");
      SparsePoly v = parse_expression(ts, field, 0);
      m(r, c) = v.empty() ? CycScalar(field) : v.begin()->second;
    }
  }
  if (!(ts.peek().kind == TokenKind::Symbol && ts.peek().text == "}")) {
    ts.error(what + " must have " + std::to_string(n) + " rows of " + std::to_string(n) + " entries");
  }
  ts.expect_symbol("}");
  return m;
}

}  // namespace

GroupSpec parse_group_file(std::string_view text) {
  TokenStream ts(tokenize(text));
  GroupSpec g;
  ts.expect_ident("group");
  g.name = ts.expect_name();
  ts.expect_ident("conductor");
  {
    const Token t = ts.peek();
    const long n = ts.expect_int();
    if (n < 1 || n > 10000) TokenStream::error_at(t, "conductor out of range");
    g.conductor = static_cast<int>(n);
  }
  ts.expect_ident("size");
  {
    const Token t = ts.peek();
    const long s = ts.expect_int();
    if (s < 1 || s > 16) TokenStream::error_at(t, "size out of range");
    g.size = static_cast<int>(s);
  }
  for (;;) {
    if (ts.accept_ident("order")) {
      g.meta.expected_order = ts.expect_int();
    } else if (ts.accept_ident("class")) {
      g.meta.isomorphism_class = ts.expect_string();
    } else if (ts.accept_ident("primitive")) {
      if (ts.accept_ident("true")) {
        g.meta.primitive = true;
      } else if (ts.accept_ident("false")) {
        g.meta.primitive = false;
      } else {
        ts.error("expected true or false");
      }
    } else if (ts.accept_ident("diagram")) {
      g.meta.diagram = ts.expect_string();
    } else if (ts.accept_ident("contains")) {
      std::string list = ts.expect_string();
      std::istringstream in(list);
      std::string item;
      while (in >> item) g.meta.contains.push_back(item);
    } else {
      break;
    }
  }
  const auto& field = CyclotomicField::of(g.conductor);
  const auto n = static_cast<std::size_t>(g.size);
  while (!ts.at_end()) {
    const Token gen_tok = ts.peek();
    ts.expect_ident("gen");
    std::string name = ts.expect_name();
    if (g.find_generator(name) != nullptr) TokenStream::error_at(gen_tok, "duplicate generator " + name);
    ExactMatrix m = parse_rows(ts, field, n, "generator " + name);
    try {
      g.generators.push_back(validate_generator(name, std::move(m)));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(gen_tok.line) + ", column " + std::to_string(gen_tok.column) +
                                ": " + e.detail());
    }
  }
  if (g.generators.empty()) ts.error("a group needs at least one generator");
  return g;
}

ExactMatrix parse_witness_file(std::string_view text) {
  TokenStream ts(tokenize(text));
  ts.expect_ident("witness");
  ts.expect_ident("conductor");
  const int conductor = ts.expect_int();
  ts.expect_ident("size");
  const int size = ts.expect_int();
  if (conductor < 1 || size < 1) ts.error("conductor and size must be positive");
  ExactMatrix m = parse_rows(ts, CyclotomicField::of(conductor), static_cast<std::size_t>(size), "witness");
  if (!ts.at_end()) ts.error("trailing input after the witness matrix");
  return m;
}

std::string serialize_group(const GroupSpec& g) {
  std::ostringstream out;
  out << "group " << g.name << " conductor " << g.conductor << " size " << g.size;
  if (g.meta.expected_order) out << " order " << *g.meta.expected_order;
  if (!g.meta.isomorphism_class.empty()) out << " class \"" << g.meta.isomorphism_class << '"';
  out << " primitive " << (g.meta.primitive ? "true" : "false");
  if (!g.meta.diagram.empty()) out << " diagram \"" << g.meta.diagram << '"';
  if (!g.meta.contains.empty()) {
    out << " contains \"";
    for (std::size_t i = 0; i < g.meta.contains.size(); ++i) out << (i ? " " : "") << g.meta.contains[i];
    out << '"';
  }
  out << '\n';
  for (const auto& gen : g.generators) {
    out << "gen " << gen.name << " rows {\n";
    for (std::size_t r = 0; r < gen.matrix.rows(); ++r) {
      out << "  ";
      for (std::size_t c = 0; c < gen.matrix.cols(); ++c) {
        if (c > 0) out << ", ";
        out << gen.matrix(r, c).to_string();
      }
      out << (r + 1 < gen.matrix.rows() ? ";\n" : "\n");
    }
    out << "}\n";
  }
  return out.str();
}

std::string data_directory() {
  if (const char* env = std::getenv("QUARTIC_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return QUARTIC_DEFAULT_DATA_DIR;
}

GroupSpec load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_group_file(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

namespace {

const std::vector<std::string>& registry_order() {
  static const std::vector<std::string> order = {"1deg", "13deg", "14deg", "15deg", "16deg", "17deg", "19deg",
                                                 "A",    "G",     "C",     "E",     "B",     "H",     "Q1",
                                                 "Q4",   "Q5",    "R3",    "Q7",    "P"};
  return order;
}

long order_rank(const std::string& name) {
  const auto& order = registry_order();
  const auto it = std::find(order.begin(), order.end(), name);
  return it == order.end() ? static_cast<long>(order.size()) : it - order.begin();
}

}  // namespace

std::vector<GroupSpec> load_group_directory(const std::string& directory) {
  namespace fs = std::filesystem;
  std::vector<GroupSpec> out;
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) fail(ErrorCode::Io, "no group directory at " + directory);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".grp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.push_back(load_group_file(f.string()));
  std::stable_sort(out.begin(), out.end(), [](const GroupSpec& a, const GroupSpec& b) {
    const long ra = order_rank(a.name);
    const long rb = order_rank(b.name);
    return ra != rb ? ra < rb : a.name < b.name;
  });
  return out;
}

const std::vector<GroupSpec>& builtin_groups() {
  static std::once_flag once;
  static std::vector<GroupSpec> groups;
  std::call_once(once, [] { groups = load_group_directory(data_directory() + "/groups"); });
  return groups;
}

const GroupSpec& lookup_group(std::string_view name) {
  for (const auto& g : builtin_groups()) {
    if (g.name == name) return g;
  }
  fail(ErrorCode::UnknownGroup, "unknown group '" + std::string(name) + "'");
}

namespace {

struct MatrixHash {
  std::size_t operator()(const ExactMatrix& m) const { return m.hash(); }
};

}  // namespace

std::vector<ExactMatrix> group_elements(const GroupSpec& group, long cap) {
  if (cap < 1) fail(ErrorCode::InvalidArgument, "closure cap must be positive");
  const auto& field = group.field();
  std::vector<ExactMatrix> gens;
  for (const auto& g : group.generators) gens.push_back(g.matrix.projective_canonical());
  std::unordered_set<ExactMatrix, MatrixHash> seen;
  std::vector<ExactMatrix> order;
  ExactMatrix id = ExactMatrix::identity(field, static_cast<std::size_t>(group.size));
  seen.insert(id);
  order.push_back(id);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (const auto& g : gens) {
      ExactMatrix next = (order[head] * g).projective_canonical();
      if (seen.insert(next).second) {
        order.push_back(std::move(next));
        if (static_cast<long>(order.size()) > cap) {
          fail(ErrorCode::CapExceeded, "closure of " + group.name + " exceeds " + std::to_string(cap) + " elements");
        }
      }
    }
  }
  return order;
}

long group_order_closure(const GroupSpec& group, long cap) {
  return static_cast<long>(group_elements(group, cap).size());
}

}  // namespace quartic
