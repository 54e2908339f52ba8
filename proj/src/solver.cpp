#include "quartic/solver.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

#include "quartic/error.hpp"

namespace quartic {

int compare_characters(const CharacterTuple& a, const CharacterTuple& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

const CyclotomicField& common_field(const CyclotomicField& a, const CyclotomicField& b) {
  return CyclotomicField::of(static_cast<int>(lcm_long(a.conductor(), b.conductor())));
}

namespace {

int kappa(int n_plus_1, int d) { return static_cast<int>(lcm_long(n_plus_1, d) / d); }

// Order of tau^d as a root of unity.
long power_order(const CycScalar& tau, int d) {
  const auto ord = root_of_unity_order(tau.pow(d));
  if (!ord) fail(ErrorCode::ConductorExtensionFailed, "tau^d is not a root of unity of the group field");
  return *ord;
}

}  // namespace

int working_conductor(const GroupSpec& group, int d, bool coarse) {
  if (d < 0) fail(ErrorCode::InvalidArgument, "negative degree");
  long m = group.conductor;
  const int kap = d == 0 ? 1 : kappa(group.size, d);
  for (const auto& g : group.generators) {
    m = lcm_long(m, static_cast<long>(g.sigma) * power_order(g.tau, d));
    if (coarse) m = lcm_long(m, static_cast<long>(kap) * g.sigma);
  }
  if (m > 5000) fail(ErrorCode::ConductorExtensionFailed, "working conductor " + std::to_string(m) + " is too large");
  return static_cast<int>(m);
}

std::vector<std::vector<CycScalar>> generator_candidates(const GroupSpec& group, int d, bool coarse) {
  const auto& field = CyclotomicField::of(working_conductor(group, d, coarse));
  const auto& roots = field.roots_of_unity();
  const long w = static_cast<long>(roots.size());
  const int kap = d == 0 ? 1 : kappa(group.size, d);
  std::vector<std::vector<CycScalar>> out;
  for (const auto& g : group.generators) {
    std::vector<CycScalar> cands;
    if (coarse) {
      const long e = static_cast<long>(kap) * g.sigma;
      for (long j = 0; j < w; ++j) {
        if ((e * j) % w == 0) cands.push_back(roots[static_cast<std::size_t>(j)]);
      }
    } else {
      const auto t = root_of_unity_index(g.tau.pow(d).lift(field));
      if (!t) fail(ErrorCode::ConductorExtensionFailed, "tau^d is not in the working field");
      for (long j = 0; j < w; ++j) {
        if ((static_cast<long>(g.sigma) * j - *t) % w == 0) cands.push_back(roots[static_cast<std::size_t>(j)]);
      }
    }
    if (cands.empty()) fail(ErrorCode::ConductorExtensionFailed, "no candidate for generator " + g.name);
    std::sort(cands.begin(), cands.end(), [](const CycScalar& a, const CycScalar& b) { return compare(a, b) < 0; });
    out.push_back(std::move(cands));
  }
  return out;
}

std::vector<CharacterTuple> character_candidates(const GroupSpec& group, int d, bool coarse) {
  const auto per = generator_candidates(group, d, coarse);
  std::vector<CharacterTuple> out{{}};
  for (const auto& options : per) {
    std::vector<CharacterTuple> next;
    next.reserve(out.size() * options.size());
    for (const auto& prefix : out) {
      for (const auto& c : options) {
        CharacterTuple t = prefix;
        t.push_back(c);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

ExactMatrix stacked_operator_matrix(const GroupSpec& group, const CharacterTuple& k, int d) {
  if (k.size() != group.generators.size()) fail(ErrorCode::ShapeMismatch, "character length");
  const auto& field = k.empty() ? group.field() : k.front().field();
  const auto& basis = MonomialBasis::of(group.size, d);
  const std::size_t dim = basis.size();
  ExactMatrix t(field, dim * k.size(), dim);
  for (std::size_t j = 0; j < k.size(); ++j) {
    const ExactMatrix b = operator_matrix_B(group.generators[j].matrix.lift(field), k[j], d);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) t(j * dim + r, c) = b(r, c);
    }
  }
  return t;
}

namespace {

struct SolverContext {
  const GroupSpec* group = nullptr;
  const CyclotomicField* field = nullptr;
  int d = 0;
  std::vector<std::size_t> order;                  // generator processing order
  std::vector<ExactMatrix> ops;                    // substitution matrices, by generator index
  std::vector<std::vector<CycScalar>> candidates;  // by generator index
  std::vector<PrimeEmbedding> primes;
  bool modp_filter = true;
};

bool is_diagonal(const ExactMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (r != c && !m(r, c).is_zero()) return false;
    }
  }
  return true;
}

std::size_t nonzeros(const ExactMatrix& m) {
  std::size_t count = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) count += m(r, c).is_zero() ? 0 : 1;
  }
  return count;
}

// Kernel dimension of a matrix modulo p, or -1 when some entry does not reduce.
long modp_nullity(const ExactMatrix& m, const PrimeEmbedding& e) {
  try {
    const ModMatrix r = ModMatrix::reduce(m, e);
    return static_cast<long>(m.cols()) - static_cast<long>(rank(r));
  } catch (const Error& err) {
    if (err.code() == ErrorCode::BadPrime) return -1;
    throw;
  }
}

// Columns of `v` span the current subspace; returns a basis (as columns) of
// {x in span(v) : M x = c x} or an empty matrix.
std::optional<ExactMatrix> restrict_eigen(const SolverContext& ctx, const ExactMatrix& mv, const ExactMatrix& v,
                                          const CycScalar& c) {
  ExactMatrix diff = mv;
  for (std::size_t r = 0; r < diff.rows(); ++r) {
    for (std::size_t col = 0; col < diff.cols(); ++col) {
      if (!v(r, col).is_zero()) diff(r, col) -= c * v(r, col);
    }
  }
  if (ctx.modp_filter) {
    for (const auto& e : ctx.primes) {
      const long nullity = modp_nullity(diff, e);
      if (nullity == 0) return std::nullopt;
      if (nullity > 0) break;
    }
  }
  const auto ker = kernel_basis(diff);
  if (ker.empty()) return std::nullopt;
  ExactMatrix coeffs(*ctx.field, v.cols(), ker.size());
  for (std::size_t j = 0; j < ker.size(); ++j) {
    for (std::size_t i = 0; i < v.cols(); ++i) coeffs(i, j) = ker[j][i];
  }
  return v * coeffs;
}

void search(const SolverContext& ctx, std::size_t level, const ExactMatrix& v, CharacterTuple& chosen,
            std::vector<InvariantSubspace>& out) {
  if (level == ctx.order.size()) {
    std::vector<ExactVector> cols;
    for (std::size_t j = 0; j < v.cols(); ++j) cols.push_back(v.column(j));
    const auto rows = canonical_span(*ctx.field, v.rows(), cols);
    InvariantSubspace sub;
    sub.character = chosen;
    const auto& basis = MonomialBasis::of(ctx.group->size, ctx.d);
    for (const auto& r : rows) sub.basis.push_back(Form::from_vector(basis, r));
    out.push_back(std::move(sub));
    return;
  }
  const std::size_t g = ctx.order[level];
  const ExactMatrix mv = ctx.ops[g] * v;
  for (const auto& c : ctx.candidates[g]) {
    const auto next = restrict_eigen(ctx, mv, v, c);
    if (!next) continue;
    chosen[g] = c;
    search(ctx, level + 1, *next, chosen, out);
  }
}

std::vector<InvariantSubspace> solve_incremental(const SolverContext& ctx, unsigned threads) {
  const auto& basis = MonomialBasis::of(ctx.group->size, ctx.d);
  const ExactMatrix id = ExactMatrix::identity(*ctx.field, basis.size());
  if (ctx.order.empty()) return {};
  const std::size_t g0 = ctx.order.front();
  const ExactMatrix mv = ctx.ops[g0];
  const auto& first = ctx.candidates[g0];
  std::vector<std::vector<InvariantSubspace>> parts(first.size());
  auto job = [&](std::size_t idx) {
    const auto next = restrict_eigen(ctx, mv, id, first[idx]);
    if (!next) return;
    CharacterTuple chosen(ctx.order.size(), CycScalar(*ctx.field));
    chosen[g0] = first[idx];
    search(ctx, 1, *next, chosen, parts[idx]);
  };
  if (threads <= 1 || first.size() <= 1) {
    for (std::size_t i = 0; i < first.size(); ++i) job(i);
  } else {
    std::vector<std::future<void>> futures;
    std::atomic<std::size_t> next_index{0};
    for (unsigned t = 0; t < std::min<std::size_t>(threads, first.size()); ++t) {
      futures.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next_index++; i < first.size(); i = next_index++) job(i);
      }));
    }
    for (auto& f : futures) f.get();
  }
  std::vector<InvariantSubspace> out;
  for (auto& p : parts) {
    for (auto& s : p) out.push_back(std::move(s));
  }
  return out;
}

std::vector<InvariantSubspace> solve_stacked(const GroupSpec& group, int d, const SolverOptions& options) {
  const auto& basis = MonomialBasis::of(group.size, d);
  std::vector<InvariantSubspace> out;
  for (const auto& k : character_candidates(group, d, options.coarse_candidates)) {
    const auto ker = kernel_basis(stacked_operator_matrix(group, k, d));
    if (ker.empty()) continue;
    InvariantSubspace sub;
    sub.character = k;
    for (const auto& r : ker) sub.basis.push_back(Form::from_vector(basis, r));
    out.push_back(std::move(sub));
  }
  return out;
}

}  // namespace

std::vector<InvariantSubspace> invariant_subspaces(const GroupSpec& group, int d, const SolverOptions& options) {
  if (d < 0) fail(ErrorCode::InvalidArgument, "negative degree");
  std::vector<InvariantSubspace> out;
  if (options.stacked) {
    out = solve_stacked(group, d, options);
  } else {
    SolverContext ctx;
    ctx.group = &group;
    ctx.d = d;
    ctx.field = &CyclotomicField::of(working_conductor(group, d, options.coarse_candidates));
    ctx.candidates = generator_candidates(group, d, options.coarse_candidates);
    for (const auto& g : group.generators) ctx.ops.push_back(substitution_matrix(g.matrix.lift(*ctx.field), d));
    for (std::size_t i = 0; i < group.generators.size(); ++i) ctx.order.push_back(i);
    // Diagonal generators first (their eigenspaces are spanned by monomials), then sparsest.
    std::stable_sort(ctx.order.begin(), ctx.order.end(), [&](std::size_t a, std::size_t b) {
      const bool da = is_diagonal(group.generators[a].matrix);
      const bool db = is_diagonal(group.generators[b].matrix);
      if (da != db) return da;
      return nonzeros(ctx.ops[a]) < nonzeros(ctx.ops[b]);
    });
    ctx.modp_filter = options.modp_filter;
    if (ctx.modp_filter) ctx.primes = find_prime_embeddings(ctx.field->conductor(), 2);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    out = solve_incremental(ctx, options.threads == 0 ? hw : options.threads);
  }
  std::sort(out.begin(), out.end(), [](const InvariantSubspace& a, const InvariantSubspace& b) {
    return compare_characters(a.character, b.character) < 0;
  });
  return out;
}

bool contains_form(const InvariantSubspace& sub, const Form& f) {
  if (f.is_zero()) return true;
  if (sub.basis.empty()) return false;
  if (&f.basis() != &sub.basis.front().basis()) fail(ErrorCode::ShapeMismatch, "form and subspace differ in shape");
  const auto& field = common_field(sub.field(), f.field());
  std::vector<ExactVector> rows;
  for (const auto& b : sub.basis) rows.push_back(b.lift(field).to_vector());
  const std::size_t dim = f.basis().size();
  const std::size_t r0 = canonical_span(field, dim, rows).size();
  rows.push_back(f.lift(field).to_vector());
  return canonical_span(field, dim, rows).size() == r0;
}

bool is_group_invariant(const GroupSpec& group, const Form& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroForm, "invariance of the zero form");
  const auto& field = common_field(group.field(), f.field());
  const Form g = f.lift(field);
  for (const auto& gen : group.generators) {
    if (!projective_invariance_factor(gen.matrix.lift(field), g)) return false;
  }
  return true;
}

}  // namespace quartic
