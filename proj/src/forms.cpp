#include "quartic/forms.hpp"

#include <memory>
#include <mutex>
#include <sstream>

#include "quartic/error.hpp"

namespace quartic {

namespace {

void enumerate(int vars, int remaining, std::size_t pos, Exponent& cur, std::vector<Exponent>& out) {
  if (pos + 1 == static_cast<std::size_t>(vars)) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[pos] = k;
    enumerate(vars, remaining - k, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(int n_plus_1, int d) : variables_(n_plus_1), degree_(d) {
  Exponent cur(static_cast<std::size_t>(n_plus_1), 0);
  enumerate(n_plus_1, d, 0, cur, exponents_);
  for (std::size_t i = 0; i < exponents_.size(); ++i) index_.emplace(exponents_[i], i);
}

const MonomialBasis& MonomialBasis::of(int n_plus_1, int d) {
  if (n_plus_1 < 1 || d < 0) fail(ErrorCode::InvalidArgument, "monomial basis needs n+1 >= 1 and d >= 0");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n_plus_1, d}];
  if (!slot) slot.reset(new MonomialBasis(n_plus_1, d));
  return *slot;
}

std::optional<std::size_t> MonomialBasis::find(const Exponent& e) const {
  const auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t MonomialBasis::index(const Exponent& e) const {
  const auto i = find(e);
  if (!i) fail(ErrorCode::ShapeMismatch, "exponent vector is not in the monomial basis");
  return *i;
}

std::string MonomialBasis::monomial_string(std::size_t i) const {
  const Exponent& e = exponents_[i];
  std::string out;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(v);
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------

Form::Form(const MonomialBasis& basis, const CyclotomicField& field) : basis_(&basis), field_(&field) {}

Form Form::from_poly(const SparsePoly& poly, const CyclotomicField& field, int n_plus_1, std::optional<int> degree) {
  std::optional<int> deg = degree;
  for (const auto& [e, c] : poly) {
    if (static_cast<int>(e.size()) != n_plus_1) fail(ErrorCode::ShapeMismatch, "wrong number of variables");
    int s = 0;
    for (int v : e) s += v;
    if (!deg) deg = s;
    if (*deg != s) fail(ErrorCode::InvalidArgument, "polynomial is not homogeneous");
  }
  if (!deg) fail(ErrorCode::ZeroForm, "cannot infer the degree of the zero polynomial");
  Form f(MonomialBasis::of(n_plus_1, *deg), field);
  for (const auto& [e, c] : poly) f.set(f.basis_->index(e), c);
  return f;
}

Form Form::parse(std::string_view text, const CyclotomicField& field, int n_plus_1, std::optional<int> degree) {
  return from_poly(parse_polynomial(text, field, n_plus_1), field, n_plus_1, degree);
}

Form Form::from_vector(const MonomialBasis& basis, const ExactVector& coords) {
  if (coords.size() != basis.size()) fail(ErrorCode::ShapeMismatch, "coordinate vector length");
  if (coords.empty()) fail(ErrorCode::ShapeMismatch, "empty coordinate vector");
  Form f(basis, coords.front().field());
  for (std::size_t i = 0; i < coords.size(); ++i) f.set(i, coords[i]);
  return f;
}

Form Form::monomial(const MonomialBasis& basis, const CyclotomicField& field, std::size_t index,
                    const CycScalar& coeff) {
  Form f(basis, field);
  f.set(index, coeff);
  return f;
}

CycScalar Form::coeff(std::size_t index) const {
  const auto it = coeffs_.find(index);
  return it == coeffs_.end() ? CycScalar(*field_) : it->second;
}

CycScalar Form::coeff(const Exponent& e) const {
  const auto i = basis_->find(e);
  return i ? coeff(*i) : CycScalar(*field_);
}

void Form::set(std::size_t index, const CycScalar& c) {
  if (index >= basis_->size()) fail(ErrorCode::ShapeMismatch, "monomial index out of range");
  if (&c.field() != field_) fail(ErrorCode::ConductorMismatch, "coefficient in another field");
  if (c.is_zero()) {
    coeffs_.erase(index);
  } else {
    coeffs_[index] = c;
  }
}

void Form::add_to(std::size_t index, const CycScalar& c) {
  if (c.is_zero()) return;
  auto it = coeffs_.find(index);
  if (it == coeffs_.end()) {
    set(index, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

ExactVector Form::to_vector() const {
  ExactVector v(basis_->size(), CycScalar(*field_));
  for (const auto& [i, c] : coeffs_) v[i] = c;
  return v;
}

void Form::check_compatible(const Form& other) const {
  if (field_ != other.field_) fail(ErrorCode::ConductorMismatch, "forms over different fields");
  if (basis_ != other.basis_) fail(ErrorCode::ShapeMismatch, "forms of different shape");
}

Form Form::operator-() const {
  Form out = *this;
  for (auto& [i, c] : out.coeffs_) c = -c;
  return out;
}

Form& Form::operator+=(const Form& other) {
  check_compatible(other);
  for (const auto& [i, c] : other.coeffs_) add_to(i, c);
  return *this;
}

Form& Form::operator-=(const Form& other) {
  check_compatible(other);
  for (const auto& [i, c] : other.coeffs_) add_to(i, -c);
  return *this;
}

Form& Form::operator*=(const CycScalar& c) {
  if (&c.field() != field_) fail(ErrorCode::ConductorMismatch, "scalar in another field");
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [i, v] : coeffs_) v *= c;
  return *this;
}

Form operator*(const Form& a, const Form& b) {
  if (a.field_ != b.field_) fail(ErrorCode::ConductorMismatch, "forms over different fields");
  if (a.variables() != b.variables()) fail(ErrorCode::ShapeMismatch, "forms in different variables");
  const auto& basis = MonomialBasis::of(a.variables(), a.degree() + b.degree());
  Form out(basis, *a.field_);
  Exponent e(static_cast<std::size_t>(a.variables()));
  for (const auto& [i, ca] : a.coeffs_) {
    const Exponent& ea = a.basis_->exponent(i);
    for (const auto& [j, cb] : b.coeffs_) {
      const Exponent& eb = b.basis_->exponent(j);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_to(basis.index(e), ca * cb);
    }
  }
  return out;
}

bool operator==(const Form& a, const Form& b) {
  return a.basis_ == b.basis_ && a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
}

Form Form::lift(const CyclotomicField& target) const {
  Form out(*basis_, target);
  for (const auto& [i, c] : coeffs_) out.coeffs_.emplace(i, c.lift(target));
  return out;
}

Form Form::derivative(int variable) const {
  if (variable < 0 || variable >= variables()) fail(ErrorCode::InvalidArgument, "variable out of range");
  if (degree() == 0) return Form(MonomialBasis::of(variables(), 0), *field_);
  const auto& basis = MonomialBasis::of(variables(), degree() - 1);
  Form out(basis, *field_);
  const auto v = static_cast<std::size_t>(variable);
  for (const auto& [i, c] : coeffs_) {
    Exponent e = basis_->exponent(i);
    if (e[v] == 0) continue;
    const long mult = e[v];
    --e[v];
    out.add_to(basis.index(e), c * CycScalar(*field_, mult));
  }
  return out;
}

CycScalar Form::evaluate(const ExactVector& point) const {
  if (static_cast<int>(point.size()) != variables()) fail(ErrorCode::ShapeMismatch, "point dimension");
  for (const auto& x : point) {
    if (&x.field() != field_) fail(ErrorCode::ConductorMismatch, "point in another field");
  }
  std::vector<std::vector<CycScalar>> powers(point.size());
  for (std::size_t v = 0; v < point.size(); ++v) {
    powers[v].push_back(CycScalar(*field_, 1));
    for (int k = 1; k <= degree(); ++k) powers[v].push_back(powers[v].back() * point[v]);
  }
  CycScalar acc(*field_);
  for (const auto& [i, c] : coeffs_) {
    CycScalar term = c;
    const Exponent& e = basis_->exponent(i);
    for (std::size_t v = 0; v < e.size() && !term.is_zero(); ++v) {
      if (e[v] > 0) term *= powers[v][static_cast<std::size_t>(e[v])];
    }
    acc += term;
  }
  return acc;
}

Form Form::normalized() const {
  if (coeffs_.empty()) return *this;
  const CycScalar lead = coeffs_.begin()->second;
  if (lead.is_one()) return *this;
  Form out = *this;
  out *= lead.inverse();
  return out;
}

std::string Form::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [i, c] : coeffs_) {
    const std::string mon = basis_->monomial_string(i);
    std::string coeff;
    bool negative = false;
    if (c.is_rational()) {
      mpq_class q = c.coeff(0);
      negative = q < 0;
      if (negative) q = -q;
      coeff = q == 1 ? "" : q.get_str();
    } else {
      coeff = "(" + c.to_string() + ")";
    }
    if (first) {
      out << (negative ? "-" : "");
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (coeff.empty()) {
      out << mon;
    } else if (mon == "1") {
      out << coeff;
    } else {
      out << coeff << "*" << mon;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

// Images of all monomials of degree <= d under x -> A x, memoized by degree.
class SubstitutionTable {
 public:
  SubstitutionTable(const ExactMatrix& a, int d) : a_(a), n_(static_cast<int>(a.rows())) {
    const auto& field = a.field();
    images_.resize(static_cast<std::size_t>(d) + 1);
    images_[0].push_back(Form::monomial(MonomialBasis::of(n_, 0), field, 0, CycScalar(field, 1)));
    for (int k = 1; k <= d; ++k) {
      const auto& basis = MonomialBasis::of(n_, k);
      const auto& lower = MonomialBasis::of(n_, k - 1);
      auto& level = images_[static_cast<std::size_t>(k)];
      level.reserve(basis.size());
      for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        Exponent e = basis.exponent(idx);
        std::size_t v = e.size();
        while (v-- > 0 && e[v] == 0) {
        }
        --e[v];
        level.push_back(times_linear(images_[static_cast<std::size_t>(k - 1)][lower.index(e)], v));
      }
    }
  }

  const Form& image(int k, std::size_t idx) const { return images_[static_cast<std::size_t>(k)][idx]; }

 private:
  // f * (A x)_v where (A x)_v = sum_j A[v][j] x_j.
  Form times_linear(const Form& f, std::size_t v) const {
    const auto& basis = MonomialBasis::of(n_, f.degree() + 1);
    Form out(basis, a_.field());
    for (const auto& [i, c] : f.terms()) {
      Exponent e = f.basis().exponent(i);
      for (std::size_t j = 0; j < static_cast<std::size_t>(n_); ++j) {
        const CycScalar& aij = a_(v, j);
        if (aij.is_zero()) continue;
        ++e[j];
        out.add_to(basis.index(e), c * aij);
        --e[j];
      }
    }
    return out;
  }

  const ExactMatrix& a_;
  int n_;
  std::vector<std::vector<Form>> images_;
};

void check_action_args(const ExactMatrix& a, int n_plus_1, const CyclotomicField& field) {
  if (!a.is_square() || static_cast<int>(a.rows()) != n_plus_1) fail(ErrorCode::ShapeMismatch, "matrix size");
  if (&a.field() != &field) fail(ErrorCode::ConductorMismatch, "matrix and form over different fields");
}

}  // namespace

Form act(const ExactMatrix& a, const Form& f) {
  check_action_args(a, f.variables(), f.field());
  const SubstitutionTable table(a, f.degree());
  Form out(f.basis(), f.field());
  for (const auto& [i, c] : f.terms()) {
    const Form& img = table.image(f.degree(), i);
    for (const auto& [j, v] : img.terms()) out.add_to(j, c * v);
  }
  return out;
}

ExactMatrix substitution_matrix(const ExactMatrix& a, int d) {
  if (!a.is_square()) fail(ErrorCode::ShapeMismatch, "matrix size");
  if (d < 0) fail(ErrorCode::InvalidArgument, "negative degree");
  const int n = static_cast<int>(a.rows());
  const auto& basis = MonomialBasis::of(n, d);
  const SubstitutionTable table(a, d);
  ExactMatrix m(a.field(), basis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (const auto& [row, v] : table.image(d, col).terms()) m(row, col) = v;
  }
  return m;
}

ExactMatrix operator_matrix_B(const ExactMatrix& a, const CycScalar& kj, int d) {
  if (&kj.field() != &a.field()) fail(ErrorCode::ConductorMismatch, "character in another field");
  ExactMatrix m = substitution_matrix(a, d);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= kj;
  return m;
}

std::optional<CycScalar> projective_invariance_factor(const ExactMatrix& a, const Form& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroForm, "invariance factor of the zero form");
  const Form g = act(a, f);
  const auto& [i0, c0] = *f.terms().begin();
  const CycScalar lambda = g.coeff(i0) / c0;
  if (lambda.is_zero()) return std::nullopt;
  Form scaled = f;
  scaled *= lambda;
  if (scaled != g) return std::nullopt;
  return lambda;
}

bool proportional(const Form& f, const Form& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  if (&f.basis() != &g.basis() || &f.field() != &g.field()) return false;
  if (f.terms().size() != g.terms().size()) return false;
  return f.normalized() == g.normalized();
}

std::vector<std::uint64_t> reduce_form(const Form& f, const PrimeEmbedding& e) {
  std::vector<std::uint64_t> out(f.basis().size(), 0);
  for (const auto& [i, c] : f.terms()) out[i] = reduce_mod_prime(c, e);
  return out;
}

}  // namespace quartic
