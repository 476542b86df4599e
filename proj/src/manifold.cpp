#include "jacobitk/manifold.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <set>

namespace jacobitk {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

IndexTuple blank_tuple() {
  IndexTuple t;
  t.fill(-1);
  return t;
}

// Sorts idx in place; returns the permutation sign, or 0 on a repeat.
int sort_with_sign(std::span<int> idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      } else if (idx[j] == idx[j + 1]) {
        return 0;
      }
    }
  }
  for (std::size_t j = 0; j + 1 < idx.size(); ++j) {
    if (idx[j] == idx[j + 1]) return 0;
  }
  return sign;
}

int permutation_sign(std::span<const int> perm) {
  std::vector<int> p(perm.begin(), perm.end());
  return sort_with_sign(p);
}

}  // namespace

Chart::Chart(std::vector<std::string> names, std::vector<std::string> excluded)
    : names_(std::move(names)) {
  if (names_.empty()) throw GeometryError("a chart needs at least one coordinate");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw GeometryError("invalid coordinate name '" + n + "'");
    if (n == "exp" || n == "ln" || n == "sin" || n == "cos") {
      throw GeometryError("coordinate name '" + n + "' clashes with a function");
    }
    if (!seen.insert(n).second) throw GeometryError("duplicate coordinate name '" + n + "'");
  }
  for (const auto& text : excluded) excluded_.push_back(simplify(parse(text)));
}

int Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

ChartPtr make_chart(std::vector<std::string> names, std::vector<std::string> excluded) {
  return std::make_shared<const Chart>(std::move(names), std::move(excluded));
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* what) {
  if (a != b && !(*a == *b)) throw GeometryError(std::string(what) + ": chart mismatch");
}

const std::vector<IndexTuple>& index_tuples(int n, int p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<IndexTuple>>> cache;
  if (p < 0 || p > kMaxDegree) throw GeometryError("degree above the supported maximum of 3");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, p}];
  if (!slot) {
    slot = std::make_unique<std::vector<IndexTuple>>();
    IndexTuple t = blank_tuple();
    auto rec = [&](auto&& self, int pos, int start) -> void {
      if (pos == p) {
        slot->push_back(t);
        return;
      }
      for (int i = start; i < n; ++i) {
        t[static_cast<std::size_t>(pos)] = i;
        self(self, pos + 1, i + 1);
      }
      t[static_cast<std::size_t>(pos)] = -1;
    };
    rec(rec, 0, 0);
  }
  return *slot;
}

// ---------------------------------------------------------------------------
// Alternating

template <Variance V>
Alternating<V>::Alternating(ChartPtr chart, int degree)
    : chart_(std::move(chart)), degree_(degree) {
  if (degree < 0 || degree > kMaxDegree) {
    throw GeometryError("degree " + std::to_string(degree) + " exceeds the cap of 3");
  }
  tuples_ = &index_tuples(chart_->dim(), degree);
  comp_.assign(tuples_->size(), Expr());
}

template <Variance V>
Expr Alternating<V>::get(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != degree_) throw GeometryError("wrong number of indices");
  IndexTuple t = blank_tuple();
  std::copy(idx.begin(), idx.end(), t.begin());
  int sign = sort_with_sign(std::span<int>(t.data(), idx.size()));
  if (sign == 0) return Expr();
  auto it = std::lower_bound(tuples_->begin(), tuples_->end(), t);
  if (it == tuples_->end() || *it != t) throw GeometryError("index out of range");
  const Expr& c = comp_[static_cast<std::size_t>(it - tuples_->begin())];
  return sign > 0 ? c : -c;
}

template <Variance V>
void Alternating<V>::set(std::span<const int> idx, const Expr& value) {
  if (static_cast<int>(idx.size()) != degree_) throw GeometryError("wrong number of indices");
  IndexTuple t = blank_tuple();
  std::copy(idx.begin(), idx.end(), t.begin());
  int sign = sort_with_sign(std::span<int>(t.data(), idx.size()));
  if (sign == 0) {
    if (!simplify(value).is_zero()) {
      throw GeometryError("nonzero value on a repeated index of an alternating tensor");
    }
    return;
  }
  auto it = std::lower_bound(tuples_->begin(), tuples_->end(), t);
  if (it == tuples_->end() || *it != t) throw GeometryError("index out of range");
  comp_[static_cast<std::size_t>(it - tuples_->begin())] = sign > 0 ? simplify(value) : -simplify(value);
}

template <Variance V>
bool Alternating<V>::is_zero() const {
  return std::all_of(comp_.begin(), comp_.end(), [](const Expr& e) { return e.is_zero(); });
}

template <Variance V>
Alternating<V>& Alternating<V>::operator+=(const Alternating& o) {
  require_same_chart(chart_, o.chart_, "tensor sum");
  if (degree_ != o.degree_) throw GeometryError("tensor sum: degree mismatch");
  for (std::size_t k = 0; k < comp_.size(); ++k) comp_[k] += o.comp_[k];
  return *this;
}

template <Variance V>
Alternating<V>& Alternating<V>::operator-=(const Alternating& o) {
  require_same_chart(chart_, o.chart_, "tensor difference");
  if (degree_ != o.degree_) throw GeometryError("tensor difference: degree mismatch");
  for (std::size_t k = 0; k < comp_.size(); ++k) comp_[k] -= o.comp_[k];
  return *this;
}

template class Alternating<Variance::contravariant>;
template class Alternating<Variance::covariant>;

template <Variance V>
std::vector<double> evaluate(const Alternating<V>& t, std::span<const double> x) {
  std::vector<double> out(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = eval(t.at(k), x, t.chart()->names());
  return out;
}

template std::vector<double> evaluate(const Multivector&, std::span<const double>);
template std::vector<double> evaluate(const Form&, std::span<const double>);

VectorField::VectorField(ChartPtr chart, std::vector<Expr> components) : VectorField(chart) {
  if (static_cast<int>(components.size()) != dim()) {
    throw GeometryError("vector field needs one component per coordinate");
  }
  for (int i = 0; i < dim(); ++i) (*this)[i] = simplify(components[static_cast<std::size_t>(i)]);
}

VectorField::VectorField(const Multivector& m) : Multivector(m) {
  if (m.degree() != 1) throw GeometryError("expected a vector field (degree 1)");
}

VectorField VectorField::basis(const ChartPtr& chart, int i) {
  VectorField v(chart);
  v[i] = Expr(1);
  return v;
}

OneForm::OneForm(ChartPtr chart, std::vector<Expr> components) : OneForm(chart) {
  if (static_cast<int>(components.size()) != dim()) {
    throw GeometryError("one-form needs one component per coordinate");
  }
  for (int i = 0; i < dim(); ++i) (*this)[i] = simplify(components[static_cast<std::size_t>(i)]);
}

OneForm::OneForm(const Form& f) : Form(f) {
  if (f.degree() != 1) throw GeometryError("expected a one-form (degree 1)");
}

OneForm OneForm::basis(const ChartPtr& chart, int i) {
  OneForm a(chart);
  a[i] = Expr(1);
  return a;
}

// ---------------------------------------------------------------------------
// Matrices

ExprMatrix ExprMatrix::identity(int n) {
  ExprMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = Expr(1);
  return m;
}

ExprMatrix ExprMatrix::transpose() const {
  ExprMatrix t(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) t(i, j) = (*this)(j, i);
  }
  return t;
}

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.n_ != b.n_) throw GeometryError("matrix product: size mismatch");
  ExprMatrix c(a.n_);
  for (int i = 0; i < a.n_; ++i) {
    for (int j = 0; j < a.n_; ++j) {
      Expr s;
      for (int k = 0; k < a.n_; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  }
  return c;
}

ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b) {
  ExprMatrix c(a.n_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) c.a_[k] = a.a_[k] + b.a_[k];
  return c;
}

ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b) {
  ExprMatrix c(a.n_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) c.a_[k] = a.a_[k] - b.a_[k];
  return c;
}

namespace {

// Laplace expansion over the rows listed in `rows`, memoized by the set of
// remaining columns.
class MinorTable {
 public:
  MinorTable(const ExprMatrix& a, std::vector<int> rows) : a_(a), rows_(std::move(rows)) {}

  Expr det(unsigned cols) {
    int k = __builtin_popcount(cols);
    if (k == 0) return Expr(1);
    auto it = memo_.find(cols);
    if (it != memo_.end()) return it->second;
    int row = rows_[rows_.size() - static_cast<std::size_t>(k)];
    Expr sum;
    int pos = 0;
    for (int c = 0; c < a_.dim(); ++c) {
      if (!(cols & (1u << c))) continue;
      const Expr& entry = a_(row, c);
      if (!entry.is_zero()) {
        Expr term = entry * det(cols & ~(1u << c));
        sum = (pos % 2 == 0) ? sum + term : sum - term;
      }
      ++pos;
    }
    memo_.emplace(cols, sum);
    return sum;
  }

 private:
  const ExprMatrix& a_;
  std::vector<int> rows_;
  std::map<unsigned, Expr> memo_;
};

std::vector<int> all_rows_except(int n, int skip) {
  std::vector<int> rows;
  for (int i = 0; i < n; ++i) {
    if (i != skip) rows.push_back(i);
  }
  return rows;
}

}  // namespace

Expr determinant(const ExprMatrix& a) {
  int n = a.dim();
  if (n > 16) throw GeometryError("determinant: matrix too large");
  MinorTable t(a, all_rows_except(n, -1));
  return t.det((1u << n) - 1);
}

ExprMatrix sym_inverse(const ExprMatrix& a) {
  int n = a.dim();
  Expr det = determinant(a);
  if (det.is_zero()) throw GeometryError("matrix inverse: determinant is identically zero");
  Expr inv_det = pow(det, -1);
  ExprMatrix r(n);
  unsigned full = (1u << n) - 1;
  for (int i = 0; i < n; ++i) {
    MinorTable t(a, all_rows_except(n, i));
    for (int j = 0; j < n; ++j) {
      Expr minor = t.det(full & ~(1u << j));
      Expr cof = ((i + j) % 2 == 0) ? minor : -minor;
      r(j, i) = cof * inv_det;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Metric and endomorphism fields

MetricField::MetricField(ChartPtr chart, ExprMatrix g, Signature sig)
    : chart_(std::move(chart)), g_(std::move(g)), sig_(sig) {
  if (g_.dim() != chart_->dim()) throw GeometryError("metric size does not match the chart");
  for (int i = 0; i < g_.dim(); ++i) {
    for (int j = 0; j < g_.dim(); ++j) g_(i, j) = simplify(g_(i, j));
  }
  for (int i = 0; i < g_.dim(); ++i) {
    for (int j = i + 1; j < g_.dim(); ++j) {
      if (!(g_(i, j) == g_(j, i))) throw GeometryError("metric components are not symmetric");
    }
  }
  if (determinant(g_).is_zero()) throw GeometryError("metric determinant is identically zero");
}

Expr MetricField::operator()(const VectorField& x, const VectorField& y) const {
  require_same_chart(chart_, x.chart(), "metric");
  require_same_chart(chart_, y.chart(), "metric");
  Expr s;
  for (int i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) s += x[i] * g_(i, j) * y[j];
  }
  return s;
}

MetricField MetricField::scaled(const Expr& factor) const {
  ExprMatrix g(dim());
  for (int i = 0; i < dim(); ++i) {
    for (int j = 0; j < dim(); ++j) g(i, j) = factor * g_(i, j);
  }
  return MetricField(chart_, g, sig_);
}

EndoField::EndoField(ChartPtr chart, ExprMatrix a) : chart_(std::move(chart)), a_(std::move(a)) {
  if (a_.dim() != chart_->dim()) throw GeometryError("endomorphism size does not match the chart");
  for (int i = 0; i < a_.dim(); ++i) {
    for (int j = 0; j < a_.dim(); ++j) a_(i, j) = simplify(a_(i, j));
  }
}

VectorField EndoField::apply(const VectorField& x) const {
  require_same_chart(chart_, x.chart(), "endomorphism");
  VectorField r(chart_);
  int n = chart_->dim();
  for (int i = 0; i < n; ++i) {
    Expr s;
    for (int j = 0; j < n; ++j) s += a_(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

OneForm EndoField::pullback(const OneForm& alpha) const {
  require_same_chart(chart_, alpha.chart(), "endomorphism");
  OneForm r(chart_);
  int n = chart_->dim();
  for (int j = 0; j < n; ++j) {
    Expr s;
    for (int i = 0; i < n; ++i) s += alpha[i] * a_(i, j);
    r[j] = s;
  }
  return r;
}

EndoField operator*(const EndoField& a, const EndoField& b) {
  require_same_chart(a.chart_, b.chart_, "endomorphism product");
  return EndoField(a.chart_, a.a_ * b.a_);
}

// ---------------------------------------------------------------------------
// Multilinear algebra

namespace {

template <Variance V>
Alternating<V> wedge_impl(const Alternating<V>& a, const Alternating<V>& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  int p = a.degree();
  int q = b.degree();
  if (p + q > kMaxDegree) throw GeometryError("wedge: resulting degree exceeds the cap of 3");
  Alternating<V> r(a.chart(), p + q);
  int m = p + q;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const IndexTuple& K = r.tuple(k);
    Expr s;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      if (__builtin_popcount(mask) != p) continue;
      std::vector<int> I;
      std::vector<int> J;
      int inversions = 0;
      for (int pos = 0; pos < m; ++pos) {
        if (mask & (1u << pos)) {
          I.push_back(K[static_cast<std::size_t>(pos)]);
          inversions += static_cast<int>(J.size());
        } else {
          J.push_back(K[static_cast<std::size_t>(pos)]);
        }
      }
      Expr term = a.get(I) * b.get(J);
      s = (inversions % 2 == 0) ? s + term : s - term;
    }
    r.at(k) = s;
  }
  return r;
}

// sum over sorted tuples I of t_I * det[v_k(I_l)]
template <Variance V, class Vec>
Expr full_evaluation(const Alternating<V>& t, std::span<const Vec> vs) {
  int p = t.degree();
  if (static_cast<int>(vs.size()) != p) throw GeometryError("evaluation: wrong number of arguments");
  for (const auto& v : vs) require_same_chart(t.chart(), v.chart(), "evaluation");
  std::vector<int> perm(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) perm[static_cast<std::size_t>(i)] = i;
  Expr total;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t.at(k).is_zero()) continue;
    const IndexTuple& I = t.tuple(k);
    Expr det;
    std::vector<int> sigma = perm;
    do {
      Expr prod(1);
      for (int a = 0; a < p; ++a) {
        prod *= vs[static_cast<std::size_t>(a)][I[static_cast<std::size_t>(sigma[static_cast<std::size_t>(a)])]];
      }
      det = permutation_sign(sigma) > 0 ? det + prod : det - prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    total += t.at(k) * det;
  }
  return total;
}

template <Variance V, class Vec>
Alternating<V> interior_impl(const Vec& v, const Alternating<V>& t) {
  require_same_chart(v.chart(), t.chart(), "interior product");
  int p = t.degree();
  if (p == 0) throw GeometryError("interior product of a degree-0 tensor");
  Alternating<V> r(t.chart(), p - 1);
  int n = t.dim();
  for (std::size_t k = 0; k < r.size(); ++k) {
    const IndexTuple& J = r.tuple(k);
    Expr s;
    std::vector<int> idx(static_cast<std::size_t>(p));
    for (int a = 1; a < p; ++a) idx[static_cast<std::size_t>(a)] = J[static_cast<std::size_t>(a - 1)];
    for (int j = 0; j < n; ++j) {
      if (v[j].is_zero()) continue;
      idx[0] = j;
      s += v[j] * t.get(idx);
    }
    r.at(k) = s;
  }
  return r;
}

}  // namespace

Multivector wedge(const Multivector& a, const Multivector& b) { return wedge_impl(a, b); }
Form wedge(const Form& a, const Form& b) { return wedge_impl(a, b); }

Expr pair(const OneForm& alpha, const VectorField& x) {
  require_same_chart(alpha.chart(), x.chart(), "pairing");
  Expr s;
  for (int i = 0; i < alpha.dim(); ++i) s += alpha[i] * x[i];
  return s;
}

Expr evaluate_form(const Form& omega, std::span<const VectorField> xs) {
  return full_evaluation(omega, xs);
}

Expr evaluate_multivector(const Multivector& p, std::span<const OneForm> alphas) {
  return full_evaluation(p, alphas);
}

Form interior(const VectorField& x, const Form& omega) { return interior_impl(x, omega); }
Multivector interior(const OneForm& alpha, const Multivector& p) { return interior_impl(alpha, p); }

}  // namespace jacobitk
