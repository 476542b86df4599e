#pragma once

// Charts and tensor fields whose components are expressions.
//
// Alternating tensors store one component per strictly increasing index
// tuple. Reading a permuted tuple applies the permutation sign; a tuple with
// a repeated index reads as zero. Forms use the determinant pairing, so
// (dx^dy)(d/dx, d/dy) = 1, and wedge products follow the shuffle formula.

#include <array>
#include <initializer_list>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jacobitk/expr.hpp"

namespace jacobitk {

constexpr int kMaxDegree = 3;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Chart {
 public:
  /// Names must be distinct identifiers. Excluded-locus expressions are
  /// parsed against the names; sampling keeps away from their zero sets.
  explicit Chart(std::vector<std::string> names, std::vector<std::string> excluded = {});

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Expr>& excluded() const { return excluded_; }
  int index_of(std::string_view name) const;

  Expr parse(std::string_view text) const { return jacobitk::parse(text, names_); }
  std::string print(const Expr& e) const { return to_string(e, names_); }

  friend bool operator==(const Chart& a, const Chart& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::vector<Expr> excluded_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> names, std::vector<std::string> excluded = {});

/// Throws GeometryError unless both charts describe the same coordinates.
void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* what);

using IndexTuple = std::array<int, kMaxDegree>;

/// Strictly increasing p-tuples out of {0..n-1}, in lexicographic order.
const std::vector<IndexTuple>& index_tuples(int n, int p);

enum class Variance { contravariant, covariant };

template <Variance V>
class Alternating {
 public:
  Alternating(ChartPtr chart, int degree);

  const ChartPtr& chart() const { return chart_; }
  int dim() const { return chart_->dim(); }
  int degree() const { return degree_; }

  std::size_t size() const { return comp_.size(); }
  const IndexTuple& tuple(std::size_t k) const { return (*tuples_)[k]; }
  const Expr& at(std::size_t k) const { return comp_[k]; }
  Expr& at(std::size_t k) { return comp_[k]; }

  /// Component for an arbitrary index list, sign-adjusted.
  Expr get(std::span<const int> idx) const;
  Expr get(std::initializer_list<int> idx) const {
    return get(std::span<const int>(idx.begin(), idx.size()));
  }
  /// Stores `value` so that get(idx) == value afterwards.
  void set(std::span<const int> idx, const Expr& value);
  void set(std::initializer_list<int> idx, const Expr& value) {
    set(std::span<const int>(idx.begin(), idx.size()), value);
  }

  bool is_zero() const;
  Alternating map(const auto& fn) const {
    Alternating r(chart_, degree_);
    for (std::size_t k = 0; k < comp_.size(); ++k) r.comp_[k] = fn(comp_[k]);
    return r;
  }

  Alternating& operator+=(const Alternating& o);
  Alternating& operator-=(const Alternating& o);
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  friend Alternating operator-(const Alternating& a) {
    return a.map([](const Expr& e) { return -e; });
  }
  friend Alternating operator*(const Expr& f, const Alternating& a) {
    return a.map([&](const Expr& e) { return f * e; });
  }

 private:
  ChartPtr chart_;
  int degree_;
  const std::vector<IndexTuple>* tuples_;
  std::vector<Expr> comp_;
};

using Multivector = Alternating<Variance::contravariant>;
using Form = Alternating<Variance::covariant>;

extern template class Alternating<Variance::contravariant>;
extern template class Alternating<Variance::covariant>;

class VectorField : public Multivector {
 public:
  explicit VectorField(ChartPtr chart) : Multivector(std::move(chart), 1) {}
  VectorField(ChartPtr chart, std::vector<Expr> components);
  VectorField(const Multivector& m);  // NOLINT(implicit): degree must be 1

  const Expr& operator[](int i) const { return at(static_cast<std::size_t>(i)); }
  Expr& operator[](int i) { return at(static_cast<std::size_t>(i)); }

  /// Coordinate vector field d/dx^i.
  static VectorField basis(const ChartPtr& chart, int i);
};

class OneForm : public Form {
 public:
  explicit OneForm(ChartPtr chart) : Form(std::move(chart), 1) {}
  OneForm(ChartPtr chart, std::vector<Expr> components);
  OneForm(const Form& f);  // NOLINT(implicit): degree must be 1

  const Expr& operator[](int i) const { return at(static_cast<std::size_t>(i)); }
  Expr& operator[](int i) { return at(static_cast<std::size_t>(i)); }

  /// Coordinate covector dx^i.
  static OneForm basis(const ChartPtr& chart, int i);
};

/// Square matrix of expressions, row-major.
class ExprMatrix {
 public:
  ExprMatrix() = default;
  explicit ExprMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}
  static ExprMatrix identity(int n);

  int dim() const { return n_; }
  const Expr& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  Expr& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  ExprMatrix transpose() const;
  friend ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);
  friend ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b);
  friend ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b);

 private:
  int n_ = 0;
  std::vector<Expr> a_;
};

Expr determinant(const ExprMatrix& a);

/// Inverse through the adjugate. Throws GeometryError when the determinant
/// simplifies to zero.
ExprMatrix sym_inverse(const ExprMatrix& a);

enum class Signature { riemannian, pseudo };

class MetricField {
 public:
  /// Components g_ij; the matrix must be symmetric as expressions.
  MetricField(ChartPtr chart, ExprMatrix g, Signature sig = Signature::pseudo);

  const ChartPtr& chart() const { return chart_; }
  int dim() const { return chart_->dim(); }
  const ExprMatrix& matrix() const { return g_; }
  const Expr& operator()(int i, int j) const { return g_(i, j); }
  Signature signature() const { return sig_; }

  Expr operator()(const VectorField& x, const VectorField& y) const;
  /// Same metric multiplied by a scalar function.
  MetricField scaled(const Expr& factor) const;

 private:
  ChartPtr chart_;
  ExprMatrix g_;
  Signature sig_;
};

/// (1,1)-tensor with components A^i_j, acting on vectors by (AX)^i = A^i_j X^j.
class EndoField {
 public:
  EndoField(ChartPtr chart, ExprMatrix a);
  explicit EndoField(ChartPtr chart) : EndoField(chart, ExprMatrix(chart->dim())) {}

  const ChartPtr& chart() const { return chart_; }
  const ExprMatrix& matrix() const { return a_; }
  const Expr& operator()(int i, int j) const { return a_(i, j); }

  VectorField apply(const VectorField& x) const;
  /// Transpose action on covectors: (alpha o A)_j = alpha_i A^i_j.
  OneForm pullback(const OneForm& alpha) const;
  friend EndoField operator*(const EndoField& a, const EndoField& b);

 private:
  ChartPtr chart_;
  ExprMatrix a_;
};

// ---------------------------------------------------------------------------
// Multilinear algebra

Multivector wedge(const Multivector& a, const Multivector& b);
Form wedge(const Form& a, const Form& b);

Expr pair(const OneForm& alpha, const VectorField& x);
/// omega(X_1, ..., X_p) with the determinant convention.
Expr evaluate_form(const Form& omega, std::span<const VectorField> xs);
/// P(alpha_1, ..., alpha_p) with the determinant convention.
Expr evaluate_multivector(const Multivector& p, std::span<const OneForm> alphas);

/// i_X omega = omega(X, ...).
Form interior(const VectorField& x, const Form& omega);
/// i_alpha P = P(alpha, ...).
Multivector interior(const OneForm& alpha, const Multivector& p);

/// Numeric components at a point, in storage order.
template <Variance V>
std::vector<double> evaluate(const Alternating<V>& t, std::span<const double> x);

}  // namespace jacobitk
