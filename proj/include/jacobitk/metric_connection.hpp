#pragma once

// Levi-Civita connection of a metric, the objects g*, J, J*, lambda built from
// (pi, xi, g), the contravariant derivative D and the compatibility defects.

#include <memory>
#include <vector>

#include "jacobitk/jacobi_algebroid.hpp"

namespace jacobitk {

/// Inverse metric and Christoffel symbols of a (pseudo-)Riemannian metric.
class LeviCivita {
 public:
  explicit LeviCivita(MetricField g);

  const ChartPtr& chart() const { return g_.chart(); }
  int dim() const { return g_.dim(); }
  const MetricField& g() const { return g_; }
  const ExprMatrix& g_inv() const { return g_inv_; }
  /// Gamma^k_ij = 1/2 g^{kl}(d_i g_jl + d_j g_il - d_l g_ij).
  const Expr& gamma(int k, int i, int j) const {
    return gamma_[(static_cast<std::size_t>(k) * dim() + i) * dim() + j];
  }

  VectorField sharp(const OneForm& alpha) const;
  OneForm flat(const VectorField& x) const;
  Expr cometric(const OneForm& alpha, const OneForm& beta) const;
  Expr metric(const VectorField& x, const VectorField& y) const { return g_(x, y); }
  /// grad f = #_g df.
  VectorField gradient(const Expr& f) const;

  VectorField nabla(const VectorField& x, const VectorField& y) const;
  /// (nabla_a g)_{bc}; every entry vanishes for a Levi-Civita connection.
  std::vector<Expr> nabla_metric() const;
  /// (nabla_{d_a} w) for each coordinate direction a.
  std::vector<Form> nabla_form(const Form& omega) const;
  /// (nabla_{d_a} A) for each coordinate direction a.
  std::vector<EndoField> nabla_endo(const EndoField& a) const;

 private:
  MetricField g_;
  ExprMatrix g_inv_;
  std::vector<Expr> gamma_;
};

/// Contracts a family nabla_{d_a} T with X^a.
Form contract_direction(const std::vector<Form>& family, const VectorField& x);
EndoField contract_direction(const std::vector<EndoField>& family, const VectorField& x);

/// g with its connection and the objects attached to a pair (pi, xi):
/// J = #_pi o flat_g, J* = flat_g o #_pi, lambda = g(xi,xi) flat_g(xi) - flat_g(J xi).
class MetricPackage {
 public:
  MetricPackage(const JacobiData& j, MetricField g);

  const ChartPtr& chart() const { return lc_.chart(); }
  int dim() const { return lc_.dim(); }
  const LeviCivita& lc() const { return lc_; }
  const MetricField& g() const { return lc_.g(); }
  /// Jacobi data with lambda replaced by the metric lambda.
  const JacobiData& jacobi() const { return jacobi_; }
  const Multivector& pi() const { return jacobi_.pi(); }
  const VectorField& xi() const { return jacobi_.xi(); }
  const OneForm& lambda() const { return *jacobi_.lambda(); }
  /// J^k_a, acting on vectors.
  const EndoField& J() const { return J_; }
  /// (J* a)_b = J*(b, i) a_i.
  const ExprMatrix& J_star_matrix() const { return J_star_; }
  OneForm J_star(const OneForm& alpha) const;
  VectorField sharp(const OneForm& alpha) const { return sharp_pi_xi(jacobi_, alpha); }

 private:
  LeviCivita lc_;
  JacobiData jacobi_;
  EndoField J_;
  ExprMatrix J_star_;
};

/// The contravariant Levi-Civita derivative of (pi, xi, g), characterized by
///   2g*(D_a b, c) = #a.g*(b,c) + #b.g*(a,c) - #c.g*(a,b)
///                   - g*([b,c],a) - g*([a,c],b) + g*([a,b],c)
/// with # = #_{pi,xi} and the lambda-bracket for the metric lambda.
class ContravariantD {
 public:
  explicit ContravariantD(std::shared_ptr<const MetricPackage> pkg);

  const MetricPackage& package() const { return *pkg_; }
  /// Right-hand side of the characterization, i.e. 2g*(D_a b, c).
  Expr koszul_rhs(const OneForm& a, const OneForm& b, const OneForm& c) const;
  /// Solves the characterization on c = dx^k for general a, b.
  OneForm direct(const OneForm& a, const OneForm& b) const;
  /// D_{dx^a} dx^b, cached.
  const OneForm& basis(int a, int b) const;
  /// Assembles D_a b from the basis table by linearity and Leibniz.
  OneForm operator()(const OneForm& a, const OneForm& b) const;

  /// Dpi(a,b,c) = #a.pi(b,c) - pi(D_a b, c) - pi(b, D_a c).
  Expr D_pi(const OneForm& a, const OneForm& b, const OneForm& c) const;
  /// (D_a J*) b = D_a(J* b) - J*(D_a b).
  OneForm D_J_star(const OneForm& a, const OneForm& b) const;

  /// Dpi(a,b,c) - 1/2(c(xi)pi(a,b) - b(xi)pi(a,c) - J*c(xi)g*(a,b) + J*b(xi)g*(a,c)).
  Expr compatibility_defect(const OneForm& a, const OneForm& b, const OneForm& c) const;
  /// (D_a J*)b - 1/2(pi(a,b)flat_g xi - b(xi)J*a + g*(a,b)J* flat_g xi + J*b(xi) a).
  OneForm compatibility_defect_endo(const OneForm& a, const OneForm& b) const;

 private:
  std::shared_ptr<const MetricPackage> pkg_;
  std::vector<VectorField> sharp_basis_;
  mutable std::vector<std::unique_ptr<OneForm>> basis_;
};

}  // namespace jacobitk
