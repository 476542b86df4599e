#pragma once

// Contact, almost contact metric and locally conformally symplectic structures
// together with the Jacobi pairs they induce.

#include <optional>

#include "jacobitk/metric_connection.hpp"

namespace jacobitk {

/// Coefficient of eta ^ (d eta)^n on dx^1 ^ ... ^ dx^{2n+1}.
Expr contact_volume(const OneForm& eta);

struct ContactStructure {
  OneForm eta;
  Form d_eta;
  /// flat_eta(X)_j = X^i flat(i, j), with flat(i,j) = -deta_ij + eta_i eta_j.
  ExprMatrix flat;
  /// (sharp_eta a)^k = a_i sharp(i, k).
  ExprMatrix sharp;
  VectorField reeb;
  Multivector pi;

  const ChartPtr& chart() const { return eta.chart(); }
  VectorField sharp_eta(const OneForm& alpha) const;
  /// (pi, reeb) with lambda = eta.
  JacobiData jacobi() const;
};

/// Throws GeometryError when eta ^ (d eta)^n vanishes identically or the
/// dimension is even.
ContactStructure contact_from(const OneForm& eta);

struct AlmostContactMetric {
  EndoField phi;
  VectorField xi;
  OneForm eta;
  MetricField g;

  const ChartPtr& chart() const { return g.chart(); }
};

/// Named residual comparisons for phi^2 = -I + eta(x)xi, eta(xi) = 1,
/// phi xi = 0, eta o phi = 0, g(phi X, phi Y) = g(X,Y) - eta(X)eta(Y),
/// flat_g xi = eta and g(xi,xi) = 1.
std::vector<std::pair<std::string, Comparison>> almost_contact_identities(
    const AlmostContactMetric& a);

/// pi(a,b) = g(#_g a, phi #_g b), i.e. pi^{ij} = phi^i_c g^{cj}.
Multivector almost_contact_pi(const AlmostContactMetric& a, const LeviCivita& lc);

/// (nabla_X phi)Y - a0 (g(phi X, Y) xi - eta(Y) phi X).
VectorField kenmotsu_defect(const AlmostContactMetric& a, const LeviCivita& lc,
                            const std::vector<EndoField>& nabla_phi, const Expr& a0,
                            const VectorField& x, const VectorField& y);

struct LcsStructure {
  Form omega;
  OneForm theta;
  std::optional<Expr> f;
  /// flat_omega(X)_j = X^i flat(i, j), flat = -omega.
  ExprMatrix flat;
  ExprMatrix sharp;
  VectorField xi;
  Multivector pi;

  const ChartPtr& chart() const { return omega.chart(); }
  VectorField sharp_omega(const OneForm& alpha) const;
  /// (pi, xi) with lambda = theta.
  JacobiData jacobi() const;
};

/// Throws GeometryError for degenerate omega or odd dimension.
LcsStructure lcs_from(const Form& omega, const OneForm& theta, std::optional<Expr> f = std::nullopt);

/// Lambda_f(X,Y,Z) = nabla w(X,Y,Z) - 1/2(Y(f)w(X,Z) - Z(f)w(X,Y))
///                   + 1/2(g(X,Y)w(grad f, Z) - g(X,Z)w(grad f, Y)).
Expr lambda_f(const LeviCivita& lc, const Form& omega, const std::vector<Form>& nabla_omega,
              const Expr& f, const VectorField& x, const VectorField& y, const VectorField& z);

/// nabla_X Y + 1/2(X(f)Y + Y(f)X - g(X,Y) grad f): the Levi-Civita connection
/// of e^f g written through the one of g.
VectorField conformal_nabla(const LeviCivita& lc, const Expr& f, const VectorField& x,
                            const VectorField& y);

}  // namespace jacobitk
