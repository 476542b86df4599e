#pragma once

// Differential operators on coordinate tensor fields.

#include "jacobitk/manifold.hpp"

namespace jacobitk {

/// The 0-form holding a scalar, so scalars can enter Form arithmetic.
Form scalar_form(const ChartPtr& chart, const Expr& f);

/// Exterior derivative, (d w)_{i0..ip} = sum_a (-1)^a d_{i_a} w_{..without i_a..}.
Form exterior_d(const Form& omega);
OneForm differential(const ChartPtr& chart, const Expr& f);

/// X(f).
Expr directional(const VectorField& x, const Expr& f);
/// [X, Y]^i = X(Y^i) - Y(X^i).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// Lie derivative of a form through Cartan's formula d i_X + i_X d.
Form lie_derivative(const VectorField& x, const Form& omega);
/// Lie derivative of a form from the coordinate formula; an independent
/// route used to cross-check the Cartan one.
Form lie_derivative_direct(const VectorField& x, const Form& omega);
/// Lie derivative of a multivector field (equals the bracket [X, P]).
Multivector lie_derivative(const VectorField& x, const Multivector& p);

/// Schouten-Nijenhuis bracket for degree pairs (1,1), (1,2), (2,1), (2,2)
/// and the function cases (1,0), (0,1). The bivector case reads
///   [P,Q]^{ijk} = sum_l cyclic(ijk) (P^{li} d_l Q^{jk} + Q^{li} d_l P^{jk}),
/// so that gamma(#[a,b] - [#a,#b]) = 1/2 [pi,pi](a,b,gamma).
Multivector schouten(const Multivector& p, const Multivector& q);

/// pi(alpha, beta) = sum alpha_i beta_j pi^{ij}.
Expr bivector_pair(const Multivector& pi, const OneForm& alpha, const OneForm& beta);
/// beta(#alpha) = pi(alpha, beta), i.e. (#alpha)^j = sum_i alpha_i pi^{ij}.
VectorField sharp_pi(const Multivector& pi, const OneForm& alpha);
/// Matrix of sharp_pi acting on covector components: (#alpha)^j = M(j,i) alpha_i.
ExprMatrix sharp_pi_matrix(const Multivector& pi);

/// [a, b]_pi = L_{#a} b - L_{#b} a - d(pi(a, b)).
OneForm koszul(const Multivector& pi, const OneForm& alpha, const OneForm& beta);

}  // namespace jacobitk
