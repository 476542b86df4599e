#pragma once

// Jacobi pairs (pi, xi), the deformed anchor and the lambda-bracket on 1-forms.

#include <optional>

#include "jacobitk/calculus.hpp"
#include "jacobitk/check.hpp"

namespace jacobitk {

/// Raised when an operation needs a hypothesis that has not been verified.
class PreconditionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class JacobiData {
 public:
  JacobiData(Multivector pi, VectorField xi, std::optional<OneForm> lambda = std::nullopt);

  const ChartPtr& chart() const { return pi_.chart(); }
  const Multivector& pi() const { return pi_; }
  const VectorField& xi() const { return xi_; }
  const std::optional<OneForm>& lambda() const { return lambda_; }
  const OneForm& require_lambda() const;
  JacobiData with_lambda(OneForm lambda) const;

  /// Set only by is_jacobi on a passing run.
  bool jacobi_verified() const { return verified_; }

 private:
  friend CheckResult is_jacobi(JacobiData& j, const Samples& s, double tol);
  Multivector pi_;
  VectorField xi_;
  std::optional<OneForm> lambda_;
  bool verified_ = false;
};

/// #_{pi,xi}(a) = #_pi(a) + a(xi) xi.
VectorField sharp_pi_xi(const JacobiData& j, const OneForm& alpha);
/// Matrix with (#_{pi,xi} a)^r = M(r, i) a_i.
ExprMatrix sharp_pi_xi_matrix(const JacobiData& j);

/// [a,b]_pi + a(xi)(L_xi b - b) - b(xi)(L_xi a - a) - pi(a,b) lambda.
OneForm lambda_bracket(const JacobiData& j, const OneForm& alpha, const OneForm& beta);

/// Residual tensors of the Jacobi condition.
Multivector jacobi_schouten_defect(const Multivector& pi, const VectorField& xi);  // [pi,pi] - 2 xi^pi
Multivector jacobi_lie_defect(const Multivector& pi, const VectorField& xi);       // L_xi pi

/// Checks both parts of the Jacobi condition; tags j on success.
CheckResult is_jacobi(JacobiData& j, const Samples& s, double tol = kDefaultTol);

/// #([a,b]^lambda) - [#a, #b]. Needs a verified Jacobi pair unless forced.
VectorField anchor_defect(const JacobiData& j, const OneForm& alpha, const OneForm& beta,
                          bool force = false);
/// Predicted value pi(a,b)(xi - #_{pi,xi} lambda).
VectorField anchor_defect_prediction(const JacobiData& j, const OneForm& alpha,
                                     const OneForm& beta);

/// Cyclic sum of [a,[b,g]^lambda]^lambda.
OneForm jacobiator(const JacobiData& j, const OneForm& alpha, const OneForm& beta,
                   const OneForm& gamma);

}  // namespace jacobitk
