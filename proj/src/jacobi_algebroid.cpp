#include "jacobitk/jacobi_algebroid.hpp"

namespace jacobitk {

JacobiData::JacobiData(Multivector pi, VectorField xi, std::optional<OneForm> lambda)
    : pi_(std::move(pi)), xi_(std::move(xi)), lambda_(std::move(lambda)) {
  if (pi_.degree() != 2) throw GeometryError("Jacobi pair: pi must be a bivector");
  require_same_chart(pi_.chart(), xi_.chart(), "Jacobi pair");
  if (lambda_) require_same_chart(pi_.chart(), lambda_->chart(), "Jacobi pair");
}

const OneForm& JacobiData::require_lambda() const {
  if (!lambda_) throw GeometryError("lambda-bracket: no lambda given");
  return *lambda_;
}

JacobiData JacobiData::with_lambda(OneForm lambda) const {
  JacobiData r(pi_, xi_, std::move(lambda));
  r.verified_ = verified_;
  return r;
}

VectorField sharp_pi_xi(const JacobiData& j, const OneForm& alpha) {
  VectorField r = sharp_pi(j.pi(), alpha);
  Expr a = pair(alpha, j.xi());
  if (!a.is_zero()) r += a * j.xi();
  return r;
}

ExprMatrix sharp_pi_xi_matrix(const JacobiData& j) {
  ExprMatrix m = sharp_pi_matrix(j.pi());
  int n = m.dim();
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i < n; ++i) m(r, i) = m(r, i) + j.xi()[r] * j.xi()[i];
  }
  return m;
}

OneForm lambda_bracket(const JacobiData& j, const OneForm& alpha, const OneForm& beta) {
  const OneForm& lambda = j.require_lambda();
  OneForm r = koszul(j.pi(), alpha, beta);
  Expr ax = pair(alpha, j.xi());
  Expr bx = pair(beta, j.xi());
  if (!ax.is_zero()) r += ax * (lie_derivative(j.xi(), beta) - beta);
  if (!bx.is_zero()) r -= bx * (lie_derivative(j.xi(), alpha) - alpha);
  Expr p = bivector_pair(j.pi(), alpha, beta);
  if (!p.is_zero()) r -= p * lambda;
  return r;
}

Multivector jacobi_schouten_defect(const Multivector& pi, const VectorField& xi) {
  return schouten(pi, pi) - Expr(2) * wedge(xi, pi);
}

Multivector jacobi_lie_defect(const Multivector& pi, const VectorField& xi) {
  return lie_derivative(xi, pi);
}

CheckResult is_jacobi(JacobiData& j, const Samples& s, double tol) {
  Comparison schouten_part;
  schouten_part.zero(jacobi_schouten_defect(j.pi(), j.xi()));
  Comparison lie_part;
  lie_part.zero(jacobi_lie_defect(j.pi(), j.xi()));
  CheckResult r = measure_parts("jacobi.identity", "[pi,pi] = 2 xi^pi, L_xi pi = 0",
                                {{"schouten", schouten_part}, {"lie", lie_part}}, s, tol);
  j.verified_ = r.verdict == Verdict::pass;
  return r;
}

VectorField anchor_defect(const JacobiData& j, const OneForm& alpha, const OneForm& beta,
                          bool force) {
  if (!force && !j.jacobi_verified()) {
    throw PreconditionError("anchor defect: the pair has not been verified as Jacobi");
  }
  return sharp_pi_xi(j, lambda_bracket(j, alpha, beta)) -
         lie_bracket(sharp_pi_xi(j, alpha), sharp_pi_xi(j, beta));
}

VectorField anchor_defect_prediction(const JacobiData& j, const OneForm& alpha,
                                     const OneForm& beta) {
  Expr p = bivector_pair(j.pi(), alpha, beta);
  return p * (j.xi() - sharp_pi_xi(j, j.require_lambda()));
}

OneForm jacobiator(const JacobiData& j, const OneForm& alpha, const OneForm& beta,
                   const OneForm& gamma) {
  OneForm r = lambda_bracket(j, alpha, lambda_bracket(j, beta, gamma));
  r += lambda_bracket(j, beta, lambda_bracket(j, gamma, alpha));
  r += lambda_bracket(j, gamma, lambda_bracket(j, alpha, beta));
  return r;
}

}  // namespace jacobitk
