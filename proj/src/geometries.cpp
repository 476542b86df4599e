#include "jacobitk/geometries.hpp"

#include <algorithm>
#include <numeric>

namespace jacobitk {

namespace {

int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j] ? 1 : 0;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

// pi^{ij} = w(sharp dx^i, sharp dx^j) where (sharp dx^i)^a = sharp(i, a).
Multivector transported_bivector(const ChartPtr& chart, const ExprMatrix& sharp, const Form& w) {
  int n = chart->dim();
  Multivector pi(chart, 2);
  for (std::size_t k = 0; k < pi.size(); ++k) {
    int i = pi.tuple(k)[0];
    int j = pi.tuple(k)[1];
    Expr s;
    for (int a = 0; a < n; ++a) {
      if (sharp(i, a).is_zero()) continue;
      for (int b = 0; b < n; ++b) {
        if (sharp(j, b).is_zero()) continue;
        Expr wab = w.get({a, b});
        if (!wab.is_zero()) s += sharp(i, a) * wab * sharp(j, b);
      }
    }
    pi.at(k) = simplify(s);
  }
  return pi;
}

VectorField apply_sharp(const ExprMatrix& sharp, const OneForm& alpha) {
  VectorField r(alpha.chart());
  int n = alpha.dim();
  for (int k = 0; k < n; ++k) {
    Expr s;
    for (int i = 0; i < n; ++i) {
      if (!alpha[i].is_zero() && !sharp(i, k).is_zero()) s += alpha[i] * sharp(i, k);
    }
    r[k] = s;
  }
  return r;
}

}  // namespace

Expr contact_volume(const OneForm& eta) {
  int n = eta.dim();
  if (n % 2 == 0) throw GeometryError("contact volume: the dimension must be odd");
  int m = (n - 1) / 2;
  Form d_eta = exterior_d(eta);
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  Expr sum;
  do {
    Expr term = eta[p[0]];
    for (int k = 0; k < m && !term.is_zero(); ++k) {
      term = term * d_eta.get({p[static_cast<std::size_t>(2 * k + 1)], p[static_cast<std::size_t>(2 * k + 2)]});
    }
    if (term.is_zero()) continue;
    sum = permutation_sign(p) > 0 ? sum + term : sum - term;
  } while (std::next_permutation(p.begin(), p.end()));
  // Each product of m two-forms is counted 2^m times by the permutation sum.
  return simplify(Expr(Number::rational(1, std::int64_t{1} << m)) * sum);
}

VectorField ContactStructure::sharp_eta(const OneForm& alpha) const { return apply_sharp(sharp, alpha); }

JacobiData ContactStructure::jacobi() const { return JacobiData(pi, reeb, eta); }

ContactStructure contact_from(const OneForm& eta) {
  const ChartPtr& chart = eta.chart();
  int n = chart->dim();
  if (contact_volume(eta).is_zero()) {
    throw GeometryError("not a contact form: eta ^ (d eta)^n vanishes identically");
  }
  ContactStructure c{eta, exterior_d(eta), ExprMatrix(n), ExprMatrix(n), VectorField(chart),
                     Multivector(chart, 2)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) c.flat(i, j) = simplify(-c.d_eta.get({i, j}) + eta[i] * eta[j]);
  }
  c.sharp = sym_inverse(c.flat);
  c.reeb = c.sharp_eta(eta);
  for (int k = 0; k < n; ++k) c.reeb[k] = simplify(c.reeb[k]);
  c.pi = transported_bivector(chart, c.sharp, c.d_eta);
  return c;
}

std::vector<std::pair<std::string, Comparison>> almost_contact_identities(
    const AlmostContactMetric& a) {
  int n = a.g.dim();
  const ExprMatrix& phi = a.phi.matrix();
  const MetricField& g = a.g;
  std::vector<std::pair<std::string, Comparison>> parts;

  Comparison sq;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Expr s;
      for (int k = 0; k < n; ++k) s += phi(i, k) * phi(k, j);
      sq.equal(s, Expr(i == j ? -1 : 0) + a.xi[i] * a.eta[j]);
    }
  }
  parts.emplace_back("phi-squared", sq);

  Comparison ex;
  ex.equal(pair(a.eta, a.xi), Expr(1));
  parts.emplace_back("eta-xi", ex);

  Comparison px;
  px.zero(a.phi.apply(a.xi));
  parts.emplace_back("phi-xi", px);

  Comparison ep;
  ep.zero(a.phi.pullback(a.eta));
  parts.emplace_back("eta-phi", ep);

  Comparison assoc;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Expr s;
      for (int p = 0; p < n; ++p) {
        if (phi(p, i).is_zero()) continue;
        for (int q = 0; q < n; ++q) s += phi(p, i) * g(p, q) * phi(q, j);
      }
      assoc.equal(s, g(i, j) - a.eta[i] * a.eta[j]);
    }
  }
  parts.emplace_back("associated", assoc);

  Comparison fx;
  for (int i = 0; i < n; ++i) {
    Expr s;
    for (int j = 0; j < n; ++j) s += g(i, j) * a.xi[j];
    fx.equal(s, a.eta[i]);
  }
  parts.emplace_back("flat-xi", fx);

  Comparison norm;
  norm.equal(g(a.xi, a.xi), Expr(1));
  parts.emplace_back("xi-unit", norm);
  return parts;
}

Multivector almost_contact_pi(const AlmostContactMetric& a, const LeviCivita& lc) {
  int n = a.g.dim();
  Multivector pi(a.chart(), 2);
  for (std::size_t k = 0; k < pi.size(); ++k) {
    int i = pi.tuple(k)[0];
    int j = pi.tuple(k)[1];
    Expr s;
    for (int c = 0; c < n; ++c) {
      if (!a.phi(i, c).is_zero()) s += a.phi(i, c) * lc.g_inv()(c, j);
    }
    pi.at(k) = simplify(s);
  }
  return pi;
}

VectorField kenmotsu_defect(const AlmostContactMetric& a, const LeviCivita& lc,
                            const std::vector<EndoField>& nabla_phi, const Expr& a0,
                            const VectorField& x, const VectorField& y) {
  VectorField lhs = contract_direction(nabla_phi, x).apply(y);
  VectorField px = a.phi.apply(x);
  VectorField rhs = lc.metric(px, y) * a.xi - pair(a.eta, y) * px;
  return lhs - a0 * rhs;
}

VectorField LcsStructure::sharp_omega(const OneForm& alpha) const { return apply_sharp(sharp, alpha); }

JacobiData LcsStructure::jacobi() const { return JacobiData(pi, xi, theta); }

LcsStructure lcs_from(const Form& omega, const OneForm& theta, std::optional<Expr> f) {
  if (omega.degree() != 2) throw GeometryError("lcs structure: omega must be a 2-form");
  require_same_chart(omega.chart(), theta.chart(), "lcs structure");
  const ChartPtr& chart = omega.chart();
  int n = chart->dim();
  if (n % 2 != 0) throw GeometryError("lcs structure: the dimension must be even");
  LcsStructure l{omega, theta, std::move(f), ExprMatrix(n), ExprMatrix(n), VectorField(chart),
                 Multivector(chart, 2)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) l.flat(i, j) = simplify(-omega.get({i, j}));
  }
  try {
    l.sharp = sym_inverse(l.flat);
  } catch (const GeometryError&) {
    throw GeometryError("lcs structure: omega is degenerate");
  }
  l.xi = l.sharp_omega(theta);
  for (int k = 0; k < n; ++k) l.xi[k] = simplify(l.xi[k]);
  l.pi = transported_bivector(chart, l.sharp, omega);
  return l;
}

Expr lambda_f(const LeviCivita& lc, const Form& omega, const std::vector<Form>& nabla_omega,
              const Expr& f, const VectorField& x, const VectorField& y, const VectorField& z) {
  std::vector<VectorField> yz = {y, z};
  Expr s = evaluate_form(contract_direction(nabla_omega, x), yz);
  auto w = [&](const VectorField& u, const VectorField& v) {
    std::vector<VectorField> uv = {u, v};
    return evaluate_form(omega, uv);
  };
  const Expr h(Number::rational(1, 2));
  s -= h * (directional(y, f) * w(x, z) - directional(z, f) * w(x, y));
  VectorField grad = lc.gradient(f);
  s += h * (lc.metric(x, y) * w(grad, z) - lc.metric(x, z) * w(grad, y));
  return s;
}

VectorField conformal_nabla(const LeviCivita& lc, const Expr& f, const VectorField& x,
                            const VectorField& y) {
  const Expr h(Number::rational(1, 2));
  VectorField corr = directional(x, f) * y + directional(y, f) * x - lc.metric(x, y) * lc.gradient(f);
  return lc.nabla(x, y) + h * corr;
}

}  // namespace jacobitk
