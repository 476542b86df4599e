#include "jacobitk/metric_connection.hpp"

namespace jacobitk {

namespace {

const Expr& half() {
  static const Expr h(Number::rational(1, 2));
  return h;
}

}  // namespace

LeviCivita::LeviCivita(MetricField g) : g_(std::move(g)), g_inv_(sym_inverse(g_.matrix())) {
  int n = dim();
  std::vector<Expr> dg(static_cast<std::size_t>(n) * n * n);  // d_l g_ij at (l, i, j)
  auto at = [n](int a, int b, int c) { return (static_cast<std::size_t>(a) * n + b) * n + c; };
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) dg[at(l, i, j)] = diff(g_(i, j), l);
    }
  }
  gamma_.resize(static_cast<std::size_t>(n) * n * n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Expr s;
        for (int l = 0; l < n; ++l) {
          if (g_inv_(k, l).is_zero()) continue;
          Expr t = dg[at(i, j, l)] + dg[at(j, i, l)] - dg[at(l, i, j)];
          if (!t.is_zero()) s += g_inv_(k, l) * t;
        }
        s = simplify(half() * s);
        gamma_[at(k, i, j)] = s;
        gamma_[at(k, j, i)] = s;
      }
    }
  }
}

VectorField LeviCivita::sharp(const OneForm& alpha) const {
  require_same_chart(chart(), alpha.chart(), "sharp_g");
  VectorField r(chart());
  for (int i = 0; i < dim(); ++i) {
    Expr s;
    for (int j = 0; j < dim(); ++j) {
      if (!alpha[j].is_zero()) s += g_inv_(i, j) * alpha[j];
    }
    r[i] = s;
  }
  return r;
}

OneForm LeviCivita::flat(const VectorField& x) const {
  require_same_chart(chart(), x.chart(), "flat_g");
  OneForm r(chart());
  for (int i = 0; i < dim(); ++i) {
    Expr s;
    for (int j = 0; j < dim(); ++j) {
      if (!x[j].is_zero()) s += g_(i, j) * x[j];
    }
    r[i] = s;
  }
  return r;
}

Expr LeviCivita::cometric(const OneForm& alpha, const OneForm& beta) const {
  Expr s;
  for (int i = 0; i < dim(); ++i) {
    if (alpha[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (!beta[j].is_zero()) s += alpha[i] * g_inv_(i, j) * beta[j];
    }
  }
  return s;
}

VectorField LeviCivita::gradient(const Expr& f) const { return sharp(differential(chart(), f)); }

VectorField LeviCivita::nabla(const VectorField& x, const VectorField& y) const {
  VectorField r(chart());
  int n = dim();
  for (int k = 0; k < n; ++k) {
    Expr s = directional(x, y[k]);
    for (int i = 0; i < n; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (!y[j].is_zero() && !gamma(k, i, j).is_zero()) s += gamma(k, i, j) * x[i] * y[j];
      }
    }
    r[k] = s;
  }
  return r;
}

std::vector<Expr> LeviCivita::nabla_metric() const {
  int n = dim();
  std::vector<Expr> r;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        Expr s = diff(g_(b, c), a);
        for (int k = 0; k < n; ++k) s -= gamma(k, a, b) * g_(k, c) + gamma(k, a, c) * g_(b, k);
        r.push_back(s);
      }
    }
  }
  return r;
}

std::vector<Form> LeviCivita::nabla_form(const Form& omega) const {
  require_same_chart(chart(), omega.chart(), "covariant derivative");
  int n = dim();
  int p = omega.degree();
  std::vector<Form> r;
  for (int a = 0; a < n; ++a) {
    Form t(chart(), p);
    for (std::size_t k = 0; k < t.size(); ++k) {
      std::vector<int> I(t.tuple(k).begin(), t.tuple(k).begin() + p);
      Expr s = diff(omega.at(k), a);
      for (int slot = 0; slot < p; ++slot) {
        std::vector<int> J = I;
        for (int m = 0; m < n; ++m) {
          const Expr& gam = gamma(m, a, I[static_cast<std::size_t>(slot)]);
          if (gam.is_zero()) continue;
          J[static_cast<std::size_t>(slot)] = m;
          s -= gam * omega.get(J);
        }
      }
      t.at(k) = s;
    }
    r.push_back(std::move(t));
  }
  return r;
}

std::vector<EndoField> LeviCivita::nabla_endo(const EndoField& a) const {
  require_same_chart(chart(), a.chart(), "covariant derivative");
  int n = dim();
  std::vector<EndoField> r;
  for (int d = 0; d < n; ++d) {
    ExprMatrix m(n);
    for (int i = 0; i < n; ++i) {
      for (int b = 0; b < n; ++b) {
        Expr s = diff(a(i, b), d);
        for (int k = 0; k < n; ++k) {
          s += gamma(i, d, k) * a(k, b);
          s -= a(i, k) * gamma(k, d, b);
        }
        m(i, b) = s;
      }
    }
    r.emplace_back(chart(), std::move(m));
  }
  return r;
}

Form contract_direction(const std::vector<Form>& family, const VectorField& x) {
  if (family.empty()) throw GeometryError("contract_direction: empty family");
  Form r(family.front().chart(), family.front().degree());
  for (int a = 0; a < x.dim(); ++a) {
    if (!x[a].is_zero()) r += x[a] * family[static_cast<std::size_t>(a)];
  }
  return r;
}

EndoField contract_direction(const std::vector<EndoField>& family, const VectorField& x) {
  if (family.empty()) throw GeometryError("contract_direction: empty family");
  int n = x.dim();
  ExprMatrix m(n);
  for (int a = 0; a < n; ++a) {
    if (x[a].is_zero()) continue;
    const auto& f = family[static_cast<std::size_t>(a)].matrix();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = m(i, j) + x[a] * f(i, j);
    }
  }
  return EndoField(x.chart(), std::move(m));
}

namespace {

EndoField make_J(const Multivector& pi, const MetricField& g) {
  int n = g.dim();
  ExprMatrix m(n);
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      Expr s;
      for (int i = 0; i < n; ++i) {
        Expr p = pi.get({i, k});
        if (!p.is_zero()) s += p * g(i, a);
      }
      m(k, a) = s;
    }
  }
  return EndoField(g.chart(), std::move(m));
}

ExprMatrix make_J_star(const Multivector& pi, const MetricField& g) {
  int n = g.dim();
  ExprMatrix m(n);
  for (int b = 0; b < n; ++b) {
    for (int i = 0; i < n; ++i) {
      Expr s;
      for (int j = 0; j < n; ++j) {
        Expr p = pi.get({i, j});
        if (!p.is_zero()) s += g(b, j) * p;
      }
      m(b, i) = simplify(s);
    }
  }
  return m;
}

JacobiData with_metric_lambda(const JacobiData& j, const LeviCivita& lc, const EndoField& J) {
  const VectorField& xi = j.xi();
  OneForm fx = lc.flat(xi);
  OneForm lambda = OneForm(lc.metric(xi, xi) * fx - lc.flat(J.apply(xi)));
  return j.with_lambda(lambda);
}

}  // namespace

MetricPackage::MetricPackage(const JacobiData& j, MetricField g)
    : lc_(std::move(g)),
      jacobi_(j),
      J_(make_J(j.pi(), lc_.g())),
      J_star_(make_J_star(j.pi(), lc_.g())) {
  require_same_chart(j.chart(), lc_.chart(), "metric package");
  jacobi_ = with_metric_lambda(j, lc_, J_);
}

OneForm MetricPackage::J_star(const OneForm& alpha) const {
  OneForm r(chart());
  for (int b = 0; b < dim(); ++b) {
    Expr s;
    for (int i = 0; i < dim(); ++i) {
      if (!alpha[i].is_zero() && !J_star_(b, i).is_zero()) s += J_star_(b, i) * alpha[i];
    }
    r[b] = s;
  }
  return r;
}

ContravariantD::ContravariantD(std::shared_ptr<const MetricPackage> pkg) : pkg_(std::move(pkg)) {
  int n = pkg_->dim();
  for (int a = 0; a < n; ++a) sharp_basis_.push_back(pkg_->sharp(OneForm::basis(pkg_->chart(), a)));
  basis_.resize(static_cast<std::size_t>(n) * n);
}

Expr ContravariantD::koszul_rhs(const OneForm& a, const OneForm& b, const OneForm& c) const {
  const MetricPackage& p = *pkg_;
  const LeviCivita& lc = p.lc();
  const JacobiData& j = p.jacobi();
  Expr s = directional(p.sharp(a), lc.cometric(b, c));
  s += directional(p.sharp(b), lc.cometric(a, c));
  s -= directional(p.sharp(c), lc.cometric(a, b));
  s -= lc.cometric(lambda_bracket(j, b, c), a);
  s -= lc.cometric(lambda_bracket(j, a, c), b);
  s += lc.cometric(lambda_bracket(j, a, b), c);
  return s;
}

OneForm ContravariantD::direct(const OneForm& a, const OneForm& b) const {
  int n = pkg_->dim();
  std::vector<Expr> rhs;
  for (int k = 0; k < n; ++k) rhs.push_back(koszul_rhs(a, b, OneForm::basis(pkg_->chart(), k)));
  const MetricField& g = pkg_->g();
  OneForm r(pkg_->chart());
  for (int jj = 0; jj < n; ++jj) {
    Expr s;
    for (int k = 0; k < n; ++k) {
      if (!g(jj, k).is_zero()) s += g(jj, k) * rhs[static_cast<std::size_t>(k)];
    }
    r[jj] = simplify(half() * s);
  }
  return r;
}

const OneForm& ContravariantD::basis(int a, int b) const {
  auto& slot = basis_[static_cast<std::size_t>(a) * pkg_->dim() + b];
  if (!slot) {
    const auto& c = pkg_->chart();
    slot = std::make_unique<OneForm>(direct(OneForm::basis(c, a), OneForm::basis(c, b)));
  }
  return *slot;
}

OneForm ContravariantD::operator()(const OneForm& a, const OneForm& b) const {
  int n = pkg_->dim();
  OneForm r(pkg_->chart());
  for (int i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (int k = 0; k < n; ++k) {
      if (!b[k].is_zero()) r += (a[i] * b[k]) * basis(i, k);
    }
  }
  VectorField sa = pkg_->sharp(a);
  for (int k = 0; k < n; ++k) r[k] = r[k] + directional(sa, b[k]);
  return r;
}

Expr ContravariantD::D_pi(const OneForm& a, const OneForm& b, const OneForm& c) const {
  const Multivector& pi = pkg_->pi();
  return directional(pkg_->sharp(a), bivector_pair(pi, b, c)) -
         bivector_pair(pi, (*this)(a, b), c) - bivector_pair(pi, b, (*this)(a, c));
}

OneForm ContravariantD::D_J_star(const OneForm& a, const OneForm& b) const {
  return (*this)(a, pkg_->J_star(b)) - pkg_->J_star((*this)(a, b));
}

Expr ContravariantD::compatibility_defect(const OneForm& a, const OneForm& b,
                                          const OneForm& c) const {
  const MetricPackage& p = *pkg_;
  const VectorField& xi = p.xi();
  const LeviCivita& lc = p.lc();
  Expr rhs = pair(c, xi) * bivector_pair(p.pi(), a, b) - pair(b, xi) * bivector_pair(p.pi(), a, c) -
             pair(p.J_star(c), xi) * lc.cometric(a, b) + pair(p.J_star(b), xi) * lc.cometric(a, c);
  return D_pi(a, b, c) - half() * rhs;
}

OneForm ContravariantD::compatibility_defect_endo(const OneForm& a, const OneForm& b) const {
  const MetricPackage& p = *pkg_;
  const VectorField& xi = p.xi();
  const LeviCivita& lc = p.lc();
  OneForm fx = lc.flat(xi);
  OneForm rhs = OneForm(bivector_pair(p.pi(), a, b) * fx);
  rhs -= pair(b, xi) * p.J_star(a);
  rhs += lc.cometric(a, b) * p.J_star(fx);
  rhs += pair(p.J_star(b), xi) * a;
  return D_J_star(a, b) - half() * rhs;
}

}  // namespace jacobitk
