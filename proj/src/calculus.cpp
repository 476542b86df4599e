#include "jacobitk/calculus.hpp"

namespace jacobitk {

namespace {

void require_degree(const Multivector& p, int d, const char* what) {
  if (p.degree() != d) throw GeometryError(std::string(what) + ": unexpected degree");
}

std::vector<int> tuple_vector(const IndexTuple& t, int p) {
  return std::vector<int>(t.begin(), t.begin() + p);
}

}  // namespace

Form scalar_form(const ChartPtr& chart, const Expr& f) {
  Form r(chart, 0);
  r.at(0) = simplify(f);
  return r;
}

Form exterior_d(const Form& omega) {
  int p = omega.degree();
  if (p + 1 > kMaxDegree) throw GeometryError("exterior derivative: degree exceeds the cap of 3");
  Form r(omega.chart(), p + 1);
  for (std::size_t k = 0; k < r.size(); ++k) {
    std::vector<int> I = tuple_vector(r.tuple(k), p + 1);
    Expr s;
    for (int a = 0; a <= p; ++a) {
      std::vector<int> rest;
      for (int b = 0; b <= p; ++b) {
        if (b != a) rest.push_back(I[static_cast<std::size_t>(b)]);
      }
      Expr term = diff(omega.get(rest), I[static_cast<std::size_t>(a)]);
      s = (a % 2 == 0) ? s + term : s - term;
    }
    r.at(k) = s;
  }
  return r;
}

OneForm differential(const ChartPtr& chart, const Expr& f) {
  return OneForm(exterior_d(scalar_form(chart, f)));
}

Expr directional(const VectorField& x, const Expr& f) {
  Expr s;
  for (int i = 0; i < x.dim(); ++i) {
    if (!x[i].is_zero()) s += x[i] * diff(f, i);
  }
  return s;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_chart(x.chart(), y.chart(), "Lie bracket");
  VectorField r(x.chart());
  for (int i = 0; i < x.dim(); ++i) r[i] = directional(x, y[i]) - directional(y, x[i]);
  return r;
}

Form lie_derivative(const VectorField& x, const Form& omega) {
  require_same_chart(x.chart(), omega.chart(), "Lie derivative");
  if (omega.degree() == 0) return scalar_form(omega.chart(), directional(x, omega.at(0)));
  if (omega.degree() == kMaxDegree && omega.dim() > kMaxDegree) {
    throw GeometryError("Cartan formula for a 3-form needs 4-forms; use lie_derivative_direct");
  }
  Form r = exterior_d(interior(x, omega));
  if (omega.degree() < kMaxDegree) r += interior(x, exterior_d(omega));
  return r;
}

Form lie_derivative_direct(const VectorField& x, const Form& omega) {
  require_same_chart(x.chart(), omega.chart(), "Lie derivative");
  int p = omega.degree();
  int n = omega.dim();
  Form r(omega.chart(), p);
  for (std::size_t k = 0; k < r.size(); ++k) {
    std::vector<int> I = tuple_vector(r.tuple(k), p);
    Expr s = directional(x, omega.at(k));
    for (int a = 0; a < p; ++a) {
      std::vector<int> J = I;
      for (int l = 0; l < n; ++l) {
        Expr dx = diff(x[l], I[static_cast<std::size_t>(a)]);
        if (dx.is_zero()) continue;
        J[static_cast<std::size_t>(a)] = l;
        s += omega.get(J) * dx;
      }
    }
    r.at(k) = s;
  }
  return r;
}

Multivector lie_derivative(const VectorField& x, const Multivector& pm) {
  require_same_chart(x.chart(), pm.chart(), "Lie derivative");
  int p = pm.degree();
  int n = pm.dim();
  Multivector r(pm.chart(), p);
  for (std::size_t k = 0; k < r.size(); ++k) {
    std::vector<int> I = tuple_vector(r.tuple(k), p);
    Expr s = directional(x, pm.at(k));
    for (int a = 0; a < p; ++a) {
      std::vector<int> J = I;
      for (int l = 0; l < n; ++l) {
        Expr dx = diff(x[I[static_cast<std::size_t>(a)]], l);
        if (dx.is_zero()) continue;
        J[static_cast<std::size_t>(a)] = l;
        s -= pm.get(J) * dx;
      }
    }
    r.at(k) = s;
  }
  return r;
}

Multivector schouten(const Multivector& p, const Multivector& q) {
  require_same_chart(p.chart(), q.chart(), "Schouten bracket");
  int dp = p.degree();
  int dq = q.degree();
  if (dp + dq - 1 > kMaxDegree) throw GeometryError("Schouten bracket: degree exceeds the cap of 3");
  if (dp == 1 && dq == 0) {
    Multivector r(p.chart(), 0);
    r.at(0) = directional(VectorField(p), q.at(0));
    return r;
  }
  if (dp == 0 && dq == 1) {
    Multivector r(p.chart(), 0);
    r.at(0) = -directional(VectorField(q), p.at(0));
    return r;
  }
  if (dp == 1 && dq == 1) return lie_bracket(VectorField(p), VectorField(q));
  if (dp == 1 && dq == 2) return lie_derivative(VectorField(p), q);
  if (dp == 2 && dq == 1) return -lie_derivative(VectorField(q), p);
  if (dp == 2 && dq == 2) {
    int n = p.dim();
    Multivector r(p.chart(), 3);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const IndexTuple& t = r.tuple(k);
      const int cyc[3][3] = {{t[0], t[1], t[2]}, {t[1], t[2], t[0]}, {t[2], t[0], t[1]}};
      Expr s;
      for (const auto& c : cyc) {
        for (int l = 0; l < n; ++l) {
          Expr pli = p.get({l, c[0]});
          if (!pli.is_zero()) s += pli * diff(q.get({c[1], c[2]}), l);
          Expr qli = q.get({l, c[0]});
          if (!qli.is_zero()) s += qli * diff(p.get({c[1], c[2]}), l);
        }
      }
      r.at(k) = s;
    }
    return r;
  }
  throw GeometryError("Schouten bracket: unsupported degree pair (" + std::to_string(dp) + "," +
                      std::to_string(dq) + ")");
}

Expr bivector_pair(const Multivector& pi, const OneForm& alpha, const OneForm& beta) {
  require_degree(pi, 2, "bivector pairing");
  require_same_chart(pi.chart(), alpha.chart(), "bivector pairing");
  require_same_chart(pi.chart(), beta.chart(), "bivector pairing");
  Expr s;
  for (std::size_t k = 0; k < pi.size(); ++k) {
    if (pi.at(k).is_zero()) continue;
    int i = pi.tuple(k)[0];
    int j = pi.tuple(k)[1];
    s += pi.at(k) * (alpha[i] * beta[j] - alpha[j] * beta[i]);
  }
  return s;
}

VectorField sharp_pi(const Multivector& pi, const OneForm& alpha) {
  require_degree(pi, 2, "sharp");
  require_same_chart(pi.chart(), alpha.chart(), "sharp");
  VectorField r(pi.chart());
  int n = pi.dim();
  for (int j = 0; j < n; ++j) {
    Expr s;
    for (int i = 0; i < n; ++i) {
      if (alpha[i].is_zero()) continue;
      s += alpha[i] * pi.get({i, j});
    }
    r[j] = s;
  }
  return r;
}

ExprMatrix sharp_pi_matrix(const Multivector& pi) {
  require_degree(pi, 2, "sharp");
  int n = pi.dim();
  ExprMatrix m(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m(j, i) = pi.get({i, j});
  }
  return m;
}

OneForm koszul(const Multivector& pi, const OneForm& alpha, const OneForm& beta) {
  VectorField sa = sharp_pi(pi, alpha);
  VectorField sb = sharp_pi(pi, beta);
  Form r = lie_derivative(sa, beta);
  r -= lie_derivative(sb, alpha);
  r -= exterior_d(scalar_form(pi.chart(), bivector_pair(pi, alpha, beta)));
  return OneForm(r);
}

}  // namespace jacobitk
