#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jacobitk/geometries.hpp"
#include "support.hpp"

using namespace jacobitk;
using namespace test_support;

namespace {

VectorField vec(const ChartPtr& c, std::vector<std::string> comps) {
  std::vector<Expr> e;
  for (const auto& s : comps) e.push_back(c->parse(s));
  return VectorField(c, e);
}

OneForm form(const ChartPtr& c, std::vector<std::string> comps) {
  std::vector<Expr> e;
  for (const auto& s : comps) e.push_back(c->parse(s));
  return OneForm(c, e);
}

MetricField diagonal(const ChartPtr& c, std::vector<std::string> d) {
  ExprMatrix m(c->dim());
  for (int i = 0; i < c->dim(); ++i) m(i, i) = c->parse(d[static_cast<std::size_t>(i)]);
  return MetricField(c, m);
}

// phi d_x = d_y, phi d_y = -d_x, xi = d_t on (t, x, y) with g = dt^2 + e^{kt}(dx^2 + dy^2).
AlmostContactMetric warped_acm(const ChartPtr& c, const std::string& scale, const std::string& phi_entry = "1") {
  ExprMatrix phi(3);
  phi(2, 1) = c->parse(phi_entry);
  phi(1, 2) = -c->parse(phi_entry);
  return {EndoField(c, phi), vec(c, {"1", "0", "0"}), form(c, {"1", "0", "0"}),
          diagonal(c, {"1", scale, scale})};
}

double worst_parts(const std::vector<std::pair<std::string, Comparison>>& parts, const Samples& s) {
  double w = 0;
  for (const auto& [name, cmp] : parts) w = std::max(w, worst(cmp, s));
  return w;
}

Form lcs_omega(const ChartPtr& c) {
  Form w(c, 2);
  w.set({0, 1}, c->parse("exp(-x)"));
  w.set({2, 3}, c->parse("exp(-x)"));
  return w;
}

}  // namespace

TEST_CASE("contact structure of dz - y dx") {
  auto c = make_chart({"x", "y", "z"});
  Samples s(c, 20, 0);
  OneForm eta = form(c, {"-y", "0", "1"});
  CHECK(worst_equal(contact_volume(eta), Expr(1), s) == 0.0);
  ContactStructure cs = contact_from(eta);
  CHECK(worst_equal(cs.reeb, vec(c, {"0", "0", "1"}), s) == 0.0);
  CHECK(worst_equal(cs.pi.get({0, 1}), Expr(1), s) == 0.0);
  CHECK(worst_equal(cs.pi.get({0, 2}), Expr(0), s) == 0.0);
  CHECK(worst_equal(cs.pi.get({1, 2}), c->parse("-y"), s) == 0.0);
  // i_xi eta = 1 and i_xi d eta = 0.
  CHECK(worst_equal(pair(eta, cs.reeb), Expr(1), s) == 0.0);
  CHECK(worst_zero(interior(cs.reeb, cs.d_eta), s) == 0.0);
  RandomInputs rnd(c, 3);
  for (int t = 0; t < 3; ++t) {
    OneForm a = rnd.one_form();
    VectorField x = cs.sharp_eta(a);
    OneForm back = Expr(-1) * OneForm(interior(x, cs.d_eta)) + pair(eta, x) * eta;
    CHECK(worst_equal(back, a, s) < 1e-9);
  }
}

TEST_CASE("contact_from rejects degenerate forms and even dimensions") {
  auto c = make_chart({"x", "y", "z"});
  CHECK_THROWS_AS(contact_from(form(c, {"0", "0", "1"})), GeometryError);
  auto c2 = make_chart({"x", "y"});
  CHECK_THROWS_AS(contact_from(form(c2, {"-y", "1"})), GeometryError);
}

TEST_CASE("almost contact metric identities") {
  auto c = make_chart({"t", "x", "y"});
  Samples s(c, 20, 0);
  CHECK(worst_parts(almost_contact_identities(warped_acm(c, "exp(t)")), s) < 1e-12);
  // Doubling phi breaks phi^2 = -I + eta (x) xi.
  auto broken = almost_contact_identities(warped_acm(c, "exp(t)", "2"));
  CHECK(worst_parts(broken, s) > 1.0);
}

TEST_CASE("Kenmotsu defects of warped products") {
  // g = dt^2 + e^{kt}(dx^2 + dy^2) is (k/2)-Kenmotsu.
  auto c = make_chart({"t", "x", "y"});
  Samples s(c, 20, 0);
  for (const auto& [scale, good, bad] : {std::tuple{"exp(t)", Number::rational(1, 2), Number::rational(1, 1)},
                                         std::tuple{"exp(2*t)", Number::rational(1, 1), Number::rational(1, 2)}}) {
    AlmostContactMetric a = warped_acm(c, scale);
    LeviCivita lc(a.g);
    auto nphi = lc.nabla_endo(a.phi);
    double w_good = 0;
    double w_bad = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        VectorField x = VectorField::basis(c, i);
        VectorField y = VectorField::basis(c, j);
        w_good = std::max(w_good, worst_zero(kenmotsu_defect(a, lc, nphi, Expr(good), x, y), s));
        w_bad = std::max(w_bad, worst_zero(kenmotsu_defect(a, lc, nphi, Expr(bad), x, y), s));
      }
    }
    CHECK(w_good < 1e-9);
    CHECK(w_bad > 1e-3);
  }
}

TEST_CASE("almost contact bivector is phi composed with the inverse metric") {
  auto c = make_chart({"t", "x", "y"});
  Samples s(c, 20, 0);
  AlmostContactMetric a = warped_acm(c, "exp(t)");
  LeviCivita lc(a.g);
  Multivector p = almost_contact_pi(a, lc);
  // pi^{xy} = phi^x_y g^{yy} = -e^{-t}.
  CHECK(worst_equal(p.get({1, 2}), c->parse("-exp(-t)"), s) < 1e-12);
  CHECK(worst_zero(p.get({0, 1}), s) == 0.0);
}

TEST_CASE("lcs structure: xi from i_xi omega = -theta") {
  auto c = make_chart({"x", "y", "z", "w"});
  Samples s(c, 20, 0);
  LcsStructure l = lcs_from(lcs_omega(c), form(c, {"1", "0", "0", "0"}));
  // e^{-x}(xi^x dy - xi^y dx + ...) = -dx forces xi = e^x d_y.
  CHECK(worst_equal(l.xi, vec(c, {"0", "exp(x)", "0", "0"}), s) < 1e-12);
  CHECK(worst_equal(OneForm(interior(l.xi, l.omega)), form(c, {"-1", "0", "0", "0"}), s) < 1e-12);
  // d omega = -e^{-x} dx^dz^dw = -theta ^ omega.
  CHECK(worst_zero(exterior_d(l.omega) + wedge(Form(l.theta), l.omega), s) < 1e-12);

  LcsStructure sym = lcs_from(lcs_omega(c), OneForm(c));
  CHECK(worst_zero(sym.xi, s) == 0.0);
}

TEST_CASE("lcs_from rejects odd dimensions and degenerate omega") {
  auto c3 = make_chart({"x", "y", "z"});
  Form w3(c3, 2);
  w3.set({0, 1}, Expr(1));
  CHECK_THROWS_AS(lcs_from(w3, OneForm(c3)), GeometryError);
  auto c = make_chart({"x", "y", "z", "w"});
  Form w(c, 2);
  w.set({0, 1}, Expr(1));
  CHECK_THROWS_AS(lcs_from(w, OneForm(c)), GeometryError);
}

TEST_CASE("conformal change: e^f omega is parallel for the metric e^f g") {
  // g = e^{-x} I and f = x, so e^f g is Euclidean and e^f omega is constant.
  auto c = make_chart({"x", "y", "z", "w"});
  Samples s(c, 20, 0);
  MetricField g = diagonal(c, {"exp(-x)", "exp(-x)", "exp(-x)", "exp(-x)"});
  LeviCivita lc(g);
  Expr f = c->parse("x");
  Form omega = lcs_omega(c);
  auto nw = lc.nabla_form(omega);
  double cn = 0;
  double lam = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      VectorField x = VectorField::basis(c, i);
      VectorField y = VectorField::basis(c, j);
      cn = std::max(cn, worst_zero(conformal_nabla(lc, f, x, y), s));
      for (int k = 0; k < 4; ++k) {
        lam = std::max(lam, worst_zero(lambda_f(lc, omega, nw, f, x, y, VectorField::basis(c, k)), s));
      }
    }
  }
  CHECK(cn < 1e-12);
  CHECK(lam < 1e-9);
  // Lambda_f does detect a wrong conformal factor.
  double off = 0;
  Expr wrong = c->parse("2*x");
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        off = std::max(off, worst_zero(lambda_f(lc, omega, nw, wrong, VectorField::basis(c, i),
                                                VectorField::basis(c, j), VectorField::basis(c, k)),
                                       s));
      }
    }
  }
  CHECK(off > 1e-3);
}
