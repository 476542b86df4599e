#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jacobitk/metric_connection.hpp"
#include "support.hpp"

using namespace jacobitk;
using namespace test_support;

namespace {

MetricField metric(const ChartPtr& c, const std::vector<std::vector<std::string>>& rows) {
  int n = c->dim();
  ExprMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = c->parse(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return MetricField(c, m);
}

MetricField euclidean(const ChartPtr& c) { return MetricField(c, ExprMatrix::identity(c->dim())); }

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

ChartPtr txy() { return make_chart({"t", "x", "y"}); }

MetricField warped(const ChartPtr& c) {
  return metric(c, {{"1", "0", "0"}, {"0", "exp(t)", "0"}, {"0", "0", "exp(t)"}});
}

ChartPtr xyz() { return make_chart({"x", "y", "z"}); }

// eta = dz - y dx with its associated metric and Jacobi pair.
MetricField contact_metric(const ChartPtr& c) {
  return metric(c, {{"1 + y^2", "0", "-y"}, {"0", "1", "0"}, {"-y", "0", "1"}});
}

JacobiData contact_pair(const ChartPtr& c) {
  Multivector p(c, 2);
  p.set({0, 1}, Expr(1));
  p.set({1, 2}, c->parse("-y"));
  return JacobiData(p, vec(c, {"0", "0", "1"}));
}

}  // namespace

TEST_CASE("musical isomorphisms") {
  auto c = xyz();
  Samples s(c, 20, 0);
  LeviCivita e(euclidean(c));
  CHECK(worst_equal(e.sharp(form(c, {"1", "0", "0"})), vec(c, {"1", "0", "0"}), s) == 0.0);

  auto w = txy();
  Samples sw(w, 20, 0);
  LeviCivita k(warped(w));
  CHECK(worst_equal(k.sharp(form(w, {"0", "1", "0"})), vec(w, {"0", "exp(-t)", "0"}), sw) < 1e-12);

  LeviCivita lc(contact_metric(c));
  RandomInputs rnd(c, 1);
  for (int t = 0; t < 5; ++t) {
    OneForm a = rnd.one_form();
    OneForm b = rnd.one_form();
    CHECK(worst_equal(lc.cometric(a, b), lc.metric(lc.sharp(a), lc.sharp(b)), s) < 1e-9);
    VectorField x = rnd.vector_field();
    CHECK(worst_equal(lc.sharp(lc.flat(x)), x, s) < 1e-9);
  }
  Comparison inv;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Expr sum;
      for (int k2 = 0; k2 < 3; ++k2) sum += lc.g_inv()(i, k2) * lc.g()(k2, j);
      inv.equal(sum, Expr(i == j ? 1 : 0));
    }
  }
  CHECK(worst(inv, s) < 1e-9);
}

TEST_CASE("Levi-Civita connection: flat, warped and contact examples") {
  auto c = xyz();
  LeviCivita e(euclidean(c));
  Samples s(c, 20, 0);
  CHECK(worst_zero(e.nabla(VectorField::basis(c, 0), VectorField::basis(c, 1)), s) == 0.0);

  // g = dt^2 + e^t(dx^2 + dy^2): Gamma^t_xx = -e^t/2 by hand.
  auto w = txy();
  Samples sw(w, 20, 0);
  LeviCivita k(warped(w));
  CHECK(worst_equal(k.nabla(VectorField::basis(w, 1), VectorField::basis(w, 1)), vec(w, {"-exp(t)/2", "0", "0"}),
                    sw) < 1e-12);
  CHECK(worst_equal(k.nabla(VectorField::basis(w, 0), VectorField::basis(w, 1)), vec(w, {"0", "1/2", "0"}), sw) <
        1e-12);

  LeviCivita lc(contact_metric(c));
  Comparison nm;
  for (const auto& x : lc.nabla_metric()) nm.zero(x);
  CHECK(worst(nm, s) < 1e-9);
  RandomInputs rnd(c, 7);
  for (int t = 0; t < 3; ++t) {
    VectorField x = rnd.vector_field();
    VectorField y = rnd.vector_field();
    CHECK(worst_equal(lc.nabla(x, y) - lc.nabla(y, x), lie_bracket(x, y), s) < 1e-9);
  }
}

TEST_CASE("covariant derivatives of endomorphisms and forms follow the Leibniz rule") {
  auto c = xyz();
  Samples s(c, 20, 0);
  LeviCivita lc(contact_metric(c));
  RandomInputs rnd(c, 11);
  ExprMatrix m(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = rnd.polynomial();
  }
  EndoField a(c, m);
  auto na = lc.nabla_endo(a);
  Form w = wedge(Form(rnd.one_form()), Form(rnd.one_form()));
  auto nw = lc.nabla_form(w);
  for (int t = 0; t < 3; ++t) {
    VectorField x = rnd.vector_field();
    VectorField y = rnd.vector_field();
    VectorField z = rnd.vector_field();
    CHECK(worst_equal(contract_direction(na, x).apply(y), lc.nabla(x, a.apply(y)) - a.apply(lc.nabla(x, y)), s) <
          1e-9);
    std::vector<VectorField> yz = {y, z};
    std::vector<VectorField> ny_z = {lc.nabla(x, y), z};
    std::vector<VectorField> y_nz = {y, lc.nabla(x, z)};
    Expr rhs = directional(x, evaluate_form(w, yz)) - evaluate_form(w, ny_z) - evaluate_form(w, y_nz);
    CHECK(worst_equal(evaluate_form(contract_direction(nw, x), yz), rhs, s) < 1e-9);
  }
}

TEST_CASE("metric package: J, J* and lambda") {
  auto c = xyz();
  Samples s(c, 20, 0);

  RandomInputs rnd(c, 13);
  MetricPackage poisson(JacobiData(rnd.bivector(), VectorField(c)), contact_metric(c));
  CHECK(worst_zero(poisson.lambda(), s) == 0.0);

  MetricPackage p(contact_pair(c), contact_metric(c));
  // For the contact metric lambda = flat_g(xi) = eta.
  CHECK(worst_equal(p.lambda(), form(c, {"-y", "0", "1"}), s) < 1e-12);
  const LeviCivita& lc = p.lc();
  for (int a = 0; a < 3; ++a) {
    VectorField e = VectorField::basis(c, a);
    CHECK(worst_equal(p.J().apply(e), lc.sharp(p.J_star(lc.flat(e))), s) < 1e-12);
  }
  // g(J #_g a, #_g b) = pi(a, b).
  for (int t = 0; t < 3; ++t) {
    OneForm a = rnd.one_form();
    OneForm b = rnd.one_form();
    CHECK(worst_equal(lc.metric(p.J().apply(lc.sharp(a)), lc.sharp(b)), bivector_pair(p.pi(), a, b), s) < 1e-9);
  }
}

TEST_CASE("contravariant derivative: flat Poisson plane") {
  auto c = make_chart({"x", "y"});
  Multivector pi(c, 2);
  pi.set({0, 1}, Expr(1));
  auto pkg = std::make_shared<const MetricPackage>(JacobiData(pi, VectorField(c)), euclidean(c));
  ContravariantD D(pkg);
  Samples s(c, 20, 0);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) CHECK(worst_zero(D.basis(a, b), s) == 0.0);
  }
  auto dx = covector_basis(c);
  CHECK(worst_zero(D.D_pi(dx[0], dx[0], dx[1]), s) == 0.0);
  CHECK(worst_zero(D.compatibility_defect(dx[0], dx[0], dx[1]), s) == 0.0);
}

TEST_CASE("contravariant derivative: a contact entry checked by hand") {
  // #dx = d_y, #dz = y d_y + d_z, and nabla_{d_y}(y d_y + d_z) = -1/2 d_x + d_y - y/2 d_z
  // from the Christoffel symbols of the contact metric. Pulling back through
  // #(a dx + b dy + c dz) = -b d_x + (a + c y) d_y + (c - b y) d_z gives
  // D_{dx} dz = dx + 1/2 dy.
  auto c = xyz();
  Samples s(c, 20, 0);
  auto pkg = std::make_shared<const MetricPackage>(contact_pair(c), contact_metric(c));
  ContravariantD D(pkg);
  CHECK(worst_equal(D.basis(0, 2), form(c, {"1", "1/2", "0"}), s) < 1e-12);
  CHECK(worst_equal(pkg->lc().nabla(vec(c, {"0", "1", "0"}), vec(c, {"0", "y", "1"})), vec(c, {"-1/2", "1", "-y/2"}),
                    s) < 1e-12);
}

TEST_CASE("contravariant derivative: defining properties on random inputs") {
  auto c = xyz();
  Samples s(c, 20, 0);
  auto pkg = std::make_shared<const MetricPackage>(contact_pair(c), contact_metric(c));
  ContravariantD D(pkg);
  const LeviCivita& lc = pkg->lc();
  RandomInputs rnd(c, 17);
  for (int t = 0; t < 3; ++t) {
    OneForm a = rnd.one_form();
    OneForm b = rnd.one_form();
    OneForm e = rnd.one_form();
    CHECK(worst_equal(directional(pkg->sharp(a), lc.cometric(b, e)),
                      lc.cometric(D(a, b), e) + lc.cometric(b, D(a, e)), s) < 1e-9);
    CHECK(worst_equal(D(a, b) - D(b, a), lambda_bracket(pkg->jacobi(), a, b), s) < 1e-9);
    CHECK(worst_equal(D.direct(a, b), D(a, b), s) < 1e-9);
    // Prop LC holds for contact with its associated metric.
    CHECK(worst_equal(pkg->sharp(D(a, b)), lc.nabla(pkg->sharp(a), pkg->sharp(b)), s) < 1e-9);
    // D pi is antisymmetric in its last two slots.
    CHECK(worst_equal(D.D_pi(a, b, e), -D.D_pi(a, e, b), s) < 1e-9);
  }
}

TEST_CASE("compatibility: the two defect forms agree through the cometric") {
  auto c = xyz();
  Samples s(c, 20, 0);
  auto pkg = std::make_shared<const MetricPackage>(contact_pair(c), contact_metric(c));
  ContravariantD D(pkg);
  auto dx = covector_basis(c);
  Comparison cross;
  double nonzero = 0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      OneForm endo = D.compatibility_defect_endo(dx[a], dx[b]);
      for (int e = 0; e < 3; ++e) {
        Expr d2 = D.compatibility_defect(dx[a], dx[b], dx[e]);
        cross.equal(d2, pkg->lc().cometric(endo, dx[e]));
        nonzero = std::max(nonzero, worst_zero(d2, s));
      }
    }
  }
  CHECK(worst(cross, s) < 1e-9);
  // The contact metric is not 1/2-Kenmotsu, so the defect is genuinely nonzero.
  CHECK(nonzero > 0.1);
}

TEST_CASE("isometry fails for a degenerate Poisson anchor in R^3") {
  auto c = xyz();
  Multivector pi(c, 2);
  pi.set({0, 1}, Expr(1));
  MetricPackage p(JacobiData(pi, VectorField(c)), euclidean(c));
  // #dz = 0, so g(#dz, #dz) = 0 while g*(dz, dz) = 1.
  auto dz = OneForm::basis(c, 2);
  CHECK(worst_zero(p.sharp(dz), Samples(c, 5, 0)) == 0.0);
  CHECK(worst_equal(p.lc().cometric(dz, dz), Expr(1), Samples(c, 5, 0)) == 0.0);
}
