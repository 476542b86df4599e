#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jacobitk/calculus.hpp"
#include "jacobitk/manifold.hpp"
#include "support.hpp"

using namespace jacobitk;
using namespace test_support;

namespace {

ChartPtr r3() { return make_chart({"x", "y", "z"}); }

OneForm form1(const ChartPtr& c, std::vector<std::string> comps) {
  std::vector<Expr> e;
  for (const auto& s : comps) e.push_back(c->parse(s));
  return OneForm(c, e);
}

VectorField vec(const ChartPtr& c, std::vector<std::string> comps) {
  std::vector<Expr> e;
  for (const auto& s : comps) e.push_back(c->parse(s));
  return VectorField(c, e);
}

}  // namespace

TEST_CASE("chart validation") {
  CHECK_THROWS_AS(make_chart({}), GeometryError);
  CHECK_THROWS_AS(make_chart({"x", "x"}), GeometryError);
  CHECK_THROWS_AS(make_chart({"x", "2y"}), GeometryError);
  CHECK_THROWS_AS(make_chart({"exp"}), GeometryError);
  auto c = make_chart({"t", "x"}, {"t"});
  CHECK(c->dim() == 2);
  CHECK(c->index_of("x") == 1);
  CHECK(c->excluded().size() == 1);
}

TEST_CASE("alternating storage reads permuted indices with signs") {
  auto c = r3();
  Multivector p(c, 2);
  p.set({1, 0}, Expr(3));
  CHECK(p.get({0, 1}) == Expr(-3));
  CHECK(p.get({1, 0}) == Expr(3));
  CHECK(p.get({2, 2}).is_zero());
  CHECK_THROWS_AS(p.set({1, 1}, Expr(1)), GeometryError);
  Form w(c, 3);
  w.set({2, 0, 1}, Expr(5));  // even permutation of (0,1,2)
  CHECK(w.get({0, 1, 2}) == Expr(5));
  CHECK(w.get({1, 0, 2}) == Expr(-5));
  CHECK_THROWS_AS(Form(c, 4), GeometryError);
}

TEST_CASE("wedge examples") {
  auto c = r3();
  VectorField dx = VectorField::basis(c, 0);
  VectorField dy = VectorField::basis(c, 1);
  VectorField dz = VectorField::basis(c, 2);
  CHECK(wedge(dx, dx).is_zero());

  // d/dz ^ (d/dx ^ d/dy) evaluated on (dx, dy, dz) is +1.
  Multivector t = wedge(dz, wedge(dx, dy));
  std::vector<OneForm> args = {OneForm::basis(c, 0), OneForm::basis(c, 1), OneForm::basis(c, 2)};
  CHECK(evaluate_multivector(t, args) == Expr(1));

  // Shuffle convention: (xi ^ pi)(a,b,g) = a(xi)pi(b,g) - b(xi)pi(a,g) + g(xi)pi(a,b).
  Samples s(c, 10, 3);
  RandomInputs rnd(c, 3);
  VectorField xi = rnd.vector_field();
  Multivector pi = rnd.bivector();
  OneForm a = rnd.one_form();
  OneForm b = rnd.one_form();
  OneForm g = rnd.one_form();
  std::vector<OneForm> abg = {a, b, g};
  Expr lhs = evaluate_multivector(wedge(xi, pi), abg);
  Expr rhs = pair(a, xi) * bivector_pair(pi, b, g) - pair(b, xi) * bivector_pair(pi, a, g) +
             pair(g, xi) * bivector_pair(pi, a, b);
  CHECK(worst_equal(lhs, rhs, s) < 1e-9);

  // d(eta) ^ eta for eta = dz - y dx is dx^dy^dz (hand expansion).
  OneForm eta = form1(c, {"-y", "0", "1"});
  Form vol = wedge(exterior_d(eta), eta);
  CHECK(vol.get({0, 1, 2}) == Expr(1));
}

TEST_CASE("wedge is graded anticommutative") {
  auto c = make_chart({"a", "b", "c", "d"});
  Samples s(c, 20, 11);
  RandomInputs rnd(c, 11);
  for (int trial = 0; trial < 5; ++trial) {
    OneForm a = rnd.one_form();
    OneForm b = rnd.one_form();
    Form p(c, 2);
    for (std::size_t k = 0; k < p.size(); ++k) p.at(k) = rnd.polynomial();
    CHECK(worst_equal(wedge(a, b), -wedge(b, a), s) < 1e-12);
    CHECK(worst_equal(wedge(a, p), wedge(p, a), s) < 1e-12);
    VectorField x = rnd.vector_field();
    Multivector q = rnd.bivector();
    CHECK(worst_equal(wedge(x, q), wedge(q, x), s) < 1e-12);
  }
}

TEST_CASE("pairing and evaluation") {
  auto c = r3();
  OneForm eta = form1(c, {"-y", "0", "1"});
  CHECK(pair(eta, VectorField::basis(c, 2)) == Expr(1));
  CHECK(pair(OneForm::basis(c, 0), VectorField::basis(c, 1)).is_zero());

  Form deta = exterior_d(eta);
  RandomInputs rnd(c, 5);
  for (int k = 0; k < 5; ++k) {
    std::vector<VectorField> args = {VectorField::basis(c, 2), rnd.vector_field()};
    CHECK(simplify(evaluate_form(deta, args)).is_zero());
  }
}

TEST_CASE("interior product") {
  auto c = r3();
  Form w(c, 2);
  w.set({0, 1}, Expr(1));
  CHECK(interior(VectorField::basis(c, 2), w).is_zero());
  Form iw = interior(VectorField::basis(c, 0), w);
  CHECK(OneForm(iw)[1] == Expr(1));
  CHECK(OneForm(iw)[0].is_zero());
  CHECK_THROWS_AS(interior(VectorField::basis(c, 0), Form(c, 0)), GeometryError);

  // lcs pair: omega = e^{-x}(dx^dy + dz^dw), xi = e^x d/dy, so i_xi omega = -dx.
  auto c4 = make_chart({"x", "y", "z", "w"});
  Form om(c4, 2);
  om.set({0, 1}, c4->parse("exp(-x)"));
  om.set({2, 3}, c4->parse("exp(-x)"));
  VectorField xi = vec(c4, {"0", "exp(x)", "0", "0"});
  Samples s(c4, 20, 0);
  CHECK(worst_equal(interior(xi, om), Form(-OneForm::basis(c4, 0)), s) < 1e-12);
}

TEST_CASE("matrix inverse") {
  auto id = ExprMatrix::identity(3);
  auto inv = sym_inverse(id);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(inv(i, j) == Expr(i == j ? 1 : 0));
  }

  auto c = make_chart({"t", "x"});
  ExprMatrix d(2);
  d(0, 0) = Expr(1);
  d(1, 1) = c->parse("exp(t)");
  auto di = sym_inverse(d);
  Samples s(c, 20, 1);
  CHECK(worst_equal(di(1, 1), c->parse("exp(-t)"), s) < 1e-12);
  CHECK(di(0, 1).is_zero());
  CHECK(di(0, 0) == Expr(1));

  ExprMatrix sing(2);
  sing(0, 0) = c->parse("x");
  sing(0, 1) = c->parse("x");
  sing(1, 0) = c->parse("t");
  sing(1, 1) = c->parse("t");
  CHECK_THROWS_AS(sym_inverse(sing), GeometryError);
}

TEST_CASE("flat map of the standard contact form inverts to the hand solution") {
  auto c = r3();
  OneForm eta = form1(c, {"-y", "0", "1"});
  Form deta = exterior_d(eta);
  // flat(X)_j = -deta(X, d_j) + eta(X) eta_j, matrix B(i,j) acting as X^i B(i,j).
  ExprMatrix b(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) b(i, j) = -deta.get({i, j}) + eta[i] * eta[j];
  }
  ExprMatrix bi = sym_inverse(b);
  auto sharp = [&](int i) {
    VectorField v(c);
    for (int k = 0; k < 3; ++k) v[k] = bi(i, k);
    return v;
  };
  Samples s(c, 20, 2);
  CHECK(worst_equal(sharp(0), vec(c, {"0", "1", "0"}), s) < 1e-12);
  CHECK(worst_equal(sharp(1), vec(c, {"-1", "0", "-y"}), s) < 1e-12);
  CHECK(worst_equal(sharp(2), vec(c, {"0", "y", "1"}), s) < 1e-12);
}

TEST_CASE("inverse times matrix is the identity at sample points") {
  auto c = make_chart({"u", "v", "w"});
  RandomInputs rnd(c, 21);
  Samples s(c, 20, 21);
  for (int trial = 0; trial < 5; ++trial) {
    ExprMatrix a(3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a(i, j) = rnd.polynomial() + Expr(i == j ? 6 : 0);
    }
    ExprMatrix ai = sym_inverse(a);
    Comparison cmp;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Expr sum;
        for (int k = 0; k < 3; ++k) sum += a(i, k) * ai(k, j);
        cmp.equal(sum, Expr(i == j ? 1 : 0));
      }
    }
    CHECK(worst(cmp, s) < 1e-9);
  }
}

TEST_CASE("metric and endomorphism fields") {
  auto c = r3();
  ExprMatrix g = ExprMatrix::identity(3);
  g(0, 1) = c->parse("x");
  CHECK_THROWS_AS(MetricField(c, g), GeometryError);
  g(1, 0) = c->parse("x");
  MetricField m(c, g);
  CHECK(simplify(m(VectorField::basis(c, 0), VectorField::basis(c, 1)) - c->parse("x")).is_zero());

  ExprMatrix a(3);
  a(1, 0) = Expr(1);  // A d/dx = d/dy
  EndoField e(c, a);
  VectorField r = e.apply(VectorField::basis(c, 0));
  CHECK(r[1] == Expr(1));
  OneForm pb = e.pullback(OneForm::basis(c, 1));
  CHECK(pb[0] == Expr(1));
}

TEST_CASE("chart mismatch is reported") {
  auto a = r3();
  auto b = make_chart({"x", "y", "w"});
  CHECK_THROWS_AS(pair(OneForm::basis(a, 0), VectorField::basis(b, 0)), GeometryError);
  auto same = r3();
  CHECK_NOTHROW(pair(OneForm::basis(a, 0), VectorField::basis(same, 0)));
}
