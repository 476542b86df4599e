#include "jacobitk/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>
#include <thread>

namespace jacobitk {

namespace {

using Parts = std::vector<std::pair<std::string, Comparison>>;

const Expr& half() {
  static const Expr h(Number::rational(1, 2));
  return h;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// FNV-1a of the check name mixed with the run seed, so every check draws its
// own reproducible random inputs.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h ^ (seed * 0x9e3779b97f4a7c15ULL);
}

// Nonvanishing as an identity: |v * (1/v) - 1| is 0 up to rounding where v != 0
// and infinite where v = 0.
std::vector<double> nonvanishing_per_point(const Expr& e, const Samples& s) {
  std::vector<double> out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    double v;
    try {
      v = eval(e, s[k], s.chart()->names());
    } catch (const EvalError&) {
      v = 0.0;
    }
    out.push_back(std::isfinite(v) && v != 0.0 ? std::abs(v * (1.0 / v) - 1.0) : kInf);
  }
  return out;
}

void add_part(CheckResult& r, const std::string& label, const std::vector<double>& pp) {
  if (r.per_point.empty()) r.per_point.assign(pp.size(), 0.0);
  for (std::size_t k = 0; k < pp.size(); ++k) r.per_point[k] = std::max(r.per_point[k], pp[k]);
  r.parts.push_back({label, max_of(pp)});
  r.residual = max_of(r.per_point);
  r.verdict = verdict_for(r.residual, r.tol);
}

bool part_vanishes(const CheckResult& r, const std::string& label) {
  for (const auto& p : r.parts) {
    if (p.name == label) return p.residual < r.tol;
  }
  throw std::logic_error("no part named " + label);
}

void precondition(CheckResult& r, bool ok, const std::string& why) {
  if (ok) return;
  r.verdict = Verdict::preconditions_failed;
  r.note = why;
}

// A theorem identity: with its hypotheses verified, a nonzero residual can only
// mean an implementation bug.
void theorem(CheckResult& r, bool hypotheses, const std::string& why) {
  if (!hypotheses) {
    precondition(r, false, why);
    return;
  }
  if (r.verdict != Verdict::pass) {
    r.verdict = Verdict::theorem_violated;
    r.note = "identity fails although its hypotheses hold";
  }
}

// Conditions a theorem declares equivalent must vanish together.
void joint(CheckResult& r, const std::vector<bool>& vanish) {
  bool all = std::all_of(vanish.begin(), vanish.end(), [](bool b) { return b; });
  bool none = std::none_of(vanish.begin(), vanish.end(), [](bool b) { return b; });
  if (all) {
    r.verdict = Verdict::pass;
  } else if (none) {
    r.verdict = Verdict::fail;
  } else {
    r.verdict = Verdict::theorem_violated;
    r.note = "equivalent conditions do not vanish together";
  }
}

std::vector<std::array<int, 2>> all_pairs(int n) {
  std::vector<std::array<int, 2>> r;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) r.push_back({a, b});
  }
  return r;
}

class Context {
 public:
  Context(const Structure& st, const RunOptions& o)
      : s(st), opt(o), samples(st.chart, o.points, o.seed), dx(covector_basis(st.chart)),
        d(vector_basis(st.chart)) {}

  const Structure& s;
  const RunOptions& opt;
  Samples samples;
  std::vector<OneForm> dx;
  std::vector<VectorField> d;

  int n() const { return s.chart->dim(); }
  RandomInputs inputs(std::string_view name) const {
    return RandomInputs(s.chart, mix_seed(opt.seed, name));
  }

  CheckResult result(std::string name, std::string anchor, const Parts& parts) const {
    return measure_parts(std::move(name), std::move(anchor), parts, samples, opt.tol);
  }

  const JacobiData& jacobi() const { return *s.jacobi; }

  const CheckResult& jacobi_check() {
    if (!jacobi_check_) {
      JacobiData copy = *s.jacobi;
      jacobi_check_ = is_jacobi(copy, samples, opt.tol);
      jacobi_verified_ = std::make_unique<JacobiData>(copy);
    }
    return *jacobi_check_;
  }
  bool jacobi_ok() { return jacobi_check().verdict == Verdict::pass; }

  const std::shared_ptr<const MetricPackage>& pkg() {
    if (!pkg_) pkg_ = std::make_shared<const MetricPackage>(*s.jacobi, *s.g);
    return pkg_;
  }
  const LeviCivita& lc() { return pkg()->lc(); }
  const ContravariantD& D() {
    if (!D_) D_ = std::make_unique<ContravariantD>(pkg());
    return *D_;
  }

  // Anchor defect of the bracket built with lambda, on coordinate covectors;
  // the defect is tensorial, so this decides the pre-Lie property.
  Comparison anchor_defect_basis(const JacobiData& j) {
    Comparison c;
    for (int a = 0; a < n(); ++a) {
      for (int b = a + 1; b < n(); ++b) c.zero(anchor_defect(j, dx[a], dx[b], true));
    }
    return c;
  }

  bool pre_lie_metric() {
    if (!pre_lie_metric_) {
      auto pp = anchor_defect_basis(pkg()->jacobi()).per_point(samples);
      pre_lie_metric_ = max_of(pp) < opt.tol;
    }
    return *pre_lie_metric_;
  }

  const CheckResult& isometry() {
    if (!isometry_) {
      Comparison c;
      std::vector<VectorField> sh;
      for (int a = 0; a < n(); ++a) sh.push_back(pkg()->sharp(dx[a]));
      for (int a = 0; a < n(); ++a) {
        for (int b = a; b < n(); ++b) c.equal(lc().metric(sh[a], sh[b]), lc().g_inv()(a, b));
      }
      isometry_ = result("connection.isometry", "g(#a, #b) = g*(a, b)", {{"isometry", c}});
    }
    return *isometry_;
  }
  bool isometry_ok() { return isometry().verdict == Verdict::pass; }

  const CheckResult& lcs_check() {
    if (!lcs_check_) {
      const LcsStructure& l = *s.lcs;
      Comparison dw;
      dw.zero(exterior_d(l.omega) + wedge(Form(l.theta), l.omega));
      Comparison dt;
      dt.zero(exterior_d(l.theta));
      lcs_check_ = result("lcs.is-lcs", "d omega + theta ^ omega = 0, d theta = 0",
                          {{"d-omega", dw}, {"d-theta", dt}});
    }
    return *lcs_check_;
  }
  bool lcs_ok() { return lcs_check().verdict == Verdict::pass; }

  const CheckResult& acm_check() {
    if (!acm_check_) {
      acm_check_ = result("kenmotsu.structure",
                          "phi^2 = -I + eta(x)xi, eta(xi) = 1, g(phi X, phi Y) = g(X,Y) - eta(X)eta(Y)",
                          almost_contact_identities(*s.acm));
    }
    return *acm_check_;
  }
  bool acm_ok() { return acm_check().verdict == Verdict::pass; }

  const std::vector<EndoField>& nabla_phi() {
    if (nabla_phi_.empty()) nabla_phi_ = lc().nabla_endo(s.acm->phi);
    return nabla_phi_;
  }

 private:
  std::optional<CheckResult> jacobi_check_;
  std::unique_ptr<JacobiData> jacobi_verified_;
  std::shared_ptr<const MetricPackage> pkg_;
  std::unique_ptr<ContravariantD> D_;
  std::optional<bool> pre_lie_metric_;
  std::optional<CheckResult> isometry_;
  std::optional<CheckResult> lcs_check_;
  std::optional<CheckResult> acm_check_;
  std::vector<EndoField> nabla_phi_;
};

// ---------------------------------------------------------------------------
// jacobi

void suite_jacobi(Context& c, Report& r) { r.checks.push_back(c.jacobi_check()); }

// ---------------------------------------------------------------------------
// algebroid

void suite_algebroid(Context& c, Report& r) {
  const JacobiData& j = c.jacobi();
  const Multivector& pi = j.pi();
  const ChartPtr& chart = c.s.chart;
  Multivector S = schouten(pi, pi);

  {
    RandomInputs rnd = c.inputs("algebroid.poisson-pre-alg");
    Comparison cmp;
    for (int t = 0; t < kRandomTrials; ++t) {
      OneForm a = rnd.one_form();
      OneForm b = rnd.one_form();
      OneForm g = rnd.one_form();
      VectorField defect = sharp_pi(pi, koszul(pi, a, b)) - lie_bracket(sharp_pi(pi, a), sharp_pi(pi, b));
      std::vector<OneForm> abg = {a, b, g};
      cmp.equal(pair(g, defect), half() * evaluate_multivector(S, abg));
    }
    CheckResult res = c.result("algebroid.poisson-pre-alg",
                               "g(#_pi [a,b]_pi - [#_pi a, #_pi b]) = 1/2 [pi,pi](a,b,g)",
                               {{"identity", cmp}});
    theorem(res, true, "");
    r.checks.push_back(res);
  }
  {
    RandomInputs rnd = c.inputs("algebroid.poisson-alg");
    Comparison cmp;
    for (int t = 0; t < kNestedTrials; ++t) {
      OneForm a = differential(chart, rnd.polynomial());
      OneForm b = differential(chart, rnd.polynomial());
      OneForm g = differential(chart, rnd.polynomial());
      OneForm jac = koszul(pi, a, koszul(pi, b, g));
      jac += koszul(pi, b, koszul(pi, g, a));
      jac += koszul(pi, g, koszul(pi, a, b));
      std::vector<OneForm> abg = {a, b, g};
      OneForm rhs = -half() * differential(chart, evaluate_multivector(S, abg));
      cmp.equal(jac, rhs);
    }
    CheckResult res = c.result("algebroid.poisson-alg",
                               "cyclic [df,[dg,dh]_pi]_pi = -1/2 d([pi,pi](df,dg,dh))",
                               {{"identity", cmp}});
    theorem(res, true, "");
    r.checks.push_back(res);
  }
  {
    RandomInputs rnd = c.inputs("algebroid.leibniz");
    Comparison cmp;
    for (int t = 0; t < kRandomTrials; ++t) {
      OneForm a = rnd.one_form();
      OneForm b = rnd.one_form();
      Expr phi = rnd.polynomial();
      OneForm lhs = lambda_bracket(j, a, phi * b);
      OneForm rhs = phi * lambda_bracket(j, a, b) + directional(sharp_pi_xi(j, a), phi) * b;
      cmp.equal(lhs, rhs);
      cmp.equal(lambda_bracket(j, a, b), -lambda_bracket(j, b, a));
    }
    CheckResult res = c.result("algebroid.leibniz",
                               "[a, f b]^lambda = f [a,b]^lambda + (#_{pi,xi} a)(f) b, antisymmetry",
                               {{"identity", cmp}});
    theorem(res, true, "");
    r.checks.push_back(res);
  }
  {
    RandomInputs rnd = c.inputs("algebroid.torsion-theorem");
    Parts parts;
    std::vector<std::pair<std::string, OneForm>> lambdas = {{"lambda-zero", OneForm(chart)}};
    if (c.s.lambda_choice != "zero") lambdas.emplace_back("lambda-" + c.s.lambda_choice, j.require_lambda());
    lambdas.emplace_back("lambda-random", rnd.one_form());
    for (const auto& [label, lambda] : lambdas) {
      JacobiData jl = j.with_lambda(lambda);
      Comparison cmp;
      for (int t = 0; t < kRandomTrials; ++t) {
        OneForm a = rnd.one_form();
        OneForm b = rnd.one_form();
        cmp.equal(anchor_defect(jl, a, b, true), anchor_defect_prediction(jl, a, b));
      }
      parts.emplace_back(label, cmp);
    }
    CheckResult res = c.result("algebroid.torsion-theorem",
                               "#_{pi,xi}[a,b]^lambda - [#a,#b] = pi(a,b)(xi - #_{pi,xi} lambda)", parts);
    theorem(res, c.jacobi_ok(), "(pi, xi) is not a Jacobi pair");
    r.checks.push_back(res);
  }
  {
    RandomInputs rnd = c.inputs("algebroid.jacobiator");
    Comparison cmp;
    for (int t = 0; t < kNestedTrials; ++t) {
      OneForm a = rnd.one_form();
      OneForm b = rnd.one_form();
      OneForm g = rnd.one_form();
      cmp.zero(jacobiator(j, a, b, g));
    }
    r.checks.push_back(c.result("algebroid.jacobiator", "cyclic [a,[b,g]^lambda]^lambda = 0",
                                {{"identity", cmp}}));
  }
  {
    CheckResult res;
    res.name = "algebroid.anchor-iso";
    res.anchor = "det #_{pi,xi} != 0";
    res.tol = c.opt.tol;
    add_part(res, "determinant", nonvanishing_per_point(determinant(sharp_pi_xi_matrix(j)), c.samples));
    r.checks.push_back(res);
  }
}

// ---------------------------------------------------------------------------
// contact

void suite_contact(Context& c, Report& r) {
  const Structure& s = c.s;
  {
    CheckResult res;
    res.name = "contact.volume";
    res.anchor = "eta ^ (d eta)^n != 0";
    res.tol = c.opt.tol;
    add_part(res, "volume", nonvanishing_per_point(contact_volume(*s.eta), c.samples));
    r.checks.push_back(res);
  }
  if (!s.contact) {
    for (const char* name : {"contact.reeb", "contact.eta-alg"}) {
      CheckResult res;
      res.name = name;
      res.tol = c.opt.tol;
      res.per_point.assign(c.samples.size(), 0.0);
      precondition(res, false, s.contact_error);
      r.checks.push_back(res);
    }
    return;
  }
  const ContactStructure& cs = *s.contact;
  int n = c.n();
  {
    Comparison ix;
    ix.zero(interior(cs.reeb, cs.d_eta));
    Comparison ex;
    ex.equal(pair(cs.eta, cs.reeb), Expr(1));
    CheckResult res = c.result("contact.reeb", "i_xi d eta = 0, eta(xi) = 1",
                               {{"i-xi-d-eta", ix}, {"eta-xi", ex}});
    theorem(res, true, "");
    r.checks.push_back(res);
  }
  {
    JacobiData j = cs.jacobi();
    ExprMatrix m = sharp_pi_xi_matrix(j);
    Comparison sharp;
    for (int row = 0; row < n; ++row) {
      for (int i = 0; i < n; ++i) sharp.equal(m(row, i), cs.sharp(i, row));
    }
    Comparison defect = c.anchor_defect_basis(j);
    RandomInputs rnd = c.inputs("contact.eta-alg");
    Comparison jac;
    for (int t = 0; t < kNestedTrials; ++t) {
      OneForm a = rnd.one_form();
      OneForm b = rnd.one_form();
      OneForm g = rnd.one_form();
      jac.zero(jacobiator(j, a, b, g));
    }
    CheckResult res = c.result("contact.eta-alg",
                               "#_{pi,xi} = #_eta, bracket with lambda = eta is a Lie algebroid",
                               {{"sharp", sharp}, {"anchor-defect", defect}, {"jacobiator", jac}});
    theorem(res, true, "");
    r.checks.push_back(res);
  }
  if (s.acm) {
    Parts parts = almost_contact_identities(*s.acm);
    Comparison cm;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        Expr gphi;
        for (int k = 0; k < n; ++k) gphi += (*s.g)(a, k) * (*s.phi)(k, b);
        cm.equal(gphi, cs.d_eta.get({a, b}));
      }
    }
    parts.emplace_back("g-phi-d-eta", cm);
    r.checks.push_back(c.result("contact.metric", "almost contact metric with g(X, phi Y) = d eta(X, Y)", parts));
  }
}

// ---------------------------------------------------------------------------
// lcs

void suite_lcs(Context& c, Report& r) {
  const LcsStructure& l = *c.s.lcs;
  const ChartPtr& chart = c.s.chart;
  int n = c.n();
  JacobiData j = l.jacobi();
  Multivector S = schouten(j.pi(), j.pi());
  r.checks.push_back(c.lcs_check());

  std::vector<VectorField> X;
  for (int a = 0; a < n; ++a) X.push_back(sharp_pi(j.pi(), c.dx[a]));
  Form lcs_form = exterior_d(l.omega) + wedge(Form(l.theta), l.omega);
  Multivector jac_form = half() * S - wedge(Multivector(j.xi()), j.pi());
  {
    Comparison cmp;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (int e = b + 1; e < n; ++e) {
          std::vector<VectorField> xs = {X[a], X[b], X[e]};
          std::vector<OneForm> as = {c.dx[a], c.dx[b], c.dx[e]};
          cmp.equal(evaluate_form(lcs_form, xs), evaluate_multivector(jac_form, as));
        }
      }
    }
    CheckResult res = c.result("lcs.lemma-1",
                               "(d omega + theta ^ omega)(#a,#b,#g) = (1/2[pi,pi] - xi ^ pi)(a,b,g)",
                               {{"identity", cmp}});
    theorem(res, true, "");
    r.checks.push_back(res);
  }
  {
    Form lw = lie_derivative(j.xi(), l.omega);
    Multivector lp = lie_derivative(j.xi(), j.pi());
    Comparison cmp;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        std::vector<VectorField> xs = {X[a], X[b]};
        std::vector<OneForm> as = {c.dx[a], c.dx[b]};
        cmp.equal(evaluate_form(lw, xs), -evaluate_multivector(lp, as));
      }
    }
    CheckResult res = c.result("lcs.lemma-2", "L_xi omega(#a,#b) = -L_xi pi(a,b)", {{"identity", cmp}});
    theorem(res, true, "");
    r.checks.push_back(res);
  }
  {
    Comparison lcs_part;
    lcs_part.zero(lcs_form);
    Comparison sch;
    sch.zero(jacobi_schouten_defect(j.pi(), j.xi()));
    Comparison dth;
    dth.zero(exterior_d(l.theta));
    Comparison lie;
    lie.zero(jacobi_lie_defect(j.pi(), j.xi()));
    CheckResult res = c.result(
        "lcs.equivalence", "(omega, theta) lcs iff (pi, xi) Jacobi",
        {{"d-omega", lcs_part}, {"schouten", sch}, {"d-theta", dth}, {"lie-xi-pi", lie}});
    bool A = part_vanishes(res, "d-omega");
    bool B = part_vanishes(res, "schouten");
    bool C = part_vanishes(res, "d-theta");
    bool D = part_vanishes(res, "lie-xi-pi");
    if (A != B || (A && C != D)) {
      res.verdict = Verdict::theorem_violated;
      res.note = "the four residuals break the equivalence pattern";
    }
    r.checks.push_back(res);
  }
  {
    Comparison cmp;
    std::vector<VectorField> sh;
    for (int a = 0; a < n; ++a) sh.push_back(sharp_pi_xi(j, c.dx[a]));
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        std::vector<VectorField> xs = {sh[a], sh[b]};
        cmp.equal(evaluate_form(l.omega, xs), j.pi().get({a, b}));
      }
    }
    CheckResult res = c.result("lcs.omega-pi-xi", "omega(#_{pi,xi} a, #_{pi,xi} b) = pi(a, b)",
                               {{"identity", cmp}});
    theorem(res, true, "");
    r.checks.push_back(res);
  }
  std::vector<double> det_pp = nonvanishing_per_point(determinant(sharp_pi_xi_matrix(j)), c.samples);
  {
    CheckResult res;
    res.name = "lcs.injective";
    res.anchor = "det #_{pi,xi} != 0";
    res.tol = c.opt.tol;
    add_part(res, "determinant", det_pp);
    theorem(res, true, "");
    r.checks.push_back(res);
  }
  {
    Comparison st;
    st.equal(sharp_pi_xi(j, l.theta), l.xi);
    Comparison defect = c.anchor_defect_basis(j);
    RandomInputs rnd = c.inputs("lcs.omega-theta-alg");
    Comparison jac;
    for (int t = 0; t < kNestedTrials; ++t) {
      OneForm a = rnd.one_form();
      OneForm b = rnd.one_form();
      OneForm g = rnd.one_form();
      jac.zero(jacobiator(j, a, b, g));
    }
    CheckResult res = c.result("lcs.omega-theta-alg",
                               "bracket with lambda = theta is a Lie algebroid with bijective anchor",
                               {{"sharp-theta", st}, {"anchor-defect", defect}, {"jacobiator", jac}});
    add_part(res, "injective", det_pp);
    theorem(res, c.lcs_ok(), "(omega, theta) is not lcs");
    r.checks.push_back(res);
  }
  (void)chart;
}

// ---------------------------------------------------------------------------
// connection

void suite_connection(Context& c, Report& r) {
  const Structure& s = c.s;
  const auto& pkg = *c.pkg();
  const LeviCivita& lc = c.lc();
  const ContravariantD& D = c.D();
  int n = c.n();
  {
    Comparison cmp;
    for (const auto& e : lc.nabla_metric()) cmp.zero(e);
    r.checks.push_back(c.result("connection.nabla-metric", "nabla g = 0", {{"identity", cmp}}));
  }
  {
    RandomInputs rnd = c.inputs("connection.torsion-free");
    Comparison cmp;
    for (const auto& [a, b] : all_pairs(n)) {
      cmp.zero(lc.nabla(c.d[a], c.d[b]) - lc.nabla(c.d[b], c.d[a]));
    }
    for (int t = 0; t < kConnectionTrials; ++t) {
      VectorField x = rnd.vector_field();
      VectorField y = rnd.vector_field();
      cmp.zero(lc.nabla(x, y) - lc.nabla(y, x) - lie_bracket(x, y));
    }
    r.checks.push_back(c.result("connection.torsion-free", "nabla_X Y - nabla_Y X = [X, Y]", {{"identity", cmp}}));
  }
  RandomInputs rnd = c.inputs("connection.D");
  std::vector<std::array<OneForm, 3>> triples;
  for (int t = 0; t < kConnectionTrials; ++t) triples.push_back({rnd.one_form(), rnd.one_form(), rnd.one_form()});
  {
    Comparison basis;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int e = b; e < n; ++e) {
          Expr lhs = directional(pkg.sharp(c.dx[a]), lc.g_inv()(b, e));
          Expr rhs = lc.cometric(D.basis(a, b), c.dx[e]) + lc.cometric(c.dx[b], D.basis(a, e));
          basis.equal(lhs, rhs);
        }
      }
    }
    Comparison random;
    for (const auto& [a, b, g] : triples) {
      random.equal(directional(pkg.sharp(a), lc.cometric(b, g)),
                   lc.cometric(D(a, b), g) + lc.cometric(b, D(a, g)));
    }
    r.checks.push_back(c.result("connection.D-metric", "#a.g*(b,g) = g*(D_a b, g) + g*(b, D_a g)",
                                {{"basis", basis}, {"random", random}}));
  }
  {
    Comparison basis;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        basis.equal(D.basis(a, b) - D.basis(b, a), lambda_bracket(pkg.jacobi(), c.dx[a], c.dx[b]));
      }
    }
    Comparison random;
    for (const auto& [a, b, g] : triples) {
      (void)g;
      random.equal(D(a, b) - D(b, a), lambda_bracket(pkg.jacobi(), a, b));
    }
    r.checks.push_back(c.result("connection.D-symmetric", "D_a b - D_b a = [a, b]^g",
                                {{"basis", basis}, {"random", random}}));
  }
  {
    Comparison cmp;
    for (const auto& [a, b, g] : triples) {
      (void)g;
      cmp.equal(D.direct(a, b), D(a, b));
    }
    r.checks.push_back(c.result("connection.D-routes", "direct solve = basis table assembly", {{"identity", cmp}}));
  }
  r.checks.push_back(c.isometry());
  {
    Parts parts;
    Comparison jc;
    for (int a = 0; a < n; ++a) {
      jc.equal(pkg.J().apply(c.d[a]), lc.sharp(pkg.J_star(lc.flat(c.d[a]))));
    }
    parts.emplace_back("J-J-star", jc);
    std::string anchor = "J = #_g o J* o flat_g";
    if (s.kind == Kind::contact || s.kind == Kind::almost_contact_metric) {
      Comparison le;
      le.equal(pkg.lambda(), *s.eta);
      parts.emplace_back("lambda-eta", le);
      anchor += ", lambda = eta";
    } else if (s.lcs) {
      Comparison ls;
      ls.equal(pkg.sharp(pkg.lambda()), pkg.xi());
      parts.emplace_back("sharp-lambda-xi", ls);
      anchor += ", #_{pi,xi} lambda = xi";
    }
    CheckResult res = c.result("connection.lambda", anchor, parts);
    // For lcs structures #_{pi,xi} lambda = xi is derived from the association of g.
    if (s.lcs) precondition(res, c.isometry_ok(), "g is not associated to (omega, theta)");
    r.checks.push_back(res);
  }
  {
    Comparison basis;
    std::vector<VectorField> sh;
    for (int a = 0; a < n; ++a) sh.push_back(pkg.sharp(c.dx[a]));
    for (const auto& [a, b] : all_pairs(n)) basis.equal(pkg.sharp(D.basis(a, b)), lc.nabla(sh[a], sh[b]));
    Comparison random;
    for (const auto& [a, b, g] : triples) {
      (void)g;
      random.equal(pkg.sharp(D(a, b)), lc.nabla(pkg.sharp(a), pkg.sharp(b)));
    }
    CheckResult res = c.result("connection.prop-LC", "#_{pi,xi}(D_a b) = nabla_{#a} #b",
                               {{"basis", basis}, {"random", random}});
    bool pre_lie = c.pre_lie_metric();
    bool iso = c.isometry_ok();
    std::string why;
    if (!pre_lie) why = "anchor is not a morphism for the metric lambda";
    if (!iso) why += std::string(why.empty() ? "" : "; ") + "#_{pi,xi} is not an isometry";
    theorem(res, pre_lie && iso, why);
    r.checks.push_back(res);
  }
  if (s.lcs) {
    std::vector<Form> nw = lc.nabla_form(s.lcs->omega);
    std::vector<VectorField> sh;
    for (int a = 0; a < n; ++a) sh.push_back(pkg.sharp(c.dx[a]));
    Comparison cmp;
    for (int a = 0; a < n; ++a) {
      Form na = contract_direction(nw, sh[a]);
      for (int b = 0; b < n; ++b) {
        for (int e = b + 1; e < n; ++e) {
          std::vector<VectorField> xs = {sh[b], sh[e]};
          cmp.equal(D.D_pi(c.dx[a], c.dx[b], c.dx[e]), evaluate_form(na, xs));
        }
      }
    }
    CheckResult res = c.result("connection.levi-civita-omega", "D pi(a,b,g) = nabla omega(#a,#b,#g)",
                               {{"identity", cmp}});
    bool ok = c.lcs_ok() && c.isometry_ok();
    theorem(res, ok, !c.lcs_ok() ? "(omega, theta) is not lcs" : "g is not associated to (omega, theta)");
    r.checks.push_back(res);
  }
}

// ---------------------------------------------------------------------------
// compatibility

struct CompatibilityTables {
  Comparison defect;
  Comparison endo;
  Comparison cross;
};

CompatibilityTables compatibility_tables(Context& c) {
  const ContravariantD& D = c.D();
  const LeviCivita& lc = c.lc();
  int n = c.n();
  CompatibilityTables t;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      OneForm endo = D.compatibility_defect_endo(c.dx[a], c.dx[b]);
      t.endo.zero(endo);
      for (int e = 0; e < n; ++e) {
        Expr d2 = D.compatibility_defect(c.dx[a], c.dx[b], c.dx[e]);
        t.defect.zero(d2);
        t.cross.equal(d2, lc.cometric(endo, c.dx[e]));
      }
    }
  }
  return t;
}

void suite_compatibility(Context& c, Report& r) {
  CompatibilityTables t = compatibility_tables(c);
  CheckResult d2 = c.result("compatibility.defect",
                            "D pi(a,b,g) = 1/2(g(xi)pi(a,b) - b(xi)pi(a,g) - J*g(xi)g*(a,b) + J*b(xi)g*(a,g))",
                            {{"defect", t.defect}});
  CheckResult endo = c.result("compatibility.endomorphism-form",
                              "(D_a J*)b = 1/2(pi(a,b)flat xi - b(xi)J*a + g*(a,b)J* flat xi + J*b(xi)a)",
                              {{"defect", t.endo}});
  CheckResult cross = c.result("compatibility.cross-identity",
                               "defect(a,b,g) = g*(endomorphism defect(a,b), g)", {{"identity", t.cross}});
  theorem(cross, true, "");
  CheckResult jt = c.result("compatibility.joint", "both forms of the compatibility vanish together",
                            {{"defect", t.defect}, {"endomorphism-form", t.endo}});
  joint(jt, {d2.verdict == Verdict::pass, endo.verdict == Verdict::pass});
  r.checks.push_back(d2);
  r.checks.push_back(endo);
  r.checks.push_back(cross);
  r.checks.push_back(jt);
}

// ---------------------------------------------------------------------------
// kenmotsu

Comparison kenmotsu_table(Context& c, const Expr& a0) {
  const AlmostContactMetric& a = *c.s.acm;
  Comparison cmp;
  for (const auto& [x, y] : all_pairs(c.n())) {
    cmp.zero(kenmotsu_defect(a, c.lc(), c.nabla_phi(), a0, c.d[x], c.d[y]));
  }
  return cmp;
}

void suite_kenmotsu(Context& c, Report& r) {
  const AlmostContactMetric& acm = *c.s.acm;
  const auto& pkg = *c.pkg();
  const LeviCivita& lc = c.lc();
  int n = c.n();
  r.checks.push_back(c.acm_check());
  const std::string kanchor = "(nabla_X phi)Y = a0 (g(phi X, Y) xi - eta(Y) phi X)";
  Comparison half_table = kenmotsu_table(c, half());
  CheckResult kh = c.result("kenmotsu.defect-half", kanchor + ", a0 = 1/2", {{"defect", half_table}});
  r.checks.push_back(kh);
  r.checks.push_back(c.result("kenmotsu.defect-one", kanchor + ", a0 = 1", {{"defect", kenmotsu_table(c, Expr(1))}}));

  std::vector<VectorField> sh;
  for (int a = 0; a < n; ++a) sh.push_back(pkg.sharp(c.dx[a]));
  {
    Multivector api = almost_contact_pi(acm, lc);
    Comparison anti;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Expr pij;
        Expr pji;
        for (int k = 0; k < n; ++k) {
          pij += acm.phi(i, k) * lc.g_inv()(k, j);
          pji += acm.phi(j, k) * lc.g_inv()(k, i);
        }
        anti.equal(pij, -pji);
      }
    }
    Comparison same;
    same.equal(api, pkg.pi());
    Comparison f1;
    Comparison iso;
    Comparison jphi;
    for (int a = 0; a < n; ++a) {
      VectorField sg = lc.sharp(c.dx[a]);
      f1.equal(sh[a], -acm.phi.apply(sg) + pair(acm.eta, sg) * acm.xi);
      for (int b = a; b < n; ++b) iso.equal(lc.metric(sh[a], sh[b]), lc.g_inv()(a, b));
      jphi.equal(pkg.sharp(pkg.J_star(c.dx[a])), -acm.phi.apply(sh[a]));
    }
    CheckResult res = c.result("kenmotsu.pi-iso",
                               "pi(a,b) = g(#_g a, phi #_g b) is a bivector, #_{pi,xi} = -phi #_g + eta(#_g)xi "
                               "is an isometry and #_{pi,xi} J* = -phi #_{pi,xi}",
                               {{"antisymmetric", anti},
                                {"structure-pi", same},
                                {"sharp-formula", f1},
                                {"isometry", iso},
                                {"J-star-phi", jphi}});
    theorem(res, c.acm_ok(), "not an almost contact metric structure");
    r.checks.push_back(res);
  }
  bool pre = c.acm_ok() && c.pre_lie_metric();
  std::string why = !c.acm_ok() ? "not an almost contact metric structure"
                                : "anchor is not a morphism for the metric lambda";
  {
    const ContravariantD& D = c.D();
    Comparison cmp;
    for (const auto& [a, b] : all_pairs(n)) {
      VectorField lhs = pkg.sharp(D.compatibility_defect_endo(c.dx[a], c.dx[b]));
      VectorField ken = kenmotsu_defect(acm, lc, c.nabla_phi(), half(), sh[a], sh[b]);
      cmp.equal(lhs, -ken);
    }
    CheckResult res = c.result("kenmotsu.cross-identity",
                               "#_{pi,xi}(endomorphism defect(a,b)) = -(1/2-Kenmotsu defect)(#a, #b)",
                               {{"identity", cmp}});
    theorem(res, pre, why);
    r.checks.push_back(res);
  }
  {
    CompatibilityTables t = compatibility_tables(c);
    CheckResult res = c.result("kenmotsu.equivalence", "compatible iff 1/2-Kenmotsu",
                               {{"compatibility", t.defect}, {"kenmotsu-half", half_table}});
    if (pre) {
      joint(res, {part_vanishes(res, "compatibility"), part_vanishes(res, "kenmotsu-half")});
    } else {
      precondition(res, false, why);
    }
    r.checks.push_back(res);
  }
}

// ---------------------------------------------------------------------------
// lck

void suite_lck(Context& c, Report& r) {
  const Structure& s = c.s;
  const LcsStructure& l = *s.lcs;
  const auto& pkg = *c.pkg();
  const LeviCivita& lc = c.lc();
  const Expr& f = *s.f;
  int n = c.n();

  CheckResult herm;
  {
    Comparison wj;
    Comparison js;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        wj.equal(l.omega.get({a, b}), lc.metric(pkg.J().apply(c.d[a]), c.d[b]));
        if (b >= a) js.equal(lc.cometric(pkg.J_star(c.dx[a]), pkg.J_star(c.dx[b])), lc.g_inv()(a, b));
      }
    }
    herm = c.result("lck.hermitian", "omega(X, Y) = g(J X, Y), g*(J* a, J* b) = g*(a, b)",
                    {{"omega-J", wj}, {"J-star-isometry", js}});
    r.checks.push_back(herm);
  }
  CheckResult assoc = c.isometry();
  assoc.name = "lck.associated";
  r.checks.push_back(assoc);

  std::vector<Form> nw = lc.nabla_form(l.omega);
  Comparison lam;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int e = b + 1; e < n; ++e) lam.zero(lambda_f(lc, l.omega, nw, f, c.d[a], c.d[b], c.d[e]));
    }
  }
  Expr ef = c.s.chart->parse("0");
  ef = exp(f);
  LeviCivita lcf(lc.g().scaled(ef));
  Form wf = ef * l.omega;
  std::vector<Form> nwf = lcf.nabla_form(wf);
  Comparison par;
  for (const auto& t : nwf) par.zero(t);

  CheckResult lf = c.result("lck.lambda-f", "Lambda_f = 0", {{"Lambda_f", lam}});
  CheckResult cp = c.result("lck.conformal-parallel", "nabla^f (e^f omega) = 0 for the metric e^f g",
                            {{"nabla-f-omega-f", par}});
  {
    Comparison conn;
    for (const auto& [a, b] : all_pairs(n)) conn.equal(lcf.nabla(c.d[a], c.d[b]), conformal_nabla(lc, f, c.d[a], c.d[b]));
    Comparison lamf;
    for (int a = 0; a < n; ++a) {
      Form na = contract_direction(nwf, c.d[a]);
      for (int b = 0; b < n; ++b) {
        for (int e = b + 1; e < n; ++e) {
          std::vector<VectorField> yz = {c.d[b], c.d[e]};
          lamf.equal(evaluate_form(na, yz), ef * lambda_f(lc, l.omega, nw, f, c.d[a], c.d[b], c.d[e]));
        }
      }
    }
    CheckResult res = c.result("lck.conformal-formula",
                               "nabla^f_X Y = nabla_X Y + 1/2(X(f)Y + Y(f)X - g(X,Y) grad f), "
                               "nabla^f(e^f omega) = e^f Lambda_f",
                               {{"connection", conn}, {"Lambda", lamf}});
    theorem(res, true, "");
    r.checks.push_back(lf);
    r.checks.push_back(cp);
    r.checks.push_back(res);
  }
  {
    CompatibilityTables t = compatibility_tables(c);
    Comparison exact;
    exact.equal(l.theta, differential(c.s.chart, f));
    CheckResult res = c.result("lck.compatibility", "compatible iff e^f omega is parallel for e^f g",
                               {{"compatibility", t.defect}, {"Lambda_f", lam}, {"nabla-f-omega-f", par}});
    CheckResult ex = c.result("theta-df", "", {{"theta-df", exact}});
    bool pre = herm.verdict == Verdict::pass && c.isometry_ok() && c.lcs_ok() && ex.verdict == Verdict::pass;
    if (pre) {
      joint(res, {part_vanishes(res, "compatibility"), part_vanishes(res, "Lambda_f"),
                  part_vanishes(res, "nabla-f-omega-f")});
    } else {
      std::string why;
      auto add = [&](bool ok, const char* w) {
        if (!ok) why += std::string(why.empty() ? "" : "; ") + w;
      };
      add(herm.verdict == Verdict::pass, "g is not hermitian for omega");
      add(c.isometry_ok(), "#_{pi,xi} is not an isometry");
      add(c.lcs_ok(), "(omega, theta) is not lcs");
      add(ex.verdict == Verdict::pass, "theta != df");
      precondition(res, false, why);
    }
    r.checks.push_back(res);
  }
  {
    Comparison cmp;
    for (int a = 0; a < n; ++a) {
      cmp.equal(pkg.J().apply(pkg.sharp(c.dx[a])), pkg.sharp(pkg.J_star(c.dx[a])));
    }
    CheckResult res = c.result("lck.J-commutes", "J o #_{pi,xi} = #_{pi,xi} o J*", {{"identity", cmp}});
    bool pre = herm.verdict == Verdict::pass && c.isometry_ok();
    theorem(res, pre, "g is not associated to omega and to (omega, theta)");
    r.checks.push_back(res);
  }
}

bool has_metric_pair(const Structure& s) { return s.g.has_value() && s.jacobi.has_value(); }

using SuiteFn = void (*)(Context&, Report&);

struct SuiteEntry {
  std::string name;
  SuiteFn fn;
  bool (*applicable)(const Structure&);
};

const std::vector<SuiteEntry>& suites() {
  static const std::vector<SuiteEntry> table = {
      {"jacobi", suite_jacobi, [](const Structure& s) { return s.jacobi.has_value(); }},
      {"algebroid", suite_algebroid, [](const Structure& s) { return s.jacobi.has_value(); }},
      {"contact", suite_contact, [](const Structure& s) { return s.kind == Kind::contact; }},
      {"lcs", suite_lcs, [](const Structure& s) { return s.lcs.has_value(); }},
      {"connection", suite_connection, has_metric_pair},
      {"compatibility", suite_compatibility, has_metric_pair},
      {"kenmotsu", suite_kenmotsu, [](const Structure& s) { return s.acm.has_value() && s.jacobi.has_value(); }},
      {"lck", suite_lck,
       [](const Structure& s) { return s.lcs.has_value() && s.g.has_value() && s.f.has_value(); }},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : suites()) v.push_back(e.name);
    v.push_back("hygiene");
    return v;
  }();
  return names;
}

bool suite_applicable(const Structure& s, std::string_view suite) {
  if (suite == "hygiene" || suite == "all") return true;
  for (const auto& e : suites()) {
    if (e.name == suite) return e.applicable(s);
  }
  return false;
}

std::vector<std::pair<Expr, int>> component_derivatives(const Structure& s) {
  std::vector<Expr> comps;
  auto add_all = [&](const auto& t) {
    for (std::size_t k = 0; k < t.size(); ++k) comps.push_back(t.at(k));
  };
  auto add_matrix = [&](const ExprMatrix& m) {
    for (int i = 0; i < m.dim(); ++i) {
      for (int j = 0; j < m.dim(); ++j) comps.push_back(m(i, j));
    }
  };
  if (s.jacobi) {
    add_all(s.jacobi->pi());
    add_all(s.jacobi->xi());
    if (s.jacobi->lambda()) add_all(*s.jacobi->lambda());
  }
  if (s.g) add_matrix(s.g->matrix());
  if (s.phi) add_matrix(s.phi->matrix());
  if (s.eta) add_all(*s.eta);
  if (s.omega) add_all(*s.omega);
  if (s.theta) add_all(*s.theta);
  if (s.f) comps.push_back(*s.f);
  std::vector<std::pair<Expr, int>> out;
  std::set<std::string> seen;
  for (const auto& e : comps) {
    if (!seen.insert(s.chart->print(e)).second) continue;
    for (int i = 0; i < s.chart->dim(); ++i) out.emplace_back(e, i);
  }
  return out;
}

CheckResult finite_difference_check(const ChartPtr& chart, const std::vector<std::pair<Expr, int>>& pairs,
                                    const Samples& s, DifferenceScheme scheme) {
  CheckResult r;
  bool central = scheme == DifferenceScheme::central;
  r.name = central ? "hygiene.finite-difference" : "hygiene.richardson";
  r.anchor = central ? "|d e/d x_i - central difference| < tol, step h"
                     : "|d e/d x_i - (4 D(h/2) - D(h))/3| < tol, D = central difference";
  r.tol = kFiniteDifferenceTol;
  const auto& names = chart->names();
  std::vector<Expr> derivs;
  derivs.reserve(pairs.size());
  for (const auto& [e, i] : pairs) derivs.push_back(diff(e, i));

  auto difference = [&](const Expr& e, std::vector<double> x, std::size_t i, double h) {
    double x0 = x[i];
    x[i] = x0 + h;
    double up = eval(e, x, names);
    x[i] = x0 - h;
    return (up - eval(e, x, names)) / (2 * h);
  };

  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, std::max<std::size_t>(1, pairs.size()));
  std::vector<std::vector<double>> partial(workers, std::vector<double>(s.size(), 0.0));
  auto run = [&](std::size_t w) {
    for (std::size_t q = w; q < pairs.size(); q += workers) {
      const auto& [e, i] = pairs[q];
      auto axis = static_cast<std::size_t>(i);
      for (std::size_t k = 0; k < s.size(); ++k) {
        double d;
        try {
          double h = kFiniteDifferenceStep;
          double fd = difference(e, s[k], axis, h);
          if (!central) fd = (4 * difference(e, s[k], axis, h / 2) - fd) / 3;
          d = std::abs(eval(derivs[q], s[k], names) - fd);
        } catch (const EvalError&) {
          d = kInf;
        }
        if (std::isnan(d)) d = kInf;
        partial[w][k] = std::max(partial[w][k], d);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  r.per_point.assign(s.size(), 0.0);
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < s.size(); ++k) r.per_point[k] = std::max(r.per_point[k], p[k]);
  }
  r.residual = max_of(r.per_point);
  r.verdict = verdict_for(r.residual, r.tol);
  r.note = std::to_string(pairs.size()) + " first derivatives";
  return r;
}

Report run_suite(const Structure& s, const std::string& suite, const RunOptions& opt) {
  if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw InputError("unknown suite '" + suite + "'");
  }
  if (!suite_applicable(s, suite)) {
    throw InputError("suite '" + suite + "' does not apply to kind " + to_string(s.kind));
  }
  Report report;
  report.structure = s.name;
  report.suite = suite;
  report.seed = opt.seed;
  report.points = opt.points;
  Context ctx(s, opt);
  bool everything = suite == "all" || suite == "hygiene";
  if (everything) DiffAudit::start();
  try {
    for (const auto& e : suites()) {
      if ((everything && e.applicable(s)) || e.name == suite) e.fn(ctx, report);
    }
  } catch (...) {
    if (everything) DiffAudit::stop();
    throw;
  }
  if (everything) {
    auto log = DiffAudit::stop();
    if (suite == "hygiene") report.checks.clear();
    CheckResult comps = finite_difference_check(s.chart, component_derivatives(s), ctx.samples);
    comps.name = "hygiene.components";
    comps.anchor = "definition components: " + comps.anchor;
    report.checks.push_back(comps);
    report.checks.push_back(finite_difference_check(s.chart, log, ctx.samples));
    report.checks.push_back(finite_difference_check(s.chart, log, ctx.samples, DifferenceScheme::richardson));
  }
  return report;
}

nlohmann::ordered_json to_json(const CheckResult& c, bool per_point) {
  auto num = [](double v) -> nlohmann::ordered_json {
    if (std::isfinite(v)) return v;
    return nullptr;
  };
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["residual"] = num(c.residual);
  j["tol"] = c.tol;
  j["verdict"] = to_string(c.verdict);
  nlohmann::ordered_json parts = nlohmann::ordered_json::array();
  for (const auto& p : c.parts) parts.push_back({{"name", p.name}, {"residual", num(p.residual)}});
  j["parts"] = parts;
  if (!c.note.empty()) j["note"] = c.note;
  if (per_point) {
    nlohmann::ordered_json pp = nlohmann::ordered_json::array();
    for (double v : c.per_point) pp.push_back(num(v));
    j["per_point"] = pp;
  }
  return j;
}

nlohmann::ordered_json to_json(const Report& r, bool per_point) {
  nlohmann::ordered_json j;
  j["structure"] = r.structure;
  j["suite"] = r.suite;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c, per_point));
  j["checks"] = checks;
  j["seed"] = r.seed;
  j["points"] = r.points;
  return j;
}

}  // namespace jacobitk
