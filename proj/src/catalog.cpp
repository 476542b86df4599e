#include "jacobitk/catalog.hpp"

#include <algorithm>
#include <stdexcept>

namespace jacobitk {

namespace {

constexpr Verdict P = Verdict::pass;
constexpr Verdict F = Verdict::fail;
constexpr Verdict X = Verdict::preconditions_failed;

std::vector<Fixture> build_catalog() {
  std::vector<Fixture> c;

  c.push_back({"poisson-flat-r2", Kind::poisson, "constant symplectic bivector on the plane",
               R"(name = poisson-flat-r2
kind = poisson
coords = x y
pi.xy = 1
g.xx = 1
g.yy = 1
)",
               false,
               {
                {"jacobi.identity", P}, {"algebroid.poisson-pre-alg", P}, {"algebroid.poisson-alg", P},
                {"algebroid.leibniz", P}, {"algebroid.torsion-theorem", P}, {"algebroid.jacobiator", P},
                {"algebroid.anchor-iso", P}, {"connection.nabla-metric", P}, {"connection.torsion-free", P},
                {"connection.D-metric", P}, {"connection.D-symmetric", P}, {"connection.D-routes", P},
                {"connection.isometry", P}, {"connection.lambda", P}, {"connection.prop-LC", P},
                {"compatibility.defect", P}, {"compatibility.endomorphism-form", P},
                {"compatibility.cross-identity", P}, {"compatibility.joint", P}, {"hygiene.components", P},
                {"hygiene.finite-difference", P}, {"hygiene.richardson", P}
               }});

  c.push_back({"poisson-linear-r3", Kind::poisson, "Lie-Poisson structure of so(3) with the Euclidean metric",
               R"(name = poisson-linear-r3
kind = poisson
coords = x y z
pi.xy = z
pi.yz = x
pi.xz = -y
g.xx = 1
g.yy = 1
g.zz = 1
)",
               false,
               {
                {"jacobi.identity", P}, {"algebroid.poisson-pre-alg", P}, {"algebroid.poisson-alg", P},
                {"algebroid.leibniz", P}, {"algebroid.torsion-theorem", P}, {"algebroid.jacobiator", P},
                {"algebroid.anchor-iso", F}, {"connection.nabla-metric", P}, {"connection.torsion-free", P},
                {"connection.D-metric", P}, {"connection.D-symmetric", P}, {"connection.D-routes", P},
                {"connection.isometry", F}, {"connection.lambda", P}, {"connection.prop-LC", X},
                {"compatibility.defect", F}, {"compatibility.endomorphism-form", F},
                {"compatibility.cross-identity", P}, {"compatibility.joint", F}, {"hygiene.components", P},
                {"hygiene.finite-difference", P}, {"hygiene.richardson", P}
               }});

  c.push_back({"contact-r3", Kind::contact, "eta = dz - y dx with an associated metric",
               R"(name = contact-r3
kind = contact
coords = x y z
eta.x = -y
eta.z = 1
g.xx = 1 + y^2
g.xz = -y
g.yy = 1
g.zz = 1
phi.x.y = 1
phi.y.x = -1
phi.z.y = y
)",
               false,
               {
                {"jacobi.identity", P}, {"algebroid.poisson-pre-alg", P}, {"algebroid.poisson-alg", P},
                {"algebroid.leibniz", P}, {"algebroid.torsion-theorem", P}, {"algebroid.jacobiator", P},
                {"algebroid.anchor-iso", P}, {"contact.volume", P}, {"contact.reeb", P},
                {"contact.eta-alg", P}, {"contact.metric", P}, {"connection.nabla-metric", P},
                {"connection.torsion-free", P}, {"connection.D-metric", P}, {"connection.D-symmetric", P},
                {"connection.D-routes", P}, {"connection.isometry", P}, {"connection.lambda", P},
                {"connection.prop-LC", P}, {"compatibility.defect", F}, {"compatibility.endomorphism-form", F},
                {"compatibility.cross-identity", P}, {"compatibility.joint", F}, {"kenmotsu.structure", P},
                {"kenmotsu.defect-half", F}, {"kenmotsu.defect-one", F}, {"kenmotsu.pi-iso", P},
                {"kenmotsu.cross-identity", P}, {"kenmotsu.equivalence", F}, {"hygiene.components", P},
                {"hygiene.finite-difference", P}, {"hygiene.richardson", P}
               }});

  c.push_back({"contact-r5", Kind::contact, "eta = dz - y1 dx1 - y2 dx2 with an associated metric",
               R"(name = contact-r5
kind = contact
coords = x1 y1 x2 y2 z
eta.x1 = -y1
eta.x2 = -y2
eta.z = 1
g.x1.x1 = 1 + y1^2
g.x1.x2 = y1*y2
g.x1.z = -y1
g.x2.x2 = 1 + y2^2
g.x2.z = -y2
g.y1.y1 = 1
g.y2.y2 = 1
g.z.z = 1
phi.x1.y1 = 1
phi.y1.x1 = -1
phi.x2.y2 = 1
phi.y2.x2 = -1
phi.z.y1 = y1
phi.z.y2 = y2
)",
               false,
               {
                {"jacobi.identity", P}, {"algebroid.poisson-pre-alg", P}, {"algebroid.poisson-alg", P},
                {"algebroid.leibniz", P}, {"algebroid.torsion-theorem", P}, {"algebroid.jacobiator", P},
                {"algebroid.anchor-iso", P}, {"contact.volume", P}, {"contact.reeb", P},
                {"contact.eta-alg", P}, {"contact.metric", P}, {"connection.nabla-metric", P},
                {"connection.torsion-free", P}, {"connection.D-metric", P}, {"connection.D-symmetric", P},
                {"connection.D-routes", P}, {"connection.isometry", P}, {"connection.lambda", P},
                {"connection.prop-LC", P}, {"compatibility.defect", F}, {"compatibility.endomorphism-form", F},
                {"compatibility.cross-identity", P}, {"compatibility.joint", F}, {"kenmotsu.structure", P},
                {"kenmotsu.defect-half", F}, {"kenmotsu.defect-one", F}, {"kenmotsu.pi-iso", P},
                {"kenmotsu.cross-identity", P}, {"kenmotsu.equivalence", F}, {"hygiene.components", P},
                {"hygiene.finite-difference", P}, {"hygiene.richardson", P}
               }});

  c.push_back({"kenmotsu-half", Kind::almost_contact_metric, "warped product dt^2 + e^t (dx^2 + dy^2)",
               R"(name = kenmotsu-half
kind = almost-contact-metric
coords = t x y
g.tt = 1
g.xx = exp(t)
g.yy = exp(t)
eta.t = 1
xi.t = 1
phi.y.x = 1
phi.x.y = -1
lambda = metric
)",
               false,
               {
                {"jacobi.identity", F}, {"algebroid.poisson-pre-alg", P}, {"algebroid.poisson-alg", P},
                {"algebroid.leibniz", P}, {"algebroid.torsion-theorem", X}, {"algebroid.jacobiator", F},
                {"algebroid.anchor-iso", P}, {"connection.nabla-metric", P}, {"connection.torsion-free", P},
                {"connection.D-metric", P}, {"connection.D-symmetric", P}, {"connection.D-routes", P},
                {"connection.isometry", P}, {"connection.lambda", P}, {"connection.prop-LC", X},
                {"compatibility.defect", F}, {"compatibility.endomorphism-form", F},
                {"compatibility.cross-identity", P}, {"compatibility.joint", F}, {"kenmotsu.structure", P},
                {"kenmotsu.defect-half", P}, {"kenmotsu.defect-one", F}, {"kenmotsu.pi-iso", P},
                {"kenmotsu.cross-identity", X}, {"kenmotsu.equivalence", X}, {"hygiene.components", P},
                {"hygiene.finite-difference", F}, {"hygiene.richardson", P}
               }});

  c.push_back({"kenmotsu-one", Kind::almost_contact_metric, "warped product dt^2 + e^(2t) (dx^2 + dy^2)",
               R"(name = kenmotsu-one
kind = almost-contact-metric
coords = t x y
g.tt = 1
g.xx = exp(2*t)
g.yy = exp(2*t)
eta.t = 1
xi.t = 1
phi.y.x = 1
phi.x.y = -1
lambda = metric
)",
               false,
               {
                {"jacobi.identity", F}, {"algebroid.poisson-pre-alg", P}, {"algebroid.poisson-alg", P},
                {"algebroid.leibniz", P}, {"algebroid.torsion-theorem", X}, {"algebroid.jacobiator", F},
                {"algebroid.anchor-iso", P}, {"connection.nabla-metric", P}, {"connection.torsion-free", P},
                {"connection.D-metric", P}, {"connection.D-symmetric", P}, {"connection.D-routes", P},
                {"connection.isometry", P}, {"connection.lambda", P}, {"connection.prop-LC", X},
                {"compatibility.defect", F}, {"compatibility.endomorphism-form", F},
                {"compatibility.cross-identity", P}, {"compatibility.joint", F}, {"kenmotsu.structure", P},
                {"kenmotsu.defect-half", F}, {"kenmotsu.defect-one", P}, {"kenmotsu.pi-iso", P},
                {"kenmotsu.cross-identity", X}, {"kenmotsu.equivalence", X}, {"hygiene.components", P},
                {"hygiene.finite-difference", F}, {"hygiene.richardson", P}
               }});

  c.push_back({"lcs-gcs-r4", Kind::lcs_with_metric,
               "omega = e^-x (dx^dy + dz^dw), theta = dx = df, g = e^-x times the Euclidean metric",
               R"(name = lcs-gcs-r4
kind = lcs-with-metric
coords = x y z w
omega.xy = exp(-x)
omega.zw = exp(-x)
theta.x = 1
f = x
g.xx = exp(-x)
g.yy = exp(-x)
g.zz = exp(-x)
g.ww = exp(-x)
)",
               false,
               {
                {"jacobi.identity", P}, {"algebroid.poisson-pre-alg", P}, {"algebroid.poisson-alg", P},
                {"algebroid.leibniz", P}, {"algebroid.torsion-theorem", P}, {"algebroid.jacobiator", P},
                {"algebroid.anchor-iso", P}, {"lcs.is-lcs", P}, {"lcs.lemma-1", P}, {"lcs.lemma-2", P},
                {"lcs.equivalence", P}, {"lcs.omega-pi-xi", P}, {"lcs.injective", P},
                {"lcs.omega-theta-alg", P}, {"connection.nabla-metric", P}, {"connection.torsion-free", P},
                {"connection.D-metric", P}, {"connection.D-symmetric", P}, {"connection.D-routes", P},
                {"connection.isometry", F}, {"connection.lambda", X}, {"connection.prop-LC", X},
                {"connection.levi-civita-omega", X}, {"compatibility.defect", F},
                {"compatibility.endomorphism-form", F}, {"compatibility.cross-identity", P},
                {"compatibility.joint", F}, {"lck.hermitian", P}, {"lck.associated", F}, {"lck.lambda-f", P},
                {"lck.conformal-parallel", P}, {"lck.conformal-formula", P}, {"lck.compatibility", X},
                {"lck.J-commutes", X}, {"hygiene.components", P}, {"hygiene.finite-difference", F},
                {"hygiene.richardson", P}
               }});

  c.push_back({"lcs-broken", Kind::lcs, "omega = e^-x (dx^dy + dz^dw) with the wrong Lee form theta = dy",
               R"(name = lcs-broken
kind = lcs
coords = x y z w
omega.xy = exp(-x)
omega.zw = exp(-x)
theta.y = 1
)",
               true,
               {
                {"jacobi.identity", F}, {"algebroid.poisson-pre-alg", P}, {"algebroid.poisson-alg", P},
                {"algebroid.leibniz", P}, {"algebroid.torsion-theorem", X}, {"algebroid.jacobiator", F},
                {"algebroid.anchor-iso", P}, {"lcs.is-lcs", F}, {"lcs.lemma-1", P}, {"lcs.lemma-2", P},
                {"lcs.equivalence", F}, {"lcs.omega-pi-xi", P}, {"lcs.injective", P},
                {"lcs.omega-theta-alg", X}, {"hygiene.components", P}, {"hygiene.finite-difference", F},
                {"hygiene.richardson", P}
               }});
  return c;
}

}  // namespace

Verdict Fixture::expected_verdict(const std::string& check) const {
  for (const auto& [name, v] : expected) {
    if (name == check) return v;
  }
  throw std::out_of_range(this->name + ": no expected verdict for " + check);
}

const std::vector<Fixture>& catalog() {
  static const std::vector<Fixture> fixtures = build_catalog();
  return fixtures;
}

const Fixture& find_fixture(const std::string& name) {
  for (const auto& f : catalog()) {
    if (f.name == name) return f;
  }
  throw InputError("unknown fixture '" + name + "'");
}

std::string defining_check(Kind k) {
  switch (k) {
    case Kind::poisson:
    case Kind::jacobi:
      return "jacobi.identity";
    case Kind::contact:
      return "contact.volume";
    case Kind::almost_contact_metric:
      return "kenmotsu.structure";
    case Kind::lcs:
    case Kind::lcs_with_metric:
      return "lcs.is-lcs";
  }
  return "";
}

Structure load(const std::string& name) {
  const Fixture& fx = find_fixture(name);
  Structure s = build_structure(parse_definition(fx.definition, name));
  std::string check = defining_check(fx.kind);
  Report r = run_suite(s, check.substr(0, check.find('.')));
  auto it = std::find_if(r.checks.begin(), r.checks.end(), [&](const CheckResult& c) { return c.name == check; });
  if (it == r.checks.end()) throw FixtureError(name + ": defining check " + check + " did not run");
  Verdict want = fx.counterexample ? Verdict::fail : Verdict::pass;
  if (it->verdict != want) {
    throw FixtureError(name + ": " + check + " gave " + to_string(it->verdict) + ", expected " + to_string(want));
  }
  return s;
}

}  // namespace jacobitk
