// Acceptance run: one PASS/FAIL line per criterion, followed by the items that
// failed. Tolerances are pinned here rather than taken from the run options.
// Always exits 0 unless the harness itself breaks; a red criterion is a result.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "jacobitk/catalog.hpp"

using namespace jacobitk;

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kDifferenceTol = 1e-5;
constexpr int kPoints = 20;
constexpr std::uint64_t kSeed = 0;

struct Tally {
  std::vector<std::string> failures;
  double worst = 0;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string sci(double v) {
  if (!std::isfinite(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

class Runs {
 public:
  const Report& report(const std::string& fixture) {
    auto it = reports_.find(fixture);
    if (it == reports_.end()) {
      it = reports_.emplace(fixture, run_suite(load(fixture), "all", RunOptions{kPoints, kSeed, kIdentityTol})).first;
    }
    return it->second;
  }

  const CheckResult* find(const std::string& fixture, const std::string& check) {
    for (const auto& c : report(fixture).checks) {
      if (c.name == check) return &c;
    }
    return nullptr;
  }

 private:
  std::map<std::string, Report> reports_;
};

// The check must pass and its residual must be below tol.
void holds(Tally& t, Runs& runs, const std::string& fixture, const std::string& check, double tol) {
  const CheckResult* c = runs.find(fixture, check);
  if (!c) {
    t.failures.push_back(fixture + " " + check + ": missing");
    return;
  }
  if (std::isfinite(c->residual)) t.worst = std::max(t.worst, c->residual);
  bool ok = c->verdict == Verdict::pass && c->residual < tol;
  t.require(ok, fixture + " " + check + ": " + to_string(c->verdict) + ", residual " + sci(c->residual));
}

void verdict_is(Tally& t, Runs& runs, const std::string& fixture, const std::string& check, Verdict want) {
  const CheckResult* c = runs.find(fixture, check);
  if (!c) {
    t.failures.push_back(fixture + " " + check + ": missing");
    return;
  }
  t.require(c->verdict == want, fixture + " " + check + ": " + to_string(c->verdict) + ", wanted " + to_string(want));
}

void part_holds(Tally& t, Runs& runs, const std::string& fixture, const std::string& check, const std::string& part,
                double tol) {
  const CheckResult* c = runs.find(fixture, check);
  if (!c) {
    t.failures.push_back(fixture + " " + check + ": missing");
    return;
  }
  for (const auto& p : c->parts) {
    if (p.name != part) continue;
    if (std::isfinite(p.residual)) t.worst = std::max(t.worst, p.residual);
    t.require(p.residual < tol, fixture + " " + check + "/" + part + ": residual " + sci(p.residual));
    return;
  }
  t.failures.push_back(fixture + " " + check + "/" + part + ": missing");
}

bool has_metric(const std::string& fixture) { return load(fixture).g.has_value(); }

Tally criterion_1(Runs& r) {
  Tally t;
  for (const char* f : {"poisson-flat-r2", "poisson-linear-r3", "contact-r3", "contact-r5", "lcs-gcs-r4"}) {
    holds(t, r, f, "jacobi.identity", kIdentityTol);
  }
  return t;
}

Tally criterion_2(Runs& r) {
  Tally t;
  holds(t, r, "poisson-linear-r3", "algebroid.poisson-pre-alg", kIdentityTol);
  holds(t, r, "poisson-linear-r3", "algebroid.poisson-alg", kIdentityTol);
  return t;
}

Tally criterion_3(Runs& r) {
  Tally t;
  for (const auto& [f, choice] : {std::pair{"contact-r3", "lambda-eta"}, std::pair{"lcs-gcs-r4", "lambda-theta"}}) {
    holds(t, r, f, "algebroid.torsion-theorem", kIdentityTol);
    for (const char* part : {"lambda-zero", choice, "lambda-random"}) {
      part_holds(t, r, f, "algebroid.torsion-theorem", part, kIdentityTol);
    }
  }
  return t;
}

Tally criterion_4(Runs& r) {
  Tally t;
  for (const char* f : {"contact-r3", "contact-r5"}) {
    holds(t, r, f, "contact.eta-alg", kIdentityTol);
    part_holds(t, r, f, "contact.eta-alg", "sharp", kIdentityTol);
    part_holds(t, r, f, "contact.eta-alg", "jacobiator", kIdentityTol);
  }
  return t;
}

Tally criterion_5(Runs& r) {
  Tally t;
  for (const char* f : {"lcs-gcs-r4", "lcs-broken"}) {
    holds(t, r, f, "lcs.lemma-1", kIdentityTol);
    holds(t, r, f, "lcs.lemma-2", kIdentityTol);
    verdict_is(t, r, f, "lcs.equivalence", find_fixture(f).expected_verdict("lcs.equivalence"));
  }
  verdict_is(t, r, "lcs-gcs-r4", "lcs.equivalence", Verdict::pass);
  verdict_is(t, r, "lcs-broken", "lcs.equivalence", Verdict::fail);
  return t;
}

Tally criterion_6(Runs& r) {
  Tally t;
  for (const auto& f : catalog()) {
    if (!has_metric(f.name)) continue;
    holds(t, r, f.name, "connection.D-metric", kIdentityTol);
    holds(t, r, f.name, "connection.D-symmetric", kIdentityTol);
  }
  holds(t, r, "contact-r3", "connection.prop-LC", kIdentityTol);
  holds(t, r, "lcs-gcs-r4", "connection.prop-LC", kIdentityTol);
  holds(t, r, "lcs-gcs-r4", "connection.levi-civita-omega", kIdentityTol);
  return t;
}

Tally criterion_7(Runs& r) {
  Tally t;
  for (const auto& f : catalog()) {
    if (!has_metric(f.name)) continue;
    holds(t, r, f.name, "compatibility.cross-identity", kIdentityTol);
    const CheckResult* j = r.find(f.name, "compatibility.joint");
    t.require(j && (j->verdict == Verdict::pass || j->verdict == Verdict::fail),
              f.name + " compatibility.joint: defects do not vanish jointly");
  }
  holds(t, r, "kenmotsu-half", "kenmotsu.defect-half", kIdentityTol);
  verdict_is(t, r, "kenmotsu-one", "kenmotsu.defect-half", Verdict::fail);
  holds(t, r, "kenmotsu-one", "kenmotsu.defect-one", kIdentityTol);
  holds(t, r, "contact-r3", "kenmotsu.cross-identity", kIdentityTol);
  holds(t, r, "lcs-gcs-r4", "compatibility.defect", kIdentityTol);
  holds(t, r, "lcs-gcs-r4", "lck.lambda-f", kIdentityTol);
  holds(t, r, "lcs-gcs-r4", "lck.conformal-parallel", kIdentityTol);
  for (const auto& f : catalog()) {
    for (const auto& c : r.report(f.name).checks) {
      t.require(c.verdict != Verdict::theorem_violated, f.name + " " + c.name + ": theorem-violated");
    }
  }
  return t;
}

Tally criterion_8(Runs& r) {
  Tally t;
  for (const auto& f : catalog()) {
    holds(t, r, f.name, "hygiene.finite-difference", kDifferenceTol);
    std::string first = to_json(r.report(f.name), true).dump();
    std::string second =
        to_json(run_suite(load(f.name), "all", RunOptions{kPoints, kSeed, kIdentityTol}), true).dump();
    t.require(first == second, f.name + ": reports differ between two runs with seed 0");
  }
  return t;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Tally(Runs&)>>> criteria = {
      {"Jacobi identity on five fixtures", criterion_1},
      {"anchor and Jacobiator identities on poisson-linear-r3", criterion_2},
      {"anchor defect formula for three choices of lambda", criterion_3},
      {"contact anchor and Jacobiator with lambda = eta", criterion_4},
      {"lcs lemmas and the lcs/Jacobi equivalence pattern", criterion_5},
      {"contravariant Levi-Civita derivative", criterion_6},
      {"compatibility, Kenmotsu and lcK equivalences", criterion_7},
      {"finite differences and reproducible reports", criterion_8},
  };
  auto start = std::chrono::steady_clock::now();
  Runs runs;
  int red = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Tally t = criteria[k].second(runs);
    bool ok = t.failures.empty();
    red += ok ? 0 : 1;
    std::cout << "criterion " << (k + 1) << " " << (ok ? "PASS" : "FAIL") << ": " << criteria[k].first
              << " (worst residual " << sci(t.worst) << ")\n";
    for (const auto& f : t.failures) std::cout << "    " << f << "\n";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (criteria.size() - static_cast<std::size_t>(red)) << "/" << criteria.size() << " criteria pass, "
            << sci(secs) << " s\n";
  return 0;
}
