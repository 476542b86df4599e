#include "jacobitk/check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace jacobitk {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::preconditions_failed:
      return "preconditions-failed";
    case Verdict::theorem_violated:
      return "theorem-violated";
  }
  return "fail";
}

Verdict parse_verdict(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "preconditions-failed") return Verdict::preconditions_failed;
  if (s == "theorem-violated") return Verdict::theorem_violated;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

Verdict verdict_for(double residual, double tol) {
  return residual < tol ? Verdict::pass : Verdict::fail;
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.verdict == Verdict::pass; });
}

bool Report::any_theorem_violated() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.verdict == Verdict::theorem_violated; });
}

Samples::Samples(ChartPtr chart, int count, std::uint64_t seed)
    : chart_(std::move(chart)), seed_(seed) {
  std::mt19937_64 rng(seed);
  int n = chart_->dim();
  while (static_cast<int>(points_.size()) < count) {
    int rejected = 0;
    for (;;) {
      std::vector<double> p(static_cast<std::size_t>(n));
      for (auto& v : p) v = -1.0 + 2.0 * unit_double(rng);
      bool ok = true;
      for (const auto& e : chart_->excluded()) {
        double value = 0.0;
        try {
          value = eval(e, p, chart_->names());
        } catch (const EvalError&) {
          ok = false;
          break;
        }
        if (!(std::abs(value) >= kExclusionDistance)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        points_.push_back(std::move(p));
        break;
      }
      if (++rejected >= kMaxRejections) {
        throw SamplingError("could not find a sample point away from the excluded loci after " +
                            std::to_string(kMaxRejections) + " rejections");
      }
    }
  }
}

void Comparison::equal(const Expr& lhs, const Expr& rhs) {
  lhs_.push_back(lhs);
  rhs_.push_back(rhs);
}

void Comparison::append(const Comparison& other) {
  lhs_.insert(lhs_.end(), other.lhs_.begin(), other.lhs_.end());
  rhs_.insert(rhs_.end(), other.rhs_.begin(), other.rhs_.end());
}

std::vector<double> Comparison::per_point(const Samples& s) const {
  const auto& names = s.chart()->names();
  std::vector<double> out(s.size(), 0.0);
  auto one = [&](std::size_t k) {
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs_.size(); ++i) {
      double d;
      try {
        d = std::abs(eval(lhs_[i], s[k], names) - eval(rhs_[i], s[k], names));
      } catch (const EvalError&) {
        d = std::numeric_limits<double>::infinity();
      }
      if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
      worst = std::max(worst, d);
    }
    out[k] = worst;
  };
  // Points are independent; each thread writes only its own slots.
  std::size_t workers = std::min<std::size_t>(s.size(), std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1 || lhs_.size() * s.size() < 256) {
    for (std::size_t k = 0; k < s.size(); ++k) one(k);
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t k = w; k < s.size(); k += workers) one(k);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

CheckResult measure(std::string name, std::string anchor, const Comparison& c, const Samples& s,
                    double tol) {
  CheckResult r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.tol = tol;
  r.per_point = c.per_point(s);
  r.residual = max_of(r.per_point);
  r.verdict = verdict_for(r.residual, tol);
  return r;
}

CheckResult measure_parts(std::string name, std::string anchor,
                          const std::vector<std::pair<std::string, Comparison>>& parts,
                          const Samples& s, double tol) {
  CheckResult r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.tol = tol;
  r.per_point.assign(s.size(), 0.0);
  for (const auto& [label, c] : parts) {
    auto pp = c.per_point(s);
    for (std::size_t k = 0; k < pp.size(); ++k) r.per_point[k] = std::max(r.per_point[k], pp[k]);
    r.parts.push_back({label, max_of(pp)});
  }
  r.residual = max_of(r.per_point);
  r.verdict = verdict_for(r.residual, tol);
  return r;
}

RandomInputs::RandomInputs(ChartPtr chart, std::uint64_t seed)
    : chart_(std::move(chart)), rng_(seed ^ 0x5bd1e995a9c1f3d7ULL) {}

Expr RandomInputs::polynomial() {
  int n = chart_->dim();
  Expr p;
  int terms = 2 + static_cast<int>(rng_() % 3);
  for (int t = 0; t < terms; ++t) {
    auto c = static_cast<std::int64_t>(rng_() % 7) - 3;
    if (c == 0) c = 1;
    Expr term(c);
    int degree = static_cast<int>(rng_() % 3);
    for (int d = 0; d < degree; ++d) term *= Expr::coordinate(static_cast<int>(rng_() % static_cast<std::uint64_t>(n)));
    p += term;
  }
  return p;
}

OneForm RandomInputs::one_form() {
  OneForm a(chart_);
  for (int i = 0; i < chart_->dim(); ++i) a[i] = polynomial();
  return a;
}

VectorField RandomInputs::vector_field() {
  VectorField v(chart_);
  for (int i = 0; i < chart_->dim(); ++i) v[i] = polynomial();
  return v;
}

Multivector RandomInputs::bivector() {
  Multivector p(chart_, 2);
  for (std::size_t k = 0; k < p.size(); ++k) p.at(k) = polynomial();
  return p;
}

std::vector<OneForm> covector_basis(const ChartPtr& chart) {
  std::vector<OneForm> b;
  for (int i = 0; i < chart->dim(); ++i) b.push_back(OneForm::basis(chart, i));
  return b;
}

std::vector<VectorField> vector_basis(const ChartPtr& chart) {
  std::vector<VectorField> b;
  for (int i = 0; i < chart->dim(); ++i) b.push_back(VectorField::basis(chart, i));
  return b;
}

}  // namespace jacobitk
