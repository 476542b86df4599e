#pragma once

// Sampling, residual measurement and check reports.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "jacobitk/manifold.hpp"

namespace jacobitk {

enum class Verdict { pass, fail, preconditions_failed, theorem_violated };

std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& s);

struct ResidualPart {
  std::string name;
  double residual = 0.0;
};

struct CheckResult {
  std::string name;
  std::string anchor;
  double residual = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::pass;
  std::vector<double> per_point;
  std::vector<ResidualPart> parts;
  std::string note;
};

/// pass iff residual < tol (NaN never passes).
Verdict verdict_for(double residual, double tol);

struct Report {
  std::string structure;
  std::string suite;
  std::uint64_t seed = 0;
  int points = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  bool any_theorem_violated() const;
};

constexpr int kDefaultPoints = 20;
constexpr double kDefaultTol = 1e-9;
constexpr double kFiniteDifferenceStep = 1e-4;
constexpr double kFiniteDifferenceTol = 1e-5;
/// Sample points closer than this to an excluded locus are rejected.
constexpr double kExclusionDistance = 0.1;
constexpr int kMaxRejections = 1000;

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform double in [0, 1) from the top 53 bits; portable across standard
/// libraries, unlike std::uniform_real_distribution.
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Seeded sample points in [-1,1]^n avoiding |e| < 0.1 for every excluded
/// locus expression e. Throws SamplingError after 1000 consecutive rejections.
class Samples {
 public:
  Samples(ChartPtr chart, int count, std::uint64_t seed);

  const ChartPtr& chart() const { return chart_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<double>& operator[](std::size_t k) const { return points_[k]; }
  const std::vector<std::vector<double>>& points() const { return points_; }
  std::uint64_t seed() const { return seed_; }

 private:
  ChartPtr chart_;
  std::uint64_t seed_;
  std::vector<std::vector<double>> points_;
};

/// Pairs of expressions expected to agree. Each side is evaluated on its
/// own; the residual at a point is the largest |lhs - rhs|.
class Comparison {
 public:
  void zero(const Expr& e) { equal(e, Expr()); }
  void equal(const Expr& lhs, const Expr& rhs);
  template <Variance V>
  void zero(const Alternating<V>& t) {
    for (std::size_t k = 0; k < t.size(); ++k) zero(t.at(k));
  }
  template <Variance V>
  void equal(const Alternating<V>& a, const Alternating<V>& b) {
    require_same_chart(a.chart(), b.chart(), "comparison");
    if (a.degree() != b.degree()) throw GeometryError("comparison: degree mismatch");
    for (std::size_t k = 0; k < a.size(); ++k) equal(a.at(k), b.at(k));
  }
  void append(const Comparison& other);

  std::size_t size() const { return lhs_.size(); }
  std::vector<double> per_point(const Samples& s) const;

 private:
  std::vector<Expr> lhs_;
  std::vector<Expr> rhs_;
};

double max_of(const std::vector<double>& v);

/// Builds a CheckResult from one comparison.
CheckResult measure(std::string name, std::string anchor, const Comparison& c, const Samples& s,
                    double tol);

/// Builds a CheckResult whose residual is the maximum over named parts.
CheckResult measure_parts(std::string name, std::string anchor,
                          const std::vector<std::pair<std::string, Comparison>>& parts,
                          const Samples& s, double tol);

/// Sparse random polynomials in the chart coordinates: about three terms,
/// small integer coefficients, total degree at most two.
class RandomInputs {
 public:
  RandomInputs(ChartPtr chart, std::uint64_t seed);

  Expr polynomial();
  OneForm one_form();
  VectorField vector_field();
  Multivector bivector();

 private:
  ChartPtr chart_;
  std::mt19937_64 rng_;
};

/// Coordinate covectors dx^0 .. dx^{n-1}.
std::vector<OneForm> covector_basis(const ChartPtr& chart);
std::vector<VectorField> vector_basis(const ChartPtr& chart);

}  // namespace jacobitk
