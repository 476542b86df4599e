#pragma once

// Identity suites run against a structure; each check is named "suite.check".

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jacobitk/structure.hpp"

namespace jacobitk {

struct RunOptions {
  int points = kDefaultPoints;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};

/// Random inputs per identity for algebraic identities, and for the nested
/// (second-derivative) ones.
constexpr int kRandomTrials = 10;
constexpr int kNestedTrials = 5;
constexpr int kConnectionTrials = 3;

/// jacobi, algebroid, contact, lcs, connection, compatibility, kenmotsu, lck, hygiene.
const std::vector<std::string>& suite_names();
bool suite_applicable(const Structure& s, std::string_view suite);

/// Runs one suite, or every applicable suite for "all" (which also appends the
/// finite-difference hygiene checks; "hygiene" keeps only those). Throws InputError for unknown or
/// inapplicable suites.
Report run_suite(const Structure& s, const std::string& suite, const RunOptions& opt = {});

enum class DifferenceScheme { central, richardson };

/// Compares d e/d x_i for every (e, i) with a difference quotient of step
/// kFiniteDifferenceStep. Richardson extrapolation of two central quotients
/// removes the O(h^2) truncation term, which dominates for large expressions.
CheckResult finite_difference_check(const ChartPtr& chart, const std::vector<std::pair<Expr, int>>& pairs,
                                    const Samples& s, DifferenceScheme scheme = DifferenceScheme::central);

/// (e, i) for every distinct defining component e and coordinate i.
std::vector<std::pair<Expr, int>> component_derivatives(const Structure& s);

nlohmann::ordered_json to_json(const CheckResult& c, bool per_point = true);
nlohmann::ordered_json to_json(const Report& r, bool per_point = true);

}  // namespace jacobitk
