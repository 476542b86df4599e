#pragma once

// Built-in fixtures. Each one is stored as definition text, exactly what a
// user would write in a structure file, together with the verdict every
// check is expected to produce under the default run options.

#include <string>
#include <utility>
#include <vector>

#include "jacobitk/suites.hpp"

namespace jacobitk {

struct Fixture {
  std::string name;
  Kind kind = Kind::poisson;
  std::string summary;
  std::string definition;
  /// Counterexamples are expected to fail their own defining identity.
  bool counterexample = false;
  /// Check name -> verdict, for every check of run_suite(..., "all").
  std::vector<std::pair<std::string, Verdict>> expected;

  /// Throws std::out_of_range for an unlisted check.
  Verdict expected_verdict(const std::string& check) const;
};

/// A fixture whose defining identity disagrees with its committed verdict.
class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All fixtures, in a stable order.
const std::vector<Fixture>& catalog();

/// Throws InputError for an unknown name.
const Fixture& find_fixture(const std::string& name);

/// The check that decides whether a structure of this kind is what it claims.
std::string defining_check(Kind k);

/// Builds the fixture and runs its defining check; throws FixtureError when
/// the verdict differs from the committed one.
Structure load(const std::string& name);

}  // namespace jacobitk
