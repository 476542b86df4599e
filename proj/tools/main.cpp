// jacobitk: check identities, print derived objects, list fixtures.
//
// Exit codes: 0 all verdicts as expected, 1 verdict mismatch, 2 input error,
// 3 internal error (a theorem-violated verdict or a broken fixture).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jacobitk/catalog.hpp"
#include "jacobitk/derive.hpp"

using namespace jacobitk;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Loaded {
  Structure structure;
  const Fixture* fixture = nullptr;
};

// A path that exists is read as a definition file; anything else names a fixture.
Loaded load_target(const std::string& target) {
  if (std::filesystem::is_regular_file(target)) {
    std::ifstream in(target);
    std::stringstream buf;
    buf << in.rdbuf();
    return {build_structure(parse_definition(buf.str(), target)), nullptr};
  }
  const Fixture& fx = find_fixture(target);
  return {load(target), &fx};
}

std::string format_residual(double r) {
  if (!std::isfinite(r)) return "inf";
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << r;
  return s.str();
}

struct CheckArgs {
  std::string target;
  std::string suite = "all";
  int points = kDefaultPoints;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  bool json = false;
  bool per_point = false;
  std::string expect;
};

int cmd_check(const CheckArgs& a) {
  Loaded l = load_target(a.target);
  const Fixture* table = nullptr;
  if (!a.expect.empty()) {
    table = (a.expect == "fixture") ? l.fixture : &find_fixture(a.expect);
    if (!table) throw InputError("--expect fixture needs a fixture target or a fixture name");
  }
  RunOptions opt{a.points, a.seed, a.tol};
  Report r = run_suite(l.structure, a.suite, opt);

  bool mismatch = false;
  bool violated = false;
  std::vector<std::string> wanted;
  for (const auto& c : r.checks) {
    Verdict want = Verdict::pass;
    if (table) {
      try {
        want = table->expected_verdict(c.name);
      } catch (const std::out_of_range&) {
        want = Verdict::pass;
      }
    }
    wanted.push_back(to_string(want));
    mismatch = mismatch || c.verdict != want;
    violated = violated || c.verdict == Verdict::theorem_violated;
  }

  if (a.json) {
    std::cout << to_json(r, a.per_point).dump(2) << "\n";
  } else {
    std::cout << r.structure << "  suite " << r.suite << "  points " << r.points << "  seed " << r.seed << "\n";
    for (std::size_t k = 0; k < r.checks.size(); ++k) {
      const auto& c = r.checks[k];
      std::cout << std::left << std::setw(22) << to_string(c.verdict) << std::setw(36) << c.name
                << " residual " << std::setw(9) << format_residual(c.residual) << " tol " << format_residual(c.tol);
      if (table) std::cout << (wanted[k] == to_string(c.verdict) ? "  (expected)" : "  (expected " + wanted[k] + ")");
      std::cout << "\n";
      for (const auto& p : c.parts) {
        std::cout << "    " << std::setw(24) << p.name << format_residual(p.residual) << "\n";
      }
      if (!c.note.empty()) std::cout << "    note: " << c.note << "\n";
    }
  }
  if (violated) return kExitInternal;
  return mismatch ? kExitMismatch : 0;
}

int cmd_derive(const std::string& target, const std::string& object) {
  Loaded l = load_target(target);
  for (const auto& line : derive_object(l.structure, object)) std::cout << line << "\n";
  return 0;
}

int cmd_catalog(bool json) {
  if (json) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& f : catalog()) {
      nlohmann::ordered_json e;
      e["name"] = f.name;
      e["kind"] = to_string(f.kind);
      e["summary"] = f.summary;
      e["counterexample"] = f.counterexample;
      nlohmann::ordered_json ex = nlohmann::ordered_json::object();
      for (const auto& [check, v] : f.expected) ex[check] = to_string(v);
      e["expected"] = ex;
      out.push_back(e);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  for (const auto& f : catalog()) {
    std::cout << f.name << "  (" << to_string(f.kind) << (f.counterexample ? ", counterexample" : "") << ")\n";
    std::cout << "  " << f.summary << "\n";
    for (const auto& [check, v] : f.expected) {
      std::cout << "    " << std::left << std::setw(36) << check << to_string(v) << "\n";
    }
  }
  return 0;
}

int cmd_dump(const std::string& target, bool json) {
  Loaded l = load_target(target);
  if (json) {
    std::cout << to_json(l.structure).dump(2) << "\n";
  } else {
    std::cout << serialize(l.structure);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi structures, contravariant connections and their identities"};
  app.require_subcommand(1);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "run identity suites on a fixture or a definition file");
  check->add_option("target", ca.target, "fixture name or definition file")->required();
  check->add_option("--suite", ca.suite, "jacobi, algebroid, contact, lcs, connection, compatibility, "
                                         "kenmotsu, lck, hygiene or all")
      ->capture_default_str();
  check->add_option("--points", ca.points, "sample points")->capture_default_str()->check(CLI::PositiveNumber);
  check->add_option("--seed", ca.seed, "sampling and random-input seed")->capture_default_str();
  check->add_option("--tol", ca.tol, "residual tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  check->add_flag("--json", ca.json, "JSON report");
  check->add_flag("--per-point", ca.per_point, "include per-point residuals in the JSON report");
  check->add_option("--expect", ca.expect,
                    "compare with a fixture's expected verdicts ('fixture' = the target itself)");

  std::string dtarget;
  std::string object;
  auto* derive = app.add_subcommand("derive", "print a derived object");
  derive->add_option("target", dtarget, "fixture name or definition file")->required();
  derive->add_option("--object", object, "reeb, pi, lambda, sharp, christoffel, D, J or defects")->required();

  bool cjson = false;
  auto* cat = app.add_subcommand("catalog", "list fixtures and their expected verdicts");
  cat->add_flag("--json", cjson, "JSON output");

  std::string mtarget;
  bool mjson = false;
  auto* dump = app.add_subcommand("dump", "print a structure in canonical definition form");
  dump->add_option("target", mtarget, "fixture name or definition file")->required();
  dump->add_flag("--json", mjson, "JSON rendering");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*check) return cmd_check(ca);
    if (*derive) return cmd_derive(dtarget, object);
    if (*cat) return cmd_catalog(cjson);
    if (*dump) return cmd_dump(mtarget, mjson);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SamplingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const FixtureError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
