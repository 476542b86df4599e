#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "jacobitk/catalog.hpp"
#include "support.hpp"

using namespace jacobitk;
using namespace test_support;

namespace {

std::string error_of(const std::string& text) {
  try {
    build_structure(parse_definition(text, "t"));
  } catch (const InputError& e) {
    return e.what();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("parse errors carry line and column") {
  CHECK(error_of("name = a\nkind = poisson\ncoords = x y\npi.xy = 1 +\n").rfind("t:4:", 0) == 0);
  CHECK(error_of("name = a\nkind = poisson\ncoords = x y\npi.xq = 1\n") == "t:4:1: bad index label in 'pi.xq'");
  CHECK(error_of("name = a\nkind = bogus\ncoords = x y\n") == "t:2:8: unknown kind 'bogus'");
  CHECK(error_of("name = a\nkind = poisson\ncoords = x y\npi.xy = 1\npi.xy = 2\n") ==
        "t:5:1: duplicate key 'pi.xy'");
  CHECK(error_of("name = a\nkind = poisson\ncoords = x y\nfoo = 1\n").find("unknown key") != std::string::npos);
  CHECK_FALSE(error_of("name = a\nkind = poisson\ncoords = x y\npi.xy = u\n").empty());
}

TEST_CASE("index labels: compact for single-letter coordinates, dotted otherwise") {
  auto c = make_chart({"x", "y", "z"});
  CHECK(index_label(*c, {0, 2}) == "xz");
  CHECK(index_label(*c, {0, 2}, true) == "x.z");
  auto c5 = make_chart({"x1", "y1", "z"});
  CHECK(index_label(*c5, {0, 1}) == "x1.y1");
}

TEST_CASE("compact and dotted keys describe the same component") {
  const char* compact = "name = a\nkind = poisson\ncoords = x y z\npi.xz = -y\n";
  const char* dotted = "name = a\nkind = poisson\ncoords = x y z\npi.x.z = -y\n";
  const char* swapped = "name = a\nkind = poisson\ncoords = x y z\npi.zx = y\n";
  std::string a = serialize(build_structure(parse_definition(compact)));
  CHECK(a == serialize(build_structure(parse_definition(dotted))));
  CHECK(a == serialize(build_structure(parse_definition(swapped))));
}

TEST_CASE("excluded loci are kept and avoided by sampling") {
  Structure s = build_structure(
      parse_definition("name = a\nkind = poisson\ncoords = x y\npi.xy = 1/x\nexcluded = x\n"));
  CHECK(serialize(s).find("excluded = x") != std::string::npos);
  Samples pts(s.chart, 50, 0);
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK(std::abs(pts[k][0]) > 1e-6);
}

TEST_CASE("fixtures serialize to their golden files and round-trip") {
  for (const auto& f : catalog()) {
    CAPTURE(f.name);
    Structure s = load(f.name);
    std::string text = serialize(s);
    CHECK(text == read_file(std::string(JACOBITK_GOLDEN_DIR) + "/" + f.name + ".txt"));
    CHECK(serialize(build_structure(parse_definition(text))) == text);
    CHECK(to_json(s)["name"] == f.name);
  }
}

TEST_CASE("catalog contents") {
  CHECK(catalog().size() == 8);
  std::set<std::string> names;
  int counterexamples = 0;
  for (const auto& f : catalog()) {
    names.insert(f.name);
    counterexamples += f.counterexample ? 1 : 0;
    CHECK_NOTHROW(f.expected_verdict(defining_check(f.kind)));
  }
  CHECK(names.size() == 8);
  CHECK(counterexamples == 1);
  CHECK_THROWS_AS(find_fixture("no-such-fixture"), InputError);
  CHECK_THROWS_AS(find_fixture("contact-r3").expected_verdict("no.such-check"), std::out_of_range);
  CHECK(defining_check(Kind::contact) == "contact.volume");
  CHECK(defining_check(Kind::lcs_with_metric) == "lcs.is-lcs");
}

TEST_CASE("load builds what each kind promises") {
  Structure c = load("contact-r3");
  CHECK(c.contact.has_value());
  CHECK(c.jacobi.has_value());
  CHECK(c.g.has_value());
  Structure l = load("lcs-broken");
  CHECK(l.lcs.has_value());
  CHECK_FALSE(l.g.has_value());
  Structure k = load("kenmotsu-half");
  CHECK(k.acm.has_value());
  CHECK(k.lambda_choice == "metric");
}
