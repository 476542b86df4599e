#pragma once

// Plain-text structure definitions and the geometric objects built from them.
//
//   name = contact-r3
//   kind = contact
//   coords = x y z
//   excluded = t          (optional, repeatable)
//   eta.x = -y
//   eta.z = 1
//   g.xx = 1 + y^2
//   phi.x.y = 1           (phi^x_y)
//   lambda = eta          (eta | theta | metric | zero, or lambda.<i> components)
//
// Index labels are dotted ("pi.x1.y1"); with one-letter coordinates the dots
// between indices may be dropped ("pi.xy").

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jacobitk/geometries.hpp"

namespace jacobitk {

/// A malformed definition; the message carries "source:line[:column]".
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Kind { poisson, jacobi, contact, almost_contact_metric, lcs, lcs_with_metric };

std::string to_string(Kind k);
Kind parse_kind(std::string_view s);

struct DefinitionEntry {
  std::string key;
  std::string value;
  int line = 0;
  int value_column = 0;
};

struct StructureDefinition {
  std::string name;
  Kind kind = Kind::poisson;
  std::vector<std::string> coords;
  std::vector<std::string> excluded;
  std::vector<DefinitionEntry> components;
  /// "", "eta", "theta", "metric", "zero", or "components" when lambda.<i> keys are used.
  std::string lambda;
  std::string source = "<input>";
};

StructureDefinition parse_definition(std::string_view text, std::string source = "<input>");

/// Geometric data of a definition. Optional parts are present when the kind
/// provides them.
struct Structure {
  std::string name;
  Kind kind = Kind::poisson;
  ChartPtr chart;
  /// The pair (pi, xi) with the lambda chosen for the algebroid suites.
  std::optional<JacobiData> jacobi;
  std::optional<MetricField> g;
  std::optional<ContactStructure> contact;
  /// Set when a contact kind has a degenerate eta.
  std::string contact_error;
  std::optional<AlmostContactMetric> acm;
  std::optional<LcsStructure> lcs;
  std::string lambda_choice;
  /// Raw tensors as given in the definition.
  std::optional<OneForm> eta;
  std::optional<EndoField> phi;
  std::optional<Form> omega;
  std::optional<OneForm> theta;
  std::optional<Expr> f;
};

Structure build_structure(const StructureDefinition& def);

/// Component label such as "xy" or "x1.y1"; dots are kept when forced or when a
/// coordinate name is longer than one letter.
std::string index_label(const Chart& chart, const std::vector<int>& idx, bool force_dots = false);

/// Canonical text form: header lines, then nonzero components in a fixed order.
std::string serialize(const Structure& s);
nlohmann::ordered_json to_json(const Structure& s);

}  // namespace jacobitk
