#include "jacobitk/structure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace jacobitk {

namespace {

const std::vector<std::pair<Kind, std::string>>& kind_names() {
  static const std::vector<std::pair<Kind, std::string>> names = {
      {Kind::poisson, "poisson"},
      {Kind::jacobi, "jacobi"},
      {Kind::contact, "contact"},
      {Kind::almost_contact_metric, "almost-contact-metric"},
      {Kind::lcs, "lcs"},
      {Kind::lcs_with_metric, "lcs-with-metric"},
  };
  return names;
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

[[noreturn]] void fail_at(const std::string& source, int line, int column, const std::string& msg) {
  std::string where = source + ":" + std::to_string(line);
  if (column > 0) where += ":" + std::to_string(column);
  throw InputError(where + ": " + msg);
}

// Number of indices and the symmetry of each component family.
enum class Shape { scalar, vector, antisymmetric, symmetric, mixed };

struct Family {
  std::string prefix;
  Shape shape;
};

const std::vector<Family>& families() {
  static const std::vector<Family> f = {
      {"pi", Shape::antisymmetric}, {"xi", Shape::vector},        {"eta", Shape::vector},
      {"phi", Shape::mixed},        {"omega", Shape::antisymmetric}, {"theta", Shape::vector},
      {"f", Shape::scalar},         {"g", Shape::symmetric},      {"lambda", Shape::vector},
  };
  return f;
}

int index_count(Shape s) {
  switch (s) {
    case Shape::scalar:
      return 0;
    case Shape::vector:
      return 1;
    default:
      return 2;
  }
}

std::set<std::string> allowed_families(Kind k) {
  switch (k) {
    case Kind::poisson:
      return {"pi", "g"};
    case Kind::jacobi:
      return {"pi", "xi", "g", "lambda"};
    case Kind::contact:
      return {"eta", "g", "phi", "lambda"};
    case Kind::almost_contact_metric:
      return {"phi", "xi", "eta", "g", "lambda"};
    case Kind::lcs:
      return {"omega", "theta", "f", "lambda"};
    case Kind::lcs_with_metric:
      return {"omega", "theta", "f", "g", "lambda"};
  }
  return {};
}

std::set<std::string> required_families(Kind k) {
  switch (k) {
    case Kind::poisson:
      return {"pi"};
    case Kind::jacobi:
      return {"pi", "xi"};
    case Kind::contact:
      return {"eta"};
    case Kind::almost_contact_metric:
      return {"phi", "xi", "eta", "g"};
    case Kind::lcs:
      return {"omega", "theta"};
    case Kind::lcs_with_metric:
      return {"omega", "theta", "g"};
  }
  return {};
}

std::vector<int> parse_label(const Chart& chart, std::string_view label, int count) {
  std::vector<std::string> parts;
  if (count == 0) {
    if (!label.empty()) return {};
    return {};
  }
  std::size_t start = 0;
  while (true) {
    std::size_t dot = label.find('.', start);
    parts.emplace_back(label.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  if (static_cast<int>(parts.size()) == 1 && count > 1) {
    // Compact form: one letter per index.
    const std::string s = parts.front();
    if (static_cast<int>(s.size()) != count) return {};
    parts.clear();
    for (char c : s) parts.emplace_back(1, c);
  }
  if (static_cast<int>(parts.size()) != count) return {};
  std::vector<int> idx;
  for (const auto& p : parts) {
    int i = chart.index_of(p);
    if (i < 0) return {};
    idx.push_back(i);
  }
  return idx;
}

bool uses_compact_labels(const Chart& chart) {
  return std::all_of(chart.names().begin(), chart.names().end(),
                     [](const std::string& n) { return n.size() == 1; });
}

std::string label(const Chart& chart, const std::vector<int>& idx, bool force_dots = false) {
  bool compact = !force_dots && uses_compact_labels(chart);
  std::string s;
  bool first = true;
  for (int i : idx) {
    if (!first && !compact) s += '.';
    s += chart.names()[static_cast<std::size_t>(i)];
    first = false;
  }
  return s;
}

struct Collected {
  std::map<std::string, std::vector<std::pair<std::vector<int>, Expr>>> values;
  std::set<std::string> present;
};

ExprMatrix square_matrix(const Chart& chart, const std::vector<std::pair<std::vector<int>, Expr>>& v,
                         bool symmetric) {
  ExprMatrix m(chart.dim());
  for (const auto& [idx, e] : v) {
    m(idx[0], idx[1]) = e;
    if (symmetric) m(idx[1], idx[0]) = e;
  }
  return m;
}

template <class T>
T vector_like(const ChartPtr& chart, const std::vector<std::pair<std::vector<int>, Expr>>& v) {
  T r(chart);
  for (const auto& [idx, e] : v) r[idx[0]] = e;
  return r;
}

template <Variance V>
Alternating<V> two_tensor(const ChartPtr& chart,
                          const std::vector<std::pair<std::vector<int>, Expr>>& v) {
  Alternating<V> r(chart, 2);
  for (const auto& [idx, e] : v) r.set(std::span<const int>(idx), e);
  return r;
}

}  // namespace

std::string to_string(Kind k) {
  for (const auto& [kind, name] : kind_names()) {
    if (kind == k) return name;
  }
  return "poisson";
}

Kind parse_kind(std::string_view s) {
  for (const auto& [kind, name] : kind_names()) {
    if (name == s) return kind;
  }
  throw InputError("unknown kind '" + std::string(s) + "'");
}

StructureDefinition parse_definition(std::string_view text, std::string source) {
  StructureDefinition def;
  def.source = source;
  std::set<std::string> seen;
  bool have_kind = false;
  bool have_coords = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::size_t eq = raw.find('=');
    if (eq == std::string_view::npos) fail_at(source, line_no, 0, "expected 'key = value'");
    std::string key = trim(raw.substr(0, eq));
    std::string_view rest = raw.substr(eq + 1);
    std::size_t lead = 0;
    while (lead < rest.size() && std::isspace(static_cast<unsigned char>(rest[lead]))) ++lead;
    std::string value = trim(rest);
    int value_column = static_cast<int>(eq + 1 + lead) + 1;
    if (key.empty()) fail_at(source, line_no, 1, "missing key");
    if (key != "excluded" && !seen.insert(key).second) {
      fail_at(source, line_no, 1, "duplicate key '" + key + "'");
    }
    if (key == "name") {
      def.name = value;
    } else if (key == "kind") {
      try {
        def.kind = parse_kind(value);
      } catch (const InputError& e) {
        fail_at(source, line_no, value_column, e.what());
      }
      have_kind = true;
    } else if (key == "coords") {
      def.coords = split_words(value);
      if (def.coords.empty()) fail_at(source, line_no, value_column, "no coordinates given");
      have_coords = true;
    } else if (key == "excluded") {
      if (value.empty()) fail_at(source, line_no, value_column, "empty excluded locus");
      def.excluded.push_back(value);
    } else if (key == "lambda") {
      static const std::set<std::string> choices = {"eta", "theta", "metric", "zero"};
      if (!choices.count(value)) {
        fail_at(source, line_no, value_column,
                "lambda must be one of eta, theta, metric, zero (or lambda.<i> components)");
      }
      def.lambda = value;
    } else {
      if (value.empty()) fail_at(source, line_no, value_column, "empty expression");
      def.components.push_back({key, value, line_no, value_column});
    }
    if (end == text.size()) break;
  }
  if (!have_kind) throw InputError(source + ": missing 'kind'");
  if (!have_coords) throw InputError(source + ": missing 'coords'");
  if (def.name.empty()) def.name = source;
  return def;
}

Structure build_structure(const StructureDefinition& def) {
  Structure s;
  s.name = def.name;
  s.kind = def.kind;
  try {
    s.chart = make_chart(def.coords, def.excluded);
  } catch (const GeometryError& e) {
    throw InputError(def.source + ": " + e.what());
  } catch (const ParseError& e) {
    throw InputError(def.source + ": excluded locus: " + e.what());
  }
  const Chart& chart = *s.chart;

  Collected c;
  auto allowed = allowed_families(def.kind);
  std::set<std::pair<std::string, std::vector<int>>> filled;
  for (const auto& entry : def.components) {
    std::string prefix = entry.key.substr(0, entry.key.find('.'));
    std::string rest = entry.key.size() > prefix.size() ? entry.key.substr(prefix.size() + 1) : "";
    auto fam = std::find_if(families().begin(), families().end(),
                            [&](const Family& f) { return f.prefix == prefix; });
    if (fam == families().end()) fail_at(def.source, entry.line, 1, "unknown key '" + entry.key + "'");
    if (!allowed.count(prefix)) {
      fail_at(def.source, entry.line, 1,
              "'" + prefix + "' components do not belong to kind " + to_string(def.kind));
    }
    if (prefix == "lambda" && !def.lambda.empty() && def.lambda != "components") {
      fail_at(def.source, entry.line, 1, "lambda given both as a choice and as components");
    }
    int count = index_count(fam->shape);
    if (count == 0 && entry.key != prefix) fail_at(def.source, entry.line, 1, "'" + prefix + "' takes no index");
    std::vector<int> idx = parse_label(chart, rest, count);
    if (count > 0 && static_cast<int>(idx.size()) != count) {
      fail_at(def.source, entry.line, 1, "bad index label in '" + entry.key + "'");
    }
    if (fam->shape == Shape::antisymmetric && idx[0] == idx[1]) {
      fail_at(def.source, entry.line, 1, "diagonal component of an antisymmetric tensor");
    }
    std::vector<int> canon = idx;
    if (fam->shape == Shape::antisymmetric || fam->shape == Shape::symmetric) {
      std::sort(canon.begin(), canon.end());
    }
    if (!filled.insert({prefix, canon}).second) {
      fail_at(def.source, entry.line, 1, "component '" + entry.key + "' given twice");
    }
    Expr e;
    try {
      e = chart.parse(entry.value);
    } catch (const ParseError& err) {
      fail_at(def.source, entry.line, entry.value_column + static_cast<int>(err.position()), err.what());
    }
    c.values[prefix].emplace_back(idx, e);
    c.present.insert(prefix);
  }
  for (const auto& req : required_families(def.kind)) {
    if (!c.present.count(req)) throw InputError(def.source + ": kind " + to_string(def.kind) +
                                                " needs '" + req + "' components");
  }
  auto get = [&](const std::string& p) -> const std::vector<std::pair<std::vector<int>, Expr>>& {
    static const std::vector<std::pair<std::vector<int>, Expr>> none;
    auto it = c.values.find(p);
    return it == c.values.end() ? none : it->second;
  };

  try {
    if (c.present.count("g")) s.g = MetricField(s.chart, square_matrix(chart, get("g"), true));
    if (c.present.count("eta")) s.eta = vector_like<OneForm>(s.chart, get("eta"));
    if (c.present.count("theta")) s.theta = vector_like<OneForm>(s.chart, get("theta"));
    if (c.present.count("phi")) s.phi = EndoField(s.chart, square_matrix(chart, get("phi"), false));
    if (c.present.count("omega")) s.omega = two_tensor<Variance::covariant>(s.chart, get("omega"));
    if (c.present.count("f")) s.f = get("f").front().second;
  } catch (const GeometryError& e) {
    throw InputError(def.source + ": " + e.what());
  }

  std::string choice = def.lambda;
  if (c.present.count("lambda")) choice = "components";
  if (choice.empty()) {
    switch (def.kind) {
      case Kind::contact:
      case Kind::almost_contact_metric:
        choice = "eta";
        break;
      case Kind::lcs:
      case Kind::lcs_with_metric:
        choice = "theta";
        break;
      default:
        choice = "zero";
    }
  }
  s.lambda_choice = choice;

  std::optional<Multivector> pi;
  std::optional<VectorField> xi;
  try {
    switch (def.kind) {
      case Kind::poisson:
        pi = two_tensor<Variance::contravariant>(s.chart, get("pi"));
        xi = VectorField(s.chart);
        break;
      case Kind::jacobi:
        pi = two_tensor<Variance::contravariant>(s.chart, get("pi"));
        xi = vector_like<VectorField>(s.chart, get("xi"));
        break;
      case Kind::contact:
        if (c.present.count("phi") != c.present.count("g")) {
          throw InputError(def.source + ": a contact metric needs both 'g' and 'phi'");
        }
        try {
          s.contact = contact_from(*s.eta);
        } catch (const GeometryError& e) {
          s.contact_error = e.what();
          break;
        }
        pi = s.contact->pi;
        xi = s.contact->reeb;
        if (s.g) s.acm = AlmostContactMetric{*s.phi, s.contact->reeb, *s.eta, *s.g};
        break;
      case Kind::almost_contact_metric: {
        xi = vector_like<VectorField>(s.chart, get("xi"));
        s.acm = AlmostContactMetric{*s.phi, *xi, *s.eta, *s.g};
        LeviCivita lc(*s.g);
        pi = almost_contact_pi(*s.acm, lc);
        break;
      }
      case Kind::lcs:
      case Kind::lcs_with_metric:
        s.lcs = lcs_from(*s.omega, *s.theta, s.f);
        pi = s.lcs->pi;
        xi = s.lcs->xi;
        break;
    }
  } catch (const GeometryError& e) {
    throw InputError(def.source + ": " + e.what());
  }

  if (pi) {
    std::optional<OneForm> lambda;
    if (choice == "zero") {
      lambda = OneForm(s.chart);
    } else if (choice == "eta") {
      if (!s.eta) throw InputError(def.source + ": lambda = eta needs eta components");
      lambda = *s.eta;
    } else if (choice == "theta") {
      if (!s.theta) throw InputError(def.source + ": lambda = theta needs theta components");
      lambda = *s.theta;
    } else if (choice == "components") {
      lambda = vector_like<OneForm>(s.chart, get("lambda"));
    } else if (choice == "metric") {
      if (!s.g) throw InputError(def.source + ": lambda = metric needs a metric");
      MetricPackage pkg(JacobiData(*pi, *xi), *s.g);
      lambda = pkg.lambda();
    }
    s.jacobi = JacobiData(*pi, *xi, lambda);
  }
  return s;
}

std::string serialize(const Structure& s) {
  const Chart& chart = *s.chart;
  std::ostringstream out;
  out << "name = " << s.name << "\n";
  out << "kind = " << to_string(s.kind) << "\n";
  out << "coords =";
  for (const auto& n : chart.names()) out << ' ' << n;
  out << "\n";
  for (const auto& e : chart.excluded()) out << "excluded = " << chart.print(e) << "\n";
  int n = chart.dim();
  auto line = [&](const std::string& key, const Expr& e) {
    if (!e.is_zero()) out << key << " = " << chart.print(e) << "\n";
  };
  auto vector_lines = [&](const std::string& p, const auto& v) {
    for (int i = 0; i < n; ++i) line(p + "." + label(chart, {i}), v[i]);
  };
  auto alt_lines = [&](const std::string& p, const auto& t) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      line(p + "." + label(chart, {t.tuple(k)[0], t.tuple(k)[1]}), t.at(k));
    }
  };
  bool lambda_components = s.lambda_choice == "components";
  switch (s.kind) {
    case Kind::poisson:
      alt_lines("pi", s.jacobi->pi());
      break;
    case Kind::jacobi:
      alt_lines("pi", s.jacobi->pi());
      vector_lines("xi", s.jacobi->xi());
      break;
    case Kind::contact:
      vector_lines("eta", *s.eta);
      break;
    case Kind::almost_contact_metric:
      vector_lines("xi", s.acm->xi);
      vector_lines("eta", *s.eta);
      break;
    case Kind::lcs:
    case Kind::lcs_with_metric:
      alt_lines("omega", *s.omega);
      vector_lines("theta", *s.theta);
      if (s.f) line("f", *s.f);
      break;
  }
  if (s.phi) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) line("phi." + label(chart, {i, j}, true), (*s.phi)(i, j));
    }
  }
  if (s.g) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) line("g." + label(chart, {i, j}), (*s.g)(i, j));
    }
  }
  if (lambda_components) {
    vector_lines("lambda", *s.jacobi->lambda());
  } else {
    out << "lambda = " << s.lambda_choice << "\n";
  }
  return out.str();
}

nlohmann::ordered_json to_json(const Structure& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["kind"] = to_string(s.kind);
  j["coords"] = s.chart->names();
  nlohmann::ordered_json ex = nlohmann::ordered_json::array();
  for (const auto& e : s.chart->excluded()) ex.push_back(s.chart->print(e));
  j["excluded"] = ex;
  nlohmann::ordered_json comps = nlohmann::ordered_json::object();
  std::istringstream in(serialize(s));
  for (std::string l; std::getline(in, l);) {
    auto eq = l.find(" = ");
    std::string key = l.substr(0, eq);
    if (key == "name" || key == "kind" || key == "coords" || key == "excluded" || key == "lambda") continue;
    comps[key] = l.substr(eq + 3);
  }
  j["components"] = comps;
  j["lambda"] = s.lambda_choice;
  return j;
}

std::string index_label(const Chart& chart, const std::vector<int>& idx, bool force_dots) {
  return label(chart, idx, force_dots);
}

}  // namespace jacobitk
