#include "jacobitk/derive.hpp"

#include <algorithm>
#include <memory>

#include "jacobitk/jacobi_algebroid.hpp"
#include "jacobitk/metric_connection.hpp"

namespace jacobitk {

namespace {

std::string coefficient_times(const Chart& chart, const Expr& c, const std::string& unit) {
  if (c == Expr(1)) return unit;
  if (c == Expr(-1)) return "-" + unit;
  std::string t = chart.print(c);
  if (t.find(' ') != std::string::npos) t = "(" + t + ")";
  return t + "*" + unit;
}

std::string combine(const Chart& chart, const std::vector<Expr>& comps, const std::string& prefix) {
  std::string out;
  for (int i = 0; i < chart.dim(); ++i) {
    Expr c = simplify(comps[static_cast<std::size_t>(i)]);
    if (c.is_zero()) continue;
    std::string term = coefficient_times(chart, c, prefix + chart.names()[static_cast<std::size_t>(i)]);
    if (out.empty()) {
      out = term;
    } else if (term[0] == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

std::vector<Expr> components(const Multivector& v) {
  std::vector<Expr> c;
  for (std::size_t k = 0; k < v.size(); ++k) c.push_back(v.at(k));
  return c;
}

std::vector<Expr> components(const Form& v) {
  std::vector<Expr> c;
  for (std::size_t k = 0; k < v.size(); ++k) c.push_back(v.at(k));
  return c;
}

template <class T>
void alternating_lines(std::vector<std::string>& out, const std::string& prefix, const T& t) {
  const Chart& chart = *t.chart();
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto& tup = t.tuple(k);
    std::vector<int> idx(tup.begin(), tup.begin() + t.degree());
    out.push_back(prefix + "." + index_label(chart, idx) + " = " + chart.print(simplify(t.at(k))));
  }
}

void need(bool ok, const std::string& object, const Structure& s, const std::string& what) {
  if (!ok) throw InputError("cannot derive " + object + " for kind " + to_string(s.kind) + ": " + what);
}

}  // namespace

std::string format_vector(const VectorField& x) { return combine(*x.chart(), components(x), "d/d"); }

std::string format_covector(const OneForm& a) { return combine(*a.chart(), components(a), "d"); }

const std::vector<std::string>& derivable_objects() {
  static const std::vector<std::string> names = {"reeb", "pi", "lambda", "sharp", "christoffel", "D", "J", "defects"};
  return names;
}

std::vector<std::string> derive_object(const Structure& s, const std::string& object) {
  if (std::find(derivable_objects().begin(), derivable_objects().end(), object) == derivable_objects().end()) {
    throw InputError("unknown object '" + object + "'");
  }
  const Chart& chart = *s.chart;
  int n = chart.dim();
  std::vector<std::string> out;
  if (object == "reeb") {
    if (!s.contact_error.empty()) throw InputError("cannot derive reeb: " + s.contact_error);
    need(s.contact || s.acm, object, s, "no contact form");
    const VectorField& xi = s.contact ? s.contact->reeb : s.acm->xi;
    out.push_back("xi = " + format_vector(xi));
    for (int i = 0; i < n; ++i) {
      out.push_back("xi." + index_label(chart, {i}) + " = " + chart.print(simplify(xi[i])));
    }
    return out;
  }
  need(s.jacobi.has_value(), object, s, s.contact_error.empty() ? "no Jacobi pair" : s.contact_error);
  const JacobiData& j = *s.jacobi;
  if (object == "pi") {
    alternating_lines(out, "pi", j.pi());
    out.push_back("xi = " + format_vector(j.xi()));
    return out;
  }
  if (object == "lambda") {
    const OneForm* lambda = &j.require_lambda();
    std::unique_ptr<MetricPackage> pkg;
    if (s.lambda_choice == "metric") {
      pkg = std::make_unique<MetricPackage>(j, *s.g);
      lambda = &pkg->lambda();
    }
    out.push_back("lambda = " + format_covector(*lambda) + "  # " + s.lambda_choice);
    for (int i = 0; i < n; ++i) {
      out.push_back("lambda." + index_label(chart, {i}) + " = " + chart.print(simplify((*lambda)[i])));
    }
    return out;
  }
  if (object == "sharp") {
    for (int i = 0; i < n; ++i) {
      out.push_back("sharp(d" + chart.names()[static_cast<std::size_t>(i)] +
                    ") = " + format_vector(sharp_pi_xi(j, OneForm::basis(s.chart, i))));
    }
    return out;
  }
  if (object == "defects") {
    alternating_lines(out, "schouten", jacobi_schouten_defect(j.pi(), j.xi()));
    alternating_lines(out, "lie", jacobi_lie_defect(j.pi(), j.xi()));
    if (s.g) {
      ContravariantD D(std::make_shared<const MetricPackage>(j, *s.g));
      std::vector<OneForm> dx;
      for (int i = 0; i < n; ++i) dx.push_back(OneForm::basis(s.chart, i));
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          for (int c = b + 1; c < n; ++c) {
            out.push_back("compatibility." + index_label(chart, {a, b, c}, true) + " = " +
                          chart.print(simplify(D.compatibility_defect(dx[a], dx[b], dx[c]))));
          }
        }
      }
    }
    return out;
  }
  need(s.g.has_value(), object, s, "no metric");
  auto pkg = std::make_shared<const MetricPackage>(j, *s.g);
  if (object == "christoffel") {
    for (int k = 0; k < n; ++k) {
      for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
          Expr g = simplify(pkg->lc().gamma(k, a, b));
          if (!g.is_zero()) out.push_back("Gamma." + index_label(chart, {k, a, b}, true) + " = " + chart.print(g));
        }
      }
    }
    if (out.empty()) out.push_back("# all Christoffel symbols vanish");
    return out;
  }
  if (object == "J") {
    for (int k = 0; k < n; ++k) {
      for (int a = 0; a < n; ++a) {
        Expr e = simplify(pkg->J()(k, a));
        if (!e.is_zero()) out.push_back("J." + index_label(chart, {k, a}, true) + " = " + chart.print(e));
      }
    }
    if (out.empty()) out.push_back("# J vanishes");
    return out;
  }
  // D
  ContravariantD D(pkg);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      out.push_back("D(d" + chart.names()[static_cast<std::size_t>(a)] + ", d" +
                    chart.names()[static_cast<std::size_t>(b)] + ") = " + format_covector(D.basis(a, b)));
    }
  }
  return out;
}

}  // namespace jacobitk
