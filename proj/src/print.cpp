#include <optional>
#include <string>

#include "jacobitk/expr.hpp"

namespace jacobitk {

namespace {

// Binding strength of a printed fragment.
enum Prec : int { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

struct Printed {
  std::string text;
  int prec;
  bool leading_minus;
};

std::string wrap(const Printed& p, int min_prec, bool allow_minus) {
  if (p.prec < min_prec || (p.leading_minus && !allow_minus)) return "(" + p.text + ")";
  return p.text;
}

// The parser folds unary minus and division applied to constants; printing
// the folded value keeps print(parse(print(e))) == print(e) for raw trees.
std::optional<Number> folded_constant(const Expr& e) {
  switch (e.op()) {
    case Op::constant:
      return e.value();
    case Op::neg:
      if (auto v = folded_constant(e.args()[0])) return -*v;
      return std::nullopt;
    case Op::div: {
      auto l = folded_constant(e.args()[0]);
      auto r = folded_constant(e.args()[1]);
      if (l && r && !r->is_zero()) return *l / *r;
      return std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

const char* function_name(Op op) {
  switch (op) {
    case Op::exp:
      return "exp";
    case Op::ln:
      return "ln";
    case Op::sin:
      return "sin";
    case Op::cos:
      return "cos";
    default:
      return "?";
  }
}

class Printer {
 public:
  explicit Printer(std::span<const std::string> names) : names_(names) {}

  Printed print(const Expr& e) const {
    if (e.op() == Op::neg || e.op() == Op::div) {
      if (auto v = folded_constant(e)) return constant(*v);
    }
    switch (e.op()) {
      case Op::constant:
        return constant(e.value());
      case Op::coordinate: {
        auto i = static_cast<std::size_t>(e.coordinate_index());
        std::string name = i < names_.size() ? names_[i] : "x" + std::to_string(i);
        return {name, kAtom, false};
      }
      case Op::exp:
      case Op::ln:
      case Op::sin:
      case Op::cos:
        return {std::string(function_name(e.op())) + "(" + print(e.args()[0]).text + ")", kAtom,
                false};
      case Op::pow: {
        int k = e.exponent();
        std::string ex = k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k);
        return {wrap(print(e.args()[0]), kAtom, false) + "^" + ex, kPower, false};
      }
      case Op::neg:
        return {"-" + wrap(print(e.args()[0]), kPower, false), kUnary, true};
      case Op::sub: {
        Printed l = print(e.args()[0]);
        Printed r = print(e.args()[1]);
        return {wrap(l, kSum, true) + " - " + wrap(r, kProduct, false), kSum, l.leading_minus};
      }
      case Op::div: {
        Printed l = print(e.args()[0]);
        Printed r = print(e.args()[1]);
        return {wrap(l, kProduct, true) + "/" + wrap(r, kUnary, false), kProduct,
                l.leading_minus};
      }
      case Op::add:
        return e.is_canonical() ? canonical_sum(e) : raw_sum(e);
      case Op::mul:
        return e.is_canonical() ? canonical_product(e) : raw_product(e);
    }
    return {"?", kAtom, false};
  }

 private:
  static Printed constant(const Number& v) {
    std::string s = v.str();
    bool minus = v.is_negative();
    if (!v.is_exact()) return {s, minus ? kUnary : kAtom, minus};
    if (v.is_integer()) return {s, minus ? kUnary : kAtom, minus};
    return {s, kProduct, minus};
  }

  Printed raw_sum(const Expr& e) const {
    Printed first = print(e.args()[0]);
    std::string s = wrap(first, kSum, true);
    for (std::size_t i = 1; i < e.args().size(); ++i) {
      s += " + " + wrap(print(e.args()[i]), kProduct, false);
    }
    return {s, kSum, first.leading_minus};
  }

  Printed raw_product(const Expr& e) const {
    Printed first = print(e.args()[0]);
    std::string s = wrap(first, kProduct, true);
    for (std::size_t i = 1; i < e.args().size(); ++i) {
      s += "*" + wrap(print(e.args()[i]), kUnary, false);
    }
    return {s, kProduct, first.leading_minus};
  }

  static bool negative_term(const Expr& t) {
    if (t.op() == Op::constant) return t.value().is_negative();
    return t.op() == Op::mul && t.args()[0].op() == Op::constant &&
           t.args()[0].value().is_negative();
  }

  Printed canonical_sum(const Expr& e) const {
    const auto& terms = e.args();
    Printed first = print(terms[0]);
    std::string s = wrap(first, kSum, true);
    for (std::size_t i = 1; i < terms.size(); ++i) {
      if (negative_term(terms[i])) {
        s += " - " + wrap(print(-terms[i]), kProduct, false);
      } else {
        s += " + " + wrap(print(terms[i]), kProduct, false);
      }
    }
    return {s, kSum, first.leading_minus};
  }

  // coeff * numerator factors / (denominator factors), with the rational
  // coefficient's denominator folded into the quotient.
  Printed canonical_product(const Expr& e) const {
    Number coeff(1);
    std::vector<std::string> num;
    std::vector<Printed> den;
    for (const auto& f : e.args()) {
      if (f.op() == Op::constant) {
        coeff = f.value();
      } else if (f.op() == Op::pow && f.exponent() < 0) {
        int k = -f.exponent();
        if (k == 1) {
          den.push_back(print(f.args()[0]));
        } else {
          den.push_back(print(Expr::raw(Op::pow, {f.args()[0]}, k)));
        }
      } else {
        num.push_back(wrap(print(f), kUnary, false));
      }
    }
    bool minus = coeff.is_negative();
    Number mag = coeff.abs();
    std::vector<std::string> head;
    if (mag.is_exact()) {
      if (mag.num() != 1) head.push_back(std::to_string(mag.num()));
      if (mag.den() != 1) den.insert(den.begin(), Printed{std::to_string(mag.den()), kAtom, false});
    } else if (!mag.is_one()) {
      head.push_back(mag.str());
    }
    head.insert(head.end(), num.begin(), num.end());
    std::string s;
    for (std::size_t i = 0; i < head.size(); ++i) s += (i ? "*" : "") + head[i];
    if (s.empty()) s = "1";
    if (!den.empty()) {
      s += "/";
      if (den.size() == 1) {
        s += wrap(den[0], kUnary, false);
      } else {
        std::string d;
        for (std::size_t i = 0; i < den.size(); ++i) d += (i ? "*" : "") + wrap(den[i], kUnary, false);
        s += "(" + d + ")";
      }
    }
    if (minus) s = "-" + s;
    return {s, kProduct, minus};
  }

  std::span<const std::string> names_;
};

}  // namespace

std::string to_string(const Expr& e, std::span<const std::string> names) {
  return Printer(names).print(e).text;
}

}  // namespace jacobitk
