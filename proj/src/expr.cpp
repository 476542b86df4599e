#include "jacobitk/expr.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <unordered_map>
#include <utility>

namespace jacobitk {

struct ExprFactory {
  static Expr make(Node n) {
    n.hash = compute_hash(n);
    return Expr(std::make_shared<const Node>(std::move(n)));
  }

  static std::size_t compute_hash(const Node& n) {
    std::size_t h = static_cast<std::size_t>(n.op) * 0x100000001b3ULL + 0xcbf29ce484222325ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(static_cast<std::size_t>(static_cast<std::int64_t>(n.ival)));
    if (n.op == Op::constant) mix(n.value.hash());
    for (const auto& a : n.args) mix(a.hash());
    return h;
  }
};

namespace {

Expr make_node(Op op, std::vector<Expr> args, int ival, bool canonical, Number value = {}) {
  Node n;
  n.op = op;
  n.args = std::move(args);
  n.ival = ival;
  n.canonical = canonical;
  n.value = value;
  return ExprFactory::make(std::move(n));
}

const Expr& one() {
  static const Expr e = Expr::constant(Number(1));
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// Basic accessors

Expr::Expr() : Expr(Number(0)) {}
Expr::Expr(std::int64_t v) : Expr(Number(v)) {}
Expr::Expr(const Number& v) : node_(constant(v).node_) {}

Expr Expr::constant(const Number& v) { return make_node(Op::constant, {}, 0, true, v); }

Expr Expr::coordinate(int index) {
  if (index < 0) throw std::invalid_argument("negative coordinate index");
  return make_node(Op::coordinate, {}, index, true);
}

Expr Expr::raw(Op op, std::vector<Expr> args, int exponent) {
  std::size_t want = 0;
  switch (op) {
    case Op::constant:
    case Op::coordinate:
      throw std::invalid_argument("use Expr::constant / Expr::coordinate for leaves");
    case Op::exp:
    case Op::ln:
    case Op::sin:
    case Op::cos:
    case Op::neg:
    case Op::pow:
      want = 1;
      break;
    case Op::sub:
    case Op::div:
      want = 2;
      break;
    case Op::add:
    case Op::mul:
      if (args.size() < 2) throw std::invalid_argument("add/mul need at least two operands");
      want = args.size();
      break;
  }
  if (args.size() != want) throw std::invalid_argument("wrong operand count for expression node");
  if (op == Op::div && args[1].is_zero()) {
    throw std::domain_error("division by the literal constant zero");
  }
  return make_node(op, std::move(args), op == Op::pow ? exponent : 0, false);
}

Op Expr::op() const { return node_->op; }
const Number& Expr::value() const { return node_->value; }
int Expr::coordinate_index() const { return node_->ival; }
int Expr::exponent() const { return node_->ival; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }
bool Expr::is_canonical() const { return node_->canonical; }
bool Expr::is_zero() const { return op() == Op::constant && value().is_zero(); }
bool Expr::is_one() const { return op() == Op::constant && value().is_one(); }

int Expr::max_coordinate() const {
  if (op() == Op::coordinate) return coordinate_index();
  int m = -1;
  for (const auto& a : args()) m = std::max(m, a.max_coordinate());
  return m;
}

std::size_t Expr::size() const {
  std::size_t s = 1;
  for (const auto& a : args()) s += a.size();
  return s;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return true;
  if (a.hash() != b.hash()) return false;
  if (a.op() != b.op()) return false;
  const Node& na = *a.id();
  const Node& nb = *b.id();
  if (na.ival != nb.ival) return false;
  if (na.op == Op::constant) return na.value == nb.value && na.value.is_exact() == nb.value.is_exact();
  if (na.args.size() != nb.args.size()) return false;
  for (std::size_t i = 0; i < na.args.size(); ++i) {
    if (!(na.args[i] == nb.args[i])) return false;
  }
  return true;
}

int compare(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return 0;
  if (a.op() != b.op()) return static_cast<int>(a.op()) < static_cast<int>(b.op()) ? -1 : 1;
  switch (a.op()) {
    case Op::constant:
      return jacobitk::compare(a.value(), b.value());
    case Op::coordinate:
      return a.coordinate_index() < b.coordinate_index() ? -1
             : a.coordinate_index() > b.coordinate_index() ? 1
                                                            : 0;
    case Op::pow: {
      int c = compare(a.args()[0], b.args()[0]);
      if (c != 0) return c;
      return a.exponent() < b.exponent() ? -1 : a.exponent() > b.exponent() ? 1 : 0;
    }
    default:
      break;
  }
  const auto& x = a.args();
  const auto& y = b.args();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(x[i], y[i]);
    if (c != 0) return c;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

// ---------------------------------------------------------------------------
// Canonical algebra

namespace {

constexpr int kExpandPowerLimit = 8;

struct Factor {
  Expr base;
  int power;
};

struct Term {
  Number coeff;
  Expr mono;  // canonical monomial without coefficient, or the constant 1
};

// Splits a canonical term into coefficient and monomial.
Term split_term(const Expr& t) {
  if (t.op() == Op::constant) return {t.value(), one()};
  if (t.op() == Op::mul && t.args().front().op() == Op::constant) {
    const auto& a = t.args();
    if (a.size() == 2) return {a[0].value(), a[1]};
    std::vector<Expr> rest(a.begin() + 1, a.end());
    return {a[0].value(), make_node(Op::mul, std::move(rest), 0, true)};
  }
  return {Number(1), t};
}

void append_factors(const Expr& mono, std::vector<Factor>& out) {
  if (mono.is_one()) return;
  if (mono.op() == Op::mul) {
    for (const auto& f : mono.args()) append_factors(f, out);
    return;
  }
  if (mono.op() == Op::pow) {
    out.push_back({mono.args()[0], mono.exponent()});
    return;
  }
  out.push_back({mono, 1});
}

Expr power_node(const Expr& base, int k) {
  if (k == 1) return base;
  return make_node(Op::pow, {base}, k, true);
}

Expr expand_power(const Expr& sum, int k);

// Builds coeff * prod(factors) canonically. Factors with equal bases are
// merged. A sum base that ends up with a small positive power is expanded,
// so the result may itself be a sum.
Expr build_product(Number coeff, std::vector<Factor> factors) {
  if (coeff.is_zero()) return Expr(Number(0));
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return compare(a.base, b.base) < 0; });
  std::vector<Factor> merged;
  merged.reserve(factors.size());
  for (auto& f : factors) {
    if (!merged.empty() && merged.back().base == f.base) {
      merged.back().power += f.power;
    } else {
      merged.push_back(std::move(f));
    }
  }
  std::vector<Expr> children;
  std::vector<Expr> deferred;  // sums that have to be expanded
  for (const auto& f : merged) {
    if (f.power == 0) continue;
    if (f.base.op() == Op::add && f.power > 0 && f.power <= kExpandPowerLimit) {
      deferred.push_back(expand_power(f.base, f.power));
      continue;
    }
    children.push_back(power_node(f.base, f.power));
  }
  Expr result;
  if (children.empty()) {
    result = Expr::constant(coeff);
  } else if (coeff.is_one() && children.size() == 1) {
    result = children.front();
  } else {
    if (!coeff.is_one()) children.insert(children.begin(), Expr::constant(coeff));
    result = make_node(Op::mul, std::move(children), 0, true);
  }
  for (const auto& d : deferred) result = result * d;
  return result;
}

Expr build_sum(std::vector<Term> terms) {
  std::unordered_map<Expr, std::size_t, ExprHash> index;
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    auto it = index.find(t.mono);
    if (it == index.end()) {
      index.emplace(t.mono, merged.size());
      merged.push_back(std::move(t));
    } else {
      merged[it->second].coeff = merged[it->second].coeff + t.coeff;
    }
  }
  std::vector<Term> kept;
  kept.reserve(merged.size());
  for (auto& t : merged) {
    if (!t.coeff.is_zero()) kept.push_back(std::move(t));
  }
  if (kept.empty()) return Expr(Number(0));
  std::sort(kept.begin(), kept.end(), [](const Term& a, const Term& b) {
    bool ca = a.mono.is_one();
    bool cb = b.mono.is_one();
    if (ca != cb) return cb;  // constant term last
    return compare(a.mono, b.mono) < 0;
  });
  std::vector<Expr> children;
  children.reserve(kept.size());
  for (const auto& t : kept) {
    if (t.mono.is_one()) {
      children.push_back(Expr::constant(t.coeff));
    } else if (t.coeff.is_one()) {
      children.push_back(t.mono);
    } else {
      std::vector<Expr> f{Expr::constant(t.coeff)};
      if (t.mono.op() == Op::mul) {
        f.insert(f.end(), t.mono.args().begin(), t.mono.args().end());
      } else {
        f.push_back(t.mono);
      }
      children.push_back(make_node(Op::mul, std::move(f), 0, true));
    }
  }
  if (children.size() == 1) return children.front();
  return make_node(Op::add, std::move(children), 0, true);
}

void append_terms(const Expr& e, std::vector<Term>& out) {
  if (e.op() == Op::add) {
    for (const auto& t : e.args()) out.push_back(split_term(t));
  } else {
    out.push_back(split_term(e));
  }
}

Expr canon(const Expr& e) { return e.is_canonical() ? e : simplify(e); }

Expr add_canonical(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  std::vector<Term> terms;
  append_terms(a, terms);
  append_terms(b, terms);
  return build_sum(std::move(terms));
}

Expr multiply_terms(const Term& x, const Term& y) {
  std::vector<Factor> f;
  append_factors(x.mono, f);
  append_factors(y.mono, f);
  return build_product(x.coeff * y.coeff, std::move(f));
}

Expr mul_canonical(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr(Number(0));
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  std::vector<Term> ta;
  std::vector<Term> tb;
  append_terms(a, ta);
  append_terms(b, tb);
  if (ta.size() == 1 && tb.size() == 1) return multiply_terms(ta[0], tb[0]);
  std::vector<Term> out;
  out.reserve(ta.size() * tb.size());
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      Expr p = multiply_terms(x, y);
      append_terms(p, out);
    }
  }
  return build_sum(std::move(out));
}

Expr expand_power(const Expr& sum, int k) {
  Expr result = sum;
  for (int i = 1; i < k; ++i) result = mul_canonical(result, sum);
  return result;
}

Expr pow_canonical(const Expr& b, int k) {
  if (k == 0) return one();
  if (k == 1) return b;
  switch (b.op()) {
    case Op::constant:
      return Expr::constant(b.value().pow(k));
    case Op::pow:
      return pow_canonical(b.args()[0], b.exponent() * k);
    case Op::mul: {
      Number coeff(1);
      std::vector<Factor> f;
      for (const auto& c : b.args()) {
        if (c.op() == Op::constant) {
          coeff = c.value().pow(k);
        } else if (c.op() == Op::pow) {
          f.push_back({c.args()[0], c.exponent() * k});
        } else {
          f.push_back({c, k});
        }
      }
      return build_product(coeff, std::move(f));
    }
    case Op::add:
      if (k > 0 && k <= kExpandPowerLimit) return expand_power(b, k);
      return power_node(b, k);
    default:
      return power_node(b, k);
  }
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) { return add_canonical(canon(a), canon(b)); }
Expr operator*(const Expr& a, const Expr& b) { return mul_canonical(canon(a), canon(b)); }
Expr operator-(const Expr& a) { return mul_canonical(Expr::constant(Number(-1)), canon(a)); }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr pow(const Expr& base, int k) {
  Expr b = canon(base);
  if (k < 0 && b.is_zero()) throw std::domain_error("negative power of the literal constant zero");
  return pow_canonical(b, k);
}

Expr operator/(const Expr& a, const Expr& b) {
  Expr d = canon(b);
  if (d.is_zero()) throw std::domain_error("division by the literal constant zero");
  return canon(a) * pow_canonical(d, -1);
}

Expr exp(const Expr& a) {
  Expr c = canon(a);
  if (c.is_constant()) {
    if (c.value().is_zero()) return one();
    if (!c.value().is_exact()) return Expr::constant(Number::real(std::exp(c.value().to_double())));
  }
  return make_node(Op::exp, {c}, 0, true);
}

Expr ln(const Expr& a) {
  Expr c = canon(a);
  if (c.is_constant()) {
    if (c.value().is_one()) return Expr(Number(0));
    if (!c.value().is_exact() && c.value().to_double() > 0) {
      return Expr::constant(Number::real(std::log(c.value().to_double())));
    }
  }
  return make_node(Op::ln, {c}, 0, true);
}

Expr sin(const Expr& a) {
  Expr c = canon(a);
  if (c.is_constant()) {
    if (c.value().is_zero()) return Expr(Number(0));
    if (!c.value().is_exact()) return Expr::constant(Number::real(std::sin(c.value().to_double())));
  }
  return make_node(Op::sin, {c}, 0, true);
}

Expr cos(const Expr& a) {
  Expr c = canon(a);
  if (c.is_constant()) {
    if (c.value().is_zero()) return one();
    if (!c.value().is_exact()) return Expr::constant(Number::real(std::cos(c.value().to_double())));
  }
  return make_node(Op::cos, {c}, 0, true);
}

Expr simplify(const Expr& e) {
  if (e.is_canonical()) return e;
  const auto& a = e.args();
  switch (e.op()) {
    case Op::constant:
    case Op::coordinate:
      return e;
    case Op::exp:
      return exp(simplify(a[0]));
    case Op::ln:
      return ln(simplify(a[0]));
    case Op::sin:
      return sin(simplify(a[0]));
    case Op::cos:
      return cos(simplify(a[0]));
    case Op::neg:
      return -simplify(a[0]);
    case Op::pow:
      return pow(simplify(a[0]), e.exponent());
    case Op::sub:
      return simplify(a[0]) - simplify(a[1]);
    case Op::div:
      return simplify(a[0]) / simplify(a[1]);
    case Op::add: {
      Expr s = simplify(a[0]);
      for (std::size_t i = 1; i < a.size(); ++i) s = s + simplify(a[i]);
      return s;
    }
    case Op::mul: {
      Expr s = simplify(a[0]);
      for (std::size_t i = 1; i < a.size(); ++i) s = s * simplify(a[i]);
      return s;
    }
  }
  return e;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

class Differentiator {
 public:
  explicit Differentiator(int index) : index_(index) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr r = compute(e);
    memo_.emplace(e.id(), r);
    return r;
  }

 private:
  Expr compute(const Expr& e) {
    const auto& a = e.args();
    switch (e.op()) {
      case Op::constant:
        return Expr(Number(0));
      case Op::coordinate:
        return Expr(Number(e.coordinate_index() == index_ ? 1 : 0));
      case Op::exp:
        return (*this)(a[0]) * e;
      case Op::ln:
        return (*this)(a[0]) / a[0];
      case Op::sin:
        return (*this)(a[0]) * cos(a[0]);
      case Op::cos:
        return -((*this)(a[0]) * sin(a[0]));
      case Op::neg:
        return -(*this)(a[0]);
      case Op::pow: {
        Expr db = (*this)(a[0]);
        if (db.is_zero()) return db;
        return Expr(Number(e.exponent())) * pow(a[0], e.exponent() - 1) * db;
      }
      case Op::add: {
        Expr s;
        for (const auto& t : a) s += (*this)(t);
        return s;
      }
      case Op::sub:
        return (*this)(a[0]) - (*this)(a[1]);
      case Op::div: {
        Expr dn = (*this)(a[0]);
        Expr dd = (*this)(a[1]);
        return dn / a[1] - a[0] * dd / pow(a[1], 2);
      }
      case Op::mul: {
        Expr s;
        for (std::size_t i = 0; i < a.size(); ++i) {
          Expr d = (*this)(a[i]);
          if (d.is_zero()) continue;
          Expr p = d;
          for (std::size_t j = 0; j < a.size(); ++j) {
            if (j != i) p = p * a[j];
          }
          s += p;
        }
        return s;
      }
    }
    return Expr(Number(0));
  }

  int index_;
  std::unordered_map<const Node*, Expr> memo_;
};

}  // namespace

namespace {

struct DiffKey {
  Expr e;
  int index;
  friend bool operator==(const DiffKey& a, const DiffKey& b) {
    return a.index == b.index && a.e == b.e;
  }
};

struct DiffKeyHash {
  std::size_t operator()(const DiffKey& k) const {
    return k.e.hash() * 31 + static_cast<std::size_t>(k.index);
  }
};

struct DiffState {
  std::mutex mu;
  std::unordered_map<DiffKey, Expr, DiffKeyHash> cache;
  bool auditing = false;
  std::unordered_map<DiffKey, std::size_t, DiffKeyHash> audit_seen;
  std::vector<std::pair<Expr, int>> audit_log;
};

DiffState& diff_state() {
  static DiffState s;
  return s;
}

}  // namespace

Expr diff(const Expr& e, int index) {
  if (index < 0) throw std::invalid_argument("negative coordinate index");
  DiffState& st = diff_state();
  DiffKey key{e, index};
  {
    std::lock_guard<std::mutex> lock(st.mu);
    if (st.auditing && st.audit_seen.emplace(key, st.audit_log.size()).second) {
      st.audit_log.emplace_back(e, index);
    }
    if (auto it = st.cache.find(key); it != st.cache.end()) return it->second;
  }
  Expr r = Differentiator(index)(e);
  std::lock_guard<std::mutex> lock(st.mu);
  st.cache.emplace(std::move(key), r);
  return r;
}

void DiffAudit::start() {
  DiffState& st = diff_state();
  std::lock_guard<std::mutex> lock(st.mu);
  st.auditing = true;
  st.audit_seen.clear();
  st.audit_log.clear();
}

std::vector<std::pair<Expr, int>> DiffAudit::stop() {
  DiffState& st = diff_state();
  std::lock_guard<std::mutex> lock(st.mu);
  st.auditing = false;
  st.audit_seen.clear();
  return std::exchange(st.audit_log, {});
}

void clear_diff_cache() {
  DiffState& st = diff_state();
  std::lock_guard<std::mutex> lock(st.mu);
  st.cache.clear();
}

// ---------------------------------------------------------------------------
// Evaluation

Point::Point(std::vector<double> coords) : x_(std::move(coords)) {
  for (double v : x_) {
    if (!std::isfinite(v)) throw std::invalid_argument("point coordinates must be finite");
  }
}

namespace {

double eval_rec(const Expr& e, std::span<const double> x, std::span<const std::string> names) {
  const auto& a = e.args();
  auto fail = [&](const std::string& what) -> double {
    std::string sub = to_string(e, names);
    throw EvalError(what + " in " + sub, sub);
  };
  switch (e.op()) {
    case Op::constant:
      return e.value().to_double();
    case Op::coordinate:
      if (static_cast<std::size_t>(e.coordinate_index()) >= x.size()) {
        throw std::out_of_range("coordinate index outside the point dimension");
      }
      return x[e.coordinate_index()];
    case Op::exp:
      return std::exp(eval_rec(a[0], x, names));
    case Op::ln: {
      double v = eval_rec(a[0], x, names);
      if (!(v > 0.0)) return fail("logarithm of a non-positive value");
      return std::log(v);
    }
    case Op::sin:
      return std::sin(eval_rec(a[0], x, names));
    case Op::cos:
      return std::cos(eval_rec(a[0], x, names));
    case Op::neg:
      return -eval_rec(a[0], x, names);
    case Op::pow: {
      double b = eval_rec(a[0], x, names);
      int k = e.exponent();
      if (k < 0 && b == 0.0) return fail("division by zero");
      double r = 1.0;
      double p = b;
      unsigned n = static_cast<unsigned>(k < 0 ? -k : k);
      while (n) {
        if (n & 1u) r *= p;
        n >>= 1u;
        if (n) p *= p;
      }
      return k < 0 ? 1.0 / r : r;
    }
    case Op::mul: {
      double r = 1.0;
      for (const auto& t : a) r *= eval_rec(t, x, names);
      return r;
    }
    case Op::add: {
      double r = 0.0;
      for (const auto& t : a) r += eval_rec(t, x, names);
      return r;
    }
    case Op::sub:
      return eval_rec(a[0], x, names) - eval_rec(a[1], x, names);
    case Op::div: {
      double d = eval_rec(a[1], x, names);
      if (d == 0.0) return fail("division by zero");
      return eval_rec(a[0], x, names) / d;
    }
  }
  return 0.0;
}

}  // namespace

double eval(const Expr& e, std::span<const double> x, std::span<const std::string> names) {
  return eval_rec(e, x, names);
}

}  // namespace jacobitk
