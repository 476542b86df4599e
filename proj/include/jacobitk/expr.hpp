#pragma once

// Symbolic scalar expressions over chart coordinates.
//
// An Expr is an immutable, shareable handle to an expression tree. Two
// families of constructors exist:
//
//  * Expr::raw(...) builds a node exactly as given. The parser uses it, so a
//    parsed string keeps its shape.
//  * The arithmetic operators and the function helpers (exp, ln, sin, cos,
//    pow) always return expressions in canonical form: an expanded sum of
//    terms, each term an exact (or floating) coefficient times a sorted
//    product of powers of atoms. Atoms are coordinates, function
//    applications, and sums that carry a negative (or large) exponent.
//
// simplify() maps any tree to its canonical form. Canonical forms are stable:
// equal canonical trees print identically and hash identically.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jacobitk/number.hpp"

namespace jacobitk {

enum class Op : std::uint8_t {
  constant,
  coordinate,
  exp,
  ln,
  sin,
  cos,
  pow,
  mul,
  add,
  neg,
  sub,
  div,
};

struct Node;

class Expr {
 public:
  /// The zero constant.
  Expr();
  Expr(std::int64_t v);  // NOLINT(implicit)
  Expr(int v) : Expr(static_cast<std::int64_t>(v)) {}  // NOLINT(implicit)
  Expr(const Number& v);  // NOLINT(implicit)

  static Expr constant(const Number& v);
  static Expr coordinate(int index);
  /// Builds the node verbatim. `exponent` is only read for Op::pow.
  static Expr raw(Op op, std::vector<Expr> args, int exponent = 0);

  Op op() const;
  const Number& value() const;
  int coordinate_index() const;
  int exponent() const;
  const std::vector<Expr>& args() const;
  std::size_t hash() const;
  bool is_canonical() const;

  bool is_constant() const { return op() == Op::constant; }
  bool is_zero() const;
  bool is_one() const;

  /// Largest coordinate index referenced, or -1.
  int max_coordinate() const;
  /// Number of nodes in the tree (shared subtrees counted each time).
  std::size_t size() const;

  const Node* id() const { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  friend struct ExprFactory;
};

struct Node {
  Op op = Op::constant;
  bool canonical = false;
  int ival = 0;  // coordinate index or integer exponent
  Number value;
  std::vector<Expr> args;
  std::size_t hash = 0;
};

/// Total structural order on expressions; used for canonical sorting.
int compare(const Expr& a, const Expr& b);

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

// Canonical arithmetic.
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr pow(const Expr& base, int k);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);

/// Canonical form of an arbitrary tree; value-preserving wherever the input
/// is defined.
Expr simplify(const Expr& e);

/// Exact partial derivative with respect to coordinate `index`. Results are
/// cached process-wide.
Expr diff(const Expr& e, int index);
void clear_diff_cache();

/// Collects every distinct (expression, index) pair handed to diff() between
/// start() and stop(). The finite-difference hygiene check replays them.
struct DiffAudit {
  static void start();
  static std::vector<std::pair<Expr, int>> stop();
};

// ---------------------------------------------------------------------------
// Evaluation

/// A sample point in chart coordinates. Entries must be finite.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  std::size_t dim() const { return x_.size(); }
  double operator[](std::size_t i) const { return x_[i]; }
  std::span<const double> coords() const { return x_; }

 private:
  std::vector<double> x_;
};

/// Raised when evaluation hits a division by zero, a negative power of zero
/// or a logarithm of a non-positive value.
class EvalError : public std::runtime_error {
 public:
  EvalError(const std::string& what, std::string subexpression)
      : std::runtime_error(what), subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

double eval(const Expr& e, std::span<const double> x, std::span<const std::string> names = {});
inline double eval(const Expr& e, const Point& p, std::span<const std::string> names = {}) {
  return eval(e, p.coords(), names);
}

// ---------------------------------------------------------------------------
// Text form

/// Prints in the same grammar `parse` accepts. Coordinates without a name are
/// printed as x0, x1, ...
std::string to_string(const Expr& e, std::span<const std::string> names = {});

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  /// Zero-based byte offset into the parsed text.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar: infix + - * / ^, unary minus, parentheses, exp/ln/sin/cos calls,
/// numeric literals. Integer literals are exact; decimal literals are
/// doubles; `^` takes an integer literal exponent. Identifiers must be listed
/// in `names`.
Expr parse(std::string_view text, std::span<const std::string> names);

}  // namespace jacobitk
