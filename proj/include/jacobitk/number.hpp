#pragma once

#include <cstdint>
#include <string>

namespace jacobitk {

/// A numeric constant: an exact rational num/den (den > 0, reduced) or an
/// IEEE double. Exact arithmetic that would overflow 64 bits degrades to a
/// double instead of wrapping.
class Number {
 public:
  Number() = default;
  Number(std::int64_t n) : num_(n) {}  // NOLINT(implicit)

  static Number rational(std::int64_t num, std::int64_t den);
  static Number real(double v);

  bool is_exact() const { return exact_; }
  bool is_zero() const;
  bool is_one() const;
  bool is_minus_one() const;
  bool is_integer() const { return exact_ && den_ == 1; }
  bool is_negative() const;

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const;

  Number operator-() const;
  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);
  Number pow(int k) const;
  Number abs() const { return is_negative() ? -*this : *this; }

  /// Total order used for canonical sorting (exact values before doubles
  /// of equal magnitude).
  friend int compare(const Number& a, const Number& b);
  friend bool operator==(const Number& a, const Number& b) { return compare(a, b) == 0; }

  std::size_t hash() const;

  /// Printed in the expression grammar: "3", "-2", "1/2", "0.25", "1.0e+30".
  std::string str() const;

 private:
  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double value_ = 0.0;
};

/// Total order; exact values sort before floating ones.
int compare(const Number& a, const Number& b);

}  // namespace jacobitk
