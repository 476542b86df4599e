#include "jacobitk/number.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace jacobitk {

namespace {

using i128 = __int128;

bool fits(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() + 1 &&
         v <= std::numeric_limits<std::int64_t>::max();
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Number make_reduced(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) {
    return Number::real(static_cast<double>(num) / static_cast<double>(den));
  }
  return Number::rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Number Number::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Number r;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  r.num_ = num;
  r.den_ = den;
  return r;
}

Number Number::real(double v) {
  Number r;
  r.exact_ = false;
  r.value_ = v;
  return r;
}

bool Number::is_zero() const { return exact_ ? num_ == 0 : value_ == 0.0; }
bool Number::is_one() const { return exact_ ? (num_ == 1 && den_ == 1) : value_ == 1.0; }
bool Number::is_minus_one() const { return exact_ ? (num_ == -1 && den_ == 1) : value_ == -1.0; }
bool Number::is_negative() const { return exact_ ? num_ < 0 : value_ < 0.0; }

double Number::to_double() const {
  return exact_ ? static_cast<double>(num_) / static_cast<double>(den_) : value_;
}

Number Number::operator-() const {
  if (!exact_) return real(-value_);
  Number r = *this;
  r.num_ = -num_;
  return r;
}

Number operator+(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) {
    return make_reduced(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                        static_cast<i128>(a.den_) * b.den_);
  }
  return Number::real(a.to_double() + b.to_double());
}

Number operator-(const Number& a, const Number& b) { return a + (-b); }

Number operator*(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) {
    return make_reduced(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
  }
  return Number::real(a.to_double() * b.to_double());
}

Number operator/(const Number& a, const Number& b) {
  if (b.is_zero()) throw std::domain_error("division of constants by zero");
  if (a.exact_ && b.exact_) {
    return make_reduced(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
  }
  return Number::real(a.to_double() / b.to_double());
}

Number Number::pow(int k) const {
  if (k < 0) {
    if (is_zero()) throw std::domain_error("negative power of zero");
    return Number(1) / pow(-k);
  }
  Number result(1);
  Number base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

int compare(const Number& a, const Number& b) {
  if (a.exact_ && b.exact_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l < r ? -1 : (l > r ? 1 : 0);
  }
  if (a.exact_ != b.exact_) return a.exact_ ? -1 : 1;
  if (a.value_ < b.value_) return -1;
  if (a.value_ > b.value_) return 1;
  return 0;
}

std::size_t Number::hash() const {
  auto mix = [](std::size_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  };
  if (exact_) {
    return mix(mix(1, static_cast<std::uint64_t>(num_)), static_cast<std::uint64_t>(den_));
  }
  std::uint64_t bits = 0;
  double v = value_ == 0.0 ? 0.0 : value_;
  static_assert(sizeof(bits) == sizeof(v));
  __builtin_memcpy(&bits, &v, sizeof(bits));
  return mix(2, bits);
}

std::string Number::str() const {
  if (exact_) {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  if (std::isnan(value_)) return "nan";
  if (std::isinf(value_)) return value_ > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value_);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace jacobitk
