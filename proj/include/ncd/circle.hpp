#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ncd {

using Complex = std::complex<double>;

namespace detail {

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t m) {
  std::int64_t q = a / m;
  if (a % m != 0 && ((a < 0) != (m < 0))) --q;
  return q;
}

inline std::int64_t checked_narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("integer overflow in exact arithmetic");
  return static_cast<std::int64_t>(v);
}

inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  std::int64_t g = std::gcd(a, b);
  return checked_narrow(static_cast<__int128>(a / g) * b);
}

}  // namespace detail

/// @brief A point of the circle group R/Z.
///
/// Exact points are reduced fractions num/den with 0 <= num < den. Real points
/// are doubles in [0,1). Combining an exact and a real point produces a real
/// point with the downgrade flag set, so loss of exactness stays visible.
class CirclePoint {
 public:
  CirclePoint() = default;

  static CirclePoint exact(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("circle point with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    num = detail::floor_mod(num, den);
    std::int64_t g = std::gcd(num, den);
    CirclePoint p;
    p.num_ = num / g;
    p.den_ = den / g;
    return p;
  }

  static CirclePoint real(double v, bool downgraded = false) {
    if (!std::isfinite(v)) throw std::invalid_argument("circle point must be finite");
    double r = v - std::floor(v);
    if (r >= 1.0) r = 0.0;
    CirclePoint p;
    p.exact_ = false;
    p.value_ = r;
    p.downgraded_ = downgraded;
    return p;
  }

  static CirclePoint zero() { return CirclePoint{}; }

  bool is_exact() const { return exact_; }
  bool downgraded() const { return downgraded_; }

  std::int64_t numerator() const {
    require_exact();
    return num_;
  }
  std::int64_t denominator() const {
    require_exact();
    return den_;
  }

  /// Representative in [0,1).
  double value() const { return exact_ ? static_cast<double>(num_) / static_cast<double>(den_) : value_; }

  bool is_zero() const { return exact_ ? num_ == 0 : value_ == 0.0; }

  CirclePoint operator+(const CirclePoint& o) const {
    if (exact_ && o.exact_) {
      std::int64_t l = detail::checked_lcm(den_, o.den_);
      __int128 n = static_cast<__int128>(num_) * (l / den_) + static_cast<__int128>(o.num_) * (l / o.den_);
      return exact(detail::checked_narrow(n % l), l);
    }
    bool mixed = exact_ != o.exact_;
    return real(value() + o.value(), mixed || downgraded_ || o.downgraded_);
  }

  CirclePoint operator-() const {
    if (exact_) return exact(-num_, den_);
    return real(-value_, downgraded_);
  }

  CirclePoint operator-(const CirclePoint& o) const { return *this + (-o); }

  CirclePoint& operator+=(const CirclePoint& o) { return *this = *this + o; }
  CirclePoint& operator-=(const CirclePoint& o) { return *this = *this - o; }

  CirclePoint scaled(std::int64_t k) const {
    if (exact_) {
      __int128 n = static_cast<__int128>(num_) * k;
      return exact(detail::checked_narrow(n % den_), den_);
    }
    return real(value_ * static_cast<double>(k), downgraded_);
  }

  /// e(t) = exp(2 pi i t). Quarter points are returned without rounding error.
  Complex exp() const {
    if (exact_) {
      if ((num_ * 4) % den_ == 0) {
        switch ((num_ * 4) / den_) {
          case 0: return {1.0, 0.0};
          case 1: return {0.0, 1.0};
          case 2: return {-1.0, 0.0};
          default: return {0.0, -1.0};
        }
      }
      return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_));
    }
    if (value_ == 0.0) return {1.0, 0.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * value_);
  }

  /// Structural equality: exact points compare as fractions, real points bitwise.
  friend bool operator==(const CirclePoint& a, const CirclePoint& b) {
    if (a.exact_ != b.exact_) return false;
    if (a.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.value_ == b.value_;
  }

  std::string to_string() const {
    if (exact_) return std::to_string(num_) + "/" + std::to_string(den_);
    return std::to_string(value_);
  }

 private:
  void require_exact() const {
    if (!exact_) throw std::domain_error("circle point is not exact");
  }

  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double value_ = 0.0;
  bool downgraded_ = false;
};

inline CirclePoint operator*(std::int64_t k, const CirclePoint& p) { return p.scaled(k); }

/// Distance on the circle between two points, in [0, 1/2].
inline double circle_distance(const CirclePoint& a, const CirclePoint& b) {
  CirclePoint d = a - b;
  if (d.is_exact() && d.is_zero()) return 0.0;
  double v = d.value();
  return std::min(v, 1.0 - v);
}

/// Parses "p/q", an integer, or a decimal literal.
inline CirclePoint parse_circle_point(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used = 0;
      std::int64_t p = std::stoll(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(text);
      std::string rest = text.substr(slash + 1);
      std::int64_t q = std::stoll(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(text);
      return CirclePoint::exact(p, q);
    }
    std::size_t used = 0;
    if (text.find_first_of(".eE") == std::string::npos) {
      std::int64_t k = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return CirclePoint::exact(k, 1);
    }
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return CirclePoint::real(v);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed circle point '" + text + "'");
  }
}

}  // namespace ncd
