#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ncd/circle.hpp"

namespace ncd {

namespace detail {

using Poly = std::vector<std::int64_t>;  // little-endian coefficients

inline void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

/// Exact division of integer polynomials by a monic divisor.
inline Poly divide_monic(Poly num, const Poly& den) {
  trim(num);
  std::size_t dn = den.size() - 1;
  if (num.size() - 1 < dn) return Poly{0};
  Poly q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    std::int64_t c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

struct CyclotomicTable {
  std::int64_t n = 1;
  std::size_t phi = 1;
  Poly minimal;                           // cyclotomic polynomial, monic
  std::vector<Poly> power;                // x^k mod minimal for k in [0,n)
};

inline const Poly& cyclotomic_polynomial(std::int64_t n);

inline const CyclotomicTable& cyclotomic_table(std::int64_t n) {
  static std::mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<CyclotomicTable>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
  }
  auto t = std::make_unique<CyclotomicTable>();
  t->n = n;
  t->minimal = cyclotomic_polynomial(n);
  t->phi = t->minimal.size() - 1;
  Poly cur(t->phi, 0);
  cur[0] = 1;
  if (t->phi == 0) throw std::logic_error("degenerate cyclotomic table");
  for (std::int64_t k = 0; k < n; ++k) {
    t->power.push_back(cur);
    // multiply by x and reduce the overflow coefficient with the monic minimal polynomial
    std::int64_t top = cur[t->phi - 1];
    for (std::size_t i = t->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (std::size_t i = 0; i < t->phi; ++i) cur[i] -= top * t->minimal[i];
  }
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::move(t));
  return *it->second;
}

inline const Poly& cyclotomic_polynomial(std::int64_t n) {
  static std::mutex mutex;
  static std::map<std::int64_t, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  Poly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace detail

/// @brief Element of the cyclotomic field Q(zeta_n).
///
/// Stored as (1/den) * sum c_i z^i in the power basis 1, z, ..., z^{phi(n)-1}
/// modulo the cyclotomic polynomial, with den > 0 coprime to the c_i. That makes
/// equality a coefficient comparison. Operands of different orders are lifted
/// to the lcm of their orders.
class Cyclotomic {
 public:
  Cyclotomic() : order_(1), den_(1), coeffs_{0} {}
  Cyclotomic(std::int64_t integer) : order_(1), den_(1), coeffs_{integer} {}  // NOLINT(google-explicit-constructor)

  static Cyclotomic rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Cyclotomic c(den < 0 ? -num : num);
    c.den_ = den < 0 ? -den : den;
    c.normalize();
    return c;
  }

  /// zeta_n^k.
  static Cyclotomic root_of_unity(std::int64_t k, std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("root of unity of non-positive order");
    const auto& t = detail::cyclotomic_table(n);
    Cyclotomic c;
    c.order_ = n;
    c.coeffs_ = t.power[static_cast<std::size_t>(detail::floor_mod(k, n))];
    return c;
  }

  /// e(t) for an exact circle point.
  static Cyclotomic phase(const CirclePoint& t) {
    if (!t.is_exact()) throw std::domain_error("exact phase requested for a real circle point");
    return root_of_unity(t.numerator(), t.denominator());
  }

  std::int64_t order() const { return order_; }
  std::int64_t denominator() const { return den_; }

  Cyclotomic lifted(std::int64_t m) const {
    if (m % order_ != 0) throw std::invalid_argument("lift target must be a multiple of the order");
    if (m == order_) return *this;
    const auto& t = detail::cyclotomic_table(m);
    std::int64_t step = m / order_;
    Cyclotomic r;
    r.order_ = m;
    r.den_ = den_;
    r.coeffs_.assign(t.phi, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      const auto& p = t.power[static_cast<std::size_t>((static_cast<std::int64_t>(i) * step) % m)];
      for (std::size_t j = 0; j < t.phi; ++j) r.coeffs_[j] = add_mul(r.coeffs_[j], coeffs_[i], p[j]);
    }
    return r;
  }

  bool is_zero() const {
    for (auto c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  Cyclotomic operator+(const Cyclotomic& o) const {
    std::int64_t m = std::lcm(order_, o.order_);
    Cyclotomic a = lifted(m);
    Cyclotomic b = o.lifted(m);
    std::int64_t d = detail::checked_lcm(a.den_, b.den_);
    std::int64_t fa = d / a.den_, fb = d / b.den_;
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      a.coeffs_[i] = detail::checked_narrow(static_cast<__int128>(a.coeffs_[i]) * fa + static_cast<__int128>(b.coeffs_[i]) * fb);
    a.den_ = d;
    a.normalize();
    return a;
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Cyclotomic operator-(const Cyclotomic& o) const { return *this + (-o); }

  Cyclotomic operator*(const Cyclotomic& o) const {
    std::int64_t m = std::lcm(order_, o.order_);
    Cyclotomic a = lifted(m);
    Cyclotomic b = o.lifted(m);
    const auto& t = detail::cyclotomic_table(m);
    std::vector<std::int64_t> bucket(static_cast<std::size_t>(m), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        auto& slot = bucket[(i + j) % static_cast<std::size_t>(m)];
        slot = add_mul(slot, a.coeffs_[i], b.coeffs_[j]);
      }
    }
    Cyclotomic r;
    r.order_ = m;
    r.den_ = detail::checked_narrow(static_cast<__int128>(a.den_) * b.den_);
    r.coeffs_.assign(t.phi, 0);
    for (std::size_t k = 0; k < bucket.size(); ++k) {
      if (bucket[k] == 0) continue;
      for (std::size_t j = 0; j < t.phi; ++j) r.coeffs_[j] = add_mul(r.coeffs_[j], bucket[k], t.power[k][j]);
    }
    r.normalize();
    return r;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  /// Complex conjugation, z -> z^{-1}.
  Cyclotomic conj() const {
    const auto& t = detail::cyclotomic_table(order_);
    Cyclotomic r;
    r.order_ = order_;
    r.den_ = den_;
    r.coeffs_.assign(t.phi, 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      const auto& p = t.power[static_cast<std::size_t>(detail::floor_mod(-static_cast<std::int64_t>(i), order_))];
      for (std::size_t j = 0; j < t.phi; ++j) r.coeffs_[j] = add_mul(r.coeffs_[j], coeffs_[i], p[j]);
    }
    return r;
  }

  Complex to_complex() const {
    Complex z{0.0, 0.0};
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      z += static_cast<double>(coeffs_[i]) *
           std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(order_));
    }
    return z / static_cast<double>(den_);
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }

  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

 private:
  static std::int64_t add_mul(std::int64_t acc, std::int64_t a, std::int64_t b) {
    return detail::checked_narrow(static_cast<__int128>(acc) + static_cast<__int128>(a) * b);
  }

  void normalize() {
    std::int64_t g = den_;
    for (auto c : coeffs_) g = std::gcd(g, c);
    if (g > 1) {
      den_ /= g;
      for (auto& c : coeffs_) c /= g;
    }
    if (is_zero()) den_ = 1;
  }

  std::int64_t order_;
  std::int64_t den_;
  std::vector<std::int64_t> coeffs_;
};

/// Uniform access to the two coefficient scalars used by the algebra code.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
  static Complex zero() { return {0.0, 0.0}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static bool is_zero(const Complex& z) { return z == Complex{0.0, 0.0}; }
  static double abs(const Complex& z) { return std::abs(z); }
  static Complex phase(const CirclePoint& t) { return t.exp(); }
  static Complex to_complex(const Complex& z) { return z; }
  static constexpr bool exact = false;
};

template <>
struct ScalarTraits<Cyclotomic> {
  static Cyclotomic zero() { return Cyclotomic(0); }
  static Cyclotomic one() { return Cyclotomic(1); }
  static Cyclotomic conj(const Cyclotomic& z) { return z.conj(); }
  static bool is_zero(const Cyclotomic& z) { return z.is_zero(); }
  static double abs(const Cyclotomic& z) { return z.is_zero() ? 0.0 : std::abs(z.to_complex()); }
  static Cyclotomic phase(const CirclePoint& t) { return Cyclotomic::phase(t); }
  static Complex to_complex(const Cyclotomic& z) { return z.to_complex(); }
  static constexpr bool exact = true;
};

}  // namespace ncd
