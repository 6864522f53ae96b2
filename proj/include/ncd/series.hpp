#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "ncd/cyclotomic.hpp"
#include "ncd/group.hpp"

namespace ncd {

/// @brief Square matrix coefficient of a series; dimension 1 is the scalar case.
template <class S>
class CoeffMatrix {
 public:
  using T = ScalarTraits<S>;

  explicit CoeffMatrix(std::size_t n = 1) : n_(n), a_(n * n, T::zero()) {}

  static CoeffMatrix scalar(const S& s) {
    CoeffMatrix c(1);
    c.a_[0] = s;
    return c;
  }

  static CoeffMatrix identity(std::size_t n) {
    CoeffMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) c(i, i) = T::one();
    return c;
  }

  std::size_t dim() const { return n_; }
  S& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<S>& entries() const { return a_; }

  bool is_zero() const {
    for (const auto& s : a_)
      if (!T::is_zero(s)) return false;
    return true;
  }

  CoeffMatrix operator+(const CoeffMatrix& o) const {
    check(o);
    CoeffMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] + o.a_[i];
    return r;
  }

  CoeffMatrix operator-(const CoeffMatrix& o) const {
    check(o);
    CoeffMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = r.a_[i] - o.a_[i];
    return r;
  }

  CoeffMatrix operator*(const CoeffMatrix& o) const {
    check(o);
    if (n_ == 1) return scalar(a_[0] * o.a_[0]);
    CoeffMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        if (T::is_zero((*this)(i, k))) continue;
        for (std::size_t j = 0; j < n_; ++j) r(i, j) = r(i, j) + (*this)(i, k) * o(k, j);
      }
    return r;
  }

  CoeffMatrix scaled(const S& s) const {
    CoeffMatrix r = *this;
    for (auto& v : r.a_) v = s * v;
    return r;
  }

  CoeffMatrix adjoint() const {
    CoeffMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(i, j) = T::conj((*this)(j, i));
    return r;
  }

  /// Hilbert-Schmidt norm.
  double norm() const {
    double s = 0.0;
    for (const auto& v : a_) {
      double m = T::abs(v);
      s += m * m;
    }
    return std::sqrt(s);
  }

  CoeffMatrix<Complex> to_complex() const {
    CoeffMatrix<Complex> r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(i, j) = T::to_complex((*this)(i, j));
    return r;
  }

  friend bool operator==(const CoeffMatrix& a, const CoeffMatrix& b) { return a.n_ == b.n_ && (a - b).is_zero(); }

 private:
  void check(const CoeffMatrix& o) const {
    if (o.n_ != n_) throw std::invalid_argument("coefficient dimensions differ");
  }

  std::size_t n_;
  std::vector<S> a_;
};

/// @brief Finitely supported series sum_x a(x) U_x over a dual group.
///
/// Support indices are reduced group elements kept in lexicographic order;
/// zero coefficients are pruned.
template <class S>
class Series {
 public:
  using Scalar = S;
  using Coeff = CoeffMatrix<S>;
  using T = ScalarTraits<S>;

  Series() = default;
  explicit Series(FgAbelianGroup g, std::size_t dim = 1) : group_(std::move(g)), dim_(dim) {
    if (dim_ == 0) throw std::invalid_argument("coefficient dimension must be positive");
  }

  static Series monomial(const FgAbelianGroup& g, const GroupElement& x, const S& c = T::one()) {
    Series s(g, 1);
    s.add_term(x, Coeff::scalar(c));
    return s;
  }

  static Series monomial(const FgAbelianGroup& g, const GroupElement& x, const Coeff& c) {
    Series s(g, c.dim());
    s.add_term(x, c);
    return s;
  }

  static Series unit(const FgAbelianGroup& g, std::size_t dim = 1) { return monomial(g, g.zero(), Coeff::identity(dim)); }

  const FgAbelianGroup& group() const { return group_; }
  std::size_t dim() const { return dim_; }
  const std::map<GroupElement, Coeff>& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Coeff coefficient(const GroupElement& x) const {
    auto it = terms_.find(group_.reduce(x));
    return it == terms_.end() ? Coeff(dim_) : it->second;
  }

  void add_term(const GroupElement& x, const Coeff& c) {
    if (c.dim() != dim_) throw std::invalid_argument("coefficient dimension does not match the series");
    if (c.is_zero()) return;
    GroupElement k = group_.reduce(x);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(std::move(k), c);
      return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void add_term(const GroupElement& x, const S& c) { add_term(x, Coeff::scalar(c)); }

  Series operator+(const Series& o) const {
    check(o);
    Series r = *this;
    for (const auto& [x, c] : o.terms_) r.add_term(x, c);
    return r;
  }

  Series operator-() const {
    Series r(group_, dim_);
    for (const auto& [x, c] : terms_) r.terms_.emplace(x, c.scaled(T::zero() - T::one()));
    return r;
  }

  Series operator-(const Series& o) const { return *this + (-o); }

  Series scaled(const S& s) const {
    Series r(group_, dim_);
    for (const auto& [x, c] : terms_) r.add_term(x, c.scaled(s));
    return r;
  }

  Series<Complex> to_complex() const {
    Series<Complex> r(group_, dim_);
    for (const auto& [x, c] : terms_) r.add_term(x, c.to_complex());
    return r;
  }

  friend bool operator==(const Series& a, const Series& b) {
    if (!(a.group_ == b.group_) || a.dim_ != b.dim_) return false;
    return (a - b).is_zero();
  }

 private:
  void check(const Series& o) const {
    if (!(group_ == o.group_) || dim_ != o.dim_) throw std::invalid_argument("series live in different algebras");
  }

  FgAbelianGroup group_;
  std::size_t dim_ = 1;
  std::map<GroupElement, Coeff> terms_;
};

using AlgebraElement = Series<Complex>;
using ExactElement = Series<Cyclotomic>;

/// Largest Hilbert-Schmidt norm of a coefficient of a - b; 0 exactly when they agree term by term.
template <class S>
double max_difference(const Series<S>& a, const Series<S>& b) {
  double m = 0.0;
  const Series<S> d = a - b;
  for (const auto& [x, c] : d.terms()) m = std::max(m, c.norm());
  return m;
}

}  // namespace ncd
