#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncd/twisted_algebra.hpp"

namespace ncd {

/// @brief Clock and shift matrices on C^q: U e_k = e(kp/q) e_k, V e_k = e_{k-1 mod q}, so VU = e(p/q) UV.
class ClockShiftModel {
 public:
  ClockShiftModel(std::int64_t p, std::int64_t q) : p_(detail::floor_mod(p, q)), q_(q) {
    if (q < 1) throw std::invalid_argument("clock-shift order must be positive");
    if (std::gcd(p_, q_) != 1) throw std::invalid_argument("p and q must be coprime");
  }

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }

  /// U^a V^b scaled by e(p a b / q); this is the image of U_{(a,b)}.
  template <class S>
  CoeffMatrix<S> generator_image(std::int64_t a, std::int64_t b) const {
    a = detail::floor_mod(a, q_);
    b = detail::floor_mod(b, q_);
    CoeffMatrix<S> m(static_cast<std::size_t>(q_));
    S pre = ScalarTraits<S>::phase(CirclePoint::exact(p_ * a * b, q_));
    for (std::int64_t k = 0; k < q_; ++k) {
      std::int64_t row = detail::floor_mod(k - b, q_);
      m(static_cast<std::size_t>(row), static_cast<std::size_t>(k)) = pre * ScalarTraits<S>::phase(CirclePoint::exact(row * p_ * a, q_));
    }
    return m;
  }

  template <class S>
  CoeffMatrix<S> clock() const {
    return generator_image<S>(1, 0);
  }
  template <class S>
  CoeffMatrix<S> shift() const {
    return generator_image<S>(0, 1);
  }

  /// Residual of V U - e(p/q) U V; exactly zero in cyclotomic arithmetic.
  template <class S>
  double relation_residual() const {
    auto u = clock<S>();
    auto v = shift<S>();
    auto d = v * u - (u * v).scaled(ScalarTraits<S>::phase(CirclePoint::exact(p_, q_)));
    return d.norm();
  }

 private:
  std::int64_t p_;
  std::int64_t q_;
};

namespace detail {

template <class S>
CoeffMatrix<S> kron(const CoeffMatrix<S>& a, const CoeffMatrix<S>& b) {
  const std::size_t n = a.dim(), m = b.dim();
  CoeffMatrix<S> r(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) r(i * m + k, j * m + l) = a(i, j) * b(k, l);
  return r;
}

}  // namespace detail

/// @brief Finite-dimensional model of the nondegenerate part of a rational class.
///
/// The quotient by the kernel must split as blocks Z_q x Z_q on consecutive
/// generator pairs with omega supported on those pairs; each block is realised
/// by a clock-shift pair and blocks combine by tensor product. A single block
/// is the common case; several blocks are supported on a best-effort basis.
class SplitModel {
 public:
  explicit SplitModel(const CohomologyClass& c) : part_(nondegenerate_part(c)) {
    const auto& k = part_.quotient.group;
    const std::size_t m = k.num_generators();
    if (k.rank() != 0) throw std::domain_error("nondegenerate part is not finite");
    if (m % 2 != 0) throw std::domain_error("unsupported: quotient is not a product of Z_q x Z_q blocks");
    for (std::size_t b = 0; b < m; b += 2) {
      if (k.generator_order(b) != k.generator_order(b + 1)) throw std::domain_error("unsupported: quotient block orders differ");
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          bool in_block = (i / 2 == b / 2) && (j / 2 == b / 2);
          if (!in_block && (i / 2 == b / 2 || j / 2 == b / 2) && !part_.omega.entry(i, j).is_zero())
            throw std::domain_error("unsupported: nondegenerate form is not block diagonal in the quotient basis");
        }
      const CirclePoint& w = part_.omega.entry(b, b + 1);
      std::int64_t q = k.generator_order(b);
      // w has denominator dividing q; rewrite as p/q
      std::int64_t p = w.numerator() * (q / w.denominator());
      blocks_.emplace_back(p, q);
    }
    dim_ = 1;
    for (const auto& blk : blocks_) dim_ *= static_cast<std::size_t>(blk.q());
  }

  const NondegeneratePart& part() const { return part_; }
  const Quotient& quotient() const { return part_.quotient; }
  const std::vector<ClockShiftModel>& blocks() const { return blocks_; }
  std::size_t matrix_dim() const { return dim_; }

  /// The bicharacter (x, y) -> Theta_nd([x], [y]) on the original dual group.
  Bicharacter pulled_back() const {
    const auto& g = part_.kernel.parent();
    const std::size_t n = g.num_generators();
    CircleMatrix m(n, std::vector<CirclePoint>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = part_.theta_nd(part_.quotient.project(g.basis(i)), part_.quotient.project(g.basis(j)));
    return Bicharacter(g, m);
  }

  /// Phi(U_k) for an element k of the quotient.
  template <class S>
  CoeffMatrix<S> phi(const GroupElement& k) const {
    const auto& g = part_.quotient.group;
    GroupElement r = g.reduce(k);
    CoeffMatrix<S> out = CoeffMatrix<S>::identity(1);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      out = detail::kron(out, blocks_[b].generator_image<S>(r[2 * b], r[2 * b + 1]));
    return out;
  }

 private:
  NondegeneratePart part_;
  std::vector<ClockShiftModel> blocks_;
  std::size_t dim_ = 1;
};

enum class SplitMode { kFull, kRefined };

/// @brief Element sum_k U_k (x) a_k of C(K)_Theta_K (x) A, with a_k in the coset k
/// (refined mode) or a_k = a(k) U_k (full mode).
template <class S>
struct SplitElement {
  SplitMode mode = SplitMode::kFull;
  FgAbelianGroup base;
  FgAbelianGroup index_group;
  Multiplier index_multiplier;
  IntMatrix projection;  // base coordinates -> index coordinates
  std::map<GroupElement, Series<S>> components;

  GroupElement project(const GroupElement& x) const { return index_group.reduce(GroupElement(projection.apply(x.coords))); }
};

namespace detail {

inline void require_pulled_back(const Multiplier& theta, const NondegeneratePart& part) {
  if (!theta.is_bicharacter()) throw std::invalid_argument("Theta is not of pulled-back form: it carries a coboundary");
  const auto& g = theta.group();
  for (std::size_t i = 0; i < g.num_generators(); ++i)
    for (std::size_t j = 0; j < g.num_generators(); ++j) {
      CirclePoint want = part.theta_nd(part.quotient.project(g.basis(i)), part.quotient.project(g.basis(j)));
      if (!(theta.bicharacter()(g.basis(i), g.basis(j)) == want)) throw std::invalid_argument("Theta is not of pulled-back form");
    }
}

}  // namespace detail

/// Full split phi(a) = sum_x U_x (x) a(x) U_x.
template <class S>
SplitElement<S> split_full(const Series<S>& a, const Multiplier& theta) {
  SplitElement<S> s;
  s.mode = SplitMode::kFull;
  s.base = a.group();
  s.index_group = a.group();
  s.index_multiplier = theta;
  s.projection = IntMatrix::identity(a.group().num_generators());
  for (const auto& [x, c] : a.terms()) s.components[x] = Series<S>::monomial(a.group(), x, c);
  return s;
}

/// Refined split sum_[x] U_[x] (x) a_[x], grouping coefficients by cosets of the kernel.
template <class S>
SplitElement<S> split_refined(const Series<S>& a, const Multiplier& theta, const SplitModel& model) {
  detail::require_pulled_back(theta, model.part());
  SplitElement<S> s;
  s.mode = SplitMode::kRefined;
  s.base = a.group();
  s.index_group = model.quotient().group;
  s.index_multiplier = Multiplier(model.part().theta_nd);
  s.projection = model.quotient().projection;
  for (const auto& [x, c] : a.terms()) {
    GroupElement k = s.project(x);
    auto [it, fresh] = s.components.try_emplace(k, Series<S>(a.group(), a.dim()));
    it->second.add_term(x, c);
  }
  return s;
}

/// (U_k (x) a_k)(U_l (x) b_l) = e(-Theta_K(k,l)) U_{k+l} (x) a_k b_l.
template <class S>
SplitElement<S> split_product(const SplitElement<S>& s, const SplitElement<S>& t) {
  SplitElement<S> r = s;
  r.components.clear();
  const auto& k = s.index_group;
  for (const auto& [x, a] : s.components)
    for (const auto& [y, b] : t.components) {
      Series<S> piece = convolve(a, b).scaled(ScalarTraits<S>::phase(-s.index_multiplier(x, y)));
      GroupElement z = k.add(x, y);
      auto [it, fresh] = r.components.try_emplace(z, Series<S>(s.base, a.dim()));
      it->second = it->second + piece;
      if (it->second.is_zero()) r.components.erase(it);
    }
  return r;
}

template <class S>
double split_difference(const SplitElement<S>& s, const SplitElement<S>& t) {
  double worst = 0.0;
  for (const auto& [k, a] : s.components) {
    auto it = t.components.find(k);
    worst = std::max(worst, it == t.components.end() ? max_difference(a, Series<S>(a.group(), a.dim())) : max_difference(a, it->second));
  }
  for (const auto& [k, b] : t.components)
    if (!s.components.count(k)) worst = std::max(worst, max_difference(b, Series<S>(b.group(), b.dim())));
  return worst;
}

/// Evaluation at t in the torus: sum_k a_k(t) Phi(U_k) with a_k(t) = sum_x a(x) e(<x,t>).
template <class S>
CoeffMatrix<Complex> evaluate_split(const SplitElement<S>& s, const std::vector<double>& t, const SplitModel& model) {
  if (s.mode != SplitMode::kRefined) throw std::invalid_argument("pointwise evaluation needs a refined split");
  if (t.size() != s.base.num_generators()) throw std::invalid_argument("evaluation point has the wrong dimension");
  CoeffMatrix<Complex> out(model.matrix_dim());
  for (const auto& [k, a] : s.components) {
    if (a.dim() != 1) throw std::invalid_argument("pointwise evaluation needs scalar coefficients");
    Complex v{0.0, 0.0};
    for (const auto& [x, c] : a.terms()) {
      double ph = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) ph += static_cast<double>(x[i]) * t[i];
      v += ScalarTraits<S>::to_complex(c(0, 0)) * std::polar(1.0, 2.0 * std::numbers::pi * ph);
    }
    out = out + model.phi<Complex>(k).scaled(v);
  }
  return out;
}

/// @brief Result of checking the isotypy constraint and translation covariance of a split element.
struct EquivarianceReport {
  double isotypy_mass = 0.0;         // norm of coefficients sitting in the wrong coset
  double covariance_residual = 0.0;  // eval(t + g) against W^* eval(t) W
  GroupElement implementing;         // x with iota(x, .) = g
};

/// g is a point of the image of iota; W = Phi(U_[x]) for the x with iota(x, .) = g.
template <class S>
EquivarianceReport equivariance_audit(const SplitElement<S>& s, const std::vector<CirclePoint>& g, const SplitModel& model,
                                      const std::vector<std::vector<double>>& points) {
  if (s.mode != SplitMode::kRefined) throw std::invalid_argument("equivariance audit needs a refined split");
  const auto& base = s.base;
  if (g.size() != base.num_generators()) throw std::invalid_argument("translation has the wrong dimension");
  EquivarianceReport r;
  for (const auto& [k, a] : s.components)
    for (const auto& [x, c] : a.terms())
      if (!(s.project(x) == k)) r.isotypy_mass += c.norm();

  const auto& q = model.quotient();
  const auto& iota = model.part().omega;
  std::optional<GroupElement> found;
  for (const auto& kq : q.group.elements()) {
    GroupElement x = q.lift(kq);
    bool match = true;
    for (std::size_t j = 0; j < base.num_generators() && match; ++j) {
      CirclePoint lhs = iota(q.project(x), q.project(base.basis(j)));
      CirclePoint d = lhs - g[j];
      match = d.is_exact() ? d.is_zero() : circle_distance(d, CirclePoint::zero()) < 1e-12;
    }
    if (match) {
      found = x;
      break;
    }
  }
  if (!found) throw std::invalid_argument("translation is not in the image of the class");
  r.implementing = *found;
  CoeffMatrix<Complex> w = model.phi<Complex>(q.project(*found));
  CoeffMatrix<Complex> ws = w.adjoint();
  for (const auto& t : points) {
    std::vector<double> tg = t;
    for (std::size_t i = 0; i < tg.size(); ++i) tg[i] += g[i].value();
    auto lhs = evaluate_split(s, tg, model);
    auto rhs = ws * evaluate_split(s, t, model) * w;
    r.covariance_residual = std::max(r.covariance_residual, (lhs - rhs).norm());
  }
  return r;
}

/// @brief Nondegeneracy of a class on a finite group, cross-checked by the center dimension of the twisted group algebra.
struct SimplicityReport {
  bool nondegenerate = false;
  std::optional<std::size_t> center_dimension;  // absent when the group is too large for the cross-check
  std::int64_t group_order = 0;
};

inline constexpr std::int64_t kSimplicityCrossCheckLimit = 81;

inline SimplicityReport simplicity_report(const CohomologyClass& c) {
  const auto& g = c.group();
  if (!g.is_finite()) throw std::invalid_argument("simplicity report needs a finite group");
  SimplicityReport r;
  r.group_order = g.order();
  r.nondegenerate = is_nondegenerate(c);
  if (r.group_order > kSimplicityCrossCheckLimit) return r;
  Multiplier theta(upper_triangular_representative(c));
  auto elems = g.elements();
  std::map<GroupElement, Eigen::Index> idx;
  for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = static_cast<Eigen::Index>(i);
  const auto n = static_cast<Eigen::Index>(elems.size());
  const auto gens = g.num_generators();
  Eigen::MatrixXcd stack = Eigen::MatrixXcd::Zero(n * static_cast<Eigen::Index>(std::max<std::size_t>(gens, 1)), n);
  for (std::size_t h = 0; h < gens; ++h) {
    GroupElement e = g.basis(h);
    for (const auto& x : elems) {
      // U_e * U_x - U_x * U_e
      GroupElement y = g.add(e, x);
      Complex v = (-theta(e, x)).exp() - (-theta(x, e)).exp();
      stack(static_cast<Eigen::Index>(h) * n + idx[y], idx[x]) += v;
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(stack);
  lu.setThreshold(1e-9);
  r.center_dimension = static_cast<std::size_t>(n - lu.rank());
  return r;
}

}  // namespace ncd
