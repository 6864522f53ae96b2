#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ncd/cohomology.hpp"
#include "ncd/series.hpp"

namespace ncd {

namespace detail {

template <class S>
void require_group(const Series<S>& a, const FgAbelianGroup& g) {
  if (!(a.group() == g)) throw std::invalid_argument("element and multiplier live on different groups");
}

template <class S>
void require_compatible(const Series<S>& a, const Series<S>& b) {
  if (!(a.group() == b.group())) throw std::invalid_argument("elements live on different groups");
  if (a.dim() != b.dim()) throw std::invalid_argument("coefficient dimensions differ");
}

}  // namespace detail

/// Twisted convolution (a * b)(x) = sum_y e(-M(x-y, y)) a(x-y) b(y),
/// so that U_x * U_y = e(-M(x,y)) U_{x+y}.
template <class S>
Series<S> star(const Series<S>& a, const Series<S>& b, const Multiplier& m) {
  detail::require_compatible(a, b);
  detail::require_group(a, m.group());
  const auto& g = a.group();
  Series<S> r(g, a.dim());
  for (const auto& [x, ca] : a.terms())
    for (const auto& [y, cb] : b.terms()) {
      S phase = ScalarTraits<S>::phase(-m(x, y));
      r.add_term(g.add(x, y), (ca * cb).scaled(phase));
    }
  return r;
}

/// Untwisted convolution.
template <class S>
Series<S> convolve(const Series<S>& a, const Series<S>& b) {
  detail::require_compatible(a, b);
  const auto& g = a.group();
  Series<S> r(g, a.dim());
  for (const auto& [x, ca] : a.terms())
    for (const auto& [y, cb] : b.terms()) r.add_term(g.add(x, y), ca * cb);
  return r;
}

/// a^*(x) = e(M(x,-x)) a(-x)^*; for a bicharacter the phase is e(-Theta(-x,-x)).
template <class S>
Series<S> involution(const Series<S>& a, const Multiplier& m) {
  detail::require_group(a, m.group());
  const auto& g = a.group();
  Series<S> r(g, a.dim());
  for (const auto& [y, c] : a.terms()) {
    GroupElement x = g.neg(y);
    r.add_term(x, c.adjoint().scaled(ScalarTraits<S>::phase(m(x, y))));
  }
  return r;
}

/// Torus action alpha_t(U_x) = e(<x,t>) U_x.
template <class S>
Series<S> translate(const Series<S>& a, const std::vector<CirclePoint>& t) {
  const auto& g = a.group();
  if (t.size() != g.num_generators()) throw std::invalid_argument("translation has the wrong dimension");
  Series<S> r(g, a.dim());
  for (const auto& [x, c] : a.terms()) {
    CirclePoint p;
    for (std::size_t i = 0; i < t.size(); ++i) p += t[i].scaled(x[i]);
    r.add_term(x, c.scaled(ScalarTraits<S>::phase(p)));
  }
  return r;
}

/// max over the support of (1 + 4 pi^2 |x|^2)^j ||a(x)||.
template <class S>
double seminorm(const Series<S>& a, int j) {
  double m = 0.0;
  for (const auto& [x, c] : a.terms()) {
    double l = dual_length(a.group(), x);
    m = std::max(m, std::pow(1.0 + 4.0 * std::numbers::pi * std::numbers::pi * l * l, j) * c.norm());
  }
  return m;
}

/// Product obtained by deforming the algebra (A, *_Theta) once more by Theta':
/// sum over isotypic pieces e(-Theta'(x,y)) (a_x *_Theta b_y).
template <class S>
Series<S> twice_deformed_product(const Series<S>& a, const Series<S>& b, const Multiplier& theta, const Multiplier& theta2) {
  detail::require_compatible(a, b);
  const auto& g = a.group();
  Series<S> r(g, a.dim());
  for (const auto& [x, ca] : a.terms())
    for (const auto& [y, cb] : b.terms()) {
      Series<S> piece = star(Series<S>::monomial(g, x, ca), Series<S>::monomial(g, y, cb), theta);
      r = r + piece.scaled(ScalarTraits<S>::phase(-theta2(x, y)));
    }
  return r;
}

/// Residual between the twice-deformed product and the product for Theta + Theta'.
template <class S>
double deformation_composition_check(const Series<S>& a, const Series<S>& b, const Multiplier& theta, const Multiplier& theta2) {
  return max_difference(twice_deformed_product(a, b, theta, theta2), star(a, b, theta + theta2));
}

/// psi_T(a) = sum_x e(T(x)) a(x) U_x, an isomorphism from *_Theta onto *_{Theta + dT}.
template <class S>
Series<S> coboundary_isomorphism(const Series<S>& a, const CoboundaryData& t) {
  detail::require_group(a, t.group());
  Series<S> r(a.group(), a.dim());
  for (const auto& [x, c] : a.terms()) r.add_term(x, c.scaled(ScalarTraits<S>::phase(t(x))));
  return r;
}

/// Reindexes U_x -> U_{Rx}; intertwines *_{pullback(Theta,R)} with *_Theta.
template <class S>
Series<S> glnz_pullback(const Series<S>& a, const IntMatrix& R) {
  const auto& g = a.group();
  if (!g.torsion().empty()) throw std::invalid_argument("integral reindexing needs a free group");
  if (!is_unimodular(R) || R.rows() != g.num_generators()) throw std::invalid_argument("reindexing matrix is not unimodular");
  Series<S> r(g, a.dim());
  for (const auto& [x, c] : a.terms()) r.add_term(GroupElement(R.apply(x.coords)), c);
  return r;
}

/// max over isotypic pieces of || b_y * a_x - e(iota(x,y)) a_x * b_y ||.
template <class S>
double commutation_defect(const Series<S>& a, const Series<S>& b, const Multiplier& m, const CohomologyClass& iota) {
  detail::require_compatible(a, b);
  const auto& g = a.group();
  double worst = 0.0;
  for (const auto& [x, ca] : a.terms())
    for (const auto& [y, cb] : b.terms()) {
      auto ax = Series<S>::monomial(g, x, ca);
      auto by = Series<S>::monomial(g, y, cb);
      auto lhs = star(by, ax, m);
      auto rhs = star(ax, by, m).scaled(ScalarTraits<S>::phase(iota(x, y)));
      worst = std::max(worst, max_difference(lhs, rhs));
    }
  return worst;
}

/// Exact series to floating point.
template <class S>
AlgebraElement to_complex(const Series<S>& a) {
  return a.to_complex();
}

}  // namespace ncd
