#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncd/twisted_algebra.hpp"

namespace ncd {

/// @brief Basis v_1..v_N of a finite-dimensional representation, v_j of weight x_j.
struct WeightedFrame {
  FgAbelianGroup group;
  std::vector<GroupElement> weights;

  std::size_t size() const { return weights.size(); }
};

/// Matrix with entries in the (scalar) algebra; also used for endomorphisms of V (x) A.
template <class S>
using EntryMatrix = std::vector<std::vector<Series<S>>>;

/// Element of the free module V (x) A, one algebra component per frame vector.
template <class S>
using ModuleVector = std::vector<Series<S>>;

/// @brief Projection in B(V) (x) A whose (j,k) entry is isotypic of weight x_k - x_j.
template <class S>
struct InvariantProjection {
  WeightedFrame frame;
  EntryMatrix<S> entries;
};

/// Which way the deformed projection phase is taken: e(-Theta(x_j, x_j - x_k)) or e(-Theta(x_j, x_k - x_j)).
enum class ProjectionPhase { kRowMinusColumn, kColumnMinusRow };

inline const char* to_string(ProjectionPhase p) {
  return p == ProjectionPhase::kRowMinusColumn ? "e(-Theta(x_j, x_j - x_k))" : "e(-Theta(x_j, x_k - x_j))";
}

template <class S>
EntryMatrix<S> zero_entries(const FgAbelianGroup& g, std::size_t n) {
  return EntryMatrix<S>(n, std::vector<Series<S>>(n, Series<S>(g)));
}

/// (P Q)_jk = sum_l P_jl *_M Q_lk.
template <class S>
EntryMatrix<S> matrix_star(const EntryMatrix<S>& p, const EntryMatrix<S>& q, const Multiplier& m) {
  const std::size_t n = p.size();
  if (q.size() != n) throw std::invalid_argument("matrix sizes differ");
  EntryMatrix<S> r = zero_entries<S>(m.group(), n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) r[j][k] = r[j][k] + star(p[j][l], q[l][k], m);
  return r;
}

/// (P^*)_jk = (P_kj)^{*_M}.
template <class S>
EntryMatrix<S> matrix_adjoint(const EntryMatrix<S>& p, const Multiplier& m) {
  const std::size_t n = p.size();
  EntryMatrix<S> r = zero_entries<S>(m.group(), n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) r[j][k] = involution(p[k][j], m);
  return r;
}

template <class S>
double matrix_difference(const EntryMatrix<S>& p, const EntryMatrix<S>& q) {
  double worst = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t k = 0; k < p.size(); ++k) worst = std::max(worst, max_difference(p[j][k], q[j][k]));
  return worst;
}

/// (P xi)_j = sum_k P_jk *_M xi_k.
template <class S>
ModuleVector<S> matrix_apply(const EntryMatrix<S>& p, const ModuleVector<S>& xi, const Multiplier& m) {
  ModuleVector<S> r(p.size(), Series<S>(m.group()));
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t k = 0; k < xi.size(); ++k) r[j] = r[j] + star(p[j][k], xi[k], m);
  return r;
}

template <class S>
double vector_difference(const ModuleVector<S>& a, const ModuleVector<S>& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, max_difference(a[j], b[j]));
  return worst;
}

/// @brief Residuals of the projection conditions under a given product.
struct ProjectionReport {
  double idempotency_residual = 0.0;
  double self_adjoint_residual = 0.0;
  std::size_t isotypy_violations = 0;
  bool ok = false;
};

template <class S>
void check_frame(const InvariantProjection<S>& p) {
  const std::size_t n = p.frame.size();
  if (p.entries.size() != n) throw std::invalid_argument("projection size does not match the frame");
  for (const auto& row : p.entries)
    if (row.size() != n) throw std::invalid_argument("projection size does not match the frame");
  for (const auto& w : p.frame.weights) p.frame.group.check_shape(w);
}

template <class S>
ProjectionReport check_invariant_projection(const InvariantProjection<S>& p, const Multiplier& m, double tolerance = 1e-12) {
  check_frame(p);
  const auto& g = p.frame.group;
  ProjectionReport r;
  r.idempotency_residual = matrix_difference(matrix_star(p.entries, p.entries, m), p.entries);
  r.self_adjoint_residual = matrix_difference(matrix_adjoint(p.entries, m), p.entries);
  for (std::size_t j = 0; j < p.frame.size(); ++j)
    for (std::size_t k = 0; k < p.frame.size(); ++k) {
      GroupElement w = g.sub(p.frame.weights[k], p.frame.weights[j]);
      for (const auto& [x, c] : p.entries[j][k].terms())
        if (!(x == w)) ++r.isotypy_violations;
    }
  double tol = ScalarTraits<S>::exact ? 0.0 : tolerance;
  r.ok = r.idempotency_residual <= tol && r.self_adjoint_residual <= tol && r.isotypy_violations == 0;
  return r;
}

/// Deformed projection p_Theta with entries e(-Theta(x_j, x_j - x_k)) p_jk (default branch).
template <class S>
InvariantProjection<S> deform_projection(const InvariantProjection<S>& p, const Multiplier& theta,
                                         ProjectionPhase phase = ProjectionPhase::kRowMinusColumn, double tolerance = 1e-12) {
  ProjectionReport undeformed = check_invariant_projection(p, Multiplier::zero(p.frame.group), tolerance);
  if (!undeformed.ok) throw std::invalid_argument("input is not an invariant projection");
  const auto& g = p.frame.group;
  InvariantProjection<S> out{p.frame, zero_entries<S>(g, p.frame.size())};
  for (std::size_t j = 0; j < p.frame.size(); ++j)
    for (std::size_t k = 0; k < p.frame.size(); ++k) {
      const auto& xj = p.frame.weights[j];
      const auto& xk = p.frame.weights[k];
      GroupElement d = phase == ProjectionPhase::kRowMinusColumn ? g.sub(xj, xk) : g.sub(xk, xj);
      out.entries[j][k] = p.entries[j][k].scaled(ScalarTraits<S>::phase(-theta(xj, d)));
    }
  return out;
}

/// Right action (xi . a) on the deformed module: the piece of degree d = x_j + u
/// of component j acts on U_y with phase e(-Theta(d, y)).
template <class S>
ModuleVector<S> deformed_module_action(const WeightedFrame& f, const ModuleVector<S>& xi, const Series<S>& a, const Multiplier& theta) {
  const auto& g = f.group;
  if (xi.size() != f.size()) throw std::invalid_argument("module vector does not match the frame");
  ModuleVector<S> r(f.size(), Series<S>(g, a.dim()));
  for (std::size_t j = 0; j < f.size(); ++j)
    for (const auto& [u, c] : xi[j].terms()) {
      GroupElement d = g.add(f.weights[j], u);
      for (const auto& [y, ca] : a.terms())
        r[j].add_term(g.add(u, y), (c * ca).scaled(ScalarTraits<S>::phase(-theta(d, y))));
    }
  return r;
}

/// Deformed inner product: pieces of degrees d1 (from xi) and d2 (from eta) pair to
/// e(-Theta(-d1, d2 - d1)) conj(c1) c2 U_{d2 - d1}.
template <class S>
Series<S> deformed_metric(const WeightedFrame& f, const ModuleVector<S>& xi, const ModuleVector<S>& eta, const Multiplier& theta) {
  const auto& g = f.group;
  if (xi.size() != f.size() || eta.size() != f.size()) throw std::invalid_argument("module vector does not match the frame");
  Series<S> r(g);
  for (std::size_t j = 0; j < f.size(); ++j)
    for (const auto& [u, c1] : xi[j].terms()) {
      GroupElement d1 = g.add(f.weights[j], u);
      for (const auto& [w, c2] : eta[j].terms()) {
        GroupElement d2 = g.add(f.weights[j], w);
        GroupElement shift = g.sub(d2, d1);
        r.add_term(shift, (c1.adjoint() * c2).scaled(ScalarTraits<S>::phase(-theta(g.neg(d1), shift))));
      }
    }
  return r;
}

/// Endomorphism T of V (x) A acting on the deformed module: a piece E_jk (x) U_w has degree
/// e = x_j - x_k + w and acts on a piece of degree d with phase e(-Theta(e, d)).
template <class S>
ModuleVector<S> endomorphism_action(const WeightedFrame& f, const EntryMatrix<S>& t, const ModuleVector<S>& xi, const Multiplier& theta) {
  const auto& g = f.group;
  ModuleVector<S> r(f.size(), Series<S>(g));
  for (std::size_t j = 0; j < f.size(); ++j)
    for (std::size_t k = 0; k < f.size(); ++k)
      for (const auto& [w, ct] : t[j][k].terms()) {
        GroupElement e = g.add(g.sub(f.weights[j], f.weights[k]), w);
        for (const auto& [u, cx] : xi[k].terms()) {
          GroupElement d = g.add(f.weights[k], u);
          r[j].add_term(g.add(w, u), (ct * cx).scaled(ScalarTraits<S>::phase(-theta(e, d))));
        }
      }
  return r;
}

/// Identification of the deformed module with V (x) A_Theta: component k is twisted by e(Theta(x_k, u)).
template <class S>
ModuleVector<S> module_identification(const WeightedFrame& f, const ModuleVector<S>& xi, const Multiplier& theta) {
  ModuleVector<S> r(f.size(), Series<S>(f.group));
  for (std::size_t k = 0; k < f.size(); ++k)
    for (const auto& [u, c] : xi[k].terms()) r[k].add_term(u, c.scaled(ScalarTraits<S>::phase(theta(f.weights[k], u))));
  return r;
}

/// Deformed endomorphism as a matrix over A_Theta: a piece E_jk (x) U_w picks up
/// e(Theta(x_j, w) - Theta(w + x_j - x_k, x_k)). Multiplicative for the deformed
/// products and equal to the deformed projection on invariant projections.
template <class S>
EntryMatrix<S> deform_endomorphism(const WeightedFrame& f, const EntryMatrix<S>& t, const Multiplier& theta) {
  const auto& g = f.group;
  EntryMatrix<S> r = zero_entries<S>(g, f.size());
  for (std::size_t j = 0; j < f.size(); ++j)
    for (std::size_t k = 0; k < f.size(); ++k)
      for (const auto& [w, c] : t[j][k].terms()) {
        GroupElement shifted = g.add(w, g.sub(f.weights[j], f.weights[k]));
        CirclePoint phi = theta(f.weights[j], w) - theta(shifted, f.weights[k]);
        r[j][k].add_term(w, c.scaled(ScalarTraits<S>::phase(phi)));
      }
  return r;
}

/// Product on End(V (x) A) deformed along its own grading: pieces of degrees e1, e2 multiply with e(-Theta(e1, e2)).
template <class S>
EntryMatrix<S> endomorphism_product(const WeightedFrame& f, const EntryMatrix<S>& s, const EntryMatrix<S>& t, const Multiplier& theta) {
  const auto& g = f.group;
  const std::size_t n = f.size();
  EntryMatrix<S> r = zero_entries<S>(g, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t k = 0; k < n; ++k)
        for (const auto& [w1, c1] : s[j][l].terms()) {
          GroupElement e1 = g.add(g.sub(f.weights[j], f.weights[l]), w1);
          for (const auto& [w2, c2] : t[l][k].terms()) {
            GroupElement e2 = g.add(g.sub(f.weights[l], f.weights[k]), w2);
            r[j][k].add_term(g.add(w1, w2), (c1 * c2).scaled(ScalarTraits<S>::phase(-theta(e1, e2))));
          }
        }
  return r;
}

/// Involution of the deformed End(V (x) A): a piece of degree e becomes its adjoint times e(Theta(-e, e)).
template <class S>
EntryMatrix<S> endomorphism_adjoint(const WeightedFrame& f, const EntryMatrix<S>& s, const Multiplier& theta) {
  const auto& g = f.group;
  const std::size_t n = f.size();
  EntryMatrix<S> r = zero_entries<S>(g, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& [w, c] : s[j][k].terms()) {
        GroupElement e = g.add(g.sub(f.weights[j], f.weights[k]), w);
        r[k][j].add_term(g.neg(w), c.adjoint().scaled(ScalarTraits<S>::phase(theta(g.neg(e), e))));
      }
  return r;
}

/// Projection onto the frame vectors selected by mask, with constant entries.
template <class S>
InvariantProjection<S> diagonal_projection(const WeightedFrame& f, const std::vector<bool>& mask) {
  if (mask.size() != f.size()) throw std::invalid_argument("mask does not match the frame");
  InvariantProjection<S> p{f, zero_entries<S>(f.group, f.size())};
  for (std::size_t j = 0; j < f.size(); ++j)
    if (mask[j]) p.entries[j][j] = Series<S>::monomial(f.group, f.group.zero());
  return p;
}

/// [[1/2, U_z / 2], [U_{-z} / 2, 1/2]] over the frame (base, base + z).
template <class S>
InvariantProjection<S> flat_line_bundle(const FgAbelianGroup& g, const GroupElement& base, const GroupElement& z, const S& half) {
  WeightedFrame f{g, {g.reduce(base), g.add(base, z)}};
  InvariantProjection<S> p{f, zero_entries<S>(g, 2)};
  p.entries[0][0] = Series<S>::monomial(g, g.zero(), half);
  p.entries[1][1] = Series<S>::monomial(g, g.zero(), half);
  p.entries[0][1] = Series<S>::monomial(g, z, half);
  p.entries[1][0] = Series<S>::monomial(g, g.neg(z), half);
  return p;
}

/// Block-diagonal sum over the concatenated frame.
template <class S>
InvariantProjection<S> direct_sum(const InvariantProjection<S>& a, const InvariantProjection<S>& b) {
  if (!(a.frame.group == b.frame.group)) throw std::invalid_argument("projections live over different groups");
  const auto& g = a.frame.group;
  WeightedFrame f{g, a.frame.weights};
  f.weights.insert(f.weights.end(), b.frame.weights.begin(), b.frame.weights.end());
  InvariantProjection<S> p{f, zero_entries<S>(g, f.size())};
  const std::size_t n = a.frame.size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) p.entries[j][k] = a.entries[j][k];
  for (std::size_t j = 0; j < b.frame.size(); ++j)
    for (std::size_t k = 0; k < b.frame.size(); ++k) p.entries[n + j][n + k] = b.entries[j][k];
  return p;
}

}  // namespace ncd
