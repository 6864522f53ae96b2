#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncd/circle.hpp"
#include "ncd/group.hpp"
#include "ncd/int_matrix.hpp"

namespace ncd {

using CircleMatrix = std::vector<std::vector<CirclePoint>>;

namespace detail {

inline CircleMatrix zero_circle_matrix(std::size_t n) { return CircleMatrix(n, std::vector<CirclePoint>(n)); }

inline void check_square(const CircleMatrix& m, std::size_t n) {
  if (m.size() != n) throw std::invalid_argument("matrix size does not match the group");
  for (const auto& r : m)
    if (r.size() != n) throw std::invalid_argument("matrix size does not match the group");
}

/// Checks m_i * entry(i,j) == 0 and m_j * entry(i,j) == 0 for every torsion generator.
inline std::optional<std::string> torsion_violation(const FgAbelianGroup& g, const CircleMatrix& m) {
  const std::size_t n = g.num_generators();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t slot : {i, j}) {
        std::int64_t order = g.generator_order(slot);
        if (order == 0) continue;
        CirclePoint c = m[i][j].scaled(order);
        bool ok = c.is_exact() ? c.is_zero() : circle_distance(c, CirclePoint::zero()) < 1e-12;
        if (!ok)
          return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + m[i][j].to_string() +
                 " is not killed by the order " + std::to_string(order) + " of generator " + std::to_string(slot + 1);
      }
    }
  return std::nullopt;
}

/// Evaluates sum_ij x_i y_j m_ij, in exact integer arithmetic when every entry is exact.
class BilinearEvaluator {
 public:
  BilinearEvaluator() = default;
  explicit BilinearEvaluator(const CircleMatrix& m) : m_(m) {
    exact_ = true;
    den_ = 1;
    for (const auto& r : m_)
      for (const auto& c : r) {
        if (!c.is_exact()) {
          exact_ = false;
          continue;
        }
        den_ = checked_lcm(den_, c.denominator());
      }
    if (exact_) {
      num_.assign(m_.size() * m_.size(), 0);
      for (std::size_t i = 0; i < m_.size(); ++i)
        for (std::size_t j = 0; j < m_.size(); ++j)
          num_[i * m_.size() + j] = m_[i][j].numerator() * (den_ / m_[i][j].denominator());
    }
  }

  CirclePoint operator()(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const {
    const std::size_t n = m_.size();
    if (exact_) {
      __int128 s = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        __int128 row = 0;
        for (std::size_t j = 0; j < n; ++j) row += static_cast<__int128>(num_[i * n + j]) * y[j];
        s += (row % den_) * x[i];
        s %= den_;
      }
      return CirclePoint::exact(static_cast<std::int64_t>(s), den_);
    }
    CirclePoint acc;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] == 0) continue;
        acc += m_[i][j].scaled(x[i]).scaled(y[j]);
      }
    }
    return acc;
  }

  bool exact() const { return exact_; }

 private:
  CircleMatrix m_;
  bool exact_ = true;
  std::int64_t den_ = 1;
  std::vector<std::int64_t> num_;
};

}  // namespace detail

/// @brief Bicharacter Theta(x,y) = sum_ij x_i y_j Theta_ij mod 1 on a dual group.
class Bicharacter {
 public:
  Bicharacter() = default;
  Bicharacter(FgAbelianGroup g, CircleMatrix m) : group_(std::move(g)), m_(std::move(m)) {
    detail::check_square(m_, group_.num_generators());
    if (auto why = detail::torsion_violation(group_, m_)) throw std::invalid_argument("bicharacter is not torsion compatible: " + *why);
    eval_ = detail::BilinearEvaluator(m_);
  }

  /// Skips the torsion check. The result is still evaluated on reduced coordinates,
  /// which is what makes an incompatible entry observable as a cocycle defect.
  static Bicharacter unchecked(FgAbelianGroup g, CircleMatrix m) {
    Bicharacter b;
    b.group_ = std::move(g);
    b.m_ = std::move(m);
    detail::check_square(b.m_, b.group_.num_generators());
    b.eval_ = detail::BilinearEvaluator(b.m_);
    return b;
  }

  static Bicharacter zero(const FgAbelianGroup& g) { return Bicharacter(g, detail::zero_circle_matrix(g.num_generators())); }

  const FgAbelianGroup& group() const { return group_; }
  const CircleMatrix& matrix() const { return m_; }
  const CirclePoint& entry(std::size_t i, std::size_t j) const { return m_[i][j]; }
  bool is_exact() const { return eval_.exact(); }

  CirclePoint operator()(const GroupElement& x, const GroupElement& y) const {
    return eval_(group_.reduce(x).coords, group_.reduce(y).coords);
  }

  Bicharacter transpose() const {
    CircleMatrix t = m_;
    for (std::size_t i = 0; i < m_.size(); ++i)
      for (std::size_t j = 0; j < m_.size(); ++j) t[i][j] = m_[j][i];
    return Bicharacter::unchecked(group_, t);
  }

  Bicharacter operator+(const Bicharacter& o) const {
    require_same_group(o);
    CircleMatrix s = m_;
    for (std::size_t i = 0; i < m_.size(); ++i)
      for (std::size_t j = 0; j < m_.size(); ++j) s[i][j] += o.m_[i][j];
    return Bicharacter::unchecked(group_, s);
  }

  Bicharacter operator-() const {
    CircleMatrix s = m_;
    for (auto& r : s)
      for (auto& c : r) c = -c;
    return Bicharacter::unchecked(group_, s);
  }

  Bicharacter operator-(const Bicharacter& o) const { return *this + (-o); }

  friend bool operator==(const Bicharacter& a, const Bicharacter& b) { return a.group_ == b.group_ && a.m_ == b.m_; }

 private:
  void require_same_group(const Bicharacter& o) const {
    if (!(group_ == o.group_)) throw std::invalid_argument("bicharacters live on different groups");
  }

  FgAbelianGroup group_;
  CircleMatrix m_;
  detail::BilinearEvaluator eval_;
};

/// @brief Function T on the dual group whose coboundary dT(x,y) = T(x) + T(y) - T(x+y)
/// is added to a bicharacter.
///
/// T(x) = sum_{i<j} q_ij x_i x_j + sum_i q_ii x_i (x_i - 1)/2 + sum_i l_i x_i.
class CoboundaryData {
 public:
  CoboundaryData() = default;
  CoboundaryData(FgAbelianGroup g, CircleMatrix quadratic, std::vector<CirclePoint> linear)
      : group_(std::move(g)), quad_(std::move(quadratic)), lin_(std::move(linear)) {
    detail::check_square(quad_, group_.num_generators());
    if (lin_.size() != group_.num_generators()) throw std::invalid_argument("linear part has the wrong length");
  }

  static CoboundaryData zero(const FgAbelianGroup& g) {
    return CoboundaryData(g, detail::zero_circle_matrix(g.num_generators()), std::vector<CirclePoint>(g.num_generators()));
  }

  /// Integer symmetric Q and integer L with circle-valued scale factors.
  static CoboundaryData from_integer(const FgAbelianGroup& g, const IntMatrix& Q, const CircleMatrix& scales,
                                     const std::vector<std::int64_t>& L, const std::vector<CirclePoint>& lscales) {
    const std::size_t n = g.num_generators();
    if (Q.rows() != n || Q.cols() != n || L.size() != n || lscales.size() != n) throw std::invalid_argument("coboundary data has the wrong shape");
    detail::check_square(scales, n);
    CoboundaryData t = zero(g);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        if (Q(i, j) != Q(j, i)) throw std::invalid_argument("quadratic coboundary matrix must be symmetric");
        t.quad_[i][j] = scales[i][j].scaled(Q(i, j));
      }
      t.lin_[i] = lscales[i].scaled(L[i]);
    }
    return t;
  }

  /// For a symmetric bicharacter S on a lattice, T(x) = -sum_{i<j} S_ij x_i x_j - sum_i S_ii x_i(x_i-1)/2
  /// satisfies dT = S.
  static CoboundaryData for_symmetric(const Bicharacter& S) {
    const auto& g = S.group();
    if (!g.torsion().empty()) throw std::invalid_argument("symmetric coboundary construction needs a free group");
    const std::size_t n = g.num_generators();
    CoboundaryData t = zero(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        if (!(S.entry(i, j) == S.entry(j, i))) throw std::invalid_argument("bicharacter is not symmetric");
        t.quad_[i][j] = -S.entry(i, j);
      }
    return t;
  }

  const FgAbelianGroup& group() const { return group_; }
  const CircleMatrix& quadratic() const { return quad_; }
  const std::vector<CirclePoint>& linear() const { return lin_; }

  CirclePoint operator()(const GroupElement& x0) const {
    GroupElement x = group_.reduce(x0);
    const std::size_t n = x.size();
    CirclePoint acc;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j)
        if (x[i] != 0 && x[j] != 0) acc += quad_[i][j].scaled(x[i]).scaled(x[j]);
      if (x[i] != 0) {
        std::int64_t tri = detail::checked_narrow(static_cast<__int128>(x[i]) * (x[i] - 1) / 2);
        acc += quad_[i][i].scaled(tri);
        acc += lin_[i].scaled(x[i]);
      }
    }
    return acc;
  }

  CirclePoint coboundary(const GroupElement& x, const GroupElement& y) const {
    return (*this)(x) + (*this)(y) - (*this)(group_.add(x, y));
  }

  CoboundaryData operator+(const CoboundaryData& o) const {
    if (!(group_ == o.group_)) throw std::invalid_argument("coboundary data live on different groups");
    CoboundaryData r = *this;
    for (std::size_t i = 0; i < quad_.size(); ++i) {
      for (std::size_t j = 0; j < quad_.size(); ++j) r.quad_[i][j] += o.quad_[i][j];
      r.lin_[i] += o.lin_[i];
    }
    return r;
  }

  CoboundaryData operator-() const {
    CoboundaryData r = *this;
    for (auto& row : r.quad_)
      for (auto& c : row) c = -c;
    for (auto& c : r.lin_) c = -c;
    return r;
  }

 private:
  FgAbelianGroup group_;
  CircleMatrix quad_;
  std::vector<CirclePoint> lin_;
};

/// @brief 2-cocycle Theta + dT on a dual group, with the sign convention
/// U_x * U_y = e(-M(x,y)) U_{x+y} used throughout the algebra code.
class Multiplier {
 public:
  Multiplier() = default;
  Multiplier(Bicharacter b) : bichar_(std::move(b)) {}  // NOLINT(google-explicit-constructor)
  Multiplier(Bicharacter b, CoboundaryData t) : bichar_(std::move(b)), cob_(std::move(t)) {
    if (!(cob_->group() == bichar_.group())) throw std::invalid_argument("coboundary and bicharacter live on different groups");
  }

  static Multiplier zero(const FgAbelianGroup& g) { return Multiplier(Bicharacter::zero(g)); }

  const FgAbelianGroup& group() const { return bichar_.group(); }
  const Bicharacter& bicharacter() const { return bichar_; }
  const std::optional<CoboundaryData>& coboundary() const { return cob_; }
  bool is_bicharacter() const { return !cob_.has_value(); }
  bool is_exact() const {
    if (!bichar_.is_exact()) return false;
    if (!cob_) return true;
    for (const auto& r : cob_->quadratic())
      for (const auto& c : r)
        if (!c.is_exact()) return false;
    for (const auto& c : cob_->linear())
      if (!c.is_exact()) return false;
    return true;
  }

  CirclePoint operator()(const GroupElement& x, const GroupElement& y) const {
    CirclePoint v = bichar_(x, y);
    if (cob_) v += cob_->coboundary(x, y);
    return v;
  }

  Multiplier operator+(const Multiplier& o) const {
    Bicharacter b = bichar_ + o.bichar_;
    if (!cob_ && !o.cob_) return Multiplier(b);
    CoboundaryData t = cob_ ? *cob_ : CoboundaryData::zero(group());
    if (o.cob_) t = t + *o.cob_;
    return Multiplier(b, t);
  }

  Multiplier operator-() const {
    if (!cob_) return Multiplier(-bichar_);
    return Multiplier(-bichar_, -*cob_);
  }

  Multiplier operator-(const Multiplier& o) const { return *this + (-o); }

  /// M^t(x,y) = M(y,x); the coboundary part is symmetric and kept.
  Multiplier transpose() const {
    if (!cob_) return Multiplier(bichar_.transpose());
    return Multiplier(bichar_.transpose(), *cob_);
  }

 private:
  Bicharacter bichar_;
  std::optional<CoboundaryData> cob_;
};

/// @brief Cohomology class of a multiplier, stored as its alternating bicharacter
/// iota(x,y) = M(x,y) - M(y,x).
class CohomologyClass {
 public:
  CohomologyClass() = default;
  CohomologyClass(FgAbelianGroup g, CircleMatrix alternating) : form_(std::move(g), std::move(alternating)) {
    const auto& m = form_.matrix();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i][i].is_zero()) throw std::invalid_argument("alternating form has a nonzero diagonal entry");
      for (std::size_t j = 0; j < i; ++j) {
        CirclePoint s = m[i][j] + m[j][i];
        bool ok = s.is_exact() ? s.is_zero() : circle_distance(s, CirclePoint::zero()) < 1e-12;
        if (!ok) throw std::invalid_argument("form is not alternating");
      }
    }
  }

  /// Class with iota_ij = theta for each listed pair i<j (0-based).
  static CohomologyClass from_pairs(const FgAbelianGroup& g, const std::vector<std::pair<std::pair<std::size_t, std::size_t>, CirclePoint>>& entries) {
    CircleMatrix m = detail::zero_circle_matrix(g.num_generators());
    for (const auto& [ij, v] : entries) {
      auto [i, j] = ij;
      if (i >= m.size() || j >= m.size() || i == j) throw std::invalid_argument("invalid generator pair");
      m[i][j] += v;
      m[j][i] -= v;
    }
    return CohomologyClass(g, m);
  }

  const FgAbelianGroup& group() const { return form_.group(); }
  const Bicharacter& form() const { return form_; }
  const CirclePoint& entry(std::size_t i, std::size_t j) const { return form_.entry(i, j); }
  bool is_exact() const { return form_.is_exact(); }

  CirclePoint operator()(const GroupElement& x, const GroupElement& y) const { return form_(x, y); }

  friend bool operator==(const CohomologyClass& a, const CohomologyClass& b) { return a.form_ == b.form_; }

 private:
  Bicharacter form_;
};

/// iota_M(x,y) = M(x,y) - M(y,x), read off on generators.
inline CohomologyClass antisymmetrize(const Multiplier& m) {
  const auto& g = m.group();
  const std::size_t n = g.num_generators();
  CircleMatrix a = detail::zero_circle_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      a[i][j] = m(g.basis(i), g.basis(j)) - m(g.basis(j), g.basis(i));
    }
  return CohomologyClass(g, a);
}

/// Bicharacter Theta_ij = iota_ij for i<j and zero otherwise; its class is the given one.
inline Bicharacter upper_triangular_representative(const CohomologyClass& c) {
  const std::size_t n = c.group().num_generators();
  CircleMatrix m = detail::zero_circle_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i][j] = c.entry(i, j);
  return Bicharacter(c.group(), m);
}

/// Bicharacter Theta_ji = -iota_ij for i<j, the mirror of the upper-triangular choice.
inline Bicharacter lower_triangular_representative(const CohomologyClass& c) {
  const std::size_t n = c.group().num_generators();
  CircleMatrix m = detail::zero_circle_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[j][i] = -c.entry(i, j);
  return Bicharacter(c.group(), m);
}

/// A point h with 2h = t.
inline CirclePoint half_of(const CirclePoint& t) {
  if (t.is_exact()) return CirclePoint::exact(t.numerator(), detail::checked_narrow(static_cast<__int128>(t.denominator()) * 2));
  return CirclePoint::real(t.value() / 2.0, t.downgraded());
}

/// Alternating bicharacter sum_{i<j} (iota_ij / 2)(x_i y_j - x_j y_i); needs a free group.
inline Bicharacter alternating_representative(const CohomologyClass& c) {
  if (!c.group().torsion().empty()) throw std::invalid_argument("halving a class needs a free group");
  const std::size_t n = c.group().num_generators();
  CircleMatrix m = detail::zero_circle_matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m[i][j] = half_of(c.entry(i, j));
      m[j][i] = -m[i][j];
    }
  return Bicharacter(c.group(), m);
}

/// @brief Outcome of a cocycle identity scan.
struct CocycleReport {
  bool ok = true;
  bool normalized = true;
  double max_defect = 0.0;
  std::optional<std::array<GroupElement, 3>> witness;
};

using CocycleFunction = std::function<CirclePoint(const GroupElement&, const GroupElement&)>;

/// Checks M(x,y+z) + M(y,z) = M(x,y) + M(x+y,z) and M(x,0) = M(0,x) = 0 on all triples from samples.
inline CocycleReport verify_cocycle(const FgAbelianGroup& g, const CocycleFunction& m, const std::vector<GroupElement>& samples,
                                    double tolerance = 1e-12) {
  CocycleReport r;
  auto mismatch = [tolerance](const CirclePoint& a, const CirclePoint& b) {
    CirclePoint d = a - b;
    return d.is_exact() ? !d.is_zero() : circle_distance(a, b) > tolerance;
  };
  const GroupElement zero = g.zero();
  for (const auto& x : samples) {
    if (mismatch(m(x, zero), CirclePoint::zero()) || mismatch(m(zero, x), CirclePoint::zero())) r.normalized = false;
    for (const auto& y : samples)
      for (const auto& z : samples) {
        CirclePoint lhs = m(x, g.add(y, z)) + m(y, z);
        CirclePoint rhs = m(x, y) + m(g.add(x, y), z);
        r.max_defect = std::max(r.max_defect, circle_distance(lhs, rhs));
        if (mismatch(lhs, rhs) && r.ok) {
          r.ok = false;
          r.witness = std::array<GroupElement, 3>{x, y, z};
        }
      }
  }
  r.ok = r.ok && r.normalized;
  return r;
}

inline CocycleReport verify_cocycle(const Multiplier& m, const std::vector<GroupElement>& samples, double tolerance = 1e-12) {
  return verify_cocycle(m.group(), [&m](const GroupElement& x, const GroupElement& y) { return m(x, y); }, samples, tolerance);
}

/// Sample set for cocycle scans: every element of a finite group, or a coordinate box of the given radius.
inline std::vector<GroupElement> sample_elements(const FgAbelianGroup& g, std::int64_t radius) {
  if (g.is_finite()) return g.elements();
  std::vector<GroupElement> out;
  GroupElement x = g.zero();
  const std::size_t n = g.num_generators();
  std::vector<std::int64_t> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = i < g.rank() ? -radius : 0;
    hi[i] = i < g.rank() ? radius : g.generator_order(i) - 1;
    x.coords[i] = lo[i];
  }
  for (;;) {
    out.push_back(x);
    std::size_t i = n;
    for (;;) {
      if (i == 0) return out;
      --i;
      if (++x.coords[i] <= hi[i]) break;
      x.coords[i] = lo[i];
    }
  }
}

inline bool is_cohomologous(const Multiplier& a, const Multiplier& b, double tolerance = 1e-12) {
  CohomologyClass ca = antisymmetrize(a);
  CohomologyClass cb = antisymmetrize(b);
  if (!(ca.group() == cb.group())) return false;
  const std::size_t n = ca.group().num_generators();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CirclePoint d = ca.entry(i, j) - cb.entry(i, j);
      if (d.is_exact() ? !d.is_zero() : circle_distance(d, CirclePoint::zero()) > tolerance) return false;
    }
  return true;
}

namespace detail {

inline void require_exact_class(const CohomologyClass& c) {
  if (!c.is_exact()) throw std::domain_error("kernel undecidable for irrational class");
}

}  // namespace detail

/// Ker(iota) = { x : iota(x, .) = 0 }.
inline Subgroup kernel_of(const CohomologyClass& c) {
  detail::require_exact_class(c);
  const auto& g = c.group();
  const std::size_t n = g.num_generators();
  std::int64_t D = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) D = detail::checked_lcm(D, c.entry(i, j).denominator());
  // x is in the kernel iff A^T x = 0 mod D, where A = D * iota; solve [A^T | D I] (x;y) = 0.
  IntMatrix M(n, 2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) M(j, i) = c.entry(i, j).numerator() * (D / c.entry(i, j).denominator());
    M(j, n + j) = D;
  }
  SmithForm f = smith_normal_form(M);
  std::size_t rank = 0;
  for (auto d : f.diagonal())
    if (d != 0) ++rank;
  IntMatrix gens(n, 2 * n - rank);
  for (std::size_t k = rank; k < 2 * n; ++k)
    for (std::size_t i = 0; i < n; ++i) gens(i, k - rank) = f.V(i, k);
  return Subgroup(g, gens);
}

inline bool is_nondegenerate(const CohomologyClass& c) { return kernel_of(c).is_trivial(); }

inline std::int64_t class_order(const CohomologyClass& c) {
  detail::require_exact_class(c);
  std::int64_t D = 1;
  const std::size_t n = c.group().num_generators();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) D = detail::checked_lcm(D, c.entry(i, j).denominator());
  return D;
}

/// @brief Nondegenerate part of a class: the quotient by its kernel, the descended
/// form omega, and an upper-triangular torsion-compatible representative of omega.
struct NondegeneratePart {
  Subgroup kernel;
  Quotient quotient;
  CohomologyClass omega;
  Bicharacter theta_nd;
};

inline NondegeneratePart nondegenerate_part(const CohomologyClass& c) {
  Subgroup k = kernel_of(c);
  Quotient q = k.quotient();
  const std::size_t m = q.group.num_generators();
  CircleMatrix w = detail::zero_circle_matrix(m);
  std::vector<GroupElement> lifts;
  for (std::size_t a = 0; a < m; ++a) lifts.push_back(GroupElement(q.lifts.column(a)));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) w[a][b] = c(lifts[a], lifts[b]);
  CohomologyClass omega(q.group, w);
  Bicharacter nd = upper_triangular_representative(omega);
  return NondegeneratePart{k, q, omega, nd};
}

namespace detail {

inline void require_square_unimodular(const FgAbelianGroup& g, const IntMatrix& R) {
  if (!g.torsion().empty()) throw std::invalid_argument("integral pullback needs a free group");
  if (R.rows() != g.num_generators() || R.cols() != g.num_generators()) throw std::invalid_argument("pullback matrix has the wrong size");
  if (!is_unimodular(R)) throw std::invalid_argument("pullback matrix is not unimodular");
}

inline CircleMatrix congruence(const CircleMatrix& m, const IntMatrix& R) {
  const std::size_t n = m.size();
  CircleMatrix out = zero_circle_matrix(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < n; ++i) {
        if (R(i, a) == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (R(j, b) != 0) out[a][b] += m[i][j].scaled(R(i, a)).scaled(R(j, b));
      }
  return out;
}

}  // namespace detail

/// Pulled-back bicharacter Theta'(x,y) = Theta(Rx, Ry), matrix R^T Theta R.
inline Bicharacter pullback(const Bicharacter& b, const IntMatrix& R) {
  detail::require_square_unimodular(b.group(), R);
  return Bicharacter(b.group(), detail::congruence(b.matrix(), R));
}

/// Pulled-back class iota'(x,y) = iota(Rx, Ry).
inline CohomologyClass pullback(const CohomologyClass& c, const IntMatrix& R) {
  detail::require_square_unimodular(c.group(), R);
  return CohomologyClass(c.group(), detail::congruence(c.form().matrix(), R));
}

}  // namespace ncd
