#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncd/int_matrix.hpp"

namespace ncd {

/// @brief Element of a finitely generated abelian group, as coordinates in its generators.
struct GroupElement {
  std::vector<std::int64_t> coords;

  GroupElement() = default;
  GroupElement(std::vector<std::int64_t> c) : coords(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  GroupElement(std::initializer_list<std::int64_t> c) : coords(c) {}

  std::size_t size() const { return coords.size(); }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  std::string to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
    os << ')';
    return os.str();
  }
};

/// @brief The group Z^rank + Z_{m_1} + ... + Z_{m_k}; free generators come first.
///
/// Torsion coordinates of elements produced by this class are kept in [0, m_i).
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(std::size_t rank, std::vector<std::int64_t> torsion) : rank_(rank), torsion_(std::move(torsion)) {
    for (auto m : torsion_)
      if (m < 2) throw std::invalid_argument("torsion orders must be at least 2");
  }

  static FgAbelianGroup lattice(std::size_t n) { return FgAbelianGroup(n, {}); }
  static FgAbelianGroup finite(std::vector<std::int64_t> orders) { return FgAbelianGroup(0, std::move(orders)); }

  std::size_t rank() const { return rank_; }
  const std::vector<std::int64_t>& torsion() const { return torsion_; }
  std::size_t num_generators() const { return rank_ + torsion_.size(); }
  bool is_finite() const { return rank_ == 0; }

  /// Order of generator i; 0 for free generators.
  std::int64_t generator_order(std::size_t i) const { return i < rank_ ? 0 : torsion_[i - rank_]; }

  std::int64_t order() const {
    if (!is_finite()) throw std::domain_error("infinite group has no finite order");
    std::int64_t n = 1;
    for (auto m : torsion_) n = detail::checked_narrow(static_cast<__int128>(n) * m);
    return n;
  }

  GroupElement zero() const { return GroupElement(std::vector<std::int64_t>(num_generators(), 0)); }

  GroupElement basis(std::size_t i) const {
    GroupElement e = zero();
    e.coords.at(i) = 1;
    return reduce(e);
  }

  GroupElement reduce(GroupElement x) const {
    check_shape(x);
    for (std::size_t i = rank_; i < x.coords.size(); ++i) x.coords[i] = detail::floor_mod(x.coords[i], torsion_[i - rank_]);
    return x;
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    check_shape(a);
    check_shape(b);
    GroupElement r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += b.coords[i];
    return reduce(std::move(r));
  }

  GroupElement neg(const GroupElement& a) const {
    GroupElement r = a;
    for (auto& c : r.coords) c = -c;
    return reduce(std::move(r));
  }

  GroupElement sub(const GroupElement& a, const GroupElement& b) const { return add(a, neg(b)); }

  GroupElement scale(std::int64_t k, const GroupElement& a) const {
    GroupElement r = a;
    for (auto& c : r.coords) c = detail::checked_narrow(static_cast<__int128>(c) * k);
    return reduce(std::move(r));
  }

  bool is_zero(const GroupElement& a) const { return reduce(a) == zero(); }

  /// All elements of a finite group, in lexicographic order of reduced coordinates.
  std::vector<GroupElement> elements() const {
    if (!is_finite()) throw std::domain_error("cannot enumerate an infinite group");
    std::vector<GroupElement> out;
    GroupElement x = zero();
    for (;;) {
      out.push_back(x);
      std::size_t i = x.coords.size();
      while (i > 0) {
        --i;
        if (++x.coords[i] < torsion_[i]) break;
        x.coords[i] = 0;
        if (i == 0) return out;
      }
      if (x.coords.empty()) return out;
    }
  }

  void check_shape(const GroupElement& x) const {
    if (x.coords.size() != num_generators())
      throw std::invalid_argument("element " + x.to_string() + " has the wrong number of coordinates");
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    if (rank_ > 0) {
      os << "Z";
      if (rank_ > 1) os << "^" << rank_;
      first = false;
    }
    for (auto m : torsion_) {
      os << (first ? "" : " x ") << "Z_" << m;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<std::int64_t> torsion_;
};

/// Euclidean length of the free coordinates; torsion contributes nothing.
inline double dual_length(const FgAbelianGroup& g, const GroupElement& x) {
  g.check_shape(x);
  double s = 0.0;
  for (std::size_t i = 0; i < g.rank(); ++i) s += static_cast<double>(x.coords[i]) * static_cast<double>(x.coords[i]);
  return std::sqrt(s);
}

/// @brief Quotient G/H with its projection and a lift of each quotient generator.
struct Quotient {
  FgAbelianGroup group;
  IntMatrix projection;  // quotient coordinates = projection * lifted coordinates
  IntMatrix lifts;       // column k lifts quotient generator k into G

  GroupElement project(const GroupElement& x) const { return group.reduce(GroupElement(projection.apply(x.coords))); }

  GroupElement lift(const GroupElement& k) const {
    std::vector<std::int64_t> c(lifts.rows(), 0);
    for (std::size_t j = 0; j < lifts.cols(); ++j)
      for (std::size_t i = 0; i < lifts.rows(); ++i) c[i] += lifts(i, j) * k.coords[j];
    return GroupElement(c);
  }
};

/// @brief Subgroup of a finitely generated abelian group.
///
/// Stored by generator columns in the lifted coordinates Z^n. Membership and
/// the quotient are decided through the Smith form of the generators augmented
/// with the torsion relation columns m_i e_i.
class Subgroup {
 public:
  Subgroup(FgAbelianGroup parent, IntMatrix generators) : parent_(std::move(parent)), generators_(std::move(generators)) {
    if (generators_.rows() != parent_.num_generators()) throw std::invalid_argument("subgroup generators have the wrong length");
    build();
  }

  const FgAbelianGroup& parent() const { return parent_; }
  const IntMatrix& generators() const { return generators_; }

  /// Generators plus the torsion relations of the parent, as columns.
  IntMatrix relation_matrix() const {
    std::size_t n = parent_.num_generators();
    std::size_t extra = parent_.torsion().size();
    IntMatrix r(n, generators_.cols() + extra);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < generators_.cols(); ++j) r(i, j) = generators_(i, j);
    for (std::size_t t = 0; t < extra; ++t) r(parent_.rank() + t, generators_.cols() + t) = parent_.torsion()[t];
    return r;
  }

  bool contains(const GroupElement& x) const {
    parent_.check_shape(x);
    auto y = smith_.U.apply(x.coords);
    for (std::size_t i = 0; i < y.size(); ++i) {
      std::int64_t d = i < diag_.size() ? diag_[i] : 0;
      if (d == 0 ? y[i] != 0 : y[i] % d != 0) return false;
    }
    return true;
  }

  /// True when the subgroup is all of the parent.
  bool is_everything() const { return quotient_.group.num_generators() == 0; }

  /// True when the subgroup is trivial.
  bool is_trivial() const {
    for (std::size_t j = 0; j < generators_.cols(); ++j)
      if (!parent_.is_zero(GroupElement(generators_.column(j)))) return false;
    return true;
  }

  /// Canonical basis of the lifted lattice (generators plus relations) in row Hermite form.
  IntMatrix hermite_basis() const { return hermite_rows(relation_matrix().transpose()); }

  const Quotient& quotient() const { return quotient_; }

 private:
  void build() {
    smith_ = smith_normal_form(relation_matrix());
    diag_ = smith_.diagonal();
    const std::size_t n = parent_.num_generators();
    IntMatrix uinv = unimodular_inverse(smith_.U);
    // Row i of U gives quotient coordinate i modulo d_i; d_i = 1 is dropped,
    // d_i = 0 (including rows beyond the diagonal) is a free coordinate.
    std::vector<std::size_t> free_rows, torsion_rows;
    std::vector<std::int64_t> orders;
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t d = i < diag_.size() ? diag_[i] : 0;
      if (d == 0) free_rows.push_back(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t d = i < diag_.size() ? diag_[i] : 0;
      if (d > 1) {
        torsion_rows.push_back(i);
        orders.push_back(d);
      }
    }
    std::vector<std::size_t> kept = free_rows;
    kept.insert(kept.end(), torsion_rows.begin(), torsion_rows.end());
    quotient_.group = FgAbelianGroup(free_rows.size(), orders);
    quotient_.projection = IntMatrix(kept.size(), n);
    quotient_.lifts = IntMatrix(n, kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        quotient_.projection(k, j) = smith_.U(kept[k], j);
        quotient_.lifts(j, k) = uinv(j, kept[k]);
      }
    }
  }

  FgAbelianGroup parent_;
  IntMatrix generators_;
  SmithForm smith_;
  std::vector<std::int64_t> diag_;
  Quotient quotient_;
};

inline Quotient quotient(const Subgroup& h) { return h.quotient(); }

/// Short text description such as "3Z^2" for a diagonal kernel, else the Hermite basis.
inline std::string describe_subgroup(const Subgroup& h) {
  const auto& g = h.parent();
  if (h.is_trivial()) return "0";
  IntMatrix b = h.hermite_basis();
  if (g.is_finite() || b.rows() != g.num_generators()) {
    std::ostringstream os;
    os << "<";
    bool first = true;
    for (std::size_t i = 0; i < b.rows(); ++i) {
      GroupElement e;
      for (std::size_t j = 0; j < b.cols(); ++j) e.coords.push_back(b(i, j));
      if (g.is_zero(e)) continue;
      os << (first ? "" : ", ") << g.reduce(e).to_string();
      first = false;
    }
    os << ">";
    return os.str();
  }
  bool diagonal = true;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (i != j && b(i, j) != 0) diagonal = false;
  if (diagonal && g.torsion().empty()) {
    bool uniform = true;
    for (std::size_t i = 1; i < b.rows(); ++i) uniform = uniform && b(i, i) == b(0, 0);
    if (uniform) return (b(0, 0) == 1 ? "" : std::to_string(b(0, 0))) + "Z^" + std::to_string(b.rows());
  }
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < b.rows(); ++i) {
    GroupElement e;
    for (std::size_t j = 0; j < b.cols(); ++j) e.coords.push_back(b(i, j));
    os << (i ? ", " : "") << e.to_string();
  }
  os << ">";
  return os.str();
}

}  // namespace ncd
