#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncd/twisted_algebra.hpp"

namespace ncd {

using SparseOp = Eigen::SparseMatrix<Complex>;
using DenseOp = Eigen::MatrixXcd;

namespace detail {

inline DenseOp kron(const DenseOp& a, const DenseOp& b) {
  DenseOp r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

/// Anti-Hermitian generators with g_j g_k + g_k g_j = -2 delta_jk, built from Pauli
/// matrices as i * (Z..Z (x) Y (x) 1..1) and i * (Z..Z (x) X (x) 1..1), plus i * Z..Z in odd dimension.
inline std::vector<DenseOp> clifford_generators(std::size_t n) {
  const Complex I{0.0, 1.0};
  DenseOp x(2, 2), y(2, 2), z(2, 2), id = DenseOp::Identity(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -I, I, 0;
  z << 1, 0, 0, -1;
  const std::size_t m = n / 2;
  auto string_of = [&](std::size_t k, const DenseOp& mid) {
    DenseOp r = DenseOp::Identity(1, 1);
    for (std::size_t t = 0; t < m; ++t) r = kron(r, t < k ? z : (t == k ? mid : id));
    return r;
  };
  std::vector<DenseOp> out;
  for (std::size_t k = 0; k < m; ++k) {
    out.push_back(I * string_of(k, y));
    out.push_back(I * string_of(k, x));
  }
  if (n % 2 == 1) {
    DenseOp r = DenseOp::Identity(1, 1);
    for (std::size_t t = 0; t < m; ++t) r = kron(r, z);
    out.push_back(I * r);
  }
  return out;
}

}  // namespace detail

/// @brief Flat torus Dirac data truncated to the modes |x| <= cutoff.
///
/// The Hilbert space is spanned by e_x (x) s for lattice modes x and spinor basis s
/// of dimension 2^{floor(N/2)}; D acts on mode x as i * sum_k 2 pi x_k gamma^k.
class TruncatedTriple {
 public:
  TruncatedTriple(std::size_t n, double cutoff) : group_(FgAbelianGroup::lattice(n)), cutoff_(cutoff) {
    if (n == 0) throw std::invalid_argument("torus dimension must be positive");
    if (cutoff < 0) throw std::invalid_argument("cutoff must be non-negative");
    gammas_ = detail::clifford_generators(n);
    spin_ = static_cast<std::size_t>(gammas_.front().rows());
    const auto r = static_cast<std::int64_t>(std::floor(cutoff));
    std::vector<std::int64_t> c(n, -r);
    for (;;) {
      GroupElement x(c);
      if (dual_length(group_, x) <= cutoff_ + 1e-12) {
        index_.emplace(x, modes_.size());
        modes_.push_back(x);
      }
      std::size_t i = n;
      for (;;) {
        if (i == 0) goto done;
        --i;
        if (++c[i] <= r) break;
        c[i] = -r;
      }
    }
  done:
    build_dirac();
  }

  std::size_t dimension() const { return group_.rank(); }
  double cutoff() const { return cutoff_; }
  std::size_t spinor_dim() const { return spin_; }
  std::size_t hilbert_dim() const { return modes_.size() * spin_; }
  const FgAbelianGroup& group() const { return group_; }
  const std::vector<GroupElement>& modes() const { return modes_; }
  const std::vector<DenseOp>& gammas() const { return gammas_; }
  const SparseOp& dirac() const { return dirac_; }

  std::optional<std::size_t> mode_index(const GroupElement& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Block of D on mode x.
  DenseOp dirac_block(const GroupElement& x) const {
    const Complex I{0.0, 1.0};
    DenseOp b = DenseOp::Zero(static_cast<Eigen::Index>(spin_), static_cast<Eigen::Index>(spin_));
    for (std::size_t k = 0; k < gammas_.size(); ++k) b += I * (2.0 * std::numbers::pi * static_cast<double>(x[k])) * gammas_[k];
    return b;
  }

  /// Basis indices of modes with |x| <= cutoff - margin.
  std::vector<Eigen::Index> interior_columns(double margin) const {
    std::vector<Eigen::Index> cols;
    for (std::size_t m = 0; m < modes_.size(); ++m)
      if (dual_length(group_, modes_[m]) <= cutoff_ - margin + 1e-12)
        for (std::size_t s = 0; s < spin_; ++s) cols.push_back(static_cast<Eigen::Index>(m * spin_ + s));
    if (cols.empty()) throw std::invalid_argument("cutoff too small for the requested supports");
    return cols;
  }

  SparseOp identity() const {
    SparseOp id(static_cast<Eigen::Index>(hilbert_dim()), static_cast<Eigen::Index>(hilbert_dim()));
    id.setIdentity();
    return id;
  }

 private:
  void build_dirac() {
    std::vector<Eigen::Triplet<Complex>> trips;
    for (std::size_t m = 0; m < modes_.size(); ++m) {
      DenseOp b = dirac_block(modes_[m]);
      for (std::size_t i = 0; i < spin_; ++i)
        for (std::size_t j = 0; j < spin_; ++j)
          if (b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != Complex{0.0, 0.0})
            trips.emplace_back(static_cast<Eigen::Index>(m * spin_ + i), static_cast<Eigen::Index>(m * spin_ + j),
                               b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
    dirac_.resize(static_cast<Eigen::Index>(hilbert_dim()), static_cast<Eigen::Index>(hilbert_dim()));
    dirac_.setFromTriplets(trips.begin(), trips.end());
  }

  FgAbelianGroup group_;
  double cutoff_;
  std::size_t spin_ = 1;
  std::vector<DenseOp> gammas_;
  std::vector<GroupElement> modes_;
  std::map<GroupElement, std::size_t> index_;
  SparseOp dirac_;
};

/// Largest |x| over the support; the distance an operator can move a mode.
template <class S>
double reach(const Series<S>& a) {
  double r = 0.0;
  for (const auto& [x, c] : a.terms()) r = std::max(r, dual_length(a.group(), x));
  return r;
}

/// Left regular representation: L(U_z) sends mode y to y + z with phase e(-M(z, y)).
inline SparseOp build_L(const AlgebraElement& a, const Multiplier& m, const TruncatedTriple& t) {
  if (a.dim() != 1) throw std::invalid_argument("only scalar elements are represented");
  if (!(a.group() == t.group())) throw std::invalid_argument("element does not live on the torus dual");
  const auto& g = t.group();
  const std::size_t s = t.spinor_dim();
  std::vector<Eigen::Triplet<Complex>> trips;
  for (std::size_t col = 0; col < t.modes().size(); ++col) {
    const auto& y = t.modes()[col];
    for (const auto& [z, c] : a.terms()) {
      auto row = t.mode_index(g.add(z, y));
      if (!row) continue;
      Complex v = c(0, 0) * (-m(z, y)).exp();
      for (std::size_t k = 0; k < s; ++k)
        trips.emplace_back(static_cast<Eigen::Index>(*row * s + k), static_cast<Eigen::Index>(col * s + k), v);
    }
  }
  SparseOp op(static_cast<Eigen::Index>(t.hilbert_dim()), static_cast<Eigen::Index>(t.hilbert_dim()));
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

inline SparseOp build_L(const AlgebraElement& a, const TruncatedTriple& t) { return build_L(a, Multiplier::zero(t.group()), t); }

/// Diagonal operator Upsilon_z = sum_y e(-M(z, y)) P_y.
inline SparseOp upsilon(const GroupElement& z, const Multiplier& m, const TruncatedTriple& t) {
  const std::size_t s = t.spinor_dim();
  std::vector<Eigen::Triplet<Complex>> trips;
  for (std::size_t i = 0; i < t.modes().size(); ++i) {
    Complex v = (-m(z, t.modes()[i])).exp();
    for (std::size_t k = 0; k < s; ++k) trips.emplace_back(static_cast<Eigen::Index>(i * s + k), static_cast<Eigen::Index>(i * s + k), v);
  }
  SparseOp op(static_cast<Eigen::Index>(t.hilbert_dim()), static_cast<Eigen::Index>(t.hilbert_dim()));
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

/// Opposite representation pi_{-iota} o L_Theta: L_Theta(U_z) composed with diag e(iota(z, y)).
/// It commutes with L_Theta exactly when iota is the class of Theta.
inline SparseOp build_R(const AlgebraElement& b, const CohomologyClass& total, const Multiplier& m, const TruncatedTriple& t) {
  const auto& g = t.group();
  SparseOp r(static_cast<Eigen::Index>(t.hilbert_dim()), static_cast<Eigen::Index>(t.hilbert_dim()));
  Multiplier minus_iota(-total.form());
  for (const auto& [z, c] : b.terms()) {
    SparseOp l = build_L(AlgebraElement::monomial(g, z, c), m, t);
    r += l * upsilon(z, minus_iota, t);
  }
  return r;
}

inline SparseOp commutator(const SparseOp& a, const SparseOp& b) { return SparseOp(a * b - b * a); }
inline SparseOp anticommutator(const SparseOp& a, const SparseOp& b) { return SparseOp(a * b + b * a); }

/// Largest column norm over the given basis vectors.
inline double residual_on(const SparseOp& a, const std::vector<Eigen::Index>& cols) {
  double worst = 0.0;
  for (auto c : cols) {
    double s = 0.0;
    for (SparseOp::InnerIterator it(a, c); it; ++it) s += std::norm(it.value());
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

/// Operator norm of a restricted to the span of the given basis vectors.
inline double operator_norm_on(const SparseOp& a, const std::vector<Eigen::Index>& cols) {
  DenseOp m = DenseOp::Zero(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (SparseOp::InnerIterator it(a, cols[k]); it; ++it) m(it.row(), static_cast<Eigen::Index>(k)) = it.value();
  DenseOp gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<DenseOp> es(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

/// max over interior vectors of ||[L_Theta(a), R_Theta(b)] v||.
inline double order_zero_residual(const AlgebraElement& a, const AlgebraElement& b, const Multiplier& m, const TruncatedTriple& t) {
  CohomologyClass iota = antisymmetrize(m);
  auto cols = t.interior_columns(reach(a) + reach(b));
  return residual_on(commutator(build_L(a, m, t), build_R(b, iota, m, t)), cols);
}

/// max over interior vectors of ||[[D, L_Theta(a)], R_Theta(b)] v||; D^2 replaces D when squared is set.
inline double order_one_residual(const AlgebraElement& a, const AlgebraElement& b, const Multiplier& m, const TruncatedTriple& t,
                                 bool squared = false) {
  CohomologyClass iota = antisymmetrize(m);
  SparseOp d = squared ? SparseOp(t.dirac() * t.dirac()) : t.dirac();
  auto cols = t.interior_columns(reach(a) + reach(b));
  return residual_on(commutator(commutator(d, build_L(a, m, t)), build_R(b, iota, m, t)), cols);
}

/// ||[D, L_Theta(a)]|| on the interior.
inline double commutator_norm(const AlgebraElement& a, const Multiplier& m, const TruncatedTriple& t) {
  return operator_norm_on(commutator(t.dirac(), build_L(a, m, t)), t.interior_columns(reach(a)));
}

/// |D| as a diagonal operator, 2 pi |x| on mode x.
inline SparseOp abs_dirac(const TruncatedTriple& t) {
  std::vector<Eigen::Triplet<Complex>> trips;
  const std::size_t s = t.spinor_dim();
  for (std::size_t i = 0; i < t.modes().size(); ++i) {
    double v = 2.0 * std::numbers::pi * dual_length(t.group(), t.modes()[i]);
    for (std::size_t k = 0; k < s; ++k) trips.emplace_back(static_cast<Eigen::Index>(i * s + k), static_cast<Eigen::Index>(i * s + k), v);
  }
  SparseOp op(static_cast<Eigen::Index>(t.hilbert_dim()), static_cast<Eigen::Index>(t.hilbert_dim()));
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

/// Norms of the iterated commutators delta^k(L_Theta(a)) with delta = [|D|, .], k = 1..depth.
inline std::vector<double> iterated_commutator_norms(const AlgebraElement& a, const Multiplier& m, const TruncatedTriple& t, int depth) {
  SparseOp ad = abs_dirac(t);
  SparseOp cur = build_L(a, m, t);
  auto cols = t.interior_columns(reach(a));
  std::vector<double> out;
  for (int k = 1; k <= depth; ++k) {
    cur = commutator(ad, cur);
    out.push_back(operator_norm_on(cur, cols));
  }
  return out;
}

/// @brief Eigenvalues of (D^2 + 1)^{-1/2} and the log-log slope of their decay.
struct WeylReport {
  std::vector<double> eigenvalues;  // descending
  double slope = 0.0;
  std::size_t fit_first = 0;  // 1-based index range used for the fit
  std::size_t fit_last = 0;
};

inline WeylReport weyl_counting(const TruncatedTriple& t) {
  WeylReport r;
  for (const auto& x : t.modes()) {
    Eigen::SelfAdjointEigenSolver<DenseOp> es(t.dirac_block(x), Eigen::EigenvaluesOnly);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      double l = es.eigenvalues()(k);
      r.eigenvalues.push_back(1.0 / std::sqrt(l * l + 1.0));
    }
  }
  if (r.eigenvalues.size() < 200) throw std::invalid_argument("insufficient modes for a Weyl fit (need at least 200 eigenvalues)");
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), std::greater<>());
  const std::size_t n = r.eigenvalues.size();
  r.fit_first = std::max<std::size_t>(10, n / 10);
  r.fit_last = n;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double cnt = 0;
  for (std::size_t k = r.fit_first; k <= r.fit_last; ++k) {
    double lx = std::log(static_cast<double>(k));
    double ly = std::log(r.eigenvalues[k - 1]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    cnt += 1;
  }
  r.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return r;
}

/// @brief Partial traces Tr(L_Theta(a) (D^2+1)^{-N/2}) over sub-cutoffs, normalised by log of the eigenvalue count.
struct TraceReport {
  std::vector<double> cutoffs;
  std::vector<Complex> partial_traces;
  std::vector<Complex> normalized;
  std::vector<Complex> reference;  // the same sequence for a(0) U_0 alone
  double max_deviation = 0.0;      // largest |normalized - reference|
};

inline TraceReport averaged_trace_diagnostic(const AlgebraElement& a, const Multiplier& m, const TruncatedTriple& t,
                                             const std::vector<double>& cutoffs) {
  const std::size_t s = t.spinor_dim();
  const double p = static_cast<double>(t.dimension());
  auto trace_of = [&](const SparseOp& op, double cut, std::size_t& count) {
    Complex tr{0.0, 0.0};
    count = 0;
    for (std::size_t i = 0; i < t.modes().size(); ++i) {
      double len = dual_length(t.group(), t.modes()[i]);
      if (len > cut + 1e-12) continue;
      double w = std::pow(4.0 * std::numbers::pi * std::numbers::pi * len * len + 1.0, -p / 2.0);
      for (std::size_t k = 0; k < s; ++k) {
        auto idx = static_cast<Eigen::Index>(i * s + k);
        tr += op.coeff(idx, idx) * w;
        ++count;
      }
    }
    return tr;
  };
  SparseOp la = build_L(a, m, t);
  SparseOp l0 = build_L(AlgebraElement::monomial(t.group(), t.group().zero(), a.coefficient(t.group().zero())), m, t);
  TraceReport r;
  for (double cut : cutoffs) {
    if (cut > t.cutoff() + 1e-12) throw std::invalid_argument("sub-cutoff exceeds the truncation");
    std::size_t count = 0;
    Complex tr = trace_of(la, cut, count);
    Complex ref = trace_of(l0, cut, count);
    double norm = count > 1 ? std::log(static_cast<double>(count)) : 1.0;
    r.cutoffs.push_back(cut);
    r.partial_traces.push_back(tr);
    r.normalized.push_back(tr / norm);
    r.reference.push_back(ref / norm);
    r.max_deviation = std::max(r.max_deviation, std::abs(tr / norm - ref / norm));
  }
  return r;
}

/// @brief Hochschild chain sum c * U_{x0} (x) U_{x1} (x) ... (x) U_{xp}.
template <class S>
struct ChainTerm {
  S coeff;
  std::vector<GroupElement> legs;
};

template <class S>
using Chain = std::vector<ChainTerm<S>>;

/// The flat 2-torus orientation cycle sum_{pi in S_2} sign(pi) (U_1 U_2)^{-1} (x) U_{pi(1)} (x) U_{pi(2)}, unnormalised.
template <class S>
Chain<S> orientation_cycle_2d() {
  GroupElement inv{-1, -1}, e1{1, 0}, e2{0, 1};
  return {ChainTerm<S>{ScalarTraits<S>::one(), {inv, e1, e2}}, ChainTerm<S>{ScalarTraits<S>::zero() - ScalarTraits<S>::one(), {inv, e2, e1}}};
}

/// Theta_* multiplies a term by e(sum_{i<j} Theta(x_i, x_j)).
template <class S>
Chain<S> twist_chain(const Chain<S>& c, const Multiplier& m) {
  Chain<S> out;
  for (const auto& term : c) {
    CirclePoint p;
    for (std::size_t i = 0; i < term.legs.size(); ++i)
      for (std::size_t j = i + 1; j < term.legs.size(); ++j) p += m(term.legs[i], term.legs[j]);
    out.push_back({term.coeff * ScalarTraits<S>::phase(p), term.legs});
  }
  return out;
}

namespace detail {

inline int permutation_sign(const std::vector<std::size_t>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

}  // namespace detail

/// theta-twisted antisymmetrisation of the legs 1..p, with 1/p! normalisation.
template <class S>
Chain<S> antisymmetrize_chain(const Chain<S>& c, const CohomologyClass& iota, const S& inverse_factorial) {
  Chain<S> out;
  for (const auto& term : c) {
    const std::size_t p = term.legs.size() - 1;
    std::vector<std::size_t> perm(p);
    for (std::size_t i = 0; i < p; ++i) perm[i] = i;
    do {
      CirclePoint ph;
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
          if (perm[i] > perm[j]) ph += iota(term.legs[perm[i] + 1], term.legs[perm[j] + 1]);
      ChainTerm<S> nt{term.coeff * inverse_factorial * ScalarTraits<S>::phase(ph), {term.legs[0]}};
      if (detail::permutation_sign(perm) < 0) nt.coeff = ScalarTraits<S>::zero() - nt.coeff;
      for (std::size_t i = 0; i < p; ++i) nt.legs.push_back(term.legs[perm[i] + 1]);
      out.push_back(nt);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

/// Collects equal leg tuples and drops zero coefficients.
template <class S>
std::map<std::vector<GroupElement>, S> collect_chain(const Chain<S>& c) {
  std::map<std::vector<GroupElement>, S> out;
  for (const auto& t : c) {
    auto [it, fresh] = out.emplace(t.legs, t.coeff);
    if (!fresh) it->second = it->second + t.coeff;
  }
  for (auto it = out.begin(); it != out.end();) {
    if (ScalarTraits<S>::is_zero(it->second))
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

/// Largest total leg length over the terms of a chain.
template <class S>
double chain_reach(const Chain<S>& c, const FgAbelianGroup& g) {
  double r = 0.0;
  for (const auto& term : c) {
    double s = 0.0;
    for (const auto& x : term.legs) s += dual_length(g, x);
    r = std::max(r, s);
  }
  return r;
}

/// pi_{Theta,D}(c) = sum c L(U_{x0}) [D, L(U_{x1})] ... [D, L(U_{xp})].
inline SparseOp chain_to_operator(const Chain<Complex>& c, const Multiplier& m, const TruncatedTriple& t) {
  const auto& g = t.group();
  SparseOp r(static_cast<Eigen::Index>(t.hilbert_dim()), static_cast<Eigen::Index>(t.hilbert_dim()));
  for (const auto& term : c) {
    SparseOp op = build_L(AlgebraElement::monomial(g, term.legs[0]), m, t);
    for (std::size_t i = 1; i < term.legs.size(); ++i) op = op * commutator(t.dirac(), build_L(AlgebraElement::monomial(g, term.legs[i]), m, t));
    r += term.coeff * op;
  }
  return r;
}

/// Scales a chain so that its image squares to 1 on the interior.
inline Chain<Complex> normalize_orientation_cycle(const Chain<Complex>& c, const Multiplier& m, const TruncatedTriple& t) {
  SparseOp op = chain_to_operator(c, m, t);
  SparseOp sq = op * op;
  auto cols = t.interior_columns(2.0 * chain_reach(c, t.group()));
  Complex kappa{0.0, 0.0};
  for (auto col : cols) kappa += sq.coeff(col, col);
  kappa /= static_cast<double>(cols.size());
  if (std::abs(kappa) < 1e-300) throw std::domain_error("orientation cycle has vanishing image");
  Complex lambda = 1.0 / std::sqrt(kappa);
  Chain<Complex> out = c;
  for (auto& term : out) term.coeff *= lambda;
  return out;
}

/// @brief Residuals of the chirality conditions for a deformed orientation cycle.
struct ChiralityReport {
  double deformation_residual = 0.0;     // pi_{Theta0+Theta,D}(Theta_* c) - pi_{Theta0,D}(c)
  double square_residual = 0.0;          // chi^2 - 1
  double self_adjoint_residual = 0.0;    // chi - chi^*
  double commutation_residual = 0.0;     // [chi, L(a)]
  double anticommutation_residual = 0.0; // {chi, [D, L(a)]}
  double antisymmetry_residual = 0.0;    // base cycle against its twisted antisymmetrisation
  double twist_antisymmetry_residual = 0.0;  // antisymmetrisation commutes with Theta_*

  double worst() const {
    return std::max({deformation_residual, square_residual, self_adjoint_residual, commutation_residual, anticommutation_residual,
                     antisymmetry_residual, twist_antisymmetry_residual});
  }
};

/// Chirality of the deformation by theta of a base torus deformed by theta0.
/// The probes are the generators whose commutation relations are tested.
inline ChiralityReport chirality_check(const Chain<Complex>& c, const Multiplier& theta, const Multiplier& theta0, const TruncatedTriple& t,
                                       const std::vector<AlgebraElement>& probes) {
  ChiralityReport r;
  const auto& g = t.group();
  const Multiplier total = theta0 + theta;
  const std::size_t p = c.empty() ? 0 : c.front().legs.size() - 1;
  double fact = 1.0;
  for (std::size_t k = 2; k <= p; ++k) fact *= static_cast<double>(k);
  const Complex inv_fact{1.0 / fact, 0.0};
  const double cr = chain_reach(c, g);

  SparseOp base = chain_to_operator(c, theta0, t);
  SparseOp chi = chain_to_operator(twist_chain(c, theta), total, t);
  r.deformation_residual = residual_on(SparseOp(chi - base), t.interior_columns(cr));
  r.square_residual = residual_on(SparseOp(chi * chi - t.identity()), t.interior_columns(2.0 * cr));
  r.self_adjoint_residual = residual_on(SparseOp(chi - SparseOp(chi.adjoint())), t.interior_columns(cr));
  for (const auto& a : probes) {
    SparseOp l = build_L(a, total, t);
    auto cols = t.interior_columns(cr + reach(a));
    r.commutation_residual = std::max(r.commutation_residual, residual_on(commutator(chi, l), cols));
    r.anticommutation_residual = std::max(r.anticommutation_residual, residual_on(anticommutator(chi, commutator(t.dirac(), l)), cols));
  }

  auto chain_gap = [](const Chain<Complex>& a, const Chain<Complex>& b) {
    auto ca = collect_chain(a);
    for (const auto& [legs, v] : collect_chain(b)) ca[legs] -= v;
    double w = 0.0;
    for (const auto& [legs, v] : ca) w = std::max(w, std::abs(v));
    return w;
  };
  CohomologyClass iota0 = antisymmetrize(theta0);
  CohomologyClass iota_total = antisymmetrize(total);
  r.antisymmetry_residual = chain_gap(antisymmetrize_chain(c, iota0, inv_fact), c);
  r.twist_antisymmetry_residual =
      chain_gap(antisymmetrize_chain(twist_chain(c, theta), iota_total, inv_fact), twist_chain(antisymmetrize_chain(c, iota0, inv_fact), theta));
  return r;
}

}  // namespace ncd
