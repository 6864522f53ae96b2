#pragma once

#include <cstdint>
#include <cstdlib>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ncd/circle.hpp"

namespace ncd {

/// @brief Dense integer matrix with row-major storage.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged integer matrix");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("integer matrix shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        std::int64_t a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = detail::checked_narrow(static_cast<__int128>(r(i, j)) + static_cast<__int128>(a) * o(k, j));
      }
    return r;
  }

  std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length does not match matrix");
    std::vector<std::int64_t> r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      __int128 s = 0;
      for (std::size_t j = 0; j < cols_; ++j) s += static_cast<__int128>((*this)(i, j)) * v[j];
      r[i] = detail::checked_narrow(s);
    }
    return r;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<std::int64_t> column(std::size_t j) const {
    std::vector<std::int64_t> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, std::int64_t k) {
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(dst, j) = detail::checked_narrow(static_cast<__int128>((*this)(dst, j)) + static_cast<__int128>(k) * (*this)(src, j));
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, std::int64_t k) {
    for (std::size_t i = 0; i < rows_; ++i)
      (*this)(i, dst) = detail::checked_narrow(static_cast<__int128>((*this)(i, dst)) + static_cast<__int128>(k) * (*this)(i, src));
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Determinant by fraction-free Bareiss elimination.
inline std::int64_t determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<__int128> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
    prev = a[k * n + k];
  }
  return detail::checked_narrow(sign * a[n * n - 1]);
}

inline bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  std::int64_t d = determinant(m);
  return d == 1 || d == -1;
}

/// @brief Smith normal form U * M * V = S with U, V unimodular.
///
/// The nonzero diagonal entries of S are positive and each divides the next;
/// zeros trail.
struct SmithForm {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  std::vector<std::int64_t> diagonal() const {
    std::vector<std::int64_t> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

inline SmithForm smith_normal_form(const IntMatrix& M) {
  SmithForm f{IntMatrix::identity(M.rows()), M, IntMatrix::identity(M.cols())};
  IntMatrix& S = f.S;
  const std::size_t m = S.rows();
  const std::size_t n = S.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // bring the smallest nonzero entry of the trailing block to (t,t)
      std::size_t pi = m, pj = n;
      std::int64_t best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (S(i, j) != 0 && (best == 0 || std::llabs(S(i, j)) < best)) {
            best = std::llabs(S(i, j));
            pi = i;
            pj = j;
          }
      if (best == 0) return f;
      if (pi != t) {
        S.swap_rows(pi, t);
        f.U.swap_rows(pi, t);
      }
      if (pj != t) {
        S.swap_cols(pj, t);
        f.V.swap_cols(pj, t);
      }
      bool clean = true;
      const std::int64_t p = S(t, t);
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        std::int64_t q = S(i, t) / p;
        S.add_row(i, t, -q);
        f.U.add_row(i, t, -q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        std::int64_t q = S(t, j) / p;
        S.add_col(j, t, -q);
        f.V.add_col(j, t, -q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // enforce divisibility of the trailing block by the pivot
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % p != 0) {
            S.add_row(t, i, 1);
            f.U.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (S(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) S(t, j) = -S(t, j);
      for (std::size_t j = 0; j < m; ++j) f.U(t, j) = -f.U(t, j);
    }
  }
  return f;
}

/// Inverse of a unimodular matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& R) {
  if (!is_unimodular(R)) throw std::invalid_argument("matrix is not unimodular");
  SmithForm f = smith_normal_form(R);
  // U R V = I, hence R^{-1} = V U
  return f.V * f.U;
}

/// @brief Row Hermite normal form of the lattice spanned by the rows of G.
///
/// Returns the nonzero rows: pivots positive, entries above each pivot reduced
/// into [0, pivot).
inline IntMatrix hermite_rows(const IntMatrix& G) {
  IntMatrix H = G;
  std::size_t r = 0;
  for (std::size_t c = 0; c < H.cols() && r < H.rows(); ++c) {
    for (;;) {
      std::size_t pi = H.rows();
      for (std::size_t i = r; i < H.rows(); ++i)
        if (H(i, c) != 0 && (pi == H.rows() || std::llabs(H(i, c)) < std::llabs(H(pi, c)))) pi = i;
      if (pi == H.rows()) break;
      H.swap_rows(pi, r);
      bool done = true;
      for (std::size_t i = r + 1; i < H.rows(); ++i) {
        if (H(i, c) == 0) continue;
        H.add_row(i, r, -(H(i, c) / H(r, c)));
        if (H(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r < H.rows() && H(r, c) != 0) {
      if (H(r, c) < 0)
        for (std::size_t j = 0; j < H.cols(); ++j) H(r, j) = -H(r, j);
      for (std::size_t i = 0; i < r; ++i) H.add_row(i, r, -detail::floor_div(H(i, c), H(r, c)));
      ++r;
    }
  }
  IntMatrix out(r, H.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < H.cols(); ++j) out(i, j) = H(i, j);
  return out;
}

}  // namespace ncd
