#pragma once

// Dense exact linear algebra over a prime field F_p.
//
// Matrices are row-major with residues in [0, p). Subspaces are stored by a
// basis in reduced row-echelon form, which is canonical: two subspaces of the
// same ambient space are equal iff their basis matrices are identical.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "soclelab/errors.hpp"

namespace soclelab {

using Residue = std::uint32_t;
using Vec = std::vector<Residue>;

inline constexpr std::uint32_t kMaxModulus = 1u << 16;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void check_modulus(std::uint32_t p) {
  if (p >= kMaxModulus || !is_prime(p))
    throw invalid_input("modulus " + std::to_string(p) + " is not a prime below 65536");
}

inline Residue mod_reduce(std::int64_t v, std::uint32_t p) {
  auto r = v % static_cast<std::int64_t>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

inline Residue mod_pow(Residue a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<Residue>(r);
}

inline Residue mod_inv(Residue a, std::uint32_t p) {
  if (a % p == 0) throw invalid_input("zero has no inverse mod " + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

class FpMatrix {
 public:
  FpMatrix() = default;

  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    check_modulus(p);
  }

  /// Builds from integer rows; entries are reduced mod p.
  static FpMatrix from_rows(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& rows,
                            std::size_t cols) {
    FpMatrix m(p, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw invalid_input("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = mod_reduce(rows[r][c], p);
    }
    return m;
  }

  /// Builds from residue rows; entries must already lie in [0, p).
  static FpMatrix from_residue_rows(std::uint32_t p, const std::vector<Vec>& rows, std::size_t cols) {
    FpMatrix m(p, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw invalid_input("ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) {
        if (rows[r][c] >= p) throw invalid_input("matrix entry out of range");
        m.at(r, c) = rows[r][c];
      }
    }
    return m;
  }

  static FpMatrix identity(std::uint32_t p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Residue& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  Vec row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }

  void append_row(std::span<const Residue> v) {
    if (v.size() != cols_) throw invalid_input("row length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  FpMatrix transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  FpMatrix operator*(const FpMatrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw invalid_input("matrix product shape/modulus mismatch");
    FpMatrix out(p_, rows_, o.cols_);
    std::vector<std::uint64_t> acc(o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < cols_; ++k) {
        const std::uint64_t a = at(r, k);
        if (!a) continue;
        auto orow = o.row(k);
        for (std::size_t c = 0; c < o.cols_; ++c) acc[c] = (acc[c] + a * orow[c]) % p_;
      }
      for (std::size_t c = 0; c < o.cols_; ++c) out.at(r, c) = static_cast<Residue>(acc[c]);
    }
    return out;
  }

  /// m * v for a column vector v.
  Vec apply(std::span<const Residue> v) const {
    if (v.size() != cols_) throw invalid_input("vector length mismatch");
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::uint64_t s = 0;
      auto rr = row(r);
      for (std::size_t c = 0; c < cols_; ++c) s = (s + static_cast<std::uint64_t>(rr[c]) * v[c]) % p_;
      out[r] = static_cast<Residue>(s);
    }
    return out;
  }

  bool operator==(const FpMatrix&) const = default;

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

namespace detail {

// In-place row reduction; returns the pivot column of each nonzero row.
inline std::vector<std::size_t> reduce_in_place(FpMatrix& m) {
  const std::uint32_t p = m.p();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t sel = lead;
    while (sel < m.rows() && m.at(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != lead)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m.at(sel, k), m.at(lead, k));
    const std::uint64_t inv = mod_inv(m.at(lead, c), p);
    auto lr = m.row(lead);
    for (std::size_t k = c; k < m.cols(); ++k) lr[k] = static_cast<Residue>(lr[k] * inv % p);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead) continue;
      const std::uint64_t f = m.at(r, c);
      if (!f) continue;
      auto rr = m.row(r);
      for (std::size_t k = c; k < m.cols(); ++k)
        rr[k] = static_cast<Residue>((rr[k] + (p - f) * lr[k]) % p);
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

inline FpMatrix take_rows(const FpMatrix& m, std::size_t count) {
  FpMatrix out(m.p(), 0, m.cols());
  for (std::size_t r = 0; r < count; ++r) out.append_row(m.row(r));
  return out;
}

}  // namespace detail

/// Reduced row-echelon form (zero rows kept at the bottom) and rank.
inline std::pair<FpMatrix, std::size_t> rref(const FpMatrix& m) {
  FpMatrix r = m;
  auto pivots = detail::reduce_in_place(r);
  return {std::move(r), pivots.size()};
}

inline std::size_t rank(const FpMatrix& m) { return rref(m).second; }

class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::uint32_t p, std::size_t ambient) {
    Subspace s;
    s.basis_ = FpMatrix(p, 0, ambient);
    return s;
  }

  static Subspace full(std::uint32_t p, std::size_t ambient) {
    Subspace s;
    s.basis_ = FpMatrix::identity(p, ambient);
    s.pivots_.resize(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.pivots_[i] = i;
    return s;
  }

  /// Span of the rows of m.
  static Subspace span(const FpMatrix& m) {
    FpMatrix r = m;
    auto pivots = detail::reduce_in_place(r);
    Subspace s;
    s.basis_ = detail::take_rows(r, pivots.size());
    s.pivots_ = std::move(pivots);
    return s;
  }

  static Subspace span(std::uint32_t p, std::size_t ambient, const std::vector<Vec>& vectors) {
    return span(FpMatrix::from_residue_rows(p, vectors, ambient));
  }

  std::uint32_t p() const { return basis_.p(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const FpMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Remainder of v after elimination against the basis; zero iff v is in the span.
  Vec reduce(std::span<const Residue> v) const {
    if (v.size() != ambient_dim()) throw invalid_input("vector length does not match ambient space");
    Vec w(v.begin(), v.end());
    const std::uint32_t q = p();
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const std::uint64_t f = w[pivots_[i]];
      if (!f) continue;
      auto br = basis_.row(i);
      for (std::size_t k = pivots_[i]; k < w.size(); ++k)
        w[k] = static_cast<Residue>((w[k] + (q - f) * br[k]) % q);
    }
    return w;
  }

  bool contains(std::span<const Residue> v) const {
    for (Residue x : reduce(v))
      if (x) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    check_compatible(other);
    for (std::size_t r = 0; r < other.dim(); ++r)
      if (!contains(other.basis_.row(r))) return false;
    return true;
  }

  Subspace sum(const Subspace& other) const {
    check_compatible(other);
    FpMatrix stacked = basis_;
    for (std::size_t r = 0; r < other.dim(); ++r) stacked.append_row(other.basis_.row(r));
    return span(stacked);
  }

  Subspace intersection(const Subspace& other) const;

  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

  void check_compatible(const Subspace& other) const {
    if (p() != other.p() || ambient_dim() != other.ambient_dim())
      throw invalid_input("subspaces live in different ambient spaces");
  }

 private:
  FpMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}.
inline Subspace kernel(const FpMatrix& m) {
  FpMatrix r = m;
  auto pivots = detail::reduce_in_place(r);
  const std::size_t n = m.cols();
  const std::uint32_t p = m.p();
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  FpMatrix k(p, 0, n);
  Vec v(n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - r.at(i, free)) % p;
    k.append_row(v);
  }
  return Subspace::span(k);
}

inline Subspace Subspace::intersection(const Subspace& other) const {
  check_compatible(other);
  const std::size_t a = dim(), b = other.dim(), n = ambient_dim();
  const std::uint32_t q = p();
  // Solve x*A - y*B = 0; the intersection is spanned by the x*A parts.
  FpMatrix sys(q, n, a + b);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < a; ++i) sys.at(c, i) = basis_.at(i, c);
    for (std::size_t j = 0; j < b; ++j) sys.at(c, a + j) = (q - other.basis_.at(j, c)) % q;
  }
  Subspace ker = kernel(sys);
  FpMatrix out(q, 0, n);
  Vec v(n);
  for (std::size_t r = 0; r < ker.dim(); ++r) {
    std::fill(v.begin(), v.end(), 0);
    for (std::size_t i = 0; i < a; ++i) {
      const std::uint64_t f = ker.basis().at(r, i);
      if (!f) continue;
      for (std::size_t c = 0; c < n; ++c) v[c] = static_cast<Residue>((v[c] + f * basis_.at(i, c)) % q);
    }
    out.append_row(v);
  }
  return span(out);
}

struct SubspaceRelations {
  Subspace sum;
  Subspace intersection;
  bool contains = false;  // a contains b
  bool equals = false;
};

inline SubspaceRelations subspace_algebra(const Subspace& a, const Subspace& b) {
  a.check_compatible(b);
  return {a.sum(b), a.intersection(b), a.contains(b), a == b};
}

}  // namespace soclelab
