#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cosep/scalar.hpp"

namespace cosep {

using Vec = std::vector<Scalar>;

inline Vec zero_vec(const Field& f, std::size_t n) {
  return Vec(n, Scalar::zero(f));
}

inline Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v[i] = Scalar::one(f);
  return v;
}

inline bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

/// Row-major dense matrix over an exact field. A linear map V -> W is
/// stored as a dim(W) x dim(V) matrix acting on column coordinates.
class DenseMatrix {
 public:
  DenseMatrix() : rows_(0), cols_(0), field_(Field::rationals()) {}

  DenseMatrix(const Field& f, std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), field_(f), a_(rows * cols, Scalar::zero(f)) {}

  static DenseMatrix identity(const Field& f, std::size_t n) {
    DenseMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
  }

  static DenseMatrix from_rows(const Field& f, const std::vector<Vec>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    DenseMatrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec row(std::size_t r) const {
    Vec v(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
    return v;
  }

  Vec col(std::size_t c) const {
    Vec v = zero_vec(field_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const DenseMatrix& a, const DenseMatrix& b) {
    return !(a == b);
  }

  /// Matrix product (composition of maps).
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape");
    DenseMatrix r(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Scalar& bkj = b.at(k, j);
          if (bkj.is_zero()) continue;
          r.at(i, j) += aik * bkj;
        }
      }
    return r;
  }

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix sum shape");
    DenseMatrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
  }

  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix difference shape");
    DenseMatrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
  }

  Vec apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix apply shape");
    Vec r = zero_vec(field_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const Scalar& x = at(i, j);
        if (!x.is_zero() && !v[j].is_zero()) r[i] += x * v[j];
      }
    return r;
  }

  DenseMatrix transpose() const {
    DenseMatrix r(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

 private:
  std::size_t rows_, cols_;
  Field field_;
  std::vector<Scalar> a_;
};

/// Applies M to tensor slot 1 of v in V1 (x) V2 with dims (d1, d2);
/// flat index convention is i*d2 + j throughout the library.
inline Vec apply_slot1(const DenseMatrix& m, const Vec& v, std::size_t d1,
                       std::size_t d2) {
  if (m.cols() != d1 || v.size() != d1 * d2)
    throw std::invalid_argument("apply_slot1 shape");
  Vec r = zero_vec(m.field(), m.rows() * d2);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j) {
      const Scalar& x = v[i * d2 + j];
      if (x.is_zero()) continue;
      for (std::size_t p = 0; p < m.rows(); ++p) {
        const Scalar& mp = m.at(p, i);
        if (!mp.is_zero()) r[p * d2 + j] += mp * x;
      }
    }
  return r;
}

/// Companion of apply_slot1 for the second tensor slot.
inline Vec apply_slot2(const DenseMatrix& m, const Vec& v, std::size_t d1,
                       std::size_t d2) {
  if (m.cols() != d2 || v.size() != d1 * d2)
    throw std::invalid_argument("apply_slot2 shape");
  Vec r = zero_vec(m.field(), d1 * m.rows());
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d2; ++j) {
      const Scalar& x = v[i * d2 + j];
      if (x.is_zero()) continue;
      for (std::size_t p = 0; p < m.rows(); ++p) {
        const Scalar& mp = m.at(p, j);
        if (!mp.is_zero()) r[i * m.rows() + p] += mp * x;
      }
    }
  return r;
}

/// Streaming Gauss-Jordan elimination. Rows are inserted one at a time;
/// finish() back-substitutes, leaving the canonical reduced row echelon
/// form (unique for the accumulated row space, so the result does not
/// depend on insertion order).
class EchelonBuilder {
 public:
  EchelonBuilder(const Field& f, std::size_t cols)
      : field_(f), cols_(cols), pivot_row_(cols, -1) {}

  /// Reduces row against the current pivots; keeps it if independent.
  /// Returns the pivot column, or nullopt when the row reduced to zero.
  std::optional<std::size_t> insert(Vec row) {
    if (row.size() != cols_) throw std::invalid_argument("echelon row size");
    for (std::size_t c = 0; c < cols_; ++c) {
      if (row[c].is_zero()) continue;
      int pr = pivot_row_[c];
      if (pr < 0) {
        Scalar inv = row[c].inverse();
        for (std::size_t j = c; j < cols_; ++j)
          if (!row[j].is_zero()) row[j] *= inv;
        pivot_row_[c] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(row));
        pivot_col_.push_back(c);
        return c;
      }
      Scalar factor = row[c];
      const Vec& p = rows_[pr];
      for (std::size_t j = c; j < cols_; ++j)
        if (!p[j].is_zero()) row[j] -= factor * p[j];
    }
    return std::nullopt;
  }

  /// Eliminates above every pivot; rows end up in canonical RREF.
  void finish() {
    if (finished_) return;
    // Descending pivot order clears the trailing columns first.
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pivot_col_[a] > pivot_col_[b];
    });
    for (std::size_t oi : order) {
      std::size_t c = pivot_col_[oi];
      const Vec piv = rows_[oi];
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (r == oi || rows_[r][c].is_zero()) continue;
        Scalar factor = rows_[r][c];
        for (std::size_t j = c; j < cols_; ++j)
          if (!piv[j].is_zero()) rows_[r][j] -= factor * piv[j];
      }
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pivot_col_[a] < pivot_col_[b];
    });
    std::vector<Vec> sorted_rows;
    std::vector<std::size_t> sorted_pivots;
    sorted_rows.reserve(rows_.size());
    for (std::size_t oi : order) {
      sorted_rows.push_back(std::move(rows_[oi]));
      sorted_pivots.push_back(pivot_col_[oi]);
    }
    rows_ = std::move(sorted_rows);
    pivot_col_ = std::move(sorted_pivots);
    for (std::size_t i = 0; i < pivot_col_.size(); ++i)
      pivot_row_[pivot_col_[i]] = static_cast<int>(i);
    finished_ = true;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivot_col_; }
  int pivot_row_of(std::size_t col) const { return pivot_row_[col]; }

  /// Canonical residue of v modulo the row space (requires finish()).
  Vec reduce(Vec v) const {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c].is_zero()) continue;
      int pr = pivot_row_[c];
      if (pr < 0) continue;
      Scalar factor = v[c];
      const Vec& p = rows_[pr];
      for (std::size_t j = c; j < cols_; ++j)
        if (!p[j].is_zero()) v[j] -= factor * p[j];
    }
    return v;
  }

  bool contains(const Vec& v) const { return is_zero_vec(reduce(v)); }

 private:
  Field field_;
  std::size_t cols_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivot_col_;
  std::vector<int> pivot_row_;
  bool finished_ = false;
};

struct RrefResult {
  DenseMatrix matrix;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form with the deterministic leftmost-pivot rule.
inline RrefResult rref(const DenseMatrix& m) {
  EchelonBuilder e(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  e.finish();
  DenseMatrix out(m.field(), m.rows(), m.cols());
  for (std::size_t r = 0; r < e.rank(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.at(r, c) = e.rows()[r][c];
  return RrefResult{std::move(out), e.pivots()};
}

inline std::size_t rank(const DenseMatrix& m) {
  EchelonBuilder e(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.rank();
}

/// Exact solution set of a linear system a*x = b.
struct AffineSolutionSet {
  bool feasible = false;
  Vec particular;                  // empty when infeasible
  std::vector<Vec> nullspace_basis;
  std::size_t dimension = 0;       // = |nullspace_basis|
  std::size_t rank_matrix = 0;
  std::size_t rank_augmented = 0;
};

namespace detail {

// Core affine solve over a streamed sequence of rows (each of length
// cols, with right-hand side appended). Used by solve_affine and by the
// larger constraint assemblies that prefer not to materialize a matrix.
class AffineSolver {
 public:
  AffineSolver(const Field& f, std::size_t cols)
      : field_(f), cols_(cols), ech_(f, cols + 1) {}

  void add_row(Vec lhs, const Scalar& rhs) {
    if (lhs.size() != cols_) throw std::invalid_argument("solver row size");
    lhs.push_back(rhs);
    ech_.insert(std::move(lhs));
  }

  AffineSolutionSet solve() {
    ech_.finish();
    AffineSolutionSet out;
    out.rank_augmented = ech_.rank();
    bool infeasible = ech_.pivot_row_of(cols_) >= 0;
    out.rank_matrix = out.rank_augmented - (infeasible ? 1 : 0);
    if (infeasible) {
      out.feasible = false;
      return out;
    }
    out.feasible = true;
    out.particular = zero_vec(field_, cols_);
    for (std::size_t r = 0; r < ech_.rank(); ++r)
      out.particular[ech_.pivots()[r]] = ech_.rows()[r][cols_];
    for (std::size_t c = 0; c < cols_; ++c) {
      if (ech_.pivot_row_of(c) >= 0) continue;
      Vec basis = zero_vec(field_, cols_);
      basis[c] = Scalar::one(field_);
      for (std::size_t r = 0; r < ech_.rank(); ++r)
        basis[ech_.pivots()[r]] = -ech_.rows()[r][c];
      out.nullspace_basis.push_back(std::move(basis));
    }
    out.dimension = out.nullspace_basis.size();
    return out;
  }

 private:
  Field field_;
  std::size_t cols_;
  EchelonBuilder ech_;
};

}  // namespace detail

inline AffineSolutionSet solve_affine(const DenseMatrix& a, const Vec& b) {
  if (b.size() != a.rows())
    throw std::invalid_argument("solve_affine: rhs length != rows");
  detail::AffineSolver s(a.field(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) s.add_row(a.row(r), b[r]);
  return s.solve();
}

/// Quotient of an ambient coordinate space by the span of relation
/// vectors. The complement indices are the non-pivot coordinates of the
/// echelonized relations; projection maps ambient coordinates to
/// quotient coordinates and annihilates every relation exactly.
struct QuotientSpace {
  std::size_t ambient = 0;
  std::vector<std::size_t> complement;
  DenseMatrix projection;            // dim x ambient
  std::vector<Vec> relation_echelon; // canonical RREF rows
  std::vector<std::size_t> relation_pivots;

  std::size_t dim() const { return complement.size(); }

  Vec project(const Vec& v) const { return projection.apply(v); }

  /// Quotient coordinates back to the canonical ambient representative.
  Vec include(const Vec& q) const {
    Vec v = zero_vec(projection.field(), ambient);
    for (std::size_t i = 0; i < complement.size(); ++i) v[complement[i]] = q[i];
    return v;
  }
};

inline QuotientSpace quotient_from_echelon(const Field& f, std::size_t ambient,
                                           EchelonBuilder&& ech) {
  ech.finish();
  QuotientSpace q;
  q.ambient = ambient;
  q.relation_echelon = ech.rows();
  q.relation_pivots = ech.pivots();
  for (std::size_t c = 0; c < ambient; ++c)
    if (ech.pivot_row_of(c) < 0) q.complement.push_back(c);
  q.projection = DenseMatrix(f, q.complement.size(), ambient);
  for (std::size_t i = 0; i < q.complement.size(); ++i)
    q.projection.at(i, q.complement[i]) = Scalar::one(f);
  // A pivot coordinate e_p is congruent to -sum of its row's complement
  // entries, which is exactly the reduce() residue of e_p.
  for (std::size_t r = 0; r < ech.rank(); ++r) {
    std::size_t p = ech.pivots()[r];
    for (std::size_t i = 0; i < q.complement.size(); ++i)
      q.projection.at(i, p) = -ech.rows()[r][q.complement[i]];
  }
  return q;
}

inline QuotientSpace quotient_basis(const Field& f, std::size_t ambient,
                                    const std::vector<Vec>& relations) {
  EchelonBuilder ech(f, ambient);
  for (const Vec& r : relations) {
    if (r.size() != ambient)
      throw std::invalid_argument("relation vector has wrong length");
    ech.insert(r);
  }
  return quotient_from_echelon(f, ambient, std::move(ech));
}

}  // namespace cosep
