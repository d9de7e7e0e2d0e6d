#pragma once

// Test-only oracles. These deliberately avoid the library's elimination
// and solver code paths: ranks come from cofactor expansion or from
// fraction-free integer elimination, solution sets from brute-force
// enumeration over small prime fields.

#include <cstdint>
#include <functional>
#include <vector>

#include "cosep/matrix.hpp"
#include "cosep/scalar.hpp"

namespace oracle {

using cosep::DenseMatrix;
using cosep::Field;
using cosep::Scalar;
using cosep::Vec;

// Deterministic generator for test data.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline Scalar random_scalar(const Field& f, SplitMix64& rng) {
  if (f.kind == Field::Kind::prime)
    return Scalar::from_int(f, rng.in_range(0, f.p - 1));
  return Scalar::fraction(f, rng.in_range(-4, 4), rng.in_range(1, 3));
}

inline DenseMatrix random_matrix(const Field& f, std::size_t r, std::size_t c,
                                 SplitMix64& rng) {
  DenseMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_scalar(f, rng);
  return m;
}

// Determinant by cofactor expansion along the first row.
inline Scalar det_cofactor(const DenseMatrix& m) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("square only");
  if (n == 0) return Scalar::one(m.field());
  if (n == 1) return m.at(0, 0);
  Scalar acc = Scalar::zero(m.field());
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    DenseMatrix minor(m.field(), n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    Scalar term = m.at(0, j) * det_cofactor(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Rank as the largest k admitting a nonzero k x k minor. Exponential;
// fine for the tiny matrices it is used on.
inline std::size_t rank_minor_expansion(const DenseMatrix& m) {
  std::size_t maxk = std::min(m.rows(), m.cols());
  for (std::size_t k = maxk; k >= 1; --k) {
    std::vector<std::size_t> rs(k), cs(k);
    std::function<bool(std::size_t, std::size_t)> pick_rows =
        [&](std::size_t idx, std::size_t start) -> bool {
      if (idx == k) {
        std::function<bool(std::size_t, std::size_t)> pick_cols =
            [&](std::size_t cidx, std::size_t cstart) -> bool {
          if (cidx == k) {
            DenseMatrix sub(m.field(), k, k);
            for (std::size_t i = 0; i < k; ++i)
              for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
            return !det_cofactor(sub).is_zero();
          }
          for (std::size_t c = cstart; c < m.cols(); ++c) {
            cs[cidx] = c;
            if (pick_cols(cidx + 1, c + 1)) return true;
          }
          return false;
        };
        return pick_cols(0, 0);
      }
      for (std::size_t r = start; r < m.rows(); ++r) {
        rs[idx] = r;
        if (pick_rows(idx + 1, r + 1)) return true;
      }
      return false;
    };
    if (pick_rows(0, 0)) return k;
  }
  return 0;
}

// Fraction-free (Bareiss-style) integer rank; arithmetic is plain
// __int128, no Scalar involved.
inline std::size_t rank_bareiss(std::vector<std::vector<long long>> a) {
  if (a.empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size();
  std::vector<std::vector<__int128>> m(rows, std::vector<__int128>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = a[i][j];
  __int128 prev = 1;
  std::size_t rank = 0, col = 0;
  for (; col < cols && rank < rows; ++col) {
    std::size_t sel = rank;
    while (sel < rows && m[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

// Rank over F_p by plain modular elimination with last-row pivot choice
// (different pivoting than the library on purpose).
inline std::size_t rank_modp(std::vector<std::vector<long long>> a, long long p) {
  if (a.empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size();
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  auto inv = [&](long long v) {
    long long r = 1, b = v % p, e = p - 2;
    while (e) {
      if (e & 1) r = (__int128)r * b % p;
      b = (__int128)b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t i = rows; i-- > rank;)
      if (a[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(a[sel], a[rank]);
    long long iv = inv(a[rank][col]);
    for (std::size_t j = col; j < cols; ++j) a[rank][j] = (__int128)a[rank][j] * iv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      long long f = a[i][col];
      for (std::size_t j = col; j < cols; ++j)
        a[i][j] = ((a[i][j] - (__int128)f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// All solutions of a*x = b over F_p by exhaustive enumeration.
inline std::vector<std::vector<long long>> enumerate_solutions_modp(
    const std::vector<std::vector<long long>>& a, const std::vector<long long>& b,
    long long p) {
  std::size_t cols = a.empty() ? 0 : a[0].size();
  std::vector<std::vector<long long>> found;
  std::vector<long long> x(cols, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == cols) {
      for (std::size_t r = 0; r < a.size(); ++r) {
        long long acc = 0;
        for (std::size_t c = 0; c < cols; ++c) acc = (acc + a[r][c] * x[c]) % p;
        if (((acc - b[r]) % p + p) % p != 0) return;
      }
      found.push_back(x);
      return;
    }
    for (long long v = 0; v < p; ++v) {
      x[idx] = v;
      rec(idx + 1);
    }
  };
  rec(0);
  return found;
}

}  // namespace oracle
