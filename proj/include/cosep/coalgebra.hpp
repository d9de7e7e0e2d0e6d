#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosep/matrix.hpp"

namespace cosep {

/// Finite-dimensional coalgebra over an exact field, given by structure
/// constants: delta is the (n^2 x n) matrix of the comultiplication,
/// with column i holding Delta(e_i) and tensor coordinate e_j (x) e_k
/// flattened as j*n + k. epsilon is absent for non-counital coalgebras.
struct Coalgebra {
  Field field;
  std::size_t dim = 0;
  std::vector<std::string> basis_names;
  DenseMatrix delta;
  std::optional<Vec> epsilon;

  /// Structure constant d[i][j][k]: coefficient of e_j (x) e_k in Delta(e_i).
  const Scalar& d(std::size_t i, std::size_t j, std::size_t k) const {
    return delta.at(j * dim + k, i);
  }
};

struct CoalgebraReport {
  bool coassociative = false;
  bool counit_left = true;   // vacuously true when epsilon absent
  bool counit_right = true;
  std::optional<std::size_t> witness;  // first failing basis index
  bool ok() const { return coassociative && counit_left && counit_right; }
};

/// Checks coassociativity and (when epsilon is present) both counit
/// identities, recording the first failing basis index.
inline CoalgebraReport validate_coalgebra(const Coalgebra& c) {
  std::size_t n = c.dim;
  if (c.delta.rows() != n * n || c.delta.cols() != n)
    throw std::invalid_argument("delta must be n^2 x n");
  if (c.epsilon && c.epsilon->size() != n)
    throw std::invalid_argument("epsilon must have length n");
  CoalgebraReport rep;
  rep.coassociative = true;
  for (std::size_t i = 0; i < n && rep.coassociative; ++i) {
    Vec di = c.delta.col(i);
    Vec lhs = apply_slot1(c.delta, di, n, n);  // (Delta (x) id) Delta
    Vec rhs = apply_slot2(c.delta, di, n, n);  // (id (x) Delta) Delta
    if (lhs != rhs) {
      rep.coassociative = false;
      rep.witness = i;
    }
  }
  if (c.epsilon) {
    const Vec& eps = *c.epsilon;
    for (std::size_t i = 0; i < n; ++i) {
      Vec left = zero_vec(c.field, n);   // sum eps(c1) c2
      Vec right = zero_vec(c.field, n);  // sum c1 eps(c2)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar& x = c.d(i, j, k);
          if (x.is_zero()) continue;
          left[k] += eps[j] * x;
          right[j] += eps[k] * x;
        }
      Vec e = unit_vec(c.field, n, i);
      if (left != e && rep.counit_left) {
        rep.counit_left = false;
        if (!rep.witness) rep.witness = i;
      }
      if (right != e && rep.counit_right) {
        rep.counit_right = false;
        if (!rep.witness) rep.witness = i;
      }
    }
  }
  return rep;
}

/// Co-opposite coalgebra: Delta^tw = tau o Delta, epsilon unchanged.
inline Coalgebra coopposite(const Coalgebra& c) {
  Coalgebra r = c;
  std::size_t n = c.dim;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        r.delta.at(j * n + k, i) = c.d(i, k, j);
  return r;
}

inline Coalgebra make_trivial(const Field& f) {
  Coalgebra c;
  c.field = f;
  c.dim = 1;
  c.basis_names = {"e"};
  c.delta = DenseMatrix(f, 1, 1);
  c.delta.at(0, 0) = Scalar::one(f);
  c.epsilon = Vec{Scalar::one(f)};
  return c;
}

/// Group-like coalgebra: Delta(g_i) = g_i (x) g_i, eps(g_i) = 1.
inline Coalgebra make_grouplike(const Field& f, std::size_t n) {
  if (n == 0) throw input_error("grouplike needs n >= 1");
  Coalgebra c;
  c.field = f;
  c.dim = n;
  for (std::size_t i = 0; i < n; ++i) c.basis_names.push_back("g" + std::to_string(i + 1));
  c.delta = DenseMatrix(f, n * n, n);
  c.epsilon = Vec(n, Scalar::one(f));
  for (std::size_t i = 0; i < n; ++i) c.delta.at(i * n + i, i) = Scalar::one(f);
  return c;
}

/// Comatrix coalgebra of size n: basis e_ij (flat i*n+j),
/// Delta(e_ij) = sum_k e_ik (x) e_kj, eps(e_ij) = delta_ij.
inline Coalgebra make_matrix_coalgebra(const Field& f, std::size_t n) {
  if (n == 0) throw input_error("matrix coalgebra needs n >= 1");
  Coalgebra c;
  c.field = f;
  std::size_t dim = n * n;
  c.dim = dim;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c.basis_names.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
  c.delta = DenseMatrix(f, dim * dim, dim);
  c.epsilon = zero_vec(f, dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t from = i * n + j;
      for (std::size_t k = 0; k < n; ++k) {
        std::size_t left = i * n + k, right = k * n + j;
        c.delta.at(left * dim + right, from) = Scalar::one(f);
      }
      (*c.epsilon)[from] = i == j ? Scalar::one(f) : Scalar::zero(f);
    }
  return c;
}

/// Dual numbers coalgebra: Delta(g) = g(x)g, Delta(x) = g(x)x + x(x)g,
/// eps = (1, 0). The standard non-coseparable witness.
inline Coalgebra make_dual_numbers(const Field& f) {
  Coalgebra c;
  c.field = f;
  c.dim = 2;
  c.basis_names = {"g", "x"};
  c.delta = DenseMatrix(f, 4, 2);
  c.delta.at(0 * 2 + 0, 0) = Scalar::one(f);  // g -> g(x)g
  c.delta.at(0 * 2 + 1, 1) = Scalar::one(f);  // x -> g(x)x
  c.delta.at(1 * 2 + 0, 1) = Scalar::one(f);  //    + x(x)g
  c.epsilon = Vec{Scalar::one(f), Scalar::zero(f)};
  return c;
}

/// Builds a named corpus member. grouplike and matrix take the size
/// parameter n (default 2); the others ignore it. An explicit n = 0 is
/// an error.
inline Coalgebra build_corpus(const std::string& name, const Field& f,
                              std::optional<std::size_t> n = std::nullopt) {
  std::size_t size = n.value_or(2);
  if (name == "trivial") return make_trivial(f);
  if (name == "grouplike") return make_grouplike(f, size);
  if (name == "matrix") return make_matrix_coalgebra(f, size);
  if (name == "dualnumbers") return make_dual_numbers(f);
  throw input_error("unknown corpus coalgebra '" + name +
                    "' (expected trivial|grouplike|matrix|dualnumbers)");
}

/// Block-diagonal direct sum; coseparable iff both summands are.
inline Coalgebra direct_sum(const Coalgebra& a, const Coalgebra& b) {
  if (!(a.field == b.field)) throw std::invalid_argument("direct_sum field mismatch");
  Coalgebra c;
  c.field = a.field;
  std::size_t n = a.dim + b.dim;
  c.dim = n;
  for (const auto& s : a.basis_names) c.basis_names.push_back("a." + s);
  for (const auto& s : b.basis_names) c.basis_names.push_back("b." + s);
  c.delta = DenseMatrix(c.field, n * n, n);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (std::size_t k = 0; k < a.dim; ++k)
        c.delta.at(j * n + k, i) = a.d(i, j, k);
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j)
      for (std::size_t k = 0; k < b.dim; ++k)
        c.delta.at((a.dim + j) * n + (a.dim + k), a.dim + i) = b.d(i, j, k);
  if (a.epsilon && b.epsilon) {
    c.epsilon = zero_vec(c.field, n);
    for (std::size_t i = 0; i < a.dim; ++i) (*c.epsilon)[i] = (*a.epsilon)[i];
    for (std::size_t i = 0; i < b.dim; ++i) (*c.epsilon)[a.dim + i] = (*b.epsilon)[i];
  }
  return c;
}

}  // namespace cosep
