#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosep/coalgebra.hpp"
#include "cosep/matrix.hpp"

namespace cosep {

/// Finite-dimensional (possibly non-unital) algebra by structure
/// constants: mult is a (dim x dim^2) matrix sending e_i (x) e_j
/// (flat i*dim + j) to the product e_i * e_j.
struct FinDimAlgebra {
  Field field;
  std::size_t dim = 0;
  DenseMatrix mult;
  std::optional<Vec> unit;

  Vec product(const Vec& x, const Vec& y) const {
    Vec xy = zero_vec(field, dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j)
        if (!y[j].is_zero()) xy[i * dim + j] = x[i] * y[j];
    }
    return mult.apply(xy);
  }

  Vec product_basis(std::size_t i, std::size_t j) const {
    return mult.col(i * dim + j);
  }
};

struct AlgebraReport {
  bool associative = false;
  bool unit_ok = true;  // vacuously true when no unit
  std::optional<std::size_t> witness;
  bool ok() const { return associative && unit_ok; }
};

inline AlgebraReport validate_algebra(const FinDimAlgebra& a) {
  std::size_t n = a.dim;
  if (a.mult.rows() != n || a.mult.cols() != n * n)
    throw std::invalid_argument("mult must be n x n^2");
  AlgebraReport rep;
  rep.associative = true;
  for (std::size_t i = 0; i < n && rep.associative; ++i)
    for (std::size_t j = 0; j < n && rep.associative; ++j) {
      Vec ij = a.product_basis(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        Vec lhs = a.product(ij, unit_vec(a.field, n, k));
        Vec rhs = a.product(unit_vec(a.field, n, i), a.product_basis(j, k));
        if (lhs != rhs) {
          rep.associative = false;
          rep.witness = i;
          break;
        }
      }
    }
  if (a.unit) {
    for (std::size_t i = 0; i < n; ++i) {
      Vec e = unit_vec(a.field, n, i);
      if (a.product(*a.unit, e) != e || a.product(e, *a.unit) != e) {
        rep.unit_ok = false;
        if (!rep.witness) rep.witness = i;
        break;
      }
    }
  }
  return rep;
}

/// The ground field as a one-dimensional unital algebra.
inline FinDimAlgebra ground_field_algebra(const Field& f) {
  FinDimAlgebra a;
  a.field = f;
  a.dim = 1;
  a.mult = DenseMatrix(f, 1, 1);
  a.mult.at(0, 0) = Scalar::one(f);
  a.unit = Vec{Scalar::one(f)};
  return a;
}

/// Convolution algebra C* on the coordinate dual basis:
/// (f * g)(c) = sum f(c_1) g(c_2), i.e. mult[i][j][k] = d[k][i][j].
/// Unital with unit epsilon exactly when C is counital.
inline FinDimAlgebra dual_convolution_algebra(const Coalgebra& c) {
  std::size_t n = c.dim;
  FinDimAlgebra a;
  a.field = c.field;
  a.dim = n;
  a.mult = DenseMatrix(c.field, n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) a.mult.at(k, i * n + j) = c.d(k, i, j);
  if (c.epsilon) a.unit = *c.epsilon;
  return a;
}

/// Opposite dual algebra C• = (C*)^op: (f • g)(c) = sum g(c_1) f(c_2).
inline FinDimAlgebra opposite_dual_algebra(const Coalgebra& c) {
  FinDimAlgebra a = dual_convolution_algebra(c);
  std::size_t n = a.dim;
  FinDimAlgebra op = a;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        op.mult.at(k, i * n + j) = a.mult.at(k, j * n + i);
  return op;
}

/// Unit map of C•: 1 of the ground field goes to epsilon in dual
/// coordinates. Requires a counital coalgebra.
inline Vec unit_map_eta(const Coalgebra& c) {
  if (!c.epsilon) throw std::invalid_argument("unit_map_eta needs a counit");
  return *c.epsilon;
}

/// The module actions making C a (C•,C•)-bimodule.
/// left:  C• (x) C -> C,  f -> c := sum f(c_1) c_2   (flat index f*n + c)
/// right: C (x) C• -> C,  c <- g := sum c_1 g(c_2)   (flat index c*n + g)
struct BimoduleActions {
  DenseMatrix left;
  DenseMatrix right;

  Vec act_left(const Vec& f, const Vec& c) const {
    std::size_t n = left.rows();
    Vec fc = zero_vec(left.field(), n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (f[i].is_zero()) continue;
      for (std::size_t a = 0; a < n; ++a)
        if (!c[a].is_zero()) fc[i * n + a] = f[i] * c[a];
    }
    return left.apply(fc);
  }

  Vec act_right(const Vec& c, const Vec& g) const {
    std::size_t n = right.rows();
    Vec cg = zero_vec(right.field(), n * n);
    for (std::size_t a = 0; a < n; ++a) {
      if (c[a].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!g[j].is_zero()) cg[a * n + j] = c[a] * g[j];
    }
    return right.apply(cg);
  }
};

/// Builds both action matrices from the structure constants and checks
/// the bimodule axioms on basis triples. A failure cannot come from
/// valid input, so it throws.
inline BimoduleActions build_actions(const Coalgebra& c) {
  std::size_t n = c.dim;
  BimoduleActions act;
  act.left = DenseMatrix(c.field, n, n * n);
  act.right = DenseMatrix(c.field, n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        // e_i* -> e_a = sum_k d[a][i][k] e_k ;  e_a <- e_j* = sum_k d[a][k][j] e_k
        act.left.at(k, i * n + a) = c.d(a, i, k);
        act.right.at(k, a * n + i) = c.d(a, k, i);
      }
  FinDimAlgebra bullet = opposite_dual_algebra(c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec fg = bullet.product_basis(i, j);
      Vec f = unit_vec(c.field, n, i), g = unit_vec(c.field, n, j);
      for (std::size_t a = 0; a < n; ++a) {
        Vec e = unit_vec(c.field, n, a);
        if (act.act_left(fg, e) != act.act_left(f, act.act_left(g, e)))
          throw std::logic_error("bimodule axiom (f•g)->c failed; corrupt coalgebra");
        if (act.act_right(act.act_right(e, f), g) != act.act_right(e, fg))
          throw std::logic_error("bimodule axiom c<-(f•g) failed; corrupt coalgebra");
        if (act.act_right(act.act_left(f, e), g) !=
            act.act_left(f, act.act_right(e, g)))
          throw std::logic_error("bimodule axiom (f->c)<-g failed; corrupt coalgebra");
      }
    }
  return act;
}

}  // namespace cosep
