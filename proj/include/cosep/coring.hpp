#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosep/coalgebra.hpp"
#include "cosep/dual_algebra.hpp"
#include "cosep/matrix.hpp"

namespace cosep {

/// The A-balanced tensor product M (x)_A N realized as an explicit
/// quotient of the flattened tensor space: relations are the balancing
/// vectors (m.f)(x)n - m(x)(f.n) over all basis triples, and the
/// quotient keeps the non-pivot coordinates as its basis.
struct TensorOverA {
  std::size_t left_dim = 0, right_dim = 0, ambient = 0;
  QuotientSpace quotient;

  std::size_t dim() const { return quotient.dim(); }
  Vec project(const Vec& ambient_vec) const { return quotient.project(ambient_vec); }
  Vec include(const Vec& class_vec) const { return quotient.include(class_vec); }
};

namespace detail {

inline DenseMatrix left_slice(const DenseMatrix& left_action, std::size_t m,
                              std::size_t alpha) {
  DenseMatrix s(left_action.field(), m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) s.at(k, i) = left_action.at(k, alpha * m + i);
  return s;
}

inline DenseMatrix right_slice(const DenseMatrix& right_action, std::size_t a,
                               std::size_t m, std::size_t alpha) {
  DenseMatrix s(right_action.field(), m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) s.at(k, i) = right_action.at(k, i * a + alpha);
  return s;
}

}  // namespace detail

/// Builds M (x)_A N for a right A-module (m_dim, right_action) and a
/// left A-module (n_dim, left_action).
inline TensorOverA tensor_over_algebra(const FinDimAlgebra& A, std::size_t m_dim,
                                       const DenseMatrix& right_action,
                                       std::size_t n_dim,
                                       const DenseMatrix& left_action) {
  std::size_t a = A.dim;
  if (right_action.rows() != m_dim || right_action.cols() != m_dim * a)
    throw std::invalid_argument("right module action shape mismatch");
  if (left_action.rows() != n_dim || left_action.cols() != a * n_dim)
    throw std::invalid_argument("left module action shape mismatch");
  const Field& f = A.field;
  TensorOverA t;
  t.left_dim = m_dim;
  t.right_dim = n_dim;
  t.ambient = m_dim * n_dim;
  EchelonBuilder ech(f, t.ambient);
  for (std::size_t i = 0; i < m_dim; ++i)
    for (std::size_t alpha = 0; alpha < a; ++alpha)
      for (std::size_t j = 0; j < n_dim; ++j) {
        Vec rel = zero_vec(f, t.ambient);
        bool nonzero = false;
        for (std::size_t k = 0; k < m_dim; ++k) {
          const Scalar& x = right_action.at(k, i * a + alpha);
          if (!x.is_zero()) {
            rel[k * n_dim + j] += x;
            nonzero = true;
          }
        }
        for (std::size_t l = 0; l < n_dim; ++l) {
          const Scalar& x = left_action.at(l, alpha * n_dim + j);
          if (!x.is_zero()) {
            rel[i * n_dim + l] -= x;
            nonzero = true;
          }
        }
        if (!nonzero) continue;
        ech.insert(std::move(rel));
      }
  t.quotient = quotient_from_echelon(f, t.ambient, std::move(ech));
  return t;
}

/// A (not necessarily counital) coring over a finite-dimensional
/// algebra A. delta_ambient is a chosen representative of the
/// comultiplication valued in the unquotiented carrier (x) carrier;
/// delta_quotient is its image in the A-balanced quotient.
struct CoringOverA {
  FinDimAlgebra algebra;
  std::size_t carrier_dim = 0;
  DenseMatrix left_action;    // A (x) C -> C, flat alpha*N + i
  DenseMatrix right_action;   // C (x) A -> C, flat i*a + alpha
  DenseMatrix delta_ambient;  // N^2 x N
  TensorOverA tensor;         // carrier (x)_A carrier
  DenseMatrix delta_quotient; // dim(tensor) x N

  Vec act_left(const Vec& avec, const Vec& cvec) const {
    std::size_t a = algebra.dim, n = carrier_dim;
    Vec flat = zero_vec(algebra.field, a * n);
    for (std::size_t alpha = 0; alpha < a; ++alpha) {
      if (avec[alpha].is_zero()) continue;
      for (std::size_t i = 0; i < n; ++i)
        if (!cvec[i].is_zero()) flat[alpha * n + i] = avec[alpha] * cvec[i];
    }
    return left_action.apply(flat);
  }

  Vec act_right(const Vec& cvec, const Vec& avec) const {
    std::size_t a = algebra.dim, n = carrier_dim;
    Vec flat = zero_vec(algebra.field, n * a);
    for (std::size_t i = 0; i < n; ++i) {
      if (cvec[i].is_zero()) continue;
      for (std::size_t alpha = 0; alpha < a; ++alpha)
        if (!avec[alpha].is_zero()) flat[i * a + alpha] = cvec[i] * avec[alpha];
    }
    return right_action.apply(flat);
  }
};

/// C viewed as a coring over the ground field: full tensor space, no
/// balancing, delta as given.
inline CoringOverA coring_over_ground(const Coalgebra& c) {
  CoringOverA cr;
  cr.algebra = ground_field_algebra(c.field);
  cr.carrier_dim = c.dim;
  cr.left_action = DenseMatrix::identity(c.field, c.dim);
  cr.right_action = DenseMatrix::identity(c.field, c.dim);
  cr.delta_ambient = c.delta;
  cr.tensor = tensor_over_algebra(cr.algebra, c.dim, cr.right_action, c.dim,
                                  cr.left_action);
  cr.delta_quotient = cr.tensor.quotient.projection * cr.delta_ambient;
  return cr;
}

/// The induced coring (C : C•): carrier C over the opposite dual
/// algebra, actions f -> c and c <- g, comultiplication chi o Delta.
inline CoringOverA induce_coring(const Coalgebra& c) {
  if (!c.epsilon)
    throw std::invalid_argument("induce_coring needs a counital coalgebra");
  CoringOverA cr;
  cr.algebra = opposite_dual_algebra(c);
  cr.carrier_dim = c.dim;
  BimoduleActions act = build_actions(c);
  cr.left_action = act.left;
  cr.right_action = act.right;
  cr.delta_ambient = c.delta;
  cr.tensor = tensor_over_algebra(cr.algebra, c.dim, cr.right_action, c.dim,
                                  cr.left_action);
  cr.delta_quotient = cr.tensor.quotient.projection * cr.delta_ambient;
  return cr;
}

namespace detail {

// Right action of A on the quotient M (x)_A N through the second
// factor: lift to the canonical representative, act, project.
inline DenseMatrix quotient_right_action(const TensorOverA& t, const FinDimAlgebra& A,
                                         const DenseMatrix& right_action_n) {
  std::size_t q = t.dim(), a = A.dim;
  DenseMatrix out(A.field, q, q * a);
  for (std::size_t alpha = 0; alpha < a; ++alpha) {
    DenseMatrix slice = right_slice(right_action_n, a, t.right_dim, alpha);
    for (std::size_t s = 0; s < q; ++s) {
      Vec ambient = t.include(unit_vec(A.field, q, s));
      Vec acted = apply_slot2(slice, ambient, t.left_dim, t.right_dim);
      Vec cls = t.project(acted);
      for (std::size_t r = 0; r < q; ++r) out.at(r, s * a + alpha) = cls[r];
    }
  }
  return out;
}

}  // namespace detail

/// Iterated balanced tensor product (V1 (x)_A12 V2) (x)_A23 V3 with a
/// projection from the flat space V1 (x) V2 (x) V3. Its kernel is
/// exactly the span of both balancing families, so the flat projection
/// decides equality of composites in the triple product.
struct IteratedTriple {
  std::size_t d1 = 0, d2 = 0, d3 = 0;
  TensorOverA pair;    // V1 (x)_A12 V2
  TensorOverA triple;  // (pair) (x)_A23 V3

  Vec project_flat(const Vec& v) const {
    Vec w = apply_slot1(pair.quotient.projection, v, d1 * d2, d3);
    return triple.project(w);
  }
};

inline IteratedTriple build_triple(const FinDimAlgebra& A12,
                                   const FinDimAlgebra& A23, std::size_t d1,
                                   const DenseMatrix& rho1, std::size_t d2,
                                   const DenseMatrix& lambda2,
                                   const DenseMatrix& rho2, std::size_t d3,
                                   const DenseMatrix& lambda3) {
  IteratedTriple it;
  it.d1 = d1;
  it.d2 = d2;
  it.d3 = d3;
  it.pair = tensor_over_algebra(A12, d1, rho1, d2, lambda2);
  DenseMatrix pair_rho = detail::quotient_right_action(it.pair, A23, rho2);
  it.triple = tensor_over_algebra(A23, it.pair.dim(), pair_rho, d3, lambda3);
  return it;
}

struct CoringReport {
  bool bilinear_left = true;
  bool bilinear_right = true;
  bool coassociative = true;
  bool degenerate_zero = false;
  std::optional<std::size_t> witness;
  bool ok() const { return bilinear_left && bilinear_right && coassociative; }
};

/// Checks (A,A)-bilinearity of delta in the pair quotient and
/// coassociativity in the iterated quotient of three carrier factors.
inline CoringReport validate_coring(const CoringOverA& cr) {
  std::size_t n = cr.carrier_dim, a = cr.algebra.dim;
  CoringReport rep;
  for (std::size_t alpha = 0; alpha < a; ++alpha) {
    DenseMatrix lc = detail::left_slice(cr.left_action, n, alpha);
    DenseMatrix rc = detail::right_slice(cr.right_action, a, n, alpha);
    for (std::size_t i = 0; i < n; ++i) {
      // Delta(alpha . e_i) vs alpha . Delta(e_i), inside the quotient.
      Vec lhs = cr.delta_quotient.apply(lc.col(i));
      Vec amb = cr.tensor.include(cr.delta_quotient.col(i));
      Vec rhs = cr.tensor.project(apply_slot1(lc, amb, n, n));
      if (lhs != rhs && rep.bilinear_left) {
        rep.bilinear_left = false;
        if (!rep.witness) rep.witness = i;
      }
      Vec lhs_r = cr.delta_quotient.apply(rc.col(i));
      Vec rhs_r = cr.tensor.project(apply_slot2(rc, amb, n, n));
      if (lhs_r != rhs_r && rep.bilinear_right) {
        rep.bilinear_right = false;
        if (!rep.witness) rep.witness = i;
      }
    }
  }
  IteratedTriple it = build_triple(cr.algebra, cr.algebra, n, cr.right_action, n,
                                   cr.left_action, cr.right_action, n,
                                   cr.left_action);
  for (std::size_t i = 0; i < n; ++i) {
    Vec di = cr.delta_ambient.col(i);
    Vec x1 = apply_slot1(cr.delta_ambient, di, n, n);
    Vec x2 = apply_slot2(cr.delta_ambient, di, n, n);
    if (it.project_flat(x1) != it.project_flat(x2)) {
      rep.coassociative = false;
      if (!rep.witness) rep.witness = i;
      break;
    }
  }
  rep.degenerate_zero = n > 0 && cr.delta_quotient.is_zero();
  return rep;
}

enum class Side { left, right };

inline std::string side_name(Side s) { return s == Side::left ? "left" : "right"; }

/// A solved one-sided counit: the map carrier -> A as an (a x N)
/// matrix, column i holding the A-coordinates of eps(e_i), plus the
/// full affine solution set of the assembled linear system.
struct CounitSolution {
  Side side = Side::left;
  DenseMatrix map;
  AffineSolutionSet certificate;
};

struct CounitOutcome {
  bool feasible = false;
  std::optional<CounitSolution> solution;
  std::size_t unknowns = 0;
  std::size_t rank_system = 0;
  std::size_t rank_augmented = 0;
  std::size_t solution_dim = 0;
};

/// Decides left/right counitality of the coring by exact linear
/// feasibility over the a*N unknown entries of eps. Constraints:
/// side-appropriate A-linearity on all basis pairs, and the one-sided
/// counit identity evaluated in the carrier through delta_ambient.
inline CounitOutcome solve_counit(const CoringOverA& cr, Side side) {
  const Field& f = cr.algebra.field;
  std::size_t n = cr.carrier_dim, a = cr.algebra.dim;
  std::size_t unknowns = a * n;  // u = alpha*n + i  <->  E[alpha][i]
  detail::AffineSolver solver(f, unknowns);

  // A-linearity: left counits are right A-linear, right counits left
  // A-linear.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t beta = 0; beta < a; ++beta)
      for (std::size_t omega = 0; omega < a; ++omega) {
        Vec row = zero_vec(f, unknowns);
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
          const Scalar& x = side == Side::left
                                ? cr.right_action.at(j, i * a + beta)
                                : cr.left_action.at(j, beta * n + i);
          if (!x.is_zero()) {
            row[omega * n + j] += x;
            nonzero = true;
          }
        }
        for (std::size_t alpha = 0; alpha < a; ++alpha) {
          const Scalar& x = side == Side::left
                                ? cr.algebra.mult.at(omega, alpha * a + beta)
                                : cr.algebra.mult.at(omega, beta * a + alpha);
          if (!x.is_zero()) {
            row[alpha * n + i] -= x;
            nonzero = true;
          }
        }
        if (nonzero) solver.add_row(std::move(row), Scalar::zero(f));
      }

  // Counit identity in the carrier: sum eps(c1) -> c2 = c (left) or
  // sum c1 <- eps(c2) = c (right).
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      Vec row = zero_vec(f, unknowns);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar& dv = cr.delta_ambient.at(j * n + k, i);
          if (dv.is_zero()) continue;
          for (std::size_t alpha = 0; alpha < a; ++alpha) {
            const Scalar& av = side == Side::left
                                   ? cr.left_action.at(l, alpha * n + k)
                                   : cr.right_action.at(l, j * a + alpha);
            if (av.is_zero()) continue;
            row[alpha * n + (side == Side::left ? j : k)] += dv * av;
          }
        }
      solver.add_row(std::move(row),
                     i == l ? Scalar::one(f) : Scalar::zero(f));
    }

  AffineSolutionSet set = solver.solve();
  CounitOutcome out;
  out.unknowns = unknowns;
  out.rank_system = set.rank_matrix;
  out.rank_augmented = set.rank_augmented;
  out.solution_dim = set.dimension;
  out.feasible = set.feasible;
  if (set.feasible) {
    DenseMatrix e(f, a, n);
    for (std::size_t alpha = 0; alpha < a; ++alpha)
      for (std::size_t i = 0; i < n; ++i) e.at(alpha, i) = set.particular[alpha * n + i];
    out.solution = CounitSolution{side, std::move(e), std::move(set)};
  }
  return out;
}

/// Independent verifier for a claimed counit map: re-evaluates the
/// A-linearity and counity constraints directly through the action and
/// multiplication maps, sharing no code with the system assembly.
inline bool verify_counit(const CoringOverA& cr, Side side, const DenseMatrix& eps,
                          std::string* why = nullptr) {
  const Field& f = cr.algebra.field;
  std::size_t n = cr.carrier_dim, a = cr.algebra.dim;
  if (eps.rows() != a || eps.cols() != n) {
    if (why) *why = "counit map has wrong shape";
    return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t beta = 0; beta < a; ++beta) {
      Vec unit_a = unit_vec(f, a, beta);
      Vec e = unit_vec(f, n, i);
      Vec lhs, rhs;
      if (side == Side::left) {
        lhs = eps.apply(cr.act_right(e, unit_a));
        rhs = cr.algebra.product(eps.col(i), unit_a);
      } else {
        lhs = eps.apply(cr.act_left(unit_a, e));
        rhs = cr.algebra.product(unit_a, eps.col(i));
      }
      if (lhs != rhs) {
        if (why)
          *why = side_name(side) + " counit fails A-linearity at basis pair (" +
                 std::to_string(i) + "," + std::to_string(beta) + ")";
        return false;
      }
    }
  for (std::size_t i = 0; i < n; ++i) {
    Vec acc = zero_vec(f, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& dv = cr.delta_ambient.at(j * n + k, i);
        if (dv.is_zero()) continue;
        Vec term = side == Side::left
                       ? cr.act_left(eps.col(j), unit_vec(f, n, k))
                       : cr.act_right(unit_vec(f, n, j), eps.col(k));
        for (std::size_t l = 0; l < n; ++l) acc[l] += dv * term[l];
      }
    if (acc != unit_vec(f, n, i)) {
      if (why)
        *why = side_name(side) + " counit identity fails at basis " +
               std::to_string(i);
      return false;
    }
  }
  return true;
}

enum class DualRingVariant { left, right, two_sided };

/// One of the dual rings *C (left A-linear maps), C* (right A-linear
/// maps) or *C* (bilinear maps), with its product table expressed on a
/// computed basis of the map subspace. Each basis element is stored as
/// a flattened a x N matrix (u = omega*N + i).
struct DualRing {
  DualRingVariant variant = DualRingVariant::left;
  FinDimAlgebra algebra;
  std::size_t map_rows = 0;  // dim A
  std::size_t map_cols = 0;  // carrier dim
  std::vector<Vec> basis;

  /// Coordinates of a map (given as a x N matrix) in the basis;
  /// throws when the map lies outside the subspace.
  Vec expand(const DenseMatrix& map) const {
    const Field& f = algebra.field;
    std::size_t flat = map_rows * map_cols;
    DenseMatrix b(f, flat, basis.size());
    for (std::size_t t = 0; t < basis.size(); ++t)
      for (std::size_t u = 0; u < flat; ++u) b.at(u, t) = basis[t][u];
    Vec target(flat, Scalar::zero(f));
    for (std::size_t omega = 0; omega < map.rows(); ++omega)
      for (std::size_t i = 0; i < map.cols(); ++i)
        target[omega * map.cols() + i] = map.at(omega, i);
    auto sol = solve_affine(b, target);
    if (!sol.feasible)
      throw std::invalid_argument("map does not lie in the dual-ring subspace");
    return sol.particular;
  }
};

/// Computes the chosen dual ring of the coring: solves for the basis of
/// the A-linear map subspace, evaluates the convolution-style product formula on
/// basis pairs, and re-expands products in the basis. Associativity is
/// verified; a failure would be an implementation fault and throws.
inline DualRing dual_ring_product(const CoringOverA& cr, DualRingVariant variant) {
  const Field& f = cr.algebra.field;
  std::size_t n = cr.carrier_dim, a = cr.algebra.dim;
  std::size_t flat = a * n;
  detail::AffineSolver solver(f, flat);
  auto add_left_linear_rows = [&]() {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t beta = 0; beta < a; ++beta)
        for (std::size_t omega = 0; omega < a; ++omega) {
          Vec row = zero_vec(f, flat);
          for (std::size_t j = 0; j < n; ++j) {
            const Scalar& x = cr.left_action.at(j, beta * n + i);
            if (!x.is_zero()) row[omega * n + j] += x;
          }
          for (std::size_t alpha = 0; alpha < a; ++alpha) {
            const Scalar& x = cr.algebra.mult.at(omega, beta * a + alpha);
            if (!x.is_zero()) row[alpha * n + i] -= x;
          }
          solver.add_row(std::move(row), Scalar::zero(f));
        }
  };
  auto add_right_linear_rows = [&]() {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t beta = 0; beta < a; ++beta)
        for (std::size_t omega = 0; omega < a; ++omega) {
          Vec row = zero_vec(f, flat);
          for (std::size_t j = 0; j < n; ++j) {
            const Scalar& x = cr.right_action.at(j, i * a + beta);
            if (!x.is_zero()) row[omega * n + j] += x;
          }
          for (std::size_t alpha = 0; alpha < a; ++alpha) {
            const Scalar& x = cr.algebra.mult.at(omega, alpha * a + beta);
            if (!x.is_zero()) row[alpha * n + i] -= x;
          }
          solver.add_row(std::move(row), Scalar::zero(f));
        }
  };
  if (variant == DualRingVariant::left || variant == DualRingVariant::two_sided)
    add_left_linear_rows();
  if (variant == DualRingVariant::right || variant == DualRingVariant::two_sided)
    add_right_linear_rows();

  AffineSolutionSet hom = solver.solve();
  DualRing ring;
  ring.variant = variant;
  ring.map_rows = a;
  ring.map_cols = n;
  ring.basis = hom.nullspace_basis;
  std::size_t t = ring.basis.size();

  auto as_matrix = [&](const Vec& v) {
    DenseMatrix m(f, a, n);
    for (std::size_t omega = 0; omega < a; ++omega)
      for (std::size_t i = 0; i < n; ++i) m.at(omega, i) = v[omega * n + i];
    return m;
  };
  auto eval_product = [&](const DenseMatrix& F, const DenseMatrix& G) {
    // *_l: (F *_l G)(c) = sum G(c1 . F(c2))
    // *_r: (F *_r G)(c) = sum F(G(c1) . c2)
    // *  : (F * G)(c)   = sum G(c1) F(c2)
    DenseMatrix out(f, a, n);
    for (std::size_t c = 0; c < n; ++c) {
      Vec acc = zero_vec(f, a);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar& dv = cr.delta_ambient.at(j * n + k, c);
          if (dv.is_zero()) continue;
          Vec term;
          if (variant == DualRingVariant::left)
            term = G.apply(cr.act_right(unit_vec(f, n, j), F.col(k)));
          else if (variant == DualRingVariant::right)
            term = F.apply(cr.act_left(G.col(j), unit_vec(f, n, k)));
          else
            term = cr.algebra.product(G.col(j), F.col(k));
          for (std::size_t omega = 0; omega < a; ++omega) acc[omega] += dv * term[omega];
        }
      for (std::size_t omega = 0; omega < a; ++omega) out.at(omega, c) = acc[omega];
    }
    return out;
  };

  ring.algebra.field = f;
  ring.algebra.dim = t;
  ring.algebra.mult = DenseMatrix(f, t, t * t);
  for (std::size_t s = 0; s < t; ++s)
    for (std::size_t u = 0; u < t; ++u) {
      DenseMatrix prod = eval_product(as_matrix(ring.basis[s]), as_matrix(ring.basis[u]));
      Vec coords = ring.expand(prod);
      for (std::size_t k = 0; k < t; ++k) ring.algebra.mult.at(k, s * t + u) = coords[k];
    }
  if (!validate_algebra(ring.algebra).associative)
    throw std::logic_error("dual ring product is not associative (implementation fault)");
  return ring;
}

struct MorphismReport {
  bool algebra_morphism = true;
  bool theta_bilinear = true;
  bool comultiplication = true;
  std::optional<std::size_t> witness;
  bool ok() const { return algebra_morphism && theta_bilinear && comultiplication; }
};

/// Checks that (theta : gamma) : source -> target is a morphism of
/// corings: gamma a morphism of unital algebras, theta bilinear over
/// the actions induced through gamma, and the comultiplication square
/// commuting into the target quotient.
inline MorphismReport check_coring_morphism(const DenseMatrix& theta,
                                            const DenseMatrix& gamma,
                                            const CoringOverA& source,
                                            const CoringOverA& target) {
  const Field& f = source.algebra.field;
  std::size_t ns = source.carrier_dim, nt = target.carrier_dim;
  std::size_t as = source.algebra.dim, at = target.algebra.dim;
  if (theta.rows() != nt || theta.cols() != ns || gamma.rows() != at ||
      gamma.cols() != as)
    throw std::invalid_argument("morphism map shapes do not match the corings");
  MorphismReport rep;
  for (std::size_t i = 0; i < as && rep.algebra_morphism; ++i)
    for (std::size_t j = 0; j < as; ++j) {
      Vec lhs = gamma.apply(source.algebra.product_basis(i, j));
      Vec rhs = target.algebra.product(gamma.col(i), gamma.col(j));
      if (lhs != rhs) {
        rep.algebra_morphism = false;
        rep.witness = i;
        break;
      }
    }
  if (rep.algebra_morphism && source.algebra.unit && target.algebra.unit) {
    if (gamma.apply(*source.algebra.unit) != *target.algebra.unit)
      rep.algebra_morphism = false;
  }
  for (std::size_t alpha = 0; alpha < as && rep.theta_bilinear; ++alpha)
    for (std::size_t i = 0; i < ns; ++i) {
      Vec ga = gamma.col(alpha);
      Vec ti = theta.col(i);
      Vec lhs_l = theta.apply(
          source.act_left(unit_vec(f, as, alpha), unit_vec(f, ns, i)));
      if (lhs_l != target.act_left(ga, ti)) {
        rep.theta_bilinear = false;
        rep.witness = i;
        break;
      }
      Vec lhs_r = theta.apply(
          source.act_right(unit_vec(f, ns, i), unit_vec(f, as, alpha)));
      if (lhs_r != target.act_right(ti, ga)) {
        rep.theta_bilinear = false;
        rep.witness = i;
        break;
      }
    }
  for (std::size_t i = 0; i < ns; ++i) {
    Vec amb = source.delta_ambient.col(i);
    Vec moved = apply_slot2(theta, apply_slot1(theta, amb, ns, ns), nt, ns);
    Vec lhs = target.tensor.project(moved);
    Vec rhs = target.delta_quotient.apply(theta.col(i));
    if (lhs != rhs) {
      rep.comultiplication = false;
      if (!rep.witness) rep.witness = i;
      break;
    }
  }
  return rep;
}

}  // namespace cosep
