#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosep/coring.hpp"

namespace cosep {

/// Cointegral of a counital coalgebra: a bilinear form gamma on C (x) C
/// (an n x n matrix, form[i][j] = gamma(e_i (x) e_j)) with
///   sum gamma(c (x) c'_1) c'_2 = sum c_1 gamma(c_2 (x) c')
///   sum gamma(c_1 (x) c_2) = eps(c).
struct Cointegral {
  DenseMatrix form;
};

/// Direct re-evaluation of both cointegral constraints; independent of
/// the solver's system assembly.
inline bool verify_cointegral(const Coalgebra& c, const DenseMatrix& form,
                              std::string* why = nullptr) {
  std::size_t n = c.dim;
  if (!c.epsilon) throw std::invalid_argument("cointegral needs a counit");
  if (form.rows() != n || form.cols() != n) {
    if (why) *why = "form has wrong shape";
    return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Scalar acc = Scalar::zero(c.field);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& dv = c.d(i, j, k);
        if (!dv.is_zero()) acc += dv * form.at(j, k);
      }
    if (acc != (*c.epsilon)[i]) {
      if (why) *why = "normalization fails at basis " + std::to_string(i);
      return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t ip = 0; ip < n; ++ip) {
      Vec lhs = zero_vec(c.field, n), rhs = zero_vec(c.field, n);
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t l = 0; l < n; ++l) {
          const Scalar& dl = c.d(ip, m, l);
          if (!dl.is_zero()) lhs[l] += dl * form.at(i, m);
          const Scalar& dr = c.d(i, m, l);
          if (!dr.is_zero()) rhs[m] += dr * form.at(l, ip);
        }
      if (lhs != rhs) {
        if (why)
          *why = "Casimir identity fails at basis pair (" + std::to_string(i) +
                 "," + std::to_string(ip) + ")";
        return false;
      }
    }
  return true;
}

struct CointegralOutcome {
  bool feasible = false;
  std::optional<Cointegral> certificate;
  AffineSolutionSet set;
  std::size_t unknowns = 0;
  std::size_t rank_system = 0;
  std::size_t rank_augmented = 0;
  std::size_t solution_dim = 0;
};

/// Decides coseparability of C by exact feasibility of the cointegral
/// system over the n^2 unknowns of the form.
inline CointegralOutcome solve_cointegral(const Coalgebra& c) {
  if (!c.epsilon) throw std::invalid_argument("solve_cointegral needs a counit");
  const Field& f = c.field;
  std::size_t n = c.dim;
  std::size_t unknowns = n * n;  // u = i*n + j
  detail::AffineSolver solver(f, unknowns);
  for (std::size_t i = 0; i < n; ++i) {
    Vec row = zero_vec(f, unknowns);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& dv = c.d(i, j, k);
        if (!dv.is_zero()) row[j * n + k] += dv;
      }
    solver.add_row(std::move(row), (*c.epsilon)[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t ip = 0; ip < n; ++ip)
      for (std::size_t t = 0; t < n; ++t) {
        Vec row = zero_vec(f, unknowns);
        bool nonzero = false;
        for (std::size_t m = 0; m < n; ++m) {
          const Scalar& dl = c.d(ip, m, t);
          if (!dl.is_zero()) {
            row[i * n + m] += dl;
            nonzero = true;
          }
        }
        for (std::size_t l = 0; l < n; ++l) {
          const Scalar& dr = c.d(i, t, l);
          if (!dr.is_zero()) {
            row[l * n + ip] -= dr;
            nonzero = true;
          }
        }
        if (nonzero) solver.add_row(std::move(row), Scalar::zero(f));
      }
  AffineSolutionSet set = solver.solve();
  CointegralOutcome out;
  out.unknowns = unknowns;
  out.rank_system = set.rank_matrix;
  out.rank_augmented = set.rank_augmented;
  out.solution_dim = set.dimension;
  out.feasible = set.feasible;
  if (set.feasible) {
    DenseMatrix g(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g.at(i, j) = set.particular[i * n + j];
    out.certificate = Cointegral{std::move(g)};
  }
  out.set = std::move(set);
  return out;
}

/// Retraction of the comultiplication: pi : C (x) C -> C (an n x n^2
/// matrix) with pi o Delta = id and the bicolinearity identities
/// (id (x) pi)(Delta (x) id) = Delta o pi = (pi (x) id)(id (x) Delta).
struct Retraction {
  DenseMatrix map;
};

inline bool verify_retraction(const Coalgebra& c, const DenseMatrix& p,
                              std::string* why = nullptr) {
  std::size_t n = c.dim;
  if (p.rows() != n || p.cols() != n * n) {
    if (why) *why = "retraction has wrong shape";
    return false;
  }
  if (p * c.delta != DenseMatrix::identity(c.field, n)) {
    if (why) *why = "pi o Delta != id";
    return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec v = unit_vec(c.field, n * n, i * n + j);
      Vec left = apply_slot2(p, apply_slot1(c.delta, v, n, n), n, n * n);
      Vec mid = c.delta.apply(p.apply(v));
      Vec right = apply_slot1(p, apply_slot2(c.delta, v, n, n), n * n, n);
      if (left != mid || mid != right) {
        if (why)
          *why = "bicolinearity fails at basis pair (" + std::to_string(i) + "," +
                 std::to_string(j) + ")";
        return false;
      }
    }
  return true;
}

/// pi |-> eps o pi. Input invariants are re-checked; the output is a
/// cointegral (the inverse construction below recovers pi), and that
/// is asserted.
inline Cointegral retraction_to_cointegral(const Coalgebra& c, const Retraction& p) {
  std::string why;
  if (!verify_retraction(c, p.map, &why))
    throw std::invalid_argument("retraction_to_cointegral: " + why);
  std::size_t n = c.dim;
  DenseMatrix g(c.field, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar acc = Scalar::zero(c.field);
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& pv = p.map.at(k, i * n + j);
        if (!pv.is_zero()) acc += (*c.epsilon)[k] * pv;
      }
      g.at(i, j) = acc;
    }
  if (!verify_cointegral(c, g, &why))
    throw std::logic_error("retraction_to_cointegral output invalid: " + why);
  return Cointegral{std::move(g)};
}

/// gamma |-> [c (x) c' -> sum c_1 gamma(c_2 (x) c')], the inverse leg
/// of the correspondence.
inline Retraction cointegral_to_retraction(const Coalgebra& c, const Cointegral& g) {
  std::string why;
  if (!verify_cointegral(c, g.form, &why))
    throw std::invalid_argument("cointegral_to_retraction: " + why);
  std::size_t n = c.dim;
  DenseMatrix p(c.field, n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Scalar acc = Scalar::zero(c.field);
        for (std::size_t l = 0; l < n; ++l) {
          const Scalar& dv = c.d(i, k, l);
          if (!dv.is_zero()) acc += dv * g.form.at(l, j);
        }
        p.at(k, i * n + j) = acc;
      }
  if (!verify_retraction(c, p, &why))
    throw std::logic_error("cointegral_to_retraction output invalid: " + why);
  return Retraction{std::move(p)};
}

/// Precomputed context for evaluating the balanced-form condition
/// battery on many forms over one coalgebra.
struct BalancedContext {
  Coalgebra c;
  FinDimAlgebra bullet;
  BimoduleActions actions;
  TensorOverA tensor;  // C (x)_{C-bullet} C

  explicit BalancedContext(const Coalgebra& coalg)
      : c(coalg),
        bullet(opposite_dual_algebra(coalg)),
        actions(build_actions(coalg)),
        tensor(tensor_over_algebra(bullet, coalg.dim, actions.right, coalg.dim,
                                   actions.left)) {}
};

struct BalancedReport {
  bool balanced = true;        // (1) <c <- f, d> = <c, f -> d>
  bool left_linear = true;     // (2) gamma^l is left C-bullet-linear
  bool right_linear = true;    // (3) gamma^r is right C-bullet-linear
  bool factors = true;         // (4) factors through C (x)_{C-bullet} C
  bool twisted_compat = true;  // (5) the Delta^tw compatibility
  bool all_agree() const {
    return balanced == left_linear && balanced == right_linear &&
           balanced == factors && balanced == twisted_compat;
  }
  bool value() const { return balanced; }
};

/// Decides the five equivalent conditions on an R-balanced form, each
/// by its own direct computation.
inline BalancedReport balanced_conditions(const BalancedContext& ctx,
                                          const DenseMatrix& form) {
  const Coalgebra& c = ctx.c;
  const Field& f = c.field;
  std::size_t n = c.dim;
  BalancedReport rep;
  for (std::size_t i = 0; i < n && rep.balanced; ++i)
    for (std::size_t a = 0; a < n && rep.balanced; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Scalar lhs = Scalar::zero(f), rhs = Scalar::zero(f);
        for (std::size_t k = 0; k < n; ++k) {
          lhs += c.d(a, k, i) * form.at(k, b);  // <c <- f, d>
          rhs += c.d(b, i, k) * form.at(a, k);  // <c, f -> d>
        }
        if (lhs != rhs) {
          rep.balanced = false;
          break;
        }
      }
  for (std::size_t i = 0; i < n && rep.left_linear; ++i)
    for (std::size_t b = 0; b < n; ++b) {
      // gamma^l(f -> d) vs f • gamma^l(d)
      Vec fd = ctx.actions.act_left(unit_vec(f, n, i), unit_vec(f, n, b));
      Vec lhs = zero_vec(f, n);
      for (std::size_t k = 0; k < n; ++k)
        if (!fd[k].is_zero())
          for (std::size_t a = 0; a < n; ++a) lhs[a] += fd[k] * form.at(a, k);
      Vec rhs = ctx.bullet.product(unit_vec(f, n, i), form.col(b));
      if (lhs != rhs) {
        rep.left_linear = false;
        break;
      }
    }
  for (std::size_t a = 0; a < n && rep.right_linear; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      // gamma^r(c <- g) vs gamma^r(c) • g
      Vec cg = ctx.actions.act_right(unit_vec(f, n, a), unit_vec(f, n, i));
      Vec lhs = zero_vec(f, n);
      for (std::size_t k = 0; k < n; ++k)
        if (!cg[k].is_zero())
          for (std::size_t b = 0; b < n; ++b) lhs[b] += cg[k] * form.at(k, b);
      Vec rhs = ctx.bullet.product(form.row(a), unit_vec(f, n, i));
      if (lhs != rhs) {
        rep.right_linear = false;
        break;
      }
    }
  {
    Vec flat = zero_vec(f, n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = form.at(a, b);
    for (const Vec& rel : ctx.tensor.quotient.relation_echelon) {
      Scalar acc = Scalar::zero(f);
      for (std::size_t u = 0; u < flat.size(); ++u)
        if (!rel[u].is_zero()) acc += rel[u] * flat[u];
      if (!acc.is_zero()) {
        rep.factors = false;
        break;
      }
    }
  }
  for (std::size_t a = 0; a < n && rep.twisted_compat; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Vec lhs = zero_vec(f, n), rhs = zero_vec(f, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar& da = c.d(a, j, k);
          if (!da.is_zero()) lhs[k] += da * form.at(j, b);
          const Scalar& db = c.d(b, j, k);
          if (!db.is_zero()) rhs[j] += db * form.at(a, k);
        }
      if (lhs != rhs) {
        rep.twisted_compat = false;
        break;
      }
    }
  return rep;
}

struct EpsilonBarReport {
  bool linear = true;
  std::optional<std::array<std::size_t, 3>> witness;  // (f, c, d) indices
  Scalar lhs, rhs;  // witness values eps-bar(f->c)(d) vs (f•eps-bar(c))(d)
};

/// Searches for a witness that eps-bar(c) = eps(c) eps(-) fails left
/// C-bullet-linearity, evaluating both composites literally.
inline EpsilonBarReport epsilon_bar_check(const Coalgebra& c) {
  if (!c.epsilon) throw std::invalid_argument("epsilon_bar_check needs a counit");
  const Field& f = c.field;
  std::size_t n = c.dim;
  BimoduleActions act = build_actions(c);
  FinDimAlgebra bullet = opposite_dual_algebra(c);
  const Vec& eps = *c.epsilon;
  EpsilonBarReport rep;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) {
      // eps-bar(f -> c) as an element of C-bullet
      Vec fc = act.act_left(unit_vec(f, n, i), unit_vec(f, n, a));
      Scalar eps_fc = Scalar::zero(f);
      for (std::size_t k = 0; k < n; ++k) eps_fc += eps[k] * fc[k];
      Vec lhs_fun = zero_vec(f, n);
      for (std::size_t b = 0; b < n; ++b) lhs_fun[b] = eps_fc * eps[b];
      // f • eps-bar(c)
      Vec ebar_c = zero_vec(f, n);
      for (std::size_t b = 0; b < n; ++b) ebar_c[b] = eps[a] * eps[b];
      Vec rhs_fun = bullet.product(unit_vec(f, n, i), ebar_c);
      for (std::size_t b = 0; b < n; ++b)
        if (lhs_fun[b] != rhs_fun[b]) {
          rep.linear = false;
          rep.witness = {i, a, b};
          rep.lhs = lhs_fun[b];
          rep.rhs = rhs_fun[b];
          return rep;
        }
    }
  return rep;
}

/// The separable multiplication mu_C(c (x) c') = eps^l(c) -> c' induced
/// by a left counit, together with the executable certificate that
/// Delta is a two-sided-linear section of it.
struct InducedMultiplication {
  FinDimAlgebra algebra;
  bool associative = false;
  bool section_identity = false;    // mu o Delta = id
  bool delta_left_linear = false;   // Delta(c c') = c Delta(c')
  bool delta_right_linear = false;  // Delta(c c') = Delta(c) c'
  // The separability section is Delta itself; this records where the
  // certificate came from.
  std::string provenance = "comultiplication section of the counit-induced multiplication";
  bool ok() const {
    return associative && section_identity && delta_left_linear &&
           delta_right_linear;
  }
};

inline InducedMultiplication induced_multiplication(const Coalgebra& c,
                                                    const CoringOverA& coring,
                                                    const DenseMatrix& eps_l) {
  std::string why;
  if (!verify_counit(coring, Side::left, eps_l, &why))
    throw std::invalid_argument("induced_multiplication: eps_l fails re-verification: " + why);
  const Field& f = c.field;
  std::size_t n = c.dim;
  InducedMultiplication out;
  out.algebra.field = f;
  out.algebra.dim = n;
  out.algebra.mult = DenseMatrix(f, n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec prod = coring.act_left(eps_l.col(i), unit_vec(f, n, j));
      for (std::size_t k = 0; k < n; ++k) out.algebra.mult.at(k, i * n + j) = prod[k];
    }
  out.associative = validate_algebra(out.algebra).associative;
  out.section_identity = out.algebra.mult * c.delta == DenseMatrix::identity(f, n);
  out.delta_left_linear = true;
  out.delta_right_linear = true;
  for (std::size_t i = 0; i < n && (out.delta_left_linear || out.delta_right_linear);
       ++i) {
    DenseMatrix left_mult(f, n, n), right_mult(f, n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t u = 0; u < n; ++u) {
        left_mult.at(k, u) = out.algebra.mult.at(k, i * n + u);   // mu(e_i (x) -)
        right_mult.at(k, u) = out.algebra.mult.at(k, u * n + i);  // mu(- (x) e_i)
      }
    for (std::size_t j = 0; j < n; ++j) {
      Vec prod_ij = out.algebra.product_basis(i, j);
      Vec lhs = c.delta.apply(prod_ij);
      if (out.delta_left_linear &&
          lhs != apply_slot1(left_mult, c.delta.col(j), n, n))
        out.delta_left_linear = false;
      Vec prod_ji = out.algebra.product_basis(j, i);
      Vec lhs2 = c.delta.apply(prod_ji);
      if (out.delta_right_linear &&
          lhs2 != apply_slot2(right_mult, c.delta.col(j), n, n))
        out.delta_right_linear = false;
      if (!out.delta_left_linear && !out.delta_right_linear) break;
    }
  }
  return out;
}

struct MeasuringPairingReport {
  bool applicable = false;
  bool kappa_algebra_morphism = false;
  bool opposite_separable = false;
  bool c_coseparable = false;
  bool ok() const {
    return applicable && kappa_algebra_morphism && opposite_separable &&
           c_coseparable;
  }
};

/// Checks the separable measuring pairing (C^op, C): kappa_P(c) =
/// eps^l(c)(-) is an algebra morphism C^op -> C* for the convolution
/// product, C^op is separable via the twisted section, and C is
/// coseparable. When eps_l is absent or invalid the report just says
/// the precondition is unmet.
inline MeasuringPairingReport measuring_pairing_check(const Coalgebra& c,
                                                      const CoringOverA& coring,
                                                      const DenseMatrix* eps_l) {
  MeasuringPairingReport rep;
  if (!eps_l || !verify_counit(coring, Side::left, *eps_l)) return rep;
  rep.applicable = true;
  const Field& f = c.field;
  std::size_t n = c.dim;
  InducedMultiplication ind = induced_multiplication(c, coring, *eps_l);
  const FinDimAlgebra& mu = ind.algebra;
  FinDimAlgebra conv = dual_convolution_algebra(c);

  rep.kappa_algebra_morphism = true;
  for (std::size_t i = 0; i < n && rep.kappa_algebra_morphism; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // kappa(e_i op* e_j) = kappa(e_i) * kappa(e_j) in C*
      Vec opprod = mu.product_basis(j, i);
      Vec lhs = eps_l->apply(opprod);
      Vec rhs = conv.product(eps_l->col(i), eps_l->col(j));
      if (lhs != rhs) {
        rep.kappa_algebra_morphism = false;
        break;
      }
    }

  // C^op separable: delta_op = tau o Delta is a bilinear section of mu^op.
  DenseMatrix delta_op(f, n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) delta_op.at(j * n + k, i) = c.d(i, k, j);
  bool op_section = true, op_left = true, op_right = true;
  for (std::size_t i = 0; i < n; ++i) {
    Vec acc = zero_vec(f, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& dv = delta_op.at(j * n + k, i);
        if (dv.is_zero()) continue;
        Vec prod = mu.product_basis(k, j);  // mu^op(e_j (x) e_k) = mu(e_k (x) e_j)
        for (std::size_t l = 0; l < n; ++l) acc[l] += dv * prod[l];
      }
    if (acc != unit_vec(f, n, i)) {
      op_section = false;
      break;
    }
  }
  for (std::size_t i = 0; i < n && (op_left || op_right); ++i) {
    DenseMatrix opl(f, n, n), opr(f, n, n);  // x |-> x op* e_i ; x |-> e_i op* x
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t u = 0; u < n; ++u) {
        opl.at(k, u) = mu.mult.at(k, i * n + u);  // e_i op* u = mu(u (x) e_i)... see below
        opr.at(k, u) = mu.mult.at(k, u * n + i);
      }
    // e_i op* x = mu(x (x) e_i) -> matrix columns mu[.][(u,i)] = opr
    // x op* e_i = mu(e_i (x) x) -> matrix columns mu[.][(i,u)] = opl
    for (std::size_t j = 0; j < n; ++j) {
      Vec op_ij = mu.product_basis(j, i);  // e_i op* e_j
      Vec lhs = delta_op.apply(op_ij);
      if (op_left && lhs != apply_slot1(opr, delta_op.col(j), n, n)) op_left = false;
      Vec op_ji = mu.product_basis(i, j);  // e_j op* e_i
      Vec lhs2 = delta_op.apply(op_ji);
      if (op_right && lhs2 != apply_slot2(opl, delta_op.col(j), n, n))
        op_right = false;
      if (!op_left && !op_right) break;
    }
  }
  rep.opposite_separable = op_section && op_left && op_right;
  rep.c_coseparable = solve_cointegral(c).feasible;
  return rep;
}

/// Cointegrals delta whose transposed reading
///   eps^l(e_i)(e_j) := delta(e_i (x) e_j)
/// is itself a right-A-linear left counit of (C:C-bullet). Such a
/// delta gives a splitting pi for which gamma^l = eps o pi o tau
/// certifies as a left counit, and whose transpose-counit in turn
/// yields a certified retraction of the twisted comultiplication (the
/// co-opposite Casimir identity reduces to delta's own). A cointegral
/// chosen without the extra constraints is only left C-bullet-linear
/// in general and need not certify.
inline CointegralOutcome solve_counital_cointegral(const Coalgebra& c,
                                                   const CoringOverA& coring) {
  const Field& f = c.field;
  std::size_t n = c.dim;
  if (coring.algebra.dim != n || coring.carrier_dim != n)
    throw std::invalid_argument("expected the induced coring (C:C-bullet)");
  detail::AffineSolver solver(f, n * n);  // u = i*n + j for delta[i][j]
  for (std::size_t i = 0; i < n; ++i) {
    Vec row = zero_vec(f, n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& dv = c.d(i, j, k);
        if (!dv.is_zero()) row[j * n + k] += dv;
      }
    solver.add_row(std::move(row), (*c.epsilon)[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t ip = 0; ip < n; ++ip)
      for (std::size_t t = 0; t < n; ++t) {
        Vec row = zero_vec(f, n * n);
        bool nonzero = false;
        for (std::size_t m = 0; m < n; ++m) {
          const Scalar& dl = c.d(ip, m, t);
          if (!dl.is_zero()) {
            row[i * n + m] += dl;
            nonzero = true;
          }
        }
        for (std::size_t l = 0; l < n; ++l) {
          const Scalar& dr = c.d(i, t, l);
          if (!dr.is_zero()) {
            row[l * n + ip] -= dr;
            nonzero = true;
          }
        }
        if (nonzero) solver.add_row(std::move(row), Scalar::zero(f));
      }
  // right A-linearity of the transpose: eps(c <- g) = eps(c) • g with
  // eps(e_i)(e_j) = delta[i][j]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t beta = 0; beta < n; ++beta)
      for (std::size_t omega = 0; omega < n; ++omega) {
        Vec row = zero_vec(f, n * n);
        bool nonzero = false;
        for (std::size_t j = 0; j < n; ++j) {
          const Scalar& x = coring.right_action.at(j, i * n + beta);
          if (!x.is_zero()) {
            row[j * n + omega] += x;
            nonzero = true;
          }
        }
        for (std::size_t alpha = 0; alpha < n; ++alpha) {
          const Scalar& x = coring.algebra.mult.at(omega, alpha * n + beta);
          if (!x.is_zero()) {
            row[i * n + alpha] -= x;
            nonzero = true;
          }
        }
        if (nonzero) solver.add_row(std::move(row), Scalar::zero(f));
      }
  // counity of the transpose: sum eps(c_1) -> c_2 = c
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      Vec row = zero_vec(f, n * n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar& dv = c.d(i, j, k);
          if (dv.is_zero()) continue;
          for (std::size_t alpha = 0; alpha < n; ++alpha) {
            const Scalar& av = coring.left_action.at(l, alpha * n + k);
            if (!av.is_zero()) row[j * n + alpha] += dv * av;
          }
        }
      solver.add_row(std::move(row), i == l ? Scalar::one(f) : Scalar::zero(f));
    }
  AffineSolutionSet set = solver.solve();
  CointegralOutcome out;
  out.unknowns = n * n;
  out.rank_system = set.rank_matrix;
  out.rank_augmented = set.rank_augmented;
  out.solution_dim = set.dimension;
  out.feasible = set.feasible;
  if (set.feasible) {
    DenseMatrix g(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g.at(i, j) = set.particular[i * n + j];
    out.certificate = Cointegral{std::move(g)};
  }
  out.set = std::move(set);
  return out;
}

/// The four-verdict equivalence pipeline: coseparability of C, left
/// counitality of (C:C-bullet), coseparability of C^cop, right
/// counitality of (C:C-bullet). The four verdicts must agree whenever
/// the equivalence holds (always over the corpus fields Q and F_5; in
/// characteristic p dividing a comatrix block size the counit legs can
/// genuinely drop out while cointegrals survive, and the report then
/// carries agree = false). When all four are true the proof's two
/// cross-constructions are exercised and certified as well.
struct TheoremReport {
  CointegralOutcome cointegral;
  CounitOutcome counit_left;
  CointegralOutcome cointegral_coop;
  CounitOutcome counit_right;
  bool agree = false;
  bool verdict = false;  // meaningful when agree
  bool counit_from_cointegral_certified = false;
  bool coop_retraction_from_counit_certified = false;
  std::optional<DenseMatrix> counit_from_cointegral;
  std::optional<DenseMatrix> coop_retraction;
};

inline TheoremReport theorem_pipeline(const Coalgebra& c) {
  if (!c.epsilon) throw std::invalid_argument("theorem_pipeline needs a counit");
  const Field& f = c.field;
  std::size_t n = c.dim;
  TheoremReport rep;
  CoringOverA coring = induce_coring(c);
  Coalgebra cop = coopposite(c);
  rep.cointegral = solve_cointegral(c);
  rep.counit_left = solve_counit(coring, Side::left);
  rep.cointegral_coop = solve_cointegral(cop);
  rep.counit_right = solve_counit(coring, Side::right);
  bool v = rep.cointegral.feasible;
  rep.agree = rep.counit_left.feasible == v && rep.cointegral_coop.feasible == v &&
              rep.counit_right.feasible == v;
  rep.verdict = v;
  if (!rep.agree || !v) return rep;

  CointegralOutcome joint = solve_counital_cointegral(c, coring);
  if (!joint.feasible) return rep;  // cross-constructions stay uncertified

  // (1) => (2): from the chosen cointegral through its retraction, the
  // form gamma-tilde = eps o pi o tau yields a left counit gamma^l.
  DenseMatrix e(f, n, n);
  {
    Retraction pi = cointegral_to_retraction(c, *joint.certificate);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        // eps^l(e_i)(e_j) = gamma-tilde(e_j (x) e_i) = eps(pi(e_i (x) e_j))
        Scalar acc = Scalar::zero(f);
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar& pv = pi.map.at(k, i * n + j);
          if (!pv.is_zero()) acc += (*c.epsilon)[k] * pv;
        }
        e.at(j, i) = acc;
      }
    rep.counit_from_cointegral_certified = verify_counit(coring, Side::left, e);
    rep.counit_from_cointegral = e;
  }

  // (2) => (3): from that left counit, pi-tilde(c (x) d) = eps^l(d) -> c
  // retracts the twisted comultiplication.
  {
    DenseMatrix pt(f, n, n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec val = coring.act_left(e.col(j), unit_vec(f, n, i));
        for (std::size_t k = 0; k < n; ++k) pt.at(k, i * n + j) = val[k];
      }
    rep.coop_retraction_from_counit_certified = verify_retraction(cop, pt);
    rep.coop_retraction = std::move(pt);
  }
  return rep;
}

/// Deterministic generator backing the randomized suites; the default
/// seed is fixed and can be overridden by flag or COALG_SEED.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() %
                                          static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eedba5eULL;

inline DenseMatrix random_form(const Field& f, std::size_t n, SplitMix64& rng) {
  DenseMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = f.kind == Field::Kind::prime
                       ? Scalar::from_int(f, rng.in_range(0, f.p - 1))
                       : Scalar::fraction(f, rng.in_range(-4, 4), rng.in_range(1, 3));
  return m;
}

/// A random two-summand direct sum of corpus members with its known
/// coseparability ground truth (coseparable iff no dual-numbers
/// summand).
struct RandomSum {
  Coalgebra coalgebra;
  std::string description;
  bool expected_coseparable = true;
};

inline RandomSum random_corpus_direct_sum(SplitMix64& rng) {
  static const char* names[6] = {"trivial",  "grouplike", "grouplike",
                                 "matrix",   "matrix",    "dualnumbers"};
  static const std::size_t params[6] = {0, 2, 3, 2, 3, 0};
  Field f = rng.next() % 2 == 0 ? Field::rationals() : Field::prime(5);
  std::size_t i = static_cast<std::size_t>(rng.in_range(0, 5));
  std::size_t j = static_cast<std::size_t>(rng.in_range(0, 5));
  RandomSum out;
  out.coalgebra = direct_sum(build_corpus(names[i], f, params[i]),
                             build_corpus(names[j], f, params[j]));
  out.description = std::string(names[i]) +
                    (params[i] ? "(" + std::to_string(params[i]) + ")" : "") + "+" +
                    std::string(names[j]) +
                    (params[j] ? "(" + std::to_string(params[j]) + ")" : "") +
                    " over " + f.name();
  out.expected_coseparable =
      std::string(names[i]) != "dualnumbers" && std::string(names[j]) != "dualnumbers";
  return out;
}

}  // namespace cosep
