#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cosep/coring.hpp"

namespace cosep {

/// The Dorroh unitalization C-hat = C x A of a coring: a counital
/// coring on the product bimodule, with the base embedded as a coideal.
/// Carrier coordinates: first N for the C part, last a for the A part.
struct DorrohCoring {
  CoringOverA base;
  CoringOverA hat;
  DenseMatrix epsilon_hat;  // a x (N+a), (c,x) |-> x
  DenseMatrix iota;         // (N+a) x a, x |-> (0,x)
  DenseMatrix pi;           // N x (N+a), (c,x) |-> c
};

/// Builds the Dorroh coring. Requires a unital base algebra; the
/// comultiplication of (c,x) is
///   sum (c1,0)(x)(c2,0) + (0,1)(x)(c,x) + (c,x)(x)(0,1) - (0,x)(x)(0,1).
inline DorrohCoring build_dorroh(const CoringOverA& base) {
  if (!base.algebra.unit)
    throw std::invalid_argument("build_dorroh needs a unital base algebra");
  const Field& f = base.algebra.field;
  std::size_t n = base.carrier_dim, a = base.algebra.dim, nh = n + a;
  DorrohCoring d;
  d.base = base;
  d.hat.algebra = base.algebra;
  d.hat.carrier_dim = nh;

  d.hat.left_action = DenseMatrix(f, nh, a * nh);
  d.hat.right_action = DenseMatrix(f, nh, nh * a);
  for (std::size_t beta = 0; beta < a; ++beta) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        d.hat.left_action.at(k, beta * nh + i) = base.left_action.at(k, beta * n + i);
        d.hat.right_action.at(k, i * a + beta) = base.right_action.at(k, i * a + beta);
      }
    }
    for (std::size_t omega = 0; omega < a; ++omega)
      for (std::size_t k = 0; k < a; ++k) {
        d.hat.left_action.at(n + k, beta * nh + (n + omega)) =
            base.algebra.mult.at(k, beta * a + omega);
        d.hat.right_action.at(n + k, (n + omega) * a + beta) =
            base.algebra.mult.at(k, omega * a + beta);
      }
  }

  const Vec& unit = *base.algebra.unit;
  d.hat.delta_ambient = DenseMatrix(f, nh * nh, nh);
  auto add = [&](std::size_t row_l, std::size_t row_r, std::size_t col, Scalar v) {
    d.hat.delta_ambient.at(row_l * nh + row_r, col) += v;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& v = base.delta_ambient.at(j * n + k, i);
        if (!v.is_zero()) add(j, k, i, v);
      }
    for (std::size_t omega = 0; omega < a; ++omega) {
      if (unit[omega].is_zero()) continue;
      add(n + omega, i, i, unit[omega]);  // (0,1) (x) (c,0)
      add(i, n + omega, i, unit[omega]);  // (c,0) (x) (0,1)
    }
  }
  for (std::size_t x = 0; x < a; ++x)
    for (std::size_t omega = 0; omega < a; ++omega) {
      if (unit[omega].is_zero()) continue;
      // (0,1)(x)(0,e_x) + (0,e_x)(x)(0,1) - (0,e_x)(x)(0,1) = (0,1)(x)(0,e_x)
      add(n + omega, n + x, n + x, unit[omega]);
    }

  d.hat.tensor = tensor_over_algebra(d.hat.algebra, nh, d.hat.right_action, nh,
                                     d.hat.left_action);
  d.hat.delta_quotient = d.hat.tensor.quotient.projection * d.hat.delta_ambient;

  d.epsilon_hat = DenseMatrix(f, a, nh);
  for (std::size_t omega = 0; omega < a; ++omega)
    d.epsilon_hat.at(omega, n + omega) = Scalar::one(f);
  d.iota = DenseMatrix(f, nh, a);
  for (std::size_t omega = 0; omega < a; ++omega)
    d.iota.at(n + omega, omega) = Scalar::one(f);
  d.pi = DenseMatrix(f, n, nh);
  for (std::size_t i = 0; i < n; ++i) d.pi.at(i, i) = Scalar::one(f);
  return d;
}

/// Two-sided counit identities and epsilon bilinearity of a counital
/// coring, evaluated through the ambient comultiplication.
struct CounitalReport {
  bool eps_bilinear = true;
  bool left_identity = true;
  bool right_identity = true;
  std::optional<std::size_t> witness;
  bool ok() const { return eps_bilinear && left_identity && right_identity; }
};

inline CounitalReport check_counital(const CoringOverA& cr, const DenseMatrix& eps) {
  const Field& f = cr.algebra.field;
  std::size_t n = cr.carrier_dim, a = cr.algebra.dim;
  CounitalReport rep;
  for (std::size_t beta = 0; beta < a && rep.eps_bilinear; ++beta)
    for (std::size_t i = 0; i < n; ++i) {
      Vec unit_b = unit_vec(f, a, beta), e = unit_vec(f, n, i);
      if (eps.apply(cr.act_left(unit_b, e)) !=
              cr.algebra.product(unit_b, eps.col(i)) ||
          eps.apply(cr.act_right(e, unit_b)) !=
              cr.algebra.product(eps.col(i), unit_b)) {
        rep.eps_bilinear = false;
        rep.witness = i;
        break;
      }
    }
  for (std::size_t i = 0; i < n; ++i) {
    Vec left = zero_vec(f, n), right = zero_vec(f, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& dv = cr.delta_ambient.at(j * n + k, i);
        if (dv.is_zero()) continue;
        Vec tl = cr.act_left(eps.col(j), unit_vec(f, n, k));
        Vec tr = cr.act_right(unit_vec(f, n, j), eps.col(k));
        for (std::size_t l = 0; l < n; ++l) {
          left[l] += dv * tl[l];
          right[l] += dv * tr[l];
        }
      }
    Vec e = unit_vec(f, n, i);
    if (left != e && rep.left_identity) {
      rep.left_identity = false;
      if (!rep.witness) rep.witness = i;
    }
    if (right != e && rep.right_identity) {
      rep.right_identity = false;
      if (!rep.witness) rep.witness = i;
    }
  }
  return rep;
}

struct DorrohReport {
  CoringReport coring;
  CounitalReport counital;
  bool eps_iota_is_identity = false;
  bool iota_injective = false;
  bool iota_bilinear = false;
  bool pi_coring_morphism = false;
  bool ok() const {
    return coring.ok() && counital.ok() && eps_iota_is_identity &&
           iota_injective && iota_bilinear && pi_coring_morphism;
  }
};

/// Full validation of a Dorroh coring: counital coring axioms plus the
/// structure maps iota and pi.
inline DorrohReport validate_dorroh(const DorrohCoring& d) {
  const Field& f = d.hat.algebra.field;
  std::size_t a = d.hat.algebra.dim;
  DorrohReport rep;
  rep.coring = validate_coring(d.hat);
  rep.counital = check_counital(d.hat, d.epsilon_hat);
  rep.eps_iota_is_identity =
      d.epsilon_hat * d.iota == DenseMatrix::identity(f, a);
  rep.iota_injective = rank(d.iota) == a;
  rep.iota_bilinear = true;
  for (std::size_t beta = 0; beta < a && rep.iota_bilinear; ++beta)
    for (std::size_t alpha = 0; alpha < a; ++alpha) {
      Vec unit_b = unit_vec(f, a, beta);
      Vec lhs = d.iota.apply(d.hat.algebra.product_basis(beta, alpha));
      Vec rhs = d.hat.act_left(unit_b, d.iota.col(alpha));
      Vec lhs2 = d.iota.apply(d.hat.algebra.product_basis(alpha, beta));
      Vec rhs2 = d.hat.act_right(d.iota.col(alpha), unit_b);
      if (lhs != rhs || lhs2 != rhs2) {
        rep.iota_bilinear = false;
        break;
      }
    }
  rep.pi_coring_morphism =
      check_coring_morphism(d.pi, DenseMatrix::identity(f, a), d.hat, d.base).ok();
  return rep;
}

struct CoidealReport {
  bool epsilon_vanishes = false;
  bool delta_into_sum = false;
  std::optional<std::size_t> witness;
  bool ok() const { return epsilon_vanishes && delta_into_sum; }
};

/// Checks that the embedded base C x {0} is a coideal of C-hat:
/// eps vanishes on it and Delta maps it into K(x)C-hat + C-hat(x)K
/// inside the balanced quotient.
inline CoidealReport check_coideal_embedding(const DorrohCoring& d) {
  const Field& f = d.hat.algebra.field;
  std::size_t n = d.base.carrier_dim, nh = d.hat.carrier_dim;
  CoidealReport rep;
  rep.epsilon_vanishes = true;
  for (std::size_t i = 0; i < n && rep.epsilon_vanishes; ++i)
    if (!is_zero_vec(d.epsilon_hat.col(i))) {
      rep.epsilon_vanishes = false;
      rep.witness = i;
    }
  EchelonBuilder span(f, d.hat.tensor.dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < nh; ++x) {
      span.insert(d.hat.tensor.project(unit_vec(f, nh * nh, i * nh + x)));
      span.insert(d.hat.tensor.project(unit_vec(f, nh * nh, x * nh + i)));
    }
  span.finish();
  rep.delta_into_sum = true;
  for (std::size_t i = 0; i < n; ++i)
    if (!span.contains(d.hat.delta_quotient.col(i))) {
      rep.delta_into_sum = false;
      if (!rep.witness) rep.witness = i;
      break;
    }
  return rep;
}

/// Right comodule over a coring: a right A-module with an ambient
/// representative of the coaction M -> M (x)_A C.
struct RightComodule {
  std::size_t dim = 0;
  DenseMatrix right_action;  // m x (m*a)
  DenseMatrix coaction;      // (m*N) x m
};

struct LeftComodule {
  std::size_t dim = 0;
  DenseMatrix left_action;  // m x (a*m)
  DenseMatrix coaction;     // (N*m) x m
};

struct ComoduleReport {
  bool a_linear = true;
  bool coassociative = true;
  bool counital = true;  // only meaningful when an eps was supplied
  std::optional<std::size_t> witness;
  bool ok() const { return a_linear && coassociative && counital; }
};

inline ComoduleReport validate_right_comodule(const CoringOverA& cr,
                                              const RightComodule& m,
                                              const DenseMatrix* eps = nullptr) {
  const Field& f = cr.algebra.field;
  std::size_t md = m.dim, n = cr.carrier_dim, a = cr.algebra.dim;
  if (m.coaction.rows() != md * n || m.coaction.cols() != md)
    throw std::invalid_argument("right comodule coaction shape");
  ComoduleReport rep;
  TensorOverA pair = tensor_over_algebra(cr.algebra, md, m.right_action, n,
                                         cr.left_action);
  for (std::size_t beta = 0; beta < a && rep.a_linear; ++beta) {
    DenseMatrix mslice = detail::right_slice(m.right_action, a, md, beta);
    DenseMatrix cslice = detail::right_slice(cr.right_action, a, n, beta);
    for (std::size_t s = 0; s < md; ++s) {
      Vec lhs = pair.project(m.coaction.apply(mslice.col(s)));
      Vec rhs = pair.project(apply_slot2(cslice, m.coaction.col(s), md, n));
      if (lhs != rhs) {
        rep.a_linear = false;
        rep.witness = s;
        break;
      }
    }
  }
  IteratedTriple it = build_triple(cr.algebra, cr.algebra, md, m.right_action, n,
                                   cr.left_action, cr.right_action, n,
                                   cr.left_action);
  for (std::size_t s = 0; s < md; ++s) {
    Vec v = m.coaction.col(s);
    Vec x1 = apply_slot1(m.coaction, v, md, n);       // (rho (x) id) rho
    Vec x2 = apply_slot2(cr.delta_ambient, v, md, n); // (id (x) Delta) rho
    if (it.project_flat(x1) != it.project_flat(x2)) {
      rep.coassociative = false;
      if (!rep.witness) rep.witness = s;
      break;
    }
  }
  if (eps) {
    for (std::size_t s = 0; s < md; ++s) {
      Vec acc = zero_vec(f, md);
      for (std::size_t i = 0; i < md; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          const Scalar& v = m.coaction.at(i * n + k, s);
          if (v.is_zero()) continue;
          // m_0 . eps(m_1)
          Vec ek = eps->col(k);
          for (std::size_t beta = 0; beta < a; ++beta) {
            if (ek[beta].is_zero()) continue;
            for (std::size_t l = 0; l < md; ++l) {
              const Scalar& av = m.right_action.at(l, i * a + beta);
              if (!av.is_zero()) acc[l] += v * ek[beta] * av;
            }
          }
        }
      if (acc != unit_vec(f, md, s)) {
        rep.counital = false;
        if (!rep.witness) rep.witness = s;
        break;
      }
    }
  }
  return rep;
}

inline ComoduleReport validate_left_comodule(const CoringOverA& cr,
                                             const LeftComodule& m,
                                             const DenseMatrix* eps = nullptr) {
  const Field& f = cr.algebra.field;
  std::size_t md = m.dim, n = cr.carrier_dim, a = cr.algebra.dim;
  if (m.coaction.rows() != n * md || m.coaction.cols() != md)
    throw std::invalid_argument("left comodule coaction shape");
  ComoduleReport rep;
  TensorOverA pair = tensor_over_algebra(cr.algebra, n, cr.right_action, md,
                                         m.left_action);
  for (std::size_t beta = 0; beta < a && rep.a_linear; ++beta) {
    DenseMatrix mslice = detail::left_slice(m.left_action, md, beta);
    DenseMatrix cslice = detail::left_slice(cr.left_action, n, beta);
    for (std::size_t s = 0; s < md; ++s) {
      Vec lhs = pair.project(m.coaction.apply(mslice.col(s)));
      Vec rhs = pair.project(apply_slot1(cslice, m.coaction.col(s), n, md));
      if (lhs != rhs) {
        rep.a_linear = false;
        rep.witness = s;
        break;
      }
    }
  }
  IteratedTriple it = build_triple(cr.algebra, cr.algebra, n, cr.right_action, n,
                                   cr.left_action, cr.right_action, md,
                                   m.left_action);
  for (std::size_t s = 0; s < md; ++s) {
    Vec v = m.coaction.col(s);
    Vec x1 = apply_slot1(cr.delta_ambient, v, n, md);  // (Delta (x) id) rho
    Vec x2 = apply_slot2(m.coaction, v, n, md);        // (id (x) rho) rho
    if (it.project_flat(x1) != it.project_flat(x2)) {
      rep.coassociative = false;
      if (!rep.witness) rep.witness = s;
      break;
    }
  }
  if (eps) {
    for (std::size_t s = 0; s < md; ++s) {
      Vec acc = zero_vec(f, md);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < md; ++i) {
          const Scalar& v = m.coaction.at(k * md + i, s);
          if (v.is_zero()) continue;
          Vec ek = eps->col(k);
          for (std::size_t beta = 0; beta < a; ++beta) {
            if (ek[beta].is_zero()) continue;
            for (std::size_t l = 0; l < md; ++l) {
              const Scalar& av = m.left_action.at(l, beta * md + i);
              if (!av.is_zero()) acc[l] += v * ek[beta] * av;
            }
          }
        }
      if (acc != unit_vec(f, md, s)) {
        rep.counital = false;
        if (!rep.witness) rep.witness = s;
        break;
      }
    }
  }
  return rep;
}

/// The carrier as a right comodule over its own coring.
inline RightComodule regular_right_comodule(const CoringOverA& cr) {
  return RightComodule{cr.carrier_dim, cr.right_action, cr.delta_ambient};
}

/// Lift of a right comodule over the base to a counital right comodule
/// over the Dorroh coring: m |-> sum m_0 (x) (m_1, 0) + m (x) (0, 1).
inline RightComodule lift_right_comodule(const DorrohCoring& d,
                                         const RightComodule& m) {
  ComoduleReport base_rep = validate_right_comodule(d.base, m);
  if (!base_rep.coassociative || !base_rep.a_linear)
    throw std::invalid_argument("lift_right_comodule: input is not a comodule");
  std::size_t md = m.dim, n = d.base.carrier_dim, a = d.base.algebra.dim;
  std::size_t nh = n + a;
  const Vec& unit = *d.base.algebra.unit;
  RightComodule out;
  out.dim = md;
  out.right_action = m.right_action;
  out.coaction = DenseMatrix(d.base.algebra.field, md * nh, md);
  for (std::size_t s = 0; s < md; ++s) {
    for (std::size_t i = 0; i < md; ++i)
      for (std::size_t k = 0; k < n; ++k)
        out.coaction.at(i * nh + k, s) = m.coaction.at(i * n + k, s);
    for (std::size_t omega = 0; omega < a; ++omega)
      if (!unit[omega].is_zero()) out.coaction.at(s * nh + n + omega, s) = unit[omega];
  }
  return out;
}

inline LeftComodule lift_left_comodule(const DorrohCoring& d, const LeftComodule& m) {
  ComoduleReport base_rep = validate_left_comodule(d.base, m);
  if (!base_rep.coassociative || !base_rep.a_linear)
    throw std::invalid_argument("lift_left_comodule: input is not a comodule");
  std::size_t md = m.dim, n = d.base.carrier_dim, a = d.base.algebra.dim;
  std::size_t nh = n + a;
  const Vec& unit = *d.base.algebra.unit;
  LeftComodule out;
  out.dim = md;
  out.left_action = m.left_action;
  out.coaction = DenseMatrix(d.base.algebra.field, nh * md, md);
  for (std::size_t s = 0; s < md; ++s) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < md; ++i)
        out.coaction.at(k * md + i, s) = m.coaction.at(k * md + i, s);
    for (std::size_t omega = 0; omega < a; ++omega)
      if (!unit[omega].is_zero()) out.coaction.at((n + omega) * md + s, s) = unit[omega];
  }
  return out;
}

/// Forgetting the adjoined unit summand of a lifted right comodule
/// recovers a coaction over the base.
inline DenseMatrix forget_lifted_coaction(const DorrohCoring& d,
                                          const RightComodule& lifted) {
  std::size_t md = lifted.dim, n = d.base.carrier_dim;
  std::size_t nh = d.hat.carrier_dim;
  DenseMatrix out(d.base.algebra.field, md * n, md);
  for (std::size_t s = 0; s < md; ++s)
    for (std::size_t i = 0; i < md; ++i)
      for (std::size_t k = 0; k < n; ++k)
        out.at(i * n + k, s) = lifted.coaction.at(i * nh + k, s);
  return out;
}

/// A (D,C)-bicomodule: a (B,A)-bimodule with compatible left D- and
/// right C-coactions.
struct Bicomodule {
  std::size_t dim = 0;
  DenseMatrix left_action;    // B (x) M -> M
  DenseMatrix right_action;   // M (x) A -> M
  DenseMatrix left_coaction;  // M -> D (x)_B M
  DenseMatrix right_coaction; // M -> M (x)_A C
};

struct BicomoduleReport {
  ComoduleReport left;
  ComoduleReport right;
  bool compatible = true;
  std::optional<std::size_t> witness;
  bool ok() const { return left.ok() && right.ok() && compatible; }
};

inline BicomoduleReport validate_bicomodule(const CoringOverA& d,
                                            const CoringOverA& c,
                                            const Bicomodule& m,
                                            const DenseMatrix* eps_d = nullptr,
                                            const DenseMatrix* eps_c = nullptr) {
  BicomoduleReport rep;
  rep.left = validate_left_comodule(d, LeftComodule{m.dim, m.left_action,
                                                    m.left_coaction},
                                    eps_d);
  rep.right = validate_right_comodule(c, RightComodule{m.dim, m.right_action,
                                                       m.right_coaction},
                                      eps_c);
  IteratedTriple it =
      build_triple(d.algebra, c.algebra, d.carrier_dim, d.right_action, m.dim,
                   m.left_action, m.right_action, c.carrier_dim, c.left_action);
  for (std::size_t s = 0; s < m.dim; ++s) {
    Vec x1 = apply_slot1(m.left_coaction, m.right_coaction.col(s), m.dim,
                         c.carrier_dim);
    Vec x2 = apply_slot2(m.right_coaction, m.left_coaction.col(s), d.carrier_dim,
                         m.dim);
    if (it.project_flat(x1) != it.project_flat(x2)) {
      rep.compatible = false;
      rep.witness = s;
      break;
    }
  }
  return rep;
}

/// Lifts a (D,C)-bicomodule to a counital (D-hat, C-hat)-bicomodule.
inline Bicomodule lift_bicomodule(const DorrohCoring& dhat, const DorrohCoring& chat,
                                  const Bicomodule& m) {
  BicomoduleReport rep = validate_bicomodule(dhat.base, chat.base, m);
  if (!(rep.left.coassociative && rep.left.a_linear && rep.right.coassociative &&
        rep.right.a_linear && rep.compatible))
    throw std::invalid_argument("lift_bicomodule: input is not a bicomodule");
  Bicomodule out;
  out.dim = m.dim;
  out.left_action = m.left_action;
  out.right_action = m.right_action;
  out.left_coaction =
      lift_left_comodule(dhat, LeftComodule{m.dim, m.left_action, m.left_coaction})
          .coaction;
  out.right_coaction = lift_right_comodule(
                           chat, RightComodule{m.dim, m.right_action, m.right_coaction})
                           .coaction;
  return out;
}

}  // namespace cosep
