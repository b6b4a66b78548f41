#pragma once

#include "gscm/formal.hpp"
#include "gscm/order.hpp"

namespace gscm {

/* Arithmetic in O / L for a finite-index sublattice L of the order (a square
 * nonsingular HNF basis).  Residues are canonical representatives in the HNF
 * fundamental box. */
class ResidueLattice {
 public:
  ResidueLattice(OrderPtr order, IntMatrix hnf_basis);

  static ResidueLattice integer_modulus(const OrderPtr& order, const Int& m);

  const OrderPtr& order() const { return order_; }
  const IntMatrix& basis() const { return h_; }

  ZVec reduce(const ZVec& v) const { return hnf_reduce(h_, v); }
  bool is_zero(const ZVec& v) const;

  ZVec one() const { return reduce(order_->one_coords()); }
  ZVec mul(const ZVec& a, const ZVec& b) const;
  ZVec pow(const ZVec& a, Int e) const;  // e >= 0

  /* Modular inverse: y with a*y = 1 (mod L); throws non_invertible_base. */
  ZVec inv(const ZVec& a) const;

  /* Representative with each coordinate shifted into (-H_ii/2, H_ii/2]; the
   * canonical small lift for diagonal lattices such as p^k Z^n. */
  ZVec center_lift(const ZVec& v) const;

 private:
  OrderPtr order_;
  IntMatrix h_;
};

/* Residue of prod x^{f(x)} modulo L; denominators are cleared through modular
 * inverses and negative exponents use inv().  Throws non_invertible_base when
 * a base (or a denominator) shares a factor with the modulus. */
ZVec eval_formal_mod(const FormalProduct& s, const ResidueLattice& L);

}  // namespace gscm
