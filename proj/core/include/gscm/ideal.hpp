#pragma once

#include <vector>

#include "gscm/order.hpp"
#include "gscm/residue.hpp"

namespace gscm {

/* Fractional ideal stored as (den, basis): basis is the canonical HNF Z-basis
 * of den * I, den is the minimal positive denominator.  Equality of ideals is
 * equality of the canonical form — no tolerances anywhere. */
class FractionalIdeal {
 public:
  FractionalIdeal() = default;

  static FractionalIdeal whole_ring(const OrderPtr& o);
  static FractionalIdeal principal(const OrderElement& v);
  static FractionalIdeal from_generators(const std::vector<OrderElement>& gens);
  /* Re-canonicalizes and verifies module closure; throws usage_error. */
  static FractionalIdeal from_raw(OrderPtr o, Int den, IntMatrix basis);

  const OrderPtr& order() const { return order_; }
  const Int& den() const { return den_; }
  const IntMatrix& basis() const { return basis_; }

  bool valid() const { return static_cast<bool>(order_); }
  bool is_integral() const { return den_ == 1; }

  /* i-th basis row divided by den, as an element of E */
  OrderElement basis_element(std::size_t i) const;

  bool contains(const OrderElement& x) const;
  bool contains_one() const;

  bool operator==(const FractionalIdeal& o) const;
  bool operator!=(const FractionalIdeal& o) const { return !(*this == o); }

 private:
  OrderPtr order_;
  Int den_ = 1;
  IntMatrix basis_;
};

Rat ideal_norm(const FractionalIdeal& i);

FractionalIdeal ideal_mul(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal ideal_mul(const FractionalIdeal& a, const OrderElement& v);
FractionalIdeal ideal_sum(const FractionalIdeal& a, const FractionalIdeal& b);
FractionalIdeal ideal_intersect(const FractionalIdeal& a, const FractionalIdeal& b);

/* J with I*J = O; the product check is mandatory and failure (possible in
 * non-maximal orders) raises not_invertible. */
FractionalIdeal ideal_inverse(const FractionalIdeal& i);
FractionalIdeal ideal_div(const FractionalIdeal& a, const FractionalIdeal& b);

FractionalIdeal ideal_conjugate(const FractionalIdeal& i);

Rat height(const FractionalIdeal& i);

/* Residue ring O / I for integral I. */
ResidueLattice residue_ring(const FractionalIdeal& i);

}  // namespace gscm
