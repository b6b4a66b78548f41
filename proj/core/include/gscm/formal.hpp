#pragma once

#include <map>

#include "gscm/order.hpp"

namespace gscm {

/* Finite formal product prod x^{f(x)} over invertible elements of E, with
 * integer (possibly huge) exponents.  Evaluated lazily; eval_exact is for
 * small exponents and tests only. */
class FormalProduct {
 public:
  FormalProduct() = default;

  const std::map<OrderElement, Int>& factors() const { return factors_; }
  bool empty() const { return factors_.empty(); }
  std::size_t support_size() const { return factors_.size(); }

  /* *= x^e; x must be invertible in E (checked), zero exponents are dropped. */
  void mul_base(const OrderElement& x, const Int& e);

  FormalProduct& operator*=(const FormalProduct& o);
  FormalProduct pow(const Int& e) const;

  /* Largest exponent magnitude (0 for the empty product). */
  Int max_exponent() const;

  OrderElement eval_exact(const OrderPtr& o) const;

 private:
  std::map<OrderElement, Int> factors_;
};

}  // namespace gscm
