#include "gscm/formal.hpp"

namespace gscm {

void FormalProduct::mul_base(const OrderElement& x, const Int& e) {
  if (sgn(e) == 0) return;
  if (!invertible_in_E(x)) fail(errc::non_invertible_base, "formal product base not invertible in E");
  auto it = factors_.find(x);
  if (it == factors_.end()) {
    factors_.emplace(x, e);
  } else {
    it->second += e;
    if (sgn(it->second) == 0) factors_.erase(it);
  }
}

FormalProduct& FormalProduct::operator*=(const FormalProduct& o) {
  for (const auto& [x, e] : o.factors_) {
    auto it = factors_.find(x);
    if (it == factors_.end()) {
      factors_.emplace(x, e);
    } else {
      it->second += e;
      if (sgn(it->second) == 0) factors_.erase(it);
    }
  }
  return *this;
}

FormalProduct FormalProduct::pow(const Int& e) const {
  FormalProduct r;
  if (sgn(e) == 0) return r;
  for (const auto& [x, k] : factors_) r.factors_.emplace(x, k * e);
  return r;
}

Int FormalProduct::max_exponent() const {
  Int m = 0;
  for (const auto& [x, e] : factors_)
    if (mpz_cmpabs(e.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(e);
  return m;
}

OrderElement FormalProduct::eval_exact(const OrderPtr& o) const {
  OrderElement acc = one(o);
  for (const auto& [x, e] : factors_) acc = acc * pow(x, e);
  return acc;
}

}  // namespace gscm
