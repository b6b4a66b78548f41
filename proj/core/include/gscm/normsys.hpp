#pragma once

#include <memory>
#include <string>

#include "gscm/order.hpp"

namespace gscm {

/* Black-box norm of a split CM order: a multiplicative map N into a semigroup
 * with a trace making tr(N(x)) positive-definite.  Both shipped instantiations
 * keep their values inside E, so Value = OrderElement throughout. */
class NormSystem {
 public:
  virtual ~NormSystem() = default;

  const OrderPtr& order() const { return order_; }
  virtual std::string kind() const = 0;

  virtual OrderElement norm(const OrderElement& x) const = 0;
  OrderElement nmul(const OrderElement& a, const OrderElement& b) const { return a * b; }
  OrderElement ninv(const OrderElement& a) const { return inverse_in_E(a); }
  virtual Rat ntrace(const OrderElement& r) const = 0;

  OrderElement norm_of_one() const { return norm(one(order_)); }

  /* Gram matrix of x -> ntrace(norm(x)) on the order basis. */
  const QMatrix& norm_gram() const { return gram_; }
  /* max_j (G^-1)_jj: |z_j|^2 <= minv_max * ntrace(norm(z)) for all z in E. */
  const Rat& minv_max() const { return minv_max_; }

  /* log2 coordinate bound of norm(z) given log2 max|coords(z)| <= k. */
  virtual double norm_coord_log2(double k) const = 0;

 protected:
  explicit NormSystem(OrderPtr order) : order_(std::move(order)) {}
  void init_gram(QMatrix g);

  OrderPtr order_;
  QMatrix gram_;
  Rat minv_max_;
};

using NormSystemPtr = std::shared_ptr<const NormSystem>;

/* N(x) = x * conj(x), trace = ring trace.  Requires a CM involution. */
class CMNorm : public NormSystem {
 public:
  explicit CMNorm(OrderPtr order);
  std::string kind() const override { return "cm"; }
  OrderElement norm(const OrderElement& x) const override;
  Rat ntrace(const OrderElement& r) const override { return trace(r); }
  double norm_coord_log2(double k) const override;
};

/* N = identity with a caller-supplied positive-definite form as the trace.
 * Ships so the split-CM abstraction is exercised independently of involutions. */
class TrivialNorm : public NormSystem {
 public:
  TrivialNorm(OrderPtr order, QMatrix form);
  std::string kind() const override { return "trivial"; }
  OrderElement norm(const OrderElement& x) const override { return x; }
  Rat ntrace(const OrderElement& r) const override;
  double norm_coord_log2(double k) const override { return k; }
};

}  // namespace gscm
