#include "gscm/residue.hpp"

#include <cassert>

namespace gscm {

namespace {

IntMatrix int_mul_matrix(const Order& o, const ZVec& x) {
  std::size_t n = o.rank();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const ZVec& prod = o.table(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(prod[k]) != 0) m(k, j) += x[i] * prod[k];
    }
  }
  return m;
}

}  // namespace

ResidueLattice::ResidueLattice(OrderPtr order, IntMatrix hnf_basis)
    : order_(std::move(order)), h_(std::move(hnf_basis)) {
  assert(h_.rows() == h_.cols() && h_.rows() == order_->rank());
  for (std::size_t i = 0; i < h_.rows(); ++i) assert(sgn(h_(i, i)) > 0);
}

ResidueLattice ResidueLattice::integer_modulus(const OrderPtr& order, const Int& m) {
  std::size_t n = order->rank();
  IntMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) h(i, i) = m;
  return ResidueLattice(order, std::move(h));
}

bool ResidueLattice::is_zero(const ZVec& v) const {
  ZVec r = reduce(v);
  for (const auto& x : r)
    if (sgn(x) != 0) return false;
  return true;
}

ZVec ResidueLattice::mul(const ZVec& a, const ZVec& b) const {
  const Order& o = *order_;
  std::size_t n = o.rank();
  ZVec r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(b[j]) == 0) continue;
      Int f = a[i] * b[j];
      const ZVec& prod = o.table(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(prod[k]) != 0) r[k] += f * prod[k];
    }
  }
  return reduce(r);
}

ZVec ResidueLattice::pow(const ZVec& a, Int e) const {
  assert(sgn(e) >= 0);
  ZVec acc = one();
  ZVec base = reduce(a);
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = mul(acc, base);
    e >>= 1;
    if (sgn(e) > 0) base = mul(base, base);
  }
  return acc;
}

ZVec ResidueLattice::inv(const ZVec& a) const {
  std::size_t n = order_->rank();
  // Solve y * mult(a)^T + z * H = one over the integers: stack the image rows
  // of multiplication by a over the lattice rows and express one in the row
  // lattice.
  IntMatrix m = int_mul_matrix(*order_, reduce(a));
  IntMatrix stacked(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      stacked(i, j) = m(j, i);  // row i = image of e_i under mult-by-a
      stacked(n + i, j) = h_(i, j);
    }
  HnfResult res = hnf(stacked);
  std::size_t nz = 0;
  for (std::size_t i = 0; i < res.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(res.h(i, j)) != 0) {
        zero = false;
        break;
      }
    if (!zero) nz = i + 1;
  }
  IntMatrix basis(nz, n);
  for (std::size_t i = 0; i < nz; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = res.h(i, j);
  ZVec coeffs;
  if (!hnf_solve(basis, order_->one_coords(), coeffs))
    fail(errc::non_invertible_base, "element not invertible modulo the lattice");
  ZVec y(n);
  for (std::size_t i = 0; i < nz; ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) y[j] += coeffs[i] * res.u(i, j);
  }
  ZVec out = reduce(y);
  assert(is_zero([&] {
    ZVec chk = mul(out, reduce(a));
    for (std::size_t j = 0; j < n; ++j) chk[j] -= order_->one_coords()[j];
    return chk;
  }()));
  return out;
}

ZVec ResidueLattice::center_lift(const ZVec& v) const {
  ZVec r = reduce(v);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Int half = h_(i, i) / 2;
    if (r[i] > half)
      for (std::size_t j = i; j < r.size(); ++j) r[j] -= h_(i, j);
  }
  return r;
}

ZVec eval_formal_mod(const FormalProduct& s, const ResidueLattice& L) {
  ZVec acc = L.one();
  for (const auto& [x, e] : s.factors()) {
    // clear denominators: x = z / d
    Int d = 1;
    for (const auto& c : x.coords()) d = lcm(d, Int(c.get_den()));
    ZVec z(x.coords().size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      Rat scaled = x.coords()[i] * Rat(d);
      z[i] = scaled.get_num();
    }
    Int e_abs = abs(e);
    ZVec zp = L.pow(z, e_abs);
    ZVec dp;
    if (d != 1) {
      ZVec dvec = L.one();
      for (auto& c : dvec) c *= d;
      dp = L.pow(L.reduce(dvec), e_abs);
    }
    if (sgn(e) > 0) {
      acc = L.mul(acc, zp);
      if (d != 1) acc = L.mul(acc, L.inv(dp));
    } else {
      acc = L.mul(acc, L.inv(zp));
      if (d != 1) acc = L.mul(acc, dp);
    }
  }
  return acc;
}

}  // namespace gscm
