#include "gscm/polarized.hpp"

#include <cassert>
#include <cmath>

namespace gscm {

QMatrix polarized_gram(const PolarizedContext& ctx, const PolarizedIdeal& p) {
  const OrderPtr& o = ctx.order;
  std::size_t n = o->rank();
  OrderElement rinv = ctx.norms->ninv(p.r);
  // den-scaled basis: rows of p.ideal.basis() as integral elements, with r
  // scaled by N(den); the pairing values coincide with the fractional ones.
  OrderElement den_elem = Rat(p.ideal.den()) * one(o);
  OrderElement rs_inv = rinv * ctx.norms->ninv(ctx.norms->norm(den_elem));
  std::vector<OrderElement> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) rows.push_back(elem_int(o, p.ideal.basis().row(i)));
  auto pair_val = [&](const OrderElement& x, const OrderElement& y) {
    Rat a = ctx.norms->ntrace(ctx.norms->nmul(ctx.norms->norm(x + y), rs_inv));
    Rat b = ctx.norms->ntrace(ctx.norms->nmul(ctx.norms->norm(x - y), rs_inv));
    return (a - b) / 4;
  };
  QMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rat v = pair_val(rows[i], rows[j]);
      g(i, j) = v;
      g(j, i) = v;
    }
  return g;
}

Rat polarized_determinant(const PolarizedContext& ctx, const PolarizedIdeal& p) {
  QMatrix g = polarized_gram(ctx, p);
  cholesky_ldl(GramMatrix{g});  // certifies positive-definiteness
  return det(g);
}

Rat reduction_height_bound(const PolarizedContext& ctx, const Rat& d) {
  const OrderPtr& o = ctx.order;
  double n = static_cast<double>(o->rank());
  double log_n = std::log2(n);
  double lbD = sgn(d) > 0 ? std::max(log2_abs(d), 0.0) : 0.0;
  double lbM = log2_abs(ctx.norms->minv_max()) + 1;
  double lbTmax = log2_abs(o->table_max()) + 1;

  // T = n^4 2^n D: trace cap of N(y)/r after reduction
  double lbT = 4 * log_n + n + lbD;
  auto kappa = [&](double t) { return 0.5 * (t + lbM) + 1; };  // coord bound from trace
  auto rowlog = [&](double k) { return 1.5 * log_n + lbTmax + k + 1; };

  double k1 = kappa(lbT);                          // coords of c = y/v (integral)
  double k2 = ctx.norms->norm_coord_log2(k1) + 1;  // coords of N(c)
  double k3 = n * rowlog(k2);                      // |det mult(N(c))|
  double k4 = (n - 1) * rowlog(k2) + 1;            // adjugate entries of mult(N(c))
  double h_r = n * (2 * (log_n + k4 + 2) + 2 * (k3 + 2));

  double k5 = kappa(log_n + n + lbD);  // coords of d_i = b_i / v
  double k6 = (n - 1) * rowlog(k1) + 1;
  double k7 = 2 * log_n + lbTmax + k5 + log_n + k6 + 2;  // numerators of C rows
  double k8 = n * rowlog(k1);                            // denominator of C
  double k9 = n * (0.5 * log_n + k7) + 1;                // HNF entry growth
  double h_c = 2 * (k8 + 2) + n * n * 2 * (k9 + 2);

  return dyadic20(h_r + h_c + 64);
}

ReduceResult reduce_polarized(const PolarizedContext& ctx, const PolarizedIdeal& p) {
  const OrderPtr& o = ctx.order;
  std::size_t n = o->rank();
  QMatrix gram = polarized_gram(ctx, p);
  Rat d = det(gram);
  IntMatrix u = lll_reduce_gram(GramMatrix{gram});

  // reduced integral basis elements: b'_j = sum_i u(i,j) * row_i
  std::vector<OrderElement> reduced;
  reduced.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    QVec c(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(u(i, j)) == 0) continue;
      for (std::size_t t = 0; t < n; ++t) c[t] += Rat(u(i, j)) * Rat(p.ideal.basis()(i, t));
    }
    reduced.push_back(elem(o, std::move(c)));
  }

  auto [xs, y_scaled] = find_invertible_combination(reduced);
  OrderElement y = Rat(Int(1), p.ideal.den()) * y_scaled;

  ReduceResult res;
  res.x = y;
  res.c = ideal_mul(p.ideal, inverse_in_E(y));
  res.r2 = ctx.norms->nmul(p.r, ctx.norms->ninv(ctx.norms->norm(y)));
  res.trace_value = ctx.norms->ntrace(ctx.norms->nmul(ctx.norms->norm(y), ctx.norms->ninv(p.r)));
  res.determinant = d;
  if (!res.c.contains_one()) fail(errc::not_invertible, "reduced ideal does not contain 1");
  return res;
}

namespace {

struct PowerCtx {
  const PolarizedContext& ctx;
  const PolarizedIdeal& p;
  Rat cap;  // 4 * published bound

  CompactTriple identity() const {
    CompactTriple t;
    t.ideal = FractionalIdeal::whole_ring(ctx.order);
    t.r = ctx.norms->norm_of_one();
    return t;
  }

  void check_height(const CompactTriple& t) const {
    Rat h = height(t.ideal) + height(t.r.coords());
    if (h > cap)
      fail(errc::height_overflow,
           "compactified powering exceeded the height bound (no principal witness?)");
  }

  CompactTriple recurse(const Int& e) const {
    if (sgn(e) == 0) return identity();
    if (mpz_even_p(e.get_mpz_t())) {
      CompactTriple half = recurse(e / 2);
      PolarizedIdeal sq{ideal_mul(half.ideal, half.ideal), ctx.norms->nmul(half.r, half.r)};
      ReduceResult red = reduce_polarized(ctx, sq);
      CompactTriple out;
      out.ideal = red.c;
      out.r = red.r2;
      out.s = half.s.pow(2);
      out.s.mul_base(red.x, 1);
      check_height(out);
      return out;
    }
    CompactTriple prev = recurse(e - 1);
    PolarizedIdeal prod{ideal_mul(prev.ideal, p.ideal), ctx.norms->nmul(prev.r, p.r)};
    ReduceResult red = reduce_polarized(ctx, prod);
    CompactTriple out;
    out.ideal = red.c;
    out.r = red.r2;
    out.s = prev.s;
    out.s.mul_base(red.x, 1);
    check_height(out);
    return out;
  }
};

}  // namespace

CompactTriple compact_power(const PolarizedContext& ctx, const PolarizedIdeal& p, const Int& e) {
  assert(sgn(e) >= 0);
  Rat d = polarized_determinant(ctx, p);
  PowerCtx pc{ctx, p, 4 * reduction_height_bound(ctx, d)};
  return pc.recurse(e);
}

}  // namespace gscm
