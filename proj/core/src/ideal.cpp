#include "gscm/ideal.hpp"

#include <cassert>

namespace gscm {

namespace {

Int matrix_content(const IntMatrix& m) {
  Int g = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g = gcd(g, m(i, j));
  return g;
}

IntMatrix int_mul_rows(const Order& o, const ZVec& x) {
  // rows: coords of x * e_j for each j
  std::size_t n = o.rank();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const ZVec& prod = o.table(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(prod[k]) != 0) m(j, k) += x[i] * prod[k];
    }
  }
  return m;
}

}  // namespace

FractionalIdeal FractionalIdeal::whole_ring(const OrderPtr& o) {
  return from_generators({one(o)});
}

FractionalIdeal FractionalIdeal::principal(const OrderElement& v) {
  return from_generators({v});
}

FractionalIdeal FractionalIdeal::from_generators(const std::vector<OrderElement>& gens) {
  if (gens.empty()) fail(errc::zero_ideal, "no generators");
  OrderPtr o = gens[0].order();
  std::size_t n = o->rank();
  Int d = 1;
  for (const auto& g : gens) {
    require_same_order(gens[0], g);
    for (const auto& c : g.coords()) d = lcm(d, Int(c.get_den()));
  }
  std::vector<ZVec> rows;
  rows.reserve(gens.size() * n);
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    ZVec z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = Rat(g.coords()[i] * Rat(d)).get_num();
    IntMatrix m = int_mul_rows(*o, z);
    for (std::size_t j = 0; j < n; ++j) rows.push_back(m.row(j));
  }
  if (rows.empty()) fail(errc::zero_ideal, "all generators are zero");
  IntMatrix basis = hnf_basis(IntMatrix::from_rows(rows));
  if (basis.rows() != n) fail(errc::zero_ideal, "generated module has rank below n");

  FractionalIdeal r;
  r.order_ = std::move(o);
  r.den_ = d;
  r.basis_ = std::move(basis);
  // minimality of den
  Int g = gcd(r.den_, matrix_content(r.basis_));
  if (g > 1) {
    r.den_ /= g;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mpz_divexact(r.basis_(i, j).get_mpz_t(), r.basis_(i, j).get_mpz_t(), g.get_mpz_t());
  }
  return r;
}

FractionalIdeal FractionalIdeal::from_raw(OrderPtr o, Int den, IntMatrix basis) {
  if (sgn(den) <= 0) fail(errc::usage_error, "denominator must be positive");
  std::size_t n = o->rank();
  if (basis.rows() != n || basis.cols() != n) fail(errc::usage_error, "basis must be n x n");
  std::vector<OrderElement> gens;
  Rat dinv(Int(1), den);
  for (std::size_t i = 0; i < n; ++i) {
    QVec c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = Rat(basis(i, j)) * dinv;
    gens.push_back(elem(o, std::move(c)));
  }
  FractionalIdeal r = from_generators(gens);
  // module closure: the O-module generated by the rows must equal their Z-span
  IntMatrix claimed = hnf_basis(basis);
  if (claimed.rows() != n) fail(errc::usage_error, "basis is singular");
  FractionalIdeal span;
  span.order_ = o;
  span.den_ = den;
  span.basis_ = claimed;
  Int g = gcd(span.den_, matrix_content(span.basis_));
  if (g > 1) {
    span.den_ /= g;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        mpz_divexact(span.basis_(i, j).get_mpz_t(), span.basis_(i, j).get_mpz_t(), g.get_mpz_t());
  }
  if (!(span == r)) fail(errc::usage_error, "basis rows do not form an O-module");
  return r;
}

OrderElement FractionalIdeal::basis_element(std::size_t i) const {
  QVec c(order_->rank());
  Rat dinv(Int(1), den_);
  for (std::size_t j = 0; j < order_->rank(); ++j) c[j] = Rat(basis_(i, j)) * dinv;
  return elem(order_, std::move(c));
}

bool FractionalIdeal::contains(const OrderElement& x) const {
  // den * x must be integral and inside the row lattice of basis
  ZVec v(order_->rank());
  for (std::size_t j = 0; j < v.size(); ++j) {
    Rat scaled = x.coords()[j] * Rat(den_);
    if (scaled.get_den() != 1) return false;
    v[j] = scaled.get_num();
  }
  return hnf_contains(basis_, v);
}

bool FractionalIdeal::contains_one() const {
  OrderElement e = one(order_);
  return contains(e);
}

bool FractionalIdeal::operator==(const FractionalIdeal& o) const {
  return order_->id() == o.order_->id() && den_ == o.den_ && basis_ == o.basis_;
}

Rat ideal_norm(const FractionalIdeal& i) {
  Int d = det(i.basis());
  Rat num(abs(d));
  Rat denom(pow_int(i.den(), static_cast<unsigned long>(i.order()->rank())));
  return num / denom;
}

FractionalIdeal ideal_mul(const FractionalIdeal& a, const FractionalIdeal& b) {
  if (a.order()->id() != b.order()->id()) fail(errc::usage_error, "ideal orders differ");
  std::size_t n = a.order()->rank();
  std::vector<OrderElement> gens;
  gens.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gens.push_back(a.basis_element(i) * b.basis_element(j));
  return FractionalIdeal::from_generators(gens);
}

FractionalIdeal ideal_mul(const FractionalIdeal& a, const OrderElement& v) {
  std::size_t n = a.order()->rank();
  std::vector<OrderElement> gens;
  gens.reserve(n);
  for (std::size_t i = 0; i < n; ++i) gens.push_back(a.basis_element(i) * v);
  return FractionalIdeal::from_generators(gens);
}

FractionalIdeal ideal_sum(const FractionalIdeal& a, const FractionalIdeal& b) {
  if (a.order()->id() != b.order()->id()) fail(errc::usage_error, "ideal orders differ");
  std::size_t n = a.order()->rank();
  std::vector<OrderElement> gens;
  for (std::size_t i = 0; i < n; ++i) {
    gens.push_back(a.basis_element(i));
    gens.push_back(b.basis_element(i));
  }
  return FractionalIdeal::from_generators(gens);
}

FractionalIdeal ideal_intersect(const FractionalIdeal& a, const FractionalIdeal& b) {
  if (a.order()->id() != b.order()->id()) fail(errc::usage_error, "ideal orders differ");
  std::size_t n = a.order()->rank();
  Int l = lcm(a.den(), b.den());
  Int fa = l / a.den(), fb = l / b.den();
  // lattices (1/l) * (fa * A) and (1/l) * (fb * B)
  IntMatrix stacked(2 * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      stacked(i, j) = fa * a.basis()(i, j);
      stacked(n + i, j) = fb * b.basis()(i, j);
    }
  IntMatrix ker = kernel_int(stacked);  // rows (u1 | u2) with u1*A' = -u2*B'
  std::vector<ZVec> rows;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    ZVec v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(ker(r, i)) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] += ker(r, i) * fa * a.basis()(i, j);
    }
    rows.push_back(std::move(v));
  }
  if (rows.empty()) fail(errc::zero_ideal, "empty intersection");
  IntMatrix basis = hnf_basis(IntMatrix::from_rows(rows));
  if (basis.rows() != n) fail(errc::zero_ideal, "intersection has rank below n");
  return FractionalIdeal::from_raw(a.order(), l, std::move(basis));
}

FractionalIdeal ideal_inverse(const FractionalIdeal& iid) {
  const OrderPtr& o = iid.order();
  std::size_t n = o->rank();
  // Work with the integral ideal J = den * I (rows of basis); d = N(J) lies in J.
  Int d = abs(det(iid.basis()));
  assert(sgn(d) > 0);
  // K = {y : y * J subset d*O}: right kernel mod d of the stacked multiplication rows
  IntMatrix mall(n * n, n);
  for (std::size_t r = 0; r < n; ++r) {
    IntMatrix mr = int_mul_rows(*o, iid.basis().row(r));
    // y * (row j of J) has coords y^T applied...: we need coords of y * b_r,
    // which is vec_mat(y, mr) with mr rows = b_r * e_j. Using symmetry of the
    // ring, coords(y * b_r) = y * mr.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mall(r * n + i, j) = mr(i, j);
  }
  // condition: for all r, y * M_r = 0 mod d where M_r rows indexed by i
  // unknown y row vector (n); constraints for each r: sum_i y_i * M_r(i, j) = 0 mod d
  // build the big constraint matrix C with columns (r, j): C((r,j), i) = M_r(i, j)
  IntMatrix cmat(n, n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cmat(i, r * n + j) = mall(r * n + i, j);
  // {y : y * cmat = 0 mod d}: rows (y | z) of the left kernel of [cmat ; d*I]
  IntMatrix big(n + n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n * n; ++c) big(i, c) = cmat(i, c);
  for (std::size_t c = 0; c < n * n; ++c) big(n + c, c) = d;
  IntMatrix ker = kernel_int(big);
  std::vector<ZVec> rows;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    ZVec y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = ker(r, i);
    rows.push_back(std::move(y));
  }
  IntMatrix kbasis = hnf_basis(IntMatrix::from_rows(rows));
  if (kbasis.rows() != n) fail(errc::not_invertible, "inverse lattice has rank below n");
  // J^-1 = (1/d) K, I^-1 = den * J^-1: lattice (den/d)*K, stored as (d, den*K)
  IntMatrix scaled(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = iid.den() * kbasis(i, j);
  FractionalIdeal inv = FractionalIdeal::from_raw(o, d, std::move(scaled));
  if (!(ideal_mul(iid, inv) == FractionalIdeal::whole_ring(o)))
    fail(errc::not_invertible, "ideal is not invertible in this order");
  return inv;
}

FractionalIdeal ideal_div(const FractionalIdeal& a, const FractionalIdeal& b) {
  return ideal_mul(a, ideal_inverse(b));
}

FractionalIdeal ideal_conjugate(const FractionalIdeal& iid) {
  const IntMatrix& v = iid.order()->involution_matrix();
  std::size_t n = iid.order()->rank();
  IntMatrix rows(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    ZVec r = mat_vec(v, iid.basis().row(i));
    rows.set_row(i, r);
  }
  return FractionalIdeal::from_raw(iid.order(), iid.den(), hnf_basis(rows));
}

Rat height(const FractionalIdeal& i) {
  Rat h = height(i.den());
  for (std::size_t r = 0; r < i.basis().rows(); ++r) h += height(i.basis().row(r));
  return h;
}

ResidueLattice residue_ring(const FractionalIdeal& i) {
  if (!i.is_integral()) fail(errc::usage_error, "residue ring needs an integral ideal");
  return ResidueLattice(i.order(), i.basis());
}

}  // namespace gscm
