#include "gscm/order.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>

namespace gscm {

// ---------------------------------------------------------------------------
// polynomial helpers

void QPoly::trim() {
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

QPoly QPoly::from_int(const ZVec& coeffs) {
  QVec q(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) q[i] = Rat(coeffs[i]);
  return QPoly(std::move(q));
}

QPoly QPoly::x_power(std::size_t k) {
  QVec q(k + 1);
  q[k] = 1;
  return QPoly(std::move(q));
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  QVec c(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  QVec c(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
  return QPoly(std::move(c));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  QVec c(a.c.size() + b.c.size() - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (sgn(a.c[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
  }
  return QPoly(std::move(c));
}

QPoly operator*(const Rat& s, const QPoly& a) {
  QVec c = a.c;
  for (auto& x : c) x *= s;
  return QPoly(std::move(c));
}

bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  assert(!b.is_zero());
  r = a;
  q = QPoly();
  if (a.degree() < b.degree()) return;
  QVec qc(a.degree() - b.degree() + 1);
  Rat lead = b.c.back();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    std::size_t shift = r.degree() - b.degree();
    Rat f = r.c.back() / lead;
    qc[shift] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[shift + i] -= f * b.c[i];
    r.trim();
  }
  q = QPoly(std::move(qc));
}

QPoly pmod(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return r;
}

QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v) {
  QPoly r0 = a, r1 = b;
  QPoly u0 = QPoly(QVec{1}), u1 = QPoly();
  QPoly v0 = QPoly(), v1 = QPoly(QVec{1});
  while (!r1.is_zero()) {
    QPoly q, r;
    divmod(r0, r1, q, r);
    QPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
    r0 = r1;
    r1 = r;
    u0 = u1;
    u1 = u2;
    v0 = v1;
    v1 = v2;
  }
  if (!r0.is_zero()) {
    Rat inv = 1 / r0.c.back();
    r0 = inv * r0;
    u0 = inv * u0;
    v0 = inv * v0;
  }
  u = u0;
  v = v0;
  return r0;
}

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  for (unsigned p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  if (m > 1) result -= result / m;
  return result;
}

QPoly cyclotomic_polynomial(unsigned m) {
  // Phi_m = (X^m - 1) / prod_{d | m, d < m} Phi_d
  QVec xm(m + 1);
  xm[0] = -1;
  xm[m] = 1;
  QPoly num{std::move(xm)};
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    QPoly q, r;
    divmod(num, cyclotomic_polynomial(d), q, r);
    assert(r.is_zero());
    num = q;
  }
  return num;
}

// ---------------------------------------------------------------------------
// Order construction

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string content_key(unsigned n, const std::vector<ZVec>& table, const ZVec& one,
                        const std::optional<IntMatrix>& invol) {
  std::string s = std::to_string(n) + "|";
  for (const auto& row : table)
    for (const auto& x : row) s += x.get_str() + ",";
  s += "|";
  for (const auto& x : one) s += x.get_str() + ",";
  if (invol) {
    s += "|V";
    for (std::size_t i = 0; i < invol->rows(); ++i)
      for (std::size_t j = 0; j < invol->cols(); ++j) s += (*invol)(i, j).get_str() + ",";
  }
  return s;
}

}  // namespace

Order::Order(unsigned n, std::vector<ZVec> table, ZVec one, std::optional<IntMatrix> involution,
             std::string name)
    : n_(n), table_(std::move(table)), one_(std::move(one)), invol_(std::move(involution)),
      name_(std::move(name)) {
  assert(table_.size() == static_cast<std::size_t>(n_) * n_);
  id_ = fnv1a(content_key(n_, table_, one_, invol_));

  tr_basis_.assign(n_, Int(0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) tr_basis_[i] += table(i, k)[k];

  trace_form_ = IntMatrix(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      Int t = 0;
      const ZVec& prod = table(i, j);
      for (std::size_t l = 0; l < n_; ++l) t += prod[l] * tr_basis_[l];
      trace_form_(i, j) = t;
    }

  table_max_ = 1;
  for (const auto& row : table_)
    for (const auto& x : row)
      if (mpz_cmpabs(x.get_mpz_t(), table_max_.get_mpz_t()) > 0) table_max_ = abs(x);

  // Hadamard constant: row j of mult(x) has squared norm <= ||x||^2 * F_j with
  // F_j = sum_{k} ||(table(i,j)[k])_i||^2; c = (1/2) sum_j log2 F_j.
  double c = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    Int fj = 0;
    for (std::size_t k = 0; k < n_; ++k)
      for (std::size_t i = 0; i < n_; ++i) fj += table(i, j)[k] * table(i, j)[k];
    if (sgn(fj) > 0) c += 0.5 * log2_abs(fj);
  }
  hadamard_log2_ = c;

  validate();

  if (invol_) {
    QMatrix g(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        Rat v = 0;
        for (std::size_t l = 0; l < n_; ++l) v += Rat(trace_form_(i, l)) * Rat((*invol_)(l, j));
        g(i, j) = v;
      }
    cm_gram_ = g;
  }
}

const IntMatrix& Order::involution_matrix() const {
  if (!invol_) fail(errc::no_involution, "order '" + name_ + "' has no involution");
  return *invol_;
}

const QMatrix& Order::cm_gram() const {
  if (!cm_gram_) fail(errc::no_involution, "order '" + name_ + "' has no involution");
  return *cm_gram_;
}

void Order::validate() const {
  // commutativity
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (table(i, j) != table(j, i)) fail(errc::usage_error, "multiplication table not symmetric");

  auto mul_basis = [&](const ZVec& x, std::size_t j) {
    ZVec r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (sgn(x[i]) == 0) continue;
      const ZVec& prod = table(i, j);
      for (std::size_t k = 0; k < n_; ++k) r[k] += x[i] * prod[k];
    }
    return r;
  };

  // identity
  for (std::size_t j = 0; j < n_; ++j) {
    ZVec r = mul_basis(one_, j);
    for (std::size_t k = 0; k < n_; ++k)
      if (r[k] != ((k == j) ? Int(1) : Int(0))) fail(errc::usage_error, "one is not an identity");
  }

  // associativity on basis triples: (e_i e_j) e_k == e_i (e_j e_k)
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j)
      for (std::size_t k = j; k < n_; ++k) {
        ZVec lhs = mul_basis(table(i, j), k);
        ZVec rhs = mul_basis(table(j, k), i);
        if (lhs != rhs) fail(errc::usage_error, "multiplication table not associative");
      }

  if (invol_) {
    const IntMatrix& v = *invol_;
    if (v.rows() != n_ || v.cols() != n_) fail(errc::invalid_involution, "involution shape");
    // order two
    IntMatrix sq = v * v;
    if (!(sq == IntMatrix::identity(n_))) fail(errc::invalid_involution, "involution is not of order two");
    // fixes one
    ZVec vone = mat_vec(v, one_);
    if (vone != one_) fail(errc::invalid_involution, "involution does not fix 1");
    // ring automorphism on basis pairs: conj(e_i e_j) = conj(e_i) conj(e_j)
    auto apply = [&](const ZVec& x) { return mat_vec(v, x); };
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) {
        ZVec lhs = apply(table(i, j));
        ZVec ci = apply([&] {
          ZVec e(n_);
          e[i] = 1;
          return e;
        }());
        ZVec cj = apply([&] {
          ZVec e(n_);
          e[j] = 1;
          return e;
        }());
        // product of ci and cj
        ZVec rhs(n_);
        for (std::size_t a = 0; a < n_; ++a) {
          if (sgn(ci[a]) == 0) continue;
          for (std::size_t b = 0; b < n_; ++b) {
            if (sgn(cj[b]) == 0) continue;
            const ZVec& prod = table(a, b);
            for (std::size_t k = 0; k < n_; ++k) rhs[k] += ci[a] * cj[b] * prod[k];
          }
        }
        if (lhs != rhs) fail(errc::invalid_involution, "involution is not multiplicative");
      }
    // positive-definiteness of tr(x conj(x))
    QMatrix g(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        Rat val = 0;
        for (std::size_t l = 0; l < n_; ++l) val += Rat(trace_form_(i, l)) * Rat(v(l, j));
        g(i, j) = val;
      }
    try {
      cholesky_ldl(GramMatrix{g});
    } catch (const error&) {
      fail(errc::invalid_involution, "tr(x conj(x)) is not positive-definite");
    }
  }
}

OrderPtr finish_order(std::unique_ptr<Order> o, std::optional<ZVec> defining,
                      std::optional<unsigned> cyclo_m) {
  o->defining_ = std::move(defining);
  o->cyclo_m_ = cyclo_m;
  return OrderPtr(o.release());
}

namespace {

/* multiplication table of Z[X]/(f) for monic integral f of degree n */
std::vector<ZVec> power_basis_table(const ZVec& f, unsigned n) {
  // reductions of X^k for k < 2n-1
  std::vector<ZVec> xpow(2 * n - 1, ZVec(n));
  for (unsigned k = 0; k < n; ++k) xpow[k][k] = 1;
  for (unsigned k = n; k < 2 * n - 1; ++k) {
    // X^k = X * X^(k-1); reduce using X^n = -(f_0 + ... + f_{n-1} X^{n-1})
    const ZVec& prev = xpow[k - 1];
    ZVec cur(n);
    Int carry = prev[n - 1];
    for (unsigned i = n; i-- > 1;) cur[i] = prev[i - 1];
    cur[0] = 0;
    if (sgn(carry) != 0)
      for (unsigned i = 0; i < n; ++i) cur[i] -= carry * f[i];
    xpow[k] = cur;
  }
  std::vector<ZVec> table(static_cast<std::size_t>(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) table[i * n + j] = xpow[i + j];
  return table;
}

}  // namespace

OrderPtr Order::cyclotomic(unsigned m) {
  if (m == 0) fail(errc::usage_error, "cyclotomic index must be positive");
  QPoly phi = cyclotomic_polynomial(m);
  unsigned n = euler_phi(m);
  ZVec f(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    Rat c = phi.coeff(i);
    assert(c.get_den() == 1);
    f[i] = c.get_num();
  }
  std::vector<ZVec> table = power_basis_table(f, n);

  // involution: zeta -> zeta^(m-1); column j = coords of zeta^{j(m-1) mod m} reduced
  IntMatrix v(n, n);
  {
    // X^k mod Phi_m for all k < m, via repeated multiplication by X
    std::vector<ZVec> xmod(m, ZVec(n));
    xmod[0][0] = 1;
    for (unsigned k = 1; k < m; ++k) {
      const ZVec& prev = xmod[k - 1];
      ZVec cur(n);
      Int carry = prev[n - 1];
      for (unsigned i = n; i-- > 1;) cur[i] = prev[i - 1];
      cur[0] = 0;
      if (sgn(carry) != 0)
        for (unsigned i = 0; i < n; ++i) cur[i] -= carry * f[i];
      xmod[k] = cur;
    }
    for (unsigned j = 0; j < n; ++j) {
      unsigned k = static_cast<unsigned>((static_cast<unsigned long long>(j) * (m - 1)) % m);
      for (unsigned i = 0; i < n; ++i) v(i, j) = xmod[k][i];
    }
  }

  ZVec one_c(n);
  one_c[0] = 1;
  auto o = std::make_unique<Order>(n, std::move(table), std::move(one_c), IntMatrix(v),
                                   "Z[zeta_" + std::to_string(m) + "]");
  return finish_order(std::move(o), std::move(f), m);
}

OrderPtr Order::from_polynomial(const ZVec& f, const std::optional<ZVec>& conj_image,
                                const std::string& name) {
  if (f.size() < 2 || f.back() != 1) fail(errc::usage_error, "need a monic polynomial of degree >= 1");
  unsigned n = static_cast<unsigned>(f.size() - 1);
  std::vector<ZVec> table = power_basis_table(f, n);

  std::optional<IntMatrix> invol;
  if (conj_image) {
    if (conj_image->size() != n) fail(errc::invalid_involution, "conj_image must have length deg f");
    // column j of the involution = coords of g(alpha)^j where g = conj_image.
    // Build powers of g(alpha) with the table.
    auto mul_vec = [&](const ZVec& x, const ZVec& y) {
      ZVec r(n);
      for (unsigned i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (unsigned j = 0; j < n; ++j) {
          if (sgn(y[j]) == 0) continue;
          const ZVec& prod = table[i * n + j];
          for (unsigned k = 0; k < n; ++k) r[k] += x[i] * y[j] * prod[k];
        }
      }
      return r;
    };
    IntMatrix v(n, n);
    ZVec acc(n);
    acc[0] = 1;
    for (unsigned j = 0; j < n; ++j) {
      for (unsigned i = 0; i < n; ++i) v(i, j) = acc[i];
      if (j + 1 < n) acc = mul_vec(acc, *conj_image);
    }
    invol = v;
  }

  ZVec one_c(n);
  one_c[0] = 1;
  auto o = std::make_unique<Order>(n, std::move(table), std::move(one_c), std::move(invol),
                                   name.empty() ? "Z[x]/(f)" : name);
  return finish_order(std::move(o), ZVec(f), std::nullopt);
}

OrderPtr Order::from_table(unsigned n, std::vector<ZVec> table, ZVec one,
                           std::optional<IntMatrix> involution, const std::string& name) {
  auto o = std::make_unique<Order>(n, std::move(table), std::move(one), std::move(involution),
                                   name.empty() ? "order" : name);
  return finish_order(std::move(o), std::nullopt, std::nullopt);
}

// ---------------------------------------------------------------------------
// elements

OrderElement::OrderElement(OrderPtr order, QVec coords)
    : order_(std::move(order)), coords_(std::move(coords)) {
  assert(order_ && coords_.size() == order_->rank());
}

bool OrderElement::is_zero() const {
  for (const auto& c : coords_)
    if (sgn(c) != 0) return false;
  return true;
}

bool OrderElement::is_integral() const {
  for (const auto& c : coords_)
    if (c.get_den() != 1) return false;
  return true;
}

ZVec OrderElement::integral_coords() const {
  ZVec r(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    assert(coords_[i].get_den() == 1);
    r[i] = coords_[i].get_num();
  }
  return r;
}

bool OrderElement::operator==(const OrderElement& o) const {
  return order_->id() == o.order_->id() && coords_ == o.coords_;
}

bool OrderElement::operator<(const OrderElement& o) const {
  for (std::size_t i = 0; i < coords_.size() && i < o.coords_.size(); ++i) {
    int c = cmp(coords_[i], o.coords_[i]);
    if (c != 0) return c < 0;
  }
  return coords_.size() < o.coords_.size();
}

OrderElement elem(const OrderPtr& o, QVec coords) { return OrderElement(o, std::move(coords)); }

OrderElement elem_int(const OrderPtr& o, const ZVec& coords) {
  QVec q(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) q[i] = Rat(coords[i]);
  return OrderElement(o, std::move(q));
}

OrderElement zero(const OrderPtr& o) { return OrderElement(o, QVec(o->rank())); }

OrderElement one(const OrderPtr& o) { return elem_int(o, o->one_coords()); }

OrderElement basis_elem(const OrderPtr& o, std::size_t i) {
  QVec c(o->rank());
  c[i] = 1;
  return OrderElement(o, std::move(c));
}

void require_same_order(const OrderElement& a, const OrderElement& b) {
  if (!a.order() || !b.order() || a.order()->id() != b.order()->id())
    fail(errc::usage_error, "elements belong to different orders");
}

OrderElement operator+(const OrderElement& a, const OrderElement& b) {
  require_same_order(a, b);
  QVec c = a.coords();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords()[i];
  return OrderElement(a.order(), std::move(c));
}

OrderElement operator-(const OrderElement& a, const OrderElement& b) {
  require_same_order(a, b);
  QVec c = a.coords();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords()[i];
  return OrderElement(a.order(), std::move(c));
}

OrderElement operator-(const OrderElement& a) {
  QVec c = a.coords();
  for (auto& x : c) x = -x;
  return OrderElement(a.order(), std::move(c));
}

OrderElement operator*(const OrderElement& a, const OrderElement& b) {
  require_same_order(a, b);
  const Order& o = *a.order();
  std::size_t n = o.rank();
  QVec r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a.coords()[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(b.coords()[j]) == 0) continue;
      Rat f = a.coords()[i] * b.coords()[j];
      const ZVec& prod = o.table(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(prod[k]) != 0) r[k] += f * Rat(prod[k]);
    }
  }
  return OrderElement(a.order(), std::move(r));
}

OrderElement operator*(const Rat& s, const OrderElement& a) {
  QVec c = a.coords();
  for (auto& x : c) x *= s;
  return OrderElement(a.order(), std::move(c));
}

QMatrix mul_matrix(const OrderElement& x) {
  const Order& o = *x.order();
  std::size_t n = o.rank();
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x.coords()[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const ZVec& prod = o.table(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (sgn(prod[k]) != 0) m(k, j) += x.coords()[i] * Rat(prod[k]);
    }
  }
  return m;
}

Rat trace(const OrderElement& x) {
  const Order& o = *x.order();
  Rat t = 0;
  for (std::size_t i = 0; i < o.rank(); ++i) t += x.coords()[i] * Rat(o.basis_traces()[i]);
  return t;
}

OrderElement conjugate(const OrderElement& x) {
  const IntMatrix& v = x.order()->involution_matrix();
  QVec r(x.coords().size());
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j)
      if (sgn(v(i, j)) != 0) r[i] += Rat(v(i, j)) * x.coords()[j];
  return OrderElement(x.order(), std::move(r));
}

bool invertible_in_E(const OrderElement& x) {
  if (x.is_zero()) return false;
  return sgn(det(mul_matrix(x))) != 0;
}

OrderElement inverse_in_E(const OrderElement& x) {
  QMatrix m = mul_matrix(x);
  QVec target(x.order()->rank());
  for (std::size_t i = 0; i < target.size(); ++i) target[i] = Rat(x.order()->one_coords()[i]);
  try {
    return OrderElement(x.order(), solve(m, target));
  } catch (const error&) {
    fail(errc::not_invertible, "element is a zero divisor in E");
  }
}

OrderElement pow(const OrderElement& x, const Int& e) {
  if (sgn(e) < 0) return pow(inverse_in_E(x), -e);
  OrderElement acc = one(x.order());
  OrderElement base = x;
  Int n = e;
  while (sgn(n) > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
    n >>= 1;
    if (sgn(n) > 0) base = base * base;
  }
  return acc;
}

Rat height(const OrderElement& x) { return height(x.coords()); }

Rat cm_norm_trace(const OrderElement& x) {
  const QMatrix& g = x.order()->cm_gram();
  return dot(x.coords(), mat_vec(g, x.coords()));
}

// ---------------------------------------------------------------------------
// roots of unity

RootsOfUnity roots_of_unity(const OrderPtr& o) {
  const QMatrix& g = o->cm_gram();
  Rat tr_one = trace(one(o));
  std::vector<ZVec> sphere = enumerate_short(GramMatrix{g}, tr_one);
  std::vector<OrderElement> onsphere;
  for (const auto& v : sphere) {
    OrderElement x = elem_int(o, v);
    if (cm_norm_trace(x) == tr_one) {
      onsphere.push_back(x);
      onsphere.push_back(-x);
    }
  }
  unsigned long cap = 2 * onsphere.size() + 2;
  std::vector<OrderElement> mu;
  OrderElement id = one(o);
  std::vector<unsigned long> orders;
  for (const auto& x : onsphere) {
    OrderElement p = x;
    for (unsigned long k = 1; k <= cap; ++k) {
      if (p == id) {
        mu.push_back(x);
        orders.push_back(k);
        break;
      }
      p = p * x;
    }
  }
  std::sort(mu.begin(), mu.end());
  mu.erase(std::unique(mu.begin(), mu.end()), mu.end());
  unsigned long expo = 1;
  for (auto k : orders) expo = static_cast<unsigned long>(mpz_class(lcm(Int(expo), Int(k))).get_ui());
  RootsOfUnity res;
  res.elements = std::move(mu);
  res.exponent = static_cast<unsigned>(expo);
  return res;
}

// ---------------------------------------------------------------------------
// invertible combinations (rank recursion)

namespace {

/* Finds integer coefficients |x_i| <= dim with det(sum x_i mats_i) != 0.
 * Follows the rank recursion: split off mats[0], recurse on the complement of
 * an invertible minor, then scan x_0 in {0..dim}. */
bool invertible_combo(const std::vector<QMatrix>& mats, std::vector<Int>& xs, std::size_t full_dim) {
  std::size_t m = mats.size();
  std::size_t n = mats[0].rows();
  xs.assign(m, Int(0));
  if (n == 0) {
    if (m > 0) xs[0] = 1;
    return true;
  }
  if (m == 1) {
    xs[0] = 1;
    return sgn(det(mats[0])) != 0;
  }
  const QMatrix& a0 = mats[0];
  // row-reduce a copy to find pivot rows/columns of a0
  QMatrix w = a0;
  std::vector<std::size_t> prow, pcol;
  std::vector<bool> used_row(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!used_row[i] && sgn(w(i, c)) != 0) {
        p = i;
        break;
      }
    if (p == n) continue;
    used_row[p] = true;
    prow.push_back(p);
    pcol.push_back(c);
    Rat inv = 1 / w(p, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (used_row[i] && i != p) continue;
      if (i == p || sgn(w(i, c)) == 0) continue;
      Rat f = w(i, c) * inv;
      for (std::size_t j = 0; j < n; ++j) w(i, j) -= f * w(p, j);
    }
  }
  std::vector<std::size_t> crow, ccol;
  {
    std::vector<bool> inr(n, false), inc(n, false);
    for (auto r : prow) inr[r] = true;
    for (auto c : pcol) inc[c] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!inr[i]) crow.push_back(i);
      if (!inc[i]) ccol.push_back(i);
    }
  }
  std::size_t k = crow.size();
  std::vector<QMatrix> sub;
  sub.reserve(m - 1);
  for (std::size_t t = 1; t < m; ++t) {
    QMatrix b(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) b(i, j) = mats[t](crow[i], ccol[j]);
    sub.push_back(std::move(b));
  }
  std::vector<Int> sub_xs;
  if (!invertible_combo(sub, sub_xs, full_dim)) return false;
  for (std::size_t t = 1; t < m; ++t) xs[t] = sub_xs[t - 1];

  QMatrix rest(n, n);
  for (std::size_t t = 1; t < m; ++t) {
    if (sgn(xs[t]) == 0) continue;
    Rat f(xs[t]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) rest(i, j) += f * mats[t](i, j);
  }
  for (Int x0(0); x0 <= Int(full_dim); ++x0) {
    QMatrix trial = rest;
    if (sgn(x0) != 0) {
      Rat f(x0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) trial(i, j) += f * a0(i, j);
    }
    if (sgn(det(trial)) != 0) {
      xs[0] = x0;
      return true;
    }
  }
  return false;
}

}  // namespace

std::pair<ZVec, OrderElement> find_invertible_combination(const std::vector<OrderElement>& elems) {
  if (elems.empty()) fail(errc::no_invertible_combination, "empty element list");
  std::vector<QMatrix> mats;
  mats.reserve(elems.size());
  for (const auto& e : elems) mats.push_back(mul_matrix(e));
  std::vector<Int> xs;
  if (!invertible_combo(mats, xs, elems[0].order()->rank()))
    fail(errc::no_invertible_combination, "no invertible integer combination exists");
  OrderElement y = zero(elems[0].order());
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (sgn(xs[i]) != 0) y = y + Rat(xs[i]) * elems[i];
  return {std::move(xs), std::move(y)};
}

}  // namespace gscm
