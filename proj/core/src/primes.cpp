#include "gscm/primes.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace gscm {

namespace {

// ---------------------------------------------------------------------------
// F_p[X] arithmetic on uint64 coefficients (p < 2^62)

using U = std::uint64_t;
using Fp = std::vector<U>;  // c[i] X^i, trimmed

U mulmod(U a, U b, U p) { return static_cast<U>((static_cast<unsigned __int128>(a) * b) % p); }

U powmod(U a, U e, U p) {
  U r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

U invmod(U a, U p) { return powmod(a % p, p - 2, p); }

void trim(Fp& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

long deg(const Fp& f) { return static_cast<long>(f.size()) - 1; }

Fp fp_mul(const Fp& a, const Fp& b, U p) {
  if (a.empty() || b.empty()) return {};
  Fp c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + static_cast<unsigned __int128>(a[i]) * b[j]) % p;
  }
  trim(c);
  return c;
}

Fp fp_sub(const Fp& a, const Fp& b, U p) {
  Fp c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    U av = i < a.size() ? a[i] : 0, bv = i < b.size() ? b[i] : 0;
    c[i] = (av + p - bv) % p;
  }
  trim(c);
  return c;
}

Fp fp_mod(Fp a, const Fp& m, U p) {
  assert(!m.empty());
  U lead_inv = invmod(m.back(), p);
  while (deg(a) >= deg(m)) {
    U f = mulmod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + p - mulmod(f, m[i], p)) % p;
    trim(a);
  }
  return a;
}

Fp fp_divexact(Fp a, const Fp& m, U p) {
  assert(!m.empty());
  U lead_inv = invmod(m.back(), p);
  Fp q(a.size() >= m.size() ? a.size() - m.size() + 1 : 0, 0);
  while (deg(a) >= deg(m)) {
    U f = mulmod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - m.size();
    q[shift] = f;
    for (std::size_t i = 0; i < m.size(); ++i)
      a[shift + i] = (a[shift + i] + p - mulmod(f, m[i], p)) % p;
    trim(a);
  }
  assert(a.empty());
  trim(q);
  return q;
}

Fp fp_gcd(Fp a, Fp b, U p) {
  while (!b.empty()) {
    Fp r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    U inv = invmod(a.back(), p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

Fp fp_powmod(Fp base, Int e, const Fp& m, U p) {
  Fp r{1};
  base = fp_mod(std::move(base), m, p);
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fp_mod(fp_mul(r, base, p), m, p);
    e >>= 1;
    if (sgn(e) > 0) base = fp_mod(fp_mul(base, base, p), m, p);
  }
  return r;
}

Fp fp_derivative(const Fp& f, U p) {
  if (f.size() <= 1) return {};
  Fp d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mulmod(f[i], i % p, p);
  trim(d);
  return d;
}

Fp fp_monic(Fp f, U p) {
  if (f.empty()) return f;
  U inv = invmod(f.back(), p);
  for (auto& c : f) c = mulmod(c, inv, p);
  return f;
}

/* f = g(X^p) -> g; valid when f' = 0 (coefficients already p-th powers). */
Fp fp_pth_root(const Fp& f, U p) {
  Fp g((f.size() + p - 1) / p + 1, 0);
  std::size_t top = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    assert(i % p == 0);
    g[i / p] = f[i];  // c^(1/p) = c over F_p
    top = std::max(top, i / p + 1);
  }
  g.resize(top);
  return g;
}

void fp_squarefree_parts(const Fp& f, U p, unsigned mult, std::vector<std::pair<Fp, unsigned>>& out) {
  Fp d = fp_derivative(f, p);
  if (d.empty()) {
    fp_squarefree_parts(fp_pth_root(f, p), p, mult * static_cast<unsigned>(p), out);
    return;
  }
  Fp c = fp_gcd(f, d, p);
  Fp w = fp_divexact(f, c, p);
  unsigned i = 1;
  while (deg(w) > 0) {
    Fp y = fp_gcd(w, c, p);
    Fp fac = fp_divexact(w, y, p);
    if (deg(fac) > 0) out.emplace_back(fp_monic(fac, p), mult * i);
    w = std::move(y);
    c = fp_divexact(c, w, p);
    ++i;
  }
  if (deg(c) > 0) fp_squarefree_parts(fp_pth_root(c, p), p, mult * static_cast<unsigned>(p), out);
}

/* distinct-degree decomposition of a squarefree monic f */
std::vector<std::pair<Fp, unsigned>> fp_ddf(Fp f, U p) {
  std::vector<std::pair<Fp, unsigned>> out;
  Fp h{0, 1};  // X
  unsigned d = 0;
  while (deg(f) > 0 && deg(f) >= 2 * static_cast<long>(d + 1)) {
    ++d;
    h = fp_powmod(std::move(h), Int(static_cast<unsigned long>(p)), f, p);
    Fp g = fp_gcd(fp_sub(h, Fp{0, 1}, p), f, p);
    if (deg(g) > 0) {
      out.emplace_back(fp_monic(g, p), d);
      f = fp_divexact(f, g, p);
      h = fp_mod(std::move(h), f, p);
    }
  }
  if (deg(f) > 0) out.emplace_back(fp_monic(f, p), static_cast<unsigned>(deg(f)));
  return out;
}

/* equal-degree splitting (fixed-seed Cantor-Zassenhaus; deterministic run to run) */
void fp_edf(const Fp& f, unsigned d, U p, std::mt19937_64& rng, std::vector<Fp>& out) {
  if (deg(f) == static_cast<long>(d)) {
    out.push_back(fp_monic(f, p));
    return;
  }
  while (true) {
    Fp r(static_cast<std::size_t>(deg(f)), 0);
    for (auto& c : r) c = rng() % p;
    trim(r);
    if (r.empty()) continue;
    Fp g;
    if (p == 2) {
      Fp t = r, acc = r;
      for (unsigned i = 1; i < d; ++i) {
        acc = fp_mod(fp_mul(acc, acc, p), f, p);
        t = fp_sub(t, fp_sub({}, acc, p), p);  // t += acc
      }
      g = fp_gcd(t, f, p);
    } else {
      Int e = (pow_int(Int(static_cast<unsigned long>(p)), d) - 1) / 2;
      Fp t = fp_powmod(r, e, f, p);
      g = fp_gcd(fp_sub(t, Fp{1}, p), f, p);
    }
    if (deg(g) > 0 && deg(g) < deg(f)) {
      fp_edf(g, d, p, rng, out);
      fp_edf(fp_divexact(f, g, p), d, p, rng, out);
      return;
    }
  }
}

std::vector<std::pair<Fp, unsigned>> fp_factor(const Fp& f, U p) {
  std::vector<std::pair<Fp, unsigned>> sqf;
  fp_squarefree_parts(fp_monic(f, p), p, 1, sqf);
  std::mt19937_64 rng(0x5eed5eedULL);
  std::vector<std::pair<Fp, unsigned>> out;
  for (const auto& [part, mult] : sqf)
    for (const auto& [prod, d] : fp_ddf(part, p)) {
      std::vector<Fp> irr;
      fp_edf(prod, d, p, rng, irr);
      for (auto& g : irr) out.emplace_back(std::move(g), mult);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Kummer-Dedekind

std::vector<PrimeIdeal> factor_rational_prime(const OrderPtr& o, const Int& p) {
  const auto& def = o->defining_polynomial();
  if (!def) fail(errc::not_monogenic, "prime factorization needs a power-basis order");
  if (!is_probable_prime(p)) fail(errc::usage_error, "p is not prime");
  if (!p.fits_ulong_p() || mpz_sizeinbase(p.get_mpz_t(), 2) > 62)
    fail(errc::usage_error, "prime too large for desk-scale factorization");
  U up = p.get_ui();
  std::size_t n = o->rank();

  Fp fbar(def->size());
  for (std::size_t i = 0; i < def->size(); ++i) {
    Int c = (*def)[i] % p;
    if (sgn(c) < 0) c += p;
    fbar[i] = c.get_ui();
  }
  trim(fbar);
  if (deg(fbar) != static_cast<long>(n)) fail(errc::bad_prime, "defining polynomial degenerates mod p");

  auto factors = fp_factor(fbar, up);

  // Dedekind criterion: with fbar = prod g_i^{e_i}, gbar = prod g_i,
  // hbar = fbar / gbar, M = (lift(gbar) lift(hbar) - f)/p, the prime is usable
  // iff gcd(Mbar, gbar, hbar) = 1.
  Fp gbar{1};
  for (const auto& [g, e] : factors) gbar = fp_mul(gbar, g, up);
  Fp hbar = fp_divexact(fbar, gbar, up);
  {
    auto lift = [&](const Fp& a) {
      ZVec z(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) z[i] = Int(static_cast<unsigned long>(a[i]));
      return z;
    };
    ZVec gl = lift(gbar), hl = lift(hbar);
    // integer product gl * hl minus f, divided by p, reduced mod p
    ZVec prod(gl.size() + hl.size() - 1);
    for (std::size_t i = 0; i < gl.size(); ++i)
      for (std::size_t j = 0; j < hl.size(); ++j) prod[i + j] += gl[i] * hl[j];
    Fp mbar;
    std::size_t len = std::max(prod.size(), def->size());
    mbar.assign(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
      Int c = (i < prod.size() ? prod[i] : Int(0)) - (i < def->size() ? (*def)[i] : Int(0));
      assert(c % p == 0);
      Int m = (c / p) % p;
      if (sgn(m) < 0) m += p;
      mbar[i] = m.get_ui();
    }
    trim(mbar);
    Fp d = fp_gcd(fp_gcd(mbar, gbar, up), hbar, up);
    if (deg(d) > 0) fail(errc::bad_prime, "Dedekind criterion fails at p=" + p.get_str());
  }

  std::vector<PrimeIdeal> out;
  for (const auto& [g, e] : factors) {
    PrimeIdeal pid;
    pid.p = p;
    pid.f = static_cast<unsigned>(deg(g));
    pid.e = e;
    pid.gpoly.assign(g.size(), Int(0));
    for (std::size_t i = 0; i < g.size(); ++i) pid.gpoly[i] = Int(static_cast<unsigned long>(g[i]));
    // g(alpha) in the power basis
    QVec coords(n);
    for (std::size_t i = 0; i < g.size() && i < n; ++i) coords[i] = Rat(pid.gpoly[i]);
    if (g.size() == n + 1) {
      // g == f (single factor of full degree): g(alpha) = 0; the ideal is (p)
      coords.assign(n, Rat(0));
    }
    pid.g = elem(o, coords);
    OrderElement pelem = Rat(p) * one(o);
    if (pid.g.is_zero())
      pid.lattice = FractionalIdeal::principal(pelem);
    else
      pid.lattice = FractionalIdeal::from_generators({pelem, pid.g});
    out.push_back(std::move(pid));
  }

  // verify prod P_i^{e_i} == (p)
  FractionalIdeal prod = FractionalIdeal::whole_ring(o);
  for (const auto& pid : out)
    for (unsigned t = 0; t < pid.e; ++t) prod = ideal_mul(prod, pid.lattice);
  if (!(prod == FractionalIdeal::principal(Rat(p) * one(o))))
    fail(errc::bad_prime, "prime ideal product check fails at p=" + p.get_str());
  return out;
}

FractionalIdeal prime_ideal_power(const PrimeIdeal& pid, unsigned k) {
  FractionalIdeal result = FractionalIdeal::whole_ring(pid.lattice.order());
  FractionalIdeal base = pid.lattice;
  unsigned e = k;
  while (e > 0) {
    if (e & 1) result = ideal_mul(result, base);
    e >>= 1;
    if (e) base = ideal_mul(base, base);
  }
  return result;
}

unsigned valuation(const FractionalIdeal& i, const PrimeIdeal& pid) {
  if (!i.is_integral()) fail(errc::usage_error, "valuation expects an integral ideal");
  unsigned v = 0;
  FractionalIdeal pw = pid.lattice;
  while (true) {
    bool inside = true;
    for (std::size_t r = 0; r < i.basis().rows(); ++r)
      if (!pw.contains(i.basis_element(r))) {
        inside = false;
        break;
      }
    if (!inside) return v;
    ++v;
    pw = ideal_mul(pw, pid.lattice);
  }
}

Rat min_height_floor(const FractionalIdeal& a, long k) {
  Rat nrm = ideal_norm(a);
  double log2n = log2_abs(nrm);
  double c = a.order()->hadamard_log2();
  double floor = (static_cast<double>(k) * log2n - c) / static_cast<double>(a.order()->rank());
  return dyadic20(floor);
}

// ---------------------------------------------------------------------------
// FqField

FqField::FqField(const Int& p, const ZVec& gpoly) {
  if (!p.fits_ulong_p() || mpz_sizeinbase(p.get_mpz_t(), 2) > 62)
    fail(errc::usage_error, "prime too large for FqField");
  p_ = p.get_ui();
  g_.assign(gpoly.size(), 0);
  for (std::size_t i = 0; i < gpoly.size(); ++i) {
    Int c = gpoly[i] % p;
    if (sgn(c) < 0) c += p;
    g_[i] = c.get_ui();
  }
  while (!g_.empty() && g_.back() == 0) g_.pop_back();
  f_ = static_cast<unsigned>(g_.size() - 1);
  assert(f_ >= 1);
}

Int FqField::q() const { return pow_int(Int(static_cast<unsigned long>(p_)), f_); }

FqField::El FqField::one() const {
  El e(f_, 0);
  e[0] = 1 % p_;
  return e;
}

bool FqField::is_zero(const El& a) const {
  for (auto c : a)
    if (c) return false;
  return true;
}

FqField::El FqField::add(const El& a, const El& b) const {
  El c(f_);
  for (unsigned i = 0; i < f_; ++i) c[i] = (a[i] + b[i]) % p_;
  return c;
}

FqField::El FqField::sub(const El& a, const El& b) const {
  El c(f_);
  for (unsigned i = 0; i < f_; ++i) c[i] = (a[i] + p_ - b[i]) % p_;
  return c;
}

FqField::El FqField::mul(const El& a, const El& b) const {
  Fp fa(a.begin(), a.end()), fb(b.begin(), b.end());
  trim(fa);
  trim(fb);
  Fp prod = fp_mod(fp_mul(fa, fb, p_), g_, p_);
  El c(f_, 0);
  for (std::size_t i = 0; i < prod.size(); ++i) c[i] = prod[i];
  return c;
}

FqField::El FqField::pow(const El& a, Int e) const {
  if (sgn(e) < 0) return pow(inv(a), -e);
  El r = one();
  El base = a;
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base);
    e >>= 1;
    if (sgn(e) > 0) base = mul(base, base);
  }
  return r;
}

FqField::El FqField::inv(const El& a) const {
  if (is_zero(a)) fail(errc::non_invertible_base, "zero has no inverse in F_q");
  return pow(a, q() - 2);
}

FqField::El FqField::from_order_elem(const OrderElement& x) const {
  // power basis: coordinate i multiplies alpha^i == X^i
  Fp poly(x.coords().size(), 0);
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    const Rat& c = x.coords()[i];
    Int den = c.get_den();
    Int dmod = den % Int(static_cast<unsigned long>(p_));
    if (sgn(dmod) == 0) fail(errc::non_invertible_base, "denominator shares a factor with p");
    Int num = c.get_num() % Int(static_cast<unsigned long>(p_));
    if (sgn(num) < 0) num += Int(static_cast<unsigned long>(p_));
    U v = mulmod(num.get_ui(), invmod(dmod.get_ui(), p_), p_);
    poly[i] = v;
  }
  trim(poly);
  Fp red = fp_mod(std::move(poly), g_, p_);
  El out(f_, 0);
  for (std::size_t i = 0; i < red.size(); ++i) out[i] = red[i];
  return out;
}

OrderElement FqField::lift(const OrderPtr& o, const El& a) const {
  QVec c(o->rank());
  for (unsigned i = 0; i < f_ && i < o->rank(); ++i) c[i] = Rat(Int(static_cast<unsigned long>(a[i])));
  return elem(o, std::move(c));
}

std::vector<FqField::El> FqField::roots_of_unity_eq(unsigned d, const El& c) const {
  std::vector<El> roots;
  if (is_zero(c)) {
    roots.push_back(zero());
    return roots;
  }
  Int order = q() - 1;
  // small fields: direct scan over nonzero elements
  if (q() < Int(1 << 20)) {
    El cur(f_, 0);
    // iterate all coefficient vectors
    std::vector<U> idx(f_, 0);
    while (true) {
      El cand(idx.begin(), idx.end());
      if (!is_zero(cand) && eq(pow(cand, Int(static_cast<long>(d))), c)) roots.push_back(cand);
      // increment
      unsigned i = 0;
      while (i < f_) {
        if (++idx[i] < p_) break;
        idx[i] = 0;
        ++i;
      }
      if (i == f_) break;
    }
    return roots;
  }
  // larger fields: generator + discrete log (baby-step giant-step)
  // factor q-1 by trial division
  std::vector<Int> pf;
  {
    Int m = order;
    for (Int t = 2; t * t <= m; t = (t == 2 ? Int(3) : t + 2)) {
      if (m % t == 0) {
        pf.push_back(t);
        while (m % t == 0) m /= t;
      }
    }
    if (m > 1) pf.push_back(m);
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  El gen;
  while (true) {
    El cand(f_);
    for (auto& v : cand) v = rng() % p_;
    if (is_zero(cand)) continue;
    bool ok = true;
    for (const auto& t : pf)
      if (eq(pow(cand, order / t), one())) {
        ok = false;
        break;
      }
    if (ok) {
      gen = cand;
      break;
    }
  }
  // BSGS: find L with gen^L = c
  Int msz = isqrt(order) + 1;
  std::vector<std::pair<El, Int>> table;
  {
    El cur = one();
    for (Int j = 0; j < msz; ++j) {
      table.emplace_back(cur, j);
      cur = mul(cur, gen);
    }
  }
  std::sort(table.begin(), table.end());
  El step = pow(gen, -msz);
  El gamma = c;
  Int dlog = -1;
  for (Int i = 0; i < msz; ++i) {
    auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(gamma, Int(0)),
                               [](const auto& a, const auto& b) { return a.first < b.first; });
    if (it != table.end() && it->first == gamma) {
      dlog = i * msz + it->second;
      break;
    }
    gamma = mul(gamma, step);
  }
  if (dlog < 0) return roots;
  Int dd = gcd(Int(static_cast<long>(d)), order);
  if (dlog % dd != 0) return roots;
  // solutions: x = gen^((dlog/dd) * inv(d/dd mod order/dd) + j*(order/dd))
  Int od = order / dd;
  Int dred = Int(static_cast<long>(d)) / dd;
  Int dinv;
  mpz_invert(dinv.get_mpz_t(), dred.get_mpz_t(), od.get_mpz_t());
  Int base_exp = ((dlog / dd) * dinv) % od;
  for (Int j = 0; j < dd; ++j) {
    Int e = (base_exp + j * od) % order;
    roots.push_back(pow(gen, e));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace gscm
