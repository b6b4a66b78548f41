#include "gscm/gentry_szydlo.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

namespace gscm {

long fractional_valuation(const FractionalIdeal& i, const PrimeIdeal& pid) {
  // v(I) = v(den * I) - v((den))
  FractionalIdeal num = FractionalIdeal::from_raw(i.order(), 1, i.basis());
  long v = static_cast<long>(valuation(num, pid));
  if (i.den() != 1) {
    OrderElement d = Rat(i.den()) * one(i.order());
    long vd = static_cast<long>(valuation(FractionalIdeal::principal(d), pid));
    v -= vd;
  }
  return v;
}

// ---------------------------------------------------------------------------
// power recovery

PowerWitness power_recovery(const PolarizedContext& ctx, const PolarizedIdeal& p,
                            const PrimeIdeal& prime) {
  const OrderPtr& o = ctx.order;
  std::size_t n = o->rank();
  if (fractional_valuation(p.ideal, prime) != 0)
    fail(errc::prime_divides_generator, "generator has nonzero valuation at p=" + prime.p.get_str());

  Int e0 = prime.norm() - 1;
  double log2_np = static_cast<double>(prime.f) * log2_abs(prime.p);
  double c_o = o->hadamard_log2();

  unsigned k = 1;
  unsigned k_floor = 0;  // first k that satisfied the explicit inequality
  for (unsigned round = 0; round < 24; ++round) {
    Int e = e0 * pow_int(prime.p, k);
    CompactTriple t = compact_power(ctx, p, e);
    // coordinate bound of gamma = [s]/v^e from the exact norm value a:
    // N(gamma) = 1/a, so tr(N(gamma)) = ntrace(ninv(a)).
    Rat trg = ctx.norms->ntrace(ctx.norms->ninv(t.r));
    double cb = 0.5 * (std::max(log2_abs(trg), 0.0) + log2_abs(ctx.norms->minv_max()) + 1);
    double need = static_cast<double>(n) * (cb + n + std::log2(static_cast<double>(n)) + 16) + c_o;
    if (static_cast<double>(k + 1) * log2_np < need) {
      k = static_cast<unsigned>(std::ceil(need / log2_np));
      continue;
    }
    if (k_floor == 0) k_floor = k;

    FractionalIdeal lat = prime_ideal_power(prime, k + 1);
    ResidueLattice rring = residue_ring(lat);
    ZVec target = eval_formal_mod(t.s, rring);
    QVec targetq(n);
    for (std::size_t i = 0; i < n; ++i) targetq[i] = Rat(target[i]);
    ZVec y = babai_nearest_rows(lat.basis(), targetq);
    ZVec gamma_vec = target;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(y[i]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) gamma_vec[j] -= y[i] * lat.basis()(i, j);
    }
    OrderElement gamma = elem_int(o, gamma_vec);
    bool ok = !gamma.is_zero() && invertible_in_E(gamma);
    if (ok) {
      ok = ideal_mul(t.ideal, gamma) == FractionalIdeal::whole_ring(o);
    }
    if (ok) {
      OrderElement check = ctx.norms->nmul(t.r, ctx.norms->norm(gamma));
      ok = check == ctx.norms->norm_of_one();
    }
    if (ok) {
      PowerWitness w;
      w.exponent = e;
      w.unit_group_order = e0;
      w.k = k;
      w.prime = prime;
      w.s = t.s;
      w.s.mul_base(gamma, Int(-1));
      return w;
    }
    if (k_floor > 0 && k >= 8 * k_floor)
      fail(errc::decode_failed, "power decode failed up to the k growth cap");
    k *= 2;
  }
  fail(errc::decode_failed, "power decode failed (k loop exhausted)");
}

// ---------------------------------------------------------------------------
// prime selection

namespace {

constexpr unsigned long kPrimeSearchCap = 1000000;

bool stable_gcd_below_q(const Int& p, const Int& q) {
  // gcd((p-1) p^a, (q-1) q^b) stabilizes once a,b exceed the valuations
  Int a = (p - 1) * pow_int(p, 64);
  Int b = (q - 1) * pow_int(q, 64);
  return gcd(a, b) < q;
}

}  // namespace

CyclotomicPrimePair choose_primes_cyclotomic(unsigned m, const std::set<Int>& exclude) {
  auto next_split = [&](Int from) {
    Int c = from;
    while (true) {
      c = next_prime(c);
      if (c > Int(kPrimeSearchCap)) fail(errc::search_exhausted, "no split prime below the cap");
      if (c % m == 1 % m && !exclude.count(c)) return c;
    }
  };
  Int p = next_split(1);
  if (p == 2) {
    // m = 1: any prime splits; the pair (2, 3) already has gcd(2^a, 2*3^b) = 2 < 3
    Int q = next_split(p);
    while (!stable_gcd_below_q(p, q)) q = next_split(q);
    return {p, q};
  }
  // r: smallest prime dividing neither p-1 nor m
  Int r = 2;
  while ((p - 1) % r == 0 || Int(m) % r == 0) r = next_prime(r);
  Int q = p;
  while (true) {
    q = next_split(q);
    Int res = q % r;
    if (res != 0 && res != 1 && stable_gcd_below_q(p, q)) break;
  }
  return {p, q};
}

std::vector<PrimeIdeal> choose_primes_random(const OrderPtr& o, const RecoveryConfig& cfg) {
  if (cfg.prime_budget < 2) fail(errc::usage_error, "prime_budget must be at least 2");
  std::mt19937_64 rng(cfg.seed);
  std::size_t n = o->rank();
  std::vector<PrimeIdeal> out;
  std::set<Int> used;
  // sample integers below B^{1/f} across inertia targets f = 1..n, smallest
  // degrees first; keep primes with a usable (non-BadPrime) prime ideal
  for (unsigned attempt = 0; attempt < 4000 && out.size() < cfg.prime_budget; ++attempt) {
    unsigned f_target = 1 + static_cast<unsigned>(rng() % n);
    unsigned long cap = std::max<unsigned long>(8, 1UL << (16 / f_target));
    Int cand(static_cast<unsigned long>(2 + rng() % cap));
    Int p = next_prime(cand - 1);
    if (used.count(p)) continue;
    used.insert(p);
    std::vector<PrimeIdeal> pids;
    try {
      pids = factor_rational_prime(o, p);
    } catch (const error& e) {
      if (e.code() == errc::bad_prime) continue;
      throw;
    }
    // prefer the smallest inertia degree above this prime
    const PrimeIdeal* best = nullptr;
    for (const auto& pid : pids)
      if (!best || pid.f < best->f) best = &pid;
    if (best) out.push_back(*best);
  }
  if (out.size() < cfg.prime_budget) fail(errc::search_exhausted, "random prime supply exhausted");
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.f != b.f ? a.f < b.f : a.p < b.p;
  });
  return out;
}

// ---------------------------------------------------------------------------
// gcd recombination

OrderElement combine_gcd(const PolarizedContext& ctx, const std::vector<PowerWitness>& witnesses,
                         const FractionalIdeal& target, double hb_log2) {
  (void)target;
  const OrderPtr& o = ctx.order;
  assert(!witnesses.empty());
  std::size_t m = witnesses.size();

  // Bezout coefficients from the HNF of the exponent column
  IntMatrix ecol(m, 1);
  for (std::size_t i = 0; i < m; ++i) ecol(i, 0) = witnesses[i].exponent;
  HnfResult hr = hnf(ecol);
  Int g = hr.h(0, 0);
  assert(sgn(g) > 0);
  FormalProduct s;
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(hr.u(0, i)) == 0) continue;
    s *= witnesses[i].s.pow(hr.u(0, i));
  }

  // auxiliary prime: all bases (numerators and denominators) invertible mod it
  Int paux = 2;
  while (true) {
    paux = next_prime(paux);
    if (paux > Int(kPrimeSearchCap)) fail(errc::non_invertible_base, "no auxiliary prime found");
    bool ok = true;
    for (const auto& [b, e] : s.factors()) {
      Int den = 1;
      for (const auto& c : b.coords()) den = lcm(den, Int(c.get_den()));
      if (den % paux == 0) {
        ok = false;
        break;
      }
      ZVec z(b.coords().size());
      for (std::size_t i = 0; i < z.size(); ++i) z[i] = Rat(b.coords()[i] * Rat(den)).get_num();
      QMatrix mm = mul_matrix(elem_int(o, z));
      Rat dt = det(mm);
      assert(dt.get_den() == 1);
      if (dt.get_num() % paux == 0) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }

  // evaluate modulo paux^K with K sized so the centered lift is exact
  double lp = log2_abs(paux);
  unsigned K = static_cast<unsigned>(std::ceil((hb_log2 + 2) / lp)) + 1;
  for (unsigned attempt = 0; attempt < 2; ++attempt) {
    ResidueLattice rring =
        ResidueLattice::integer_modulus(o, pow_int(paux, K));
    ZVec t = eval_formal_mod(s, rring);
    ZVec yv = rring.center_lift(t);
    OrderElement y = elem_int(o, yv);

    if (g == 1) return y;

    // roots of X^g - y by sphere enumeration: any root w has
    // tr(N(w)) <= n * tr(N(y))^{1/g}
    Rat trn = ctx.norms->ntrace(ctx.norms->norm(y));
    if (sgn(trn) > 0) {
      Int tr_ceil = ceil_rat(trn);
      Int root;
      mpz_root(root.get_mpz_t(), tr_ceil.get_mpz_t(), g.get_ui());
      Rat bound = Rat(o->rank()) * Rat(root + 1) + Rat(o->rank());
      std::vector<ZVec> cands = enumerate_short(GramMatrix{ctx.norms->norm_gram()}, bound);
      for (const auto& cv : cands) {
        OrderElement w = elem_int(o, cv);
        if (pow(w, g) == y) return w;
        OrderElement wn = -w;
        if (pow(wn, g) == y) return wn;
      }
    }
    K *= 2;  // lift may have been undersized; one retry before giving up
  }
  fail(errc::no_root, "X^g - y has no root in the order");
}

// ---------------------------------------------------------------------------
// Hensel finish

OrderElement hensel_root(const PolarizedContext& ctx, const FormalProduct& s, const Int& e,
                         const PrimeIdeal& prime, const FractionalIdeal& target,
                         const OrderElement* r_expected, double hb_log2) {
  const OrderPtr& o = ctx.order;
  std::size_t n = o->rank();
  if (e % prime.p == 0) fail(errc::usage_error, "hensel prime must not divide the exponent");

  FqField fq(prime.p, prime.gpoly.size() >= 2 ? prime.gpoly : *o->defining_polynomial());
  // [s] in the residue field
  FqField::El sbar = fq.one();
  for (const auto& [b, k] : s.factors()) {
    FqField::El bb = fq.from_order_elem(b);
    if (fq.is_zero(bb)) fail(errc::non_invertible_base, "witness base vanishes at the Hensel prime");
    sbar = fq.mul(sbar, fq.pow(bb, k));
  }
  Int q1 = fq.q() - 1;
  Int d = gcd(e, q1);
  if (!d.fits_ulong_p()) fail(errc::usage_error, "gcd(e, N(p)-1) too large");
  std::vector<FqField::El> roots_d = fq.roots_of_unity_eq(static_cast<unsigned>(d.get_ui()), sbar);
  if (roots_d.empty()) fail(errc::no_root, "X^d - [s] has no root in the residue field");

  // c with (e/d) * c = 1 (mod (q-1)/d); r -> r^c maps d-th roots to e-th roots
  Int od = q1 / d;
  Int c = 1;
  if (od > 1) {
    Int ed = (e / d) % od;
    if (mpz_invert(c.get_mpz_t(), ed.get_mpz_t(), od.get_mpz_t()) == 0)
      fail(errc::no_root, "exponent not invertible modulo (q-1)/d");
  }
  std::vector<FqField::El> roots_e;
  for (const auto& r : roots_d) {
    FqField::El cand = fq.pow(r, c);
    if (fq.eq(fq.pow(cand, e % q1 == 0 ? q1 : e % q1), sbar) || fq.eq(fq.pow(cand, e), sbar))
      roots_e.push_back(cand);
  }
  if (roots_e.empty()) fail(errc::no_root, "no e-th root in the residue field");

  double log2_np = static_cast<double>(prime.f) * log2_abs(prime.p);
  double c_o = o->hadamard_log2();
  double need = static_cast<double>(n) *
                    (hb_log2 + n + std::log2(static_cast<double>(n)) + 16) +
                c_o;
  unsigned k0 = std::max<unsigned>(2, static_cast<unsigned>(std::ceil(need / log2_np)));
  for (unsigned k = k0; k <= 8 * k0; k *= 2) {
    FractionalIdeal lat = prime_ideal_power(prime, k);
    ResidueLattice rring = residue_ring(lat);
    ZVec smod = eval_formal_mod(s, rring);
    for (const auto& r0 : roots_e) {
      // Newton lifting of x^e = [s] from precision 1 to precision k
      OrderElement lifted = fq.lift(o, r0);
      ZVec x = rring.reduce(lifted.integral_coords());
      unsigned iters = 2;
      while ((1u << iters) < 2 * k) ++iters;
      bool bad = false;
      for (unsigned it = 0; it <= iters; ++it) {
        ZVec xe = rring.pow(x, e);
        ZVec diff(n);
        for (std::size_t i = 0; i < n; ++i) diff[i] = xe[i] - smod[i];
        diff = rring.reduce(diff);
        bool zero = true;
        for (const auto& v : diff)
          if (sgn(v) != 0) zero = false;
        if (zero) break;
        ZVec deriv = rring.pow(x, e - 1);
        Int emod = e;  // scalar multiple
        for (auto& vv : deriv) vv *= emod;
        deriv = rring.reduce(deriv);
        ZVec dinv;
        try {
          dinv = rring.inv(deriv);
        } catch (const error&) {
          bad = true;
          break;
        }
        ZVec corr = rring.mul(diff, dinv);
        for (std::size_t i = 0; i < n; ++i) x[i] -= corr[i];
        x = rring.reduce(x);
      }
      if (bad) continue;
      {
        ZVec xe = rring.pow(x, e);
        ZVec diff(n);
        for (std::size_t i = 0; i < n; ++i) diff[i] = xe[i] - smod[i];
        if (!rring.is_zero(diff)) continue;
      }
      // Babai decode of the small representative
      QVec tq(n);
      for (std::size_t i = 0; i < n; ++i) tq[i] = Rat(x[i]);
      ZVec y = babai_nearest_rows(lat.basis(), tq);
      ZVec vv = x;
      for (std::size_t i = 0; i < n; ++i) {
        if (sgn(y[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) vv[j] -= y[i] * lat.basis()(i, j);
      }
      OrderElement v = elem_int(o, vv);
      if (v.is_zero() || !invertible_in_E(v)) continue;
      if (!(FractionalIdeal::principal(v) == target)) continue;
      if (r_expected && !(ctx.norms->norm(v) == *r_expected)) continue;
      return v;
    }
  }
  fail(errc::decode_failed, "hensel decode failed up to the k growth cap");
}

// ---------------------------------------------------------------------------
// root-of-unity matching

OrderElement match_root_of_unity(const FractionalIdeal& i, const OrderElement& z) {
  const OrderPtr& o = i.order();
  std::size_t n = o->rank();
  FractionalIdeal q = ideal_mul(i, inverse_in_E(z));  // = i / (z), contains the sought zeta
  // Gram of tr(x conj(y)) on q's fractional basis
  std::vector<OrderElement> bas;
  for (std::size_t r = 0; r < n; ++r) bas.push_back(q.basis_element(r));
  QMatrix g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Rat v = trace(bas[a] * conjugate(bas[b]));
      g(a, b) = v;
      g(b, a) = v;
    }
  Rat tr1 = trace(one(o));
  std::vector<ZVec> sphere = enumerate_short(GramMatrix{g}, tr1);
  std::vector<OrderElement> cands;
  for (const auto& cv : sphere) {
    OrderElement x = zero(o);
    for (std::size_t a = 0; a < n; ++a)
      if (sgn(cv[a]) != 0) x = x + Rat(cv[a]) * bas[a];
    if (trace(x * conjugate(x)) != tr1) continue;
    cands.push_back(x);
    cands.push_back(-x);
  }
  unsigned long cap = 2 * cands.size() + 2;
  OrderElement id = one(o);
  for (const auto& zeta : cands) {
    // torsion test
    OrderElement p = zeta;
    bool torsion = false;
    for (unsigned long k = 1; k <= cap; ++k) {
      if (p == id) {
        torsion = true;
        break;
      }
      p = p * zeta;
    }
    if (!torsion) continue;
    if (FractionalIdeal::principal(z * zeta) == i) return zeta;
  }
  fail(errc::no_match, "no root of unity maps z onto a generator");
}

// ---------------------------------------------------------------------------
// driver

namespace {

struct PrimeSupply {
  std::vector<PrimeIdeal> primes;
};

PrimeSupply select_primes(const PolarizedContext& ctx, const FractionalIdeal& c,
                          const RecoveryConfig& cfg) {
  const OrderPtr& o = ctx.order;
  PrimeSupply out;
  if (cfg.branch == PrimeBranch::cyclotomic) {
    if (!o->cyclotomic_m())
      fail(errc::usage_error, "cyclotomic branch requires a cyclotomic order");
    unsigned m = *o->cyclotomic_m();
    std::set<Int> exclude;
    for (unsigned round = 0; round < 16; ++round) {
      CyclotomicPrimePair pair = choose_primes_cyclotomic(m, exclude);
      bool ok = true;
      for (const Int& p : {pair.p, pair.q}) {
        std::vector<PrimeIdeal> pids;
        try {
          pids = factor_rational_prime(o, p);
        } catch (const error& e) {
          if (e.code() == errc::bad_prime) {
            exclude.insert(p);
            ok = false;
            break;
          }
          throw;
        }
        const PrimeIdeal* usable = nullptr;
        for (const auto& pid : pids)
          if (fractional_valuation(c, pid) == 0) {
            usable = &pid;
            break;
          }
        if (!usable) {
          // the generator meets every prime above p; factor this p out of the
          // search by exclusion (§3.4 allows finitely many such steps)
          exclude.insert(p);
          ok = false;
          break;
        }
        out.primes.push_back(*usable);
      }
      if (ok) return out;
      out.primes.clear();
    }
    fail(errc::search_exhausted, "cyclotomic prime pair search exhausted");
  }
  // randomized branch
  std::vector<PrimeIdeal> sample = choose_primes_random(o, cfg);
  for (const auto& pid : sample)
    if (fractional_valuation(c, pid) == 0) out.primes.push_back(pid);
  if (out.primes.size() < 2) fail(errc::search_exhausted, "not enough usable random primes");
  out.primes.resize(std::min<std::size_t>(out.primes.size(), cfg.prime_budget));
  return out;
}

/* a fresh degree-1-preferring prime for the Hensel finish */
PrimeIdeal fresh_hensel_prime(const PolarizedContext& ctx, const FractionalIdeal& c, const Int& e,
                              const std::set<Int>& used, unsigned gcd_cap) {
  const OrderPtr& o = ctx.order;
  Int p = 2;
  for (unsigned tries = 0; tries < 4000; ++tries) {
    p = next_prime(p);
    if (used.count(p) || e % p == 0) continue;
    std::vector<PrimeIdeal> pids;
    try {
      pids = factor_rational_prime(o, p);
    } catch (const error& err) {
      if (err.code() == errc::bad_prime) continue;
      throw;
    }
    for (const auto& pid : pids) {
      if (pid.f != 1) continue;
      Int d = gcd(e, pid.norm() - 1);
      if (d > Int(gcd_cap)) continue;
      if (fractional_valuation(c, pid) != 0) continue;
      return pid;
    }
  }
  fail(errc::search_exhausted, "no usable Hensel prime found");
}

}  // namespace

RecoveryResult gs_recover(const PolarizedContext& ctx, const PolarizedIdeal& p,
                          const RecoveryConfig& cfg) {
  const OrderPtr& o = ctx.order;
  if (!o->has_involution()) fail(errc::usage_error, "gs_recover needs a CM order");
  if (cfg.prime_budget < 2) fail(errc::usage_error, "prime_budget must be at least 2");

  RecoveryResult result;
  try {
    ReduceResult red = reduce_polarized(ctx, p);
    const FractionalIdeal& c = red.c;
    const OrderElement& r0 = red.r2;

    PrimeSupply supply = select_primes(ctx, c, cfg);

    std::vector<PowerWitness> witnesses;
    std::set<Int> used;
    for (const auto& pid : supply.primes) {
      try {
        witnesses.push_back(power_recovery(ctx, {c, r0}, pid));
        used.insert(pid.p);
      } catch (const error& e) {
        if (e.code() == errc::prime_divides_generator) continue;
        throw;
      }
    }
    if (witnesses.empty()) fail(errc::no_solution, "no usable power witness");

    Int g = 0;
    for (const auto& w : witnesses) g = gcd(g, w.exponent);

    // coordinate bound for the reduced generator v0: tr(N(v0)) = tr(r0)
    Rat tr_r0 = ctx.norms->ntrace(r0);
    double hb_v = 0.5 * (std::max(log2_abs(tr_r0), 0.0) + log2_abs(ctx.norms->minv_max()) + 1) + 2;

    OrderElement u = zero(o);
    bool have_u = false;
    if (!cfg.hensel_shortcut && g <= Int(cfg.gcd_cap)) {
      // direct route: y = v0^g, then a g-th root and a unit match
      OrderElement r0g = pow(r0, g);
      Rat trg = ctx.norms->ntrace(r0g);
      double hb_y =
          0.5 * (std::max(log2_abs(trg), 0.0) + log2_abs(ctx.norms->minv_max()) + 1) + 2;
      try {
        OrderElement w = combine_gcd(ctx, witnesses, c, hb_y);
        OrderElement zeta = match_root_of_unity(c, w);
        OrderElement cand = w * zeta;
        if (FractionalIdeal::principal(cand) == c && ctx.norms->norm(cand) == r0) {
          u = cand;
          have_u = true;
        }
      } catch (const error& e) {
        if (e.code() != errc::no_root && e.code() != errc::no_match) throw;
      }
    }
    if (!have_u) {
      // Hensel finish on the first witness with a fresh small prime
      const PowerWitness& w0 = witnesses.front();
      PrimeIdeal hp = fresh_hensel_prime(ctx, c, w0.exponent, used, cfg.gcd_cap);
      u = hensel_root(ctx, w0.s, w0.exponent, hp, c, &r0, hb_v);
      have_u = true;
    }

    OrderElement v = u * red.x;
    if (!(FractionalIdeal::principal(v) == p.ideal) || !(ctx.norms->norm(v) == p.r))
      fail(errc::no_solution, "final verification failed");
    result.v = v;
    result.orbit_size = static_cast<unsigned>(roots_of_unity(o).elements.size());
    return result;
  } catch (const error& e) {
    switch (e.code()) {
      case errc::height_overflow:
      case errc::decode_failed:
      case errc::no_root:
      case errc::no_match:
      case errc::not_positive_definite:
      case errc::not_invertible:
      case errc::no_invertible_combination:
        fail(errc::no_solution, std::string("no principal witness: ") + e.what());
      default:
        throw;
    }
  }
}

}  // namespace gscm
