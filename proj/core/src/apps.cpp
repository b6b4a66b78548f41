#include "gscm/apps.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace gscm {

IntMatrix fixed_sublattice(const OrderPtr& o, int sign) {
  const IntMatrix& v = o->involution_matrix();
  std::size_t n = o->rank();
  // x with V x = sign * x: integer kernel of (V - sign I)
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v(i, j) - ((i == j) ? Int(sign) : Int(0));
  // columns act on x; left kernel of m^T gives {x : m x = 0}
  return kernel_int(m.transposed());
}

ZVec exact_svp_oracle(const GramMatrix& g) {
  Rat bound = g(0, 0);
  for (std::size_t i = 1; i < g.dim(); ++i)
    if (g(i, i) < bound) bound = g(i, i);
  for (int tries = 0; tries < 64; ++tries) {
    std::vector<ZVec> found = enumerate_short(g, bound);
    if (!found.empty()) {
      const ZVec* best = nullptr;
      Rat best_q = 0;
      for (const auto& x : found) {
        Rat qv = 0;
        for (std::size_t i = 0; i < g.dim(); ++i)
          for (std::size_t j = 0; j < g.dim(); ++j) qv += Rat(x[i]) * g(i, j) * Rat(x[j]);
        if (!best || qv < best_q) {
          best = &x;
          best_q = qv;
        }
      }
      return *best;
    }
    bound *= 2;
  }
  fail(errc::search_exhausted, "svp oracle found no vector");
}

namespace {

std::vector<OrderElement> mu_mod_squares(const RootsOfUnity& mu) {
  // coset representatives of mu / mu^2
  std::vector<OrderElement> squares;
  for (const auto& w : mu.elements) squares.push_back(w * w);
  std::sort(squares.begin(), squares.end());
  squares.erase(std::unique(squares.begin(), squares.end()), squares.end());
  std::vector<OrderElement> reps;
  std::vector<OrderElement> covered;
  for (const auto& z : mu.elements) {
    bool seen = false;
    for (const auto& c : covered)
      if (c == z) {
        seen = true;
        break;
      }
    if (seen) continue;
    reps.push_back(z);
    for (const auto& sq : squares) covered.push_back(z * sq);
  }
  return reps;
}

/* kernel inside I of x -> conj(x) * u - sign * x, as rows over I.den() */
IntMatrix twist_kernel(const FractionalIdeal& i, const OrderElement& u, int sign) {
  const OrderPtr& o = i.order();
  std::size_t n = o->rank();
  QMatrix t = mul_matrix(u);
  QMatrix vq(o->involution_matrix());
  QMatrix map = t * vq;  // x -> u * conj(x)
  for (std::size_t a = 0; a < n; ++a) map(a, a) -= Rat(sign);
  // x = B^T c for integer c over the ideal basis rows; kernel of map * B^T
  QMatrix bt(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) bt(a, b) = Rat(i.basis()(b, a));
  QMatrix mz = map * bt;
  // clear denominators columnwise-independent: use global lcm
  Int den = 1;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) den = lcm(den, Int(mz(a, b).get_den()));
  IntMatrix mi(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mi(a, b) = Rat(mz(a, b) * Rat(den)).get_num();
  IntMatrix ker = kernel_int(mi.transposed());  // rows c with mi c = 0
  // rows of the sublattice inside den*I coords: c * B
  if (ker.rows() == 0) return IntMatrix(0, n);
  IntMatrix rows(ker.rows(), n);
  for (std::size_t r = 0; r < ker.rows(); ++r)
    for (std::size_t b = 0; b < n; ++b) {
      Int acc = 0;
      for (std::size_t a = 0; a < n; ++a) acc += ker(r, a) * i.basis()(a, b);
      rows(r, b) = acc;
    }
  return hnf_basis(rows);
}

QMatrix cm_gram_on_rows(const OrderPtr& o, const IntMatrix& rows, const Int& den) {
  std::size_t k = rows.rows();
  QMatrix g(k, k);
  Rat d2 = Rat(den) * Rat(den);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      OrderElement xa = elem_int(o, rows.row(a));
      OrderElement xb = elem_int(o, rows.row(b));
      Rat v = trace(xa * conjugate(xb)) / d2;
      g(a, b) = v;
      g(b, a) = v;
    }
  return g;
}

}  // namespace

HalveResult halve_dimension(const PolarizedContext& ctx, const FractionalIdeal& i,
                            const SvpOracle& oracle, const RecoveryConfig& cfg) {
  const OrderPtr& o = ctx.order;
  std::size_t n = o->rank();
  unsigned dim_plus = static_cast<unsigned>(fixed_sublattice(o, +1).rows());
  unsigned dim_minus = static_cast<unsigned>(fixed_sublattice(o, -1).rows());

  FractionalIdeal quot = ideal_mul(ideal_conjugate(i), ideal_inverse(i));
  // N(conj(v)/v) = 1: recover u = omega * conj(v)/v
  PolarizedIdeal pq{quot, ctx.norms->norm_of_one()};
  OrderElement u = gs_recover(ctx, pq, cfg).v;

  RootsOfUnity mu = roots_of_unity(o);
  std::vector<OrderElement> reps = mu_mod_squares(mu);

  for (const auto& zeta : reps) {
    OrderElement uz = zeta * u;
    IntMatrix plus = twist_kernel(i, uz, +1);
    IntMatrix minus = twist_kernel(i, uz, -1);
    if (plus.rows() != dim_plus || minus.rows() != dim_minus) continue;
    // the plus kernel must be v' O^+ for a generator v' of I: the O-module it
    // generates is then exactly I
    std::vector<OrderElement> gens;
    Rat dinv(Int(1), i.den());
    for (std::size_t r = 0; r < plus.rows(); ++r)
      gens.push_back(dinv * elem_int(o, plus.row(r)));
    if (!(FractionalIdeal::from_generators(gens) == i)) continue;

    QMatrix gp = cm_gram_on_rows(o, plus, i.den());
    QMatrix gm = cm_gram_on_rows(o, minus, i.den());
    ZVec yp = oracle(GramMatrix{gp});
    ZVec ym = oracle(GramMatrix{gm});
    auto lift = [&](const IntMatrix& rows, const ZVec& c) {
      QVec v(n);
      for (std::size_t r = 0; r < rows.rows(); ++r) {
        if (sgn(c[r]) == 0) continue;
        for (std::size_t b = 0; b < n; ++b) v[b] += Rat(c[r]) * Rat(rows(r, b));
      }
      for (auto& x : v) x /= Rat(i.den());
      return elem(o, std::move(v));
    };
    OrderElement ep = lift(plus, yp);
    OrderElement em = lift(minus, ym);
    if (ep.is_zero() && em.is_zero()) fail(errc::search_exhausted, "svp oracle returned zero");
    OrderElement best;
    if (ep.is_zero())
      best = em;
    else if (em.is_zero())
      best = ep;
    else
      best = (cm_norm_trace(ep) <= cm_norm_trace(em)) ? ep : em;

    HalveResult res;
    res.pair.plus = plus;
    res.pair.minus = minus;
    res.pair.den = i.den();
    res.shortest = best;
    res.unit_used = uz;
    return res;
  }
  fail(errc::no_square_unit, "no unit representative produces the v O^+ sublattice");
}

// ---------------------------------------------------------------------------
// norm equation

std::vector<OrderElement> solve_norm_equation(
    const PolarizedContext& ctx, const OrderElement& r,
    const std::vector<std::pair<Int, unsigned>>& norm_factorization, const RecoveryConfig& cfg) {
  const OrderPtr& o = ctx.order;
  if (!(conjugate(r) == r)) fail(errc::usage_error, "r must lie in the real suborder");
  if (!r.is_integral() || !invertible_in_E(r)) fail(errc::usage_error, "r must be integral and invertible");

  // check the supplied factorization against the absolute norm of r
  Rat nr = det(mul_matrix(r));
  assert(nr.get_den() == 1);
  Int n_abs = abs(nr.get_num());
  {
    Int prod = 1;
    for (const auto& [p, e] : norm_factorization) prod *= pow_int(p, e);
    if (prod != n_abs) fail(errc::usage_error, "norm factorization does not match |N(r)|");
  }
  if (n_abs == 1) {
    // r is a unit: x conj(x) = r has solutions iff r = x conj(x) for a unit x
    // handled by the generic path with zero primes: candidates = {O}
  }

  FractionalIdeal rid = FractionalIdeal::principal(r);

  struct PrimeInfo {
    PrimeIdeal pid;
    unsigned val;
    int conj_partner;  // index of the conjugate prime; == own index if stable
  };
  std::vector<PrimeInfo> infos;
  for (const auto& [p, e] : norm_factorization) {
    (void)e;
    std::vector<PrimeIdeal> pids = factor_rational_prime(o, p);  // bad_prime propagates
    for (auto& pid : pids) {
      unsigned val = valuation(rid, pid);
      infos.push_back({std::move(pid), val, -1});
    }
  }
  // match conjugates
  for (std::size_t a = 0; a < infos.size(); ++a) {
    if (infos[a].conj_partner >= 0) continue;
    FractionalIdeal cj = ideal_conjugate(infos[a].pid.lattice);
    for (std::size_t b = a; b < infos.size(); ++b) {
      if (infos[b].conj_partner >= 0 && b != a) continue;
      if (infos[b].pid.lattice == cj) {
        infos[a].conj_partner = static_cast<int>(b);
        infos[b].conj_partner = static_cast<int>(a);
        break;
      }
    }
    if (infos[a].conj_partner < 0)
      fail(errc::bad_prime, "conjugate prime not found (non-invertible prime?)");
  }
  // verify valuations reconstruct (r)
  {
    FractionalIdeal prod = FractionalIdeal::whole_ring(o);
    for (const auto& inf : infos)
      if (inf.val > 0) prod = ideal_mul(prod, prime_ideal_power(inf.pid, inf.val));
    if (!(prod == rid)) fail(errc::bad_prime, "prime valuations do not reconstruct (r)");
  }

  // candidate ideals: stable primes take half the valuation (prune odd);
  // split pairs enumerate the valuation splits
  std::vector<std::size_t> stable, pair_lo;
  for (std::size_t a = 0; a < infos.size(); ++a) {
    if (infos[a].conj_partner == static_cast<int>(a)) {
      if (infos[a].val % 2 != 0) return {};  // odd inert/ramified valuation: no solutions
      if (infos[a].val > 0) stable.push_back(a);
    } else if (static_cast<int>(a) < infos[a].conj_partner &&
               (infos[a].val > 0 || infos[infos[a].conj_partner].val > 0)) {
      pair_lo.push_back(a);
    }
  }

  std::vector<OrderElement> solutions;
  std::vector<unsigned> split(pair_lo.size(), 0);
  constexpr std::size_t kCandidateCap = 4096;
  std::size_t candidates = 0;
  while (true) {
    if (++candidates > kCandidateCap) fail(errc::search_exhausted, "candidate cap exceeded");
    FractionalIdeal x = FractionalIdeal::whole_ring(o);
    for (std::size_t t : stable) x = ideal_mul(x, prime_ideal_power(infos[t].pid, infos[t].val / 2));
    bool feasible = true;
    for (std::size_t idx = 0; idx < pair_lo.size(); ++idx) {
      std::size_t a = pair_lo[idx];
      std::size_t b = static_cast<std::size_t>(infos[a].conj_partner);
      unsigned total = infos[a].val;  // = infos[b].val since conj(r) = r
      if (infos[b].val != total) {
        feasible = false;
        break;
      }
      unsigned alpha = split[idx];
      if (alpha > 0) x = ideal_mul(x, prime_ideal_power(infos[a].pid, alpha));
      if (total - alpha > 0) x = ideal_mul(x, prime_ideal_power(infos[b].pid, total - alpha));
    }
    if (feasible) {
      try {
        RecoveryResult rec = gs_recover(ctx, {x, r}, cfg);
        solutions.push_back(rec.v);
      } catch (const error& e) {
        if (e.code() != errc::no_solution) throw;
      }
    }
    // advance the split counters
    std::size_t idx = 0;
    while (idx < pair_lo.size()) {
      unsigned total = infos[pair_lo[idx]].val;
      if (++split[idx] <= total) break;
      split[idx] = 0;
      ++idx;
    }
    if (idx == pair_lo.size()) break;
  }

  // expand to the full solution set: union of cosets v * mu(O)
  RootsOfUnity mu = roots_of_unity(o);
  std::vector<OrderElement> all;
  for (const auto& v : solutions)
    for (const auto& w : mu.elements) all.push_back(v * w);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

// ---------------------------------------------------------------------------
// smooth exponents / approximate norms

Int smooth_exponent(const Int& m, unsigned k) {
  Int e = m;
  Int p = 1;
  for (unsigned i = 0; i < k; ++i) {
    p = next_prime(p);
    e *= p;
  }
  return e;
}

namespace {

std::vector<Int> divisors_of(const Int& e) {
  // e is smooth by construction; factor by trial division
  std::vector<std::pair<Int, unsigned>> fac;
  Int m = e;
  for (Int t = 2; t * t <= m; t = next_prime(t)) {
    if (m % t == 0) {
      unsigned c = 0;
      while (m % t == 0) {
        m /= t;
        ++c;
      }
      fac.emplace_back(t, c);
    }
  }
  if (m > 1) fac.emplace_back(m, 1);
  std::vector<Int> divs{1};
  for (const auto& [p, c] : fac) {
    std::size_t sz = divs.size();
    Int pk = 1;
    for (unsigned t = 1; t <= c; ++t) {
      pk *= p;
      for (std::size_t a = 0; a < sz; ++a) divs.push_back(divs[a] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

OrderElement approx_recover(const PolarizedContext& ctx, const FractionalIdeal& i,
                            const OrderElement& r_tilde, const ApproxConfig& cfg) {
  const OrderPtr& o = ctx.order;
  std::size_t n = o->rank();
  RootsOfUnity mu = roots_of_unity(o);
  Int m(static_cast<unsigned long>(mu.exponent));

  unsigned k = cfg.k_override;
  if (k == 0) {
    double target = 0.03 * static_cast<double>(n);
    double acc = 0;
    Int p = 1;
    k = 0;
    while (acc <= target) {
      p = next_prime(p);
      acc += log2_abs(p);
      ++k;
    }
  }

  try {
    for (; k <= cfg.max_k; ++k) {
      Int e = smooth_exponent(m, k);

      ReduceResult red = reduce_polarized(ctx, {i, r_tilde});
      const FractionalIdeal& c = red.c;

      // degree-1 primes above q = d + 1 for divisors d of e
      std::vector<PrimeIdeal> supply;
      for (const Int& d : divisors_of(e)) {
        Int q = d + 1;
        if (q < 3 || !is_probable_prime(q)) continue;
        std::vector<PrimeIdeal> pids;
        try {
          pids = factor_rational_prime(o, q);
        } catch (const error& err) {
          if (err.code() == errc::bad_prime) continue;
          throw;
        }
        for (const auto& pid : pids)
          if (pid.f == 1 && fractional_valuation(c, pid) == 0) supply.push_back(pid);
      }
      if (supply.empty()) continue;

      CompactTriple t = compact_power(ctx, {c, red.r2}, e);
      // coordinate bound for gamma (heuristic window: within 2x of the exact case)
      Rat trg = ctx.norms->ntrace(ctx.norms->ninv(t.r));
      double cb = 0.5 * (std::max(log2_abs(trg), 0.0) + log2_abs(ctx.norms->minv_max()) + 2) + 1;

      // product lattice: add primes until the Hadamard floor clears the bound
      FractionalIdeal klat = FractionalIdeal::whole_ring(o);
      double logdet = 0;
      double need = static_cast<double>(n) *
                        (cb + n + std::log2(static_cast<double>(n)) + 16) +
                    o->hadamard_log2();
      std::size_t used_primes = 0;
      for (const auto& pid : supply) {
        if (logdet >= need) break;
        klat = ideal_mul(klat, pid.lattice);
        logdet += log2_abs(pid.norm());
        ++used_primes;
      }
      if (logdet < need) continue;  // thin supply at this k

      ResidueLattice rring = residue_ring(klat);
      ZVec target = eval_formal_mod(t.s, rring);
      QVec targetq(n);
      for (std::size_t a = 0; a < n; ++a) targetq[a] = Rat(target[a]);
      ZVec y = babai_nearest_rows(klat.basis(), targetq);
      ZVec gamma_vec = target;
      for (std::size_t a = 0; a < n; ++a) {
        if (sgn(y[a]) == 0) continue;
        for (std::size_t b = 0; b < n; ++b) gamma_vec[b] -= y[a] * klat.basis()(a, b);
      }
      OrderElement gamma = elem_int(o, gamma_vec);
      if (gamma.is_zero() || !invertible_in_E(gamma)) continue;
      if (!(ideal_mul(t.ideal, gamma) == FractionalIdeal::whole_ring(o))) continue;

      FormalProduct witness = t.s;
      witness.mul_base(gamma, Int(-1));

      // Hensel finish with one extra degree-1 prime
      std::set<Int> used;
      for (const auto& pid : supply) used.insert(pid.p);
      Rat tr_r0 = ctx.norms->ntrace(red.r2);
      double hb_v = 0.5 * (std::max(log2_abs(tr_r0), 0.0) + log2_abs(ctx.norms->minv_max()) + 2) + 2;
      OrderElement u;
      bool got = false;
      Int hp = 2;
      for (unsigned tries = 0; tries < 64 && !got; ++tries) {
        hp = next_prime(hp);
        if (used.count(hp) || e % hp == 0) continue;
        std::vector<PrimeIdeal> pids;
        try {
          pids = factor_rational_prime(o, hp);
        } catch (const error& err) {
          if (err.code() == errc::bad_prime) continue;
          throw;
        }
        for (const auto& pid : pids) {
          if (pid.f != 1 || fractional_valuation(c, pid) != 0) continue;
          if (gcd(e, pid.norm() - 1) > Int(cfg.rec.gcd_cap)) continue;
          try {
            u = hensel_root(ctx, witness, e, pid, c, nullptr, hb_v);
            got = true;
            break;
          } catch (const error& err) {
            if (err.code() == errc::no_root || err.code() == errc::decode_failed ||
                err.code() == errc::non_invertible_base)
              continue;
            throw;
          }
        }
      }
      if (!got) continue;

      OrderElement v = u * red.x;
      // the approximate r_tilde never enters the final check
      if (FractionalIdeal::principal(v) == i) return v;
    }
  } catch (const error& e) {
    if (e.code() == errc::height_overflow)
      fail(errc::decode_failed, "powering overflowed under the approximate norm");
    throw;
  }
  fail(errc::insufficient_primes, "divisor-prime supply too thin for every k tried");
}

// ---------------------------------------------------------------------------
// transcript attack

OrderElement transcript_attack(const PolarizedContext& ctx,
                               const std::vector<TranscriptSample>& samples,
                               const SamplerFn& sampler, const TranscriptConfig& cfg) {
  const OrderPtr& o = ctx.order;
  if (samples.empty()) fail(errc::usage_error, "need at least one sample");

  OrderElement num = zero(o);
  for (const auto& s : samples) num = num + s.value * conjugate(s.value);
  num = Rat(1, static_cast<unsigned long>(samples.size())) * num;

  std::mt19937_64 rng(cfg.seed);
  OrderElement den = zero(o);
  for (unsigned t = 0; t < cfg.reference_samples; ++t) {
    OrderElement a = sampler(rng);
    den = den + a * conjugate(a);
  }
  den = Rat(1, cfg.reference_samples) * den;
  if (!invertible_in_E(den)) fail(errc::usage_error, "reference average is singular");
  OrderElement r_tilde = num * inverse_in_E(den);

  std::vector<OrderElement> gens;
  gens.reserve(samples.size());
  for (const auto& s : samples) gens.push_back(s.value);
  FractionalIdeal i = FractionalIdeal::from_generators(gens);

  try {
    if (cfg.truncate_finish) {
      // decode r_tilde by truncating the coefficients to integers
      QVec c = r_tilde.coords();
      QVec rounded(c.size());
      for (std::size_t a = 0; a < c.size(); ++a) rounded[a] = Rat(round_half_even(c[a]));
      OrderElement r_hat = elem(o, std::move(rounded));
      RecoveryResult rec = gs_recover(ctx, {i, r_hat}, cfg.approx.rec);
      return rec.v;
    }
    return approx_recover(ctx, i, r_tilde, cfg.approx);
  } catch (const error& e) {
    if (e.code() == errc::no_solution || e.code() == errc::insufficient_primes ||
        e.code() == errc::decode_failed)
      fail(errc::ideal_not_principal_witness,
           "recovery failed; the sample ideal may strictly contain (v)");
    throw;
  }
}

}  // namespace gscm
