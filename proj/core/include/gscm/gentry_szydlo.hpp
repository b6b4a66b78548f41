#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "gscm/polarized.hpp"
#include "gscm/primes.hpp"

namespace gscm {

/* Compact witness for a high power of the generator: [s] = v^exponent exactly,
 * with exponent = (N(p)-1) * p^k. */
struct PowerWitness {
  Int exponent;
  Int unit_group_order;  // N(p) - 1
  unsigned k = 0;
  PrimeIdeal prime;
  FormalProduct s;
};

enum class PrimeBranch { cyclotomic, randomized };

struct RecoveryConfig {
  std::uint64_t seed = 1;
  unsigned prime_budget = 2;  // >= 2
  Rat height_slack = Rat(2);
  PrimeBranch branch = PrimeBranch::cyclotomic;
  bool hensel_shortcut = false;
  unsigned gcd_cap = 64;  // largest g handled by direct root extraction
};

/* v^{(N(p)-1) p^k} as a formal product, k grown adaptively until the Babai
 * decode of [s] modulo p^{k+1} verifies exactly.  Throws
 * prime_divides_generator when v has nonzero valuation at the prime, and
 * decode_failed past the growth cap. */
PowerWitness power_recovery(const PolarizedContext& ctx, const PolarizedIdeal& p,
                            const PrimeIdeal& prime);

struct CyclotomicPrimePair {
  Int p, q;
};

/* First two usable split primes for Z[zeta_m]: p = 1 (mod m) smallest, q > p
 * with q = 1 (mod m) and q mod r outside {0,1} for the auxiliary prime r; the
 * pair guarantees gcd((p-1)p^a, (q-1)q^b) < q. */
CyclotomicPrimePair choose_primes_cyclotomic(unsigned m, const std::set<Int>& exclude = {});

/* Seeded sampling of usable prime ideals across inertia-degree targets. */
std::vector<PrimeIdeal> choose_primes_random(const OrderPtr& o, const RecoveryConfig& cfg);

/* Bezout-combines witnesses into [s] = v^g for g = gcd of the exponents,
 * evaluates the product modulo a high power of an auxiliary prime (sized from
 * hb_log2, a bound on log2 of the coordinates of v^g) and extracts a g-th
 * root by sphere enumeration.  Throws no_root when X^g - y has no root in O. */
OrderElement combine_gcd(const PolarizedContext& ctx, const std::vector<PowerWitness>& witnesses,
                         const FractionalIdeal& target, double hb_log2);

/* Hensel finish: roots of X^d - [s] in O/q for d = gcd(e, N(q)-1), lifted to
 * q^k and decoded by Babai; returns the candidate with (v) = target (and
 * N(v) = *r_expected when given). */
OrderElement hensel_root(const PolarizedContext& ctx, const FormalProduct& s, const Int& e,
                         const PrimeIdeal& prime, const FractionalIdeal& target,
                         const OrderElement* r_expected, double hb_log2);

/* zeta in mu(E) with (z * zeta) = i, found by enumerating the unit sphere of
 * the lattice i / (z).  Throws no_match. */
OrderElement match_root_of_unity(const FractionalIdeal& i, const OrderElement& z);

struct RecoveryResult {
  OrderElement v;
  unsigned orbit_size = 1;
};

/* End-to-end driver: reduce -> prime selection -> power recovery -> gcd (or
 * Hensel) recombination -> root-of-unity matching -> exact verification
 * (v) = I and N(v) = r.  Throws no_solution when verification fails on every
 * branch. */
RecoveryResult gs_recover(const PolarizedContext& ctx, const PolarizedIdeal& p,
                          const RecoveryConfig& cfg);

/* valuation of a fractional ideal at a prime */
long fractional_valuation(const FractionalIdeal& i, const PrimeIdeal& pid);

}  // namespace gscm
