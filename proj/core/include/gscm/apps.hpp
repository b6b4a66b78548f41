#pragma once

#include <functional>
#include <random>

#include "gscm/gentry_szydlo.hpp"

namespace gscm {

/* Basis rows (over den) of the fixed (+1) or anti-fixed (-1) sublattice of the
 * involution. */
IntMatrix fixed_sublattice(const OrderPtr& o, int sign);

struct SublatticePair {
  IntMatrix plus;   // rows/den: basis of v O^+
  IntMatrix minus;  // rows/den: basis of v O^-
  Int den = 1;
};

/* SVP callback: given a Gram matrix, return the coordinates of a nonzero
 * vector at most gamma times longer than the shortest one. */
using SvpOracle = std::function<ZVec(const GramMatrix&)>;

/* Built-in exact oracle (gamma = 1) via enumeration. */
ZVec exact_svp_oracle(const GramMatrix& g);

struct HalveResult {
  SublatticePair pair;
  OrderElement shortest;
  OrderElement unit_used;  // corrected u' = zeta * u
};

/* Dimension halving: conj(I)/I -> gs_recover -> zeta-scan over mu/mu^2 ->
 * conjugation-twist kernels v O^+/- inside I -> SVP oracle on both halves.
 * The returned vector is within gamma*sqrt(2) of lambda_1(I). */
HalveResult halve_dimension(const PolarizedContext& ctx, const FractionalIdeal& i,
                            const SvpOracle& oracle, const RecoveryConfig& cfg);

/* All x with x * conj(x) = r, given the factorization of the absolute norm of
 * r.  Returns the full solution set (unions of cosets x * mu(O)), canonically
 * sorted; empty when none exist. */
std::vector<OrderElement> solve_norm_equation(
    const PolarizedContext& ctx, const OrderElement& r,
    const std::vector<std::pair<Int, unsigned>>& norm_factorization, const RecoveryConfig& cfg);

/* e = m * product of the first k primes. */
Int smooth_exponent(const Int& m, unsigned k);

struct ApproxConfig {
  RecoveryConfig rec;
  unsigned k_override = 0;  // 0: smallest k with prod of first k primes > 2^(0.03 n)
  unsigned max_k = 10;
};

/* Recovery from an approximate norm: smooth exponent, degree-1 primes above
 * q = d+1 for divisors d of e, Babai decode against the product lattice, and
 * a Hensel finish.  The final check (v) = I is exact; r_tilde never enters it. */
OrderElement approx_recover(const PolarizedContext& ctx, const FractionalIdeal& i,
                            const OrderElement& r_tilde, const ApproxConfig& cfg);

struct TranscriptSample {
  OrderElement value;  // v * a_i
};

using SamplerFn = std::function<OrderElement(std::mt19937_64&)>;

struct TranscriptConfig {
  ApproxConfig approx;
  std::uint64_t seed = 7;
  unsigned reference_samples = 4096;
  bool truncate_finish = false;  // decode r_tilde by coefficient truncation instead
};

/* Averaging attack: r_tilde = avg(s_i conj(s_i)) / avg(a conj(a)), I = ideal
 * generated by the samples, then approx_recover (or the truncation finish). */
OrderElement transcript_attack(const PolarizedContext& ctx,
                               const std::vector<TranscriptSample>& samples,
                               const SamplerFn& sampler, const TranscriptConfig& cfg);

}  // namespace gscm
