#pragma once

#include <cstdint>
#include <string>

#include "gscm/ideal.hpp"

namespace gscm {

/* Embedding of a cyclotomic order into Q[X]/(P) with P = X^(m/2)+1 when
 * 4 | m and X^m - 1 otherwise, so that roots of unity act as (nega)cyclic
 * coefficient shifts.  The Y-tower is trivial here (one block); non-cyclotomic
 * orders fall back to brute-force unit scans. */
class TowerEmbedding {
 public:
  explicit TowerEmbedding(OrderPtr o);

  const OrderPtr& order() const { return order_; }
  unsigned m() const { return m_; }
  unsigned mprime() const { return mprime_; }
  bool negacyclic() const { return nega_; }

  QVec embed(const OrderElement& x) const;
  OrderElement project(const QVec& v) const;

  /* product modulo P (exact schoolbook convolution) */
  QVec mul(const QVec& a, const QVec& b) const;
  /* a(X) -> a(X^-1) */
  QVec conj(const QVec& a) const;

  struct Unit {
    bool negative = false;
    unsigned shift = 0;
  };
  /* canonical unit list: ascending shift, + before -, deduplicated */
  const std::vector<Unit>& units() const { return units_; }
  QVec apply(const Unit& u, const QVec& a) const;
  OrderElement unit_element(const Unit& u) const;

  Rat coeff_norm(const QVec& a) const;
  /* tr(x conj x) = scale * coeff_norm(embed(x)); verified at construction */
  const Rat& scale() const { return scale_; }

 private:
  OrderPtr order_;
  unsigned m_, mprime_;
  bool nega_;
  QPoly phi_;         // m-th cyclotomic polynomial
  QVec idempotent_;   // section of the Phi_m component inside Q[X]/(P)
  std::vector<Unit> units_;
  Rat scale_;
};

struct SymVector {
  QVec coeffs;
};

/* test predicate: ||x|| = ||x w|| for every w in mu(O) */
bool unit_orbit_norm_invariance_check(const OrderElement& x);

struct ArgminStats {
  std::uint64_t coeff_mults = 0;
  std::uint64_t unit_evals = 0;
};

/* argmin over mu(O) of ||x + w y|| via the trace trick: all inner products
 * <x, y X^i> read off one product x * conj(y).  Ties break by the canonical
 * unit order. */
TowerEmbedding::Unit sym_argmin(const TowerEmbedding& t, const SymVector& x, const SymVector& y,
                                ArgminStats* stats = nullptr);

/* brute-force reference: minimizes tr((x + w y) conj(x + w y)) over mu(O) */
OrderElement brute_argmin(const OrderPtr& o, const std::vector<OrderElement>& mu,
                          const OrderElement& x, const OrderElement& y);

std::vector<SymVector> sample_directions(const TowerEmbedding& t, unsigned count,
                                         std::uint64_t seed);

/* mu-orbit-invariant locality hash: the first component is canonicalized onto
 * a positive leading monomial by the unique unit rotation; throws
 * degenerate_tie on exact coordinate ties (caller redraws directions). */
std::string sym_hash(const TowerEmbedding& t, const SymVector& x,
                     const std::vector<SymVector>& directions, unsigned concat);

struct SieveConfig {
  std::uint64_t seed = 1;
  std::uint64_t budget = 200000;  // iteration budget
  bool use_symmetry = true;
};

struct SieveStatsRow {
  std::uint64_t iteration = 0;
  std::uint64_t list_size = 0;
  Rat best_norm;
  std::uint64_t reductions = 0;
  std::uint64_t ip_count = 0;
};

struct SieveResult {
  OrderElement shortest;
  Rat best_norm;  // tr(x conj x)
  bool budget_exceeded = false;
  std::vector<SieveStatsRow> stats;
};

/* Gauss sieve whose list keeps one representative per +-mu-orbit; pairwise
 * reduction uses sym_argmin.  With use_symmetry = false this is the plain
 * +-1 Gauss sieve (for list-size comparisons). */
SieveResult gauss_sieve_sym(const FractionalIdeal& i, const SieveConfig& cfg);

std::string sieve_stats_csv(const SieveResult& r);

}  // namespace gscm
