#pragma once

#include <cstdint>
#include <vector>

#include "gscm/ideal.hpp"

namespace gscm {

/* Prime ideal above a rational prime, from Kummer-Dedekind on a power-basis
 * order: (p, g(alpha)) with g a monic irreducible factor of the defining
 * polynomial mod p.  The HNF lattice is the canonical equality witness. */
struct PrimeIdeal {
  Int p;
  ZVec gpoly;  // monic lift of g, length f+1
  OrderElement g;
  unsigned f = 1;
  unsigned e = 1;
  FractionalIdeal lattice;

  Int norm() const { return pow_int(p, f); }
};

/* Kummer-Dedekind factorization of (p).  Requires a power-basis order (throws
 * not_monogenic) and a prime passing the Dedekind criterion (throws bad_prime;
 * the caller skips such primes).  The product prod P_i^{e_i} = (p) is verified. */
std::vector<PrimeIdeal> factor_rational_prime(const OrderPtr& o, const Int& p);

FractionalIdeal prime_ideal_power(const PrimeIdeal& pid, unsigned k);

/* Largest t with I (integral) contained in P^t. */
unsigned valuation(const FractionalIdeal& i, const PrimeIdeal& pid);

/* Explicit Hadamard floor: every nonzero x in a^k satisfies
 * log2 ||x|| >= (k log2 N(a) - c_O)/n.  Returned as a dyadic rational. */
Rat min_height_floor(const FractionalIdeal& a, long k);

/* F_p[X]/(g) arithmetic; p must fit in 62 bits.  Elements are coefficient
 * vectors of length f. */
class FqField {
 public:
  using El = std::vector<std::uint64_t>;

  FqField(const Int& p, const ZVec& gpoly);

  std::uint64_t p() const { return p_; }
  unsigned f() const { return f_; }
  Int q() const;

  El zero() const { return El(f_, 0); }
  El one() const;
  bool is_zero(const El& a) const;
  bool eq(const El& a, const El& b) const { return a == b; }

  El add(const El& a, const El& b) const;
  El sub(const El& a, const El& b) const;
  El mul(const El& a, const El& b) const;
  El pow(const El& a, Int e) const;  // negative e inverts
  El inv(const El& a) const;

  /* Reduce an element of E: denominators must be prime to p. */
  El from_order_elem(const OrderElement& x) const;
  OrderElement lift(const OrderPtr& o, const El& a) const;

  /* All roots of X^d - c in the field. */
  std::vector<El> roots_of_unity_eq(unsigned d, const El& c) const;

 private:
  std::uint64_t p_;
  unsigned f_;
  std::vector<std::uint64_t> g_;  // monic modulus, length f+1
};

}  // namespace gscm
