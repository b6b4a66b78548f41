#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace gscm {

using Int = mpz_class;
using Rat = mpq_class;
using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

/* Nearest integer, ties to even. */
Int round_half_even(const Rat& q);

/* Largest t with t*t <= a; a must be >= 0. */
inline Int isqrt(const Int& a) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

/* Smallest integer u with u*u >= q (q >= 0). */
Int sqrt_ceil(const Rat& q);

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int next_prime(const Int& n);

/* log2(|x|) as a double; exact enough for bound bookkeeping (error < 1e-9
 * relative), valid for arbitrarily large x != 0. */
double log2_abs(const Int& x);
double log2_abs(const Rat& x);

/* Nearest point on the 2^-20 dyadic grid. */
Rat dyadic20(double v);

/* The height h(x) = 2*log2(2+|x|) for integers, h(p/q) = h(p)+h(q) for reduced
 * rationals, extended additively to vectors and matrices.  Returned as a dyadic
 * rational on the 2^-20 grid; only ever used in one-sided bound checks. */
Rat height(const Int& x);
Rat height(const Rat& x);
Rat height(const QVec& v);
Rat height(const ZVec& v);

std::string to_string(const Rat& q);

}  // namespace gscm
