#pragma once

#include "gscm/formal.hpp"
#include "gscm/ideal.hpp"
#include "gscm/normsys.hpp"

namespace gscm {

struct PolarizedContext {
  OrderPtr order;
  NormSystemPtr norms;
};

/* Pair (I, r): invertible fractional ideal plus invertible norm value.  The
 * pairing x,y -> (tr(N(x+y)/r) - tr(N(x-y)/r))/4 on the ideal must be
 * positive-definite. */
struct PolarizedIdeal {
  FractionalIdeal ideal;
  OrderElement r;
};

/* Gram matrix of the pairing on the den-scaled (integral) basis rows; equal to
 * the Gram on the fractional basis with r itself, hence basis-independent in
 * determinant. */
QMatrix polarized_gram(const PolarizedContext& ctx, const PolarizedIdeal& p);

/* Determinant of the pairing; throws not_positive_definite when the pairing
 * is not PD (e.g. r is not a norm-shaped value for this ideal). */
Rat polarized_determinant(const PolarizedContext& ctx, const PolarizedIdeal& p);

struct ReduceResult {
  OrderElement x;        // invertible element of E with C = I/x
  FractionalIdeal c;     // contains O
  OrderElement r2;       // r / N(x)
  Rat trace_value;       // tr(N(x)/r), for bound checks
  Rat determinant;       // det of the pairing used
};

/* LLL-based reduction: Gram build -> lll_reduce_gram -> invertible combination
 * on the reduced basis.  For principal inputs the output heights stay below
 * reduction_height_bound(ctx, D). */
ReduceResult reduce_polarized(const PolarizedContext& ctx, const PolarizedIdeal& p);

/* Published explicit bound B(h(O), h(D)) on h(C) + h(r2) after reduction of a
 * principal polarized ideal of determinant D; derived from the actual Gram
 * bound n^4 2^n D and the order's Hadamard constants, not from asymptotics. */
Rat reduction_height_bound(const PolarizedContext& ctx, const Rat& d);

struct CompactTriple {
  FractionalIdeal ideal;
  OrderElement r;
  FormalProduct s;
};

/* (I, r, 1)^e over the compactification: square-and-multiply where every step
 * is followed by reduce_polarized, accumulating the x's into s.  Maintains
 * I^e = J * [s] and r^e = a * N([s]).  Fails with height_overflow when the
 * running height passes 4x the published bound (no principal witness). */
CompactTriple compact_power(const PolarizedContext& ctx, const PolarizedIdeal& p, const Int& e);

}  // namespace gscm
