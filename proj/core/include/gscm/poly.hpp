#pragma once

#include <vector>

#include "gscm/numeric.hpp"

namespace gscm {

/* Dense rational polynomials, coeffs[i] multiplies X^i; trailing zeros are
 * trimmed so degree() == coeffs.size()-1 for nonzero polynomials. */
struct QPoly {
  QVec c;

  QPoly() = default;
  explicit QPoly(QVec coeffs) : c(std::move(coeffs)) { trim(); }

  static QPoly from_int(const ZVec& coeffs);
  static QPoly x_power(std::size_t k);

  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  void trim();

  Rat coeff(std::size_t i) const { return i < c.size() ? c[i] : Rat(0); }
};

QPoly operator+(const QPoly& a, const QPoly& b);
QPoly operator-(const QPoly& a, const QPoly& b);
QPoly operator*(const QPoly& a, const QPoly& b);
QPoly operator*(const Rat& s, const QPoly& a);
bool operator==(const QPoly& a, const QPoly& b);

/* a = q*b + r with deg r < deg b. */
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly pmod(const QPoly& a, const QPoly& b);

/* g = gcd(a, b) monic, with u*a + v*b = g. */
QPoly xgcd(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v);

/* m-th cyclotomic polynomial (integer coefficients, returned rational). */
QPoly cyclotomic_polynomial(unsigned m);

/* Euler totient. */
unsigned euler_phi(unsigned m);

}  // namespace gscm
