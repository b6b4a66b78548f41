#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gscm/linalg.hpp"
#include "gscm/poly.hpp"

namespace gscm {

class Order;
using OrderPtr = std::shared_ptr<const Order>;

/* An order of rank n, given by the multiplication table of its basis:
 * e_i * e_j = sum_k table(i,j)[k] e_k.  Instances are immutable and always
 * held through OrderPtr; ring axioms are verified at construction, and the
 * optional involution is verified to be a ring automorphism of order two with
 * tr(x * conj(x)) positive-definite. */
class Order {
 public:
  /* Z[zeta_m]: rank phi(m), power basis, involution zeta -> zeta^(m-1). */
  static OrderPtr cyclotomic(unsigned m);

  /* Z[X]/(f) for monic f; irreducibility is a caller obligation.  conj_image,
   * if given, is the image of X under the intended involution and is verified
   * (throws invalid_involution on failure). */
  static OrderPtr from_polynomial(const ZVec& f, const std::optional<ZVec>& conj_image,
                                  const std::string& name = "");

  static OrderPtr from_table(unsigned n, std::vector<ZVec> table, ZVec one,
                             std::optional<IntMatrix> involution, const std::string& name = "");

  unsigned rank() const { return n_; }
  const std::string& name() const { return name_; }
  std::uint64_t id() const { return id_; }

  const ZVec& table(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
  const ZVec& one_coords() const { return one_; }

  bool has_involution() const { return invol_.has_value(); }
  const IntMatrix& involution_matrix() const;

  /* Present for power-basis constructions (cyclotomic / from_polynomial). */
  const std::optional<ZVec>& defining_polynomial() const { return defining_; }
  std::optional<unsigned> cyclotomic_m() const { return cyclo_m_; }
  /* conj_image as passed to from_polynomial, for faithful serialization */
  const std::optional<ZVec>& conj_image() const { return conj_image_; }

  /* trace of multiplication by e_i */
  const ZVec& basis_traces() const { return tr_basis_; }
  /* tr(e_i * e_j), integral */
  const IntMatrix& trace_form() const { return trace_form_; }
  /* Gram of the pairing tr(x * conj(y)); requires the involution. */
  const QMatrix& cm_gram() const;

  /* log2 of the Hadamard constant: |det mult(x)| <= (||x|| 2^{c/n})^n, i.e.
   * log2 N((x)) <= n log2 ||x|| + c.  Used for explicit decoding bounds. */
  double hadamard_log2() const { return hadamard_log2_; }
  /* max |table entry| */
  const Int& table_max() const { return table_max_; }

  Order(unsigned n, std::vector<ZVec> table, ZVec one, std::optional<IntMatrix> involution,
        std::string name);

 private:
  void validate() const;

  unsigned n_;
  std::vector<ZVec> table_;
  ZVec one_;
  std::optional<IntMatrix> invol_;
  std::string name_;
  std::optional<ZVec> defining_;
  std::optional<unsigned> cyclo_m_;
  std::uint64_t id_ = 0;

  ZVec tr_basis_;
  IntMatrix trace_form_;
  std::optional<QMatrix> cm_gram_;
  double hadamard_log2_ = 0;
  Int table_max_;

  friend OrderPtr finish_order(std::unique_ptr<Order> o, std::optional<ZVec> defining,
                               std::optional<unsigned> cyclo_m);
};

/* Exact element of E = Q (x) O in the order's basis coordinates. */
class OrderElement {
 public:
  OrderElement() = default;
  OrderElement(OrderPtr order, QVec coords);

  const OrderPtr& order() const { return order_; }
  const QVec& coords() const { return coords_; }

  bool is_zero() const;
  bool is_integral() const;  // all coordinates integers
  ZVec integral_coords() const;

  bool operator==(const OrderElement& o) const;
  bool operator!=(const OrderElement& o) const { return !(*this == o); }
  /* lexicographic on coordinates; used for canonical ordering and map keys */
  bool operator<(const OrderElement& o) const;

 private:
  OrderPtr order_;
  QVec coords_;
};

OrderElement elem(const OrderPtr& o, QVec coords);
OrderElement elem_int(const OrderPtr& o, const ZVec& coords);
OrderElement zero(const OrderPtr& o);
OrderElement one(const OrderPtr& o);
OrderElement basis_elem(const OrderPtr& o, std::size_t i);

OrderElement operator+(const OrderElement& a, const OrderElement& b);
OrderElement operator-(const OrderElement& a, const OrderElement& b);
OrderElement operator-(const OrderElement& a);
OrderElement operator*(const OrderElement& a, const OrderElement& b);
OrderElement operator*(const Rat& s, const OrderElement& a);

/* Matrix of y -> x*y in basis coordinates. */
QMatrix mul_matrix(const OrderElement& x);

Rat trace(const OrderElement& x);

/* Applies the involution; throws no_involution. */
OrderElement conjugate(const OrderElement& x);

bool invertible_in_E(const OrderElement& x);
/* Throws not_invertible when x is a zero divisor (or zero) in E. */
OrderElement inverse_in_E(const OrderElement& x);

OrderElement pow(const OrderElement& x, const Int& e);  // e may be negative

Rat height(const OrderElement& x);

/* tr(x * conj(x)) — the CM quadratic form. */
Rat cm_norm_trace(const OrderElement& x);

/* The full group mu(O) of a CM order, closed under product and inverse,
 * together with its exponent.  Computed by enumerating the sphere
 * tr(x conj(x)) = tr(1) and keeping torsion elements. */
struct RootsOfUnity {
  std::vector<OrderElement> elements;
  unsigned exponent = 1;
};
RootsOfUnity roots_of_unity(const OrderPtr& o);

/* Lemma-style search: integers |x_i| <= n with sum x_i elems_i invertible in E,
 * by rank recursion on the multiplication matrices. */
std::pair<ZVec, OrderElement> find_invertible_combination(const std::vector<OrderElement>& elems);

void require_same_order(const OrderElement& a, const OrderElement& b);

}  // namespace gscm
