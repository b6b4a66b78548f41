#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gscm/errors.hpp"
#include "gscm/numeric.hpp"

namespace gscm {

class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<ZVec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  ZVec row(std::size_t i) const;
  void set_row(std::size_t i, const ZVec& v);

  IntMatrix transposed() const;
  bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  explicit QMatrix(const IntMatrix& m);

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  QVec row(std::size_t i) const;
  QMatrix transposed() const;
  bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);

 private:
  std::size_t rows_, cols_;
  std::vector<Rat> a_;
};

QVec mat_vec(const QMatrix& m, const QVec& v);
ZVec mat_vec(const IntMatrix& m, const ZVec& v);
QVec vec_mat(const QVec& v, const QMatrix& m);
ZVec vec_mat(const ZVec& v, const IntMatrix& m);

Rat dot(const QVec& a, const QVec& b);

/* Exact determinant (fraction-free Gaussian elimination). */
Int det(const IntMatrix& m);
Rat det(const QMatrix& m);

/* Exact inverse; throws singular_basis. */
QMatrix inverse(const QMatrix& m);

/* Solve m * x = b exactly; throws singular_basis. */
QVec solve(const QMatrix& m, const QVec& b);

std::size_t rank(const QMatrix& m);

/* Symmetric rational matrix wrapper; symmetry is checked at construction,
 * positive-definiteness is certified by a successful cholesky_ldl. */
class GramMatrix {
 public:
  explicit GramMatrix(QMatrix m);
  std::size_t dim() const { return m_.rows(); }
  const QMatrix& matrix() const { return m_; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  QMatrix m_;
};

/* Row-style Hermite normal form: h = u * m with u unimodular, pivots positive,
 * entries above each pivot reduced into [0, pivot), zero rows at the bottom.
 * Canonical: two integer row bases of the same lattice map to the same h. */
struct HnfResult {
  IntMatrix h;
  IntMatrix u;
};
HnfResult hnf(const IntMatrix& m);

/* Nonzero rows of hnf(m).h — a canonical basis of the row lattice. */
IntMatrix hnf_basis(const IntMatrix& m);

/* Rows spanning the left kernel {u : u*m = 0} over the integers. */
IntMatrix kernel_int(const IntMatrix& m);

/* Membership of v in the row lattice of a full-column-pivot HNF basis h. */
bool hnf_contains(const IntMatrix& h, const ZVec& v);

/* Canonical representative of v modulo the row lattice of h (square,
 * nonsingular, HNF). */
ZVec hnf_reduce(const IntMatrix& h, const ZVec& v);

/* Express v as an integer combination of the rows of a square nonsingular HNF
 * matrix h; returns false if v is not in the lattice. */
bool hnf_solve(const IntMatrix& h, const ZVec& v, ZVec& coeffs);

/* G = L D L^T with L unit lower triangular and D positive diagonal; the LDL
 * variant keeps everything rational (D_ii are the squared Cholesky pivots).
 * Throws not_positive_definite with the index of the failing pivot. */
struct LdlResult {
  QMatrix l;
  QVec d;
};
LdlResult cholesky_ldl(const GramMatrix& g);

/* LLL (delta = 3/4) on a quadratic form.  Returns unimodular u such that
 * u^T g u is reduced; for integer positive-definite g every entry of u^T g u
 * is bounded by n * 2^n * det(g). */
IntMatrix lll_reduce_gram(const GramMatrix& g);

/* Nearest-plane decoding on the column lattice of a: returns y minimizing-ish
 * ||a*y - t||.  Exact under the promise dist <= 2^-n * lambda_1(a); otherwise
 * a best-effort candidate the caller must verify.  Throws singular_basis. */
ZVec babai_nearest(const IntMatrix& a, const QVec& t);

/* Same decoder on a row lattice (rows of b generate). */
ZVec babai_nearest_rows(const IntMatrix& b, const QVec& t);

/* Process-wide default enumeration node budget (settable via the CLI's
 * GSCM_NODE_BUDGET); initial value 10^7. */
std::uint64_t default_node_budget();
void set_default_node_budget(std::uint64_t budget);

/* All nonzero x with x^T g x <= bound, one representative per +-pair (first
 * nonzero coordinate positive), sorted lexicographically.  Fincke-Pohst over
 * the exact LDL; throws budget_exceeded past node_budget visited nodes.
 * node_budget = 0 uses the process default. */
std::vector<ZVec> enumerate_short(const GramMatrix& g, const Rat& bound,
                                  std::uint64_t node_budget = 0);

}  // namespace gscm
