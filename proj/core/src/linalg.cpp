#include "gscm/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace gscm {

const char* to_string(errc c) noexcept {
  switch (c) {
    case errc::not_positive_definite: return "NotPositiveDefinite";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::singular_basis: return "SingularBasis";
    case errc::not_invertible: return "NotInvertible";
    case errc::no_involution: return "NoInvolution";
    case errc::invalid_involution: return "InvalidInvolution";
    case errc::no_invertible_combination: return "NoInvertibleCombination";
    case errc::non_invertible_base: return "NonInvertibleBase";
    case errc::zero_ideal: return "ZeroIdeal";
    case errc::bad_prime: return "BadPrime";
    case errc::not_monogenic: return "NotMonogenic";
    case errc::height_overflow: return "HeightOverflow";
    case errc::decode_failed: return "DecodeFailed";
    case errc::prime_divides_generator: return "PrimeDividesGenerator";
    case errc::search_exhausted: return "SearchExhausted";
    case errc::no_root: return "NoRoot";
    case errc::no_match: return "NoMatch";
    case errc::no_solution: return "NoSolution";
    case errc::insufficient_primes: return "InsufficientPrimes";
    case errc::no_square_unit: return "NoSquareUnit";
    case errc::degenerate_tie: return "DegenerateTie";
    case errc::ideal_not_principal_witness: return "IdealNotPrincipalWitness";
    case errc::usage_error: return "UsageError";
  }
  return "UnknownError";
}

Int floor_rat(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }
Int ceil_rat(const Rat& q) { return ceil_div(q.get_num(), q.get_den()); }

Int round_half_even(const Rat& q) {
  Int fl = floor_rat(q);
  Rat frac = q - Rat(fl);
  Rat half(1, 2);
  if (frac < half) return fl;
  if (frac > half) return fl + 1;
  // tie: pick the even neighbour
  return mpz_even_p(fl.get_mpz_t()) ? fl : fl + 1;
}

Int sqrt_ceil(const Rat& q) {
  if (sgn(q) <= 0) return 0;
  Int c = ceil_rat(q);
  Int r = isqrt(c);
  if (r * r < c) ++r;
  return r;
}

Int next_prime(const Int& n) {
  Int p;
  mpz_nextprime(p.get_mpz_t(), n.get_mpz_t());
  return p;
}

double log2_abs(const Int& x) {
  assert(sgn(x) != 0);
  long exp2;
  double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp2);
}

double log2_abs(const Rat& x) { return log2_abs(x.get_num()) - log2_abs(x.get_den()); }

Rat dyadic20(double v) {
  const double grid = 1048576.0;  // 2^20
  Rat r(static_cast<long>(std::llround(v * grid)), 1048576);
  r.canonicalize();
  return r;
}

Rat height(const Int& x) {
  Int a = abs(x) + 2;
  return dyadic20(2.0 * log2_abs(a));
}

Rat height(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  return height(c.get_num()) + height(c.get_den());
}

Rat height(const QVec& v) {
  Rat s = 0;
  for (const auto& x : v) s += height(x);
  return s;
}

Rat height(const ZVec& v) {
  Rat s = 0;
  for (const auto& x : v) s += height(x);
  return s;
}

std::string to_string(const Rat& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// matrices

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<ZVec>& rows) {
  if (rows.empty()) return IntMatrix(0, 0);
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    assert(rows[i].size() == m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

ZVec IntMatrix::row(std::size_t i) const {
  ZVec v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

void IntMatrix::set_row(std::size_t i, const ZVec& v) {
  assert(v.size() == cols_);
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  assert(a.cols() == b.rows());
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

QMatrix::QMatrix(const IntMatrix& m) : rows_(m.rows()), cols_(m.cols()), a_(rows_ * cols_) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rat(m(i, j));
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QVec QMatrix::row(std::size_t i) const {
  QVec v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

QMatrix QMatrix::transposed() const {
  QMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  assert(a.cols() == b.rows());
  QMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

QVec mat_vec(const QMatrix& m, const QVec& v) {
  assert(m.cols() == v.size());
  QVec r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

ZVec mat_vec(const IntMatrix& m, const ZVec& v) {
  assert(m.cols() == v.size());
  ZVec r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

QVec vec_mat(const QVec& v, const QMatrix& m) {
  assert(m.rows() == v.size());
  QVec r(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

ZVec vec_mat(const ZVec& v, const IntMatrix& m) {
  assert(m.rows() == v.size());
  ZVec r(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

Rat dot(const QVec& a, const QVec& b) {
  assert(a.size() == b.size());
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int det(const IntMatrix& m) {
  assert(m.rows() == m.cols());
  // Bareiss fraction-free elimination
  std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

Rat det(const QMatrix& m) {
  assert(m.rows() == m.cols());
  std::size_t n = m.rows();
  if (n == 0) return 1;
  QMatrix a = m;
  Rat d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a(p, k)) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      d = -d;
    }
    d *= a(k, k);
    Rat inv = 1 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      Rat f = a(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

QMatrix inverse(const QMatrix& m) {
  assert(m.rows() == m.cols());
  std::size_t n = m.rows();
  QMatrix a = m, inv = QMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a(p, k)) == 0) ++p;
    if (p == n) fail(errc::singular_basis, "matrix not invertible");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    Rat piv = 1 / a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) *= piv;
      inv(k, j) *= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(a(i, k)) == 0) continue;
      Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

QVec solve(const QMatrix& m, const QVec& b) {
  assert(m.rows() == m.cols() && m.rows() == b.size());
  std::size_t n = m.rows();
  QMatrix a = m;
  QVec x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a(p, k)) == 0) ++p;
    if (p == n) fail(errc::singular_basis, "singular system");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(x[k], x[p]);
    }
    Rat piv = 1 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      Rat f = a(i, k) * piv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      x[i] -= f * x[k];
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= a(ii, j) * x[j];
    x[ii] /= a(ii, ii);
  }
  return x;
}

std::size_t rank(const QMatrix& m) {
  QMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    Rat piv = 1 / a(r, c);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (sgn(a(i, c)) == 0) continue;
      Rat f = a(i, c) * piv;
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

GramMatrix::GramMatrix(QMatrix m) : m_(std::move(m)) {
  assert(m_.rows() == m_.cols());
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = i + 1; j < m_.cols(); ++j)
      if (m_(i, j) != m_(j, i)) fail(errc::not_positive_definite, "gram matrix not symmetric");
}

// ---------------------------------------------------------------------------
// HNF

HnfResult hnf(const IntMatrix& m) {
  std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix h = m, u = IntMatrix::identity(rows);

  auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (sgn(q) == 0) return;
    for (std::size_t j = 0; j < cols; ++j) h(dst, j) -= q * h(src, j);
    for (std::size_t j = 0; j < rows; ++j) u(dst, j) -= q * u(src, j);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(h(a, j), h(b, j));
    for (std::size_t j = 0; j < rows; ++j) std::swap(u(a, j), u(b, j));
  };
  auto row_neg = [&](std::size_t a) {
    for (std::size_t j = 0; j < cols; ++j) h(a, j) = -h(a, j);
    for (std::size_t j = 0; j < rows; ++j) u(a, j) = -u(a, j);
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // clear column c below row r by gcd elimination
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (sgn(h(i, c)) == 0) continue;
        if (best == rows || mpz_cmpabs(h(i, c).get_mpz_t(), h(best, c).get_mpz_t()) < 0) best = i;
      }
      if (best == rows) break;  // column all zero below r
      row_swap(r, best);
      if (sgn(h(r, c)) < 0) row_neg(r);
      bool cleared = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (sgn(h(i, c)) == 0) continue;
        row_sub(i, r, floor_div(h(i, c), h(r, c)));
        if (sgn(h(i, c)) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (sgn(h(r, c)) == 0) continue;
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < r; ++i) row_sub(i, r, floor_div(h(i, c), h(r, c)));
    ++r;
  }
  return {std::move(h), std::move(u)};
}

IntMatrix hnf_basis(const IntMatrix& m) {
  HnfResult res = hnf(m);
  std::size_t nz = 0;
  for (std::size_t i = 0; i < res.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < res.h.cols(); ++j)
      if (sgn(res.h(i, j)) != 0) {
        zero = false;
        break;
      }
    if (!zero) nz = i + 1;
  }
  IntMatrix b(nz, res.h.cols());
  for (std::size_t i = 0; i < nz; ++i)
    for (std::size_t j = 0; j < res.h.cols(); ++j) b(i, j) = res.h(i, j);
  return b;
}

IntMatrix kernel_int(const IntMatrix& m) {
  HnfResult res = hnf(m);
  std::vector<ZVec> ker;
  for (std::size_t i = 0; i < res.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < res.h.cols(); ++j)
      if (sgn(res.h(i, j)) != 0) {
        zero = false;
        break;
      }
    if (zero) ker.push_back(res.u.row(i));
  }
  if (ker.empty()) return IntMatrix(0, m.rows());
  return hnf_basis(IntMatrix::from_rows(ker));
}

namespace {
// pivot columns of an HNF basis (rows nonzero, echelon)
std::vector<std::size_t> hnf_pivots(const IntMatrix& h) {
  std::vector<std::size_t> piv(h.rows());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t j = 0;
    while (j < h.cols() && sgn(h(i, j)) == 0) ++j;
    piv[i] = j;
  }
  return piv;
}
}  // namespace

bool hnf_solve(const IntMatrix& h, const ZVec& v, ZVec& coeffs) {
  auto piv = hnf_pivots(h);
  ZVec w = v;
  coeffs.assign(h.rows(), Int(0));
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t c = piv[i];
    if (c == h.cols()) continue;
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), w[c].get_mpz_t(), h(i, c).get_mpz_t());
    if (sgn(r) != 0) return false;
    coeffs[i] = q;
    if (sgn(q) != 0)
      for (std::size_t j = c; j < h.cols(); ++j) w[j] -= q * h(i, j);
  }
  for (const auto& x : w)
    if (sgn(x) != 0) return false;
  return true;
}

bool hnf_contains(const IntMatrix& h, const ZVec& v) {
  ZVec c;
  return hnf_solve(h, v, c);
}

ZVec hnf_reduce(const IntMatrix& h, const ZVec& v) {
  assert(h.rows() == h.cols());
  ZVec w = v;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    assert(sgn(h(i, i)) > 0);
    Int q = floor_div(w[i], h(i, i));
    if (sgn(q) != 0)
      for (std::size_t j = i; j < h.cols(); ++j) w[j] -= q * h(i, j);
  }
  return w;
}

// ---------------------------------------------------------------------------
// LDL / LLL

LdlResult cholesky_ldl(const GramMatrix& g) {
  std::size_t n = g.dim();
  QMatrix l = QMatrix::identity(n);
  QVec d(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rat dj = g(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= l(j, k) * l(j, k) * d[k];
    if (sgn(dj) <= 0)
      fail(errc::not_positive_definite, "pivot " + std::to_string(j) + " not positive");
    d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rat v = g(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k) * d[k];
      l(i, j) = v / dj;
    }
  }
  return {std::move(l), std::move(d)};
}

namespace {

/* State for Gram-driven LLL: a is the current form w * g0 * w^T where w holds
 * the new basis rows in old coordinates. */
struct LllState {
  QMatrix a;
  IntMatrix w;
  QMatrix mu;  // unit lower triangular
  QVec b;      // squared GS lengths

  void refresh_gso() {
    GramMatrix g{a};
    LdlResult ldl = cholesky_ldl(g);
    mu = std::move(ldl.l);
    b = std::move(ldl.d);
  }
};

}  // namespace

IntMatrix lll_reduce_gram(const GramMatrix& g) {
  std::size_t n = g.dim();
  if (n == 0) return IntMatrix(0, 0);
  LllState st;
  st.a = g.matrix();
  st.w = IntMatrix::identity(n);

  // row i <- row i - q * row j on the quadratic form
  auto apply_sub = [&](std::size_t i, std::size_t j, const Int& q) {
    if (sgn(q) == 0) return;
    Rat qq(q);
    Rat aii = st.a(i, i) - 2 * qq * st.a(i, j) + qq * qq * st.a(j, j);
    for (std::size_t t = 0; t < n; ++t) {
      Rat v = st.a(i, t) - qq * st.a(j, t);
      st.a(i, t) = v;
      st.a(t, i) = v;
    }
    st.a(i, i) = aii;
    for (std::size_t t = 0; t < n; ++t) st.w(i, t) -= q * st.w(j, t);
  };
  auto apply_swap = [&](std::size_t i, std::size_t j) {
    for (std::size_t t = 0; t < n; ++t) std::swap(st.a(i, t), st.a(j, t));
    for (std::size_t t = 0; t < n; ++t) std::swap(st.a(t, i), st.a(t, j));
    for (std::size_t t = 0; t < n; ++t) std::swap(st.w(i, t), st.w(j, t));
  };

  st.refresh_gso();
  const Rat delta(3, 4);
  std::size_t k = 1;
  while (k < n) {
    // size-reduce row k
    for (std::size_t jj = k; jj-- > 0;) {
      Int q = round_half_even(st.mu(k, jj));
      if (sgn(q) != 0) {
        apply_sub(k, jj, q);
        st.refresh_gso();
      }
    }
    Rat lhs = st.b[k];
    Rat rhs = (delta - st.mu(k, k - 1) * st.mu(k, k - 1)) * st.b[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      apply_swap(k, k - 1);
      st.refresh_gso();
      k = k > 1 ? k - 1 : 1;
    }
  }
  return st.w.transposed();  // columns carry the new basis: (u^T g u) reduced
}

// ---------------------------------------------------------------------------
// Babai nearest plane

ZVec babai_nearest_rows(const IntMatrix& bmat, const QVec& t) {
  std::size_t n = bmat.rows();
  assert(bmat.cols() == t.size());
  if (n == 0) return {};
  // Gram of the rows
  QMatrix bq(bmat);
  QMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = dot(bq.row(i), bq.row(j));
  Rat d = det(gram);
  if (sgn(d) == 0) fail(errc::singular_basis, "babai basis is singular");
  IntMatrix u = lll_reduce_gram(GramMatrix{gram});
  // reduced rows r = u^T * bmat
  IntMatrix red = u.transposed() * bmat;
  QMatrix redq(red);
  // Gram-Schmidt of the reduced rows (rational vectors)
  std::vector<QVec> gs(n);
  QVec gs_norm(n);
  for (std::size_t i = 0; i < n; ++i) {
    gs[i] = redq.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      Rat mu = dot(redq.row(i), gs[j]) / gs_norm[j];
      for (std::size_t c = 0; c < gs[i].size(); ++c) gs[i][c] -= mu * gs[j][c];
    }
    gs_norm[i] = dot(gs[i], gs[i]);
  }
  QVec r = t;
  ZVec y(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Int c = round_half_even(dot(r, gs[ii]) / gs_norm[ii]);
    y[ii] = c;
    if (sgn(c) != 0) {
      Rat cc(c);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= cc * redq(ii, j);
    }
  }
  // lattice coords w.r.t. original rows: x = y·(u^T b) = (y·u^T)·b
  ZVec out(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out[j] += y[i] * u(j, i);
  return out;
}

ZVec babai_nearest(const IntMatrix& a, const QVec& t) {
  return babai_nearest_rows(a.transposed(), t);
}

// ---------------------------------------------------------------------------
// Fincke-Pohst enumeration

namespace {

struct EnumCtx {
  const QMatrix* l;
  const QVec* d;
  std::size_t n;
  Rat bound;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  ZVec x;
  std::vector<ZVec> out;

  // interval centre at level i: c_i = -sum_{j>i} mu_ji x_j
  void descend(std::size_t lvl, const Rat& remaining) {
    if (++nodes > budget) fail(errc::budget_exceeded, "enumeration node budget exhausted");
    std::size_t i = lvl;
    Rat centre = 0;
    for (std::size_t j = i + 1; j < n; ++j) centre -= (*l)(j, i) * Rat(x[j]);
    // |x_i - centre|^2 <= remaining / d_i
    Rat s = remaining / (*d)[i];
    Int rad = sqrt_ceil(s);
    Int lo = ceil_rat(centre - Rat(rad));
    Int hi = floor_rat(centre + Rat(rad));
    for (Int v = lo; v <= hi; ++v) {
      Rat diff = Rat(v) - centre;
      Rat cost = diff * diff * (*d)[i];
      if (cost > remaining) continue;
      x[i] = v;
      if (i == 0) {
        bool all_zero = true;
        for (const auto& c : x)
          if (sgn(c) != 0) {
            all_zero = false;
            break;
          }
        if (!all_zero) {
          // canonical sign: first nonzero coordinate positive
          ZVec cand = x;
          for (const auto& c : cand) {
            if (sgn(c) == 0) continue;
            if (sgn(c) < 0)
              for (auto& cc : cand) cc = -cc;
            break;
          }
          out.push_back(std::move(cand));
        }
      } else {
        descend(i - 1, remaining - cost);
      }
    }
    x[i] = 0;
  }
};

}  // namespace

namespace {
std::uint64_t g_node_budget = 10'000'000;
}

std::uint64_t default_node_budget() { return g_node_budget; }
void set_default_node_budget(std::uint64_t budget) { g_node_budget = budget; }

std::vector<ZVec> enumerate_short(const GramMatrix& g, const Rat& bound, std::uint64_t node_budget) {
  if (node_budget == 0) node_budget = g_node_budget;
  std::size_t n = g.dim();
  if (n == 0 || sgn(bound) < 0) return {};
  LdlResult ldl = cholesky_ldl(g);
  EnumCtx ctx;
  ctx.l = &ldl.l;
  ctx.d = &ldl.d;
  ctx.n = n;
  ctx.bound = bound;
  ctx.budget = node_budget;
  ctx.x.assign(n, Int(0));
  ctx.descend(n - 1, bound);
  std::sort(ctx.out.begin(), ctx.out.end());
  ctx.out.erase(std::unique(ctx.out.begin(), ctx.out.end()), ctx.out.end());
  return ctx.out;
}

}  // namespace gscm
