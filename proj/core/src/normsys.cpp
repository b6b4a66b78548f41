#include "gscm/normsys.hpp"

#include <cmath>

namespace gscm {

void NormSystem::init_gram(QMatrix g) {
  gram_ = std::move(g);
  // certify positive-definiteness up front
  cholesky_ldl(GramMatrix{gram_});
  QMatrix inv = inverse(gram_);
  minv_max_ = 0;
  for (std::size_t j = 0; j < inv.rows(); ++j)
    if (inv(j, j) > minv_max_) minv_max_ = inv(j, j);
}

CMNorm::CMNorm(OrderPtr order) : NormSystem(std::move(order)) {
  init_gram(order_->cm_gram());
}

OrderElement CMNorm::norm(const OrderElement& x) const { return x * conjugate(x); }

double CMNorm::norm_coord_log2(double k) const {
  std::size_t n = order_->rank();
  const IntMatrix& v = order_->involution_matrix();
  Int vmax = 1;
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j)
      if (mpz_cmpabs(v(i, j).get_mpz_t(), vmax.get_mpz_t()) > 0) vmax = abs(v(i, j));
  double conj_k = k + std::log2(static_cast<double>(n)) + log2_abs(vmax);
  return k + conj_k + 2 * std::log2(static_cast<double>(n)) + log2_abs(order_->table_max());
}

TrivialNorm::TrivialNorm(OrderPtr order, QMatrix form) : NormSystem(std::move(order)) {
  if (form.rows() != order_->rank() || form.cols() != order_->rank())
    fail(errc::usage_error, "trace form has wrong dimensions");
  // the paper's normalisation: the polarization pairing must be integral on O
  for (std::size_t i = 0; i < form.rows(); ++i)
    for (std::size_t j = 0; j < form.cols(); ++j) {
      Rat pair = (form(i, j) + form(j, i)) / 2;
      if (pair.get_den() != 1)
        fail(errc::usage_error, "polarization pairing is not integral on the order");
    }
  init_gram(std::move(form));
}

Rat TrivialNorm::ntrace(const OrderElement& r) const {
  return dot(r.coords(), mat_vec(gram_, r.coords()));
}

}  // namespace gscm
