#include "gscm/symsieve.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <random>
#include <sstream>

namespace gscm {

TowerEmbedding::TowerEmbedding(OrderPtr o) : order_(std::move(o)) {
  auto mm = order_->cyclotomic_m();
  if (!mm) fail(errc::usage_error, "tower embedding needs a cyclotomic order");
  m_ = *mm;
  nega_ = (m_ % 4 == 0);
  mprime_ = nega_ ? m_ / 2 : m_;
  phi_ = cyclotomic_polynomial(m_);

  // P = X^{m/2}+1 or X^m - 1; idempotent e with e = 1 mod Phi_m, 0 mod P/Phi_m
  QVec pc(mprime_ + 1);
  pc[0] = nega_ ? 1 : -1;
  pc[mprime_] = 1;
  QPoly P{std::move(pc)};
  QPoly cof, rem;
  divmod(P, phi_, cof, rem);
  assert(rem.is_zero());
  QPoly e;
  if (cof.degree() == 0) {
    e = QPoly(QVec{1});
  } else {
    QPoly u, v;
    QPoly g = xgcd(phi_, cof, u, v);
    assert(g.degree() == 0);
    e = pmod(v * cof, P);
  }
  idempotent_.assign(mprime_, Rat(0));
  for (std::size_t i = 0; i < e.c.size(); ++i) idempotent_[i] = e.c[i];

  // canonical unit list; dedupe by action on the idempotent (the embedded 1)
  std::vector<QVec> seen;
  for (unsigned s = 0; s < mprime_; ++s)
    for (int neg = 0; neg <= 1; ++neg) {
      Unit u{neg == 1, s};
      QVec img = apply(u, idempotent_);
      bool dup = false;
      for (const auto& t : seen)
        if (t == img) {
          dup = true;
          break;
        }
      if (!dup) {
        seen.push_back(img);
        units_.push_back(u);
      }
    }
  std::stable_sort(units_.begin(), units_.end(), [](const Unit& a, const Unit& b) {
    return a.shift != b.shift ? a.shift < b.shift : (!a.negative && b.negative);
  });

  // scale: tr(x conj x) = scale * coeff_norm(embed x); verify on basis pairs
  QVec e1 = idempotent_;
  Rat cn = coeff_norm(e1);
  assert(sgn(cn) > 0);
  scale_ = trace(one(order_)) / cn;
  std::size_t n = order_->rank();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      OrderElement bi = basis_elem(order_, i), bj = basis_elem(order_, j);
      QVec ei = embed(bi), ej = embed(bj);
      Rat ip = 0;
      for (unsigned t = 0; t < mprime_; ++t) ip += ei[t] * ej[t];
      Rat lhs = trace(bi * conjugate(bj));
      if (lhs != scale_ * ip)
        fail(errc::usage_error, "tower embedding does not preserve the geometry");
    }
}

QVec TowerEmbedding::embed(const OrderElement& x) const {
  // x = sum x_i zeta^i -> sum x_i X^i * e mod P
  QVec poly(mprime_, Rat(0));
  // multiply the idempotent by the polynomial with coefficients x_i
  const QVec& c = x.coords();
  QVec out(mprime_, Rat(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (sgn(c[i]) == 0) continue;
    // out += c_i * (e shifted by i)
    for (unsigned t = 0; t < mprime_; ++t) {
      if (sgn(idempotent_[t]) == 0) continue;
      unsigned k = (t + static_cast<unsigned>(i)) % mprime_;
      bool wrap = ((t + i) / mprime_) % 2 == 1;
      Rat add = c[i] * idempotent_[t];
      if (nega_ && wrap) add = -add;
      out[k] += add;
    }
  }
  (void)poly;
  return out;
}

OrderElement TowerEmbedding::project(const QVec& v) const {
  // reduce modulo Phi_m and read coefficients
  QPoly p{QVec(v.begin(), v.end())};
  QPoly r = pmod(p, phi_);
  QVec c(order_->rank(), Rat(0));
  for (std::size_t i = 0; i < r.c.size(); ++i) c[i] = r.c[i];
  return elem(order_, std::move(c));
}

QVec TowerEmbedding::mul(const QVec& a, const QVec& b) const {
  QVec out(mprime_, Rat(0));
  for (unsigned i = 0; i < mprime_; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (unsigned j = 0; j < mprime_; ++j) {
      if (sgn(b[j]) == 0) continue;
      unsigned k = (i + j) % mprime_;
      bool wrap = (i + j) >= mprime_;
      Rat add = a[i] * b[j];
      if (nega_ && wrap) add = -add;
      out[k] += add;
    }
  }
  return out;
}

QVec TowerEmbedding::conj(const QVec& a) const {
  QVec out(mprime_, Rat(0));
  out[0] = a[0];
  for (unsigned i = 1; i < mprime_; ++i) {
    // X^-i = X^{m'-i} (cyclic) or -X^{m'-i} (negacyclic)
    Rat v = a[i];
    if (nega_) v = -v;
    out[mprime_ - i] += v;
  }
  return out;
}

QVec TowerEmbedding::apply(const Unit& u, const QVec& a) const {
  QVec out(mprime_, Rat(0));
  for (unsigned i = 0; i < mprime_; ++i) {
    if (sgn(a[i]) == 0) continue;
    unsigned k = (i + u.shift) % mprime_;
    bool wrap = (i + u.shift) >= mprime_;
    Rat v = a[i];
    if (nega_ && wrap) v = -v;
    if (u.negative) v = -v;
    out[k] += v;
  }
  return out;
}

OrderElement TowerEmbedding::unit_element(const Unit& u) const {
  return project(apply(u, idempotent_));
}

Rat TowerEmbedding::coeff_norm(const QVec& a) const {
  Rat s = 0;
  for (const auto& c : a) s += c * c;
  return s;
}

bool unit_orbit_norm_invariance_check(const OrderElement& x) {
  RootsOfUnity mu = roots_of_unity(x.order());
  Rat q = cm_norm_trace(x);
  for (const auto& w : mu.elements)
    if (cm_norm_trace(x * w) != q) return false;
  return true;
}

namespace {

struct ArgminPick {
  TowerEmbedding::Unit unit;
  Rat delta;  // 2 eps <x, y X^s>: ||x + u y||^2 = ||x||^2 + ||y||^2 + delta
};

/* ||x + (eps X^s) y||^2 = ||x||^2 + ||y||^2 + 2 eps <x, y X^s>, and
 * <x, y X^s> is the s-th coefficient of x * conj(y). */
ArgminPick sym_argmin_pick(const TowerEmbedding& t, const QVec& x, const QVec& y,
                           ArgminStats* stats) {
  QVec corr = t.mul(x, t.conj(y));
  if (stats) {
    stats->coeff_mults += static_cast<std::uint64_t>(t.mprime()) * t.mprime();
    stats->unit_evals += t.units().size();
  }
  const auto& units = t.units();
  assert(!units.empty());
  ArgminPick best{units[0], units[0].negative ? -2 * corr[units[0].shift] : 2 * corr[units[0].shift]};
  for (std::size_t i = 1; i < units.size(); ++i) {
    const auto& u = units[i];
    Rat val = u.negative ? -2 * corr[u.shift] : 2 * corr[u.shift];
    if (val < best.delta) best = {u, val};
  }
  return best;
}

}  // namespace

TowerEmbedding::Unit sym_argmin(const TowerEmbedding& t, const SymVector& x, const SymVector& y,
                                ArgminStats* stats) {
  return sym_argmin_pick(t, x.coeffs, y.coeffs, stats).unit;
}

OrderElement brute_argmin(const OrderPtr& o, const std::vector<OrderElement>& mu,
                          const OrderElement& x, const OrderElement& y) {
  assert(!mu.empty());
  const OrderElement* best = nullptr;
  Rat best_val;
  for (const auto& w : mu) {
    Rat v = cm_norm_trace(x + w * y);
    if (!best || v < best_val) {
      best = &w;
      best_val = v;
    }
  }
  return *best;
}

std::vector<SymVector> sample_directions(const TowerEmbedding& t, unsigned count,
                                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SymVector> dirs;
  dirs.reserve(count);
  for (unsigned i = 0; i < count; ++i) {
    QVec v(t.mprime());
    for (auto& c : v) {
      // integer-valued gaussian-like sample, scaled by 2^8
      long s = 0;
      for (int j = 0; j < 4; ++j) s += static_cast<long>(rng() % 513) - 256;
      c = Rat(s, 2);
      c.canonicalize();
    }
    dirs.push_back({std::move(v)});
  }
  return dirs;
}

namespace {

std::pair<unsigned, int> leading_coord(const QVec& v) {
  unsigned best = 0;
  bool first = true;
  Rat best_abs;
  bool tie = false;
  for (unsigned i = 0; i < v.size(); ++i) {
    Rat a = abs(v[i]);
    if (first || a > best_abs) {
      best = i;
      best_abs = a;
      first = false;
      tie = false;
    } else if (a == best_abs) {
      tie = true;
    }
  }
  if (first || sgn(best_abs) == 0 || tie) fail(errc::degenerate_tie, "tied or zero leading coordinate");
  return {best, sgn(v[best])};
}

}  // namespace

std::string sym_hash(const TowerEmbedding& t, const SymVector& x,
                     const std::vector<SymVector>& directions, unsigned concat) {
  if (directions.size() < concat) fail(errc::usage_error, "not enough directions");
  if (concat == 0) fail(errc::usage_error, "concat must be positive");
  QVec p0 = t.mul(directions[0].coeffs, x.coeffs);
  auto [idx, sign] = leading_coord(p0);
  // unique unit rotating the leading coordinate onto a positive X^0
  TowerEmbedding::Unit canon;
  bool found = false;
  for (const auto& u : t.units()) {
    QVec q = t.apply(u, p0);
    if (sgn(q[0]) > 0 && abs(q[0]) == abs(p0[idx])) {
      canon = u;
      found = true;
      break;
    }
  }
  if (!found) fail(errc::degenerate_tie, "no canonical rotation (unexpected)");
  (void)sign;
  QVec xc = t.apply(canon, x.coeffs);
  std::ostringstream out;
  out << "0+";
  for (unsigned j = 1; j < concat; ++j) {
    QVec pj = t.mul(directions[j].coeffs, xc);
    auto [i2, s2] = leading_coord(pj);
    out << '|' << i2 << (s2 > 0 ? '+' : '-');
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Gauss sieve

namespace {

struct SieveVec {
  OrderElement el;
  QVec emb;  // tower coefficients (empty in the fallback path)
  Rat norm;  // coefficient norm (tower) or trace norm (fallback)
};

}  // namespace

SieveResult gauss_sieve_sym(const FractionalIdeal& iid, const SieveConfig& cfg) {
  const OrderPtr& o = iid.order();
  std::size_t n = o->rank();

  // tower embedding when available; brute-force unit scan otherwise
  std::unique_ptr<TowerEmbedding> tower;
  if (o->cyclotomic_m()) tower = std::make_unique<TowerEmbedding>(o);
  std::vector<OrderElement> fallback_units;
  std::vector<TowerEmbedding::Unit> tower_units;
  if (tower) {
    if (cfg.use_symmetry) {
      tower_units = tower->units();
    } else {
      tower_units = {{false, 0}, {true, 0}};  // +1, -1
    }
  } else {
    if (cfg.use_symmetry)
      fallback_units = roots_of_unity(o).elements;
    else
      fallback_units = {one(o), -one(o)};
  }

  std::uint64_t ip_count = 0;

  auto make_vec = [&](const OrderElement& e) {
    SieveVec v;
    v.el = e;
    if (tower) {
      v.emb = tower->embed(e);
      v.norm = tower->coeff_norm(v.emb);
    } else {
      v.norm = cm_norm_trace(e);
    }
    return v;
  };

  // best unit u and resulting norm for v + u*w
  auto best_pair = [&](const SieveVec& v, const SieveVec& w) -> std::pair<OrderElement, Rat> {
    if (tower) {
      QVec corr = tower->mul(v.emb, tower->conj(w.emb));
      ip_count += static_cast<std::uint64_t>(tower->mprime()) * tower->mprime();
      const TowerEmbedding::Unit* best = nullptr;
      Rat bestd;
      for (const auto& u : tower_units) {
        Rat d = u.negative ? -2 * corr[u.shift] : 2 * corr[u.shift];
        if (!best || d < bestd) {
          best = &u;
          bestd = d;
        }
      }
      return {tower->unit_element(*best), v.norm + w.norm + bestd};
    }
    const OrderElement* bw = nullptr;
    Rat bval;
    for (const auto& u : fallback_units) {
      ip_count += n;
      Rat val = cm_norm_trace(v.el + u * w.el);
      if (!bw || val < bval) {
        bw = &u;
        bval = val;
      }
    }
    return {*bw, bval};
  };

  // LLL-reduce the ideal's Gram for a decent sampling basis
  std::vector<OrderElement> basis;
  {
    QMatrix g(n, n);
    std::vector<OrderElement> rows;
    for (std::size_t r = 0; r < n; ++r) rows.push_back(iid.basis_element(r));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        Rat v = trace(rows[a] * conjugate(rows[b]));
        g(a, b) = v;
        g(b, a) = v;
      }
    IntMatrix u = lll_reduce_gram(GramMatrix{g});
    for (std::size_t j = 0; j < n; ++j) {
      OrderElement e = zero(o);
      for (std::size_t i = 0; i < n; ++i)
        if (sgn(u(i, j)) != 0) e = e + Rat(u(i, j)) * rows[i];
      basis.push_back(e);
    }
  }

  std::mt19937_64 rng(cfg.seed);
  auto sample = [&]() {
    while (true) {
      OrderElement v = zero(o);
      for (std::size_t i = 0; i < n; ++i) {
        long c = static_cast<long>(rng() % 7) - 3;
        if (c != 0) v = v + Rat(c) * basis[i];
      }
      if (!v.is_zero()) return make_vec(v);
    }
  };

  std::vector<SieveVec> list;
  std::vector<SieveVec> stack;
  SieveResult res;
  res.best_norm = 0;
  std::uint64_t reductions = 0, collisions = 0;
  bool have_best = false;

  std::uint64_t iter = 0;
  for (; iter < cfg.budget; ++iter) {
    SieveVec v;
    if (stack.empty()) {
      v = sample();
    } else {
      v = stack.back();
      stack.pop_back();
    }

    // reduce v against the list until stable
    bool changed = true;
    while (changed && !v.el.is_zero()) {
      changed = false;
      for (const auto& entry : list) {
        auto [u, val] = best_pair(v, entry);
        if (val < v.norm) {
          v = make_vec(v.el + u * entry.el);
          ++reductions;
          changed = true;
          if (v.el.is_zero()) break;
        }
      }
    }
    if (v.el.is_zero()) {
      ++collisions;
      if (collisions > 32 + 4 * list.size()) break;
      continue;
    }

    // reduce list entries against v
    for (std::size_t idx = 0; idx < list.size();) {
      auto [u, val] = best_pair(list[idx], v);
      if (val < list[idx].norm) {
        OrderElement moved = list[idx].el + u * v.el;
        list.erase(list.begin() + static_cast<long>(idx));
        ++reductions;
        if (!moved.is_zero()) stack.push_back(make_vec(moved));
      } else {
        ++idx;
      }
    }

    Rat tracenorm = tower ? tower->scale() * v.norm : v.norm;
    list.push_back(v);
    if (!have_best || tracenorm < res.best_norm) {
      res.best_norm = tracenorm;
      res.shortest = v.el;
      have_best = true;
    }
    res.stats.push_back({iter, list.size(), res.best_norm, reductions, ip_count});
  }
  res.budget_exceeded = (iter >= cfg.budget);
  if (!have_best) fail(errc::budget_exceeded, "sieve found no nonzero vector");
  return res;
}

std::string sieve_stats_csv(const SieveResult& r) {
  std::ostringstream out;
  out << "iteration,list_size,best_norm,reductions,ip_count\n";
  for (const auto& row : r.stats)
    out << row.iteration << ',' << row.list_size << ',' << row.best_norm.get_str() << ','
        << row.reductions << ',' << row.ip_count << '\n';
  return out.str();
}

}  // namespace gscm
