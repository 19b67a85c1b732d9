#include "defcoh/ncpoly.hpp"

#include <algorithm>
#include <sstream>

#include "defcoh/errors.hpp"
#include "defcoh/linalg.hpp"

namespace defcoh {

AlgebraSpec AlgebraSpec::make(const Scalar& q, const Scalar& hbar) {
  // Put q and hbar into one tower.
  Scalar qq = q, hh = hbar;
  Scalar probe = qq + hh;  // harmonization check; throws if incompatible
  AlgebraSpec a;
  a.field = probe.field();
  a.q = embed(qq, a.field);
  a.hbar = embed(hh, a.field);
  if (a.q.is_zero()) throw InvalidParameters("q must be invertible");
  return a;
}

AlgebraSpec AlgebraSpec::poly_ring() {
  return make(Scalar::rational(1), Scalar::rational(0));
}

AlgebraSpec AlgebraSpec::weyl1() { return make(Scalar::rational(1), Scalar::rational(1)); }

AlgebraSpec AlgebraSpec::weyl_hbar() {
  FieldDesc fd = FieldDesc::rationals().with_h_ratfunc();
  return make(Scalar::one(fd), Scalar::hbar(fd));
}

AlgebraSpec AlgebraSpec::quantum_plane(const Scalar& q) {
  return make(q, Scalar::zero(q.field()));
}

AlgebraSpec AlgebraSpec::qweyl(const Scalar& q) { return make(q, Scalar::one(q.field())); }

AlgebraSpec AlgebraSpec::qweyl_hbar(const Scalar& q) {
  FieldDesc fd = q.field().with_h_ratfunc();
  return make(embed(q, fd), Scalar::hbar(fd));
}

unsigned AlgebraSpec::root_of_unity_order() const {
  Scalar p = q;
  for (unsigned k = 1; k <= 24; ++k) {
    if (p.is_one()) return k;
    p = p * q;
  }
  return 0;
}

bool AlgebraSpec::operator==(const AlgebraSpec& o) const {
  return field == o.field && q == o.q && hbar == o.hbar;
}

std::string AlgebraSpec::str() const {
  return "A(q=" + q.str() + ", hbar=" + hbar.str() + ") over " + field.str();
}

NCPoly NCPoly::monomial(const AlgebraSpec& alg, int i, int j) {
  return monomial(alg, i, j, Scalar::one(alg.field));
}

NCPoly NCPoly::monomial(const AlgebraSpec& alg, int i, int j, const Scalar& c) {
  NCPoly p(alg);
  p.add_term(i, j, c);
  return p;
}

NCPoly NCPoly::unit(const AlgebraSpec& alg) { return monomial(alg, 0, 0); }
NCPoly NCPoly::gen_x(const AlgebraSpec& alg) { return monomial(alg, 1, 0); }
NCPoly NCPoly::gen_y(const AlgebraSpec& alg) { return monomial(alg, 0, 1); }

NCPoly NCPoly::from_word(const AlgebraSpec& alg, const Scalar& c, const std::string& word) {
  NCPoly p = monomial(alg, 0, 0, c);
  for (char ch : word) {
    switch (ch) {
      case 'x': p = p * gen_x(alg); break;
      case 'y': p = p * gen_y(alg); break;
      default: throw InvalidParameters(std::string("bad letter '") + ch + "' in word");
    }
  }
  return p;
}

NCPoly NCPoly::from_comm(const AlgebraSpec& alg, const CommPoly& p) {
  NCPoly r(alg);
  for (const auto& [k, v] : p.terms()) r.add_term(k.first, k.second, embed(v, alg.field));
  return r;
}

Scalar NCPoly::coeff(int i, int j) const {
  auto it = c_.find({i, j});
  return it == c_.end() ? Scalar::zero(alg_.field) : it->second;
}

void NCPoly::add_term(int i, int j, const Scalar& c) {
  if (i < 0 || j < 0) throw InvalidParameters("negative exponent");
  if (c.is_zero()) return;
  auto [it, fresh] = c_.try_emplace({i, j}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

NCPoly NCPoly::operator+(const NCPoly& o) const {
  if (!(alg_ == o.alg_)) throw AlgebraMismatch("add");
  NCPoly r = *this;
  for (const auto& [k, v] : o.c_) r.add_term(k.first, k.second, v);
  return r;
}

NCPoly NCPoly::operator-(const NCPoly& o) const {
  if (!(alg_ == o.alg_)) throw AlgebraMismatch("sub");
  NCPoly r = *this;
  for (const auto& [k, v] : o.c_) r.add_term(k.first, k.second, -v);
  return r;
}

NCPoly NCPoly::operator-() const {
  NCPoly r(alg_);
  for (const auto& [k, v] : c_) r.c_[k] = -v;
  return r;
}

NCPoly NCPoly::scaled(const Scalar& c) const {
  NCPoly r(alg_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : c_) r.add_term(k.first, k.second, v * c);
  return r;
}

namespace {

// Gaussian binomials [m t]_r by the Pascal recursion
// [m t] = [m-1 t-1] + r^t [m-1 t]; division-free, valid at roots of unity.
struct QBinomTable {
  std::vector<std::vector<Scalar>> b;
  std::vector<Scalar> rpow, qfact;  // r^k and k_r! = prod of i_r

  QBinomTable(const Scalar& r, int max_n) {
    const FieldDesc fd = r.field();
    const Scalar one = Scalar::one(fd);
    rpow.resize(static_cast<size_t>(max_n) * max_n + 2, one);
    for (size_t k = 1; k < rpow.size(); ++k) rpow[k] = rpow[k - 1] * r;
    b.assign(max_n + 1, {});
    for (int m = 0; m <= max_n; ++m) {
      b[m].assign(m + 1, one);
      for (int t = 1; t < m; ++t) b[m][t] = b[m - 1][t - 1] + rpow[t] * b[m - 1][t];
    }
    qfact.resize(max_n + 1, one);
    Scalar qi = Scalar::zero(fd);
    for (int i = 1; i <= max_n; ++i) {
      qi = qi + rpow[i - 1];  // i_r
      qfact[i] = qfact[i - 1] * qi;
    }
  }

  const Scalar& binom(int m, int t) const { return b[m][t]; }
};

}  // namespace

NCPoly NCPoly::operator*(const NCPoly& o) const {
  if (!(alg_ == o.alg_)) throw AlgebraMismatch("mul");
  NCPoly res(alg_);
  if (c_.empty() || o.c_.empty()) return res;

  int maxm = 0, maxn = 0;
  for (const auto& [k, v] : c_) maxm = std::max(maxm, k.second);
  for (const auto& [k, v] : o.c_) maxn = std::max(maxn, k.first);
  const Scalar r = alg_.r();
  QBinomTable tab(r, std::max(maxm, maxn));
  const Scalar s = -(r * alg_.hbar);  // yx = r.xy + s

  for (const auto& [ka, va] : c_) {
    for (const auto& [kb, vb] : o.c_) {
      const int i = ka.first, m = ka.second, n = kb.first, j = kb.second;
      const Scalar cc = va * vb;
      // y^m x^n = sum_t [m t]_r [n t]_r (t_r)! r^{(m-t)(n-t)} s^t x^{n-t} y^{m-t}
      Scalar spow = Scalar::one(alg_.field);
      for (int t = 0; t <= std::min(m, n); ++t) {
        Scalar coeff = tab.binom(m, t) * tab.binom(n, t) * tab.qfact[t] *
                       tab.rpow[(m - t) * (n - t)] * spow;
        res.add_term(i + (n - t), (m - t) + j, cc * coeff);
        if (t < std::min(m, n)) spow = spow * s;
      }
    }
  }
  return res;
}

bool NCPoly::operator==(const NCPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  auto it = o.c_.begin();
  for (const auto& [k, v] : c_) {
    if (it->first != k || !(it->second == v)) return false;
    ++it;
  }
  return true;
}

CommPoly NCPoly::to_comm() const {
  CommPoly r(alg_.field);
  for (const auto& [k, v] : c_) r.add_term(k.first, k.second, v);
  return r;
}

std::string NCPoly::str() const { return to_comm().str(); }

NCPoly commutator(const NCPoly& a, const NCPoly& b) { return a * b - b * a; }

NCPoly Derivation::relation_defect() const {
  const NCPoly x = NCPoly::gen_x(alg), y = NCPoly::gen_y(alg);
  return im_x * y + x * im_y - (im_y * x + y * im_x).scaled(alg.q);
}

bool Derivation::is_compatible() const { return relation_defect().is_zero(); }

NCPoly Derivation::apply(const NCPoly& p) const {
  const NCPoly x = NCPoly::gen_x(alg), y = NCPoly::gen_y(alg);
  int maxi = 0, maxj = 0;
  for (const auto& [k, v] : p.terms()) {
    maxi = std::max(maxi, k.first);
    maxj = std::max(maxj, k.second);
  }
  // D(x^i), D(y^j) built incrementally
  std::vector<NCPoly> dxp(maxi + 1, NCPoly(alg)), dyp(maxj + 1, NCPoly(alg));
  std::vector<NCPoly> xp(maxi + 1, NCPoly::unit(alg)), yp(maxj + 1, NCPoly::unit(alg));
  for (int i = 1; i <= maxi; ++i) {
    xp[i] = xp[i - 1] * x;
    dxp[i] = dxp[i - 1] * x + xp[i - 1] * im_x;
  }
  for (int j = 1; j <= maxj; ++j) {
    yp[j] = yp[j - 1] * y;
    dyp[j] = dyp[j - 1] * y + yp[j - 1] * im_y;
  }
  NCPoly out(alg);
  for (const auto& [k, v] : p.terms()) {
    NCPoly t = dxp[k.first] * yp[k.second] + xp[k.first] * dyp[k.second];
    out = out + t.scaled(v);
  }
  return out;
}

std::string Derivation::str() const {
  return "D(x) = " + im_x.str() + ", D(y) = " + im_y.str();
}

Derivation inner_derivation(const NCPoly& c) {
  const AlgebraSpec& alg = c.algebra();
  return Derivation(alg, commutator(c, NCPoly::gen_x(alg)), commutator(c, NCPoly::gen_y(alg)));
}

namespace {

// graded-lex: total degree ascending, then x-exponent descending
bool grlex_less(const NCPoly::Key& a, const NCPoly::Key& b) {
  const int ta = a.first + a.second, tb = b.first + b.second;
  if (ta != tb) return ta < tb;
  return a.first > b.first;
}

std::vector<NCPoly> vectors_to_polys(const AlgebraSpec& alg,
                                     const std::vector<NCPoly::Key>& candidates,
                                     const std::vector<std::vector<Scalar>>& vecs) {
  std::vector<NCPoly> out;
  for (const auto& v : vecs) {
    NCPoly p(alg);
    for (size_t c = 0; c < candidates.size(); ++c)
      p.add_term(candidates[c].first, candidates[c].second, v[c]);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end(), [](const NCPoly& a, const NCPoly& b) {
    auto lead = [](const NCPoly& p) {
      NCPoly::Key best = p.terms().begin()->first;
      for (const auto& [k, c] : p.terms())
        if (grlex_less(k, best)) best = k;
      return best;
    };
    return grlex_less(lead(a), lead(b));
  });
  return out;
}

}  // namespace

std::vector<NCPoly> center_basis(const AlgebraSpec& alg, int dx_bound, int dy_bound) {
  if (dx_bound < 0 || dy_bound < 0) throw InvalidParameters("negative degree bound");
  std::vector<NCPoly::Key> candidates;
  for (int i = 0; i <= dx_bound; ++i)
    for (int j = 0; j <= dy_bound; ++j) candidates.push_back({i, j});
  std::sort(candidates.begin(), candidates.end(), grlex_less);

  const NCPoly x = NCPoly::gen_x(alg), y = NCPoly::gen_y(alg);
  // rows: (which-generator, target monomial) -> row index
  std::map<std::pair<int, NCPoly::Key>, size_t> rows;
  std::vector<std::map<std::pair<int, NCPoly::Key>, Scalar>> cols(candidates.size());
  for (size_t c = 0; c < candidates.size(); ++c) {
    NCPoly mono = NCPoly::monomial(alg, candidates[c].first, candidates[c].second);
    const NCPoly ex = commutator(mono, x), ey = commutator(mono, y);
    for (const auto& [k, v] : ex.terms()) {
      rows.try_emplace({0, k}, 0);
      cols[c][{0, k}] = v;
    }
    for (const auto& [k, v] : ey.terms()) {
      rows.try_emplace({1, k}, 0);
      cols[c][{1, k}] = v;
    }
  }
  size_t idx = 0;
  for (auto& [k, v] : rows) v = idx++;
  linalg::Matrix m(rows.size(), candidates.size(), alg.field);
  for (size_t c = 0; c < candidates.size(); ++c)
    for (const auto& [k, v] : cols[c]) m.at(rows[k], c) = v;
  return vectors_to_polys(alg, candidates, linalg::nullspace(m));
}

std::vector<Derivation> derivation_basis(const AlgebraSpec& alg, int u, int v, int exp_bound) {
  if (u < -1 || v < -1) throw InvalidParameters("derivation bidegree below (-1,-1)");
  if (exp_bound < 0) {
    const unsigned N = alg.root_of_unity_order();
    exp_bound = std::abs(u) + std::abs(v) + (N > 1 ? 2 * static_cast<int>(N) : 4);
  }
  std::vector<NCPoly::Key> mp, mq;
  const int tmax = alg.graded() ? 0 : exp_bound;
  for (int t = 0; t <= tmax; ++t) {
    if (u + 1 - t >= 0 && v - t >= 0 && u + 1 - t <= exp_bound && v - t <= exp_bound)
      mp.push_back({u + 1 - t, v - t});
    if (u - t >= 0 && v + 1 - t >= 0 && u - t <= exp_bound && v + 1 - t <= exp_bound)
      mq.push_back({u - t, v + 1 - t});
  }
  const size_t ncols = mp.size() + mq.size();
  if (ncols == 0) return {};

  const NCPoly x = NCPoly::gen_x(alg), y = NCPoly::gen_y(alg);
  std::map<NCPoly::Key, size_t> rows;
  std::vector<std::map<NCPoly::Key, Scalar>> cols(ncols);
  auto record = [&](size_t c, const NCPoly& t) {
    for (const auto& [k, val] : t.terms()) {
      rows.try_emplace(k, 0);
      cols[c][k] = val;
    }
  };
  for (size_t c = 0; c < mp.size(); ++c) {
    NCPoly e = NCPoly::monomial(alg, mp[c].first, mp[c].second);
    record(c, e * y - (y * e).scaled(alg.q));
  }
  for (size_t c = 0; c < mq.size(); ++c) {
    NCPoly e = NCPoly::monomial(alg, mq[c].first, mq[c].second);
    record(mp.size() + c, x * e - (e * x).scaled(alg.q));
  }
  size_t idx = 0;
  for (auto& [k, r] : rows) r = idx++;
  linalg::Matrix m(rows.size(), ncols, alg.field);
  for (size_t c = 0; c < ncols; ++c)
    for (const auto& [k, val] : cols[c]) m.at(rows[k], c) = val;

  std::vector<Derivation> out;
  for (const auto& vec : linalg::nullspace(m)) {
    NCPoly p(alg), qq(alg);
    for (size_t c = 0; c < mp.size(); ++c) p.add_term(mp[c].first, mp[c].second, vec[c]);
    for (size_t c = 0; c < mq.size(); ++c)
      qq.add_term(mq[c].first, mq[c].second, vec[mp.size() + c]);
    out.emplace_back(alg, std::move(p), std::move(qq));
  }
  return out;
}

bool annihilates_center(const Derivation& d, int dx_bound, int dy_bound) {
  for (const NCPoly& c : center_basis(d.alg, dx_bound, dy_bound))
    if (!d.apply(c).is_zero()) return false;
  return true;
}

}  // namespace defcoh
