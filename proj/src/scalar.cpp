#include "defcoh/scalar.hpp"

#include <algorithm>
#include <sstream>

#include "defcoh/errors.hpp"

namespace defcoh {

namespace {

BaseScalar b_zero(const FieldDesc& fd) {
  BaseScalar b;
  b.kind = fd.base;
  b.n = fd.cyclo_n;
  return b;
}

BaseScalar b_from_rat(const FieldDesc& fd, const mpq_class& v) {
  BaseScalar b = b_zero(fd);
  switch (fd.base) {
    case BaseKind::Rat: b.rat = v; break;
    case BaseKind::RatFuncQ:
      b.num = qp_const(v);
      b.den = qp_const(1);
      break;
    case BaseKind::Cyclo: b.cyc = qp_const(v); break;
  }
  return b;
}

BaseScalar b_one(const FieldDesc& fd) { return b_from_rat(fd, 1); }

bool b_is_zero(const BaseScalar& a) {
  switch (a.kind) {
    case BaseKind::Rat: return a.rat == 0;
    case BaseKind::RatFuncQ: return a.num.empty();
    case BaseKind::Cyclo: return a.cyc.empty();
  }
  return true;
}

bool b_eq(const BaseScalar& a, const BaseScalar& b) {
  if (a.kind != b.kind || a.n != b.n) return false;
  switch (a.kind) {
    case BaseKind::Rat: return a.rat == b.rat;
    case BaseKind::RatFuncQ: return qp_eq(a.num, b.num) && qp_eq(a.den, b.den);
    case BaseKind::Cyclo: return qp_eq(a.cyc, b.cyc);
  }
  return false;
}

QVec cyc_reduce(const QVec& p, unsigned n) {
  if (static_cast<unsigned>(qp_deg(p)) < cyclotomic_degree(n)) return p;
  QVec rem;
  qp_divmod(p, cyclotomic_poly(n), rem);
  return rem;
}

// den monic and coprime to num.
void rf_reduce(QVec& num, QVec& den) {
  if (den.empty()) throw DivisionByZero("rational function with zero denominator");
  if (num.empty()) {
    den = qp_const(1);
    return;
  }
  QVec g = qp_gcd(num, den);
  if (qp_deg(g) > 0) {
    num = qp_div_exact(num, g);
    den = qp_div_exact(den, g);
  }
  const mpq_class lead = den.back();
  if (lead != 1) {
    for (auto& c : den) c /= lead;
    for (auto& c : num) c /= lead;
  }
}

BaseScalar b_add(const BaseScalar& a, const BaseScalar& b) {
  BaseScalar r = a;
  switch (a.kind) {
    case BaseKind::Rat: r.rat = a.rat + b.rat; break;
    case BaseKind::RatFuncQ: {
      r.num = qp_add(qp_mul(a.num, b.den), qp_mul(b.num, a.den));
      r.den = qp_mul(a.den, b.den);
      rf_reduce(r.num, r.den);
      break;
    }
    case BaseKind::Cyclo: r.cyc = qp_add(a.cyc, b.cyc); break;
  }
  return r;
}

BaseScalar b_neg(const BaseScalar& a) {
  BaseScalar r = a;
  switch (a.kind) {
    case BaseKind::Rat: r.rat = -a.rat; break;
    case BaseKind::RatFuncQ: r.num = qp_neg(a.num); break;
    case BaseKind::Cyclo: r.cyc = qp_neg(a.cyc); break;
  }
  return r;
}

BaseScalar b_sub(const BaseScalar& a, const BaseScalar& b) { return b_add(a, b_neg(b)); }

BaseScalar b_mul(const BaseScalar& a, const BaseScalar& b) {
  BaseScalar r = a;
  switch (a.kind) {
    case BaseKind::Rat: r.rat = a.rat * b.rat; break;
    case BaseKind::RatFuncQ: {
      r.num = qp_mul(a.num, b.num);
      r.den = qp_mul(a.den, b.den);
      rf_reduce(r.num, r.den);
      break;
    }
    case BaseKind::Cyclo: r.cyc = cyc_reduce(qp_mul(a.cyc, b.cyc), a.n); break;
  }
  return r;
}

// Extended Euclid in Q[x]: returns g (monic) and s with s*a = g mod m.
QVec cyc_inverse(const QVec& a, unsigned n) {
  const QVec& m = cyclotomic_poly(n);
  QVec r0 = m, r1 = a, s0 = {}, s1 = qp_const(1);
  while (!r1.empty()) {
    QVec rem;
    QVec q = qp_divmod(r0, r1, rem);
    QVec s2 = qp_sub(s0, qp_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 = gcd(m, a); invertibility requires deg r0 == 0
  if (qp_deg(r0) != 0) throw DivisionByZero("non-invertible cyclotomic element");
  return cyc_reduce(qp_scale(s0, mpq_class(1) / r0[0]), n);
}

BaseScalar b_inv(const BaseScalar& a) {
  if (b_is_zero(a)) throw DivisionByZero();
  BaseScalar r = a;
  switch (a.kind) {
    case BaseKind::Rat: r.rat = 1 / a.rat; break;
    case BaseKind::RatFuncQ: {
      r.num = a.den;
      r.den = a.num;
      rf_reduce(r.num, r.den);
      break;
    }
    case BaseKind::Cyclo: r.cyc = cyc_inverse(a.cyc, a.n); break;
  }
  return r;
}

BaseScalar b_div(const BaseScalar& a, const BaseScalar& b) { return b_mul(a, b_inv(b)); }

// --- dense polynomials in h with BaseScalar coefficients ---

using BVec = std::vector<BaseScalar>;

void bp_trim(BVec& p) {
  while (!p.empty() && b_is_zero(p.back())) p.pop_back();
}

bool bp_is_zero(const BVec& p) { return p.empty(); }

BVec bp_add(const BVec& a, const BVec& b, const FieldDesc& fd) {
  BVec r(std::max(a.size(), b.size()), b_zero(fd));
  for (size_t i = 0; i < a.size(); ++i) r[i] = b_add(r[i], a[i]);
  for (size_t i = 0; i < b.size(); ++i) r[i] = b_add(r[i], b[i]);
  bp_trim(r);
  return r;
}

BVec bp_neg(const BVec& a) {
  BVec r(a);
  for (auto& c : r) c = b_neg(c);
  return r;
}

BVec bp_sub(const BVec& a, const BVec& b, const FieldDesc& fd) { return bp_add(a, bp_neg(b), fd); }

BVec bp_mul(const BVec& a, const BVec& b, const FieldDesc& fd) {
  if (a.empty() || b.empty()) return {};
  BVec r(a.size() + b.size() - 1, b_zero(fd));
  for (size_t i = 0; i < a.size(); ++i) {
    if (b_is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = b_add(r[i + j], b_mul(a[i], b[j]));
  }
  bp_trim(r);
  return r;
}

BVec bp_divmod(const BVec& a, const BVec& b, BVec& rem, const FieldDesc& fd) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  rem = a;
  if (a.size() < b.size()) return {};
  BVec quot(a.size() - b.size() + 1, b_zero(fd));
  const BaseScalar lead_inv = b_inv(b.back());
  for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    if (b_is_zero(rem[i])) continue;
    BaseScalar f = b_mul(rem[i], lead_inv);
    quot[i - (b.size() - 1)] = f;
    for (size_t j = 0; j < b.size(); ++j)
      rem[i - (b.size() - 1) + j] = b_sub(rem[i - (b.size() - 1) + j], b_mul(f, b[j]));
  }
  bp_trim(rem);
  bp_trim(quot);
  return quot;
}

BVec bp_gcd(BVec a, BVec b, const FieldDesc& fd) {
  while (!b.empty()) {
    BVec rem;
    bp_divmod(a, b, rem, fd);
    a = std::move(b);
    b = std::move(rem);
  }
  if (!a.empty()) {
    const BaseScalar li = b_inv(a.back());
    for (auto& c : a) c = b_mul(c, li);
  }
  return a;
}

void brf_reduce(BVec& num, BVec& den, const FieldDesc& fd) {
  if (den.empty()) throw DivisionByZero("rational function with zero denominator");
  if (num.empty()) {
    den = {b_one(fd)};
    return;
  }
  BVec g = bp_gcd(num, den, fd);
  if (g.size() > 1) {
    BVec rem;
    num = bp_divmod(num, g, rem, fd);
    den = bp_divmod(den, g, rem, fd);
  }
  if (!b_eq(den.back(), b_one(fd))) {
    const BaseScalar li = b_inv(den.back());
    for (auto& c : den) c = b_mul(c, li);
    for (auto& c : num) c = b_mul(c, li);
  }
}

std::string b_render(const BaseScalar& a);

bool b_composite(const BaseScalar& a) {
  switch (a.kind) {
    case BaseKind::Rat: return sgn(a.rat) < 0;
    case BaseKind::RatFuncQ:
      return qp_deg(a.den) > 0 || qp_deg(a.num) > 0 ||
             (qp_deg(a.num) == 0 && sgn(a.num[0]) < 0);
    case BaseKind::Cyclo: return true;
  }
  return false;
}

std::string rat_str(const mpq_class& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string qvec_render(const QVec& p, const std::string& var) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = qp_deg(p); d >= 0; --d) {
    const mpq_class& c = p[d];
    if (c == 0) continue;
    mpq_class a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    if (d == 0) {
      os << rat_str(a);
    } else {
      if (a != 1) os << rat_str(a) << "*";
      os << var;
      if (d > 1) os << "^" << d;
    }
  }
  return os.str();
}

std::string b_render(const BaseScalar& a) {
  switch (a.kind) {
    case BaseKind::Rat: return rat_str(a.rat);
    case BaseKind::RatFuncQ: {
      if (qp_deg(a.den) == 0) return qvec_render(a.num, "q");
      return "(" + qvec_render(a.num, "q") + ")/(" + qvec_render(a.den, "q") + ")";
    }
    case BaseKind::Cyclo:
      return "zeta_" + std::to_string(a.n) + "(" + qvec_render(a.cyc, "z") + ")";
  }
  return "?";
}

}  // namespace

std::string FieldDesc::str() const {
  std::string s;
  switch (base) {
    case BaseKind::Rat: s = "Q"; break;
    case BaseKind::RatFuncQ: s = "Q(q)"; break;
    case BaseKind::Cyclo: s = "Q(zeta_" + std::to_string(cyclo_n) + ")"; break;
  }
  switch (hext) {
    case HExt::None: break;
    case HExt::RatFunc: s += "(h)"; break;
    case HExt::Series: s += "[h]/(h^" + std::to_string(series_order + 1) + ")"; break;
  }
  return s;
}

Scalar::Scalar() : fd_(FieldDesc::rationals()) {
  num_ = {b_zero(fd_)};
  den_ = {b_one(fd_)};
}

Scalar Scalar::zero(const FieldDesc& fd) {
  Scalar s;
  s.fd_ = fd;
  switch (fd.hext) {
    case HExt::None: s.num_ = {b_zero(fd)}; break;
    case HExt::Series: s.num_.assign(fd.series_order + 1, b_zero(fd)); break;
    case HExt::RatFunc: s.num_.clear(); break;
  }
  s.den_ = {b_one(fd)};
  return s;
}

Scalar Scalar::from_rat(const mpq_class& v, const FieldDesc& fd) {
  Scalar s = zero(fd);
  if (v == 0) return s;
  switch (fd.hext) {
    case HExt::None: s.num_[0] = b_from_rat(fd, v); break;
    case HExt::Series: s.num_[0] = b_from_rat(fd, v); break;
    case HExt::RatFunc: s.num_ = {b_from_rat(fd, v)}; break;
  }
  return s;
}

Scalar Scalar::one(const FieldDesc& fd) { return from_rat(1, fd); }
Scalar Scalar::from_int(long v, const FieldDesc& fd) { return from_rat(mpq_class(v), fd); }

Scalar Scalar::rational(long num, long den) { return from_rat(make_rat(num, den)); }

Scalar Scalar::q_gen() {
  Scalar s = zero(FieldDesc::rat_func_q());
  s.num_[0].num = qp_monomial(1);
  s.num_[0].den = qp_const(1);
  return s;
}

Scalar Scalar::zeta(unsigned n) {
  Scalar s = zero(FieldDesc::cyclotomic(n));
  s.num_[0].cyc = cyc_reduce(qp_monomial(1), n);
  return s;
}

Scalar Scalar::hbar(const FieldDesc& fd) {
  if (fd.hext == HExt::None) throw NoEmbedding("field has no h extension");
  Scalar s = zero(fd);
  if (fd.hext == HExt::Series) {
    if (fd.series_order < 1) throw InvalidParameters("series order must be >= 1 to hold h");
    s.num_[1] = b_one(fd);
  } else {
    s.num_ = {b_zero(fd), b_one(fd)};
  }
  return s;
}

bool Scalar::is_zero() const {
  for (const auto& c : num_)
    if (!b_is_zero(c)) return false;
  return true;
}

bool Scalar::is_one() const { return *this == one(fd_); }

const BaseScalar& Scalar::base_value() const {
  if (fd_.hext != HExt::None) throw InvalidParameters("base_value on h-extended scalar");
  return num_[0];
}

namespace {

// Promotes a base-field value through canonical maps: Rat into anything,
// matching base into an h-extension, series truncation to a lower order.
bool try_promote(const Scalar& a, const FieldDesc& target, Scalar& out) {
  const FieldDesc& fa = a.field();
  if (fa == target) {
    out = a;
    return true;
  }
  if (fa.same_base(target)) {
    if (fa.hext == HExt::None) {
      out = embed(a, target);
      return true;
    }
    if (fa.hext == HExt::Series && target.hext == HExt::Series &&
        target.series_order < fa.series_order) {
      out = a.truncate_series(target.series_order);
      return true;
    }
    return false;
  }
  if (fa.base == BaseKind::Rat && fa.hext == HExt::None) {
    out = embed(a, target);
    return true;
  }
  return false;
}

void harmonize(Scalar& a, Scalar& b) {
  if (a.field() == b.field()) return;
  Scalar tmp;
  // Series orders mix by truncating to the shorter one.
  if (a.field().same_base(b.field()) && a.field().hext == HExt::Series &&
      b.field().hext == HExt::Series) {
    unsigned k = std::min(a.field().series_order, b.field().series_order);
    a = a.truncate_series(k);
    b = b.truncate_series(k);
    return;
  }
  if (try_promote(a, b.field(), tmp)) {
    a = tmp;
    return;
  }
  if (try_promote(b, a.field(), tmp)) {
    b = tmp;
    return;
  }
  throw IncompatibleFields(a.field().str() + " vs " + b.field().str());
}

}  // namespace

struct ScalarOps {
  // Installs already-canonical parts without re-reduction.
  static Scalar make_trusted(const FieldDesc& fd, BVec num, BVec den) {
    Scalar s = Scalar::zero(fd);
    if (fd.hext == HExt::Series) num.resize(fd.series_order + 1, b_zero(fd));
    if (fd.hext == HExt::RatFunc && num.empty()) den = {b_one(fd)};
    s.num_ = std::move(num);
    if (fd.hext == HExt::RatFunc) s.den_ = std::move(den);
    return s;
  }

  static Scalar make(const FieldDesc& fd, BVec num, BVec den) {
    Scalar s = Scalar::zero(fd);
    switch (fd.hext) {
      case HExt::None:
        s.num_ = {num.empty() ? b_zero(fd) : num[0]};
        s.den_ = {b_one(fd)};
        break;
      case HExt::Series: {
        num.resize(fd.series_order + 1, b_zero(fd));
        s.num_ = std::move(num);
        s.den_ = {b_one(fd)};
        break;
      }
      case HExt::RatFunc: {
        brf_reduce(num, den, fd);
        s.num_ = std::move(num);
        s.den_ = std::move(den);
        break;
      }
    }
    return s;
  }

  static const BVec& num(const Scalar& s) { return s.num_; }
  static const BVec& den(const Scalar& s) { return s.den_; }

  static Scalar add(const Scalar& a, const Scalar& b) {
    const FieldDesc& fd = a.fd_;
    switch (fd.hext) {
      case HExt::None:
        return make(fd, {b_add(a.num_[0], b.num_[0])}, {});
      case HExt::Series: {
        BVec r(fd.series_order + 1, b_zero(fd));
        for (size_t i = 0; i < r.size(); ++i) r[i] = b_add(a.num_[i], b.num_[i]);
        return make(fd, std::move(r), {});
      }
      case HExt::RatFunc: {
        BVec n = bp_add(bp_mul(a.num_, b.den_, fd), bp_mul(b.num_, a.den_, fd), fd);
        BVec d = bp_mul(a.den_, b.den_, fd);
        return make(fd, std::move(n), std::move(d));
      }
    }
    return a;
  }

  static Scalar neg(const Scalar& a) {
    Scalar r = a;
    for (auto& c : r.num_) c = b_neg(c);
    return r;
  }

  static Scalar mul(const Scalar& a, const Scalar& b) {
    const FieldDesc& fd = a.fd_;
    switch (fd.hext) {
      case HExt::None:
        return make(fd, {b_mul(a.num_[0], b.num_[0])}, {});
      case HExt::Series: {
        BVec r(fd.series_order + 1, b_zero(fd));
        for (size_t i = 0; i <= fd.series_order; ++i) {
          if (b_is_zero(a.num_[i])) continue;
          for (size_t j = 0; i + j <= fd.series_order; ++j)
            r[i + j] = b_add(r[i + j], b_mul(a.num_[i], b.num_[j]));
        }
        return make(fd, std::move(r), {});
      }
      case HExt::RatFunc:
        return make(fd, bp_mul(a.num_, b.num_, fd), bp_mul(a.den_, b.den_, fd));
    }
    return a;
  }

  static Scalar inv(const Scalar& a) {
    const FieldDesc& fd = a.fd_;
    if (a.is_zero()) throw DivisionByZero();
    switch (fd.hext) {
      case HExt::None:
        return make(fd, {b_inv(a.num_[0])}, {});
      case HExt::Series: {
        // Invertible iff the constant term is; solve the convolution
        // recurrence c * a = 1 order by order.
        if (b_is_zero(a.num_[0]))
          throw DivisionByZero("series with zero constant term has no inverse");
        BVec r(fd.series_order + 1, b_zero(fd));
        const BaseScalar c0i = b_inv(a.num_[0]);
        r[0] = c0i;
        for (size_t k = 1; k <= fd.series_order; ++k) {
          BaseScalar acc = b_zero(fd);
          for (size_t j = 1; j <= k; ++j) acc = b_add(acc, b_mul(a.num_[j], r[k - j]));
          r[k] = b_neg(b_mul(acc, c0i));
        }
        return make(fd, std::move(r), {});
      }
      case HExt::RatFunc:
        return make(fd, a.den_, a.num_);
    }
    return a;
  }

  static bool eq(const Scalar& a, const Scalar& b) {
    if (a.num_.size() != b.num_.size() || a.den_.size() != b.den_.size()) return false;
    for (size_t i = 0; i < a.num_.size(); ++i)
      if (!b_eq(a.num_[i], b.num_[i])) return false;
    for (size_t i = 0; i < a.den_.size(); ++i)
      if (!b_eq(a.den_[i], b.den_[i])) return false;
    return true;
  }
};

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar x = a, y = b;
  harmonize(x, y);
  return ScalarOps::add(x, y);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  Scalar x = a, y = b;
  harmonize(x, y);
  return ScalarOps::add(x, ScalarOps::neg(y));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar x = a, y = b;
  harmonize(x, y);
  return ScalarOps::mul(x, y);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  Scalar x = a, y = b;
  harmonize(x, y);
  return ScalarOps::mul(x, ScalarOps::inv(y));
}

Scalar& Scalar::operator+=(const Scalar& b) { return *this = *this + b; }
Scalar& Scalar::operator-=(const Scalar& b) { return *this = *this - b; }
Scalar& Scalar::operator*=(const Scalar& b) { return *this = *this * b; }

Scalar Scalar::operator-() const { return ScalarOps::neg(*this); }

Scalar Scalar::inv() const { return ScalarOps::inv(*this); }

Scalar Scalar::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Scalar acc = one(fd_);
  Scalar base = *this;
  unsigned long n = static_cast<unsigned long>(e);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool operator==(const Scalar& a, const Scalar& b) {
  Scalar x = a, y = b;
  harmonize(x, y);
  return ScalarOps::eq(x, y);
}

Scalar Scalar::exact_div(const Scalar& b) const {
  if (fd_ == b.fd_) {
    if (fd_.hext == HExt::None && fd_.base == BaseKind::Rat) {
      const mpq_class& x = num_[0].rat;
      const mpq_class& y = b.num_[0].rat;
      if (x.get_den() == 1 && y.get_den() == 1 && y != 0) {
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_num().get_mpz_t(),
                    y.get_num().get_mpz_t());
        if (r == 0) return from_rat(mpq_class(q), fd_);
      }
    } else if (fd_.hext == HExt::None && fd_.base == BaseKind::RatFuncQ) {
      const BaseScalar& x = num_[0];
      const BaseScalar& y = b.num_[0];
      if (qp_deg(x.den) == 0 && x.den[0] == 1 && qp_deg(y.den) == 0 && y.den[0] == 1 &&
          !y.num.empty()) {
        QVec rem;
        QVec q = qp_divmod(x.num, y.num, rem);
        if (rem.empty()) {
          BaseScalar r = x;
          r.num = std::move(q);
          r.den = qp_const(1);
          return ScalarOps::make_trusted(fd_, {std::move(r)}, {b_one(fd_)});
        }
      }
    } else if (fd_.hext == HExt::RatFunc && den_.size() == 1 && b.den_.size() == 1 &&
               b_eq(den_[0], b_one(fd_)) && b_eq(b.den_[0], b_one(fd_)) && !b.is_zero()) {
      BVec rem;
      BVec q = bp_divmod(num_, b.num_, rem, fd_);
      if (rem.empty()) return ScalarOps::make_trusted(fd_, std::move(q), {b_one(fd_)});
    }
  }
  return *this / b;
}

bool clear_denominators(std::vector<Scalar>& row) {
  if (row.empty()) return true;
  const FieldDesc fd = row[0].field();
  for (const auto& s : row)
    if (!(s.field() == fd)) return false;

  if (fd.hext == HExt::None && fd.base == BaseKind::Rat) {
    mpz_class l = 1;
    for (const auto& s : row) {
      const mpz_class& d = ScalarOps::num(s)[0].rat.get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    if (l != 1) {
      Scalar f = Scalar::from_rat(mpq_class(l), fd);
      for (auto& s : row) s = s * f;
    }
    return true;
  }

  if (fd.hext == HExt::None && fd.base == BaseKind::RatFuncQ) {
    QVec l = qp_const(1);
    for (const auto& s : row) {
      const QVec& d = ScalarOps::num(s)[0].den;
      l = qp_mul(qp_div_exact(l, qp_gcd(l, d)), d);
    }
    for (auto& s : row) {
      BaseScalar v = ScalarOps::num(s)[0];
      v.num = qp_mul(v.num, qp_div_exact(l, v.den));
      v.den = qp_const(1);
      s = ScalarOps::make_trusted(fd, {std::move(v)}, {b_one(fd)});
    }
    return true;
  }

  if (fd.hext == HExt::RatFunc) {
    BVec l = {b_one(fd)};
    for (const auto& s : row) {
      const BVec& d = ScalarOps::den(s);
      BVec g = bp_gcd(l, d, fd);
      BVec rem;
      l = bp_mul(bp_divmod(l, g, rem, fd), d, fd);
    }
    for (auto& s : row) {
      BVec rem;
      BVec cof = bp_divmod(l, ScalarOps::den(s), rem, fd);
      BVec n = bp_mul(ScalarOps::num(s), cof, fd);
      s = ScalarOps::make_trusted(fd, std::move(n), {b_one(fd)});
    }
    return true;
  }

  return false;
}

bool Scalar::composite() const {
  switch (fd_.hext) {
    case HExt::None: return b_composite(num_[0]);
    case HExt::Series:
    case HExt::RatFunc: return true;
  }
  return false;
}

long Scalar::h_order() const {
  switch (fd_.hext) {
    case HExt::None: return 0;
    case HExt::Series: {
      for (size_t i = 0; i < num_.size(); ++i)
        if (!b_is_zero(num_[i])) return static_cast<long>(i);
      return static_cast<long>(fd_.series_order) + 1;
    }
    case HExt::RatFunc: {
      if (num_.empty()) return 0;
      auto ord = [](const BVec& p) {
        for (size_t i = 0; i < p.size(); ++i)
          if (!b_is_zero(p[i])) return static_cast<long>(i);
        return 0L;
      };
      return ord(num_) - ord(den_);
    }
  }
  return 0;
}

Scalar Scalar::series_coeff(unsigned i) const {
  if (fd_.hext != HExt::Series) throw InvalidParameters("series_coeff on non-series scalar");
  Scalar r = Scalar::zero(fd_.base_only());
  if (i < num_.size()) r = ScalarOps::make(fd_.base_only(), {num_[i]}, {});
  return r;
}

Scalar Scalar::truncate_series(unsigned k) const {
  if (fd_.hext != HExt::Series) throw InvalidParameters("truncate_series on non-series scalar");
  FieldDesc fd = fd_;
  fd.series_order = std::min(k, fd_.series_order);
  BVec r(num_.begin(), num_.begin() + fd.series_order + 1);
  return ScalarOps::make(fd, std::move(r), {});
}

Scalar Scalar::divide_by_h() const {
  switch (fd_.hext) {
    case HExt::None: throw InvalidParameters("divide_by_h on base-field scalar");
    case HExt::Series: {
      if (!b_is_zero(num_[0])) throw DivisibilityError("series has nonzero constant term");
      if (fd_.series_order == 0) throw DivisibilityError("series order too small");
      FieldDesc fd = fd_;
      fd.series_order -= 1;
      BVec r(num_.begin() + 1, num_.end());
      return ScalarOps::make(fd, std::move(r), {});
    }
    case HExt::RatFunc: {
      return *this / Scalar::hbar(fd_);
    }
  }
  return *this;
}

Scalar Scalar::mul_by_h_power(unsigned r) const {
  Scalar h = Scalar::hbar(fd_);
  return *this * h.pow(r);
}

Scalar Scalar::eval_h(const Scalar& h0) const {
  if (fd_.hext != HExt::RatFunc) throw InvalidParameters("eval_h on non-rational-function scalar");
  const FieldDesc bfd = fd_.base_only();
  Scalar v = embed(h0, bfd);
  auto eval = [&](const BVec& p) {
    Scalar acc = Scalar::zero(bfd);
    for (size_t i = p.size(); i-- > 0;)
      acc = acc * v + ScalarOps::make(bfd, {p[i]}, {});
    return acc;
  };
  Scalar den = eval(den_);
  if (den.is_zero()) throw PoleAtSpecialization("denominator vanishes at h0");
  return eval(num_) / den;
}

std::string Scalar::str() const {
  switch (fd_.hext) {
    case HExt::None: return b_render(num_[0]);
    case HExt::Series: {
      std::ostringstream os;
      bool first = true;
      for (size_t i = 0; i < num_.size(); ++i) {
        if (b_is_zero(num_[i])) continue;
        if (!first) os << " + ";
        first = false;
        std::string c = b_render(num_[i]);
        if (b_composite(num_[i])) c = "(" + c + ")";
        if (i == 0) {
          os << c;
        } else {
          if (!b_eq(num_[i], b_one(fd_))) os << c << "*";
          os << "h";
          if (i > 1) os << "^" << i;
        }
      }
      if (first) os << "0";
      os << " (mod h^" << (fd_.series_order + 1) << ")";
      return os.str();
    }
    case HExt::RatFunc: {
      auto render = [&](const BVec& p) {
        std::ostringstream os;
        bool first = true;
        for (size_t d = p.size(); d-- > 0;) {
          if (b_is_zero(p[d])) continue;
          if (!first) os << " + ";
          first = false;
          std::string c = b_render(p[d]);
          if (b_composite(p[d])) c = "(" + c + ")";
          if (d == 0) {
            os << c;
          } else {
            if (!b_eq(p[d], b_one(fd_))) os << c << "*";
            os << "h";
            if (d > 1) os << "^" << d;
          }
        }
        if (first) os << "0";
        return os.str();
      };
      if (den_.size() == 1 && b_eq(den_[0], b_one(fd_))) return render(num_);
      return "(" + render(num_) + ")/(" + render(den_) + ")";
    }
  }
  return "?";
}

Scalar embed(const Scalar& a, const FieldDesc& target) {
  const FieldDesc& fa = a.field();
  if (fa == target) return a;

  // Peel the h-extension: embed base-field coefficients, then rebuild.
  if (fa.hext != HExt::None) {
    if (fa.hext == HExt::Series && target.hext == HExt::Series) {
      if (!fa.same_base(target)) throw NoEmbedding(fa.str() + " -> " + target.str());
      if (target.series_order <= fa.series_order) return a.truncate_series(target.series_order);
      throw NoEmbedding("cannot raise series precision " + fa.str() + " -> " + target.str());
    }
    throw NoEmbedding(fa.str() + " -> " + target.str());
  }

  // Base-field source. First map into the base of the target.
  Scalar base_img = Scalar::zero(target.base_only());
  const BaseScalar& v = ScalarOps::num(a)[0];
  if (fa.same_base(target)) {
    base_img = a;
  } else if (fa.base == BaseKind::Rat) {
    base_img = Scalar::from_rat(v.rat, target.base_only());
  } else if (fa.base == BaseKind::RatFuncQ && target.base == BaseKind::Cyclo) {
    // q |-> zeta_N
    return embed(specialize_q(a, Scalar::zeta(target.cyclo_n)), target);
  } else {
    throw NoEmbedding(fa.str() + " -> " + target.str());
  }

  switch (target.hext) {
    case HExt::None: return base_img;
    case HExt::Series: {
      BVec n(target.series_order + 1, b_zero(target));
      n[0] = ScalarOps::num(base_img)[0];
      return ScalarOps::make(target, std::move(n), {});
    }
    case HExt::RatFunc: {
      BVec n = {ScalarOps::num(base_img)[0]};
      bp_trim(n);
      return ScalarOps::make(target, std::move(n), {b_one(target)});
    }
  }
  throw NoEmbedding(fa.str() + " -> " + target.str());
}

Scalar specialize_q(const Scalar& a, const Scalar& q0) {
  const FieldDesc& fa = a.field();
  if (fa.base != BaseKind::RatFuncQ)
    throw NoEmbedding("specialize_q requires a Q(q)-based scalar");
  const FieldDesc target_base = q0.field().base_only();
  if (q0.field().hext != HExt::None)
    throw InvalidParameters("q must specialize to a base-field value");

  auto map_base = [&](const BaseScalar& v) {
    auto eval = [&](const QVec& p) {
      Scalar acc = Scalar::zero(target_base);
      for (size_t i = p.size(); i-- > 0;)
        acc = acc * q0 + Scalar::from_rat(p[i], target_base);
      return acc;
    };
    Scalar den = eval(v.den);
    if (den.is_zero()) throw PoleAtSpecialization("q-denominator vanishes at the target value");
    return eval(v.num) / den;
  };

  switch (fa.hext) {
    case HExt::None: return map_base(ScalarOps::num(a)[0]);
    case HExt::Series: {
      FieldDesc tfd = target_base.with_h_series(fa.series_order);
      Scalar r = Scalar::zero(tfd);
      Scalar h = Scalar::hbar(tfd);
      for (unsigned i = 0; i <= fa.series_order; ++i)
        r = r + embed(map_base(ScalarOps::num(a)[i]), tfd) * h.pow(i);
      return r;
    }
    case HExt::RatFunc: {
      FieldDesc tfd = target_base.with_h_ratfunc();
      Scalar h = Scalar::hbar(tfd);
      auto lift = [&](const BVec& p) {
        Scalar acc = Scalar::zero(tfd);
        for (size_t i = p.size(); i-- > 0;)
          acc = acc * h + embed(map_base(p[i]), tfd);
        return acc;
      };
      Scalar den = lift(ScalarOps::den(a));
      if (den.is_zero()) throw PoleAtSpecialization("denominator vanishes at the target value");
      return lift(ScalarOps::num(a)) / den;
    }
  }
  throw NoEmbedding("unsupported specialization");
}

Scalar q_integer(unsigned n, const Scalar& q) {
  Scalar acc = Scalar::zero(q.field());
  Scalar p = Scalar::one(q.field());
  for (unsigned i = 0; i < n; ++i) {
    acc = acc + p;
    p = p * q;
  }
  return acc;
}

}  // namespace defcoh
