#include "defcoh/qpoly.hpp"

#include <map>

#include "defcoh/errors.hpp"

namespace defcoh {

mpq_class make_rat(long num, long den) {
  if (den == 0) throw DivisionByZero();
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

mpq_class make_rat(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZero();
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

void qp_trim(QVec& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

bool qp_is_zero(const QVec& p) { return p.empty(); }

int qp_deg(const QVec& p) { return static_cast<int>(p.size()) - 1; }

QVec qp_const(const mpq_class& c) {
  if (c == 0) return {};
  return {c};
}

QVec qp_monomial(int deg, const mpq_class& c) {
  if (c == 0) return {};
  QVec p(deg + 1, mpq_class(0));
  p[deg] = c;
  return p;
}

QVec qp_add(const QVec& a, const QVec& b) {
  QVec r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  qp_trim(r);
  return r;
}

QVec qp_sub(const QVec& a, const QVec& b) {
  QVec r(std::max(a.size(), b.size()), mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  qp_trim(r);
  return r;
}

QVec qp_neg(const QVec& a) {
  QVec r(a);
  for (auto& c : r) c = -c;
  return r;
}

QVec qp_mul(const QVec& a, const QVec& b) {
  if (a.empty() || b.empty()) return {};
  QVec r(a.size() + b.size() - 1, mpq_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  qp_trim(r);
  return r;
}

QVec qp_scale(const QVec& a, const mpq_class& c) {
  if (c == 0) return {};
  QVec r(a);
  for (auto& x : r) x *= c;
  return r;
}

bool qp_eq(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

QVec qp_divmod(const QVec& a, const QVec& b, QVec& rem) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  rem = a;
  if (a.size() < b.size()) return {};
  QVec quot(a.size() - b.size() + 1, mpq_class(0));
  const mpq_class lead = b.back();
  for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    if (rem[i] == 0) continue;
    mpq_class f = rem[i] / lead;
    quot[i - (b.size() - 1)] = f;
    for (size_t j = 0; j < b.size(); ++j) rem[i - (b.size() - 1) + j] -= f * b[j];
  }
  qp_trim(rem);
  qp_trim(quot);
  return quot;
}

QVec qp_div_exact(const QVec& a, const QVec& b) {
  QVec rem;
  QVec q = qp_divmod(a, b, rem);
  if (!rem.empty()) throw DivisibilityError("inexact polynomial division");
  return q;
}

QVec qp_make_monic(QVec a) {
  if (a.empty()) return a;
  const mpq_class lead = a.back();
  if (lead == 1) return a;
  for (auto& c : a) c /= lead;
  return a;
}

QVec qp_gcd(QVec a, QVec b) {
  while (!b.empty()) {
    QVec rem;
    qp_divmod(a, b, rem);
    a = std::move(b);
    b = std::move(rem);
  }
  return qp_make_monic(std::move(a));
}

mpq_class qp_eval(const QVec& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

const QVec& cyclotomic_poly(unsigned n) {
  thread_local std::map<unsigned, QVec> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  QVec phi;
  if (n == 1) {
    phi = {mpq_class(-1), mpq_class(1)};
  } else {
    // (x^n - 1) / prod of Phi_d over proper divisors d of n
    QVec num = qp_monomial(static_cast<int>(n));
    num = qp_add(num, qp_const(-1));
    for (unsigned d = 1; d < n; ++d)
      if (n % d == 0) num = qp_div_exact(num, cyclotomic_poly(d));
    phi = std::move(num);
  }
  auto [pos, inserted] = cache.emplace(n, std::move(phi));
  (void)inserted;
  return pos->second;
}

unsigned cyclotomic_degree(unsigned n) {
  return static_cast<unsigned>(cyclotomic_poly(n).size()) - 1;
}

}  // namespace defcoh
