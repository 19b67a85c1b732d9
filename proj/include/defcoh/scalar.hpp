#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "defcoh/qpoly.hpp"

namespace defcoh {

// Coefficient towers: a base field (Q, Q(q), or Q(zeta_N)) optionally
// extended by the deformation variable h, either as the rational function
// field base(h) or as the truncated series ring base[h]/(h^{K+1}).
enum class BaseKind : std::uint8_t { Rat, RatFuncQ, Cyclo };
enum class HExt : std::uint8_t { None, RatFunc, Series };

struct FieldDesc {
  BaseKind base = BaseKind::Rat;
  std::uint32_t cyclo_n = 0;  // N for Cyclo
  HExt hext = HExt::None;
  std::uint32_t series_order = 0;  // K for Series

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
  FieldDesc base_only() const { return FieldDesc{base, cyclo_n, HExt::None, 0}; }
  bool same_base(const FieldDesc& o) const { return base == o.base && cyclo_n == o.cyclo_n; }
  std::string str() const;

  static FieldDesc rationals() { return {}; }
  static FieldDesc rat_func_q() { return {BaseKind::RatFuncQ, 0, HExt::None, 0}; }
  static FieldDesc cyclotomic(unsigned n) { return {BaseKind::Cyclo, n, HExt::None, 0}; }
  FieldDesc with_h_ratfunc() const { return {base, cyclo_n, HExt::RatFunc, 0}; }
  FieldDesc with_h_series(unsigned k) const { return {base, cyclo_n, HExt::Series, k}; }
};

// One coefficient of the base field. Exactly one representation is active,
// selected by `kind`; all values are kept in canonical form.
struct BaseScalar {
  BaseKind kind = BaseKind::Rat;
  std::uint32_t n = 0;  // cyclo index
  mpq_class rat;        // Rat
  QVec num, den;        // RatFuncQ: reduced, den monic
  QVec cyc;             // Cyclo: reduced mod Phi_n
};

class Scalar {
 public:
  Scalar();  // rational zero

  static Scalar zero(const FieldDesc& fd);
  static Scalar one(const FieldDesc& fd);
  static Scalar from_int(long v, const FieldDesc& fd = FieldDesc::rationals());
  static Scalar from_rat(const mpq_class& v, const FieldDesc& fd = FieldDesc::rationals());
  static Scalar rational(long num, long den = 1);
  static Scalar q_gen();             // q in Q(q)
  static Scalar zeta(unsigned n);    // zeta_N in Q(zeta_N)
  static Scalar hbar(const FieldDesc& fd);  // h in an h-extended field

  const FieldDesc& field() const { return fd_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b);
  Scalar& operator-=(const Scalar& b);
  Scalar& operator*=(const Scalar& b);
  Scalar inv() const;
  Scalar pow(long e) const;
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Exact division fast path used by fraction-free elimination: both sides
  // denominator-free, quotient known to be denominator-free.
  Scalar exact_div(const Scalar& b) const;

  std::string str() const;
  // True when str() needs parentheses inside a product.
  bool composite() const;

  // --- h-extension utilities ---
  // Valuation in h. Series: index of first nonzero coefficient (K+1 if zero);
  // RatFunc: ord(num) - ord(den). None: 0.
  long h_order() const;
  Scalar series_coeff(unsigned i) const;  // i-th series coefficient, as base-field scalar
  Scalar truncate_series(unsigned k) const;
  Scalar divide_by_h() const;  // Series: shift down (DivisibilityError if c0 != 0), order drops by one
  Scalar mul_by_h_power(unsigned r) const;
  Scalar eval_h(const Scalar& h0) const;  // RatFunc-h at h = h0 (base-field value)

  // Canonical access for linear algebra (base field only).
  const BaseScalar& base_value() const;

 private:
  FieldDesc fd_;
  // Unified storage: hext None -> num_ = {value}, den_ = one;
  // Series(K) -> num_ has exactly K+1 entries, den_ = one;
  // RatFunc -> num_ trimmed (empty == 0), den_ monic nonzero, coprime to num_.
  std::vector<BaseScalar> num_, den_;

  friend struct ScalarOps;
};

// The canonical embedding into `target` (unit maps, constants into the
// h-extension, q |-> zeta_N when the target base is cyclotomic, series
// truncation). Throws NoEmbedding when none exists.
Scalar embed(const Scalar& a, const FieldDesc& target);

// Specialize the generator of Q(q) to a value in a base field (rational or
// cyclotomic). Throws PoleAtSpecialization when a denominator vanishes.
Scalar specialize_q(const Scalar& a, const Scalar& q0);

// n_q = 1 + q + ... + q^{n-1}; zero for n = 0.
Scalar q_integer(unsigned n, const Scalar& q);

// Scales the row by a common multiple of all denominators so that every
// entry becomes denominator-free (integer, or polynomial over the base).
// Returns false (row untouched) for towers without that structure.
bool clear_denominators(std::vector<Scalar>& row);

}  // namespace defcoh
