#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace defcoh {

// Dense univariate polynomial over Q, coefficients in ascending degree,
// no trailing zeros (the zero polynomial is the empty vector).
using QVec = std::vector<mpq_class>;

mpq_class make_rat(long num, long den = 1);
mpq_class make_rat(const mpz_class& num, const mpz_class& den);

void qp_trim(QVec& p);
bool qp_is_zero(const QVec& p);
int qp_deg(const QVec& p);  // -1 for zero
QVec qp_const(const mpq_class& c);
QVec qp_monomial(int deg, const mpq_class& c = 1);
QVec qp_add(const QVec& a, const QVec& b);
QVec qp_sub(const QVec& a, const QVec& b);
QVec qp_neg(const QVec& a);
QVec qp_mul(const QVec& a, const QVec& b);
QVec qp_scale(const QVec& a, const mpq_class& c);
bool qp_eq(const QVec& a, const QVec& b);

// Euclidean division; requires b != 0. Returns quotient, stores remainder.
QVec qp_divmod(const QVec& a, const QVec& b, QVec& rem);
// Exact division; throws DivisibilityError if the remainder is nonzero.
QVec qp_div_exact(const QVec& a, const QVec& b);
// Monic gcd; gcd(0,0) = 0.
QVec qp_gcd(QVec a, QVec b);
QVec qp_make_monic(QVec a);
mpq_class qp_eval(const QVec& p, const mpq_class& x);

// N-th cyclotomic polynomial, N >= 1. Cached per thread.
const QVec& cyclotomic_poly(unsigned n);
unsigned cyclotomic_degree(unsigned n);  // deg Phi_N = phi(N)

}  // namespace defcoh
