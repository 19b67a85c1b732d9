#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "defcoh/commpoly.hpp"
#include "defcoh/scalar.hpp"

namespace defcoh {

// The two-generator family k{x,y}/(xy - q.yx - hbar). q must be invertible.
struct AlgebraSpec {
  FieldDesc field;
  Scalar q, hbar;

  static AlgebraSpec make(const Scalar& q, const Scalar& hbar);
  static AlgebraSpec poly_ring();                    // q = 1, hbar = 0
  static AlgebraSpec weyl1();                        // q = 1, hbar = 1
  static AlgebraSpec weyl_hbar();                    // q = 1, hbar symbolic
  static AlgebraSpec quantum_plane(const Scalar& q); // hbar = 0
  static AlgebraSpec qweyl(const Scalar& q);         // hbar = 1
  static AlgebraSpec qweyl_hbar(const Scalar& q);    // hbar symbolic

  Scalar r() const { return q.inv(); }
  bool graded() const { return hbar.is_zero(); }
  // Smallest k <= 24 with q^k = 1, else 0 (0 also for symbolic q).
  unsigned root_of_unity_order() const;
  bool operator==(const AlgebraSpec& o) const;
  std::string str() const;
};

// Normal-ordered element: sum of c_ij x^i y^j, zero coefficients absent.
class NCPoly {
 public:
  using Key = std::pair<int, int>;

  NCPoly() : alg_(AlgebraSpec::poly_ring()) {}
  explicit NCPoly(const AlgebraSpec& alg) : alg_(alg) {}

  static NCPoly monomial(const AlgebraSpec& alg, int i, int j);
  static NCPoly monomial(const AlgebraSpec& alg, int i, int j, const Scalar& c);
  static NCPoly unit(const AlgebraSpec& alg);
  static NCPoly gen_x(const AlgebraSpec& alg);
  static NCPoly gen_y(const AlgebraSpec& alg);
  // Normal form of a coefficient times a word in the letters 'x', 'y'.
  static NCPoly from_word(const AlgebraSpec& alg, const Scalar& c, const std::string& word);
  static NCPoly from_comm(const AlgebraSpec& alg, const CommPoly& p);

  const AlgebraSpec& algebra() const { return alg_; }
  const std::map<Key, Scalar>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int i, int j) const;
  void add_term(int i, int j, const Scalar& c);

  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator-(const NCPoly& o) const;
  NCPoly operator-() const;
  NCPoly operator*(const NCPoly& o) const;  // normal form of the product
  NCPoly scaled(const Scalar& c) const;
  bool operator==(const NCPoly& o) const;

  CommPoly to_comm() const;  // forget ordering, same coefficients
  std::string str() const;

 private:
  AlgebraSpec alg_;
  std::map<Key, Scalar> c_;
};

NCPoly commutator(const NCPoly& a, const NCPoly& b);

// Derivation stored by generator images; compatible iff
// D(x)y + xD(y) - q(D(y)x + yD(x)) = 0.
struct Derivation {
  AlgebraSpec alg;
  NCPoly im_x, im_y;

  Derivation() : alg(AlgebraSpec::poly_ring()), im_x(alg), im_y(alg) {}
  Derivation(const AlgebraSpec& a, NCPoly dx, NCPoly dy)
      : alg(a), im_x(std::move(dx)), im_y(std::move(dy)) {}

  bool is_compatible() const;
  NCPoly relation_defect() const;
  NCPoly apply(const NCPoly& p) const;  // Leibniz extension
  bool is_zero() const { return im_x.is_zero() && im_y.is_zero(); }
  bool operator==(const Derivation& o) const { return im_x == o.im_x && im_y == o.im_y; }
  std::string str() const;
};

Derivation inner_derivation(const NCPoly& c);

// Basis of the center among x^i y^j with i <= dx_bound, j <= dy_bound,
// graded-lex order, by exact nullspace computation.
std::vector<NCPoly> center_basis(const AlgebraSpec& alg, int dx_bound, int dy_bound);

// Basis of derivations with leading bidegree (u, v): deg D(x) = (u+1, v),
// deg D(y) = (u, v+1). For filtered algebras (hbar != 0) lower terms along
// the same diagonal are allowed, with exponents capped at exp_bound
// (default |u|+|v|+2N at a root of unity of order N, else |u|+|v|+4).
std::vector<Derivation> derivation_basis(const AlgebraSpec& alg, int u, int v, int exp_bound = -1);

bool annihilates_center(const Derivation& d, int dx_bound, int dy_bound);

}  // namespace defcoh
