#pragma once

#include <map>
#include <string>
#include <utility>

#include "defcoh/scalar.hpp"

namespace defcoh {

// Commutative polynomial in x, y over a fixed coefficient field, sparse.
class CommPoly {
 public:
  using Key = std::pair<int, int>;  // (x-exponent, y-exponent)

  CommPoly() : fd_(FieldDesc::rationals()) {}
  explicit CommPoly(const FieldDesc& fd) : fd_(fd) {}

  static CommPoly monomial(const FieldDesc& fd, int i, int j);
  static CommPoly monomial(int i, int j, const Scalar& c);
  static CommPoly constant(const Scalar& c);

  const FieldDesc& field() const { return fd_; }
  const std::map<Key, Scalar>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int i, int j) const;
  void set(int i, int j, const Scalar& c);
  void add_term(int i, int j, const Scalar& c);

  CommPoly operator+(const CommPoly& o) const;
  CommPoly operator-(const CommPoly& o) const;
  CommPoly operator*(const CommPoly& o) const;
  CommPoly operator-() const;
  CommPoly scaled(const Scalar& c) const;
  bool operator==(const CommPoly& o) const;

  CommPoly dx() const;
  CommPoly dy() const;
  CommPoly dpow(int a, int b) const;  // d_x^a d_y^b

  int deg_x() const;  // -1 for zero
  int deg_y() const;
  int total_deg() const;

  // Move every coefficient into `fd` through the canonical embedding.
  CommPoly embedded(const FieldDesc& fd) const;
  // Apply a map to every coefficient (field may change).
  template <class F>
  CommPoly mapped(const FieldDesc& fd, F&& f) const {
    CommPoly r(fd);
    for (const auto& [k, v] : c_) r.add_term(k.first, k.second, f(v));
    return r;
  }

  std::string str() const;

 private:
  FieldDesc fd_;
  std::map<Key, Scalar> c_;
};

}  // namespace defcoh
