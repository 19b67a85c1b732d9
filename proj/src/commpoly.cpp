#include "defcoh/commpoly.hpp"

#include <sstream>
#include <vector>

#include "defcoh/errors.hpp"

namespace defcoh {

CommPoly CommPoly::monomial(const FieldDesc& fd, int i, int j) {
  CommPoly p(fd);
  p.set(i, j, Scalar::one(fd));
  return p;
}

CommPoly CommPoly::monomial(int i, int j, const Scalar& c) {
  CommPoly p(c.field());
  p.set(i, j, c);
  return p;
}

CommPoly CommPoly::constant(const Scalar& c) { return monomial(0, 0, c); }

Scalar CommPoly::coeff(int i, int j) const {
  auto it = c_.find({i, j});
  return it == c_.end() ? Scalar::zero(fd_) : it->second;
}

void CommPoly::set(int i, int j, const Scalar& c) {
  if (i < 0 || j < 0) throw InvalidParameters("negative exponent in polynomial");
  if (c.is_zero())
    c_.erase({i, j});
  else
    c_[{i, j}] = c;
}

void CommPoly::add_term(int i, int j, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = c_.try_emplace({i, j}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

CommPoly CommPoly::operator+(const CommPoly& o) const {
  CommPoly r = *this;
  for (const auto& [k, v] : o.c_) r.add_term(k.first, k.second, v);
  return r;
}

CommPoly CommPoly::operator-(const CommPoly& o) const {
  CommPoly r = *this;
  for (const auto& [k, v] : o.c_) r.add_term(k.first, k.second, -v);
  return r;
}

CommPoly CommPoly::operator-() const {
  CommPoly r(fd_);
  for (const auto& [k, v] : c_) r.c_[k] = -v;
  return r;
}

CommPoly CommPoly::operator*(const CommPoly& o) const {
  CommPoly r(fd_);
  for (const auto& [ka, va] : c_)
    for (const auto& [kb, vb] : o.c_)
      r.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
  return r;
}

CommPoly CommPoly::scaled(const Scalar& c) const {
  CommPoly r(fd_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : c_) r.add_term(k.first, k.second, v * c);
  return r;
}

bool CommPoly::operator==(const CommPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  auto it = o.c_.begin();
  for (const auto& [k, v] : c_) {
    if (it->first != k || !(it->second == v)) return false;
    ++it;
  }
  return true;
}

CommPoly CommPoly::dx() const {
  CommPoly r(fd_);
  for (const auto& [k, v] : c_)
    if (k.first > 0) r.add_term(k.first - 1, k.second, v * Scalar::from_int(k.first, fd_));
  return r;
}

CommPoly CommPoly::dy() const {
  CommPoly r(fd_);
  for (const auto& [k, v] : c_)
    if (k.second > 0) r.add_term(k.first, k.second - 1, v * Scalar::from_int(k.second, fd_));
  return r;
}

CommPoly CommPoly::dpow(int a, int b) const {
  CommPoly r = *this;
  for (int i = 0; i < a; ++i) r = r.dx();
  for (int i = 0; i < b; ++i) r = r.dy();
  return r;
}

int CommPoly::deg_x() const {
  int d = -1;
  for (const auto& [k, v] : c_) d = std::max(d, k.first);
  return d;
}

int CommPoly::deg_y() const {
  int d = -1;
  for (const auto& [k, v] : c_) d = std::max(d, k.second);
  return d;
}

int CommPoly::total_deg() const {
  int d = -1;
  for (const auto& [k, v] : c_) d = std::max(d, k.first + k.second);
  return d;
}

CommPoly CommPoly::embedded(const FieldDesc& fd) const {
  CommPoly r(fd);
  for (const auto& [k, v] : c_) r.add_term(k.first, k.second, embed(v, fd));
  return r;
}

namespace {

void render_monomial(std::ostringstream& os, const Scalar& c, int i, int j) {
  const bool unit_coeff = c.is_one();
  std::string cs = c.str();
  if (i == 0 && j == 0) {
    os << (c.composite() ? "(" + cs + ")" : cs);
    return;
  }
  if (!unit_coeff) {
    os << (c.composite() ? "(" + cs + ")" : cs) << "*";
  }
  if (i > 0) {
    os << "x";
    if (i > 1) os << "^" << i;
    if (j > 0) os << "*";
  }
  if (j > 0) {
    os << "y";
    if (j > 1) os << "^" << j;
  }
}

}  // namespace

std::string CommPoly::str() const {
  if (c_.empty()) return "0";
  // graded-lex, highest first
  std::vector<std::pair<Key, Scalar>> ts(c_.begin(), c_.end());
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    int ta = a.first.first + a.first.second, tb = b.first.first + b.first.second;
    if (ta != tb) return ta > tb;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : ts) {
    if (!first) os << " + ";
    first = false;
    render_monomial(os, v, k.first, k.second);
  }
  return os.str();
}

}  // namespace defcoh
