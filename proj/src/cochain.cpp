#include "defcoh/cochain.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "defcoh/errors.hpp"
#include "defcoh/linalg.hpp"

namespace defcoh {

Cochain Cochain::element(const CommPoly& p) {
  Cochain c(p.field(), 0);
  c.add_term(Slots{}, p);
  return c;
}

Cochain Cochain::partial(const FieldDesc& fd, int a, int b) {
  Cochain c(fd, 1);
  c.add_term(Slots{{{a, b}}}, CommPoly::monomial(fd, 0, 0));
  return c;
}

Cochain Cochain::vector_field(const CommPoly& a, const CommPoly& b) {
  Cochain c(a.field(), 1);
  c.add_term(Slots{{{1, 0}}}, a);
  c.add_term(Slots{{{0, 1}}}, b);
  return c;
}

Cochain Cochain::multiplication(const FieldDesc& fd) {
  Cochain c(fd, 2);
  c.add_term(Slots{{{0, 0}, {0, 0}}}, CommPoly::monomial(fd, 0, 0));
  return c;
}

void Cochain::add_term(const Slots& s, const CommPoly& c) {
  if (static_cast<int>(s.v.size()) != arity_)
    throw InvalidParameters("slot count does not match arity");
  if (c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(s, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Cochain Cochain::operator+(const Cochain& o) const {
  if (arity_ != o.arity_) throw InvalidParameters("arity mismatch in cochain sum");
  Cochain r = *this;
  for (const auto& [s, c] : o.t_) r.add_term(s, c);
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain Cochain::operator-() const {
  Cochain r(fd_, arity_);
  for (const auto& [s, c] : t_) r.t_[s] = -c;
  return r;
}

Cochain Cochain::scaled(const Scalar& c) const {
  Cochain r(fd_, arity_);
  if (c.is_zero()) return r;
  for (const auto& [s, p] : t_) r.add_term(s, p.scaled(c));
  return r;
}

bool Cochain::operator==(const Cochain& o) const {
  if (arity_ != o.arity_ || t_.size() != o.t_.size()) return false;
  auto it = o.t_.begin();
  for (const auto& [s, c] : t_) {
    if (it->first != s || !(it->second == c)) return false;
    ++it;
  }
  return true;
}

Cochain Cochain::postcompose(int a, int b) const {
  Cochain cur = *this;
  auto step = [&](bool xdir) {
    Cochain r(cur.fd_, cur.arity_);
    for (const auto& [s, c] : cur.t_) {
      r.add_term(s, xdir ? c.dx() : c.dy());
      for (size_t t = 0; t < s.v.size(); ++t) {
        Slots s2 = s;
        if (xdir)
          s2.v[t].first += 1;
        else
          s2.v[t].second += 1;
        r.add_term(s2, c);
      }
    }
    return r;
  };
  for (int i = 0; i < a; ++i) cur = step(true);
  for (int i = 0; i < b; ++i) cur = step(false);
  return cur;
}

Cochain Cochain::coeff_mul(const CommPoly& p) const {
  Cochain r(fd_, arity_);
  for (const auto& [s, c] : t_) r.add_term(s, c * p);
  return r;
}

CommPoly Cochain::apply(const std::vector<CommPoly>& args) const {
  if (static_cast<int>(args.size()) != arity_)
    throw InvalidParameters("argument count does not match arity");
  CommPoly out(fd_);
  for (const auto& [s, c] : t_) {
    CommPoly prod = c;
    bool dead = false;
    for (size_t t = 0; t < s.v.size() && !dead; ++t) {
      CommPoly d = args[t].dpow(s.v[t].first, s.v[t].second);
      if (d.is_zero()) dead = true;
      prod = prod * d;
    }
    if (!dead) out = out + prod;
  }
  return out;
}

Cochain Cochain::embedded(const FieldDesc& fd) const {
  Cochain r(fd, arity_);
  for (const auto& [s, c] : t_) r.add_term(s, c.embedded(fd));
  return r;
}

std::optional<std::pair<int, int>> Cochain::bidegree() const {
  std::optional<std::pair<int, int>> bd;
  for (const auto& [s, c] : t_) {
    int sa = 0, sb = 0;
    for (const auto& [a, b] : s.v) {
      sa += a;
      sb += b;
    }
    for (const auto& [k, v] : c.terms()) {
      std::pair<int, int> cur{k.first - sa, k.second - sb};
      if (!bd)
        bd = cur;
      else if (*bd != cur)
        return std::nullopt;
    }
  }
  return bd;
}

std::string Cochain::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (size_t t = 0; t < s.v.size(); ++t) {
      os << "*d" << (t + 1) << "[";
      if (s.v[t].first) os << "x^" << s.v[t].first;
      if (s.v[t].first && s.v[t].second) os << " ";
      if (s.v[t].second) os << "y^" << s.v[t].second;
      if (!s.v[t].first && !s.v[t].second) os << "1";
      os << "]";
    }
  }
  return os.str();
}

Cochain insert(const Cochain& f, int pos, const Cochain& g) {
  if (pos < 0 || pos >= f.arity()) throw InvalidParameters("insertion position out of range");
  Cochain r(f.field(), f.arity() + g.arity() - 1);
  for (const auto& [fs, fc] : f.terms()) {
    const auto [a, b] = fs.v[pos];
    const Cochain gp = g.postcompose(a, b);
    for (const auto& [gs, gc] : gp.terms()) {
      Slots s;
      s.v.reserve(r.arity());
      s.v.insert(s.v.end(), fs.v.begin(), fs.v.begin() + pos);
      s.v.insert(s.v.end(), gs.v.begin(), gs.v.end());
      s.v.insert(s.v.end(), fs.v.begin() + pos + 1, fs.v.end());
      r.add_term(s, fc * gc);
    }
  }
  return r;
}

namespace {
int parity(long e) { return static_cast<int>(((e % 2) + 2) % 2); }
}  // namespace

Cochain compose(const Cochain& f, const Cochain& g) {
  const int p = f.arity(), q = g.arity();
  Cochain r(f.field(), p + q - 1);
  for (int i = 0; i < p; ++i) {
    Cochain term = insert(f, i, g);
    if (parity(static_cast<long>(q - 1) * i))
      r = r - term;
    else
      r = r + term;
  }
  return r;
}

Cochain gerstenhaber(const Cochain& f, const Cochain& g) {
  const int p = f.arity(), q = g.arity();
  Cochain r = compose(f, g);
  Cochain gf = compose(g, f);
  if (parity(static_cast<long>(p - 1) * (q - 1)))
    return r + gf;
  return r - gf;
}

Cochain cup_with(const Cochain& m2, const Cochain& f, const Cochain& g) {
  if (m2.arity() != 2) throw InvalidParameters("cup needs an arity-2 multiplication");
  Cochain r(f.field(), f.arity() + g.arity());
  for (const auto& [ms, mc] : m2.terms()) {
    const Cochain fp = f.postcompose(ms.v[0].first, ms.v[0].second);
    const Cochain gp = g.postcompose(ms.v[1].first, ms.v[1].second);
    for (const auto& [fs, fc] : fp.terms())
      for (const auto& [gs, gc] : gp.terms()) {
        Slots s;
        s.v.reserve(r.arity());
        s.v.insert(s.v.end(), fs.v.begin(), fs.v.end());
        s.v.insert(s.v.end(), gs.v.begin(), gs.v.end());
        r.add_term(s, mc * fc * gc);
      }
  }
  return r;
}

Cochain cup(const Cochain& f, const Cochain& g) {
  return cup_with(Cochain::multiplication(f.field()), f, g);
}

Cochain wedge(const Cochain& f, const Cochain& g) {
  return (cup(f, g) - cup(g, f)).scaled(Scalar::rational(1, 2));
}

Cochain coboundary(const Cochain& z, const Cochain& m2) { return -gerstenhaber(z, m2); }

Cochain coboundary(const Cochain& z) {
  return coboundary(z, Cochain::multiplication(z.field()));
}

std::string CochainWindow::str() const {
  return "arity=" + std::to_string(arity) + ",order=" + std::to_string(max_slot_order) +
         ",deg=" + std::to_string(max_coeff_deg);
}

namespace {

std::vector<std::pair<int, int>> slot_choices(int max_order) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a <= max_order; ++a)
    for (int b = 0; a + b <= max_order; ++b) out.push_back({a, b});
  return out;
}

void enumerate_slot_tuples(const std::vector<std::pair<int, int>>& choices, int arity,
                           std::vector<Slots>& out) {
  Slots cur;
  cur.v.assign(arity, {0, 0});
  std::vector<size_t> idx(arity, 0);
  if (arity == 0) {
    out.push_back(Slots{});
    return;
  }
  while (true) {
    for (int t = 0; t < arity; ++t) cur.v[t] = choices[idx[t]];
    out.push_back(cur);
    int t = arity - 1;
    while (t >= 0 && ++idx[t] == choices.size()) idx[t--] = 0;
    if (t < 0) break;
  }
}

}  // namespace

std::vector<Cochain> window_basis(const FieldDesc& fd, const CochainWindow& w, int u, int v) {
  std::vector<Cochain> out;
  std::vector<Slots> tuples;
  enumerate_slot_tuples(slot_choices(w.max_slot_order), w.arity, tuples);
  for (const Slots& s : tuples) {
    int sa = 0, sb = 0;
    for (const auto& [a, b] : s.v) {
      sa += a;
      sb += b;
    }
    const int A = u + sa, B = v + sb;
    if (A < 0 || B < 0 || A > w.max_coeff_deg || B > w.max_coeff_deg) continue;
    Cochain c(fd, w.arity);
    c.add_term(s, CommPoly::monomial(fd, A, B));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Cochain> window_basis_free(const FieldDesc& fd, const CochainWindow& w) {
  std::vector<Cochain> out;
  std::vector<Slots> tuples;
  enumerate_slot_tuples(slot_choices(w.max_slot_order), w.arity, tuples);
  for (const Slots& s : tuples)
    for (int A = 0; A <= w.max_coeff_deg; ++A)
      for (int B = 0; B <= w.max_coeff_deg; ++B) {
        Cochain c(fd, w.arity);
        c.add_term(s, CommPoly::monomial(fd, A, B));
        out.push_back(std::move(c));
      }
  return out;
}

namespace {

using TermKey = std::pair<Slots, CommPoly::Key>;

void collect_keys(const Cochain& c, std::map<TermKey, size_t>& rows) {
  for (const auto& [s, p] : c.terms())
    for (const auto& [k, val] : p.terms()) rows.try_emplace({s, k}, 0);
}

// Solves sum_i x_i delta(basis_i) = F exactly.
std::optional<Cochain> solve_in_span(const std::vector<Cochain>& images,
                                     const std::vector<Cochain>& basis, const Cochain& F) {
  std::map<TermKey, size_t> rows;
  for (const auto& c : images) collect_keys(c, rows);
  collect_keys(F, rows);
  size_t idx = 0;
  for (auto& [k, r] : rows) r = idx++;
  const FieldDesc fd = F.field();
  linalg::Matrix m(rows.size(), images.size(), fd);
  std::vector<Scalar> rhs(rows.size(), Scalar::zero(fd));
  for (size_t c = 0; c < images.size(); ++c)
    for (const auto& [s, p] : images[c].terms())
      for (const auto& [k, val] : p.terms()) m.at(rows[{s, k}], c) = val;
  for (const auto& [s, p] : F.terms())
    for (const auto& [k, val] : p.terms()) rhs[rows[{s, k}]] = val;
  auto sol = linalg::solve(m, rhs);
  if (!sol) return std::nullopt;
  Cochain f(fd, basis.empty() ? 0 : basis[0].arity());
  for (size_t c = 0; c < basis.size(); ++c) f = f + basis[c].scaled((*sol)[c]);
  return f;
}

}  // namespace

CoboundarySolve solve_coboundary(const Cochain& F, const Cochain& m2, CochainWindow w,
                                 int max_escalations) {
  if (!coboundary(F, m2).is_zero()) throw NotACocycle("target of solve_coboundary");
  w.arity = F.arity() - 1;
  CoboundarySolve out;
  if (F.is_zero()) {
    out.witness = Cochain(F.field(), w.arity);
    out.window_used = w;
    return out;
  }
  const auto bd = F.bidegree();
  for (int esc = 0; esc <= max_escalations; ++esc) {
    std::vector<Cochain> basis = bd ? window_basis(F.field(), w, bd->first, bd->second)
                                    : window_basis_free(F.field(), w);
    std::vector<Cochain> images;
    images.reserve(basis.size());
    for (const auto& b : basis) images.push_back(coboundary(b, m2));
    auto sol = solve_in_span(images, basis, F);
    if (sol) {
      out.witness = *sol;
      out.window_used = w;
      out.escalations = esc;
      return out;
    }
    w.max_slot_order += 1;
    w.max_coeff_deg += 2;
  }
  w.max_slot_order -= 1;
  w.max_coeff_deg -= 2;
  out.window_used = w;
  out.escalations = max_escalations;
  return out;
}

ObstructionResult primary_obstruction(const Cochain& z, const Cochain& m1, CochainWindow w) {
  if (!coboundary(z).is_zero()) throw NotACocycle("input of primary_obstruction");
  ObstructionResult r{gerstenhaber(z, m1), {}, };
  if (!coboundary(r.obstruction).is_zero())
    throw NotACocycle("obstruction failed its cocycle guarantee");
  if (r.obstruction.is_zero()) {
    r.solve.witness = Cochain(z.field(), z.arity());
    r.solve.window_used = w;
    return r;
  }
  r.solve = solve_coboundary(r.obstruction, Cochain::multiplication(z.field()), w);
  return r;
}

std::array<int, 3> hkr_cohomology_dims(int r, int s) {
  if (r < -1 || s < -1) throw OutOfRange("bidegree below (-1,-1)");
  if (r >= 0 && s >= 0) return {1, 2, 1};
  if (r == -1 && s == -1) return {0, 0, 1};
  return {0, 1, 1};
}

std::size_t window_cohomology_dim(const FieldDesc& fd, int arity, int u, int v,
                                  const CochainWindow& w) {
  CochainWindow wz = w;
  wz.arity = arity;
  const std::vector<Cochain> zbasis = window_basis(fd, wz, u, v);
  if (zbasis.empty()) return 0;

  auto rank_of_delta = [&](const std::vector<Cochain>& basis) {
    std::map<TermKey, size_t> rows;
    std::vector<Cochain> images;
    images.reserve(basis.size());
    for (const auto& b : basis) {
      images.push_back(coboundary(b));
      collect_keys(images.back(), rows);
    }
    size_t idx = 0;
    for (auto& [k, r] : rows) r = idx++;
    linalg::Matrix m(std::max<size_t>(rows.size(), 1), basis.size(), fd);
    for (size_t c = 0; c < images.size(); ++c)
      for (const auto& [s, p] : images[c].terms())
        for (const auto& [k, val] : p.terms()) m.at(rows[{s, k}], c) = val;
    return linalg::rank(std::move(m));
  };

  const std::size_t kernel = zbasis.size() - rank_of_delta(zbasis);
  std::size_t image = 0;
  if (arity >= 1) {
    CochainWindow wb = w;
    wb.arity = arity - 1;
    const std::vector<Cochain> bbasis = window_basis(fd, wb, u, v);
    if (!bbasis.empty()) image = rank_of_delta(bbasis);
  }
  return kernel - image;
}

}  // namespace defcoh
