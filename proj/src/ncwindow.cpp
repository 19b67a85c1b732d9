#include "defcoh/ncwindow.hpp"

#include "defcoh/errors.hpp"
#include "defcoh/linalg.hpp"

namespace defcoh {

namespace {

NCPoly eval_linear(const AlgebraSpec& alg, const NCOneCochain& f, const NCPoly& p) {
  NCPoly out(alg);
  for (const auto& [k, c] : p.terms()) {
    auto it = f.find(k);
    if (it != f.end()) out = out + it->second.scaled(c);
  }
  return out;
}

}  // namespace

NCPoly nc_delta1(const AlgebraSpec& alg, const NCOneCochain& f, NCPoly::Key a, NCPoly::Key b) {
  const NCPoly ma = NCPoly::monomial(alg, a.first, a.second);
  const NCPoly mb = NCPoly::monomial(alg, b.first, b.second);
  NCPoly fa(alg), fb(alg);
  if (auto it = f.find(a); it != f.end()) fa = it->second;
  if (auto it = f.find(b); it != f.end()) fb = it->second;
  return ma * fb - eval_linear(alg, f, ma * mb) + fa * mb;
}

std::optional<NCOneCochain> solve_nc_coboundary(
    const AlgebraSpec& alg, const std::function<NCPoly(NCPoly::Key, NCPoly::Key)>& G,
    const NCCoboundaryProbe& probe) {
  // Unknown support: f is defined on every monomial reachable by products of
  // window pairs, one diagonal strip of values per domain monomial.
  const int dom = 2 * probe.pair_bound;
  struct Unknown {
    NCPoly::Key dom_key;
    NCPoly::Key val_key;
  };
  std::vector<Unknown> unknowns;
  std::map<std::pair<NCPoly::Key, NCPoly::Key>, size_t> unknown_index;
  for (int i = 0; i <= dom; ++i)
    for (int j = 0; j <= dom; ++j)
      for (int t = 0; t <= probe.tail; ++t) {
        const int a = i + probe.gu - t, b = j + probe.gv - t;
        if (a < 0 || b < 0) continue;
        unknown_index[{{i, j}, {a, b}}] = unknowns.size();
        unknowns.push_back({{i, j}, {a, b}});
      }

  // Equations: coefficients of (delta f)(a,b) - G(a,b) per target monomial.
  std::map<std::pair<std::pair<NCPoly::Key, NCPoly::Key>, NCPoly::Key>, size_t> rows;
  std::vector<std::map<size_t, Scalar>> row_entries;  // row -> col -> coeff
  std::vector<Scalar> rhs;
  auto row_of = [&](const std::pair<NCPoly::Key, NCPoly::Key>& pr, const NCPoly::Key& tgt) {
    auto [it, fresh] = rows.try_emplace({pr, tgt}, row_entries.size());
    if (fresh) {
      row_entries.emplace_back();
      rhs.push_back(Scalar::zero(alg.field));
    }
    return it->second;
  };
  auto add_value_contrib = [&](const std::pair<NCPoly::Key, NCPoly::Key>& pr,
                               const NCPoly::Key& dom_key, const Scalar& scale, bool left,
                               const NCPoly::Key& other) {
    // contribution of scale * (other_monomial * f(dom_key)) or (f(dom_key) * other_monomial)
    for (int t = 0; t <= probe.tail; ++t) {
      const int a = dom_key.first + probe.gu - t, b = dom_key.second + probe.gv - t;
      if (a < 0 || b < 0) continue;
      const size_t col = unknown_index.at({dom_key, {a, b}});
      const NCPoly mono = NCPoly::monomial(alg, a, b);
      const NCPoly om = NCPoly::monomial(alg, other.first, other.second);
      const NCPoly prod = left ? om * mono : mono * om;
      for (const auto& [k, c] : prod.terms()) row_entries[row_of(pr, k)][col] += c * scale;
    }
  };

  const Scalar one = Scalar::one(alg.field);
  for (int ai = 0; ai <= probe.pair_bound; ++ai)
    for (int aj = 0; aj <= probe.pair_bound; ++aj)
      for (int bi = 0; bi <= probe.pair_bound; ++bi)
        for (int bj = 0; bj <= probe.pair_bound; ++bj) {
          const NCPoly::Key a{ai, aj}, b{bi, bj};
          const std::pair<NCPoly::Key, NCPoly::Key> pr{a, b};
          // a * f(b)
          add_value_contrib(pr, b, one, /*left=*/true, a);
          // f(a) * b
          add_value_contrib(pr, a, one, /*left=*/false, b);
          // - f(ab)
          const NCPoly prod =
              NCPoly::monomial(alg, ai, aj) * NCPoly::monomial(alg, bi, bj);
          for (const auto& [k, c] : prod.terms()) {
            for (int t = 0; t <= probe.tail; ++t) {
              const int va = k.first + probe.gu - t, vb = k.second + probe.gv - t;
              if (va < 0 || vb < 0) continue;
              auto it = unknown_index.find({k, {va, vb}});
              if (it == unknown_index.end())
                throw InvalidParameters("coboundary window does not cover product monomials");
              const NCPoly mono = NCPoly::monomial(alg, va, vb);
              for (const auto& [mk, mc] : mono.terms())
                row_entries[row_of(pr, mk)][it->second] += -(c * mc);
            }
          }
          // rhs
          for (const auto& [k, c] : G(a, b).terms()) rhs[row_of(pr, k)] += c;
        }

  linalg::Matrix m(row_entries.size(), unknowns.size(), alg.field);
  std::vector<Scalar> bvec(row_entries.size(), Scalar::zero(alg.field));
  for (size_t r = 0; r < row_entries.size(); ++r) {
    for (const auto& [c, v] : row_entries[r]) m.at(r, c) = v;
    bvec[r] = rhs[r];
  }
  auto sol = linalg::solve(m, bvec);
  if (!sol) return std::nullopt;
  NCOneCochain f;
  for (size_t c = 0; c < unknowns.size(); ++c) {
    if ((*sol)[c].is_zero()) continue;
    auto& val = f[unknowns[c].dom_key];
    if (val.terms().empty()) val = NCPoly(alg);
    val.add_term(unknowns[c].val_key.first, unknowns[c].val_key.second, (*sol)[c]);
  }
  return f;
}

std::size_t graded_h1_dim(const AlgebraSpec& alg, int u, int v) {
  if (!alg.graded()) throw InvalidParameters("graded_h1_dim requires hbar = 0");
  const auto ders = derivation_basis(alg, u, v);
  size_t inner = 0;
  if (u >= 0 && v >= 0) {
    const Derivation ad = inner_derivation(NCPoly::monomial(alg, u, v));
    if (!ad.is_zero()) inner = 1;
  }
  return ders.size() - inner;
}

}  // namespace defcoh
