#pragma once

#include <functional>
#include <map>
#include <optional>

#include "defcoh/ncpoly.hpp"

namespace defcoh {

// Window model for cochains of the two-generator algebras themselves:
// 1-cochains are stored by their values on the pseudopolynomial basis.
// Used for coboundary probes against bidegree-homogeneous 2-cochains.

using NCOneCochain = std::map<NCPoly::Key, NCPoly>;  // monomial -> value; absent = 0

// (delta f)(a, b) = a f(b) - f(ab) + f(a) b, f extended linearly.
NCPoly nc_delta1(const AlgebraSpec& alg, const NCOneCochain& f, NCPoly::Key a, NCPoly::Key b);

struct NCCoboundaryProbe {
  int pair_bound = 3;  // both arguments range over monomials with exponents <= this
  int gu = 0, gv = 0;  // bidegree shift of the sought 1-cochain
  int tail = 0;        // extra lower diagonal terms per value (0 for graded algebras)
};

// Searches for f with (delta f)(a,b) = G(a,b) on every monomial pair in the
// window; f(x^i y^j) is supported on x^{i+gu-t} y^{j+gv-t}, t <= tail.
// nullopt means no witness exists within this window.
std::optional<NCOneCochain> solve_nc_coboundary(
    const AlgebraSpec& alg, const std::function<NCPoly(NCPoly::Key, NCPoly::Key)>& G,
    const NCCoboundaryProbe& probe);

// H^1 dimension at one bidegree of a graded algebra (hbar = 0): derivations
// of that bidegree modulo the inner derivation of the matching monomial.
std::size_t graded_h1_dim(const AlgebraSpec& alg, int u, int v);

}  // namespace defcoh
