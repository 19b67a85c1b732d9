#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "defcoh/commpoly.hpp"

namespace defcoh {

// Differential pattern of one polydifferential term: per argument the
// (d/dx, d/dy) orders applied to it.
struct Slots {
  std::vector<std::pair<int, int>> v;
  auto operator<=>(const Slots&) const = default;
};

// Hochschild n-cochain on k[x,y] as a finite sum of polydifferential terms
// coeff(x,y) * prod_t dx^{a_t} dy^{b_t} applied to argument t. Arity 0 means
// an element of the algebra. Canonical form: terms merged on equal slot
// patterns, zero coefficients dropped; equal maps == equal operators.
class Cochain {
 public:
  Cochain() : fd_(FieldDesc::rationals()), arity_(0) {}
  Cochain(const FieldDesc& fd, int arity) : fd_(fd), arity_(arity) {}

  static Cochain element(const CommPoly& p);  // arity 0
  static Cochain partial(const FieldDesc& fd, int a, int b);  // arity 1, dx^a dy^b
  // a dx + b dy as a first-order 1-cochain
  static Cochain vector_field(const CommPoly& a, const CommPoly& b);
  static Cochain multiplication(const FieldDesc& fd);  // arity 2, (u,v) -> uv

  const FieldDesc& field() const { return fd_; }
  int arity() const { return arity_; }
  const std::map<Slots, CommPoly>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(const Slots& s, const CommPoly& c);
  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;
  Cochain scaled(const Scalar& c) const;
  bool operator==(const Cochain& o) const;

  // Post-composition with dx^a dy^b (Leibniz across the term's factors).
  Cochain postcompose(int a, int b) const;
  // Multiply the output by a polynomial on the left.
  Cochain coeff_mul(const CommPoly& p) const;

  CommPoly apply(const std::vector<CommPoly>& args) const;

  Cochain embedded(const FieldDesc& fd) const;

  // Bidegree of a homogeneous cochain: coefficient monomial (A,B) with slot
  // sums (Sa,Sb) contributes (A-Sa, B-Sb). nullopt when mixed; zero cochain
  // reports nullopt as well.
  std::optional<std::pair<int, int>> bidegree() const;

  std::string str() const;

 private:
  FieldDesc fd_;
  int arity_;
  std::map<Slots, CommPoly> t_;
};

// f with g inserted into argument slot `pos` (0-based); arity f + g - 1.
Cochain insert(const Cochain& f, int pos, const Cochain& g);
// Pre-Lie composition sum with the standard signs.
Cochain compose(const Cochain& f, const Cochain& g);
// Gerstenhaber bracket [f, g] = f o g - (-1)^{(p-1)(q-1)} g o f.
Cochain gerstenhaber(const Cochain& f, const Cochain& g);
// Cup product through an arity-2 multiplication cochain m2.
Cochain cup_with(const Cochain& m2, const Cochain& f, const Cochain& g);
Cochain cup(const Cochain& f, const Cochain& g);  // plain multiplication
// Skew cup of two 1-cochains: (1/2)(f cup g - g cup f).
Cochain wedge(const Cochain& f, const Cochain& g);
// Hochschild coboundary: delta z = -[z, m2].
Cochain coboundary(const Cochain& z, const Cochain& m2);
Cochain coboundary(const Cochain& z);  // plain multiplication

// --- finite windows and exact solving ---

struct CochainWindow {
  int arity = 1;
  int max_slot_order = 2;  // per-slot a+b cap
  int max_coeff_deg = 6;   // per-variable coefficient degree cap
  std::string str() const;
};

// Basis of window terms pinned at one bidegree (coefficient monomial is
// determined by the slots), deterministic order.
std::vector<Cochain> window_basis(const FieldDesc& fd, const CochainWindow& w, int u, int v);
// Basis with free coefficient monomials (both exponents <= max_coeff_deg).
std::vector<Cochain> window_basis_free(const FieldDesc& fd, const CochainWindow& w);

struct CoboundarySolve {
  std::optional<Cochain> witness;  // f with delta f = F
  CochainWindow window_used;
  int escalations = 0;
};

// Exact linear solve for delta f = F over the window (escalating slot order
// +1 / coefficient degree +2 up to `max_escalations` on failure). A missing
// witness is only a statement about the final window. Throws NotACocycle if
// delta F != 0.
CoboundarySolve solve_coboundary(const Cochain& F, const Cochain& m2, CochainWindow w,
                                 int max_escalations = 3);

struct ObstructionResult {
  Cochain obstruction;  // [z, m1]
  CoboundarySolve solve;
  bool vanishes() const { return obstruction.is_zero() || solve.witness.has_value(); }
};

// Primary obstruction of a cocycle z against the infinitesimal m1.
ObstructionResult primary_obstruction(const Cochain& z, const Cochain& m1, CochainWindow w);

// Closed-form cohomology dimensions (h0, h1, h2) of k[x,y] at one bidegree;
// indices must be >= -1.
std::array<int, 3> hkr_cohomology_dims(int r, int s);

// dim (ker delta / im delta) inside the window at one bidegree, plain
// multiplication. Exact ranks; meaningful relative to the window.
std::size_t window_cohomology_dim(const FieldDesc& fd, int arity, int u, int v,
                                  const CochainWindow& w);

}  // namespace defcoh
