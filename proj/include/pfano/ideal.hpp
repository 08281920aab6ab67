#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "pfano/wpoly.hpp"

namespace pfano {

// Graded reverse lexicographic order on the plain total degree. perm lists the variables
// from most to least significant; the identity is x0 > x1 > ... > x6.
struct MonomialOrder {
  std::array<int, kVars> perm{0, 1, 2, 3, 4, 5, 6};

  // true iff a > b
  bool greater(const Exponent& a, const Exponent& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (int k = kVars - 1; k >= 0; --k) {
      int v = perm[k];
      if (a[v] != b[v]) return a[v] < b[v];
    }
    return false;
  }
};

struct GroebnerBasis {
  PrimeField field;
  MonomialOrder order;
  std::vector<FpPoly> generators;  // monic, sorted by leading monomial
  bool reduced = false;

  bool is_unit_ideal() const;
  Exponent leading(std::size_t i) const;
};

// Raised when the pair/step budget runs out. Callers treat this as "inconclusive".
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultBudget = 200000;

GroebnerBasis buchberger(const std::vector<FpPoly>& gens, const MonomialOrder& order = {},
                         std::size_t budget = kDefaultBudget);

Exponent leading_monomial(const FpPoly& f, const MonomialOrder& order);

FpPoly normal_form(const FpPoly& f, const GroebnerBasis& gb);

FpPoly s_polynomial(const FpPoly& f, const FpPoly& g, const MonomialOrder& order);

// True when every S-polynomial of basis pairs reduces to zero.
bool is_groebner(const GroebnerBasis& gb);

// Krull dimension of V(I) in affine space over the variables in mask; -1 for the empty set.
int affine_dimension(const GroebnerBasis& gb, std::uint8_t mask = 0x7f);

// Standard monomials for a zero-dimensional ideal (empty optional if not zero-dimensional).
std::optional<std::vector<Exponent>> standard_monomials(const GroebnerBasis& gb, std::uint8_t mask = 0x7f);

// ---------------------------------------------------------------------------
// Dense univariate polynomials over F_p, coefficients low to high, no trailing zeros.
struct UPoly {
  std::vector<std::uint32_t> c;
  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
};

namespace upoly {
void trim(UPoly& a);
UPoly add(const UPoly& a, const UPoly& b, const PrimeField& f);
UPoly sub(const UPoly& a, const UPoly& b, const PrimeField& f);
UPoly mul(const UPoly& a, const UPoly& b, const PrimeField& f);
void divmod(const UPoly& a, const UPoly& b, const PrimeField& f, UPoly& q, UPoly& r);
UPoly mod(const UPoly& a, const UPoly& b, const PrimeField& f);
UPoly monic(const UPoly& a, const PrimeField& f);
UPoly gcd(UPoly a, UPoly b, const PrimeField& f);
UPoly derivative(const UPoly& a, const PrimeField& f);
UPoly powmod(const UPoly& base, std::uint64_t e, const UPoly& m, const PrimeField& f);
UPoly squarefree_part(const UPoly& a, const PrimeField& f);
std::uint32_t eval(const UPoly& a, std::uint32_t x, const PrimeField& f);
// Monic irreducible factors of a squarefree polynomial.
std::vector<UPoly> factor_squarefree(const UPoly& a, const PrimeField& f, std::mt19937_64& rng);
}  // namespace upoly

// The finite field F_p[theta]/(q) for an irreducible monic q.
class ExtField {
 public:
  using Elem = std::vector<std::uint32_t>;  // length deg q, low to high

  ExtField(PrimeField base, UPoly modulus);

  int degree() const { return modulus_.degree(); }
  const PrimeField& base() const { return base_; }
  Elem zero() const { return Elem(degree(), 0); }
  Elem one() const;
  Elem embed(std::uint32_t a) const;
  Elem theta() const;
  Elem from_upoly(const UPoly& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  bool is_zero(const Elem& a) const;

  int rank(std::vector<std::vector<Elem>> m) const;

 private:
  PrimeField base_;
  UPoly modulus_;
};

// Geometric points of a zero-dimensional ideal grouped by Galois orbit.
struct PointOrbit {
  UPoly minimal;                       // irreducible factor of the separating form's polynomial
  std::array<UPoly, kVars> coords{};   // coordinate i = coords[i](theta) in F_p[theta]/(minimal)
};

struct ZeroDimSolution {
  std::vector<PointOrbit> orbits;
  bool radical = true;                 // false when the separating form had repeated roots
  std::size_t quotient_dimension = 0;  // length of the scheme
};

// Solves a zero-dimensional system over the closure of F_p. Variables outside mask are ignored
// (they must not occur). Throws std::runtime_error when the ideal is not zero-dimensional.
ZeroDimSolution solve_zero_dim(const std::vector<FpPoly>& gens, std::uint8_t mask, std::uint64_t seed,
                               std::size_t budget = kDefaultBudget);

}  // namespace pfano
