#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfano/geometry.hpp"

namespace pfano {

// lambda * phi^*A + mu * E on the Kawamata blowup Y.
struct DivisorClass {
  Rational lambda;
  Rational mu;
  bool operator==(const DivisorClass&) const = default;
};

struct BlowupData {
  int r = 1;
  int a = 1;
  Rational A3;
  Rational E3;
  Rational discrepancy() const { return Rational(1, r); }
  DivisorClass B() const { return {1, -discrepancy()}; }
};

Rational e_cubed(int r, int a);
BlowupData blowup_data(int r, int a, const Rational& A3);

// lambda1 lambda2 lambda3 A^3 + mu1 mu2 mu3 E^3; the mixed terms vanish.
Rational triple_product(const DivisorClass& d1, const DivisorClass& d2, const DivisorClass& d3,
                        const BlowupData& data);

// Conversions with the (B, E) basis: D = b B + e E.
DivisorClass from_BE(const Rational& b, const Rational& e, int r);
std::pair<Rational, Rational> to_BE(const DivisorClass& d, int r);

// Proper transform of (f = 0) for f of the given degree with ord_E(f) = ord.
inline DivisorClass section_class(int degree, const Rational& ord) { return {Rational(degree), -ord}; }

// Weight 1/r(b_0..b_6) on the chart x_k = 1; num[k] is 0.
struct AdmissibleWeight {
  int r = 1;
  int centre = -1;
  FractionalWeight w;
  Rational ord(int i) const {
    Rational q(w.num[i], r);
    q.canonicalize();
    return q;
  }
};

AdmissibleWeight initial_weight(const WeightSystem& ws, int k);
bool is_admissible(const AdmissibleWeight& w, const WeightSystem& ws);
// Builds 1/r(b...) from a list of numerators given in coordinate order with the centre skipped.
AdmissibleWeight weight_from_list(const WeightSystem& ws, int k, const std::array<int, 6>& b);

struct KBLResult {
  bool ok = false;
  std::array<Elimination, 3> matching{};  // coordinate x_i eliminated by equation j
  std::array<int, 3> tangent{};
  std::array<FpPoly, 5> lowest;           // lowest w-parts of every F_j on the chart
  std::array<Rational, 5> lowest_weight;
  std::array<int, 3> ci_degrees{};        // r times the w-weight of each matched equation
  std::string diagnostic;
};

// Checks the Kawamata blowup condition for a point of type 1/r(1,a,r-a) at p_k.
KBLResult kbl_check(const Equations& X, const WeightSystem& ws, int k, int a, const AdmissibleWeight& w);

// Repeatedly raises b_i by r while a matched equation has lowest part a multiple of x_i alone.
struct OrdBounds {
  AdmissibleWeight w;
  KBLResult kbl;
  int bumps = 0;
};
OrdBounds ord_lower_bounds(const Equations& X, const WeightSystem& ws, int k, int a, AdmissibleWeight start);
Rational ord_lower_bound(const Equations& X, const WeightSystem& ws, int k, int a, int i);

// Elimination: replaces the pivot x_p by x_p - h so that the only term of F divisible by
// x_c^power is alpha x_c^power x_p. Returns the substitution x_p -> x_p - h.
struct Elimination1 {
  FpPoly result;
  std::map<int, FpPoly> substitution;
  int steps = 0;
};
Elimination1 eliminate_terms(const FpPoly& F, int pivot, int centre, int power, const WeightSystem& ws);

// The section obtained from the lowest w-part of F_j: re-homogenise, divide by the largest power of
// x_k, and bound its vanishing order by the weights of the remaining terms of F_j on the chart.
struct LowSection {
  FpPoly section;
  int degree = 0;
  Rational ord;
};
LowSection section_from_lowest_part(const FpPoly& F, const WeightSystem& ws, const AdmissibleWeight& w);

// Exceptional divisor data: the new quotient points on Y.
struct ExceptionalData {
  std::vector<BasketEntry> new_points;
  std::vector<FpPoly> equations;  // lowest parts of the matched equations
  std::array<int, 6> ambient{};   // weights b_i of the exceptional weighted projective space
};
ExceptionalData exceptional_data(int r, int a, const KBLResult* kbl = nullptr, const AdmissibleWeight* w = nullptr);

// Chart restriction x_k = 1.
FpPoly on_chart(const FpPoly& F, int k);
// Minimal w-weight over the monomials of G; G nonzero.
Rational min_weight(const FpPoly& G, const FractionalWeight& w);

}  // namespace pfano
