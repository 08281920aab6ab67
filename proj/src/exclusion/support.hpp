#pragma once

// Helpers shared by the exclusion sources; not part of the public interface.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pfano/exclusion.hpp"

namespace pfano::detail {

// The exponent of a monomial written in the variable names of ws, e.g. "z^2*y".
Exponent mon(const WeightSystem& ws, const std::string& text);
std::uint32_t coef(const FpPoly& f, const WeightSystem& ws, const std::string& text);
void set_coef(FpPoly& f, const WeightSystem& ws, const std::string& text, std::uint32_t value);

// Terms of f whose exponent of var equals power and whose other variables lie in rest_mask,
// with var^power divided out.
FpPoly part_in(const FpPoly& f, int var, int power, std::uint8_t rest_mask);

// Coefficients of the linear monomials v0, v1 in f (times an optional cofactor monomial).
std::array<std::uint32_t, 2> linear_pair(const FpPoly& f, const WeightSystem& ws, const std::string& cofactor,
                                         const std::string& v0, const std::string& v1);

std::uint32_t det2(const PrimeField& f, const std::array<std::uint32_t, 2>& a, const std::array<std::uint32_t, 2>& b);
bool proportional(const PrimeField& f, const std::array<std::uint32_t, 2>& a, const std::array<std::uint32_t, 2>& b);

// x_v -> c x_v on every entry.
FpMatrix scale_variable(const FpMatrix& M, int v, std::uint32_t c);
// Linear change of two equal-weight variables after which the form c_i x_i + c_j x_j becomes x_j.
std::map<int, FpPoly> make_form_coordinate(const PrimeField& f, int i, int j, std::uint32_t ci, std::uint32_t cj);

// Binary form in (u0, u1) given by coefficients of u0^d, u0^(d-1) u1, ..., u1^d.
std::vector<std::uint32_t> binary_form(const FpPoly& f, int u0, int u1, int d, const Exponent& cofactor = {});
std::uint32_t eval_binary(const PrimeField& f, const std::vector<std::uint32_t>& form, std::uint32_t a0,
                          std::uint32_t a1);
// True when the binary forms have a common zero in P^1 over the algebraic closure.
bool common_root(const PrimeField& f, const std::vector<std::vector<std::uint32_t>>& forms);

// Number of points of V(eqs) in the weighted projective space on the variables `order`, counted
// stratum by stratum (the first variable set to 1, the earlier ones to 0). Fails for
// positive-dimensional strata.
struct PointCount {
  bool ok = false;
  Rational points;
  bool radical = true;
  std::string diagnostic;
};
PointCount count_points(const std::vector<FpPoly>& eqs, const std::vector<int>& order,
                        const std::array<int, kVars>& weights, std::uint64_t seed, std::size_t budget);

// Gröbner dimension of the affine cone of (polys) over the variables in mask, with single-variable
// generators substituted away first. Throws BudgetExceeded.
int cone_dimension(std::vector<FpPoly> polys, std::uint8_t mask, std::size_t budget);

std::uint8_t mask_without(int k);
std::uint8_t mask_of(const WeightSystem& ws, const std::vector<std::string>& names);

std::string str(const Rational& q);

}  // namespace pfano::detail
