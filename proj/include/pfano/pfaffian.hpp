#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pfano/wpoly.hpp"

namespace pfano {

// Upper-triangle entries of a 5x5 skew matrix, stored in the order
// m12 m13 m14 m15 m23 m24 m25 m34 m35 m45.
constexpr int kEntries = 10;

// Index into the entry array for 1-based 1 <= i < j <= 5.
constexpr int entry_index(int i, int j) {
  constexpr int base[5] = {0, 4, 7, 9, 10};
  return base[i - 1] + (j - i - 1);
}

std::string entry_name(int k);  // "m12", ...

enum class Verdict { Excluded, QuadraticInvolution, LinkExists };
std::string verdict_str(Verdict v);

struct BasketEntry {
  int r = 0;
  int a = 0;  // normalised so that 1 <= a <= r - a
  int multiplicity = 1;
  bool operator==(const BasketEntry&) const = default;
};

std::string type_str(int r, int a);  // "1/5(1,2,3)"

// One row of the final table: a singularity type with its verdict and the generality conditions
// the argument depends on.
struct TableRow {
  int r = 0;
  int a = 0;
  int multiplicity = 1;
  Verdict verdict = Verdict::Excluded;
  std::vector<std::string> conditions;
};

struct FamilySpec {
  std::string id;
  WeightSystem space;
  std::array<int, 5> pfaffian_degrees{};
  std::array<int, kEntries> entry_degrees{};
  Rational A3;
  std::vector<BasketEntry> basket;
  int sigma = 0;
  std::vector<TableRow> table;
  bool has_type_II1 = false;  // catalog metadata only
};

const std::vector<FamilySpec>& family_catalog();
const FamilySpec& family(const std::string& id);  // throws std::out_of_range

// Doubled half-degrees 2q_i with e_ij = q_i + q_j, when the system is solvable.
std::optional<std::array<int, 5>> half_degrees(const std::array<int, kEntries>& entry_degrees);

// deg F_i = sum of q_j over j != 6 - i.
std::array<int, 5> pfaffian_degrees_from_entries(const std::array<int, kEntries>& entry_degrees);

template <class F>
struct SyzygyMatrix {
  WeightSystem space;
  std::array<int, kEntries> entry_degrees{};
  std::array<Poly<F>, kEntries> entries{};

  const Poly<F>& at(int i, int j) const { return entries[entry_index(i, j)]; }
  Poly<F>& at(int i, int j) { return entries[entry_index(i, j)]; }

  // Skew access with m_ji = -m_ij and zero diagonal.
  Poly<F> m(int i, int j) const {
    if (i == j) return Poly<F>(entries[0].field());
    return i < j ? at(i, j) : -at(j, i);
  }

  // Empty string when every entry is homogeneous of its declared degree.
  std::string validate() const;
};

template <class F>
std::string SyzygyMatrix<F>::validate() const {
  for (int k = 0; k < kEntries; ++k) {
    const auto& e = entries[k];
    if (e.is_zero()) continue;
    auto d = e.weighted_degree(space);
    if (!d) return entry_name(k) + " is not homogeneous";
    if (*d != entry_degrees[k])
      return entry_name(k) + " has degree " + std::to_string(*d) + ", expected " + std::to_string(entry_degrees[k]);
  }
  if (!half_degrees(entry_degrees)) return "entry degrees admit no half-degree solution";
  return {};
}

// Pfaffian of the principal 4x4 block on indices p<q<r<s.
template <class F>
Poly<F> pfaffian4(const SyzygyMatrix<F>& M, int p, int q, int r, int s) {
  return M.m(p, q) * M.m(r, s) - M.m(p, r) * M.m(q, s) + M.m(p, s) * M.m(q, r);
}

// F_i deletes row and column 6 - i.
template <class F>
std::array<Poly<F>, 5> compute_pfaffians(const SyzygyMatrix<F>& M) {
  std::array<Poly<F>, 5> out;
  for (int i = 1; i <= 5; ++i) {
    int del = 6 - i;
    std::array<int, 4> idx{};
    int n = 0;
    for (int k = 1; k <= 5; ++k)
      if (k != del) idx[n++] = k;
    out[i - 1] = pfaffian4(M, idx[0], idx[1], idx[2], idx[3]);
  }
  return out;
}

// Row i relation: sum over j of (-1)^j m_ij F_{6-j} = 0.
template <class F>
Poly<F> syzygy_row(const SyzygyMatrix<F>& M, const std::array<Poly<F>, 5>& Fs, int i) {
  Poly<F> acc(Fs[0].field());
  for (int j = 1; j <= 5; ++j) {
    if (j == i) continue;
    Poly<F> term = M.m(i, j) * Fs[6 - j - 1];
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

template <class F>
bool syzygy_identity_check(const SyzygyMatrix<F>& M, const std::array<Poly<F>, 5>& Fs) {
  for (int i = 1; i <= 5; ++i)
    if (!syzygy_row(M, Fs, i).is_zero()) return false;
  return true;
}

// Random homogeneous polynomial of weighted degree d using only the variables in mask.
FpPoly random_homogeneous(const PrimeField& f, const WeightSystem& ws, int d, std::mt19937_64& rng,
                          std::uint8_t mask = 0x7f);

// Every monomial of weighted degree d in the variables of mask.
std::vector<Exponent> monomials_of_degree(const WeightSystem& ws, int d, std::uint8_t mask = 0x7f);

using FpMatrix = SyzygyMatrix<PrimeField>;

FpMatrix sample_member(const FamilySpec& spec, std::uint64_t seed, const PrimeField& field);

// Number of members with seeds first..first+count-1 whose Pfaffians fail the syzygy identity.
// parallel spreads the members over OpenMP threads; the serial path is the reference.
std::size_t syzygy_failures(const FamilySpec& spec, std::uint64_t first, std::size_t count, const PrimeField& field,
                            bool parallel = true);

// Applies a substitution to every entry.
template <class F>
SyzygyMatrix<F> substitute_entries(const SyzygyMatrix<F>& M, const std::map<int, Poly<F>>& sub) {
  SyzygyMatrix<F> out = M;
  for (auto& e : out.entries) e = substitute(e, sub, &M.space);
  return out;
}

}  // namespace pfano
