#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfano/ideal.hpp"
#include "pfano/pfaffian.hpp"

namespace pfano {

using Equations = std::array<FpPoly, 5>;

// Coordinate x_coord is solved from equation `equation` through the monomial x_k^power * x_coord.
struct Elimination {
  int coord = -1;
  int equation = -1;
  int power = 0;
};

struct QuotientPoint {
  int vertex = -1;           // set when the point is the coordinate vertex p_k
  std::vector<int> support;  // coordinates not vanishing at the point
  int r = 1;
  int a = 0;
  std::array<int, 3> local_weights{};  // residues mod r of the tangent directions
  bool has_integer_weights = false;
  std::array<int, 3> tangent_weights{};  // ambient weights of the tangent coordinates (vertex only)
  std::array<int, 3> tangent_indices{};
  std::vector<Elimination> eliminated;  // three entries: X has codimension 3
  std::string type() const { return type_str(r, a); }
};

bool wellformed_check(const WeightSystem& ws);

// p_k lies on X iff no equation contains a pure power of x_k.
bool vertex_membership(const Equations& X, int k);

struct VertexAnalysis {
  std::optional<QuotientPoint> point;
  std::string diagnostic;  // filled when the vertex is not on X or X is not quasi-smooth there
};

VertexAnalysis quasismooth_at_vertex(const Equations& X, const WeightSystem& ws, int k);

// Normalises a residue triple to (1, a, r - a) and returns a, or nullopt when it is not terminal.
std::optional<int> terminal_type(int r, std::array<int, 3> residues);

enum class CentreKind { TypeI, NotTypeI };
CentreKind classify_type_I(const QuotientPoint& p, const Rational& A3);

// One Galois orbit of singular points found by the scan.
struct SingularOrbit {
  int r = 0;
  int a = 0;
  PointOrbit orbit;        // coordinates in the chart where it was found
  int chart = -1;          // coordinate set to 1
  std::vector<int> support;
  Rational count;          // number of projective points this orbit contributes
  bool quasi_smooth = true;
  bool terminal = true;
  bool reduced = true;
  std::array<int, 3> residues{};
};

struct SingularScan {
  std::vector<SingularOrbit> orbits;
  std::vector<std::string> problems;  // non-reduced, non-quasi-smooth, non-terminal or unsolvable loci
};

// Every point of X whose isotropy is nontrivial, found by solving X on each locus P(Pi_r).
SingularScan singular_scan(const Equations& X, const WeightSystem& ws, std::uint64_t seed,
                           std::size_t budget = kDefaultBudget);

std::vector<BasketEntry> basket_of(const SingularScan& scan);
std::vector<BasketEntry> normalised_basket(std::vector<BasketEntry> b);

// Points with r >= 2 on the line of two equal-weight coordinates, classified. Orbits of degree > 1
// are reported through `extension_needed` with their minimal polynomial.
struct StratumResult {
  std::vector<SingularOrbit> points;
  std::vector<UPoly> extension_needed;
  bool degenerate = false;
};
StratumResult stratum_singularities(const Equations& X, const WeightSystem& ws, int i, int j, std::uint64_t seed);

// Substitution x_i -> x_i + c_i x_k^(a_i / a_k) taking the vertex p_k to an F_p-rational point of
// the orbit. k must be in the support and have weight r.
std::map<int, FpPoly> move_to_vertex(const SingularOrbit& o, const WeightSystem& ws, int k, const PrimeField& f);

// Integer tangent weights and elimination data for a rational orbit, computed after moving it to a
// vertex. Returns nullopt when no support coordinate has weight r.
std::optional<QuotientPoint> type_rational_orbit(const SyzygyMatrix<PrimeField>& M, const SingularOrbit& o);

// The member after the move, with the orbit sitting at the vertex p_vertex.
struct CentredMember {
  SyzygyMatrix<PrimeField> M;
  int vertex = -1;
  QuotientPoint point;
};
// prefer names a vertex to use when several support coordinates have weight r.
std::optional<CentredMember> centre_member(const SyzygyMatrix<PrimeField>& M, const SingularOrbit& o, int prefer = -1);

}  // namespace pfano
