#include "doctest.h"
#include "pfano/geometry.hpp"

using namespace pfano;

namespace {

const PrimeField kF(10007);

Equations member_equations(const std::string& id, std::uint64_t seed, FpMatrix* keep = nullptr) {
  FpMatrix M = sample_member(family(id), seed, kF);
  if (keep) *keep = M;
  return compute_pfaffians(M);
}

}  // namespace

TEST_CASE("well-formedness") {
  CHECK(wellformed_check(family("deg42").space));
  CHECK(wellformed_check({{1, 1, 1, 1, 1, 1, 1}, {}}));
  CHECK_FALSE(wellformed_check({{2, 2, 2, 2, 2, 2, 3}, {}}));
  for (const auto& s : family_catalog()) CHECK(wellformed_check(s.space));
}

TEST_CASE("vertex membership") {
  auto X = member_equations("deg42", 1);
  const auto& ws = family("deg42").space;
  CHECK_FALSE(vertex_membership(X, ws.index_of("w")));
  CHECK(vertex_membership(X, ws.index_of("t")));
  Equations none;
  for (auto& F : none) F = FpPoly::variable(kF, 0);
  CHECK(vertex_membership(none, 3));
}

TEST_CASE("quasi-smoothness and type at vertices") {
  const auto& s42 = family("deg42");
  auto X = member_equations("deg42", 1);
  int t = s42.space.index_of("t");
  auto res = quasismooth_at_vertex(X, s42.space, t);
  REQUIRE(res.point.has_value());
  CHECK(res.point->type() == "1/7(1,1,6)");
  CHECK(res.point->tangent_weights == std::array<int, 3>{1, 6, 8});
  CHECK(res.point->eliminated.size() == 3);
  CHECK(classify_type_I(*res.point, s42.A3) == CentreKind::NotTypeI);

  // The index-4 point sits on the (y, v) line; v -> v + c*y^2 moves it to p_y.
  const auto& s20 = family("deg20");
  FpMatrix M20 = sample_member(s20, 2, kF);
  auto scan = singular_scan(compute_pfaffians(M20), s20.space, 2);
  bool seen = false;
  for (const auto& o : scan.orbits)
    if (o.r == 4) {
      auto q = type_rational_orbit(M20, o);
      REQUIRE(q.has_value());
      CHECK(q->vertex == s20.space.index_of("y"));
      CHECK(q->type() == "1/4(1,1,3)");
      seen = true;
    }
  CHECK(seen);

  // Remove every t^l*y monomial: the Jacobian at p_t loses rank.
  int y = s42.space.index_of("y");
  for (auto& F : X) {
    FpPoly G(kF);
    for (const auto& [e, c] : F.terms()) {
      bool hit = e[y] == 1;
      for (int i = 0; i < kVars && hit; ++i)
        if (i != y && i != t && e[i]) hit = false;
      if (!hit) G.add_term(e, c);
    }
    F = G;
  }
  auto bad = quasismooth_at_vertex(X, s42.space, t);
  CHECK_FALSE(bad.point.has_value());
  CHECK(bad.diagnostic.find("not quasi-smooth") != std::string::npos);
  CHECK_FALSE(quasismooth_at_vertex(member_equations("deg42", 1), s42.space, s42.space.index_of("w")).point);
}

TEST_CASE("terminal type normalisation") {
  CHECK(terminal_type(7, {1, 1, 6}) == 1);
  CHECK(terminal_type(5, {2, 3, 1}) == 2);
  CHECK(terminal_type(5, {4, 2, 3}) == 2);  // scaled by 2 it is (3,4,1)
  CHECK(terminal_type(2, {1, 1, 1}) == 1);
  CHECK_FALSE(terminal_type(5, {1, 1, 1}).has_value());
  CHECK_FALSE(terminal_type(4, {1, 2, 2}).has_value());
}

TEST_CASE("Type I classification") {
  QuotientPoint p;
  p.r = 7;
  p.a = 1;
  p.has_integer_weights = true;
  p.tangent_weights = {1, 1, 6};
  CHECK(classify_type_I(p, Rational(1, 42)) == CentreKind::NotTypeI);
  CHECK(classify_type_I(p, Rational(1, 41)) == CentreKind::TypeI);
  QuotientPoint q;
  q.r = 5;
  q.a = 2;
  q.has_integer_weights = true;
  q.tangent_weights = {3, 1, 2};
  CHECK(classify_type_I(q, Rational(1, 4)) == CentreKind::TypeI);
  q.has_integer_weights = false;
  CHECK(classify_type_I(q, Rational(1, 4)) == CentreKind::NotTypeI);
}

TEST_CASE("baskets on seeds 1-5 match the catalog, no Type I centres") {
  for (const auto& spec : family_catalog())
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      FpMatrix M;
      auto X = member_equations(spec.id, seed, &M);
      auto scan = singular_scan(X, spec.space, seed);
      CHECK(scan.problems.empty());
      CHECK_MESSAGE(basket_of(scan) == spec.basket, spec.id << " seed " << seed);
      for (const auto& o : scan.orbits) {
        CHECK(o.terminal);
        CHECK(terminal_type(o.r, o.residues) == o.a);
        if (auto q = type_rational_orbit(M, o)) {
          CHECK(q->type() == type_str(o.r, o.a));
          CHECK(classify_type_I(*q, spec.A3) == CentreKind::NotTypeI);
        }
      }
    }
}

TEST_CASE("equal-weight strata") {
  const auto& s30 = family("deg30");
  auto X = member_equations("deg30", 1);
  auto st = stratum_singularities(X, s30.space, s30.space.index_of("y0"), s30.space.index_of("y1"), 1);
  CHECK_FALSE(st.degenerate);
  Rational c114, c123;
  for (const auto& p : st.points) (p.a == 1 ? c114 : c123) += p.count;
  CHECK(c114 == 1);
  CHECK(c123 == 2);

  const auto& s4 = family("deg4");
  auto Y = member_equations("deg4", 3);
  auto st4 = stratum_singularities(Y, s4.space, s4.space.index_of("z0"), s4.space.index_of("z1"), 3);
  Rational n;
  for (const auto& p : st4.points) {
    CHECK(p.r == 3);
    CHECK(p.a == 1);
    n += p.count;
  }
  CHECK(n == 3);

  // A double root on the line is reported as degenerate.
  Equations D;
  for (auto& F : D) F = FpPoly(kF);
  int z0 = s4.space.index_of("z0"), z1 = s4.space.index_of("z1");
  D[0] = FpPoly::variable(kF, z0).pow(2) * FpPoly::variable(kF, z1);
  CHECK(stratum_singularities(D, s4.space, z0, z1, 1).degenerate);
  CHECK_THROWS(stratum_singularities(D, s4.space, 0, z1, 1));
}

TEST_CASE("moving a stratum point to a vertex") {
  const auto& s30 = family("deg30");
  FpMatrix M = sample_member(s30, 2, kF);
  auto X = compute_pfaffians(M);
  int y0 = s30.space.index_of("y0"), y1 = s30.space.index_of("y1");
  auto st = stratum_singularities(X, s30.space, y0, y1, 2);
  int moved = 0;
  for (const auto& p : st.points) {
    if (p.orbit.minimal.degree() != 1) continue;
    int k = std::find(p.support.begin(), p.support.end(), y1) != p.support.end() ? y1 : y0;
    auto sub = move_to_vertex(p, s30.space, k, kF);
    auto Xm = compute_pfaffians(substitute_entries(M, sub));
    CHECK(vertex_membership(Xm, k));
    auto q = quasismooth_at_vertex(Xm, s30.space, k);
    REQUIRE(q.point.has_value());
    CHECK(q.point->a == p.a);
    ++moved;
  }
  CHECK(moved >= 1);
}
