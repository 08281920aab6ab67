#include <algorithm>
#include <random>

#include "doctest.h"
#include "pfano/blowup.hpp"

using namespace pfano;

namespace {

const PrimeField kF(10007);

Rational rnd_q(std::mt19937_64& rng) {
  Rational q(static_cast<long>(rng() % 41) - 20, static_cast<long>(1 + rng() % 12));
  q.canonicalize();
  return q;
}

DivisorClass rnd_class(std::mt19937_64& rng) { return {rnd_q(rng), rnd_q(rng)}; }

// A deg42 member moved so that a rational point of the requested type sits at its vertex.
std::optional<CentredMember> centred(const std::string& id, int r, int a, std::uint64_t seed) {
  const auto& spec = family(id);
  for (std::uint64_t s = seed; s < seed + 20; ++s) {
    FpMatrix M = sample_member(spec, s, kF);
    auto scan = singular_scan(compute_pfaffians(M), spec.space, s);
    for (const auto& o : scan.orbits) {
      if (o.r != r || o.a != a) continue;
      if (auto c = centre_member(M, o)) return c;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("E^3 = r^2/(a(r-a))") {
  CHECK(e_cubed(2, 1) == 4);
  CHECK(e_cubed(3, 1) == Rational(9, 2));
  CHECK(e_cubed(4, 1) == Rational(16, 3));
  CHECK(e_cubed(5, 1) == Rational(25, 4));
  CHECK(e_cubed(5, 2) == Rational(25, 6));
  CHECK(e_cubed(6, 1) == Rational(36, 5));
  CHECK(e_cubed(7, 1) == Rational(49, 6));
  CHECK_THROWS(e_cubed(4, 2));
  CHECK_THROWS(e_cubed(3, 0));
}

TEST_CASE("triple products on known classes") {
  auto d42 = blowup_data(7, 1, Rational(1, 42));
  // B^3 at the 1/7 point is zero.
  CHECK(triple_product(d42.B(), d42.B(), d42.B(), d42) == 0);
  auto d2 = blowup_data(2, 1, Rational(1, 42));
  DivisorClass L{9, Rational(-1, 2)};
  CHECK(triple_product(L, d2.B(), d2.B(), d2) == qq(9, 42) - qq(1, 2));
  auto d3 = blowup_data(3, 1, Rational(1, 42));
  CHECK(triple_product({7, Rational(-1, 3)}, d3.B(), d3.B(), d3) == 0);
  // deg42 1/5(1,2,3): S = x, T = z with ord 1/5 and 6/5.
  auto d5 = blowup_data(5, 2, Rational(1, 42));
  DivisorClass S = section_class(1, Rational(1, 5)), T = section_class(6, Rational(6, 5));
  CHECK(triple_product(T, S, T, d5) == qq(6, 7) - qq(6, 5));
  auto [b, e] = to_BE(T, 5);
  CHECK(b == 6);
  CHECK(e == 0);
  CHECK(from_BE(b, e, 5) == T);
}

TEST_CASE("triple product: trilinearity and symmetry on 1000 triples") {
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 1000; ++n) {
    int r = 2 + static_cast<int>(rng() % 6);
    int a = 1;
    BlowupData d = blowup_data(r, a, Rational(1, 1 + static_cast<long>(rng() % 50)));
    DivisorClass x = rnd_class(rng), x2 = rnd_class(rng), y = rnd_class(rng), z = rnd_class(rng);
    Rational s = rnd_q(rng);
    DivisorClass comb{s * x.lambda + x2.lambda, s * x.mu + x2.mu};
    CHECK(triple_product(comb, y, z, d) == s * triple_product(x, y, z, d) + triple_product(x2, y, z, d));
    Rational v = triple_product(x, y, z, d);
    CHECK(v == triple_product(y, x, z, d));
    CHECK(v == triple_product(z, y, x, d));
    CHECK(v == triple_product(x, z, y, d));
  }
}

TEST_CASE("initial weight and admissibility") {
  const auto& s = family("deg42");
  int y = s.space.index_of("y");
  auto w = initial_weight(s.space, y);
  CHECK(w.r == 5);
  std::array<int, kVars> expect{1, 0, 1, 2, 3, 4, 5};
  CHECK(w.w.num == expect);
  CHECK(is_admissible(w, s.space));
  auto bumped = weight_from_list(s.space, y, {1, 6, 2, 3, 4, 5});
  CHECK(bumped.ord(s.space.index_of("z")) == Rational(6, 5));
  CHECK_THROWS(weight_from_list(s.space, y, {1, 2, 2, 3, 4, 5}));
}

TEST_CASE("elimination postcondition on random polynomials") {
  const auto& s = family("deg42");
  int y = s.space.index_of("y"), z = s.space.index_of("z");
  std::mt19937_64 rng(17);
  for (int n = 0; n < 30; ++n) {
    FpPoly F = random_homogeneous(kF, s.space, 16, rng);
    Exponent pe{};
    pe[y] = 2;
    pe[z] = 1;
    F.set_term(pe, 1 + static_cast<std::uint32_t>(rng() % 10006));
    auto res = eliminate_terms(F, z, y, 2, s.space);
    for (const auto& [e, c] : res.result.terms())
      if (e[y] >= 2) CHECK(e == pe);
    CHECK(substitute(F, res.substitution, &s.space) == res.result);
  }
  FpPoly G = FpPoly::variable(kF, 0).pow(16);
  CHECK_THROWS(eliminate_terms(G, z, y, 2, s.space));
}

TEST_CASE("KBL on the deg42 1/5(1,2,3) point after elimination") {
  const auto& s = family("deg42");
  auto c = centred("deg42", 5, 2, 1);
  REQUIRE(c.has_value());
  int y = s.space.index_of("y"), z = s.space.index_of("z");
  REQUIRE(c->vertex == y);
  auto X = compute_pfaffians(c->M);
  auto el = eliminate_terms(X[0], z, y, 2, s.space);
  auto M2 = substitute_entries(c->M, el.substitution);
  auto X2 = compute_pfaffians(M2);
  auto w = weight_from_list(s.space, y, {1, 6, 2, 3, 4, 5});
  auto kbl = kbl_check(X2, s.space, y, 2, w);
  CHECK(kbl.ok);
  std::array<int, 3> tang{};
  for (int t = 0; t < 3; ++t) tang[t] = kbl.tangent[t];
  std::sort(tang.begin(), tang.end());
  std::array<int, 3> expect{0, 3, 4};  // x, t, u
  CHECK(tang == expect);

  auto bounds = ord_lower_bounds(X2, s.space, y, 2, initial_weight(s.space, y));
  REQUIRE(bounds.kbl.ok);
  CHECK(bounds.w.ord(z) >= Rational(6, 5));
  CHECK(bounds.w.ord(0) == Rational(1, 5));

  auto ex = exceptional_data(5, 2, &kbl, &w);
  REQUIRE(ex.new_points.size() == 2);
  CHECK(ex.new_points[0] == BasketEntry{2, 1, 1});
  CHECK(ex.new_points[1] == BasketEntry{3, 1, 1});
  CHECK(ex.equations.size() == 3);
}

TEST_CASE("exceptional divisor points") {
  auto e7 = exceptional_data(7, 1);
  REQUIRE(e7.new_points.size() == 1);
  CHECK(e7.new_points[0] == BasketEntry{6, 1, 1});
  CHECK(exceptional_data(2, 1).new_points.empty());
  auto e4 = exceptional_data(4, 1);
  REQUIRE(e4.new_points.size() == 1);
  CHECK(e4.new_points[0] == BasketEntry{3, 1, 1});
}

TEST_CASE("KBL at the 1/7 point of deg42 and its order bounds") {
  const auto& s = family("deg42");
  auto X = compute_pfaffians(sample_member(s, 1, kF));
  int t = s.space.index_of("t");
  auto b = ord_lower_bounds(X, s.space, t, 1, initial_weight(s.space, t));
  REQUIRE(b.kbl.ok);
  CHECK(b.w.ord(0) == Rational(1, 7));
  CHECK(b.w.ord(s.space.index_of("y")) == Rational(5, 7));
  CHECK(b.w.ord(s.space.index_of("z")) == Rational(6, 7));
}
