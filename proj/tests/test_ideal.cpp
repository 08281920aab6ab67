#include <algorithm>
#include <random>

#include "doctest.h"
#include "pfano/ideal.hpp"

using namespace pfano;

namespace {

const WeightSystem kPlain{{1, 1, 1, 1, 1, 1, 1}, {"x0", "x1", "x2", "x3", "x4", "x5", "x6"}};

FpPoly P(const std::string& s, const PrimeField& f) { return reduce_mod_p(parse_and_grade(s, kPlain).poly, f); }

FpPoly random_poly(const PrimeField& f, std::mt19937_64& rng, int terms, int maxexp, int nvars) {
  FpPoly p(f);
  for (int k = 0; k < terms; ++k) {
    Exponent e{};
    for (int v = 0; v < nvars; ++v) e[v] = static_cast<std::uint16_t>(rng() % (maxexp + 1));
    p.add_term(e, static_cast<std::uint32_t>(rng() % f.p));
  }
  return p;
}

}  // namespace

TEST_CASE("buchberger: already reduced basis") {
  PrimeField f(10007);
  auto gb = buchberger({P("x0", f), P("x1", f)});
  REQUIRE(gb.generators.size() == 2);
  CHECK(gb.reduced);
  CHECK(affine_dimension(gb) == 5);
}

TEST_CASE("buchberger: x^2 - y, y^2 - x over F7 has four standard monomials") {
  PrimeField f(7);
  auto gb = buchberger({P("x0^2 - x1", f), P("x1^2 - x0", f)});
  CHECK(is_groebner(gb));
  auto monos = standard_monomials(gb, 0b11);
  REQUIRE(monos.has_value());
  CHECK(monos->size() == 4);
  // resultant oracle: eliminating y gives x^4 - x, four roots counted with multiplicity
  // F7 is too small for a separating linear form, so count the points over F101.
  PrimeField g(101);
  auto sol = solve_zero_dim({P("x0^2 - x1", g), P("x1^2 - x0", g)}, 0b11, 1);
  CHECK(sol.radical);
  int total = 0;
  for (const auto& o : sol.orbits) total += o.minimal.degree();
  CHECK(total == 4);
}

TEST_CASE("buchberger: permuted generators give the same reduced basis") {
  PrimeField f(10007);
  std::vector<FpPoly> g{P("x0^2*x1 - x2^3", f), P("x1^2 - x0*x2 + 3", f), P("x0*x1*x2 - x1", f)};
  auto a = buchberger(g);
  std::reverse(g.begin(), g.end());
  auto b = buchberger(g);
  CHECK(a.generators == b.generators);
  CHECK(is_groebner(a));
}

TEST_CASE("normal form basics") {
  PrimeField f(10007);
  std::vector<FpPoly> g{P("x0^2 - x1*x2", f), P("x1^3 - x0", f)};
  auto gb = buchberger(g);
  for (const auto& gen : g) CHECK(normal_form(gen, gb).is_zero());
  CHECK(normal_form(FpPoly::constant(f, 1), gb) == FpPoly::constant(f, 1));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    FpPoly h = random_poly(f, rng, 8, 4, 3);
    auto nf = normal_form(h, gb);
    CHECK(normal_form(nf, gb) == nf);
    CHECK(normal_form(h - nf, gb).is_zero());
  }
}

TEST_CASE("affine dimension of coordinate subspaces") {
  PrimeField f(10007);
  std::vector<FpPoly> all;
  for (int i = 0; i < kVars; ++i) all.push_back(FpPoly::variable(f, i));
  CHECK(affine_dimension(buchberger(all)) == 0);
  std::vector<FpPoly> six(all.begin(), all.begin() + 6);
  CHECK(affine_dimension(buchberger(six)) == 1);
  CHECK(affine_dimension(buchberger({FpPoly::constant(f, 5)})) == -1);

  // 20 random coordinate-subspace ideals, disguised by adding random ideal elements.
  std::mt19937_64 rng(99);
  for (int t = 0; t < 20; ++t) {
    std::vector<int> vars(kVars);
    for (int i = 0; i < kVars; ++i) vars[i] = i;
    std::shuffle(vars.begin(), vars.end(), rng);
    int k = 1 + static_cast<int>(rng() % kVars);
    std::vector<FpPoly> gens;
    for (int i = 0; i < k; ++i) gens.push_back(FpPoly::variable(f, vars[i]));
    FpPoly extra = gens[0] * random_poly(f, rng, 4, 2, kVars);
    gens.push_back(extra);
    std::shuffle(gens.begin(), gens.end(), rng);
    auto gb = buchberger(gens);
    CHECK(is_groebner(gb));
    CHECK(affine_dimension(gb) == kVars - k);
  }
}

TEST_CASE("dimension is stable under permutation and random ideal elements") {
  PrimeField f(10007);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    std::vector<FpPoly> g{random_poly(f, rng, 4, 2, 4), random_poly(f, rng, 4, 2, 4)};
    auto base = affine_dimension(buchberger(g));
    auto more = g;
    more.push_back(g[0] * random_poly(f, rng, 3, 2, 4) + g[1] * random_poly(f, rng, 3, 2, 4));
    std::reverse(more.begin(), more.end());
    CHECK(affine_dimension(buchberger(more)) == base);
  }
}

TEST_CASE("budget exhaustion is reported, not answered") {
  PrimeField f(10007);
  std::vector<FpPoly> g{P("x0^5 - x1^3*x2 + x3", f), P("x1^4 - x0*x2^2 - x3^2", f), P("x2^3*x0 - x3*x1 + 1", f)};
  CHECK_THROWS_AS(buchberger(g, MonomialOrder{}, 3), BudgetExceeded);
}

TEST_CASE("mixed fields rejected") {
  CHECK_THROWS_AS(buchberger({FpPoly::variable(PrimeField(7), 0), FpPoly::variable(PrimeField(11), 1)}),
                  FieldMismatch);
}

TEST_CASE("univariate factorization over F_p") {
  PrimeField f(10007);
  std::mt19937_64 rng(8);
  // (x - 3)(x^2 + 1)(x - 5); x^2 + 1 is irreducible since 10007 = 3 mod 4
  UPoly a{{10004, 1}}, b{{1, 0, 1}}, c{{10002, 1}};
  UPoly prod = upoly::mul(upoly::mul(a, b, f), c, f);
  auto fac = upoly::factor_squarefree(prod, f, rng);
  REQUIRE(fac.size() == 3);
  int d2 = 0;
  for (auto& q : fac) d2 += q.degree() == 2;
  CHECK(d2 == 1);
  CHECK(upoly::squarefree_part(upoly::mul(prod, a, f), f).degree() == 4);
}

TEST_CASE("extension field arithmetic") {
  PrimeField f(10007);
  ExtField k(f, UPoly{{1, 0, 1}});  // theta^2 = -1
  auto t = k.theta();
  CHECK(k.mul(t, t) == k.embed(10006));
  auto u = k.add(t, k.embed(3));
  CHECK(k.mul(u, k.inv(u)) == k.one());
  std::vector<std::vector<ExtField::Elem>> m{{k.one(), t}, {t, k.embed(10006)}};
  CHECK(k.rank(m) == 1);
}

TEST_CASE("zero-dimensional solver finds conjugate points") {
  PrimeField f(10007);
  // x^2 + 1 = 0, y = x + 2: one Galois orbit of size 2
  auto sol = solve_zero_dim({P("x0^2 + 1", f), P("x1 - x0 - 2", f)}, 0b11, 3);
  REQUIRE(sol.orbits.size() == 1);
  CHECK(sol.orbits[0].minimal.degree() == 2);
  ExtField k(f, sol.orbits[0].minimal);
  auto x = k.from_upoly(sol.orbits[0].coords[0]);
  auto y = k.from_upoly(sol.orbits[0].coords[1]);
  CHECK(k.add(k.mul(x, x), k.one()) == k.zero());
  CHECK(k.sub(y, x) == k.embed(2));
  // non-reduced: x^2 = 0
  auto dbl = solve_zero_dim({P("x0^2", f), P("x1", f)}, 0b11, 3);
  CHECK_FALSE(dbl.radical);
  CHECK(dbl.orbits.size() == 1);
}
