#include <functional>
#include <random>

#include "doctest.h"
#include "pfano/wpoly.hpp"

using namespace pfano;

namespace {

WeightSystem ws42() {
  return {{1, 5, 6, 7, 8, 9, 10}, {"x", "y", "z", "t", "u", "v", "w"}};
}

QPoly P(const std::string& s, const WeightSystem& ws = ws42()) { return parse_and_grade(s, ws).poly; }

FpPoly random_poly(const PrimeField& f, std::mt19937_64& rng, int terms, int maxexp) {
  FpPoly p(f);
  for (int k = 0; k < terms; ++k) {
    Exponent e{};
    for (auto& v : e) v = static_cast<std::uint16_t>(rng() % (maxexp + 1));
    p.add_term(e, static_cast<std::uint32_t>(rng() % f.p));
  }
  return p;
}

// Homogeneous random poly of weighted degree d (brute-force monomial enumeration).
FpPoly random_homogeneous(const PrimeField& f, const WeightSystem& ws, int d, std::mt19937_64& rng) {
  FpPoly p(f);
  Exponent e{};
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == kVars - 1) {
      if (left % ws.weights[i] == 0) {
        e[i] = static_cast<std::uint16_t>(left / ws.weights[i]);
        p.add_term(e, static_cast<std::uint32_t>(rng() % f.p));
      }
      return;
    }
    for (int k = 0; k * ws.weights[i] <= left; ++k) {
      e[i] = static_cast<std::uint16_t>(k);
      rec(i + 1, left - k * ws.weights[i]);
    }
    e[i] = 0;
  };
  rec(0, d);
  return p;
}

}  // namespace

TEST_CASE("parse: placeholder product has degree 16") {
  WeightSystem ws{{1, 6, 10, 1, 1, 1, 1}, {"x", "a6", "c10", "p", "q", "r", "s"}};
  auto r = parse_and_grade("a6*c10", ws);
  CHECK(r.homogeneous);
  REQUIRE(r.degree.has_value());
  CHECK(*r.degree == 16);
}

TEST_CASE("parse: zero is homogeneous with no fixed degree") {
  auto r = parse_and_grade("0", ws42());
  CHECK(r.poly.is_zero());
  CHECK(r.homogeneous);
  CHECK_FALSE(r.degree.has_value());
}

TEST_CASE("parse: mixed degrees are flagged") {
  auto r = parse_and_grade("x^2 + y", ws42());
  CHECK_FALSE(r.homogeneous);
  CHECK_FALSE(r.degree.has_value());
}

TEST_CASE("parse: rationals, parentheses and powers") {
  auto r = parse_and_grade("(x + y)^2 - 2*x*y/4 + 3/2*z", ws42());
  QPoly expect = P("x^2 + y^2 + 3/2*x*y + 3/2*z");
  CHECK(r.poly == expect);
}

TEST_CASE("parse: errors carry positions") {
  CHECK_THROWS_AS(parse_and_grade("x + q", ws42()), ParseError);
  try {
    parse_and_grade("x + q", ws42());
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
  CHECK_THROWS_AS(parse_and_grade("x +", ws42()), ParseError);
  CHECK_THROWS_AS(parse_and_grade("(x", ws42()), ParseError);
  CHECK_THROWS_AS(parse_and_grade("x / y", ws42()), ParseError);
  CHECK_THROWS_AS(parse_and_grade("x^", ws42()), ParseError);
}

TEST_CASE("differentiate") {
  CHECK(differentiate(P("x^2*y"), 0) == P("2*x*y"));
  CHECK(differentiate(P("7"), 0).is_zero());
  PrimeField f2(2);
  FpPoly sq = FpPoly::variable(f2, 0).pow(2);
  CHECK(differentiate(sq, 0).is_zero());
  auto d = differentiate(P("x*w^2 + y*t*x^11"), 6);
  REQUIRE(d.weighted_degree(ws42()).has_value());
  CHECK(*d.weighted_degree(ws42()) == 11);
}

TEST_CASE("substitute: restriction to a stratum and strict grading") {
  // F2-shaped polynomial: setting x = w = 0 keeps the z^2 y, t y^2, v u pattern.
  QPoly F = P("3*z^2*y - t*y^2 + 5*v*u + x*w*y + w*t");
  std::map<int, QPoly> zero{{0, QPoly()}, {6, QPoly()}};
  CHECK(substitute(F, zero) == P("3*z^2*y - t*y^2 + 5*v*u"));
  std::map<int, QPoly> bad{{2, P("x")}};
  CHECK_THROWS_AS(substitute(F, bad, &static_cast<const WeightSystem&>(ws42())), GradingViolation);
  std::map<int, QPoly> good{{2, P("z + x*y + x^6")}};
  CHECK_NOTHROW(substitute(F, good, &static_cast<const WeightSystem&>(ws42())));
}

TEST_CASE("substitute: identity and round trip") {
  std::mt19937_64 rng(7);
  PrimeField f(101);
  WeightSystem ws = ws42();
  for (int trial = 0; trial < 20; ++trial) {
    FpPoly g = random_homogeneous(f, ws, 18, rng);
    std::map<int, FpPoly> id;
    for (int i = 0; i < kVars; ++i) id[i] = FpPoly::variable(f, i);
    CHECK(substitute(g, id) == g);
    FpPoly h = random_homogeneous(f, ws, 8, rng).scaled(3);
    h.set_term(unit_exponent(4), 0);  // keep the change of variables invertible
    std::map<int, FpPoly> fwd{{4, FpPoly::variable(f, 4) + h}}, back{{4, FpPoly::variable(f, 4) - h}};
    CHECK(substitute(substitute(g, fwd, &ws), back, &ws) == g);
  }
}

TEST_CASE("lowest weight part") {
  FractionalWeight w{{1, 0, 6, 2, 3, 4, 5}, 5};
  // a y-chart polynomial: z + vt + u^2 form the lowest part of weight 6/5
  WeightSystem ws = ws42();
  QPoly F = P("z + v*t + u^2 + x^2*w + w^2", ws);
  auto [low, wt] = lowest_weight_part(F, w);
  CHECK(wt == Rational(6, 5));
  CHECK(low == P("z + v*t + u^2", ws));
  CHECK_THROWS(lowest_weight_part(QPoly(), w));
  QPoly mono = P("t*u");
  CHECK(lowest_weight_part(mono, w).first == mono);
}

TEST_CASE("lowest weight part: multiplicative and reconstitutes f") {
  std::mt19937_64 rng(11);
  PrimeField f(10007);
  for (int trial = 0; trial < 50; ++trial) {
    FractionalWeight w;
    w.den = 1 + static_cast<int>(rng() % 7);
    for (auto& b : w.num) b = static_cast<int>(rng() % 9);
    FpPoly a = random_poly(f, rng, 6, 3), b = random_poly(f, rng, 6, 3);
    if (a.is_zero() || b.is_zero()) continue;
    auto [la, wa] = lowest_weight_part(a, w);
    auto [lb, wb] = lowest_weight_part(b, w);
    auto [lab, wab] = lowest_weight_part(a * b, w);
    CHECK(wab == wa + wb);
    CHECK(lab == la * lb);
    FpPoly rest = a - la;
    for (const auto& kv : rest.terms()) CHECK(w.weight_of(kv.first) > wa);
  }
}

TEST_CASE("evaluate and homogeneity") {
  PrimeField f(101);
  FpPoly x = FpPoly::variable(f, 0);
  CHECK(evaluate(x, {1, 0, 0, 0, 0, 0, 0}) == 1);
  std::mt19937_64 rng(3);
  WeightSystem ws = ws42();
  for (int trial = 0; trial < 20; ++trial) {
    FpPoly g = random_homogeneous(f, ws, 17, rng);
    std::vector<std::uint32_t> pt(kVars), scaled(kVars);
    std::uint32_t lambda = 1 + static_cast<std::uint32_t>(rng() % 100);
    for (int i = 0; i < kVars; ++i) {
      pt[i] = static_cast<std::uint32_t>(rng() % 101);
      scaled[i] = f.mul(f.pow(lambda, ws.weights[i]), pt[i]);
    }
    CHECK(evaluate(g, scaled) == f.mul(f.pow(lambda, 17), evaluate(g, pt)));
    // naive summation oracle
    std::uint32_t naive = 0;
    for (const auto& [e, c] : g.terms()) {
      std::uint32_t t = c;
      for (int i = 0; i < kVars; ++i) t = f.mul(t, f.pow(pt[i], e[i]));
      naive = f.add(naive, t);
    }
    CHECK(evaluate(g, pt) == naive);
  }
  CHECK_THROWS(evaluate(x, {1, 2}));
}

TEST_CASE("ring axioms and Leibniz rule on random inputs") {
  std::mt19937_64 rng(5);
  PrimeField f(10007);
  for (int trial = 0; trial < 30; ++trial) {
    FpPoly a = random_poly(f, rng, 5, 3), b = random_poly(f, rng, 5, 3), c = random_poly(f, rng, 5, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    int i = static_cast<int>(rng() % kVars);
    CHECK(differentiate(a * b, i) == differentiate(a, i) * b + a * differentiate(b, i));
  }
}

TEST_CASE("field mismatch is reported") {
  FpPoly a = FpPoly::variable(PrimeField(101), 0);
  FpPoly b = FpPoly::variable(PrimeField(103), 0);
  CHECK_THROWS_AS(a + b, FieldMismatch);
  CHECK_THROWS(PrimeField(100));
}

TEST_CASE("rational strings") {
  CHECK(rational_str(Rational(9, 42) - Rational(1, 2)) == "-2/7");
  CHECK(rational_str(Rational(4)) == "4");
  CHECK(parse_rational("-6/14") == Rational(-3, 7));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}
