#include <random>

#include "doctest.h"
#include "pfano/pfaffian.hpp"

using namespace pfano;

namespace {

// Placeholder space: the six entries used by F1 become variables so its shape can be read off.
// x=a6 (m12), y=a7 (m13), z=a8 (m14), t=b8 (m23), u=b9 (m24), v=c10 (m34).
WeightSystem placeholder() { return {{6, 7, 8, 8, 9, 10, 1}, {"a6", "a7", "a8", "b8", "b9", "c10", "s"}}; }

QPoly Q(const std::string& s) { return parse_and_grade(s, placeholder()).poly; }

}  // namespace

TEST_CASE("catalog: arithmetic consistency") {
  const auto& cat = family_catalog();
  REQUIRE(cat.size() == 5);
  std::array<int, 5> sig{45, 40, 35, 30, 21};
  std::array<Rational, 5> a3{Rational(1, 42), Rational(1, 30), Rational(1, 20), Rational(1, 12), Rational(1, 4)};
  for (std::size_t k = 0; k < cat.size(); ++k) {
    const auto& s = cat[k];
    CHECK(s.sigma == sig[k]);
    CHECK(s.A3 == a3[k]);
    int sum = 0;
    for (int d : s.pfaffian_degrees) sum += d;
    CHECK(sum == 2 * s.sigma);
  }
  CHECK(family("deg42").pfaffian_degrees == std::array<int, 5>{16, 17, 18, 19, 20});
  CHECK(family("deg20").space.weights == std::array<int, kVars>{1, 4, 5, 5, 6, 7, 8});
  CHECK(family("deg20").pfaffian_degrees == std::array<int, 5>{12, 13, 14, 15, 16});
  CHECK(family("deg4").space.weights == std::array<int, kVars>{1, 2, 3, 3, 4, 4, 5});
  CHECK(family("deg4").pfaffian_degrees == std::array<int, 5>{7, 8, 8, 9, 10});
  CHECK_THROWS(family("deg7"));
}

TEST_CASE("half-degrees of the catalog entry degrees") {
  std::array<std::array<int, 5>, 5> expect{{{5, 7, 9, 11, 13}, {4, 6, 8, 10, 12}, {3, 5, 7, 9, 11},
                                            {2, 4, 6, 8, 10}, {1, 3, 5, 5, 7}}};
  for (std::size_t k = 0; k < 5; ++k) {
    auto q2 = half_degrees(family_catalog()[k].entry_degrees);
    REQUIRE(q2.has_value());
    CHECK(*q2 == expect[k]);
  }
  std::array<int, kEntries> bad{6, 7, 8, 9, 8, 9, 10, 10, 11, 13};
  CHECK_FALSE(half_degrees(bad).has_value());
}

TEST_CASE("compute_pfaffians: F1 shape on placeholder entries") {
  SyzygyMatrix<RationalField> M;
  M.space = placeholder();
  M.entry_degrees = family("deg42").entry_degrees;
  M.at(1, 2) = Q("a6");
  M.at(1, 3) = Q("a7");
  M.at(1, 4) = Q("a8");
  M.at(2, 3) = Q("b8");
  M.at(2, 4) = Q("b9");
  M.at(3, 4) = Q("c10");
  auto F = compute_pfaffians(M);
  CHECK(F[0] == Q("a6*c10 - a7*b9 + a8*b8"));
}

TEST_CASE("compute_pfaffians: single nonzero entry gives products only") {
  PrimeField f(101);
  FpMatrix M;
  M.space = family("deg42").space;
  for (auto& e : M.entries) e = FpPoly(f);
  M.at(1, 2) = FpPoly::variable(f, 0);
  for (const auto& Fi : compute_pfaffians(M)) CHECK(Fi.is_zero());
}

TEST_CASE("compute_pfaffians matches the 4x4 expansion on numeric matrices") {
  std::mt19937_64 rng(17);
  PrimeField f(10007);
  for (int trial = 0; trial < 20; ++trial) {
    FpMatrix M;
    M.space = family("deg30").space;
    std::array<std::uint32_t, kEntries> val{};
    for (int k = 0; k < kEntries; ++k) {
      val[k] = static_cast<std::uint32_t>(rng() % f.p);
      M.entries[k] = FpPoly::constant(f, val[k]);
    }
    auto m = [&](int i, int j) -> std::int64_t {
      if (i == j) return 0;
      return i < j ? val[entry_index(i, j)] : static_cast<std::int64_t>(f.p) - val[entry_index(j, i)];
    };
    auto F = compute_pfaffians(M);
    for (int i = 1; i <= 5; ++i) {
      std::vector<int> idx;
      for (int k = 1; k <= 5; ++k)
        if (k != 6 - i) idx.push_back(k);
      std::int64_t p = (m(idx[0], idx[1]) * m(idx[2], idx[3]) % f.p - m(idx[0], idx[2]) * m(idx[1], idx[3]) % f.p +
                        m(idx[0], idx[3]) * m(idx[1], idx[2]) % f.p + 2 * f.p) % f.p;
      CHECK(F[i - 1].coefficient(Exponent{}) == static_cast<std::uint32_t>(p));
    }
  }
}

TEST_CASE("syzygy sign pattern is (-1)^j and no other pattern works") {
  // The sign choice is frozen here: the alternative with all signs flipped per row also works
  // (it is the negative), so compare against a pattern that differs in a single position.
  std::mt19937_64 rng(3);
  PrimeField f(10007);
  FpMatrix M = sample_member(family("deg20"), 99, f);
  auto F = compute_pfaffians(M);
  CHECK(syzygy_identity_check(M, F));
  for (int i = 1; i <= 5; ++i) {
    FpPoly altered(f);
    bool flipped = false;
    for (int j = 1; j <= 5; ++j) {
      if (j == i) continue;
      FpPoly term = M.m(i, j) * F[6 - j - 1];
      bool plus = (j % 2 == 0);
      if (!flipped) {
        plus = !plus;
        flipped = true;
      }
      altered = plus ? altered + term : altered - term;
    }
    CHECK_FALSE(altered.is_zero());
  }
}

TEST_CASE("syzygy identity: zero matrix and a perturbed Pfaffian") {
  PrimeField f(101);
  FpMatrix Z;
  Z.space = family("deg4").space;
  for (auto& e : Z.entries) e = FpPoly(f);
  CHECK(syzygy_identity_check(Z, compute_pfaffians(Z)));
  FpMatrix M = sample_member(family("deg4"), 5, f);
  auto F = compute_pfaffians(M);
  F[2] = F[2] + FpPoly::constant(f, 1);
  CHECK_FALSE(syzygy_identity_check(M, F));
}

TEST_CASE("sampling: determinism and grading") {
  PrimeField f(10007);
  for (const auto& spec : family_catalog()) {
    FpMatrix a = sample_member(spec, 42, f), b = sample_member(spec, 42, f), c = sample_member(spec, 43, f);
    CHECK(a.entries == b.entries);
    CHECK(a.entries != c.entries);
    CHECK(a.validate().empty());
    auto F = compute_pfaffians(a);
    for (int i = 0; i < 5; ++i) {
      auto d = F[i].weighted_degree(spec.space);
      REQUIRE(d.has_value());
      CHECK(*d == spec.pfaffian_degrees[i]);
    }
  }
}

TEST_CASE("validate reports a wrong entry degree") {
  PrimeField f(10007);
  FpMatrix M = sample_member(family("deg42"), 1, f);
  M.at(1, 2) = FpPoly::variable(f, 1);  // y has degree 5, m12 wants 6
  CHECK(M.validate().find("m12") != std::string::npos);
}

TEST_CASE("syzygy identity on 100 sampled members per family") {
  PrimeField f(10007);
  for (const auto& spec : family_catalog()) {
    CHECK(syzygy_failures(spec, 1000, 100, f, true) == 0);
    CHECK(syzygy_failures(spec, 1000, 100, f, false) == 0);
  }
}
