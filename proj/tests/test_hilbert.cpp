#include "doctest.h"
#include "pfano/hilbert.hpp"

using namespace pfano;

TEST_CASE("numerator of deg42") {
  auto h = hilbert_numerator(family("deg42"));
  std::vector<long long> expect(46, 0);
  expect[0] = 1;
  for (int d = 16; d <= 20; ++d) expect[d] = -1;
  for (int d = 25; d <= 29; ++d) expect[d] = 1;
  expect[45] = -1;
  CHECK(h.numerator == expect);
}

TEST_CASE("anticanonical degrees") {
  for (const auto& spec : family_catalog()) {
    auto h = hilbert_numerator(spec);
    CHECK(anticanonical_degree(h) == spec.A3);
  }
  CHECK(anticanonical_degree(hilbert_numerator(family("deg42"))) == Rational(1, 42));
  CHECK(anticanonical_degree(hilbert_numerator(family("deg12"))) == Rational(1, 12));
  CHECK(anticanonical_degree(hilbert_numerator(family("deg4"))) == Rational(1, 4));
}

TEST_CASE("anti-palindromy and vanishing at 1") {
  for (const auto& spec : family_catalog()) {
    auto h = hilbert_numerator(spec);
    CHECK(is_antipalindromic(h));
    CHECK(vanishing_order_at_one(h) >= 3);
  }
  HilbertData broken = hilbert_numerator(family("deg4"));
  broken.numerator[3] += 1;
  CHECK_FALSE(is_antipalindromic(broken));
  CHECK_THROWS_AS(anticanonical_degree(broken), MalformedSpec);
}

TEST_CASE("series: low terms, positivity, asymptotics") {
  for (const auto& spec : family_catalog()) {
    auto h = hilbert_numerator(spec);
    auto s = series_expand(h, 200);
    CHECK(s[0] == 1);
    for (int m = 0; m <= 60; ++m) CHECK(s[m] >= 0);
    double expect = spec.A3.get_d() * 200.0 * 200.0 * 200.0 / 6.0;
    CHECK(std::abs(static_cast<double>(s[200]) / expect - 1.0) < 0.10);
  }
  CHECK(series_expand(hilbert_numerator(family("deg42")), 5)[1] == 1);
  // deg4: degree 2 sections are x^2 and y.
  CHECK(series_expand(hilbert_numerator(family("deg4")), 5)[2] == 2);
}
