// Runs every acceptance check and prints one PASS or FAIL line per criterion.
#include <algorithm>
#include <iostream>
#include <random>
#include <sstream>

#include "expected_values.hpp"
#include "pfano/cli.hpp"
#include "pfano/exclusion.hpp"
#include "pfano/geometry.hpp"
#include "pfano/hilbert.hpp"

using namespace pfano;

namespace {

constexpr std::uint32_t kPrime = 10007;

struct Tally {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

CertifyOptions opts(std::uint64_t seed) {
  CertifyOptions o;
  o.seed = seed;
  o.prime = kPrime;
  return o;
}

Tally degrees() {
  Tally t;
  const std::vector<std::pair<std::string, std::string>> want = {
      {"deg42", "1/42"}, {"deg30", "1/30"}, {"deg20", "1/20"}, {"deg12", "1/12"}, {"deg4", "1/4"}};
  for (const auto& [id, v] : want) {
    Rational a3 = anticanonical_degree(hilbert_numerator(family(id)));
    t.expect(a3 == parse_rational(v), id + " gives " + rational_str(a3));
  }
  return t;
}

Tally baskets() {
  Tally t;
  for (std::uint64_t s = 1; s <= 5; ++s)
    for (const auto& spec : family_catalog()) {
      FpMatrix M = sample_member(spec, s, PrimeField(kPrime));
      auto scan = singular_scan(compute_pfaffians(M), spec.space, s);
      t.expect(normalised_basket(basket_of(scan)) == normalised_basket(spec.basket),
               spec.id + " seed " + std::to_string(s));
      t.expect(scan.problems.empty(), spec.id + " seed " + std::to_string(s) + " reports problems");
    }
  return t;
}

Tally rationals() {
  Tally t;
  std::map<std::string, std::vector<Certificate>> certs;
  for (const auto& spec : family_catalog()) certs[spec.id] = certify_family(spec, opts(1));
  for (const auto& e : expected_values()) {
    std::string where = e.family + " " + e.centre + (e.variant.empty() ? "" : " " + e.variant) + " " + e.key;
    auto& list = certs[e.family];
    auto it = std::find_if(list.begin(), list.end(),
                           [&](const Certificate& c) { return c.centre == e.centre && c.variant == e.variant; });
    if (it == list.end() || !it->payload.count(e.key)) {
      t.failures.push_back(where + " missing");
      continue;
    }
    t.expect(it->payload.at(e.key) == parse_rational(e.value),
             where + " = " + rational_str(it->payload.at(e.key)) + ", want " + e.value);
  }
  return t;
}

Tally table() {
  Tally t;
  const char* argv[] = {"pfano", "verify-table", "--seed", "1", "--prime", "10007"};
  std::ostringstream out, err;
  int code = run_cli(6, argv, out, err);
  std::string text = out.str();
  t.expect(code == 0, "exit code " + std::to_string(code) + ": " + err.str());
  t.expect(std::count(text.begin(), text.end(), '\n') == 6, "expected five family reports");
  return t;
}

Tally properties() {
  Tally t;
  PrimeField f(kPrime);
  for (const auto& spec : family_catalog()) {
    std::size_t bad = syzygy_failures(spec, 5000, 100, f);
    t.expect(bad == 0, spec.id + ": syzygy identity fails on " + std::to_string(bad) + " members");

    HilbertData h = hilbert_numerator(spec);
    t.expect(is_antipalindromic(h), spec.id + ": numerator not anti-palindromic");
    t.expect(vanishing_order_at_one(h) >= 1, spec.id + ": N(1) != 0");
    auto series = series_expand(h, 60);
    t.expect(std::all_of(series.begin(), series.end(), [](long long c) { return c >= 0; }),
             spec.id + ": negative series coefficient");
  }

  std::mt19937_64 rng(7);
  auto rq = [&] {
    Rational q(static_cast<long>(rng() % 41) - 20, static_cast<long>(1 + rng() % 12));
    q.canonicalize();
    return q;
  };
  int tri_bad = 0;
  for (int n = 0; n < 1000; ++n) {
    int r = 2 + static_cast<int>(rng() % 6);
    BlowupData d = blowup_data(r, 1, Rational(1, 1 + static_cast<long>(rng() % 50)));
    DivisorClass x{rq(), rq()}, x2{rq(), rq()}, y{rq(), rq()}, z{rq(), rq()};
    Rational s = rq();
    DivisorClass comb{s * x.lambda + x2.lambda, s * x.mu + x2.mu};
    Rational v = triple_product(x, y, z, d);
    tri_bad += triple_product(comb, y, z, d) != s * v + triple_product(x2, y, z, d);
    tri_bad += v != triple_product(y, x, z, d) || v != triple_product(z, y, x, d) || v != triple_product(x, z, y, d);
  }
  t.expect(tri_bad == 0, "triple_product fails on " + std::to_string(tri_bad) + " triples");

  // Groebner bases of each sampled X cut by x = y = 0 (a curve), plus coordinate-subspace ideals.
  for (const auto& spec : family_catalog()) {
    Equations X = compute_pfaffians(sample_member(spec, 11, f));
    std::vector<FpPoly> gens(X.begin(), X.end());
    gens.push_back(FpPoly::variable(f, 0));
    gens.push_back(FpPoly::variable(f, 1));
    auto gb = buchberger(gens);
    t.expect(is_groebner(gb), spec.id + ": an S-polynomial does not reduce to zero");
    t.expect(affine_dimension(gb) == 2, spec.id + ": the cut is not a curve");
  }
  for (int n = 0; n < 20; ++n) {
    std::vector<int> vars(kVars);
    for (int i = 0; i < kVars; ++i) vars[i] = i;
    std::shuffle(vars.begin(), vars.end(), rng);
    int k = 1 + static_cast<int>(rng() % kVars);
    std::vector<FpPoly> gens;
    for (int i = 0; i < k; ++i) gens.push_back(FpPoly::variable(f, vars[i]));
    FpPoly extra = gens[0] * FpPoly::variable(f, vars[kVars - 1]);
    extra = extra + FpPoly::constant(f, 3) * gens[k - 1];
    gens.push_back(extra);
    auto gb = buchberger(gens);
    t.expect(is_groebner(gb), "coordinate ideal " + std::to_string(n) + ": not a Groebner basis");
    t.expect(affine_dimension(gb) == kVars - k, "coordinate ideal " + std::to_string(n) + ": wrong dimension");
  }

  for (std::uint64_t s = 1; s <= 5; ++s)
    for (const auto& spec : family_catalog())
      for (const auto& c : certify_family(spec, opts(s)))
        t.expect(round_trip_ok(c), spec.id + " " + c.centre + " seed " + std::to_string(s) + ": round trip");
  return t;
}

Tally negative_controls() {
  Tally t;
  std::map<std::string, std::vector<Certificate>> plain;
  for (const auto& spec : family_catalog()) plain[spec.id] = certify_family(spec, opts(1));
  for (const auto& id : condition_ids()) {
    CertifyOptions neg = opts(1);
    neg.negative_control = id;
    t.expect(gencond(id, opts(1)).result.pass, id + " fails without the control");
    t.expect(!gencond(id, neg).result.pass, id + " still passes under the control");
    for (const auto& spec : family_catalog()) {
      auto ctl = certify_family(spec, neg);
      const auto& base = plain[spec.id];
      for (std::size_t i = 0; i < base.size(); ++i) {
        bool uses = std::any_of(ctl[i].conditions.begin(), ctl[i].conditions.end(),
                                [&](const ConditionResult& r) { return r.id == id; });
        if (uses)
          t.expect(ctl[i].verdict == verdicts::kInconclusive, id + ": " + spec.id + " " + ctl[i].centre + " not flipped");
        else
          t.expect(to_json(ctl[i]) == to_json(base[i]), id + ": " + spec.id + " " + base[i].centre + " changed");
      }
    }
  }
  return t;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Tally (*)()>> criteria = {
      {"1 anticanonical degrees", degrees},     {"2 baskets on seeds 1-5", baskets},
      {"3 exclusion rationals", rationals},     {"4 verify-table", table},
      {"5 property suites", properties},        {"6 negative controls", negative_controls}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Tally t;
    try {
      t = run();
    } catch (const std::exception& e) {
      t.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (t.failures.empty() ? "PASS " : "FAIL ") << name << "\n";
    for (const auto& f : t.failures) std::cout << "  " << f << "\n";
    failed += !t.failures.empty();
  }
  return failed == 0 ? 0 : 1;
}
