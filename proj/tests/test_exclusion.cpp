#include <algorithm>
#include <map>

#include "doctest.h"
#include "expected_values.hpp"
#include "pfano/exclusion.hpp"

using namespace pfano;

namespace {

CertifyOptions seed_opts(std::uint64_t seed, bool parallel = true) {
  CertifyOptions o;
  o.seed = seed;
  o.prime = 10007;
  o.parallel = parallel;
  return o;
}

const std::vector<Certificate>& seed1(const std::string& id) {
  static std::map<std::string, std::vector<Certificate>> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, certify_family(family(id), seed_opts(1))).first;
  return it->second;
}

const Certificate* find(const std::vector<Certificate>& certs, const std::string& centre, const std::string& variant) {
  for (const auto& c : certs)
    if (c.centre == centre && c.variant == variant) return &c;
  return nullptr;
}

bool related(const FamilySpec& spec, const Certificate& c, const std::string& cond) {
  for (const auto& row : spec.table)
    if (c.centre.rfind(std::to_string(row.r) + "/(1," + std::to_string(row.a) + ",", 0) == 0)
      return std::find(row.conditions.begin(), row.conditions.end(), cond) != row.conditions.end();
  return false;
}

}  // namespace

TEST_CASE("exclusion rationals") {
  for (const auto& e : expected_values()) {
    CAPTURE(e.family);
    CAPTURE(e.centre);
    CAPTURE(e.key);
    const Certificate* c = find(seed1(e.family), e.centre, e.variant);
    REQUIRE(c != nullptr);
    REQUIRE(c->payload.count(e.key));
    CHECK(c->payload.at(e.key) == parse_rational(e.value));
  }
}

TEST_CASE("verdicts match the table on seeds 1-5") {
  for (std::uint64_t s = 1; s <= 5; ++s)
    for (const auto& spec : family_catalog()) {
      CAPTURE(spec.id);
      CAPTURE(s);
      auto issues = table_mismatches(spec, certify_family(spec, seed_opts(s)));
      for (const auto& i : issues) MESSAGE(i.text);
      CHECK(issues.empty());
    }
}

TEST_CASE("certificate round trip and corrupted payloads") {
  std::vector<Certificate> all;
  for (const auto& spec : family_catalog()) {
    for (const auto& c : seed1(spec.id)) {
      CHECK(round_trip_ok(c));
      all.push_back(c);
    }
  }
  RunMetadata meta;
  std::string doc = emit_certificates(all, meta);
  auto back = load_certificates(doc);
  CHECK(back.size() == all.size());
  CHECK(emit_certificates(back, meta) == doc);

  Certificate bad = *find(seed1("deg42"), "7/(1,1,6)#1", "");
  bad.payload["A_term"] = parse_rational("1/41");
  CHECK(reverify(bad) == "invalid");
  CHECK_FALSE(round_trip_ok(bad));
  CHECK_THROWS(emit_certificates({bad}, meta));
  auto j = nlohmann::json::parse(emit_certificates({*find(seed1("deg42"), "7/(1,1,6)#1", "")}, meta));
  j["certificates"][0]["payload"]["E_term"] = "1/40";
  CHECK_THROWS(load_certificates(j.dump()));
  CHECK_THROWS(load_certificates("{\"certificates\": 3}"));
  CHECK_THROWS(load_certificates("not json"));
}

TEST_CASE("empty certificate list gives a valid empty document") {
  RunMetadata meta;
  std::string doc = emit_certificates({}, meta);
  CHECK(load_certificates(doc).empty());
  auto j = nlohmann::json::parse(doc);
  CHECK(j["certificates"].empty());
  CHECK(j["metadata"]["count"] == 0);
}

TEST_CASE("determinism and the serial reference path") {
  for (const auto& spec : family_catalog()) {
    auto par = certify_family(spec, seed_opts(2, true));
    auto ser = certify_family(spec, seed_opts(2, false));
    CHECK(par == ser);
    CHECK(emit_certificates(par, {}) == emit_certificates(certify_family(spec, seed_opts(2, true)), {}));
  }
}

TEST_CASE("negative controls flip only the certificates that use the condition") {
  for (const auto& id : condition_ids()) {
    CAPTURE(id);
    CertifyOptions base = seed_opts(1), neg = seed_opts(1);
    neg.negative_control = id;
    CHECK(gencond(id, base).result.pass);
    CHECK_FALSE(gencond(id, neg).result.pass);
    for (const auto& spec : family_catalog()) {
      auto plain = seed1(spec.id);
      auto ctl = certify_family(spec, neg);
      REQUIRE(plain.size() == ctl.size());
      for (std::size_t i = 0; i < plain.size(); ++i) {
        CAPTURE(plain[i].centre);
        if (spec.id == condition_family(id) && related(spec, plain[i], id))
          CHECK(ctl[i].verdict == verdicts::kInconclusive);
        else
          CHECK(to_json(ctl[i]).dump() == to_json(plain[i]).dump());
      }
    }
  }
}

TEST_CASE("centre ids") {
  const auto& s = family("deg30");
  auto a = parse_centre(s, "5/(1,2,3)#2");
  CHECK(a.r == 5);
  CHECK(a.a == 2);
  CHECK(a.k == 2);
  auto b = parse_centre(s, "1/6");
  CHECK(b.r == 6);
  CHECK(b.a == 1);
  CHECK(b.k == 1);
  CHECK(parse_centre(s, "1/5(1,1,4)").a == 1);
  CHECK(centre_id(5, 2, 1) == "5/(1,2,3)#1");
  CHECK_THROWS(parse_centre(s, "1/5"));
  CHECK_THROWS(parse_centre(s, "5/(1,2,3)#3"));
  CHECK_THROWS(parse_centre(s, "1/7"));
  CHECK_THROWS(parse_centre(s, "five"));
}

TEST_CASE("explicit member replaces the sampled one") {
  const auto& spec = family("deg42");
  FpMatrix M = sample_member(spec, 1, PrimeField(10007));
  CertifyOptions o = seed_opts(1);
  o.member = &M;
  o.max_attempts = 1;
  Certificate c = certify_centre(spec, parse_centre(spec, "1/7"), o);
  CHECK(c.verdict == verdicts::kExcluded);
  CHECK(c.evidence.at("member") == "explicit");
}
