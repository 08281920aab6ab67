#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "support.hpp"

namespace pfano {

using nlohmann::json;

json to_json(const Certificate& c) {
  json j;
  j["family"] = c.family;
  j["centre"] = c.centre;
  j["variant"] = c.variant;
  j["method"] = c.method;
  json payload = json::object();
  for (const auto& [k, v] : c.payload) payload[k] = rational_str(v);
  j["payload"] = payload;
  json evidence = json::object();
  for (const auto& [k, v] : c.evidence) evidence[k] = v;
  j["evidence"] = evidence;
  json conds = json::array();
  for (const auto& r : c.conditions) {
    json w = json::object();
    for (const auto& [k, v] : r.witness) w[k] = v;
    conds.push_back({{"id", r.id}, {"pass", r.pass}, {"witness", w}, {"diagnostic", r.diagnostic}});
  }
  j["conditions"] = conds;
  j["verdict"] = c.verdict;
  if (c.seed) j["seed"] = *c.seed;
  if (c.prime) j["prime"] = *c.prime;
  return j;
}

namespace {

const json& field(const json& j, const char* key, json::value_t type) {
  auto it = j.find(key);
  if (it == j.end()) throw std::runtime_error(std::string("certificate lacks field '") + key + "'");
  bool ok = it->type() == type ||
            (type == json::value_t::number_unsigned && it->type() == json::value_t::number_integer && *it >= 0);
  if (!ok) throw std::runtime_error(std::string("certificate field '") + key + "' has the wrong type");
  return *it;
}

std::map<std::string, std::string> string_map(const json& j, const char* what) {
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!it->is_string()) throw std::runtime_error(std::string(what) + " entry '" + it.key() + "' is not a string");
    out[it.key()] = it->get<std::string>();
  }
  return out;
}

}  // namespace

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("certificate is not an object");
  Certificate c;
  c.family = field(j, "family", json::value_t::string).get<std::string>();
  c.centre = field(j, "centre", json::value_t::string).get<std::string>();
  c.variant = field(j, "variant", json::value_t::string).get<std::string>();
  c.method = field(j, "method", json::value_t::string).get<std::string>();
  for (const auto& [k, v] : string_map(field(j, "payload", json::value_t::object), "payload")) {
    try {
      c.payload[k] = parse_rational(v);
    } catch (const std::exception&) {
      throw std::runtime_error("payload entry '" + k + "' is not a rational: " + v);
    }
  }
  c.evidence = string_map(field(j, "evidence", json::value_t::object), "evidence");
  for (const auto& r : field(j, "conditions", json::value_t::array)) {
    ConditionResult cr;
    cr.id = field(r, "id", json::value_t::string).get<std::string>();
    cr.pass = field(r, "pass", json::value_t::boolean).get<bool>();
    cr.witness = string_map(field(r, "witness", json::value_t::object), "witness");
    cr.diagnostic = field(r, "diagnostic", json::value_t::string).get<std::string>();
    c.conditions.push_back(std::move(cr));
  }
  c.verdict = field(j, "verdict", json::value_t::string).get<std::string>();
  if (j.contains("seed")) c.seed = field(j, "seed", json::value_t::number_unsigned).get<std::uint64_t>();
  if (j.contains("prime")) c.prime = field(j, "prime", json::value_t::number_unsigned).get<std::uint32_t>();
  return c;
}

namespace {

struct Invalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const Rational& get(const Certificate& c, const std::string& key) {
  auto it = c.payload.find(key);
  if (it == c.payload.end()) throw Invalid("missing payload entry " + key);
  return it->second;
}

std::string ev(const Certificate& c, const std::string& key) {
  auto it = c.evidence.find(key);
  return it == c.evidence.end() ? std::string() : it->second;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Invalid(what);
}

int small_int(const Rational& q, const std::string& what) {
  require(q.get_den() == 1 && q > 0 && q < 1000, what + " is not a small positive integer");
  return static_cast<int>(q.get_num().get_si());
}

std::vector<Rational> indexed(const Certificate& c, const std::string& prefix, const std::string& suffix = "") {
  std::vector<Rational> out;
  for (int i = 0;; ++i) {
    auto it = c.payload.find(prefix + "[" + std::to_string(i) + "]" + suffix);
    if (it == c.payload.end()) break;
    out.push_back(it->second);
  }
  return out;
}

// E^3 from the stored type, checked against the stored value.
Rational checked_e3(const Certificate& c) {
  int r = small_int(get(c, "r"), "r");
  int a = small_int(get(c, "type.a"), "type.a");
  Rational e3 = e_cubed(r, a);
  require(get(c, "E3") == e3, "E3 does not match the quotient type");
  return e3;
}

std::string reverify_excltc(const Certificate& c) {
  int r = small_int(get(c, "r"), "r");
  Rational e3 = checked_e3(c);
  const Rational& A3 = get(c, "A3");
  const Rational& lambda = get(c, "lambda");
  const Rational& mu = get(c, "mu");
  require(lambda > 0, "lambda must be positive");
  Rational inv_r = qq(1, r);
  Rational c_of_L = mu / lambda + inv_r;
  c_of_L.canonicalize();
  require(get(c, "c") == c_of_L, "c does not match L");
  require(get(c, "scale") == lambda, "scale does not match L");
  auto degs = indexed(c, "iso", ".degree");
  auto ords = indexed(c, "iso", ".ord");
  require(degs.size() == ords.size(), "isolating set entries are incomplete");
  bool nef_ok = false;
  if (!degs.empty()) {
    Rational cmax = 0;
    bool applies = true;
    for (std::size_t i = 0; i < degs.size(); ++i) {
      require(degs[i] > 0, "isolating degree must be positive");
      Rational t = inv_r - ords[i] / degs[i];
      t.canonicalize();
      if (t < 0) applies = false;
      cmax = std::max(cmax, t);
    }
    if (cmax > inv_r) applies = false;
    if (applies) require(c_of_L == cmax, "c does not follow from the isolating set");
    nef_ok = applies && ev(c, "isolating") == "verified";
  } else {
    nef_ok = ev(c, "nef") == "caller-asserted";
  }
  Rational at = lambda * A3, et = -mu * e3 / (r * r);
  at.canonicalize();
  et.canonicalize();
  require(get(c, "A_term") == at, "A_term mismatch");
  require(get(c, "E_term") == et, "E_term mismatch");
  Rational lbb = at - et;
  lbb.canonicalize();
  require(get(c, "LBB") == lbb, "LBB mismatch");
  require(lbb == triple_product({lambda, mu}, {1, -inv_r}, {1, -inv_r}, {r, 1, A3, e3}), "LBB is not L.B.B");
  if (!nef_ok) return verdicts::kInconclusive;
  return lbb <= 0 ? verdicts::kExcluded : verdicts::kNotExcluded;
}

std::string reverify_exclbadC(const Certificate& c) {
  int r = small_int(get(c, "r"), "r");
  Rational e3 = checked_e3(c);
  const Rational& A3 = get(c, "A3");
  const Rational &a = get(c, "S.B"), &d = get(c, "S.E"), &b = get(c, "T.B"), &e = get(c, "T.E");
  BlowupData data{r, 1, A3, e3};
  DivisorClass S = from_BE(a, d, r), T = from_BE(b, e, r);
  Rational tst = triple_product(T, S, T, data);
  Rational at = T.lambda * T.lambda * S.lambda * A3, et = -(T.mu * T.mu * S.mu * e3);
  at.canonicalize();
  et.canonicalize();
  require(get(c, "A_term") == at, "A_term mismatch");
  require(get(c, "E_term") == et, "E_term mismatch");
  require(get(c, "TST") == tst, "TST mismatch");
  Rational bound = b / r, cross = a * e - b * d;
  bound.canonicalize();
  cross.canonicalize();
  bool pre = a > 0 && b > 0 && e >= 0 && e <= bound && cross >= 0;
  if (ev(c, "E-slice") != "finite") return verdicts::kInconclusive;
  if (!pre) return verdicts::kNotExcluded;
  return tst <= 0 ? verdicts::kExcluded : verdicts::kNotExcluded;
}

std::string reverify_qi(const Certificate& c) {
  int r = small_int(get(c, "r"), "r");
  Rational e3 = checked_e3(c);
  const Rational& A3 = get(c, "A3");
  Rational b3 = A3 - e3 / (r * r * r);
  b3.canonicalize();
  require(get(c, "B3") == b3, "B3 mismatch");
  auto proj = indexed(c, "proj");
  require(proj.size() == 4, "projection needs four weights");
  Rational prod = 1;
  for (const auto& w : proj) prod *= w;
  Rational h3 = 1 / prod;
  h3.canonicalize();
  require(get(c, "H3") == h3, "H3 mismatch");
  Rational ratio = b3 / h3;
  ratio.canonicalize();
  require(get(c, "ratio") == ratio, "ratio mismatch");
  if (ev(c, "indeterminacy") != "centre-only" || ev(c, "E-slice") != "empty") return verdicts::kInconclusive;
  return ratio == 2 ? verdicts::kQI : verdicts::kInconclusive;
}

std::string reverify_link(const Certificate& c) {
  int r = small_int(get(c, "r"), "r");
  Rational e3 = checked_e3(c);
  const Rational& A3 = get(c, "A3");
  Rational b3 = A3 - e3 / (r * r * r);
  b3.canonicalize();
  require(get(c, "B3") == b3, "B3 mismatch");
  int dS = small_int(get(c, "d_S"), "d_S"), dT = small_int(get(c, "d_T"), "d_T");
  auto as_ints = [&](const std::vector<Rational>& v, const std::string& what) {
    std::vector<int> out;
    for (const auto& q : v) out.push_back(small_int(q, what));
    return out;
  };
  auto eci = as_ints(indexed(c, "E.ci"), "E.ci"), eam = as_ints(indexed(c, "E.ambient"), "E.ambient");
  auto pci = as_ints(indexed(c, "Ep.ci"), "Ep.ci"), pam = as_ints(indexed(c, "Ep.ambient"), "Ep.ambient");
  require(eci.size() == 3 && pci.size() == 3 && eam.size() == 6 && pam.size() == 6, "presentation sizes");
  Rational mE = multisection_degree(eci, eam, dS, dT), mEp = multisection_degree(pci, pam, dS, dT);
  require(get(c, "m_E") == mE, "m_E mismatch");
  require(get(c, "m_Ep") == mEp, "m_Ep mismatch");
  require(get(c, "m_tauE") == mE, "m_tauE must equal m_E");
  auto lo = link_obstruction_check(mE, mE, mEp);
  require(get(c, "gamma") == lo.gamma, "gamma mismatch");
  if (ev(c, "E.fibre") != "empty" || ev(c, "Ep.fibre") != "empty") return verdicts::kInconclusive;
  return lo.holds ? verdicts::kLink : verdicts::kInconclusive;
}

}  // namespace

std::string reverify(const Certificate& c) {
  for (const auto& r : c.conditions)
    if (!r.pass) return verdicts::kInconclusive;
  if (c.evidence.count("error")) return verdicts::kInconclusive;
  try {
    if (c.method == "curve-degree") return get(c, "A3") <= 1 ? verdicts::kExcluded : verdicts::kNotExcluded;
    if (c.method == "isolate-smooth") {
      const Rational& A3 = get(c, "A3");
      require(A3 > 0, "A3 must be positive");
      Rational bound = 4 / A3;
      bound.canonicalize();
      require(get(c, "bound") == bound, "bound is not 4/A3");
      if (get(c, "a5a6") <= bound) return verdicts::kExcluded;
      if (ev(c, "branch") == "projection" && c.payload.count("fallback") && get(c, "fallback") < bound &&
          ev(c, "p_u") == "not-on-X")
        return verdicts::kExcluded;
      return verdicts::kInconclusive;
    }
    if (c.method == "excltc") return reverify_excltc(c);
    if (c.method == "exclbadC") return reverify_exclbadC(c);
    if (c.method == "quadratic-involution") return reverify_qi(c);
    if (c.method == "link-exists") return reverify_link(c);
  } catch (const Invalid&) {
    return "invalid";
  } catch (const std::invalid_argument&) {
    return "invalid";
  }
  return "invalid";
}

bool round_trip_ok(const Certificate& c) {
  try {
    Certificate back = certificate_from_json(json::parse(to_json(c).dump()));
    return back == c && reverify(back) == c.verdict;
  } catch (const std::exception&) {
    return false;
  }
}

std::string emit_certificates(std::vector<Certificate> certs, const RunMetadata& meta) {
  std::sort(certs.begin(), certs.end(), [](const Certificate& a, const Certificate& b) {
    return std::tie(a.family, a.centre, a.variant, a.method) < std::tie(b.family, b.centre, b.variant, b.method);
  });
  json arr = json::array();
  for (const auto& c : certs) {
    if (!round_trip_ok(c))
      throw std::runtime_error("certificate " + c.family + " " + c.centre + " fails its round-trip check");
    arr.push_back(to_json(c));
  }
  json doc;
  doc["certificates"] = arr;
  doc["metadata"] = {{"seed", meta.seed},
                     {"prime", meta.prime},
                     {"prime_source", meta.prime_source},
                     {"budget", meta.budget},
                     {"count", certs.size()}};
  return doc.dump(2) + "\n";
}

std::vector<Certificate> load_certificates(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("certificate document does not parse: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("certificates") || !doc["certificates"].is_array())
    throw std::runtime_error("certificate document lacks a certificates array");
  std::vector<Certificate> out;
  for (const auto& j : doc["certificates"]) {
    Certificate c = certificate_from_json(j);
    std::string v = reverify(c);
    if (v != c.verdict)
      throw std::runtime_error("certificate " + c.family + " " + c.centre + (c.variant.empty() ? "" : " " + c.variant) +
                               ": stored verdict '" + c.verdict + "' but the payload gives '" + v + "'");
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace pfano
