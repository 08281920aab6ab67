#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pfano/blowup.hpp"
#include "pfano/pfaffian.hpp"

namespace pfano {

// ---------------------------------------------------------------------------
// Certificates

struct ConditionResult {
  std::string id;
  bool pass = false;
  std::map<std::string, std::string> witness;  // named coefficients or derived values
  std::string diagnostic;
  bool operator==(const ConditionResult&) const = default;
};

namespace verdicts {
inline const std::string kExcluded = "excluded";
inline const std::string kQI = "Q.I.";
inline const std::string kLink = "exists-link";
inline const std::string kNotExcluded = "not-excluded";
inline const std::string kInconclusive = "inconclusive";
}  // namespace verdicts

struct Certificate {
  std::string family;
  std::string centre;   // "r/(1,a,r-a)#k", "curves" or "nonsingular points"
  std::string variant;  // empty for the table row; names a forced branch otherwise
  std::string method;   // curve-degree | isolate-smooth | excltc | exclbadC | quadratic-involution | link-exists
  std::map<std::string, Rational> payload;
  std::map<std::string, std::string> evidence;
  std::vector<ConditionResult> conditions;
  std::string verdict;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> prime;
  bool operator==(const Certificate&) const = default;
};

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);  // throws std::runtime_error on malformed input

// The verdict implied by the payload, evidence and conditions. Returns "invalid" when the payload is
// internally inconsistent (a stored product that does not match its factors, for instance).
std::string reverify(const Certificate& c);

// Serialise, parse back and re-derive the verdict; true when it equals the stored one.
bool round_trip_ok(const Certificate& c);

struct RunMetadata {
  std::uint64_t seed = 1;
  std::uint32_t prime = 10007;
  std::string prime_source = "default";  // default | flag | environment
  std::size_t budget = 0;
};

// Deterministic document: certificates sorted by (family, centre, variant), two-space indentation.
std::string emit_certificates(std::vector<Certificate> certs, const RunMetadata& meta);
// Parses a document and re-verifies every certificate; throws std::runtime_error naming the first
// certificate whose verdict does not follow from its payload.
std::vector<Certificate> load_certificates(const std::string& text);

// ---------------------------------------------------------------------------
// Criteria

Certificate exclude_curves(const std::string& family, const Rational& A3);

// member is used for the projection branch (p_u not on X); it may be null for the main branch.
Certificate exclude_smooth_points(const FamilySpec& spec, const Equations* member);

enum class Isolation { Isolated, NotIsolated, Inconclusive };
struct IsolationCheck {
  Isolation status = Isolation::Inconclusive;
  int cone_dimension = -2;
  std::string diagnostic;
};
// The affine cone of X cut by the polynomials has dimension at most one.
IsolationCheck verify_isolating_set(const Equations& X, const std::vector<FpPoly>& polys,
                                    std::size_t budget = kDefaultBudget);

struct IsolatingEntry {
  std::string name;
  int degree = 0;
  Rational ord;  // certified lower bound for ord_E
};

struct NefResult {
  DivisorClass L;   // scaled presentation
  Rational c;       // L is proportional to B + cE
  Rational scale;   // L = scale (B + cE)
  std::string diagnostic;  // empty when the lemma applies
};
// c = max_i (1/r - ord_i / deg_i); requires every term non-negative and c <= 1/r.
NefResult nef_from_isolating(int r, const std::vector<IsolatingEntry>& set);

Certificate criterion_excltc(const DivisorClass& L, const BlowupData& data);
// S = aB + dE and T = bB + eE.
Certificate criterion_exclbadC(const Rational& a, const Rational& d, const Rational& b, const Rational& e,
                               const BlowupData& data, const std::string& gamma_evidence);

// (prod CI degrees * d_S * d_T) / prod ambient weights.
Rational multisection_degree(const std::vector<int>& ci_degrees, const std::vector<int>& ambient, int d_S, int d_T);

// B^3 / H^3 when integral.
std::optional<long> double_cover_check(const Rational& B3, const Rational& H3);

struct LinkObstruction {
  Rational gamma;
  bool holds = false;  // gamma is not an integer
};
// Solves m_tau = -m_E + gamma m_E' for gamma (the B-coefficient meets a fibre trivially).
LinkObstruction link_obstruction_check(const Rational& m_tauE, const Rational& m_E, const Rational& m_Eprime);

// ---------------------------------------------------------------------------
// Generality conditions

const std::vector<std::string>& condition_ids();
std::string condition_family(const std::string& id);
std::string condition_description(const std::string& id);

// Evaluates a condition on a member already in the required normal form (see prepare_condition_member).
ConditionResult check_generality_condition(const std::string& id, const FpMatrix& M);

// Negative control: zeroes the coefficient the condition names, on a normalised member.
FpMatrix zero_condition_coefficient(const std::string& id, const FpMatrix& M);

// ---------------------------------------------------------------------------
// Family driver

struct CertifyOptions {
  std::uint64_t seed = 1;
  std::uint32_t prime = 10007;
  std::size_t budget = kDefaultBudget;
  std::string negative_control;  // condition id whose coefficient is zeroed, or empty
  bool parallel = true;          // OpenMP over centres; false runs the serial reference path
  const FpMatrix* member = nullptr;  // explicit member replacing the sampled one
  int max_attempts = 40;
};

std::string centre_id(int r, int a, int k);
struct CentreRef {
  int r = 0;
  int a = 0;
  int k = 1;
};
// Accepts "r/(1,a,r-a)#k", "1/r(1,a,r-a)#k", "1/r" and the like; ambiguity is an error.
CentreRef parse_centre(const FamilySpec& spec, const std::string& text);

// The certificate for one table centre (the forced-branch variants are not included).
Certificate certify_centre(const FamilySpec& spec, const CentreRef& c, const CertifyOptions& opt);

// Curves, nonsingular points, every centre in the table, and the forced-branch variants.
std::vector<Certificate> certify_family(const FamilySpec& spec, const CertifyOptions& opt);

// The condition evaluated on the member prepared for the centre that depends on it.
struct ConditionReport {
  std::string family;
  std::string centre;
  ConditionResult result;
  std::uint64_t seed = 0;
  std::uint32_t prime = 0;
};
ConditionReport gencond(const std::string& id, const CertifyOptions& opt);
nlohmann::json to_json(const ConditionReport& r);

// One disagreement between certified verdicts and the table.
struct TableIssue {
  std::string text;
  bool inconclusive = false;  // the certificate could not decide, as opposed to a wrong verdict
};
std::vector<TableIssue> table_mismatches(const FamilySpec& spec, const std::vector<Certificate>& certs);

std::string expected_verdict(Verdict v);

}  // namespace pfano
