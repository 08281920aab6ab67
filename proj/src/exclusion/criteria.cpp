#include <algorithm>
#include <numeric>

#include "support.hpp"

namespace pfano {

Certificate exclude_curves(const std::string& family, const Rational& A3) {
  Certificate c;
  c.family = family;
  c.centre = "curves";
  c.method = "curve-degree";
  c.payload["A3"] = A3;
  c.verdict = A3 <= 1 ? verdicts::kExcluded : verdicts::kNotExcluded;
  return c;
}

Certificate exclude_smooth_points(const FamilySpec& spec, const Equations* member) {
  Certificate c;
  c.family = spec.id;
  c.centre = "nonsingular points";
  c.method = "isolate-smooth";
  std::array<int, kVars> w = spec.space.weights;
  std::sort(w.begin(), w.end());
  Rational bound = 4 / spec.A3;
  bound.canonicalize();
  Rational a5a6(w[5] * w[6]);
  c.payload["A3"] = spec.A3;
  c.payload["bound"] = bound;
  c.payload["a5a6"] = a5a6;
  if (a5a6 <= bound) {
    c.evidence["branch"] = "a5a6";
    c.verdict = verdicts::kExcluded;
    return c;
  }
  // Polynomials of degree lcm(a0..a5) in the first six coordinates isolate every point off p_u, so
  // the projection branch needs that lcm below the bound and p_u off X.
  int l = 1;
  for (int i = 0; i < 6; ++i) l = std::lcm(l, w[i]);
  c.payload["fallback"] = Rational(l);
  c.evidence["branch"] = "projection";
  if (!member)
    c.evidence["p_u"] = "unchecked";
  else {
    int top = 0;
    for (int i = 1; i < kVars; ++i)
      if (spec.space.weights[i] > spec.space.weights[top]) top = i;
    c.evidence["p_u"] = vertex_membership(*member, top) ? "on-X" : "not-on-X";
  }
  c.verdict = reverify(c);
  return c;
}

IsolationCheck verify_isolating_set(const Equations& X, const std::vector<FpPoly>& polys, std::size_t budget) {
  IsolationCheck out;
  std::vector<FpPoly> gens(X.begin(), X.end());
  for (const auto& p : polys) gens.push_back(p);
  try {
    out.cone_dimension = detail::cone_dimension(gens, 0x7f, budget);
  } catch (const BudgetExceeded& e) {
    out.diagnostic = std::string("budget exhausted: ") + e.what();
    return out;
  }
  if (out.cone_dimension <= 1)
    out.status = Isolation::Isolated;
  else if (out.cone_dimension == 2)
    out.diagnostic = "the cut contains a curve; it may miss the centre";
  else
    out.status = Isolation::NotIsolated;
  return out;
}

NefResult nef_from_isolating(int r, const std::vector<IsolatingEntry>& set) {
  NefResult out;
  Rational inv_r = qq(1, r);
  int best_degree = 0;
  Rational best = -1;
  for (const auto& e : set) {
    if (e.degree <= 0) {
      out.diagnostic = e.name + " has non-positive degree";
      return out;
    }
    Rational t = inv_r - e.ord / e.degree;
    t.canonicalize();
    if (t < 0) {
      out.diagnostic = e.name + " vanishes to order above deg/r; the nef lemma does not apply";
      return out;
    }
    if (t > best) {
      best = t;
      best_degree = e.degree;
    }
  }
  if (set.empty()) {
    out.diagnostic = "empty isolating set";
    return out;
  }
  if (best > inv_r) {
    out.diagnostic = "c exceeds 1/r";
    return out;
  }
  out.c = best;
  out.scale = best_degree;
  Rational mu = best_degree * (best - inv_r);
  mu.canonicalize();
  out.L = {Rational(best_degree), mu};
  return out;
}

Certificate criterion_excltc(const DivisorClass& L, const BlowupData& data) {
  Certificate c;
  c.method = "excltc";
  int r = data.r;
  Rational at = L.lambda * data.A3, et = -L.mu * data.E3 / (r * r);
  at.canonicalize();
  et.canonicalize();
  Rational cc = L.mu / L.lambda + qq(1, r);
  cc.canonicalize();
  c.payload = {{"r", Rational(r)},        {"type.a", Rational(data.a)}, {"A3", data.A3},
               {"E3", data.E3},           {"lambda", L.lambda},         {"mu", L.mu},
               {"c", cc},                 {"scale", L.lambda},          {"A_term", at},
               {"E_term", et},            {"LBB", triple_product(L, data.B(), data.B(), data)}};
  c.evidence["nef"] = "caller-asserted";
  c.verdict = reverify(c);
  return c;
}

Certificate criterion_exclbadC(const Rational& a, const Rational& d, const Rational& b, const Rational& e,
                               const BlowupData& data, const std::string& gamma_evidence) {
  Certificate c;
  c.method = "exclbadC";
  DivisorClass S = from_BE(a, d, data.r), T = from_BE(b, e, data.r);
  Rational at = T.lambda * T.lambda * S.lambda * data.A3, et = -(T.mu * T.mu * S.mu * data.E3);
  at.canonicalize();
  et.canonicalize();
  c.payload = {{"r", Rational(data.r)}, {"type.a", Rational(data.a)}, {"A3", data.A3}, {"E3", data.E3},
               {"S.B", a},              {"S.E", d},                    {"T.B", b},       {"T.E", e},
               {"A_term", at},          {"E_term", et},                {"TST", triple_product(T, S, T, data)}};
  c.evidence["Gamma"] = gamma_evidence;
  c.evidence["E-slice"] = "finite";
  c.verdict = reverify(c);
  return c;
}

Rational multisection_degree(const std::vector<int>& ci_degrees, const std::vector<int>& ambient, int d_S, int d_T) {
  Rational num(d_S * d_T), den(1);
  for (int d : ci_degrees) num *= d;
  for (int b : ambient) den *= b;
  Rational out = num / den;
  out.canonicalize();
  return out;
}

std::optional<long> double_cover_check(const Rational& B3, const Rational& H3) {
  if (B3 <= 0 || H3 <= 0) return std::nullopt;
  Rational q = B3 / H3;
  q.canonicalize();
  if (q.get_den() != 1) return std::nullopt;
  return q.get_num().get_si();
}

LinkObstruction link_obstruction_check(const Rational& m_tauE, const Rational& m_E, const Rational& m_Eprime) {
  LinkObstruction out;
  if (m_Eprime == 0) throw std::invalid_argument("m_E' must be nonzero");
  out.gamma = (m_tauE + m_E) / m_Eprime;
  out.gamma.canonicalize();
  out.holds = out.gamma.get_den() != 1;
  return out;
}

}  // namespace pfano
