#include <algorithm>
#include <numeric>

#include "pfano/blowup.hpp"

namespace pfano {

Rational e_cubed(int r, int a) {
  if (a < 1 || a >= r || std::gcd(a, r) != 1) throw std::invalid_argument("invalid quotient type");
  Rational q(r * r, a * (r - a));
  q.canonicalize();
  return q;
}

BlowupData blowup_data(int r, int a, const Rational& A3) { return {r, a, A3, e_cubed(r, a)}; }

Rational triple_product(const DivisorClass& d1, const DivisorClass& d2, const DivisorClass& d3,
                        const BlowupData& data) {
  Rational out = d1.lambda * d2.lambda * d3.lambda * data.A3 + d1.mu * d2.mu * d3.mu * data.E3;
  out.canonicalize();
  return out;
}

DivisorClass from_BE(const Rational& b, const Rational& e, int r) {
  Rational mu = e - b / Rational(r);
  mu.canonicalize();
  return {b, mu};
}

std::pair<Rational, Rational> to_BE(const DivisorClass& d, int r) {
  Rational e = d.mu + d.lambda / Rational(r);
  e.canonicalize();
  return {d.lambda, e};
}

AdmissibleWeight initial_weight(const WeightSystem& ws, int k) {
  AdmissibleWeight out;
  out.r = ws.weights[k];
  out.centre = k;
  out.w.den = out.r;
  for (int i = 0; i < kVars; ++i) {
    if (i == k) continue;
    int b = ws.weights[i] % out.r;
    out.w.num[i] = b == 0 ? out.r : b;
  }
  return out;
}

bool is_admissible(const AdmissibleWeight& w, const WeightSystem& ws) {
  for (int i = 0; i < kVars; ++i) {
    if (i == w.centre) continue;
    if (w.w.num[i] <= 0 || (w.w.num[i] - ws.weights[i]) % w.r != 0) return false;
  }
  return true;
}

AdmissibleWeight weight_from_list(const WeightSystem& ws, int k, const std::array<int, 6>& b) {
  AdmissibleWeight out;
  out.r = ws.weights[k];
  out.centre = k;
  out.w.den = out.r;
  int n = 0;
  for (int i = 0; i < kVars; ++i)
    if (i != k) out.w.num[i] = b[n++];
  if (!is_admissible(out, ws)) throw std::invalid_argument("weight is not admissible");
  return out;
}

FpPoly on_chart(const FpPoly& F, int k) {
  std::map<int, FpPoly> sub{{k, FpPoly::constant(F.field(), 1)}};
  return substitute(F, sub);
}

Rational min_weight(const FpPoly& G, const FractionalWeight& w) { return lowest_weight_part(G, w).second; }

KBLResult kbl_check(const Equations& X, const WeightSystem& ws, int k, int a, const AdmissibleWeight& w) {
  KBLResult out;
  const PrimeField& f = X[0].field();
  int r = ws.weights[k];
  if (!is_admissible(w, ws)) {
    out.diagnostic = "weight is not admissible";
    return out;
  }
  for (int j = 0; j < 5; ++j) {
    FpPoly c = on_chart(X[j], k);
    if (c.is_zero()) {
      out.lowest[j] = FpPoly(f);
      continue;
    }
    auto [low, wt] = lowest_weight_part(c, w.w);
    out.lowest[j] = low;
    out.lowest_weight[j] = wt;
  }
  std::vector<int> others;
  for (int i = 0; i < kVars; ++i)
    if (i != k) others.push_back(i);
  std::array<int, 3> model{1, a, r - a};
  std::sort(model.begin(), model.end());
  // Enumerate eliminated triples, equation triples and matchings.
  for (int m = 0; m < 64; ++m) {
    if (__builtin_popcount(static_cast<unsigned>(m)) != 3) continue;
    std::vector<int> elim, tang;
    for (int t = 0; t < 6; ++t) (m >> t & 1 ? elim : tang).push_back(others[t]);
    std::array<int, 3> tb{};
    for (int t = 0; t < 3; ++t) tb[t] = w.w.num[tang[t]];
    std::sort(tb.begin(), tb.end());
    if (tb != model) continue;
    for (int e = 0; e < 32; ++e) {
      if (__builtin_popcount(static_cast<unsigned>(e)) != 3) continue;
      std::vector<int> eqs;
      for (int j = 0; j < 5; ++j)
        if (e >> j & 1) eqs.push_back(j);
      // Coefficient of x_i in F_j^w.
      std::array<std::array<std::uint32_t, 3>, 3> C{};
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) C[x][y] = out.lowest[eqs[x]].coefficient(unit_exponent(elim[y]));
      std::uint32_t det = 0;
      {
        auto t = [&](int p, int q, int s) { return f.mul(C[0][p], f.mul(C[1][q], C[2][s])); };
        det = f.sub(f.add(f.add(t(0, 1, 2), t(1, 2, 0)), t(2, 0, 1)), f.add(f.add(t(2, 1, 0), t(0, 2, 1)), t(1, 0, 2)));
      }
      if (!det) continue;
      std::array<int, 3> perm{0, 1, 2};
      do {
        bool okm = true;
        for (int x = 0; x < 3 && okm; ++x) okm = C[x][perm[x]] != 0;
        if (okm) break;
      } while (std::next_permutation(perm.begin(), perm.end()));
      out.ok = true;
      for (int x = 0; x < 3; ++x) {
        out.matching[x] = {elim[perm[x]], eqs[x], 0};
        Rational d = out.lowest_weight[eqs[x]] * r;
        d.canonicalize();
        out.ci_degrees[x] = static_cast<int>(d.get_num().get_si());
      }
      for (int t = 0; t < 3; ++t) out.tangent[t] = tang[t];
      return out;
    }
  }
  out.diagnostic = "no KBL matching for the given weight";
  return out;
}

OrdBounds ord_lower_bounds(const Equations& X, const WeightSystem& ws, int k, int a, AdmissibleWeight start) {
  OrdBounds out;
  out.w = start;
  out.kbl = kbl_check(X, ws, k, a, out.w);
  if (!out.kbl.ok) return out;
  int cap = 0;
  for (const auto& F : X)
    if (auto d = F.weighted_degree(ws)) cap = std::max(cap, *d);
  cap = cap / ws.weights[k] + 1;
  for (int step = 0; step < cap; ++step) {
    bool bumped = false;
    for (const auto& m : out.kbl.matching) {
      const FpPoly& low = out.kbl.lowest[m.equation];
      if (low.size() == 1 && low.terms().begin()->first == unit_exponent(m.coord)) {
        out.w.w.num[m.coord] += out.w.r;
        bumped = true;
        break;
      }
    }
    if (!bumped) break;
    ++out.bumps;
    KBLResult next = kbl_check(X, ws, k, a, out.w);
    if (!next.ok) throw std::logic_error("bumped weight lost the KBL condition");
    out.kbl = next;
  }
  return out;
}

Rational ord_lower_bound(const Equations& X, const WeightSystem& ws, int k, int a, int i) {
  auto b = ord_lower_bounds(X, ws, k, a, initial_weight(ws, k));
  return b.w.ord(i);
}

Elimination1 eliminate_terms(const FpPoly& F, int pivot, int centre, int power, const WeightSystem& ws) {
  const PrimeField& f = F.field();
  Exponent pe{};
  pe[centre] = static_cast<std::uint16_t>(power);
  pe[pivot] = 1;
  std::uint32_t alpha = F.coefficient(pe);
  if (!alpha) throw std::invalid_argument("pivot coefficient alpha is zero");
  auto inv = f.inv(alpha);
  Elimination1 out;
  out.result = F;
  FpPoly total(f);
  for (int step = 0; step < 64; ++step) {
    FpPoly h(f);
    for (const auto& [e, c] : out.result.terms()) {
      if (e[centre] < power || e == pe) continue;
      Exponent q = e;
      q[centre] = static_cast<std::uint16_t>(q[centre] - power);
      if (q[pivot]) throw std::logic_error("elimination met a pivot term beyond the lemma's shape");
      h.add_term(q, f.mul(c, inv));
    }
    if (h.is_zero()) {
      out.substitution[pivot] = FpPoly::variable(f, pivot) - total;
      return out;
    }
    std::map<int, FpPoly> sub{{pivot, FpPoly::variable(f, pivot) - h}};
    out.result = substitute(out.result, sub, &ws);
    total += h;
    ++out.steps;
  }
  throw std::runtime_error("elimination did not terminate");
}

LowSection section_from_lowest_part(const FpPoly& F, const WeightSystem& ws, const AdmissibleWeight& w) {
  int k = w.centre;
  FpPoly chart = on_chart(F, k);
  auto [low, wt] = lowest_weight_part(chart, w.w);
  FpPoly rest = chart - low;
  // Re-homogenise: every monomial of the lowest part gets the x_k power restoring the degree of F.
  auto dF = F.weighted_degree(ws);
  if (!dF) throw std::invalid_argument("section_from_lowest_part needs a homogeneous polynomial");
  const PrimeField& f = F.field();
  int min_k = 1 << 20;
  std::vector<std::pair<Exponent, std::uint32_t>> terms;
  for (const auto& [e, c] : low.terms()) {
    int rem = *dF - ws.degree(e);
    if (rem % ws.weights[k]) throw std::logic_error("lowest part cannot be re-homogenised");
    Exponent h = e;
    h[k] = static_cast<std::uint16_t>(rem / ws.weights[k]);
    min_k = std::min(min_k, static_cast<int>(h[k]));
    terms.emplace_back(h, c);
  }
  LowSection out;
  out.section = FpPoly(f);
  for (auto [e, c] : terms) {
    e[k] = static_cast<std::uint16_t>(e[k] - min_k);
    out.section.add_term(e, c);
  }
  out.degree = *dF - min_k * ws.weights[k];
  if (rest.is_zero()) throw std::runtime_error("section equals F on the chart; no order bound available");
  out.ord = min_weight(rest, w.w);
  return out;
}

ExceptionalData exceptional_data(int r, int a, const KBLResult* kbl, const AdmissibleWeight* w) {
  ExceptionalData out;
  auto add = [&](int s, int t) {
    // 1/s(1, t, -1)
    std::array<int, 3> res{1, ((t % s) + s) % s, s - 1};
    auto b = terminal_type(s, res);
    if (!b) throw std::logic_error("non-terminal point on the blowup");
    out.new_points.push_back({s, *b, 1});
  };
  if (a > 1) add(a, r - a);
  if (r - a > 1) add(r - a, a);
  out.new_points = normalised_basket(out.new_points);
  if (kbl && w) {
    for (const auto& m : kbl->matching) out.equations.push_back(kbl->lowest[m.equation]);
    int n = 0;
    for (int i = 0; i < kVars; ++i)
      if (i != w->centre) out.ambient[n++] = w->w.num[i];
  }
  return out;
}

}  // namespace pfano
