#include <algorithm>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <regex>
#include <stdexcept>
#include <tuple>

#ifdef _OPENMP
#endif

#include "support.hpp"

namespace pfano {

using namespace detail;

namespace {

// The member cannot carry the argument (a pivot coefficient vanishes, a point is irrational, ...);
// the driver moves on to the next sample.
class Degenerate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t attempt_seed(std::uint64_t seed, int n) {
  return n == 0 ? seed : splitmix(seed * 0x100000001b3ULL + static_cast<std::uint64_t>(n));
}

// ---------------------------------------------------------------------------
// Sampled members and their singular scans, shared between centres of one run.

struct Member {
  FpMatrix M;
  Equations X;
  SingularScan scan;
};

struct CacheSlot {
  std::once_flag once;
  std::shared_ptr<const Member> member;
};

std::mutex cache_mutex;
std::map<std::tuple<std::string, std::uint64_t, std::uint32_t>, std::shared_ptr<CacheSlot>> cache;

std::shared_ptr<const Member> sampled_member(const FamilySpec& spec, std::uint64_t seed, std::uint32_t prime,
                                             std::size_t budget) {
  std::shared_ptr<CacheSlot> slot;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& s = cache[{spec.id, seed, prime}];
    if (!s) s = std::make_shared<CacheSlot>();
    slot = s;
  }
  std::call_once(slot->once, [&] {
    auto m = std::make_shared<Member>();
    m->M = sample_member(spec, seed, PrimeField(prime));
    m->X = compute_pfaffians(m->M);
    m->scan = singular_scan(m->X, spec.space, seed, budget);
    slot->member = m;
  });
  return slot->member;
}

Member explicit_member(const FamilySpec& spec, const FpMatrix& M, std::uint64_t seed, std::size_t budget) {
  Member m;
  m.M = M;
  m.X = compute_pfaffians(M);
  m.scan = singular_scan(m.X, spec.space, seed, budget);
  return m;
}

// ---------------------------------------------------------------------------
// Normal forms for the two link centres. Lower-case pieces are random forms in the base variables.

struct Randomiser {
  const PrimeField& F;
  const WeightSystem& ws;
  std::mt19937_64 rng;
  FpPoly form(int d, std::uint8_t mask) { return random_homogeneous(F, ws, d, rng, mask); }
  std::uint32_t nonzero() { return static_cast<std::uint32_t>(1 + rng() % (F.p - 1)); }
  FpPoly scalar() { return FpPoly::constant(F, nonzero()); }
  FpPoly v(const char* n) { return FpPoly::variable(F, ws.index_of(n)); }
};

FpMatrix deg12_link_template(const FamilySpec& spec, std::uint64_t seed, const PrimeField& F) {
  const auto& ws = spec.space;
  Randomiser R{F, ws, std::mt19937_64(seed ^ 0x12ULL)};
  std::uint8_t base = mask_of(ws, {"x", "y", "z"});
  auto p = [&](int d) { return R.form(d, base); };
  FpPoly a3 = p(3);
  if (!coef(a3, ws, "y")) set_coef(a3, ws, "y", R.nonzero());
  FpPoly a4 = p(4), b1p = p(1), c2p = p(2), c3p = p(3), b1 = p(1), c2 = p(2), b6 = p(6), d4 = p(4);
  FpPoly c1 = p(1), c7 = p(7), c1p = p(1), c2pp = p(2), c8 = p(8), d2 = p(2), d3 = p(3), d9 = p(9);
  FpPoly alpha = R.scalar(), beta = R.scalar();
  FpPoly x = R.v("x"), y = R.v("y"), z = R.v("z"), t0 = R.v("t0"), t1 = R.v("t1"), u = R.v("u"), v = R.v("v");
  FpMatrix M;
  M.space = ws;
  M.entry_degrees = spec.entry_degrees;
  M.at(1, 2) = a3;
  M.at(1, 3) = a4;
  M.at(1, 4) = t0 + a4 * b1p - a3 * c2p;
  M.at(1, 5) = u - a3 * c3p;
  M.at(2, 3) = t1 + a4 * b1 - a3 * c2;
  M.at(2, 4) = alpha * u + t0 * b1 + t1 * b1p + b6;
  M.at(2, 5) = -v + u * b1 + a3 * (d4 - b1 * c3p);
  M.at(3, 4) = -(beta * v) + u * c1 + t0 * c2 + t1 * c2p + c7;
  M.at(3, 5) = v * c1p + u * c2pp - t0 * y + t1 * c3p + c8;
  M.at(4, 5) = v * d2 + u * d3 + t0 * d4 + t1 * (z + b1p * c3p) + d9;
  (void)x;
  return M;
}

FpMatrix deg4_link_template(const FamilySpec& spec, std::uint64_t seed, const PrimeField& F) {
  const auto& ws = spec.space;
  Randomiser R{F, ws, std::mt19937_64(seed ^ 0x04ULL)};
  std::uint8_t base = mask_of(ws, {"x", "y", "z0"}), wide = mask_of(ws, {"x", "y", "z0", "z1"});
  auto p = [&](int d) { return R.form(d, base); };
  FpPoly a2 = p(2);
  if (!coef(a2, ws, "y")) set_coef(a2, ws, "y", R.nonzero());
  FpPoly c2p = p(2), e1p = p(1), b1p = p(1), b4p = p(4), e1 = p(1), c1 = p(1), c2 = p(2), d1 = p(1), d2 = p(2);
  FpPoly B5 = R.form(5, wide), C6 = R.form(6, wide), D6 = R.form(6, wide);
  set_coef(C6, ws, "z1^2", 0);
  if (!coef(D6, ws, "z1^2")) set_coef(D6, ws, "z1^2", R.nonzero());
  FpPoly alpha = R.scalar();
  FpPoly y = R.v("y"), z0 = R.v("z0"), z1 = R.v("z1"), t0 = R.v("t0"), t1 = R.v("t1"), u = R.v("u");
  FpMatrix M;
  M.space = ws;
  M.entry_degrees = spec.entry_degrees;
  M.at(1, 2) = a2;
  M.at(1, 3) = z0;
  M.at(1, 4) = z1;
  M.at(1, 5) = t0 - a2 * c2p + e1p * z0;
  M.at(2, 3) = t1 + b1p * z0;
  M.at(2, 4) = t0 + z1 * b1p + b4p;
  M.at(2, 5) = alpha * u + t0 * e1 + t1 * e1p + B5;
  M.at(3, 4) = u;
  M.at(3, 5) = u * c1 + t0 * c2 + t1 * c2p + C6;
  M.at(4, 5) = u * d1 + t0 * d2 + t1 * y + D6;
  return M;
}

// ---------------------------------------------------------------------------
// Per-centre working state.

struct Ctx {
  const FamilySpec& spec;
  const CertifyOptions& opt;
  CentreRef ref;
  std::string variant;
  PrimeField F;
  FpMatrix M;
  int k = -1;  // vertex carrying the centre, -1 when the centre is not moved to a vertex
  SingularOrbit orbit;
  std::vector<ConditionResult> conds;
  std::map<std::string, std::string> evidence;

  const WeightSystem& ws() const { return spec.space; }
  int v(const std::string& n) const {
    int i = spec.space.index_of(n);
    if (i < 0) throw std::logic_error("no variable " + n);
    return i;
  }
  Equations X() const { return compute_pfaffians(M); }
  BlowupData data() const { return blowup_data(ref.r, ref.a, spec.A3); }
  FpPoly var(const std::string& n) const { return FpPoly::variable(F, v(n)); }
};

// Evaluates a condition on the current member, applying the negative control first when it names it.
bool condition(Ctx& c, const std::string& id) {
  if (c.opt.negative_control == id) {
    c.M = zero_condition_coefficient(id, c.M);
    c.evidence["negative-control"] = id;
  }
  ConditionResult r = check_generality_condition(id, c.M);
  c.conds.push_back(r);
  return r.pass;
}

Certificate stopped(Ctx& c, const std::string& method) {
  Certificate out;
  out.method = method;
  out.evidence["stopped"] = "condition " + c.conds.back().id + " fails";
  return out;
}

void eliminate(Ctx& c, int eq, const std::string& pivot, const std::string& centre, int power) {
  Elimination1 e;
  try {
    e = eliminate_terms(c.X()[eq], c.v(pivot), c.v(centre), power, c.ws());
  } catch (const std::invalid_argument& ex) {
    throw Degenerate(std::string("elimination of ") + pivot + ": " + ex.what());
  }
  c.M = substitute_entries(c.M, e.substitution);
}

// Linear change of two equal-weight coordinates: the new u0', u1' are the given linear forms.
void change_pair(Ctx& c, const std::string& n0, const std::string& n1, const std::array<std::uint32_t, 2>& f0,
                 const std::array<std::uint32_t, 2>& f1) {
  const PrimeField& F = c.F;
  std::uint32_t det = det2(F, f0, f1);
  if (!det) throw Degenerate("linear change of " + n0 + ", " + n1 + " is singular");
  std::uint32_t di = F.inv(det);
  FpPoly u0 = c.var(n0), u1 = c.var(n1);
  // Inverse of [[f0], [f1]].
  std::map<int, FpPoly> sub;
  sub[c.v(n0)] = u0.scaled(F.mul(f1[1], di)) - u1.scaled(F.mul(f0[1], di));
  sub[c.v(n1)] = u1.scaled(F.mul(f0[0], di)) - u0.scaled(F.mul(f1[0], di));
  c.M = substitute_entries(c.M, sub);
}

KBLResult kbl(const Ctx& c, const Equations& X, int k, int a, const AdmissibleWeight& w) {
  KBLResult r = kbl_check(X, c.ws(), k, a, w);
  if (!r.ok) throw Degenerate("Kawamata blowup weight rejected: " + r.diagnostic);
  return r;
}

std::vector<FpPoly> matched_lowest(const KBLResult& r) {
  std::vector<FpPoly> out;
  for (const auto& m : r.matching) out.push_back(r.lowest[m.equation]);
  return out;
}

// Dimension of the affine cone over E cut by the named coordinates.
int e_slice(const Ctx& c, const KBLResult& r, int k, const std::vector<std::string>& names) {
  auto polys = matched_lowest(r);
  for (const auto& n : names) polys.push_back(c.var(n));
  return cone_dimension(polys, mask_without(k), c.opt.budget);
}

struct IsoItem {
  IsolatingEntry entry;
  FpPoly poly;
};

IsoItem coordinate(const Ctx& c, const std::string& n, const Rational& ord) {
  return {{n, c.ws().weights[c.v(n)], ord}, c.var(n)};
}

IsoItem coordinate(const Ctx& c, const std::string& n, const AdmissibleWeight& w) {
  return coordinate(c, n, w.ord(c.v(n)));
}

Certificate excltc(Ctx& c, const Equations& X, const std::vector<IsoItem>& items) {
  std::vector<IsolatingEntry> entries;
  std::vector<FpPoly> polys;
  for (const auto& it : items) {
    entries.push_back(it.entry);
    polys.push_back(it.poly);
  }
  NefResult nef = nef_from_isolating(c.ref.r, entries);
  if (!nef.diagnostic.empty()) {
    Certificate out;
    out.method = "excltc";
    out.evidence["error"] = nef.diagnostic;
    return out;
  }
  Certificate out = criterion_excltc(nef.L, c.data());
  out.evidence.erase("nef");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::string key = "iso[" + std::to_string(i) + "]";
    out.payload[key + ".degree"] = Rational(entries[i].degree);
    out.payload[key + ".ord"] = entries[i].ord;
    out.evidence[key] = entries[i].name;
  }
  IsolationCheck iso = verify_isolating_set(X, polys, c.opt.budget);
  out.evidence["isolating"] = iso.status == Isolation::Isolated      ? "verified"
                              : iso.status == Isolation::NotIsolated ? "not-isolating"
                                                                     : "undecided";
  out.evidence["cone-dimension"] = std::to_string(iso.cone_dimension);
  if (!iso.diagnostic.empty()) out.evidence["isolating-diagnostic"] = iso.diagnostic;
  return out;
}

// S = aB + dE cut out by the coordinate s, T = bB + eE by t.
Certificate exclbadC(Ctx& c, const KBLResult& r, const std::string& s, std::array<int, 2> S, const std::string& t,
                     std::array<int, 2> T, const std::string& gamma) {
  Certificate out = criterion_exclbadC(S[0], S[1], T[0], T[1], c.data(), gamma);
  int dim = e_slice(c, r, c.k, {s, t});
  out.evidence["S"] = s;
  out.evidence["T"] = t;
  out.evidence["E-slice"] = dim <= 1 ? "finite" : "curve";
  // Gamma = S.T on X should be a curve; its irreducibility is not tested here.
  Equations X = c.X();
  std::vector<FpPoly> gens(X.begin(), X.end());
  gens.push_back(c.var(s));
  gens.push_back(c.var(t));
  out.evidence["Gamma.dimension"] = std::to_string(cone_dimension(gens, 0x7f, c.opt.budget) - 1);
  return out;
}

void put_indexed(Certificate& out, const std::string& prefix, const std::vector<int>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) out.payload[prefix + "[" + std::to_string(i) + "]"] = Rational(values[i]);
}

Certificate quadratic_involution(Ctx& c, const AdmissibleWeight& w, const std::vector<std::string>& proj) {
  Equations X = c.X();
  KBLResult r = kbl(c, X, c.k, c.ref.a, w);
  BlowupData d = c.data();
  Certificate out;
  out.method = "quadratic-involution";
  out.payload["r"] = Rational(d.r);
  out.payload["type.a"] = Rational(d.a);
  out.payload["A3"] = d.A3;
  out.payload["E3"] = d.E3;
  Rational b3 = d.A3 - d.E3 / (d.r * d.r * d.r);
  b3.canonicalize();
  out.payload["B3"] = b3;
  Rational prod = 1;
  std::vector<int> weights;
  for (const auto& n : proj) {
    weights.push_back(c.ws().weights[c.v(n)]);
    prod *= weights.back();
  }
  put_indexed(out, "proj", weights);
  Rational h3 = 1 / prod;
  h3.canonicalize();
  out.payload["H3"] = h3;
  Rational ratio = b3 / h3;
  ratio.canonicalize();
  out.payload["ratio"] = ratio;
  std::string names;
  for (const auto& n : proj) names += (names.empty() ? "" : ",") + n;
  out.evidence["projection"] = names;

  // X meets the projection's base locus only at the centre.
  std::vector<FpPoly> gens(X.begin(), X.end());
  for (const auto& n : proj) gens.push_back(c.var(n));
  int dim = cone_dimension(gens, 0x7f, c.opt.budget);
  gens.push_back(FpPoly::variable(c.F, c.k));
  int off = cone_dimension(gens, 0x7f, c.opt.budget);
  bool only_centre = dim <= 1 && off <= 0;
  if (only_centre) {
    std::vector<FpPoly> chart;
    std::map<int, FpPoly> sub;
    for (const auto& n : proj) sub[c.v(n)] = FpPoly(c.F);
    for (const auto& F : X) {
      FpPoly g = substitute(on_chart(F, c.k), sub);
      if (!g.is_zero()) chart.push_back(g);
    }
    std::uint8_t mask = mask_without(c.k);
    for (const auto& n : proj) mask = static_cast<std::uint8_t>(mask & ~(1u << c.v(n)));
    // Every remaining coordinate is nilpotent modulo the chart ideal.
    GroebnerBasis gb = buchberger(chart, MonomialOrder{}, c.opt.budget);
    auto standard = standard_monomials(gb, mask);
    only_centre = standard.has_value();
    if (only_centre) {
      unsigned n = static_cast<unsigned>(standard->size());
      for (int i = 0; i < kVars; ++i)
        if (mask >> i & 1 && !normal_form(FpPoly::variable(c.F, i).pow(n), gb).is_zero()) only_centre = false;
    }
  }
  out.evidence["indeterminacy"] = only_centre ? "centre-only" : "larger";
  out.evidence["E-slice"] = e_slice(c, r, c.k, proj) <= 0 ? "empty" : "nonempty";
  return out;
}

struct LinkEnd {
  int k;
  int a;
  AdmissibleWeight w;
};

Certificate link(Ctx& c, const LinkEnd& e, const LinkEnd& ep, int dS, int dT, const std::vector<std::string>& fibre) {
  Equations X = c.X();
  KBLResult r = kbl(c, X, e.k, e.a, e.w), rp = kbl(c, X, ep.k, ep.a, ep.w);
  BlowupData d = c.data();
  Certificate out;
  out.method = "link-exists";
  out.payload["r"] = Rational(d.r);
  out.payload["type.a"] = Rational(d.a);
  out.payload["A3"] = d.A3;
  out.payload["E3"] = d.E3;
  Rational b3 = d.A3 - d.E3 / (d.r * d.r * d.r);
  b3.canonicalize();
  out.payload["B3"] = b3;
  out.payload["d_S"] = Rational(dS);
  out.payload["d_T"] = Rational(dT);
  auto ambient = [](const LinkEnd& end) {
    std::vector<int> w;
    for (int i = 0; i < kVars; ++i)
      if (i != end.k) w.push_back(end.w.w.num[i]);
    return w;
  };
  std::vector<int> eci(r.ci_degrees.begin(), r.ci_degrees.end()), pci(rp.ci_degrees.begin(), rp.ci_degrees.end());
  std::vector<int> eam = ambient(e), pam = ambient(ep);
  put_indexed(out, "E.ci", eci);
  put_indexed(out, "E.ambient", eam);
  put_indexed(out, "Ep.ci", pci);
  put_indexed(out, "Ep.ambient", pam);
  Rational mE = multisection_degree(eci, eam, dS, dT), mEp = multisection_degree(pci, pam, dS, dT);
  out.payload["m_E"] = mE;
  out.payload["m_Ep"] = mEp;
  out.payload["m_tauE"] = mE;
  out.payload["gamma"] = link_obstruction_check(mE, mE, mEp).gamma;
  out.evidence["m_tauE"] = "asserted equal to m_E";
  out.evidence["Ep.centre"] = c.ws().names[ep.k];
  out.evidence["E.fibre"] = e_slice(c, r, e.k, fibre) <= 0 ? "empty" : "nonempty";
  out.evidence["Ep.fibre"] = e_slice(c, rp, ep.k, fibre) <= 0 ? "empty" : "nonempty";
  return out;
}

// Lower bounds ord_E(x_i) >= (g w_i mod r)/r at a point that is not moved to a vertex, where the
// generator power g turns the tangent residues into (1, a, r - a).
Rational residue_ord(const Ctx& c, const std::string& n) {
  int r = c.ref.r;
  std::array<int, 3> want{1, c.ref.a, r - c.ref.a};
  std::sort(want.begin(), want.end());
  for (int g = 1; g < r; ++g) {
    if (std::gcd(g, r) != 1) continue;
    std::array<int, 3> got{};
    for (int i = 0; i < 3; ++i) got[i] = g * c.orbit.residues[i] % r;
    std::sort(got.begin(), got.end());
    if (got != want) continue;
    int res = g * c.ws().weights[c.v(n)] % r;
    if (!res) throw std::logic_error(n + " does not vanish at the point");
    return qq(res, r);
  }
  throw Degenerate("tangent residues do not match the type");
}

Certificate residue_excltc(Ctx& c, const std::vector<std::string>& names) {
  std::vector<IsoItem> items;
  for (const auto& n : names) items.push_back(coordinate(c, n, residue_ord(c, n)));
  return excltc(c, c.X(), items);
}

// Isolating set made of coordinates with ord from the weight w.
Certificate weight_excltc(Ctx& c, const AdmissibleWeight& w, const std::vector<std::string>& names) {
  Equations X = c.X();
  kbl(c, X, c.k, c.ref.a, w);
  std::vector<IsoItem> items;
  for (const auto& n : names) items.push_back(coordinate(c, n, w));
  return excltc(c, X, items);
}

AdmissibleWeight wlist(const Ctx& c, const std::array<int, 6>& b) { return weight_from_list(c.ws(), c.k, b); }

// ---------------------------------------------------------------------------
// Family scripts.

Certificate deg42(Ctx& c) {
  const auto& ws = c.ws();
  if (c.ref.r == 2) return residue_excltc(c, {"x", "y", "t", "v"});
  if (c.ref.r == 3) return residue_excltc(c, {"x", "y", "t", "u"});
  if (c.ref.r == 7) return weight_excltc(c, initial_weight(ws, c.k), {"x", "y", "z"});
  if (c.ref.a == 1) {
    if (!condition(c, "cd:deg42-5")) return stopped(c, "excltc");
    AdmissibleWeight w = initial_weight(ws, c.k);
    Equations X = c.X();
    kbl(c, X, c.k, 1, w);
    LowSection g = section_from_lowest_part(X[1], ws, w);
    IsoItem gi{{"g", g.degree, g.ord}, g.section};
    c.evidence["g"] = g.section.to_string(ws);
    return excltc(c, X, {coordinate(c, "x", w), coordinate(c, "w", w), gi});
  }
  eliminate(c, 0, "z", "y", 2);
  AdmissibleWeight w = wlist(c, {1, 6, 2, 3, 4, 5});
  KBLResult r = kbl(c, c.X(), c.k, 2, w);
  return exclbadC(c, r, "x", {1, 0}, "z", {6, 0}, "irreducibility asserted");
}

Certificate deg30(Ctx& c) {
  const auto& ws = c.ws();
  if (c.ref.r == 6) return weight_excltc(c, initial_weight(ws, c.k), {"x", "y0", "y1"});
  if (c.ref.a == 1) {
    if (!condition(c, "cd:deg30-5")) return stopped(c, "exclbadC");
    AdmissibleWeight w = initial_weight(ws, c.k);
    KBLResult r = kbl(c, c.X(), c.k, 1, w);
    return exclbadC(c, r, "x", {1, 0}, "y0", {5, 0}, "irreducibility asserted");
  }
  if (c.variant == "forced-case-B") {
    set_coef(c.M.at(4, 5), ws, "z*y1", 0);
    c.evidence["forced"] = "[z y1]m45 set to 0, so y1^2 z is absent from F3";
    if (coef(c.X()[2], ws, "y1^2*z")) throw Degenerate("y1^2 z survives in F3");
    AdmissibleWeight w = wlist(c, {6, 5, 1, 2, 3, 4});
    KBLResult r = kbl(c, c.X(), c.k, 2, w);
    Certificate out = exclbadC(c, r, "x", {1, -1}, "y0", {5, 0}, "irreducibility asserted");
    return out;
  }
  eliminate(c, 2, "z", "y1", 2);
  return weight_excltc(c, wlist(c, {1, 5, 6, 2, 3, 4}), {"x", "y0", "z"});
}

Certificate deg20(Ctx& c) {
  const auto& ws = c.ws();
  if (c.ref.r == 2) return residue_excltc(c, {"x", "z0", "z1", "u"});
  if (c.ref.r == 5 && c.ref.a == 1) return weight_excltc(c, initial_weight(ws, c.k), {"x", "y", "z0"});
  if (c.ref.r == 5) {
    eliminate(c, 4, "t", "z1", 2);
    return quadratic_involution(c, wlist(c, {1, 4, 5, 6, 2, 3}), {"x", "y", "z0", "t"});
  }
  // 1/4 at p_y. alpha vanishes exactly when the z-part of m13 is proportional to [y z]m35, so the
  // forced branch imposes that before the normal form is computed.
  if (c.variant == "forced-alpha-zero") {
    auto l2 = linear_pair(c.M.at(3, 5), ws, "y", "z0", "z1");
    set_coef(c.M.at(1, 3), ws, "z0", l2[0]);
    set_coef(c.M.at(1, 3), ws, "z1", l2[1]);
    c.evidence["forced"] = "z-part of m13 set to [y z]m35";
  }
  // Make the linear form in y^2 F2 the coordinate z1.
  Equations X = c.X();
  std::array<std::uint32_t, 2> l = {coef(X[1], ws, "y^2*z0"), coef(X[1], ws, "y^2*z1")};
  if (l[0] || l[1]) c.M = substitute_entries(c.M, make_form_coordinate(c.F, c.v("z0"), c.v("z1"), l[0], l[1]));
  if (!condition(c, "cd:deg20-4")) return stopped(c, "excltc");
  eliminate(c, 1, "z1", "y", 2);
  AdmissibleWeight w = wlist(c, {1, 1, 5, 2, 3, 4});
  X = c.X();
  KBLResult r = kbl(c, X, c.k, 1, w);
  std::uint32_t alpha = coef(c.M.at(1, 3), ws, "z0");
  c.evidence["alpha"] = std::to_string(alpha);
  if (c.variant == "forced-alpha-zero" && alpha) throw Degenerate("alpha survives the forced branch");
  if (alpha) return exclbadC(c, r, "x", {1, 0}, "z1", {5, 0}, "irreducibility asserted");
  LowSection s = section_from_lowest_part(X[2], ws, w);
  c.evidence["s"] = s.section.to_string(ws);
  return excltc(c, X, {coordinate(c, "x", w), coordinate(c, "z1", w), IsoItem{{"s", s.degree, s.ord}, s.section}});
}

Certificate deg12(Ctx& c) {
  const auto& ws = c.ws();
  const PrimeField& F = c.F;
  if (c.ref.r == 3) {
    std::uint32_t cy = coef(c.M.at(1, 2), ws, "y");
    if (!cy) {
      condition(c, "cd:deg12-3");
      return stopped(c, "excltc");
    }
    c.M = scale_variable(c.M, c.v("y"), F.inv(cy));
    eliminate(c, 0, "v", "y", 1);
    if (!condition(c, "cd:deg12-3")) return stopped(c, "excltc");
    return weight_excltc(c, wlist(c, {1, 1, 2, 2, 3, 4}), {"x", "u", "v"});
  }
  if (c.ref.r == 4) {
    ConditionResult pre = check_generality_condition("cd:deg12-4", c.M);
    if (!pre.pass) {
      c.conds.push_back(pre);
      return stopped(c, "excltc");
    }
    c.M = scale_variable(c.M, c.v("z"), F.inv(coef(c.M.at(1, 3), ws, "z")));
    auto l1 = linear_pair(c.M.at(1, 4), ws, "", "t0", "t1");
    auto l2 = linear_pair(c.M.at(2, 3), ws, "", "t0", "t1");
    auto l3 = linear_pair(c.M.at(4, 5), ws, "z", "t0", "t1");
    std::uint32_t eps = coef(c.M.at(3, 5), ws, "z^2");
    std::array<std::uint32_t, 2> f0 = {F.sub(l3[0], F.mul(eps, l1[0])), F.sub(l3[1], F.mul(eps, l1[1]))};
    change_pair(c, "t0", "t1", f0, l2);
    if (!condition(c, "cd:deg12-4")) return stopped(c, "excltc");
    eliminate(c, 3, "t0", "z", 2);
    return weight_excltc(c, wlist(c, {1, 3, 5, 1, 2, 3}), {"x", "y", "t0"});
  }
  if (c.ref.a == 1) return quadratic_involution(c, initial_weight(ws, c.k), {"x", "y", "z", "t0"});
  if (!condition(c, "cd:deg12-5link")) return stopped(c, "link-exists");
  LinkEnd e{c.k, 2, wlist(c, {1, 3, 4, 5, 6, 2})};
  LinkEnd ep{c.v("t0"), 1, initial_weight(ws, c.v("t0"))};
  return link(c, e, ep, 3, 4, {"x", "y", "z"});
}

Certificate deg4(Ctx& c) {
  const auto& ws = c.ws();
  const PrimeField& F = c.F;
  if (c.ref.r == 2) {
    std::uint32_t cy = coef(c.M.at(1, 2), ws, "y");
    if (!cy) {
      condition(c, "cd:deg4-2");
      return stopped(c, "excltc");
    }
    c.M = scale_variable(c.M, c.v("y"), F.inv(cy));
    eliminate(c, 0, "u", "y", 1);
    if (!condition(c, "cd:deg4-2")) return stopped(c, "excltc");
    return weight_excltc(c, wlist(c, {1, 1, 1, 2, 2, 3}), {"x", "t0", "t1", "u"});
  }
  if (c.ref.r == 3) {
    if (!condition(c, "cd:deg4-3")) return stopped(c, "quadratic-involution");
    auto l = linear_pair(c.X()[0], ws, "z1", "t0", "t1");
    if (!l[0] && !l[1]) throw Degenerate("F1 has no z1 t term");
    c.M = substitute_entries(c.M, make_form_coordinate(F, c.v("t0"), c.v("t1"), l[0], l[1]));
    eliminate(c, 0, "t1", "z1", 1);
    return quadratic_involution(c, wlist(c, {1, 2, 3, 1, 4, 2}), {"x", "y", "z0", "t1"});
  }
  if (!condition(c, "cd:deg4-3")) return stopped(c, "link-exists");
  if (!condition(c, "cd:deg4-4")) return stopped(c, "link-exists");
  int z1 = c.v("z1");
  LinkEnd e{c.k, 1, initial_weight(ws, c.k)};
  LinkEnd ep{z1, 1, weight_from_list(ws, z1, {1, 2, 3, 1, 4, 2})};
  return link(c, e, ep, 2, 3, {"x", "y", "z0"});
}

Certificate family_script(Ctx& c) {
  const std::string& id = c.spec.id;
  if (id == "deg42") return deg42(c);
  if (id == "deg30") return deg30(c);
  if (id == "deg20") return deg20(c);
  if (id == "deg12") return deg12(c);
  if (id == "deg4") return deg4(c);
  throw std::logic_error("no script for family " + id);
}

Certificate run_script(Ctx& c) {
  Certificate out = family_script(c);
  out.conditions = c.conds;
  for (const auto& [k, v] : c.evidence) out.evidence.emplace(k, v);
  return out;
}

// Vertex preferred for each centre; empty when the argument stays at the point itself.
std::string preferred_vertex(const std::string& family, int r, int a) {
  if (family == "deg42") return r == 5 ? "y" : r == 7 ? "t" : "";
  if (family == "deg30") return r == 5 ? "y1" : "z";
  if (family == "deg20") return r == 4 ? "y" : r == 5 ? "z1" : "";
  if (family == "deg12") return r == 3 ? "y" : r == 4 ? "z" : "t1";
  if (family == "deg4") return r == 2 ? "y" : r == 3 ? "z1" : "t1";
  (void)a;
  return "";
}

bool uses_template(const std::string& family, int r, int a) {
  return (family == "deg12" && r == 5 && a == 2) || (family == "deg4" && r == 4);
}

const TableRow* find_row(const FamilySpec& spec, int r, int a) {
  for (const auto& row : spec.table)
    if (row.r == r && row.a == a) return &row;
  return nullptr;
}

// Prepares the member for one attempt and runs the script.
Certificate attempt(const FamilySpec& spec, const CentreRef& ref, const std::string& variant,
                    const CertifyOptions& opt, std::uint64_t seed) {
  PrimeField F(opt.prime);
  Ctx c{spec, opt, ref, variant, F, {}, -1, {}, {}, {}};
  std::string pref = preferred_vertex(spec.id, ref.r, ref.a);
  if (uses_template(spec.id, ref.r, ref.a)) {
    if (opt.member) throw std::invalid_argument("an explicit member is not in the normal form this centre needs");
    c.M = spec.id == "deg12" ? deg12_link_template(spec, seed, F) : deg4_link_template(spec, seed, F);
    c.k = c.v(pref);
    Equations X = c.X();
    auto check = [&](int k, int r, int a) {
      auto va = quasismooth_at_vertex(X, spec.space, k);
      if (!va.point || va.point->r != r || va.point->a != a)
        throw Degenerate("normal form has the wrong point at p_" + spec.space.names[k]);
    };
    if (spec.id == "deg12") {
      check(c.k, 5, 2);
      check(c.v("t0"), 5, 1);
    } else {
      check(c.k, 4, 1);
      check(c.v("z1"), 3, 1);
    }
    c.evidence["member"] = "normal-form";
    return run_script(c);
  }
  std::shared_ptr<const Member> held;
  Member local;
  const Member* m = nullptr;
  if (opt.member) {
    local = explicit_member(spec, *opt.member, seed, opt.budget);
    m = &local;
    c.evidence["member"] = "explicit";
  } else {
    held = sampled_member(spec, seed, opt.prime, opt.budget);
    m = held.get();
    c.evidence["member"] = "sampled";
  }
  if (!m->scan.problems.empty()) throw Degenerate("member is not quasi-smooth with terminal points");
  const TableRow* row = find_row(spec, ref.r, ref.a);
  std::vector<const SingularOrbit*> of_type;
  Rational points = 0;
  for (const auto& o : m->scan.orbits)
    if (o.r == ref.r && o.a == ref.a) {
      of_type.push_back(&o);
      points += o.count;
    }
  if (points != row->multiplicity)
    throw Degenerate("the scan finds " + rational_str(points) + " points of type " + type_str(ref.r, ref.a));
  // Centres moved to a vertex need every point of the type over the prime field, so that the k-th
  // point is well defined.
  if (!pref.empty() && static_cast<int>(of_type.size()) != row->multiplicity)
    throw Degenerate("points of type " + type_str(ref.r, ref.a) + " are not all defined over the prime field");
  if (ref.k > static_cast<int>(of_type.size())) throw Degenerate("fewer orbits than the multiplicity");
  c.orbit = *of_type[ref.k - 1];
  c.M = m->M;
  if (!pref.empty()) {
    int want = c.v(pref);
    auto cm = centre_member(m->M, c.orbit, want);
    if (!cm || cm->vertex != want) throw Degenerate("the point cannot be moved to p_" + pref);
    c.M = cm->M;
    c.k = cm->vertex;
  }
  return run_script(c);
}

Certificate inconclusive(Certificate base, const std::string& why) {
  base.evidence["error"] = why;
  base.verdict = reverify(base);
  return base;
}

Certificate run_centre(const FamilySpec& spec, const CentreRef& ref, const std::string& variant,
                       const CertifyOptions& opt) {
  Certificate base;
  base.family = spec.id;
  base.centre = centre_id(ref.r, ref.a, ref.k);
  base.variant = variant;
  base.seed = opt.seed;
  base.prime = opt.prime;
  const TableRow* row = find_row(spec, ref.r, ref.a);
  if (!row) throw std::invalid_argument("no centre of type " + type_str(ref.r, ref.a) + " in " + spec.id);
  if (ref.k < 1 || ref.k > row->multiplicity) throw std::invalid_argument("centre index out of range");
  base.method = row->verdict == Verdict::Excluded              ? "excltc"
                : row->verdict == Verdict::QuadraticInvolution ? "quadratic-involution"
                                                               : "link-exists";
  std::string last;
  int attempts = opt.member ? 1 : std::max(1, opt.max_attempts);
  for (int n = 0; n < attempts; ++n) {
    std::uint64_t seed = attempt_seed(opt.seed, n);
    try {
      Certificate c = attempt(spec, ref, variant, opt, seed);
      c.family = base.family;
      c.centre = base.centre;
      c.variant = variant;
      c.seed = base.seed;
      c.prime = base.prime;
      c.evidence["member_seed"] = std::to_string(seed);
      c.verdict = reverify(c);
      return c;
    } catch (const BudgetExceeded& e) {
      return inconclusive(base, std::string("budget exhausted: ") + e.what());
    } catch (const std::invalid_argument& e) {
      return inconclusive(base, e.what());
    } catch (const std::exception& e) {
      last = e.what();
    }
  }
  return inconclusive(base, "no usable member after " + std::to_string(attempts) + " attempts: " + last);
}

// Forced branches certified alongside the table rows.
std::vector<std::pair<CentreRef, std::string>> forced_variants(const std::string& family) {
  if (family == "deg30") return {{{5, 2, 1}, "forced-case-B"}};
  if (family == "deg20") return {{{4, 1, 1}, "forced-alpha-zero"}};
  return {};
}

}  // namespace

std::string centre_id(int r, int a, int k) {
  return std::to_string(r) + "/(1," + std::to_string(a) + "," + std::to_string(r - a) + ")#" + std::to_string(k);
}

CentreRef parse_centre(const FamilySpec& spec, const std::string& text) {
  static const std::regex re(R"(^(?:1/(\d+)|(\d+)/?)(?:\((\d+),(\d+),(\d+)\))?(?:#(\d+))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw std::invalid_argument("cannot parse centre '" + text + "'");
  CentreRef out;
  out.r = std::stoi(m[1].matched ? m[1].str() : m[2].str());
  std::vector<const TableRow*> rows;
  for (const auto& row : spec.table)
    if (row.r == out.r) rows.push_back(&row);
  if (m[3].matched) {
    int b1 = std::stoi(m[3]), b2 = std::stoi(m[4]), b3 = std::stoi(m[5]);
    if (b1 != 1 || b2 + b3 != out.r) throw std::invalid_argument("centre type must read 1/r(1,a,r-a): " + text);
    int a = std::min(b2, b3);
    rows.erase(std::remove_if(rows.begin(), rows.end(), [&](const TableRow* r) { return r->a != a; }), rows.end());
  }
  if (rows.empty()) throw std::invalid_argument(spec.id + " has no centre matching '" + text + "'");
  if (rows.size() > 1) throw std::invalid_argument("centre '" + text + "' is ambiguous in " + spec.id);
  out.a = rows[0]->a;
  out.k = m[6].matched ? std::stoi(m[6]) : 1;
  if (out.k < 1 || out.k > rows[0]->multiplicity)
    throw std::invalid_argument("centre '" + text + "': index beyond the multiplicity");
  return out;
}

Certificate certify_centre(const FamilySpec& spec, const CentreRef& c, const CertifyOptions& opt) {
  return run_centre(spec, c, "", opt);
}

std::vector<Certificate> certify_family(const FamilySpec& spec, const CertifyOptions& opt) {
  std::vector<std::pair<CentreRef, std::string>> jobs;
  for (const auto& row : spec.table)
    for (int k = 1; k <= row.multiplicity; ++k) jobs.push_back({{row.r, row.a, k}, ""});
  for (auto& v : forced_variants(spec.id)) jobs.push_back(v);

  std::vector<Certificate> out(jobs.size() + 2);
  out[0] = exclude_curves(spec.id, spec.A3);
  {
    Equations X;
    if (opt.member)
      X = compute_pfaffians(*opt.member);
    else
      X = sampled_member(spec, opt.seed, opt.prime, opt.budget)->X;
    out[1] = exclude_smooth_points(spec, &X);
  }
  for (int i = 0; i < 2; ++i) {
    out[i].seed = opt.seed;
    out[i].prime = opt.prime;
  }
  const int n = static_cast<int>(jobs.size());
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) out[i + 2] = run_centre(spec, jobs[i].first, jobs[i].second, opt);
  } else {
    for (int i = 0; i < n; ++i) out[i + 2] = run_centre(spec, jobs[i].first, jobs[i].second, opt);
  }
  return out;
}

ConditionReport gencond(const std::string& id, const CertifyOptions& opt) {
  const FamilySpec& spec = family(condition_family(id));
  const TableRow* row = nullptr;
  for (const auto& r : spec.table)
    if (std::find(r.conditions.begin(), r.conditions.end(), id) != r.conditions.end()) {
      row = &r;
      break;
    }
  if (!row) throw std::logic_error("condition " + id + " is not used by any centre");
  Certificate cert = certify_centre(spec, {row->r, row->a, 1}, opt);
  ConditionReport rep;
  rep.family = spec.id;
  rep.centre = cert.centre;
  rep.prime = opt.prime;
  auto it = cert.evidence.find("member_seed");
  rep.seed = it == cert.evidence.end() ? opt.seed : std::stoull(it->second);
  rep.result.id = id;
  bool found = false;
  for (const auto& r : cert.conditions)
    if (r.id == id) {
      rep.result = r;
      found = true;
    }
  if (!found) {
    auto err = cert.evidence.find("error");
    auto stop = cert.evidence.find("stopped");
    rep.result.diagnostic = err != cert.evidence.end()    ? err->second
                            : stop != cert.evidence.end() ? stop->second
                                                          : "condition was not reached";
  }
  return rep;
}

nlohmann::json to_json(const ConditionReport& r) {
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [k, v] : r.result.witness) w[k] = v;
  return {{"condition", r.result.id}, {"family", r.family},         {"centre", r.centre},
          {"pass", r.result.pass},    {"witness", w},               {"diagnostic", r.result.diagnostic},
          {"seed", r.seed},           {"prime", r.prime}};
}

std::string expected_verdict(Verdict v) {
  switch (v) {
    case Verdict::Excluded:
      return verdicts::kExcluded;
    case Verdict::QuadraticInvolution:
      return verdicts::kQI;
    case Verdict::LinkExists:
      return verdicts::kLink;
  }
  return verdicts::kInconclusive;
}

std::vector<TableIssue> table_mismatches(const FamilySpec& spec, const std::vector<Certificate>& certs) {
  std::vector<TableIssue> out;
  auto find = [&](const std::string& centre, const std::string& variant) -> const Certificate* {
    for (const auto& c : certs)
      if (c.family == spec.id && c.centre == centre && c.variant == variant) return &c;
    return nullptr;
  };
  auto expect = [&](const std::string& centre, const std::string& variant, const std::string& want) {
    const Certificate* c = find(centre, variant);
    std::string label = spec.id + " " + centre + (variant.empty() ? "" : " [" + variant + "]");
    if (!c) {
      out.push_back({label + ": no certificate", false});
      return;
    }
    if (c->verdict == want) return;
    bool inc = c->verdict == verdicts::kInconclusive;
    std::string why;
    if (auto it = c->evidence.find("error"); it != c->evidence.end()) why = " (" + it->second + ")";
    if (auto it = c->evidence.find("stopped"); it != c->evidence.end()) why = " (" + it->second + ")";
    out.push_back({label + ": expected " + want + ", certified " + c->verdict + why, inc});
  };
  expect("curves", "", verdicts::kExcluded);
  expect("nonsingular points", "", verdicts::kExcluded);
  for (const auto& row : spec.table)
    for (int k = 1; k <= row.multiplicity; ++k) expect(centre_id(row.r, row.a, k), "", expected_verdict(row.verdict));
  for (const auto& [ref, variant] : forced_variants(spec.id))
    expect(centre_id(ref.r, ref.a, ref.k), variant, verdicts::kExcluded);
  return out;
}

}  // namespace pfano
