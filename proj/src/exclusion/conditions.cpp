#include <stdexcept>

#include "support.hpp"

namespace pfano {

using namespace detail;

namespace {

struct ConditionInfo {
  std::string id;
  std::string family;
  std::string description;
};

const std::vector<ConditionInfo>& registry() {
  static const std::vector<ConditionInfo> r = {
      {"cd:deg42-5", "deg42",
       "centred at p_y: [z^2 y]F2 != 0 and the 2x2 determinant of [z^2 y]F2, [t y^2]F2, [t z^2]F4, [t^2 y]F4 "
       "is nonzero"},
      {"cd:deg30-5", "deg30", "centred at p_y1: [t z y1]F5 = [t]m23 [z y1]m45 is nonzero"},
      {"cd:deg20-4", "deg20",
       "centred at p_y: the linear form [y^2 z_i]F2 is nonzero and the z-quadratic part of m45 does not vanish "
       "at its root"},
      {"cd:deg12-3", "deg12",
       "centred at p_y with v eliminated from F1: c = [y]m12 != 0, eta - alpha delta/c != 0, "
       "l3/c + beta l2/c^2 not proportional to l1, l4 - delta l1/c not proportional to l2"},
      {"cd:deg12-4", "deg12", "centred at p_z: alpha = [z]m13 != 0 and det(alpha l3 - eps l1, l2) != 0"},
      {"cd:deg12-5link", "deg12",
       "link normal form: [y]a3 != 0 and (a3 = b4 = lowest part of F5 = 0) in P(1,3,4,2) is two reduced points"},
      {"cd:deg4-2", "deg4",
       "centred at p_y with u eliminated from F1: [y]m12 != 0 and q1 - l1 l3, q2 - l2 l3, beta q2 - gamma q1 + "
       "l3 l4 have no common root"},
      {"cd:deg4-3", "deg4",
       "the restricted system a3 b4' - a3' b4 = a3 d6 - a3' c6 = a4 = 0 on P^1 x P^1 is empty"},
      {"cd:deg4-4", "deg4",
       "link normal form: [y]a2 != 0 and (a2 = b3 = lowest part of F5 = 0) in P(1,2,3,1) is two distinct points"},
  };
  return r;
}

const ConditionInfo& info(const std::string& id) {
  for (const auto& c : registry())
    if (c.id == id) return c;
  throw std::invalid_argument("unknown condition id: " + id);
}

std::string s(std::uint32_t v) { return std::to_string(v); }
std::string s(const std::array<std::uint32_t, 2>& v) { return "(" + s(v[0]) + "," + s(v[1]) + ")"; }

int var(const WeightSystem& ws, const std::string& name) {
  int i = ws.index_of(name);
  if (i < 0) throw std::invalid_argument("member lacks variable " + name);
  return i;
}

std::array<std::uint32_t, 2> combine(const PrimeField& f, std::uint32_t a, const std::array<std::uint32_t, 2>& u,
                                     std::uint32_t b, const std::array<std::uint32_t, 2>& v) {
  return {f.add(f.mul(a, u[0]), f.mul(b, v[0])), f.add(f.mul(a, u[1]), f.mul(b, v[1]))};
}

// Product of two linear binary forms as a quadratic one.
std::vector<std::uint32_t> times(const PrimeField& f, const std::array<std::uint32_t, 2>& a,
                                 const std::array<std::uint32_t, 2>& b) {
  return {f.mul(a[0], b[0]), f.add(f.mul(a[0], b[1]), f.mul(a[1], b[0])), f.mul(a[1], b[1])};
}

std::vector<std::uint32_t> lin(const PrimeField& f, std::uint32_t a, const std::vector<std::uint32_t>& u,
                               std::uint32_t b, const std::vector<std::uint32_t>& v) {
  std::vector<std::uint32_t> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = f.add(f.mul(a, u[i]), f.mul(b, v[i]));
  return out;
}

ConditionResult deg42_5(const FpMatrix& M) {
  const auto& ws = M.space;
  const PrimeField& f = M.entries[0].field();
  auto X = compute_pfaffians(M);
  ConditionResult r;
  std::uint32_t gamma = coef(X[1], ws, "z^2*y"), ty2 = coef(X[1], ws, "t*y^2");
  std::uint32_t tz2 = coef(X[3], ws, "t*z^2"), t2y = coef(X[3], ws, "t^2*y");
  std::uint32_t det = f.sub(f.mul(gamma, t2y), f.mul(ty2, tz2));
  r.witness = {{"gamma", s(gamma)}, {"det", s(det)}};
  r.pass = gamma != 0 && det != 0;
  if (!gamma) r.diagnostic = "gamma = [z^2 y]F2 vanishes";
  else if (!det) r.diagnostic = "delta + gamma epsilon vanishes";
  return r;
}

ConditionResult deg30_5(const FpMatrix& M) {
  auto X = compute_pfaffians(M);
  ConditionResult r;
  std::uint32_t delta = coef(X[4], M.space, "t*z*y1");
  r.witness = {{"[t z y1]F5", s(delta)}};
  r.pass = delta != 0;
  if (!r.pass) r.diagnostic = "delta vanishes";
  return r;
}

ConditionResult deg20_4(const FpMatrix& M) {
  const auto& ws = M.space;
  const PrimeField& f = M.entries[0].field();
  auto X = compute_pfaffians(M);
  ConditionResult r;
  std::array<std::uint32_t, 2> l = {coef(X[1], ws, "y^2*z0"), coef(X[1], ws, "y^2*z1")};
  auto q = binary_form(M.at(4, 5), var(ws, "z0"), var(ws, "z1"), 2);
  r.witness = {{"l", s(l)}, {"q", "(" + s(q[0]) + "," + s(q[1]) + "," + s(q[2]) + ")"}};
  if (!l[0] && !l[1]) {
    r.diagnostic = "l2 - delta l1 vanishes identically";
    return r;
  }
  std::uint32_t val = eval_binary(f, q, l[1], f.neg(l[0]));
  r.witness["q(root)"] = s(val);
  r.pass = val != 0;
  if (!r.pass) r.diagnostic = "l2 - delta l1 and q share a root";
  return r;
}

ConditionResult deg12_3(const FpMatrix& M) {
  const auto& ws = M.space;
  const PrimeField& f = M.entries[0].field();
  ConditionResult r;
  std::uint32_t c = coef(M.at(1, 2), ws, "y");
  auto l1 = linear_pair(M.at(1, 4), ws, "", "t0", "t1");
  auto l2 = linear_pair(M.at(2, 3), ws, "", "t0", "t1");
  auto l3 = linear_pair(M.at(3, 5), ws, "y", "t0", "t1");
  auto l4 = linear_pair(M.at(4, 5), ws, "z", "t0", "t1");
  std::uint32_t eta = coef(M.at(3, 5), ws, "z^2"), alpha = coef(M.at(1, 3), ws, "z");
  std::uint32_t beta = coef(M.at(1, 5), ws, "y^2"), delta = coef(M.at(2, 5), ws, "z*y");
  r.witness = {{"c", s(c)}};
  if (!c) {
    r.diagnostic = "y does not occur in m12";
    return r;
  }
  std::uint32_t ci = f.inv(c);
  std::uint32_t dp = f.mul(delta, ci), bp = f.mul(beta, f.mul(ci, ci));
  std::uint32_t first = f.sub(eta, f.mul(alpha, dp));
  auto v2 = combine(f, ci, l3, bp, l2);
  auto v3 = combine(f, 1, l4, f.neg(dp), l1);
  std::uint32_t d2 = det2(f, v2, l1), d3 = det2(f, v3, l2);
  r.witness["eta-alpha*delta"] = s(first);
  r.witness["det(l3+beta*l2,l1)"] = s(d2);
  r.witness["det(l4-delta*l1,l2)"] = s(d3);
  r.pass = first && d2 && d3;
  if (!first) r.diagnostic = "eta - alpha delta vanishes";
  else if (!d2) r.diagnostic = "l3 + beta l2 is proportional to l1";
  else if (!d3) r.diagnostic = "l4 - delta l1 is proportional to l2";
  return r;
}

ConditionResult deg12_4(const FpMatrix& M) {
  const auto& ws = M.space;
  const PrimeField& f = M.entries[0].field();
  ConditionResult r;
  std::uint32_t alpha = coef(M.at(1, 3), ws, "z"), eps = coef(M.at(3, 5), ws, "z^2");
  auto l1 = linear_pair(M.at(1, 4), ws, "", "t0", "t1");
  auto l2 = linear_pair(M.at(2, 3), ws, "", "t0", "t1");
  auto l3 = linear_pair(M.at(4, 5), ws, "z", "t0", "t1");
  auto v = combine(f, alpha, l3, f.neg(eps), l1);
  std::uint32_t d = det2(f, v, l2);
  r.witness = {{"alpha", s(alpha)}, {"alpha*l3-eps*l1", s(v)}, {"l2", s(l2)}, {"det", s(d)}};
  r.pass = alpha && d;
  if (!alpha) r.diagnostic = "alpha = [z]m13 vanishes";
  else if (!d) r.diagnostic = "alpha l3 - eps l1 is proportional to l2";
  return r;
}

// Shared by the two link conditions: a = coefficient of `lead` in F1, b = the same in F2, the third
// equation the lowest part of F5 on the chart of the centre, all restricted to the slice where the
// coordinates in `drop` vanish.
ConditionResult link_points(const FpMatrix& M, const std::string& lead, const std::vector<std::string>& base,
                            const std::vector<std::string>& drop, const AdmissibleWeight& w,
                            const std::vector<std::string>& order, const std::string& a_name) {
  const auto& ws = M.space;
  const PrimeField& f = M.entries[0].field();
  auto X = compute_pfaffians(M);
  int v = var(ws, lead);
  std::uint8_t mask = mask_of(ws, base);
  FpPoly a = part_in(X[0], v, 1, mask), b = part_in(X[1], v, 1, mask);
  ConditionResult r;
  std::uint32_t ya = coef(a, ws, "y");
  r.witness = {{"[y]" + a_name, s(ya)}};
  if (!ya) {
    r.diagnostic = "y does not occur in " + a_name;
    return r;
  }
  FpPoly chart = on_chart(X[4], w.centre);
  if (chart.is_zero()) {
    r.diagnostic = "F5 vanishes on the chart";
    return r;
  }
  FpPoly third = lowest_weight_part(chart, w.w).first;
  std::map<int, FpPoly> sub;
  for (const auto& n : drop) sub[var(ws, n)] = FpPoly(f);
  third = substitute(third, sub);
  std::array<int, kVars> weights = ws.weights;
  for (int i = 0; i < kVars; ++i)
    if (i != w.centre) weights[i] = w.w.num[i];
  std::vector<int> ord;
  for (const auto& n : order) ord.push_back(var(ws, n));
  PointCount pc;
  try {
    pc = count_points({a, b, third}, ord, weights, 0x5eed, kDefaultBudget);
  } catch (const BudgetExceeded& e) {
    r.diagnostic = std::string("budget exhausted: ") + e.what();
    return r;
  }
  if (!pc.ok) {
    r.diagnostic = "point count failed: " + pc.diagnostic;
    return r;
  }
  r.witness["points"] = str(pc.points);
  r.witness["reduced"] = pc.radical ? "yes" : "no";
  r.pass = pc.points == 2 && pc.radical;
  if (!r.pass) r.diagnostic = "the set does not consist of two distinct points";
  return r;
}

ConditionResult deg12_5link(const FpMatrix& M) {
  const auto& ws = M.space;
  auto w = weight_from_list(ws, var(ws, "t1"), {1, 3, 4, 5, 6, 2});
  return link_points(M, "v", {"x", "y", "z"}, {"t0", "u"}, w, {"x", "v", "y", "z"}, "a3");
}

ConditionResult deg4_4(const FpMatrix& M) {
  const auto& ws = M.space;
  auto w = initial_weight(ws, var(ws, "t1"));
  return link_points(M, "u", {"x", "y", "z0"}, {"z1", "t0"}, w, {"x", "u", "y", "z0"}, "a2");
}

ConditionResult deg4_2(const FpMatrix& M) {
  const auto& ws = M.space;
  const PrimeField& f = M.entries[0].field();
  ConditionResult r;
  int z0 = var(ws, "z0"), z1 = var(ws, "z1");
  std::uint32_t c = coef(M.at(1, 2), ws, "y");
  r.witness = {{"c", s(c)}};
  if (!c) {
    r.diagnostic = "y does not occur in m12";
    return r;
  }
  auto l1 = linear_pair(M.at(1, 3), ws, "", "z0", "z1");
  auto l2 = linear_pair(M.at(1, 4), ws, "", "z0", "z1");
  auto l3 = linear_pair(M.at(2, 5), ws, "y", "z0", "z1");
  auto l4 = linear_pair(M.at(3, 4), ws, "y", "z0", "z1");
  auto q1 = binary_form(M.at(3, 5), z0, z1, 2), q2 = binary_form(M.at(4, 5), z0, z1, 2);
  std::uint32_t beta = coef(M.at(2, 3), ws, "y^2"), gamma = coef(M.at(2, 4), ws, "y^2");
  // Scale-free: multiply the first two forms by c and the third by c^2.
  auto f1 = lin(f, c, q1, f.neg(1), times(f, l1, l3));
  auto f2 = lin(f, c, q2, f.neg(1), times(f, l2, l3));
  auto f3 = lin(f, 1, lin(f, beta, q2, f.neg(gamma), q1), 1, times(f, l3, l4));
  bool shared = common_root(f, {f1, f2, f3});
  auto fmt = [](const std::vector<std::uint32_t>& g) {
    return "(" + s(g[0]) + "," + s(g[1]) + "," + s(g[2]) + ")";
  };
  r.witness["f1"] = fmt(f1);
  r.witness["f2"] = fmt(f2);
  r.witness["f3"] = fmt(f3);
  r.pass = !shared;
  if (shared) r.diagnostic = "the three quadratic forms have a common root";
  return r;
}

ConditionResult deg4_3(const FpMatrix& M) {
  const auto& ws = M.space;
  const PrimeField& f = M.entries[0].field();
  ConditionResult r;
  int z0 = var(ws, "z0"), z1 = var(ws, "z1");
  auto a3 = linear_pair(M.at(1, 3), ws, "", "z0", "z1");
  auto a3p = linear_pair(M.at(1, 4), ws, "", "z0", "z1");
  auto a4 = linear_pair(M.at(1, 5), ws, "", "t0", "t1");
  auto b4 = linear_pair(M.at(2, 3), ws, "", "t0", "t1");
  auto b4p = linear_pair(M.at(2, 4), ws, "", "t0", "t1");
  auto c6 = binary_form(M.at(3, 5), z0, z1, 2), d6 = binary_form(M.at(4, 5), z0, z1, 2);
  r.witness = {{"a4", s(a4)}};
  if (!a4[0] && !a4[1]) {
    r.diagnostic = "a4 restricted vanishes identically";
    return r;
  }
  // The unique t-point with a4 = 0.
  std::array<std::uint32_t, 2> t = {a4[1], f.neg(a4[0])};
  auto at_t = [&](const std::array<std::uint32_t, 2>& l) { return f.add(f.mul(l[0], t[0]), f.mul(l[1], t[1])); };
  std::uint32_t B = at_t(b4), Bp = at_t(b4p);
  auto g = combine(f, f.neg(Bp), a3, B, a3p);
  r.witness["g"] = s(g);
  if (!g[0] && !g[1]) {
    r.diagnostic = "the first equation vanishes on the line a4 = 0";
    return r;
  }
  std::uint32_t u0 = g[1], u1 = f.neg(g[0]);
  auto ev = [&](const std::array<std::uint32_t, 2>& l) { return f.add(f.mul(l[0], u0), f.mul(l[1], u1)); };
  std::uint32_t C = f.sub(f.mul(ev(a3), eval_binary(f, d6, u0, u1)), f.mul(ev(a3p), eval_binary(f, c6, u0, u1)));
  r.witness["C"] = s(C);
  r.pass = C != 0;
  if (!r.pass) r.diagnostic = "the restricted system has a solution";
  return r;
}

void require_normal(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("member not in normal form: " + what);
}

}  // namespace

const std::vector<std::string>& condition_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& c : registry()) out.push_back(c.id);
    return out;
  }();
  return ids;
}

std::string condition_family(const std::string& id) { return info(id).family; }
std::string condition_description(const std::string& id) { return info(id).description; }

ConditionResult check_generality_condition(const std::string& id, const FpMatrix& M) {
  info(id);
  ConditionResult r;
  if (id == "cd:deg42-5") r = deg42_5(M);
  else if (id == "cd:deg30-5") r = deg30_5(M);
  else if (id == "cd:deg20-4") r = deg20_4(M);
  else if (id == "cd:deg12-3") r = deg12_3(M);
  else if (id == "cd:deg12-4") r = deg12_4(M);
  else if (id == "cd:deg12-5link") r = deg12_5link(M);
  else if (id == "cd:deg4-2") r = deg4_2(M);
  else if (id == "cd:deg4-3") r = deg4_3(M);
  else r = deg4_4(M);
  r.id = id;
  return r;
}

FpMatrix zero_condition_coefficient(const std::string& id, const FpMatrix& M) {
  info(id);
  FpMatrix out = M;
  const auto& ws = M.space;
  if (id == "cd:deg42-5") {
    set_coef(out.at(3, 5), ws, "z*y", 0);
  } else if (id == "cd:deg30-5") {
    set_coef(out.at(4, 5), ws, "z*y1", 0);
  } else if (id == "cd:deg20-4") {
    require_normal(coef(compute_pfaffians(M)[1], ws, "y^2*z0") == 0, "l2 - delta l1 must be a multiple of z1");
    set_coef(out.at(4, 5), ws, "z0^2", 0);
  } else if (id == "cd:deg12-4") {
    require_normal(coef(M.at(2, 3), ws, "t0") == 0, "the t-part of m23 must be a multiple of t1");
    set_coef(out.at(2, 3), ws, "t1", 0);
  } else if (id == "cd:deg4-3") {
    set_coef(out.at(1, 5), ws, "t0", 0);
    set_coef(out.at(1, 5), ws, "t1", 0);
  } else {
    // cd:deg12-3, cd:deg12-5link, cd:deg4-2 and cd:deg4-4 all need y in m12.
    set_coef(out.at(1, 2), ws, "y", 0);
  }
  return out;
}

}  // namespace pfano
