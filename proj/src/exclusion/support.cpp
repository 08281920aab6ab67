#include "support.hpp"

#include <numeric>
#include <stdexcept>

namespace pfano::detail {

Exponent mon(const WeightSystem& ws, const std::string& text) {
  auto parsed = parse_and_grade(text, ws);
  if (parsed.poly.size() != 1) throw std::invalid_argument("not a monomial: " + text);
  return parsed.poly.terms().begin()->first;
}

std::uint32_t coef(const FpPoly& f, const WeightSystem& ws, const std::string& text) {
  return f.coefficient(mon(ws, text));
}

void set_coef(FpPoly& f, const WeightSystem& ws, const std::string& text, std::uint32_t value) {
  f.set_term(mon(ws, text), value);
}

FpPoly part_in(const FpPoly& f, int var, int power, std::uint8_t rest_mask) {
  FpPoly out(f.field());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] != power) continue;
    bool inside = true;
    for (int v = 0; v < kVars && inside; ++v)
      if (v != var && e[v] && !(rest_mask >> v & 1)) inside = false;
    if (!inside) continue;
    Exponent r = e;
    r[var] = 0;
    out.add_term(r, c);
  }
  return out;
}

std::array<std::uint32_t, 2> linear_pair(const FpPoly& f, const WeightSystem& ws, const std::string& cofactor,
                                         const std::string& v0, const std::string& v1) {
  std::string pre = cofactor.empty() ? "" : cofactor + "*";
  return {coef(f, ws, pre + v0), coef(f, ws, pre + v1)};
}

std::uint32_t det2(const PrimeField& f, const std::array<std::uint32_t, 2>& a, const std::array<std::uint32_t, 2>& b) {
  return f.sub(f.mul(a[0], b[1]), f.mul(a[1], b[0]));
}

bool proportional(const PrimeField& f, const std::array<std::uint32_t, 2>& a, const std::array<std::uint32_t, 2>& b) {
  return det2(f, a, b) == 0;
}

FpMatrix scale_variable(const FpMatrix& M, int v, std::uint32_t c) {
  const PrimeField& f = M.entries[0].field();
  std::map<int, FpPoly> sub{{v, FpPoly::variable(f, v).scaled(c)}};
  return substitute_entries(M, sub);
}

std::map<int, FpPoly> make_form_coordinate(const PrimeField& f, int i, int j, std::uint32_t ci, std::uint32_t cj) {
  std::map<int, FpPoly> sub;
  FpPoly xi = FpPoly::variable(f, i), xj = FpPoly::variable(f, j);
  if (cj) {
    // x_j -> (x_j - c_i x_i) / c_j
    auto inv = f.inv(cj);
    sub[j] = (xj - xi.scaled(ci)).scaled(inv);
  } else {
    if (!ci) throw std::invalid_argument("zero linear form");
    sub[i] = xj.scaled(f.inv(ci));
    sub[j] = xi;
  }
  return sub;
}

std::vector<std::uint32_t> binary_form(const FpPoly& f, int u0, int u1, int d, const Exponent& cofactor) {
  std::vector<std::uint32_t> out;
  for (int k = 0; k <= d; ++k) {
    Exponent e = cofactor;
    e[u0] = static_cast<std::uint16_t>(e[u0] + d - k);
    e[u1] = static_cast<std::uint16_t>(e[u1] + k);
    out.push_back(f.coefficient(e));
  }
  return out;
}

std::uint32_t eval_binary(const PrimeField& f, const std::vector<std::uint32_t>& form, std::uint32_t a0,
                          std::uint32_t a1) {
  int d = static_cast<int>(form.size()) - 1;
  std::uint32_t acc = 0;
  for (int k = 0; k <= d; ++k)
    acc = f.add(acc, f.mul(form[k], f.mul(f.pow(a0, static_cast<std::uint64_t>(d - k)), f.pow(a1, k))));
  return acc;
}

bool common_root(const PrimeField& f, const std::vector<std::vector<std::uint32_t>>& forms) {
  // The point (1:0).
  bool all_vanish = true;
  for (const auto& g : forms)
    if (!g.empty() && g.front() != 0) all_vanish = false;
  if (all_vanish) return true;
  // Remaining points have u1 = 1; the form becomes a polynomial in u0.
  UPoly acc;
  bool have = false;
  for (const auto& g : forms) {
    UPoly u;
    int d = static_cast<int>(g.size()) - 1;
    u.c.assign(g.size(), 0);
    for (int k = 0; k <= d; ++k) u.c[d - k] = g[k];
    upoly::trim(u);
    if (u.is_zero()) continue;
    acc = have ? upoly::gcd(acc, u, f) : u;
    have = true;
  }
  if (!have) return true;
  return acc.degree() >= 1;
}

PointCount count_points(const std::vector<FpPoly>& eqs, const std::vector<int>& order,
                        const std::array<int, kVars>& weights, std::uint64_t seed, std::size_t budget) {
  PointCount out;
  out.points = 0;
  const PrimeField f = eqs.front().field();
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::map<int, FpPoly> sub;
    std::uint8_t mask = 0;
    for (std::size_t j = 0; j < order.size(); ++j) {
      if (j < i) sub[order[j]] = FpPoly(f);
      if (j == i) sub[order[j]] = FpPoly::constant(f, 1);
      if (j > i) mask |= static_cast<std::uint8_t>(1u << order[j]);
    }
    std::vector<FpPoly> gens;
    bool empty = false;
    for (const auto& e : eqs) {
      FpPoly g = substitute(e, sub);
      if (g.is_zero()) continue;
      if (g.size() == 1 && g.terms().begin()->first == Exponent{}) empty = true;
      gens.push_back(g);
    }
    if (empty) continue;
    int wi = weights[order[i]];
    if (gens.empty()) {
      if (mask) {
        out.diagnostic = "positive-dimensional stratum";
        return out;
      }
      out.points += 1;
      continue;
    }
    ZeroDimSolution sol;
    try {
      sol = solve_zero_dim(gens, mask, seed + i, budget);
    } catch (const BudgetExceeded&) {
      throw;
    } catch (const std::exception& e) {
      out.diagnostic = e.what();
      return out;
    }
    out.radical = out.radical && sol.radical;
    for (const auto& o : sol.orbits) {
      ExtField K(f, o.minimal);
      int g = wi;
      for (std::size_t j = i + 1; j < order.size(); ++j)
        if (!K.is_zero(K.from_upoly(o.coords[order[j]]))) g = std::gcd(g, weights[order[j]]);
      out.points += Rational(o.minimal.degree() * g, wi);
    }
  }
  out.points.canonicalize();
  out.ok = true;
  return out;
}

int cone_dimension(std::vector<FpPoly> polys, std::uint8_t mask, std::size_t budget) {
  const PrimeField f = polys.front().field();
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& g : polys) {
      if (g.size() != 1) continue;
      const Exponent& e = g.terms().begin()->first;
      int var = -1, nz = 0;
      for (int v = 0; v < kVars; ++v)
        if (e[v]) {
          var = v;
          ++nz;
        }
      if (nz != 1 || !(mask >> var & 1)) continue;
      std::map<int, FpPoly> sub{{var, FpPoly(f)}};
      for (auto& h : polys) h = substitute(h, sub);
      mask = static_cast<std::uint8_t>(mask & ~(1u << var));
      changed = true;
      break;
    }
  }
  std::vector<FpPoly> gens;
  for (auto& g : polys) {
    if (g.is_zero()) continue;
    if (g.size() == 1 && g.terms().begin()->first == Exponent{}) return -1;
    gens.push_back(g);
  }
  if (gens.empty()) return __builtin_popcount(mask);
  GroebnerBasis gb = buchberger(gens, MonomialOrder{}, budget);
  return affine_dimension(gb, mask);
}

std::uint8_t mask_without(int k) { return static_cast<std::uint8_t>(0x7f & ~(1u << k)); }

std::uint8_t mask_of(const WeightSystem& ws, const std::vector<std::string>& names) {
  std::uint8_t m = 0;
  for (const auto& n : names) {
    int i = ws.index_of(n);
    if (i < 0) throw std::invalid_argument("unknown variable " + n);
    m |= static_cast<std::uint8_t>(1u << i);
  }
  return m;
}

std::string str(const Rational& q) { return rational_str(q); }

}  // namespace pfano::detail
