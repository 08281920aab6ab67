#include <algorithm>
#include <map>

#include "pfano/ideal.hpp"

namespace pfano {

ExtField::ExtField(PrimeField base, UPoly modulus) : base_(base), modulus_(upoly::monic(modulus, base)) {
  if (modulus_.degree() < 1) throw std::invalid_argument("extension modulus must have positive degree");
}

ExtField::Elem ExtField::one() const { return embed(base_.one()); }

ExtField::Elem ExtField::embed(std::uint32_t a) const {
  Elem e = zero();
  e[0] = a % base_.p;
  return e;
}

ExtField::Elem ExtField::theta() const { return from_upoly(UPoly{{0, base_.one()}}); }

ExtField::Elem ExtField::from_upoly(const UPoly& a) const {
  UPoly r = upoly::mod(a, modulus_, base_);
  Elem e = zero();
  for (std::size_t i = 0; i < r.c.size(); ++i) e[i] = r.c[i];
  return e;
}

namespace {
UPoly as_upoly(const ExtField::Elem& a) {
  UPoly u{a};
  upoly::trim(u);
  return u;
}
}  // namespace

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = base_.add(a[i], b[i]);
  return r;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = base_.sub(a[i], b[i]);
  return r;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  return from_upoly(upoly::mul(as_upoly(a), as_upoly(b), base_));
}

ExtField::Elem ExtField::inv(const Elem& a) const {
  // Extended Euclid on (a, modulus).
  UPoly r0 = modulus_, r1 = as_upoly(a);
  if (r1.is_zero()) throw std::domain_error("inverse of zero in extension field");
  UPoly s0, s1{{base_.one()}};
  while (!r1.is_zero()) {
    UPoly q, r;
    upoly::divmod(r0, r1, base_, q, r);
    UPoly s = upoly::sub(s0, upoly::mul(q, s1, base_), base_);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant because the modulus is irreducible.
  if (r0.degree() != 0) throw std::domain_error("extension modulus is not irreducible");
  auto c = base_.inv(r0.c[0]);
  UPoly scaled = s0;
  for (auto& v : scaled.c) v = base_.mul(v, c);
  return from_upoly(scaled);
}

bool ExtField::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t v) { return v == 0; });
}

int ExtField::rank(std::vector<std::vector<Elem>> m) const {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int rk = 0;
  for (int c = 0; c < cols && rk < rows; ++c) {
    int piv = -1;
    for (int r = rk; r < rows; ++r)
      if (!is_zero(m[r][c])) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rk]);
    Elem inv_p = inv(m[rk][c]);
    for (int r = 0; r < rows; ++r) {
      if (r == rk || is_zero(m[r][c])) continue;
      Elem factor = mul(m[r][c], inv_p);
      for (int k = c; k < cols; ++k) m[r][k] = sub(m[r][k], mul(factor, m[rk][k]));
    }
    ++rk;
  }
  return rk;
}

namespace {

using Vec = std::vector<std::uint32_t>;

Vec coordinates(const FpPoly& nf, const std::map<Exponent, std::size_t>& index) {
  Vec v(index.size(), 0);
  for (const auto& [e, c] : nf.terms()) v.at(index.at(e)) = c;
  return v;
}

// Row-echelon accumulator used to detect the first linear dependency and to solve for coefficients.
// Each stored row keeps its pivot and the combination of input vectors that produced it.
struct Echelon {
  PrimeField f;
  std::size_t n_inputs = 0;
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;
  std::vector<Vec> combos;

  // Reduces v; returns the combination expressing v - (reduced) in terms of inputs, and the reduced v.
  std::pair<Vec, Vec> reduce(Vec v, std::size_t width) const {
    Vec combo(width, 0);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      auto c = v[pivots[k]];
      if (!c) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.sub(v[i], f.mul(c, rows[k][i]));
      for (std::size_t i = 0; i < combos[k].size(); ++i) combo[i] = f.add(combo[i], f.mul(c, combos[k][i]));
    }
    return {combo, v};
  }

  // Returns false (and the dependency) when v is in the span.
  bool insert(const Vec& v, std::size_t width, Vec* dependency) {
    auto [combo, red] = reduce(v, width);
    auto it = std::find_if(red.begin(), red.end(), [](std::uint32_t x) { return x != 0; });
    if (it == red.end()) {
      if (dependency) *dependency = combo;
      return false;
    }
    std::size_t piv = static_cast<std::size_t>(it - red.begin());
    auto inv = f.inv(red[piv]);
    for (auto& x : red) x = f.mul(x, inv);
    // row = (v - combo.inputs) * inv  ->  its combination is (e_new - combo) * inv
    Vec mine(width, 0);
    for (std::size_t i = 0; i < width; ++i) mine[i] = f.mul(f.neg(combo[i]), inv);
    mine[n_inputs] = f.add(mine[n_inputs], inv);
    rows.push_back(red);
    pivots.push_back(piv);
    combos.push_back(mine);
    ++n_inputs;
    return true;
  }
};

FpPoly linear_form(const PrimeField& f, std::uint8_t mask, std::mt19937_64& rng) {
  FpPoly l(f);
  for (int v = 0; v < kVars; ++v)
    if (mask >> v & 1) l.add_term(unit_exponent(v), static_cast<std::uint32_t>(1 + rng() % (f.p - 1)));
  return l;
}

struct MinPolyResult {
  UPoly minimal;
};

// Minimal polynomial of multiplication by l on the quotient ring.
UPoly minimal_polynomial(const FpPoly& l, const GroebnerBasis& gb, const std::map<Exponent, std::size_t>& index) {
  const PrimeField& f = gb.field;
  std::size_t n = index.size();
  Echelon ech{f, 0, {}, {}, {}};
  FpPoly power = normal_form(FpPoly::constant(f, 1), gb);
  for (std::size_t k = 0; k <= n; ++k) {
    Vec dep;
    if (!ech.insert(coordinates(power, index), n + 1, &dep)) {
      // l^k = sum dep_j l^j
      UPoly m;
      m.c.assign(k + 1, 0);
      for (std::size_t j = 0; j < k; ++j) m.c[j] = f.neg(dep[j]);
      m.c[k] = f.one();
      return m;
    }
    power = normal_form(power * l, gb);
  }
  throw std::logic_error("minimal polynomial degree exceeds quotient dimension");
}

FpPoly evaluate_univariate(const UPoly& g, const FpPoly& l) {
  const PrimeField& f = l.field();
  FpPoly acc(f);
  for (auto it = g.c.rbegin(); it != g.c.rend(); ++it) acc = acc * l + FpPoly::constant(f, *it);
  return acc;
}

std::map<Exponent, std::size_t> index_of(const std::vector<Exponent>& std_monos) {
  std::map<Exponent, std::size_t> idx;
  for (std::size_t i = 0; i < std_monos.size(); ++i) idx[std_monos[i]] = i;
  return idx;
}

}  // namespace

ZeroDimSolution solve_zero_dim(const std::vector<FpPoly>& gens, std::uint8_t mask, std::uint64_t seed,
                               std::size_t budget) {
  if (gens.empty()) throw std::invalid_argument("empty system");
  const PrimeField f = gens.front().field();
  GroebnerBasis gb = buchberger(gens, MonomialOrder{}, budget);
  ZeroDimSolution out;
  if (gb.is_unit_ideal()) return out;
  auto std_monos = standard_monomials(gb, mask);
  if (!std_monos) throw std::runtime_error("system is not zero-dimensional");
  out.quotient_dimension = std_monos->size();
  auto idx = index_of(*std_monos);

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (int attempt = 0; attempt < 32; ++attempt) {
    FpPoly l = linear_form(f, mask, rng);
    UPoly m = minimal_polynomial(l, gb, idx);
    UPoly g = upoly::squarefree_part(m, f);
    std::vector<FpPoly> ext = gb.generators;
    ext.push_back(evaluate_univariate(g, l));
    GroebnerBasis red = buchberger(ext, MonomialOrder{}, budget);
    auto red_monos = standard_monomials(red, mask);
    if (!red_monos || static_cast<int>(red_monos->size()) != g.degree()) continue;  // l not separating
    out.radical = red_monos->size() == std_monos->size();

    auto ridx = index_of(*red_monos);
    std::size_t d = red_monos->size();
    Echelon ech{f, 0, {}, {}, {}};
    FpPoly power = normal_form(FpPoly::constant(f, 1), red);
    for (std::size_t k = 0; k < d; ++k) {
      if (!ech.insert(coordinates(power, ridx), d, nullptr))
        throw std::logic_error("powers of a separating form must be independent");
      power = normal_form(power * l, red);
    }
    std::array<UPoly, kVars> h{};
    for (int v = 0; v < kVars; ++v) {
      if (!(mask >> v & 1)) continue;
      auto [combo, rest] = ech.reduce(coordinates(normal_form(FpPoly::variable(f, v), red), ridx), d);
      h[v].c = combo;
      upoly::trim(h[v]);
    }
    for (const auto& q : upoly::factor_squarefree(g, f, rng)) {
      PointOrbit orb;
      orb.minimal = q;
      for (int v = 0; v < kVars; ++v) orb.coords[v] = upoly::mod(h[v], q, f);
      out.orbits.push_back(std::move(orb));
    }
    return out;
  }
  throw std::runtime_error("no separating linear form found");
}

}  // namespace pfano
