#include <algorithm>
#include <numeric>

#include "pfano/ideal.hpp"

namespace pfano {

namespace {

using Term = std::pair<Exponent, std::uint32_t>;

// Working representation: terms sorted from largest to smallest monomial.
struct DPoly {
  std::vector<Term> t;
  bool zero() const { return t.empty(); }
  const Exponent& lm() const { return t.front().first; }
};

struct Ctx {
  PrimeField f;
  MonomialOrder ord;
  std::size_t budget;
  std::size_t steps = 0;

  void tick() {
    if (++steps > budget) throw BudgetExceeded("Groebner step budget exhausted");
  }
};

DPoly to_dpoly(const FpPoly& p, const MonomialOrder& ord) {
  DPoly d;
  d.t.assign(p.terms().begin(), p.terms().end());
  std::sort(d.t.begin(), d.t.end(), [&](const Term& a, const Term& b) { return ord.greater(a.first, b.first); });
  return d;
}

FpPoly to_fppoly(const DPoly& d, const PrimeField& f) {
  FpPoly p(f);
  for (const auto& [e, c] : d.t) p.set_term(e, c);
  return p;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r;
  for (int i = 0; i < kVars; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponent quotient(const Exponent& a, const Exponent& b) {  // a / b, requires b | a
  Exponent r;
  for (int i = 0; i < kVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return r;
}

bool coprime(const Exponent& a, const Exponent& b) {
  for (int i = 0; i < kVars; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

void make_monic(DPoly& p, const PrimeField& f) {
  if (p.zero()) return;
  auto inv = f.inv(p.t.front().second);
  for (auto& term : p.t) term.second = f.mul(term.second, inv);
}

// p - c * m * g, where the result keeps the descending order.
DPoly sub_mul(const DPoly& p, std::uint32_t c, const Exponent& m, const DPoly& g, const Ctx& ctx) {
  DPoly r;
  r.t.reserve(p.t.size() + g.t.size());
  std::size_t i = 0, j = 0;
  auto shifted = [&](std::size_t k) {
    Exponent e;
    for (int v = 0; v < kVars; ++v) e[v] = static_cast<std::uint16_t>(g.t[k].first[v] + m[v]);
    return e;
  };
  while (i < p.t.size() || j < g.t.size()) {
    if (j == g.t.size()) {
      r.t.push_back(p.t[i++]);
      continue;
    }
    Exponent ge = shifted(j);
    std::uint32_t gc = ctx.f.neg(ctx.f.mul(c, g.t[j].second));
    if (i == p.t.size() || ctx.ord.greater(ge, p.t[i].first)) {
      r.t.emplace_back(ge, gc);
      ++j;
    } else if (ge == p.t[i].first) {
      auto s = ctx.f.add(p.t[i].second, gc);
      if (s) r.t.emplace_back(ge, s);
      ++i;
      ++j;
    } else {
      r.t.push_back(p.t[i++]);
    }
  }
  return r;
}

// Full reduction of p by the polys in basis whose index is flagged active.
DPoly reduce(DPoly p, const std::vector<DPoly>& basis, const std::vector<char>& active, Ctx& ctx) {
  DPoly rem;
  while (!p.zero()) {
    const Exponent lm = p.lm();
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!active[k] || !divides(basis[k].lm(), lm)) continue;
      ctx.tick();
      // basis entries are monic
      p = sub_mul(p, p.t.front().second, quotient(lm, basis[k].lm()), basis[k], ctx);
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.t.push_back(p.t.front());
      p.t.erase(p.t.begin());
    }
  }
  return rem;
}

DPoly spoly(const DPoly& a, const DPoly& b, const Ctx& ctx) {
  Exponent l = lcm(a.lm(), b.lm());
  DPoly lhs;
  // a, b monic: S = (l/lm a) a - (l/lm b) b
  Exponent ma = quotient(l, a.lm());
  lhs.t.reserve(a.t.size());
  for (const auto& [e, c] : a.t) {
    Exponent s;
    for (int v = 0; v < kVars; ++v) s[v] = static_cast<std::uint16_t>(e[v] + ma[v]);
    lhs.t.emplace_back(s, c);
  }
  return sub_mul(lhs, ctx.f.one(), quotient(l, b.lm()), b, ctx);
}

struct Pair {
  std::size_t i, j;
  Exponent lcm;
};

GroebnerBasis finish(std::vector<DPoly> polys, const Ctx& ctx) {
  // Minimalize then interreduce.
  std::sort(polys.begin(), polys.end(), [&](const DPoly& a, const DPoly& b) { return ctx.ord.greater(b.lm(), a.lm()); });
  std::vector<DPoly> minimal;
  for (auto& p : polys) {
    bool redundant = false;
    for (const auto& q : minimal)
      if (divides(q.lm(), p.lm())) redundant = true;
    if (!redundant) minimal.push_back(std::move(p));
  }
  Ctx c2 = ctx;
  c2.budget = static_cast<std::size_t>(-1);
  std::vector<char> active(minimal.size(), 1);
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    active[k] = 0;
    DPoly head;
    head.t.push_back(minimal[k].t.front());
    DPoly tail;
    tail.t.assign(minimal[k].t.begin() + 1, minimal[k].t.end());
    DPoly r = reduce(tail, minimal, active, c2);
    head.t.insert(head.t.end(), r.t.begin(), r.t.end());
    minimal[k] = head;
    active[k] = 1;
  }
  GroebnerBasis gb;
  gb.field = ctx.f;
  gb.order = ctx.ord;
  gb.reduced = true;
  for (const auto& p : minimal) gb.generators.push_back(to_fppoly(p, ctx.f));
  return gb;
}

}  // namespace

Exponent leading_monomial(const FpPoly& f, const MonomialOrder& order) {
  if (f.is_zero()) throw std::invalid_argument("leading monomial of zero");
  const Exponent* best = nullptr;
  for (const auto& kv : f.terms())
    if (!best || order.greater(kv.first, *best)) best = &kv.first;
  return *best;
}

bool GroebnerBasis::is_unit_ideal() const {
  for (const auto& g : generators)
    if (g.size() == 1 && g.terms().begin()->first == Exponent{}) return true;
  return false;
}

Exponent GroebnerBasis::leading(std::size_t i) const { return leading_monomial(generators.at(i), order); }

GroebnerBasis buchberger(const std::vector<FpPoly>& gens, const MonomialOrder& order, std::size_t budget) {
  if (gens.empty()) throw std::invalid_argument("empty generator list");
  Ctx ctx{gens.front().field(), order, budget};
  for (const auto& g : gens)
    if (!(g.field() == ctx.f)) throw FieldMismatch("generators over different prime fields");

  std::vector<DPoly> polys;
  std::vector<char> active;
  std::vector<Pair> pairs;

  auto update = [&](DPoly h) {
    std::size_t hi = polys.size();
    polys.push_back(std::move(h));
    active.push_back(1);
    const Exponent& lh = polys[hi].lm();
    // Candidate pairs (h, g) for active g, with the Gebauer-Moeller chain criterion.
    std::vector<Pair> cand;
    for (std::size_t g = 0; g < hi; ++g)
      if (active[g]) cand.push_back({g, hi, lcm(polys[g].lm(), lh)});
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool cop = coprime(polys[cand[a].i].lm(), lh);
      bool dominated = false;
      if (!cop) {
        for (std::size_t b = 0; b < cand.size() && !dominated; ++b) {
          if (b == a) continue;
          if (divides(cand[b].lcm, cand[a].lcm) && (cand[b].lcm != cand[a].lcm || b < a)) dominated = true;
        }
      }
      if (!dominated) kept.push_back(cand[a]);
    }
    std::vector<Pair> next;
    for (const auto& p : pairs) {
      bool drop = divides(lh, p.lcm) && lcm(polys[p.i].lm(), lh) != p.lcm && lcm(polys[p.j].lm(), lh) != p.lcm;
      if (!drop) next.push_back(p);
    }
    for (const auto& p : kept)
      if (!coprime(polys[p.i].lm(), lh)) next.push_back(p);
    pairs = std::move(next);
    for (std::size_t g = 0; g < hi; ++g)
      if (active[g] && divides(lh, polys[g].lm())) active[g] = 0;
  };

  for (const auto& g : gens) {
    DPoly d = reduce(to_dpoly(g, order), polys, active, ctx);
    if (d.zero()) continue;
    make_monic(d, ctx.f);
    update(std::move(d));
  }

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      return order.greater(b.lcm, a.lcm);
    });
    Pair p = *it;
    pairs.erase(it);
    ctx.tick();
    DPoly s = reduce(spoly(polys[p.i], polys[p.j], ctx), polys, active, ctx);
    if (s.zero()) continue;
    make_monic(s, ctx.f);
    if (s.lm() == Exponent{}) {
      GroebnerBasis gb;
      gb.field = ctx.f;
      gb.order = order;
      gb.reduced = true;
      gb.generators.push_back(FpPoly::constant(ctx.f, 1));
      return gb;
    }
    update(std::move(s));
  }
  std::vector<DPoly> out;
  for (std::size_t k = 0; k < polys.size(); ++k)
    if (active[k]) out.push_back(polys[k]);
  if (out.empty()) {
    GroebnerBasis gb;
    gb.field = ctx.f;
    gb.order = order;
    gb.reduced = true;
    return gb;  // zero ideal
  }
  return finish(std::move(out), ctx);
}

FpPoly normal_form(const FpPoly& f, const GroebnerBasis& gb) {
  if (!(f.field() == gb.field)) throw FieldMismatch("normal_form: field mismatch");
  Ctx ctx{gb.field, gb.order, static_cast<std::size_t>(-1)};
  std::vector<DPoly> basis;
  for (const auto& g : gb.generators) {
    DPoly d = to_dpoly(g, gb.order);
    make_monic(d, gb.field);
    basis.push_back(std::move(d));
  }
  std::vector<char> active(basis.size(), 1);
  return to_fppoly(reduce(to_dpoly(f, gb.order), basis, active, ctx), gb.field);
}

FpPoly s_polynomial(const FpPoly& f, const FpPoly& g, const MonomialOrder& order) {
  Ctx ctx{f.field(), order, static_cast<std::size_t>(-1)};
  DPoly a = to_dpoly(f, order), b = to_dpoly(g, order);
  make_monic(a, ctx.f);
  make_monic(b, ctx.f);
  return to_fppoly(spoly(a, b, ctx), ctx.f);
}

bool is_groebner(const GroebnerBasis& gb) {
  for (std::size_t i = 0; i < gb.generators.size(); ++i)
    for (std::size_t j = i + 1; j < gb.generators.size(); ++j)
      if (!normal_form(s_polynomial(gb.generators[i], gb.generators[j], gb.order), gb).is_zero()) return false;
  return true;
}

int affine_dimension(const GroebnerBasis& gb, std::uint8_t mask) {
  if (gb.is_unit_ideal()) return -1;
  std::vector<Exponent> lms;
  for (std::size_t i = 0; i < gb.generators.size(); ++i) lms.push_back(gb.leading(i));
  int best = 0;
  for (int s = 0; s < (1 << kVars); ++s) {
    if ((s & ~mask) != 0) continue;
    int size = __builtin_popcount(static_cast<unsigned>(s));
    if (size <= best) continue;
    bool independent = true;
    for (const auto& e : lms) {
      bool inside = true;  // monomial only in variables of s
      for (int v = 0; v < kVars; ++v)
        if (e[v] && !(s >> v & 1)) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

std::optional<std::vector<Exponent>> standard_monomials(const GroebnerBasis& gb, std::uint8_t mask) {
  if (gb.is_unit_ideal()) return std::vector<Exponent>{};
  if (affine_dimension(gb, mask) != 0) return std::nullopt;
  std::vector<Exponent> lms;
  for (std::size_t i = 0; i < gb.generators.size(); ++i) lms.push_back(gb.leading(i));
  auto standard = [&](const Exponent& e) {
    for (const auto& l : lms)
      if (divides(l, e)) return false;
    return true;
  };
  std::vector<Exponent> out{Exponent{}};
  std::vector<Exponent> frontier{Exponent{}};
  while (!frontier.empty()) {
    std::vector<Exponent> next;
    for (const auto& e : frontier)
      for (int v = 0; v < kVars; ++v) {
        if (!(mask >> v & 1)) continue;
        Exponent n = e;
        ++n[v];
        if (!standard(n) || std::find(out.begin(), out.end(), n) != out.end()) continue;
        out.push_back(n);
        next.push_back(n);
      }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace pfano
