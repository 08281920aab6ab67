#include <algorithm>
#include <numeric>

#include "pfano/geometry.hpp"

namespace pfano {

namespace {

// Rank over F_p by row reduction; the matrix is consumed.
int rank_fp(std::vector<std::vector<std::uint32_t>> m, const PrimeField& f) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int rk = 0;
  for (int c = 0; c < cols && rk < rows; ++c) {
    int piv = -1;
    for (int r = rk; r < rows; ++r)
      if (m[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rk]);
    auto inv = f.inv(m[rk][c]);
    for (int r = rk + 1; r < rows; ++r) {
      if (!m[r][c]) continue;
      auto factor = f.mul(m[r][c], inv);
      for (int k = c; k < cols; ++k) m[r][k] = f.sub(m[r][k], f.mul(factor, m[rk][k]));
    }
    ++rk;
  }
  return rk;
}

std::uint32_t det3(const std::array<std::array<std::uint32_t, 3>, 3>& m, const PrimeField& f) {
  auto t = [&](int a, int b, int c) { return f.mul(m[0][a], f.mul(m[1][b], m[2][c])); };
  std::uint32_t plus = f.add(f.add(t(0, 1, 2), t(1, 2, 0)), t(2, 0, 1));
  std::uint32_t minus = f.add(f.add(t(2, 1, 0), t(0, 2, 1)), t(1, 0, 2));
  return f.sub(plus, minus);
}

int equation_degree(const FpPoly& F, const WeightSystem& ws) {
  auto d = F.weighted_degree(ws);
  return d ? *d : -1;
}

}  // namespace

bool wellformed_check(const WeightSystem& ws) {
  for (int skip = 0; skip < kVars; ++skip) {
    int g = 0;
    for (int i = 0; i < kVars; ++i)
      if (i != skip) g = std::gcd(g, ws.weights[i]);
    if (g != 1) return false;
  }
  return true;
}

bool vertex_membership(const Equations& X, int k) {
  for (const auto& F : X)
    for (const auto& kv : F.terms()) {
      const Exponent& e = kv.first;
      bool pure = e[k] > 0;
      for (int i = 0; i < kVars && pure; ++i)
        if (i != k && e[i]) pure = false;
      if (pure) return false;
    }
  return true;
}

std::optional<int> terminal_type(int r, std::array<int, 3> res) {
  for (auto& v : res) v = ((v % r) + r) % r;
  for (int s = 0; s < 3; ++s) {
    int b = res[s], o1 = res[(s + 1) % 3], o2 = res[(s + 2) % 3];
    if (std::gcd(b, r) != 1 || (o1 + o2) % r != 0 || o1 == 0) continue;
    int inv = 1;
    while (b * inv % r != 1 % r) ++inv;
    int a = o1 * inv % r;
    if (std::gcd(a, r) != 1) continue;
    return std::min(a, r - a);
  }
  return std::nullopt;
}

VertexAnalysis quasismooth_at_vertex(const Equations& X, const WeightSystem& ws, int k) {
  VertexAnalysis out;
  const std::string name = ws.names[k];
  if (!vertex_membership(X, k)) {
    out.diagnostic = "vertex p_" + name + " is not on X";
    return out;
  }
  const PrimeField& f = X[0].field();
  int r = ws.weights[k];
  std::vector<int> cols;
  for (int j = 0; j < kVars; ++j)
    if (j != k) cols.push_back(j);
  std::stable_sort(cols.begin(), cols.end(), [&](int a, int b) {
    if (ws.weights[a] != ws.weights[b]) return ws.weights[a] > ws.weights[b];
    return a > b;
  });
  // J[i][j] is the coefficient of x_k^l x_j in F_i, i.e. dF_i/dx_j at the vertex.
  std::array<std::array<std::uint32_t, kVars>, 5> J{};
  std::array<std::array<int, kVars>, 5> power{};
  for (int i = 0; i < 5; ++i) {
    int d = equation_degree(X[i], ws);
    for (int j : cols) {
      power[i][j] = -1;
      int rest = d - ws.weights[j];
      if (d < 0 || rest < 0 || rest % r) continue;
      Exponent e{};
      e[k] = static_cast<std::uint16_t>(rest / r);
      e[j] += 1;
      J[i][j] = X[i].coefficient(e);
      power[i][j] = rest / r;
    }
  }
  std::vector<int> elim, tangent;
  std::vector<std::vector<std::uint32_t>> chosen_cols;
  int rank = 0;
  for (int j : cols) {
    std::vector<std::uint32_t> col(5);
    for (int i = 0; i < 5; ++i) col[i] = J[i][j];
    auto trial = chosen_cols;
    trial.push_back(col);
    int rk = rank_fp(trial, f);
    if (rank < 3 && rk > rank) {
      chosen_cols = trial;
      rank = rk;
      elim.push_back(j);
    } else {
      tangent.push_back(j);
    }
  }
  if (rank < 3) {
    out.diagnostic = "X is not quasi-smooth at p_" + name + ": Jacobian rank " + std::to_string(rank) +
                     " < 3; no monomial " + name + "^l*x_j found for";
    for (int j : cols)
      if (std::find(elim.begin(), elim.end(), j) == elim.end()) out.diagnostic += " " + ws.names[j];
    return out;
  }
  // Choose three equations with a nonzero minor, then a matching inside it.
  std::optional<std::array<int, 3>> rows;
  for (int a = 0; a < 5 && !rows; ++a)
    for (int b = a + 1; b < 5 && !rows; ++b)
      for (int c = b + 1; c < 5 && !rows; ++c) {
        std::array<std::array<std::uint32_t, 3>, 3> m{};
        std::array<int, 3> rr{a, b, c};
        for (int x = 0; x < 3; ++x)
          for (int y = 0; y < 3; ++y) m[x][y] = J[rr[x]][elim[y]];
        if (det3(m, f)) rows = rr;
      }
  QuotientPoint p;
  p.vertex = k;
  p.support = {k};
  p.r = r;
  std::array<int, 3> perm{0, 1, 2};
  do {
    bool ok = true;
    for (int x = 0; x < 3 && ok; ++x) ok = J[(*rows)[x]][elim[perm[x]]] != 0;
    if (ok) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (int x = 0; x < 3; ++x) {
    int j = elim[perm[x]];
    p.eliminated.push_back({j, (*rows)[x], power[(*rows)[x]][j]});
  }
  std::sort(p.eliminated.begin(), p.eliminated.end(), [](const Elimination& a, const Elimination& b) {
    return a.coord < b.coord;
  });
  std::sort(tangent.begin(), tangent.end());
  for (int t = 0; t < 3; ++t) {
    p.tangent_indices[t] = tangent[t];
    p.tangent_weights[t] = ws.weights[tangent[t]];
    p.local_weights[t] = ws.weights[tangent[t]] % r;
  }
  p.has_integer_weights = true;
  auto a = terminal_type(r, p.local_weights);
  if (!a) {
    out.diagnostic = "p_" + name + " is not a terminal quotient point";
    return out;
  }
  p.a = *a;
  out.point = p;
  return out;
}

CentreKind classify_type_I(const QuotientPoint& p, const Rational& A3) {
  if (!p.has_integer_weights) return CentreKind::NotTypeI;
  std::array<int, 3> w = p.tangent_weights, model{1, p.a, p.r - p.a};
  std::sort(w.begin(), w.end());
  std::sort(model.begin(), model.end());
  if (w != model) return CentreKind::NotTypeI;
  Rational bound(1, p.r * p.a * (p.r - p.a));
  return A3 > bound ? CentreKind::TypeI : CentreKind::NotTypeI;
}

namespace {

// Solves X on the locus where only the coordinates in pi may be nonzero, chart by chart, and keeps
// orbits whose support has weight gcd equal to r.
void scan_locus(const Equations& X, const WeightSystem& ws, const std::vector<int>& pi, int r, std::uint64_t seed,
                std::size_t budget, SingularScan& out) {
  const PrimeField& f = X[0].field();
  std::array<FpPoly, kVars> derivs[5];
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < kVars; ++j) derivs[i][j] = differentiate(X[i], j);
  std::array<int, 5> degs{};
  for (int i = 0; i < 5; ++i) degs[i] = equation_degree(X[i], ws);

  for (std::size_t t = 0; t < pi.size(); ++t) {
    int chart = pi[t];
    std::map<int, FpPoly> sub;
    std::uint8_t mask = 0;
    for (int v = 0; v < kVars; ++v) {
      bool free = std::find(pi.begin() + static_cast<long>(t) + 1, pi.end(), v) != pi.end();
      if (v == chart)
        sub[v] = FpPoly::constant(f, 1);
      else if (free)
        mask |= static_cast<std::uint8_t>(1u << v);
      else
        sub[v] = FpPoly(f);
    }
    std::vector<FpPoly> gens;
    bool inconsistent = false;
    for (const auto& F : X) {
      FpPoly g = substitute(F, sub);
      if (g.is_zero()) continue;
      if (g.size() == 1 && g.terms().begin()->first == Exponent{}) inconsistent = true;
      gens.push_back(g);
    }
    if (inconsistent) continue;
    std::vector<PointOrbit> orbits;
    bool radical = true;
    if (gens.empty()) {
      if (mask) {
        out.problems.push_back("X contains a positive-dimensional part of a locus of index " + std::to_string(r));
        continue;
      }
      PointOrbit o;
      o.minimal = UPoly{{0, 1}};
      orbits.push_back(o);
    } else {
      try {
        auto sol = solve_zero_dim(gens, mask, seed + static_cast<std::uint64_t>(chart) * 7919u + r, budget);
        orbits = sol.orbits;
        radical = sol.radical;
      } catch (const std::exception& e) {
        out.problems.push_back("locus of index " + std::to_string(r) + " in chart " + ws.names[chart] + ": " +
                               e.what());
        continue;
      }
    }
    for (auto& o : orbits) {
      o.coords[chart] = UPoly{{1}};
      ExtField K(f, o.minimal);
      std::array<ExtField::Elem, kVars> pt;
      SingularOrbit so;
      int g = 0;
      for (int v = 0; v < kVars; ++v) {
        pt[v] = K.from_upoly(o.coords[v]);
        if (!K.is_zero(pt[v])) {
          so.support.push_back(v);
          g = std::gcd(g, ws.weights[v]);
        }
      }
      if (g != r) continue;
      so.r = r;
      so.orbit = o;
      so.chart = chart;
      so.reduced = radical;
      so.count = Rational(o.minimal.degree() * g, ws.weights[chart]);
      so.count.canonicalize();
      // Block ranks by residue class: dF_i/dx_j can only be nonzero at the point when d_i = a_j mod r.
      auto embed = [&](std::uint32_t c) { return K.embed(c); };
      int total_rank = 0;
      std::vector<int> kernel(r, 0);
      for (int c = 0; c < r; ++c) {
        std::vector<int> rows, cols;
        for (int i = 0; i < 5; ++i)
          if (degs[i] >= 0 && degs[i] % r == c) rows.push_back(i);
        for (int j = 0; j < kVars; ++j)
          if (ws.weights[j] % r == c) cols.push_back(j);
        std::vector<std::vector<ExtField::Elem>> m;
        for (int i : rows) {
          std::vector<ExtField::Elem> row;
          for (int j : cols) row.push_back(evaluate_in(derivs[i][j], K, pt, embed));
          m.push_back(row);
        }
        int rk = m.empty() || cols.empty() ? 0 : K.rank(m);
        total_rank += rk;
        kernel[c] = static_cast<int>(cols.size()) - rk - (c == 0 ? 1 : 0);
      }
      so.quasi_smooth = total_rank == 3;
      std::vector<int> res;
      for (int c = 0; c < r; ++c)
        for (int n = 0; n < kernel[c]; ++n) res.push_back(c);
      if (!so.quasi_smooth || res.size() != 3 || kernel[0] > 0) {
        so.terminal = false;
        out.problems.push_back("non-quasi-smooth or non-isolated point of index " + std::to_string(r));
      } else {
        so.residues = {res[0], res[1], res[2]};
        auto a = terminal_type(r, so.residues);
        if (a)
          so.a = *a;
        else {
          so.terminal = false;
          out.problems.push_back("non-terminal point of index " + std::to_string(r));
        }
      }
      if (!radical) out.problems.push_back("non-reduced locus of index " + std::to_string(r));
      out.orbits.push_back(std::move(so));
    }
  }
}

}  // namespace

SingularScan singular_scan(const Equations& X, const WeightSystem& ws, std::uint64_t seed, std::size_t budget) {
  SingularScan out;
  int maxw = *std::max_element(ws.weights.begin(), ws.weights.end());
  for (int r = 2; r <= maxw; ++r) {
    std::vector<int> pi;
    for (int j = 0; j < kVars; ++j)
      if (ws.weights[j] % r == 0) pi.push_back(j);
    if (pi.empty()) continue;
    scan_locus(X, ws, pi, r, seed, budget, out);
  }
  return out;
}

std::vector<BasketEntry> normalised_basket(std::vector<BasketEntry> b) {
  std::map<std::pair<int, int>, int> agg;
  for (const auto& e : b) agg[{e.r, e.a}] += e.multiplicity;
  std::vector<BasketEntry> out;
  for (const auto& [key, m] : agg)
    if (m) out.push_back({key.first, key.second, m});
  return out;
}

std::vector<BasketEntry> basket_of(const SingularScan& scan) {
  std::map<std::pair<int, int>, Rational> agg;
  for (const auto& o : scan.orbits)
    if (o.terminal) agg[{o.r, o.a}] += o.count;
  std::vector<BasketEntry> out;
  for (const auto& [key, q] : agg) {
    if (q.get_den() != 1) throw std::logic_error("fractional point count in basket scan");
    out.push_back({key.first, key.second, static_cast<int>(q.get_num().get_si())});
  }
  return normalised_basket(out);
}

StratumResult stratum_singularities(const Equations& X, const WeightSystem& ws, int i, int j, std::uint64_t seed) {
  if (ws.weights[i] != ws.weights[j]) throw std::invalid_argument("stratum coordinates must have equal weight");
  StratumResult out;
  SingularScan scan;
  scan_locus(X, ws, {j, i}, ws.weights[i], seed, kDefaultBudget, scan);
  for (auto& o : scan.orbits) {
    if (!o.reduced) out.degenerate = true;
    if (o.orbit.minimal.degree() > 1) out.extension_needed.push_back(o.orbit.minimal);
    out.points.push_back(o);
  }
  return out;
}

std::map<int, FpPoly> move_to_vertex(const SingularOrbit& o, const WeightSystem& ws, int k, const PrimeField& f) {
  if (o.orbit.minimal.degree() != 1) throw std::invalid_argument("only F_p-rational points can be moved to a vertex");
  if (ws.weights[k] != o.r) throw std::invalid_argument("target vertex must have weight equal to the index");
  std::uint32_t root = f.neg(f.mul(o.orbit.minimal.c[0], f.inv(o.orbit.minimal.c[1])));
  std::array<std::uint32_t, kVars> c{};
  for (int v = 0; v < kVars; ++v) c[v] = upoly::eval(o.orbit.coords[v], root, f);
  if (!c[k]) throw std::invalid_argument("target vertex coordinate vanishes at the point");
  // Rescale into the chart x_k = 1 with mu = lambda^r, so no r-th root is needed.
  std::uint32_t mu = f.inv(c[k]);
  std::map<int, FpPoly> sub;
  for (int v : o.support) {
    if (v == k) continue;
    int e = ws.weights[v] / o.r;
    std::uint32_t coef = f.mul(f.pow(mu, static_cast<std::uint64_t>(e)), c[v]);
    Exponent xe{};
    xe[k] = static_cast<std::uint16_t>(e);
    sub[v] = FpPoly::variable(f, v) + FpPoly::monomial(f, xe, coef);
  }
  return sub;
}

std::optional<CentredMember> centre_member(const SyzygyMatrix<PrimeField>& M, const SingularOrbit& o, int prefer) {
  const auto& ws = M.space;
  int k = -1;
  for (int v : o.support)
    if (ws.weights[v] == o.r) {
      k = v;
      break;
    }
  if (prefer >= 0 && ws.weights[prefer] == o.r &&
      std::find(o.support.begin(), o.support.end(), prefer) != o.support.end())
    k = prefer;
  if (k < 0 || o.orbit.minimal.degree() != 1) return std::nullopt;
  const PrimeField& f = M.entries[0].field();
  CentredMember out;
  out.M = substitute_entries(M, move_to_vertex(o, ws, k, f));
  out.vertex = k;
  auto res = quasismooth_at_vertex(compute_pfaffians(out.M), ws, k);
  if (!res.point) return std::nullopt;
  out.point = *res.point;
  return out;
}

std::optional<QuotientPoint> type_rational_orbit(const SyzygyMatrix<PrimeField>& M, const SingularOrbit& o) {
  auto c = centre_member(M, o);
  if (!c) return std::nullopt;
  return c->point;
}

}  // namespace pfano
