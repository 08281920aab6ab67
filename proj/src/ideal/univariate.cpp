#include <algorithm>

#include "pfano/ideal.hpp"

namespace pfano::upoly {

void trim(UPoly& a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

UPoly add(const UPoly& a, const UPoly& b, const PrimeField& f) {
  UPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = f.add(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
  trim(r);
  return r;
}

UPoly sub(const UPoly& a, const UPoly& b, const PrimeField& f) {
  UPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = f.sub(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
  trim(r);
  return r;
}

UPoly mul(const UPoly& a, const UPoly& b, const PrimeField& f) {
  if (a.is_zero() || b.is_zero()) return {};
  UPoly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = f.add(r.c[i + j], f.mul(a.c[i], b.c[j]));
  trim(r);
  return r;
}

void divmod(const UPoly& a, const UPoly& b, const PrimeField& f, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  r = a;
  q.c.assign(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 0, 0);
  auto inv = f.inv(b.c.back());
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    auto coef = f.mul(r.c.back(), inv);
    q.c[shift] = coef;
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[shift + j] = f.sub(r.c[shift + j], f.mul(coef, b.c[j]));
    trim(r);
  }
  trim(q);
}

UPoly mod(const UPoly& a, const UPoly& b, const PrimeField& f) {
  UPoly q, r;
  divmod(a, b, f, q, r);
  return r;
}

UPoly monic(const UPoly& a, const PrimeField& f) {
  if (a.is_zero()) return a;
  UPoly r = a;
  auto inv = f.inv(a.c.back());
  for (auto& v : r.c) v = f.mul(v, inv);
  return r;
}

UPoly gcd(UPoly a, UPoly b, const PrimeField& f) {
  while (!b.is_zero()) {
    UPoly r = mod(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, f);
}

UPoly derivative(const UPoly& a, const PrimeField& f) {
  UPoly r;
  for (std::size_t i = 1; i < a.c.size(); ++i) r.c.push_back(f.mul(a.c[i], f.from_int(static_cast<long long>(i))));
  trim(r);
  return r;
}

UPoly powmod(const UPoly& base, std::uint64_t e, const UPoly& m, const PrimeField& f) {
  UPoly result{{f.one()}};
  result = mod(result, m, f);
  UPoly b = mod(base, m, f);
  while (e) {
    if (e & 1) result = mod(mul(result, b, f), m, f);
    e >>= 1;
    if (e) b = mod(mul(b, b, f), m, f);
  }
  return result;
}

UPoly squarefree_part(const UPoly& a, const PrimeField& f) {
  // Degrees stay far below p here, so a' = 0 only for constants.
  if (a.degree() <= 0) return monic(a, f);
  UPoly g = gcd(a, derivative(a, f), f);
  UPoly q, r;
  divmod(a, g, f, q, r);
  return monic(q, f);
}

std::uint32_t eval(const UPoly& a, std::uint32_t x, const PrimeField& f) {
  std::uint32_t acc = 0;
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
  return acc;
}

namespace {

// Equal-degree splitting (Cantor-Zassenhaus, odd p) of a product of distinct irreducibles of degree d.
void split_equal_degree(const UPoly& a, int d, const PrimeField& f, std::mt19937_64& rng, std::vector<UPoly>& out) {
  if (a.degree() == d) {
    out.push_back(monic(a, f));
    return;
  }
  std::uint64_t qd = 1;
  for (int i = 0; i < d; ++i) qd *= f.p;
  for (;;) {
    UPoly t;
    for (int i = 0; i < a.degree(); ++i) t.c.push_back(static_cast<std::uint32_t>(rng() % f.p));
    trim(t);
    if (t.degree() <= 0) continue;
    UPoly h = powmod(t, (qd - 1) / 2, a, f);
    h = sub(h, UPoly{{f.one()}}, f);
    UPoly g = gcd(a, h, f);
    if (g.degree() > 0 && g.degree() < a.degree()) {
      UPoly q, r;
      divmod(a, g, f, q, r);
      split_equal_degree(g, d, f, rng, out);
      split_equal_degree(q, d, f, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<UPoly> factor_squarefree(const UPoly& a0, const PrimeField& f, std::mt19937_64& rng) {
  if (f.p == 2) throw std::invalid_argument("factorization needs an odd characteristic");
  std::vector<UPoly> out;
  UPoly a = monic(a0, f);
  if (a.degree() <= 0) return out;
  UPoly x{{0, f.one()}};
  UPoly xq = x;  // x^(p^d) mod a
  int d = 0;
  while (a.degree() > 0 && 2 * (d + 1) <= a.degree()) {
    ++d;
    xq = powmod(xq, f.p, a, f);
    UPoly g = gcd(a, sub(xq, x, f), f);
    if (g.degree() > 0) {
      split_equal_degree(g, d, f, rng, out);
      UPoly q, r;
      divmod(a, g, f, q, r);
      a = q;
      xq = mod(xq, a, f);
    }
  }
  if (a.degree() > 0) out.push_back(monic(a, f));
  std::sort(out.begin(), out.end(), [](const UPoly& l, const UPoly& r) {
    if (l.c.size() != r.c.size()) return l.c.size() < r.c.size();
    return l.c < r.c;
  });
  return out;
}

}  // namespace pfano::upoly
