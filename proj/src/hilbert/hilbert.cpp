#include <algorithm>

#include "pfano/hilbert.hpp"

namespace pfano {

HilbertData hilbert_numerator(const FamilySpec& spec) {
  HilbertData h;
  h.weights = spec.space.weights;
  h.sigma = spec.sigma;
  h.numerator.assign(spec.sigma + 1, 0);
  h.numerator[0] += 1;
  for (int d : spec.pfaffian_degrees) {
    if (d > spec.sigma) throw MalformedSpec("Pfaffian degree exceeds the adjunction number");
    h.numerator[d] -= 1;
    h.numerator[spec.sigma - d] += 1;
  }
  h.numerator[spec.sigma] -= 1;
  return h;
}

bool is_antipalindromic(const HilbertData& h) {
  const auto& n = h.numerator;
  if (static_cast<int>(n.size()) != h.sigma + 1) return false;
  for (int k = 0; k <= h.sigma; ++k)
    if (n[h.sigma - k] != -n[k]) return false;
  return true;
}

namespace {

// Synthetic division by (t - 1); returns false if the remainder is nonzero.
bool divide_by_t_minus_one(std::vector<long long>& p) {
  if (p.empty()) return true;
  std::vector<long long> q(p.size() - 1, 0);
  long long carry = 0;
  for (int k = static_cast<int>(p.size()) - 1; k >= 1; --k) {
    carry += p[k];
    q[k - 1] = carry;
  }
  carry += p[0];
  if (carry != 0) return false;
  p = std::move(q);
  return true;
}

}  // namespace

int vanishing_order_at_one(const HilbertData& h) {
  std::vector<long long> p = h.numerator;
  int order = 0;
  while (!p.empty() && std::any_of(p.begin(), p.end(), [](long long v) { return v != 0; })) {
    if (!divide_by_t_minus_one(p)) return order;
    ++order;
  }
  return order;
}

std::vector<long long> series_expand(const HilbertData& h, int n) {
  if (n < 0) throw std::invalid_argument("series length must be non-negative");
  std::vector<long long> s(n + 1, 0);
  for (int k = 0; k <= n && k < static_cast<int>(h.numerator.size()); ++k) s[k] = h.numerator[k];
  // Multiply by 1/(1 - t^a) for each weight: a running sum with stride a.
  for (int a : h.weights)
    for (int k = a; k <= n; ++k) s[k] += s[k - a];
  return s;
}

Rational anticanonical_degree(const HilbertData& h) {
  std::vector<long long> r = h.numerator;
  for (int i = 0; i < 3; ++i)
    if (!divide_by_t_minus_one(r)) throw MalformedSpec("numerator does not vanish to order 3 at t = 1");
  // N = (1-t)^3 R up to sign: (t-1)^3 = -(1-t)^3.
  long long at_one = 0;
  for (long long c : r) at_one += c;
  Rational value(static_cast<long>(-at_one));
  long long prod = 1;
  for (int a : h.weights) prod *= a;
  value /= Rational(static_cast<long>(prod));
  value.canonicalize();
  return value;
}

}  // namespace pfano
