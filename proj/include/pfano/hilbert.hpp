#pragma once

#include <array>
#include <vector>

#include "pfano/pfaffian.hpp"

namespace pfano {

struct HilbertData {
  std::vector<long long> numerator;  // N(t), coefficient of t^k at index k
  std::array<int, kVars> weights{};
  int sigma = 0;
};

// N(t) = 1 - sum t^{d_i} + sum t^{sigma - d_i} - t^sigma.
HilbertData hilbert_numerator(const FamilySpec& spec);

// t^sigma N(1/t) == -N(t)
bool is_antipalindromic(const HilbertData& h);

// Order of vanishing of N at t = 1.
int vanishing_order_at_one(const HilbertData& h);

// h^0(-mK) for m = 0..n.
std::vector<long long> series_expand(const HilbertData& h, int n);

class MalformedSpec : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Leading coefficient of the pole of order 4 at t = 1.
Rational anticanonical_degree(const HilbertData& h);

}  // namespace pfano
