#include "pfano/pfaffian.hpp"

namespace pfano {

std::vector<Exponent> monomials_of_degree(const WeightSystem& ws, int d, std::uint8_t mask) {
  std::vector<Exponent> out;
  if (d < 0) return out;
  Exponent e{};
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == kVars) {
      if (left == 0) out.push_back(e);
      return;
    }
    if (!(mask >> i & 1)) {
      rec(i + 1, left);
      return;
    }
    for (int k = 0; k * ws.weights[i] <= left; ++k) {
      e[i] = static_cast<std::uint16_t>(k);
      rec(i + 1, left - k * ws.weights[i]);
    }
    e[i] = 0;
  };
  rec(0, d);
  return out;
}

FpPoly random_homogeneous(const PrimeField& f, const WeightSystem& ws, int d, std::mt19937_64& rng,
                          std::uint8_t mask) {
  FpPoly p(f);
  for (const auto& e : monomials_of_degree(ws, d, mask)) p.add_term(e, static_cast<std::uint32_t>(rng() % f.p));
  return p;
}

FpMatrix sample_member(const FamilySpec& spec, std::uint64_t seed, const PrimeField& field) {
  std::mt19937_64 rng(seed);
  FpMatrix M;
  M.space = spec.space;
  M.entry_degrees = spec.entry_degrees;
  for (int k = 0; k < kEntries; ++k) M.entries[k] = random_homogeneous(field, spec.space, spec.entry_degrees[k], rng);
  return M;
}

std::size_t syzygy_failures(const FamilySpec& spec, std::uint64_t first, std::size_t count, const PrimeField& field,
                            bool parallel) {
  const long n = static_cast<long>(count);
  long bad = 0;
  auto fails = [&](long i) {
    FpMatrix M = sample_member(spec, first + static_cast<std::uint64_t>(i), field);
    return syzygy_identity_check(M, compute_pfaffians(M)) ? 0L : 1L;
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic) reduction(+ : bad)
    for (long i = 0; i < n; ++i) bad += fails(i);
  } else {
    for (long i = 0; i < n; ++i) bad += fails(i);
  }
  return static_cast<std::size_t>(bad);
}

}  // namespace pfano
