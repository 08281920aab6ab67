// Wall-clock comparison of the OpenMP kernels against their serial reference paths.
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include <omp.h>

#include "pfano/exclusion.hpp"

using namespace pfano;

namespace {

template <class F>
double seconds(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int seeds = argc > 1 ? std::atoi(argv[1]) : 5;
  std::size_t members = argc > 2 ? static_cast<std::size_t>(std::atol(argv[2])) : 200;
  PrimeField f(10007);
  std::cout << "threads " << omp_get_max_threads() << "\n" << std::fixed << std::setprecision(3);

  for (const auto& spec : family_catalog()) {
    std::size_t bad_p = 0, bad_s = 0;
    double tp = seconds([&] { bad_p = syzygy_failures(spec, 1, members, f, true); });
    double ts = seconds([&] { bad_s = syzygy_failures(spec, 1, members, f, false); });
    std::cout << "syzygy   " << std::setw(6) << spec.id << "  serial " << ts << "s  parallel " << tp << "s  speedup "
              << ts / tp << (bad_p == bad_s ? "" : "  RESULTS DIFFER") << "\n";
  }

  for (const auto& spec : family_catalog()) {
    bool same = true;
    double tp = 0, ts = 0;
    for (int s = 1; s <= seeds; ++s) {
      CertifyOptions o;
      o.seed = static_cast<std::uint64_t>(s);
      std::vector<Certificate> par, ser;
      certify_family(spec, o);  // warm the member cache so both paths start equal
      tp += seconds([&] { par = certify_family(spec, o); });
      o.parallel = false;
      ts += seconds([&] { ser = certify_family(spec, o); });
      same = same && par == ser;
    }
    std::cout << "certify  " << std::setw(6) << spec.id << "  serial " << ts << "s  parallel " << tp << "s  speedup "
              << ts / tp << (same ? "" : "  RESULTS DIFFER") << "\n";
  }
}
