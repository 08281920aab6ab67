#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pfano {

using Rational = mpq_class;

// mpq_class does not reduce n/d on construction; this does.
inline Rational qq(long n, long d = 1) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

// "n/d" (or "n" when d == 1); this is the wire format for certificates.
std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& s);

bool is_prime(std::uint64_t n);

class FieldMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RationalField {
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }
  Elem from_rational(const Rational& q) const { return q; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  std::string str(const Elem& a) const { return rational_str(a); }
  std::string tag() const { return "Q"; }
  bool operator==(const RationalField&) const { return true; }
};

struct PrimeField {
  using Elem = std::uint32_t;
  std::uint32_t p = 10007;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (!is_prime(prime)) throw std::invalid_argument("modulus is not prime: " + std::to_string(prime));
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p; }
  Elem from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<Elem>(r);
  }
  Elem from_rational(const Rational& q) const;
  Elem add(Elem a, Elem b) const {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p);
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem pow(Elem a, std::uint64_t e) const {
    std::uint64_t r = 1 % p, b = a;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<Elem>(r);
  }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_p");
    return pow(a, p - 2);
  }
  bool is_zero(Elem a) const { return a == 0; }
  std::string str(Elem a) const { return std::to_string(a); }
  std::string tag() const { return "F" + std::to_string(p); }
  bool operator==(const PrimeField& o) const { return p == o.p; }
};

}  // namespace pfano
