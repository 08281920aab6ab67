#include "pfano/field.hpp"

#include <cctype>

namespace pfano {

std::string rational_str(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::string n = s.substr(0, slash);
  std::string d = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  if (!valid_int(n) || !valid_int(d)) throw std::invalid_argument("not a rational: " + s);
  mpz_class num(n), den(d);
  if (den == 0) throw std::invalid_argument("zero denominator: " + s);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::Elem PrimeField::from_rational(const Rational& q) const {
  mpz_class pp(static_cast<unsigned long>(p));
  mpz_class n = q.get_num() % pp;
  mpz_class d = q.get_den() % pp;
  if (n < 0) n += pp;
  if (d == 0) throw std::domain_error("denominator divisible by the characteristic");
  return mul(static_cast<Elem>(n.get_ui()), inv(static_cast<Elem>(d.get_ui())));
}

}  // namespace pfano
