#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfano/field.hpp"

namespace pfano {

constexpr int kVars = 7;
using Exponent = std::array<std::uint16_t, kVars>;

struct WeightSystem {
  std::array<int, kVars> weights{};
  std::array<std::string, kVars> names{};

  int index_of(const std::string& name) const;  // -1 when absent
  int degree(const Exponent& e) const {
    int d = 0;
    for (int i = 0; i < kVars; ++i) d += e[i] * weights[i];
    return d;
  }
};

// 1/den (num_0, ..., num_6); the centre coordinate carries numerator 0.
struct FractionalWeight {
  std::array<int, kVars> num{};
  int den = 1;

  Rational weight_of(const Exponent& e) const {
    long long s = 0;
    for (int i = 0; i < kVars; ++i) s += static_cast<long long>(e[i]) * num[i];
    Rational q(static_cast<long>(s), den);
    q.canonicalize();
    return q;
  }
};

inline int total_degree(const Exponent& e) {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

inline Exponent unit_exponent(int i) {
  Exponent e{};
  e[i] = 1;
  return e;
}

inline bool divides(const Exponent& a, const Exponent& b) {
  for (int i = 0; i < kVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

template <class F>
class Poly {
 public:
  using Elem = typename F::Elem;
  using Terms = std::map<Exponent, Elem>;

  Poly() = default;
  explicit Poly(F field) : field_(std::move(field)) {}

  static Poly constant(const F& f, const Elem& c) {
    Poly p(f);
    if (!f.is_zero(c)) p.terms_[Exponent{}] = c;
    return p;
  }
  static Poly variable(const F& f, int i) { return monomial(f, unit_exponent(i), f.one()); }
  static Poly monomial(const F& f, const Exponent& e, const Elem& c) {
    Poly p(f);
    if (!f.is_zero(c)) p.terms_[e] = c;
    return p;
  }

  const F& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Elem coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  void add_term(const Exponent& e, const Elem& c) {
    if (field_.is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
      it->second = field_.add(it->second, c);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }
  void set_term(const Exponent& e, const Elem& c) {
    if (field_.is_zero(c))
      terms_.erase(e);
    else
      terms_[e] = c;
  }

  Poly operator+(const Poly& o) const {
    check(o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  Poly operator-(const Poly& o) const {
    check(o);
    Poly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, field_.neg(c));
    return r;
  }
  Poly operator-() const {
    Poly r(field_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, field_.neg(c));
    return r;
  }
  Poly operator*(const Poly& o) const {
    check(o);
    Poly r(field_);
    for (const auto& [ea, ca] : terms_)
      for (const auto& [eb, cb] : o.terms_) {
        Exponent e;
        for (int i = 0; i < kVars; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
        r.add_term(e, field_.mul(ca, cb));
      }
    return r;
  }
  Poly scaled(const Elem& c) const {
    Poly r(field_);
    if (field_.is_zero(c)) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, field_.mul(v, c));
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(unsigned k) const {
    Poly r = constant(field_, field_.one());
    Poly b = *this;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }

  bool operator==(const Poly& o) const { return field_ == o.field_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Weighted degree if homogeneous; nullopt for a non-homogeneous poly.
  // The zero polynomial is homogeneous of every degree: reported as homogeneous with no degree.
  bool homogeneous(const WeightSystem& ws) const {
    if (terms_.empty()) return true;
    int d = ws.degree(terms_.begin()->first);
    for (const auto& kv : terms_)
      if (ws.degree(kv.first) != d) return false;
    return true;
  }
  std::optional<int> weighted_degree(const WeightSystem& ws) const {
    if (terms_.empty() || !homogeneous(ws)) return std::nullopt;
    return ws.degree(terms_.begin()->first);
  }

  std::string to_string(const WeightSystem& ws) const;

 private:
  void check(const Poly& o) const {
    if (!(field_ == o.field_)) throw FieldMismatch("polynomials over different fields");
  }

  F field_{};
  Terms terms_;
};

using QPoly = Poly<RationalField>;
using FpPoly = Poly<PrimeField>;

template <class F>
std::string Poly<F>::to_string(const WeightSystem& ws) const {
  if (terms_.empty()) return "0";
  std::string out;
  // Descending order reads more naturally.
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string cs = field_.str(c);
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    if (!first) out += negative ? " - " : " + ";
    else if (negative) out += "-";
    first = false;
    std::string mono;
    for (int i = 0; i < kVars; ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ws.names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      out += cs;
    else if (cs == "1")
      out += mono;
    else
      out += cs + "*" + mono;
  }
  return out;
}

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct ParsedPoly {
  QPoly poly;
  bool homogeneous = true;
  std::optional<int> degree;  // empty for the zero polynomial or a mixed-degree one
};

ParsedPoly parse_and_grade(const std::string& text, const WeightSystem& ws);

FpPoly reduce_mod_p(const QPoly& f, const PrimeField& fp);

template <class F>
Poly<F> differentiate(const Poly<F>& f, int i) {
  Poly<F> r(f.field());
  for (const auto& [e, c] : f.terms()) {
    if (e[i] == 0) continue;
    Exponent d = e;
    d[i] -= 1;
    r.add_term(d, f.field().mul(c, f.field().from_int(e[i])));
  }
  return r;
}

class GradingViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Simultaneous substitution x_i -> assignments[i]. With a weight system supplied the
// substitution is strict: every image must be homogeneous of the replaced variable's weight.
template <class F>
Poly<F> substitute(const Poly<F>& f, const std::map<int, Poly<F>>& assignments,
                   const WeightSystem* strict = nullptr) {
  const F& fld = f.field();
  if (strict) {
    for (const auto& [i, g] : assignments) {
      auto d = g.weighted_degree(*strict);
      if (!g.is_zero() && (!d || *d != strict->weights[i]))
        throw GradingViolation("substitution for " + strict->names[i] + " breaks the grading");
    }
  }
  std::array<std::vector<Poly<F>>, kVars> powers;  // powers[i][k] = image^k
  auto power_of = [&](int i, int k) -> const Poly<F>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly<F>::constant(fld, fld.one()));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * assignments.at(i));
    return cache[k];
  };
  Poly<F> r(fld);
  for (const auto& [e, c] : f.terms()) {
    Exponent rest = e;
    Poly<F> term = Poly<F>::constant(fld, c);
    for (const auto& kv : assignments) {
      int i = kv.first;
      if (rest[i] == 0) continue;
      term = term * power_of(i, rest[i]);
      rest[i] = 0;
    }
    term = term * Poly<F>::monomial(fld, rest, fld.one());
    r += term;
  }
  return r;
}

// Sum of the monomials of minimal w-weight, together with that weight.
template <class F>
std::pair<Poly<F>, Rational> lowest_weight_part(const Poly<F>& f, const FractionalWeight& w) {
  if (f.is_zero()) throw std::invalid_argument("lowest_weight_part of the zero polynomial");
  Rational best;
  bool have = false;
  for (const auto& kv : f.terms()) {
    Rational q = w.weight_of(kv.first);
    if (!have || q < best) {
      best = q;
      have = true;
    }
  }
  Poly<F> r(f.field());
  for (const auto& [e, c] : f.terms())
    if (w.weight_of(e) == best) r.set_term(e, c);
  return {r, best};
}

// Evaluate with coefficients mapped into a (possibly larger) ring K through embed.
template <class F, class K, class Embed>
typename K::Elem evaluate_in(const Poly<F>& f, const K& ring,
                             const std::array<typename K::Elem, kVars>& point, Embed embed) {
  std::array<std::vector<typename K::Elem>, kVars> pw;
  auto elem = ring.zero();
  for (const auto& [e, c] : f.terms()) {
    auto t = embed(c);
    for (int i = 0; i < kVars; ++i) {
      if (!e[i]) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(ring.one());
      while (static_cast<int>(cache.size()) <= e[i]) cache.push_back(ring.mul(cache.back(), point[i]));
      t = ring.mul(t, cache[e[i]]);
    }
    elem = ring.add(elem, t);
  }
  return elem;
}

template <class F>
typename F::Elem evaluate(const Poly<F>& f, const std::vector<typename F::Elem>& point) {
  if (point.size() != kVars) throw std::invalid_argument("evaluation point must have 7 entries");
  std::array<typename F::Elem, kVars> pt;
  for (int i = 0; i < kVars; ++i) pt[i] = point[i];
  return evaluate_in(f, f.field(), pt, [](const auto& c) { return c; });
}

}  // namespace pfano
