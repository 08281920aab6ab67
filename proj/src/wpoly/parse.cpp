#include <cctype>

#include "pfano/wpoly.hpp"

namespace pfano {

int WeightSystem::index_of(const std::string& name) const {
  for (int i = 0; i < kVars; ++i)
    if (names[i] == name) return i;
  return -1;
}

namespace {

// Recursive descent over: expr := term (('+'|'-') term)*, term := factor (('*' factor) | ('/' constant))*,
// factor := ('+'|'-') factor | base ('^' uint)?, base := number | name | '(' expr ')'.
class Parser {
 public:
  Parser(const std::string& s, const WeightSystem& ws) : s_(s), ws_(ws) {}

  QPoly run() {
    QPoly p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  QPoly expr() {
    QPoly acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  QPoly term() {
    QPoly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        QPoly d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        if (d.size() != 1 || d.terms().begin()->first != Exponent{})
          throw ParseError("division only by a nonzero constant", at);
        acc = acc.scaled(1 / d.terms().begin()->second);
      } else {
        return acc;
      }
    }
  }

  QPoly factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    QPoly b = base();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected exponent", start);
      if (pos_ - start > 4) throw ParseError("exponent too large", start);
      b = b.pow(static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return b;
  }

  QPoly base() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      QPoly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return QPoly::constant(RationalField{}, Rational(mpz_class(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int idx = ws_.index_of(name);
      if (idx < 0) throw ParseError("unknown variable '" + name + "'", start);
      return QPoly::variable(RationalField{}, idx);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  const std::string& s_;
  const WeightSystem& ws_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedPoly parse_and_grade(const std::string& text, const WeightSystem& ws) {
  ParsedPoly out;
  out.poly = Parser(text, ws).run();
  out.homogeneous = out.poly.homogeneous(ws);
  out.degree = out.poly.weighted_degree(ws);
  return out;
}

FpPoly reduce_mod_p(const QPoly& f, const PrimeField& fp) {
  FpPoly r(fp);
  for (const auto& [e, c] : f.terms()) r.add_term(e, fp.from_rational(c));
  return r;
}

}  // namespace pfano
