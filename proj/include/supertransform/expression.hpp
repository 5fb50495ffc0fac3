#pragma once
// Expression language for the command line front end.
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (('*' | '/' | juxtaposition) factor)*
//   factor := atom ('^' exponent)?
//   atom   := number | i | pi | sqrt2 | sqrtpi | x<k> | y<k> | q<k> | G | '(' expr ')'
//
// Fermionic juxtaposition keeps the written order ("q2q1" = -q1q2). G is the
// Gaussian exp(x^2/2); at most one factor of it per term.

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

#include "supertransform/scalars.hpp"
#include "supertransform/superalg.hpp"

namespace supertransform {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), position_(pos) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class ExpressionParser {
 public:
  using Poly = SuperPolynomial<ExactScalar>;
  using Value = GaussianFunction<ExactScalar>;

  ExpressionParser(std::string src, UniverseRef u) : src_(std::move(src)), u_(std::move(u)) {}

  Value parse() {
    Value v = expr();
    skip();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < src_.size() && src_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool at_atom_start() {
    skip();
    if (pos_ >= src_.size()) return false;
    char c = src_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '.';
  }

  Value zero() const { return {Poly(u_), false}; }
  Value constant(const ExactScalar& c) const { return {Poly::constant(u_, c), false}; }

  static Value add(const Value& a, const Value& b) {
    if (a.poly.is_zero()) return b;
    if (b.poly.is_zero()) return a;
    if (a.envelope != b.envelope) throw DomainError("mixed Gaussian and polynomial terms");
    return {a.poly + b.poly, a.envelope};
  }
  static Value multiply(const Value& a, const Value& b) {
    if (a.envelope && b.envelope) throw DomainError("product of two Gaussian envelopes");
    return {a.poly * b.poly, a.envelope || b.envelope};
  }
  static bool is_scalar(const Value& v) {
    if (v.envelope) return false;
    for (const auto& [mono, c] : v.poly.terms())
      if (mono.degree() != 0) return false;
    return true;
  }

  Value expr() {
    Value acc = zero();
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    Value t = term();
    acc = add(acc, negate ? Value{ExactScalar(-1) * t.poly, t.envelope} : t);
    while (true) {
      if (accept('+')) {
        acc = add(acc, term());
      } else if (accept('-')) {
        Value t2 = term();
        acc = add(acc, {ExactScalar(-1) * t2.poly, t2.envelope});
      } else {
        break;
      }
    }
    return acc;
  }

  Value term() {
    Value acc = factor();
    while (true) {
      if (accept('*')) {
        acc = multiply(acc, factor());
      } else if (accept('/')) {
        std::size_t at = pos_;
        Value d = factor();
        if (!is_scalar(d) || d.poly.is_zero()) throw ParseError("division by a non-scalar", at);
        acc = {d.poly.constant_term().inverse() * acc.poly, acc.envelope};
      } else if (at_atom_start()) {
        acc = multiply(acc, factor());
      } else {
        break;
      }
    }
    return acc;
  }

  /// Signed rational exponent: int, or '(' ['-'] int ['/' int] ')'.
  Rational exponent() {
    skip();
    if (accept('(')) {
      bool neg = accept('-');
      Rational num = integer();
      Rational e = num;
      if (accept('/')) {
        Rational den = integer();
        if (den == 0) fail("zero denominator");
        e = num / den;
      }
      if (!accept(')')) fail("expected ')'");
      return neg ? Rational(-e) : e;
    }
    bool neg = accept('-');
    Rational e = integer();
    return neg ? Rational(-e) : e;
  }

  Rational integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Rational(mpz_class(src_.substr(start, pos_ - start), 10));
  }

  /// digits[.digits][e[+-]digits] as an exact rational.
  Rational number() {
    std::size_t start = pos_;
    std::string digits;
    int scale = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) digits += src_[pos_++];
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits += src_[pos_++];
        --scale;
      }
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    if (pos_ + 1 < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E') &&
        (std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])) || src_[pos_ + 1] == '-' || src_[pos_ + 1] == '+')) {
      ++pos_;
      bool neg = src_[pos_] == '-';
      if (src_[pos_] == '-' || src_[pos_] == '+') ++pos_;
      std::size_t es = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (es == pos_) throw ParseError("malformed exponent", es);
      int e = std::stoi(src_.substr(es, pos_ - es));
      scale += neg ? -e : e;
    }
    Rational q{mpz_class(digits, 10)};
    return q * rational_pow(Rational(10), scale);
  }

  Value factor() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      Value v = constant(ExactScalar(number()));
      return power(v, start, Kind::Scalar);
    }
    if (accept('(')) {
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return power(v, start, is_scalar(v) ? Kind::Scalar : Kind::Other);
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    // identifier: letters, then digits (so "q1q2" splits into q1 and q2)
    std::size_t p = pos_;
    while (p < src_.size() && std::isalpha(static_cast<unsigned char>(src_[p]))) ++p;
    std::string word = src_.substr(pos_, p - pos_);
    // sqrt2 carries its digit
    if (word == "sqrt" && p < src_.size() && src_[p] == '2') {
      word = "sqrt2";
      ++p;
    }
    std::size_t q = p;
    while (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) ++q;
    std::string index = src_.substr(p, q - p);

    if (index.empty()) {
      pos_ = p;
      if (word == "i") return power(constant(ExactScalar::i()), start, Kind::Scalar);
      if (word == "pi") return power(constant(ExactScalar::pi_power_half(2)), start, Kind::Pi);
      if (word == "sqrtpi") return power(constant(ExactScalar::pi_power_half(1)), start, Kind::SqrtPi);
      if (word == "sqrt2") return power(constant(ExactScalar::sqrt2()), start, Kind::Scalar);
      if (word == "G") return power(Value{Poly::one(u_), true}, start, Kind::Gaussian);
      throw ParseError("unknown symbol '" + word + "'", start);
    }
    pos_ = q;
    const long k = std::stol(index);
    if (word == "x" || word == "y") {
      if (k < 1 || k > u_->m()) throw ParseError("unknown symbol '" + word + index + "'", start);
      return power(Value{Poly::bosonic_variable(u_, static_cast<int>(k - 1)), false}, start, Kind::Other);
    }
    if (word == "q") {
      if (k < 1 || k > u_->fermionic_count()) throw ParseError("unknown symbol '" + word + index + "'", start);
      return power(Value{Poly::fermionic_variable(u_, static_cast<int>(k - 1)), false}, start, Kind::Fermion);
    }
    throw ParseError("unknown symbol '" + word + index + "'", start);
  }

  enum class Kind { Scalar, Pi, SqrtPi, Fermion, Gaussian, Other };

  Value power(const Value& base, std::size_t start, Kind kind) {
    if (!accept('^')) return base;
    std::size_t at = pos_;
    Rational e = exponent();
    if (kind == Kind::Pi || kind == Kind::SqrtPi) {
      Rational half = kind == Kind::Pi ? Rational(2 * e) : e;
      if (half.get_den() != 1) throw ParseError("pi exponent must be a multiple of 1/2", at);
      return constant(ExactScalar::pi_power_half(static_cast<int>(half.get_num().get_si())));
    }
    if (e.get_den() != 1) throw ParseError("non-integer exponent", at);
    long n = e.get_num().get_si();
    if (kind == Kind::Fermion && n >= 2) throw ParseError("fermionic square", start);
    if (kind == Kind::Gaussian && n != 1 && n != 0) throw ParseError("powers of G are outside the Gaussian class", at);
    if (n == 0) return constant(ExactScalar(1));
    if (n < 0) {
      if (kind != Kind::Scalar || base.poly.is_zero()) throw ParseError("negative power of a non-scalar", at);
      ExactScalar inv = base.poly.constant_term().inverse(), r(1);
      for (long s = 0; s < -n; ++s) r = r * inv;
      return constant(r);
    }
    if (base.envelope) return base;
    return {base.poly.pow(static_cast<int>(n)), false};
  }

  std::string src_;
  UniverseRef u_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression over u; G marks the Gaussian envelope.
inline GaussianFunction<ExactScalar> parse_expression(const std::string& src, const UniverseRef& u) {
  return detail::ExpressionParser(src, u).parse();
}

}  // namespace supertransform
