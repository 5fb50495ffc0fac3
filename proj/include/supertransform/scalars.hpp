#pragma once
// Exact scalar ring Q(i)[sqrt2, pi^{1/2}, pi^{-1/2}] and the float backend.
//
// An ExactScalar is a finite sum  sum_t q_t * pi^{b_t/2} * sqrt2^{eps_t}  with
// q_t a Gaussian rational. The monomials pi^{b/2} sqrt2^eps are linearly
// independent over Q(i), so the sorted term list is a canonical form and
// equality is structural.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace supertransform {

using Rational = mpq_class;
using FloatScalar = std::complex<double>;

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rational_pow(const Rational& base, int e) {
  Rational result = 1;
  if (e < 0) {
    if (base == 0) throw DomainError("division by zero");
    Rational inv = 1 / base;
    for (int k = 0; k < -e; ++k) result *= inv;
  } else {
    for (int k = 0; k < e; ++k) result *= base;
  }
  return result;
}

inline Rational factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

inline Rational binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

/// Gaussian rational re + im*i.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  ComplexRational conj() const { return {re, -im}; }

  ComplexRational operator-() const { return {-re, -im}; }
  ComplexRational operator+(const ComplexRational& o) const { return {re + o.re, im + o.im}; }
  ComplexRational operator-(const ComplexRational& o) const { return {re - o.re, im - o.im}; }
  ComplexRational operator*(const ComplexRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  ComplexRational inverse() const {
    Rational norm = re * re + im * im;
    if (norm == 0) throw DomainError("division by zero");
    return {re / norm, -im / norm};
  }
  bool operator==(const ComplexRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const ComplexRational& o) const { return !(*this == o); }
};

class ExactScalar {
 public:
  struct Term {
    int half_pi_power = 0;  // b in pi^{b/2}
    int sqrt2 = 0;          // eps in {0,1}
    ComplexRational q;
  };

  ExactScalar() = default;
  ExactScalar(int v) : ExactScalar(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(long v) : ExactScalar(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(const Rational& v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) terms_.push_back({0, 0, ComplexRational(v)});
  }
  ExactScalar(const ComplexRational& v) {  // NOLINT(google-explicit-constructor)
    if (!v.is_zero()) terms_.push_back({0, 0, v});
  }

  /// q * pi^{b/2} * sqrt2^eps, with eps folded if >= 2.
  static ExactScalar monomial(ComplexRational q, int half_pi_power, int sqrt2_power) {
    ExactScalar s;
    if (q.is_zero()) return s;
    // fold 2^{a/2}
    int e = sqrt2_power;
    int whole = (e >= 0) ? e / 2 : -((-e + 1) / 2);
    int eps = e - 2 * whole;
    q = q * ComplexRational(rational_pow(Rational(2), whole));
    s.terms_.push_back({half_pi_power, eps, std::move(q)});
    return s;
  }
  static ExactScalar i() { return ExactScalar(ComplexRational(0, 1)); }
  static ExactScalar sqrt2() { return monomial(ComplexRational(1), 0, 1); }
  /// pi^{b/2}
  static ExactScalar pi_power_half(int b) { return monomial(ComplexRational(1), b, 0); }
  /// (2 pi)^{h/2}
  static ExactScalar two_pi_power_half(int h) { return monomial(ComplexRational(1), h, h); }
  /// i^k
  static ExactScalar i_power(int k) {
    int r = ((k % 4) + 4) % 4;
    switch (r) {
      case 0: return ExactScalar(1);
      case 1: return i();
      case 2: return ExactScalar(-1);
      default: return -i();
    }
  }

  /// Gamma(h/2) for h >= 1; Gamma at half-integers lands in Q*sqrt(pi).
  static ExactScalar gamma_half(int h) {
    if (h <= 0) throw DomainError("Gamma argument <= 0");
    if (h % 2 == 0) return ExactScalar(factorial(h / 2 - 1));
    // Gamma(1/2 + k) = (2k)! / (4^k k!) sqrt(pi)
    int k = (h - 1) / 2;
    Rational c = factorial(2 * k) / (rational_pow(Rational(4), k) * factorial(k));
    return monomial(ComplexRational(c), 1, 0);
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].half_pi_power == 0 &&
                              terms_[0].sqrt2 == 0 && terms_[0].q.im == 0);
  }
  Rational as_rational() const {
    if (!is_rational()) throw DomainError("scalar is not rational");
    return terms_.empty() ? Rational(0) : terms_[0].q.re;
  }
  bool is_gaussian_rational() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].half_pi_power == 0 && terms_[0].sqrt2 == 0);
  }
  ComplexRational as_gaussian_rational() const {
    if (!is_gaussian_rational()) throw DomainError("scalar is not a Gaussian rational");
    return terms_.empty() ? ComplexRational() : terms_[0].q;
  }

  ExactScalar conj() const {
    ExactScalar r = *this;
    for (auto& t : r.terms_) t.q = t.q.conj();
    return r;
  }

  ExactScalar operator-() const {
    ExactScalar r = *this;
    for (auto& t : r.terms_) t.q = -t.q;
    return r;
  }

  ExactScalar& operator+=(const ExactScalar& o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && key_less(*a, *b))) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || key_less(*b, *a)) {
        out.push_back(*b++);
      } else {
        ComplexRational s = a->q + b->q;
        if (!s.is_zero()) out.push_back({a->half_pi_power, a->sqrt2, std::move(s)});
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }
  ExactScalar& operator-=(const ExactScalar& o) { return *this += -o; }
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }

  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    ExactScalar r;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
      return product_term(a.terms_[0], b.terms_[0]);
    }
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) r += product_term(ta, tb);
    return r;
  }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

  /// Inverse of a single-term scalar.
  ExactScalar inverse() const {
    if (terms_.empty()) throw DomainError("division by zero");
    if (terms_.size() != 1) throw DomainError("non-monomial scalar not invertible");
    const Term& t = terms_[0];
    ComplexRational q = t.q.inverse();
    if (t.sqrt2 == 1) q = q * ComplexRational(make_rational(1, 2));
    ExactScalar r;
    r.terms_.push_back({-t.half_pi_power, t.sqrt2, std::move(q)});
    return r;
  }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    return a * b.inverse();
  }

  bool operator==(const ExactScalar& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      const Term& a = terms_[k];
      const Term& b = o.terms_[k];
      if (a.half_pi_power != b.half_pi_power || a.sqrt2 != b.sqrt2 || a.q != b.q) return false;
    }
    return true;
  }
  bool operator!=(const ExactScalar& o) const { return !(*this == o); }

  FloatScalar to_float() const {
    FloatScalar acc{0.0, 0.0};
    for (const auto& t : terms_) {
      double mag = std::pow(std::numbers::pi, t.half_pi_power / 2.0);
      if (t.sqrt2) mag *= std::numbers::sqrt2;
      acc += FloatScalar(t.q.re.get_d(), t.q.im.get_d()) * mag;
    }
    return acc;
  }

  /// Text form, e.g. "3/2*sqrt2*pi^(1/2)" or "(1+i) + 2*pi".
  std::string to_string() const;

  /// True when the rendering needs parentheses to act as a factor.
  bool needs_parens() const {
    if (terms_.size() > 1) return true;
    return terms_.size() == 1 && terms_[0].q.re != 0 && terms_[0].q.im != 0;
  }

 private:
  static bool key_less(const Term& a, const Term& b) {
    if (a.half_pi_power != b.half_pi_power) return a.half_pi_power < b.half_pi_power;
    return a.sqrt2 < b.sqrt2;
  }
  static ExactScalar product_term(const Term& a, const Term& b) {
    return monomial(a.q * b.q, a.half_pi_power + b.half_pi_power, a.sqrt2 + b.sqrt2);
  }

  std::vector<Term> terms_;
};

namespace detail {

inline std::string complex_rational_body(const ComplexRational& q, bool& negative) {
  negative = false;
  if (q.im == 0) {
    negative = q.re < 0;
    return rational_to_string(negative ? Rational(-q.re) : q.re);
  }
  if (q.re == 0) {
    negative = q.im < 0;
    Rational a = negative ? Rational(-q.im) : q.im;
    return a == 1 ? std::string("i") : rational_to_string(a) + "*i";
  }
  std::string s = "(" + rational_to_string(q.re);
  if (q.im < 0) {
    Rational a = -q.im;
    s += "-" + (a == 1 ? std::string("i") : rational_to_string(a) + "*i");
  } else {
    s += "+" + (q.im == 1 ? std::string("i") : rational_to_string(q.im) + "*i");
  }
  return s + ")";
}

inline std::string pi_factor(int b) {
  if (b == 0) return {};
  if (b == 2) return "pi";
  if (b % 2 == 0 && b > 0) return "pi^" + std::to_string(b / 2);
  if (b % 2 == 0) return "pi^(" + std::to_string(b / 2) + ")";
  return "pi^(" + std::to_string(b) + "/2)";
}

}  // namespace detail

inline std::string ExactScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    bool negative = false;
    std::string body = detail::complex_rational_body(t.q, negative);
    std::vector<std::string> factors;
    if (t.sqrt2) factors.emplace_back("sqrt2");
    std::string pf = detail::pi_factor(t.half_pi_power);
    if (!pf.empty()) factors.push_back(pf);
    std::string term;
    if (body == "1" && !factors.empty()) {
      term.clear();
    } else {
      term = body;
    }
    for (const auto& f : factors) {
      if (!term.empty()) term += "*";
      term += f;
    }
    if (first) {
      out += negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.to_string(); }

/// Uniform operations over the coefficient rings used by the polynomial templates.
template <class C>
struct CoeffOps;

template <>
struct CoeffOps<ExactScalar> {
  static ExactScalar from_rational(const Rational& q) { return ExactScalar(q); }
  static ExactScalar from_exact(const ExactScalar& s) { return s; }
  static bool is_zero(const ExactScalar& c) { return c.is_zero(); }
  static ExactScalar conj(const ExactScalar& c) { return c.conj(); }
  static ExactScalar i() { return ExactScalar::i(); }
};

template <>
struct CoeffOps<FloatScalar> {
  static FloatScalar from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
  static FloatScalar from_exact(const ExactScalar& s) { return s.to_float(); }
  static bool is_zero(const FloatScalar& c) { return c == FloatScalar(0.0, 0.0); }
  static FloatScalar conj(const FloatScalar& c) { return std::conj(c); }
  static FloatScalar i() { return {0.0, 1.0}; }
};

inline FloatScalar to_float(const ExactScalar& s) { return s.to_float(); }

}  // namespace supertransform
