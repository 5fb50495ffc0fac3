#pragma once
// Fundamental solution of the super Laplace operator,
//   f = pi^n sum_k 2^{2k} k!/(n-k)! nu_{2k+2} x'^{2n-2k},
// with nu_{2l} the classical fundamental solutions of Delta^l in R^m
// (Delta nu_2 = delta, Delta nu_{2l+2} = nu_{2l}, homogeneous parts dropped).

#include <cmath>
#include <iterator>
#include <map>
#include <utility>
#include <vector>

#include "supertransform/operators.hpp"
#include "supertransform/scalars.hpp"
#include "supertransform/superalg.hpp"

namespace supertransform {

/// sum c * r^alpha * log(r)^s on r > 0.
class RadialFunction {
 public:
  using Key = std::pair<int, int>;  // (alpha, s)

  RadialFunction() = default;
  static RadialFunction term(const ExactScalar& c, int alpha, int s = 0) {
    RadialFunction f;
    f.add(alpha, s, c);
    return f;
  }

  const std::map<Key, ExactScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  ExactScalar coefficient(int alpha, int s = 0) const {
    auto it = terms_.find({alpha, s});
    return it == terms_.end() ? ExactScalar() : it->second;
  }

  void add(int alpha, int s, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(Key{alpha, s}, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  RadialFunction& operator+=(const RadialFunction& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
  }
  RadialFunction& operator-=(const RadialFunction& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
    return *this;
  }
  friend RadialFunction operator+(RadialFunction a, const RadialFunction& b) { return a += b; }
  friend RadialFunction operator-(RadialFunction a, const RadialFunction& b) { return a -= b; }
  friend RadialFunction operator*(const ExactScalar& s, const RadialFunction& f) {
    RadialFunction r;
    for (const auto& [k, c] : f.terms_) r.add(k.first, k.second, s * c);
    return r;
  }
  bool operator==(const RadialFunction& o) const { return terms_ == o.terms_; }
  bool operator!=(const RadialFunction& o) const { return !(*this == o); }

  double evaluate(double r) const {
    double v = 0;
    for (const auto& [k, c] : terms_) v += c.to_float().real() * std::pow(r, k.first) * std::pow(std::log(r), k.second);
    return v;
  }

 private:
  std::map<Key, ExactScalar> terms_;
};

/// Delta(r^a log^s r) = a(a+m-2) r^{a-2} log^s + s(2a+m-2) r^{a-2} log^{s-1} + s(s-1) r^{a-2} log^{s-2}
inline RadialFunction radial_laplace(const RadialFunction& f, int m) {
  if (m < 1) throw DomainError("radial Laplacian needs m >= 1");
  RadialFunction out;
  for (const auto& [key, c] : f.terms()) {
    const auto [a, s] = key;
    out.add(a - 2, s, ExactScalar(a * (a + m - 2)) * c);
    if (s >= 1) out.add(a - 2, s - 1, ExactScalar(s * (2 * a + m - 2)) * c);
    if (s >= 2) out.add(a - 2, s - 2, ExactScalar(s * (s - 1)) * c);
  }
  return out;
}

/// A particular solution u of Delta u = g inside the radial class, built
/// from the top log power downwards; no homogeneous terms are added.
inline RadialFunction radial_solve(const RadialFunction& g, int m) {
  RadialFunction solution, rest = g;
  while (!rest.is_zero()) {
    // highest (alpha, s) in the map order is processed first; within an
    // exponent the largest log power comes last in the map
    auto it = std::prev(rest.terms().end());
    const auto [gamma, s] = it->first;
    const ExactScalar c = it->second;
    const int b = gamma + 2;
    const int A = b * (b + m - 2), B = 2 * b + m - 2;
    int t = s;
    long lead = A;
    if (A == 0) {
      if (B != 0) {
        t = s + 1;
        lead = static_cast<long>(B) * t;
      } else {
        t = s + 2;
        lead = static_cast<long>(t) * (t - 1);
      }
    }
    auto piece = RadialFunction::term(c * ExactScalar(make_rational(1, lead)), b, t);
    solution += piece;
    rest -= radial_laplace(piece, m);
  }
  return solution;
}

/// Delta nu_2 = delta in R^m.
inline RadialFunction nu_base(int m) {
  if (m < 1) throw DomainError("classical fundamental solution needs m >= 1");
  if (m == 1) return RadialFunction::term(ExactScalar(make_rational(1, 2)), 1);
  if (m == 2) return RadialFunction::term(ExactScalar(make_rational(1, 2)) * ExactScalar::pi_power_half(-2), 0, 1);
  // -r^{2-m} / ((m-2) sigma_{m-1}),  sigma_{m-1} = 2 pi^{m/2} / Gamma(m/2)
  ExactScalar c = ExactScalar(make_rational(-1, 2 * (m - 2))) * ExactScalar::gamma_half(m) *
                  ExactScalar::pi_power_half(-m);
  return RadialFunction::term(c, 2 - m);
}

/// nu_{2l}: Delta nu_{2l} = nu_{2l-2}, l >= 1.
inline RadialFunction nu_poly_laplace(int l, int m) {
  if (l < 1) throw DomainError("poly-Laplace order must be >= 1");
  RadialFunction nu = nu_base(m);
  for (int i = 1; i < l; ++i) nu = radial_solve(nu, m);
  return nu;
}

struct FundamentalSolutionTerm {
  int k = 0;
  ExactScalar prefactor;  // pi^n 2^{2k} k!/(n-k)!
  RadialFunction nu;      // nu_{2k+2}
  int fermionic_power = 0;  // x'^{2 fermionic_power}
  RadialFunction radial() const { return prefactor * nu; }
};

struct FundamentalSolution {
  int m = 0;
  int n = 0;
  std::vector<FundamentalSolutionTerm> terms;

  /// x'^{2s} as an element of the Grassmann algebra on 2n generators.
  SuperPolynomial<ExactScalar> grassmann_factor(int s) const {
    return fermionic_square<ExactScalar>(VariableUniverse::standard(0, n)).pow(s);
  }
};

inline FundamentalSolution super_fundamental_solution(int m, int n) {
  if (m < 1) throw DomainError("no fundamental solution for m = 0");
  if (n < 0) throw DomainError("negative fermionic dimension");
  FundamentalSolution f{m, n, {}};
  for (int k = 0; k <= n; ++k) {
    ExactScalar pref = ExactScalar(rational_pow(Rational(4), k) * factorial(k) / factorial(n - k)) *
                       ExactScalar::pi_power_half(2 * n);
    f.terms.push_back({k, pref, nu_poly_laplace(k + 1, m), n - k});
  }
  return f;
}

/// Delta = Delta_b + Delta_f applied off the origin, collected by powers of
/// x'^2; Delta_f x'^{2s} = 2s(2s - 2 - 2n) x'^{2s-2}.
inline std::map<int, RadialFunction> super_laplace_off_origin(const FundamentalSolution& f) {
  std::map<int, RadialFunction> out;
  auto put = [&](int s, const RadialFunction& r) {
    if (s > f.n) return;  // x'^{2s} vanishes beyond s = n
    out[s] += r;
    if (out[s].is_zero()) out.erase(s);
  };
  for (const auto& t : f.terms) {
    const RadialFunction r = t.radial();
    const int s = t.fermionic_power;
    put(s, radial_laplace(r, f.m));
    if (s >= 1) put(s - 1, ExactScalar(2 * s * (2 * s - 2 - 2 * f.n)) * r);
  }
  return out;
}

inline bool verify_harmonic_away_from_origin(const FundamentalSolution& f) {
  return super_laplace_off_origin(f).empty();
}

/// Inverse of y^2 = yb^2 + yf^2 as sum_k (-1)^k yf^{2k} yb^{-2k-2}: maps the
/// power of yb^2 (negative) to the fermionic factor over a 0|2n universe.
using LaurentGrassmann = std::map<int, SuperPolynomial<ExactScalar>>;

inline LaurentGrassmann inverse_super_square(int n) {
  auto u = VariableUniverse::standard(0, n);
  auto yf2 = fermionic_square<ExactScalar>(u);
  LaurentGrassmann inv;
  for (int k = 0; k <= n; ++k) inv[-k - 1] = ExactScalar(k % 2 ? -1 : 1) * yf2.pow(k);
  return inv;
}

/// (yb^2 + yf^2) * g, with yb^2 a formal invertible even symbol.
inline LaurentGrassmann times_super_square(const LaurentGrassmann& g, int n) {
  auto u = VariableUniverse::standard(0, n);
  auto yf2 = fermionic_square<ExactScalar>(u);
  LaurentGrassmann out;
  auto put = [&](int e, const SuperPolynomial<ExactScalar>& p) {
    auto it = out.find(e);
    if (it == out.end()) it = out.emplace(e, SuperPolynomial<ExactScalar>(u)).first;
    it->second += p;
    if (it->second.is_zero()) out.erase(it);
  };
  for (const auto& [e, p] : g) {
    put(e + 1, p);
    put(e, yf2 * p);
  }
  return out;
}

}  // namespace supertransform
