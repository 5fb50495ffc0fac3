#pragma once
// Super Radon transform through the central slice:
//   R(f)(w, p) = (2pi)^{M/2-1} int e^{ipr} [F^-(f)(r w) mod w^2 + 1] dr.

#include <vector>

#include "supertransform/fourier.hpp"
#include "supertransform/superalg.hpp"

namespace supertransform {

/// Probabilists' Hermite polynomial: (d/dp)^k e^{-p^2/2} = (-1)^k He_k(p) e^{-p^2/2}.
/// Coefficients by ascending power.
inline std::vector<Rational> hermite_1d(int k) {
  if (k < 0) throw DomainError("negative Hermite degree");
  std::vector<Rational> prev{Rational(1)}, cur{Rational(1)};
  if (k == 0) return cur;
  cur = {Rational(0), Rational(1)};
  for (int d = 1; d < k; ++d) {
    // He_{d+1} = p He_d - d He_{d-1}
    std::vector<Rational> next(static_cast<std::size_t>(d + 2));
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= d * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Universe of Radon outputs: w_1..w_m, p | wq_1..wq_2n.
inline UniverseRef radon_universe(int m, int n) { return ray_universe(m, n, "p"); }

/// Rewrite w_m^2 -> 1 + sum wq_{2j-1} wq_{2j} - sum_{i<m} w_i^2 until every
/// monomial has w_m-degree at most one. Works on any universe whose first m
/// bosonic symbols are the w's.
template <class C>
SuperPolynomial<C> reduce_mod_sphere(const SuperPolynomial<C>& f, int m) {
  const auto& u = f.universe();
  if (m < 1) throw DomainError("no purely fermionic sphere");
  if (u->m() < m) throw DomainError("universe has fewer than m bosonic symbols");
  // 1 + sum wq wq - sum_{i<m} w_i^2 as a polynomial over u
  SuperPolynomial<C> rule = SuperPolynomial<C>::one(u);
  for (int j = 0; 2 * j + 1 < u->fermionic_count(); ++j)
    rule += SuperPolynomial<C>::fermionic_variable(u, 2 * j) * SuperPolynomial<C>::fermionic_variable(u, 2 * j + 1);
  for (int i = 0; i + 1 < m; ++i) {
    auto w = SuperPolynomial<C>::bosonic_variable(u, i);
    rule -= w * w;
  }
  const std::size_t last = static_cast<std::size_t>(m - 1);
  std::vector<SuperPolynomial<C>> powers{SuperPolynomial<C>::one(u)};
  SuperPolynomial<C> out(u);
  for (const auto& [mono, c] : f.terms()) {
    const int e = mono.bos[last];
    SuperMonomial rest = mono;
    rest.bos[last] = e % 2;
    while (static_cast<int>(powers.size()) <= e / 2) powers.push_back(powers.back() * rule);
    SuperPolynomial<C> head(u);
    head.add_term(rest, c);
    // the rule is even, so it commutes with everything
    out += powers[static_cast<std::size_t>(e / 2)] * head;
  }
  return out;
}

/// int e^{ipr} r^k e^{-r^2/2} dr = sqrt(2pi) i^k He_k(p) e^{-p^2/2}; returned
/// without the envelope, coefficients by ascending power of p.
inline std::vector<ExactScalar> one_dim_fourier_monomial(int k) {
  std::vector<ExactScalar> out;
  const ExactScalar pref = ExactScalar::two_pi_power_half(1) * ExactScalar::i_power(k);
  for (const auto& c : hermite_1d(k)) out.push_back(pref * ExactScalar(c));
  return out;
}

/// Output of the transform: a polynomial over radon_universe(m, n) times
/// exp(-p^2/2), reduced modulo w^2 + 1.
struct RadonResult {
  SuperPolynomial<ExactScalar> poly;

  int m() const { return poly.universe()->m() - 1; }
  int n() const { return poly.universe()->n(); }
  bool operator==(const RadonResult& o) const { return poly == o.poly; }

  /// d/dp (poly e^{-p^2/2}) = (dpoly/dp - p poly) e^{-p^2/2}
  RadonResult d_p() const {
    const int pi = m();
    auto p = SuperPolynomial<ExactScalar>::bosonic_variable(poly.universe(), pi);
    return {bosonic_derivative(poly, pi) - p * poly};
  }
  RadonResult times(const SuperPolynomial<ExactScalar>& w) const {
    return {reduce_mod_sphere(w * poly, m())};
  }
  /// Part of the polynomial with p-degree d (a polynomial in the w's).
  SuperPolynomial<ExactScalar> p_coefficient(int d) const {
    SuperPolynomial<ExactScalar> out(poly.universe());
    const std::size_t pi = static_cast<std::size_t>(m());
    for (const auto& [mono, c] : poly.terms())
      if (mono.bos[pi] == d) {
        SuperMonomial w = mono;
        w.bos[pi] = 0;
        out.add_term(w, c);
      }
    return out;
  }
  int p_degree() const {
    int d = -1;
    for (const auto& [mono, c] : poly.terms()) d = std::max(d, mono.bos[static_cast<std::size_t>(m())]);
    return d;
  }
};

/// Applies the r-integral term by term to a polynomial in (w, r | wq) with
/// implicit envelope exp(-r^2/2).
inline SuperPolynomial<ExactScalar> one_dim_fourier(const SuperPolynomial<ExactScalar>& g) {
  const auto& u = g.universe();
  const std::size_t ri = static_cast<std::size_t>(u->m() - 1);
  SuperPolynomial<ExactScalar> out(u);
  for (const auto& [mono, c] : g.terms()) {
    auto coeffs = one_dim_fourier_monomial(mono.bos[ri]);
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      if (coeffs[e].is_zero()) continue;
      SuperMonomial t = mono;
      t.bos[ri] = static_cast<int>(e);
      out.add_term(t, c * coeffs[e]);
    }
  }
  return out;
}

/// Embeds a polynomial in x (over an m|2n universe) as the same polynomial
/// in w over radon_universe(m, n).
inline SuperPolynomial<ExactScalar> to_omega(const SuperPolynomial<ExactScalar>& h) {
  const auto& u = h.universe();
  auto target = radon_universe(u->m(), u->n());
  SuperPolynomial<ExactScalar> out(target);
  for (const auto& [mono, c] : h.terms()) {
    SuperMonomial t = out.unit_monomial();
    for (int i = 0; i < u->m(); ++i) t.bos[static_cast<std::size_t>(i)] = mono.bos[static_cast<std::size_t>(i)];
    t.fer = mono.fer;
    out.add_term(t, c);
  }
  return out;
}

inline RadonResult radon(const GaussianFunction<ExactScalar>& f) {
  const auto& u = f.universe();
  if (u->m() == 0) throw DomainError("no purely fermionic Radon transform");
  if (!f.envelope) throw DomainError("envelope missing");
  const int m = u->m();
  auto ray = substitute_ray(super_fourier(f, FourierSign::Minus), radon_universe(m, u->n()));
  // exp(r^2 w^2 / 2) becomes exp(-r^2/2) on the sphere
  auto reduced = reduce_mod_sphere(ray.poly, m);
  auto transformed = one_dim_fourier(reduced);
  const ExactScalar pref = ExactScalar::two_pi_power_half(u->super_dimension() - 2);
  return {reduce_mod_sphere(pref * transformed, m)};
}

}  // namespace supertransform
