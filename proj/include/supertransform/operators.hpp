#pragma once
// Scalar differential operators acting on GaussianFunction: the envelope
// exp(x^2/2) is kept symbolic and operators act on it through product rules
//   d/dx_i  (P G) = (dP/dx_i - x_i P) G
//   d/dq_k  (P G) = (dP/dq_k + b_k P) G,   b_{2j-1} = q_{2j}/2, b_{2j} = -q_{2j-1}/2.

#include "supertransform/superalg.hpp"

namespace supertransform {

enum class Sector { Bosonic, Fermionic, Full };

/// d/dx_i including the envelope contribution.
template <class C>
GaussianFunction<C> d_bosonic(const GaussianFunction<C>& f, int i) {
  SuperPolynomial<C> r = bosonic_derivative(f.poly, i);
  if (f.envelope) r -= SuperPolynomial<C>::bosonic_variable(f.universe(), i) * f.poly;
  return {std::move(r), f.envelope};
}

/// Left derivative d/dq_k including the envelope contribution.
template <class C>
GaussianFunction<C> d_fermionic(const GaussianFunction<C>& f, int k) {
  SuperPolynomial<C> r = fermionic_derivative(f.poly, k);
  if (f.envelope) {
    const C half = CoeffOps<C>::from_rational(make_rational(1, 2));
    // partner index and sign of b_k
    const bool odd_slot = (k % 2 == 0);  // zero-based 2j-2 is q_{2j-1} one-based
    const int partner = odd_slot ? k + 1 : k - 1;
    SuperPolynomial<C> b = SuperPolynomial<C>::fermionic_variable(f.universe(), partner);
    r += (odd_slot ? half : -half) * (b * f.poly);
  }
  return {std::move(r), f.envelope};
}

/// Left multiplication by a single variable.
template <class C>
GaussianFunction<C> mul_bosonic(const GaussianFunction<C>& f, int i) {
  return {SuperPolynomial<C>::bosonic_variable(f.universe(), i) * f.poly, f.envelope};
}
template <class C>
GaussianFunction<C> mul_fermionic(const GaussianFunction<C>& f, int k) {
  return {SuperPolynomial<C>::fermionic_variable(f.universe(), k) * f.poly, f.envelope};
}
template <class C>
GaussianFunction<C> mul_poly(const SuperPolynomial<C>& p, const GaussianFunction<C>& f) {
  return {p * f.poly, f.envelope};
}

/// E = sum x_i d/dx_i + sum q_j d/dq_j.
template <class C>
GaussianFunction<C> euler(const GaussianFunction<C>& f) {
  const auto& u = f.universe();
  GaussianFunction<C> r{SuperPolynomial<C>(u), f.envelope};
  for (int i = 0; i < u->m(); ++i) r += mul_bosonic(d_bosonic(f, i), i);
  for (int k = 0; k < u->fermionic_count(); ++k) r += mul_fermionic(d_fermionic(f, k), k);
  return r;
}

/// Delta_b = -sum d^2/dx_i^2, Delta_f = 4 sum d/dq_{2j-1} d/dq_{2j}.
template <class C>
GaussianFunction<C> laplace(const GaussianFunction<C>& f, Sector sector = Sector::Full) {
  const auto& u = f.universe();
  GaussianFunction<C> r{SuperPolynomial<C>(u), f.envelope};
  if (sector != Sector::Fermionic) {
    for (int i = 0; i < u->m(); ++i) r -= d_bosonic(d_bosonic(f, i), i);
  }
  if (sector != Sector::Bosonic) {
    const C four = CoeffOps<C>::from_rational(4);
    for (int j = 0; j < u->n(); ++j) r += four * d_fermionic(d_fermionic(f, 2 * j + 1), 2 * j);
  }
  return r;
}

/// (d_x + x)^2 = Delta + x^2 + 2E + M as a scalar operator.
template <class C>
GaussianFunction<C> scalar_square(const GaussianFunction<C>& f) {
  const auto& u = f.universe();
  const C two = CoeffOps<C>::from_rational(2);
  const C dim = CoeffOps<C>::from_rational(u->super_dimension());
  return laplace(f) + mul_poly(vector_square<C>(u), f) + two * euler(f) + dim * f;
}

/// Convenience wrappers for pure polynomials (no envelope).
template <class C>
SuperPolynomial<C> euler(const SuperPolynomial<C>& p) {
  return euler(GaussianFunction<C>{p, false}).poly;
}
template <class C>
SuperPolynomial<C> laplace(const SuperPolynomial<C>& p, Sector sector = Sector::Full) {
  return laplace(GaussianFunction<C>{p, false}, sector).poly;
}

/// Delta^k with the given sector.
template <class C>
SuperPolynomial<C> laplace_power(SuperPolynomial<C> p, int k, Sector sector = Sector::Full) {
  for (int s = 0; s < k; ++s) p = laplace(p, sector);
  return p;
}

/// Value at the origin (constant term).
template <class C>
C at_origin(const SuperPolynomial<C>& p) {
  return p.constant_term();
}

}  // namespace supertransform
