#pragma once
// Fermionic, bosonic and full super Fourier transforms on the Gaussian
// class, Berezin and super integrals, Parseval pairs, fermionic
// convolution, the transform of the delta distribution and the spectral
// (operator exponential) route.
//
//   F_{0|2n}(f)(y) = (2 pi)^n int_{B,x} K(x,y) f(x),
//   K(x,y)        = exp(-+ (i/2) sum_j (x_{2j-1} y_{2j} - x_{2j} y_{2j-1})),
//   F_{m|0}(x_i g) = -+ i d/dy_i F_{m|0}(g),   F_{m|0}(exp(x^2/2)) = exp(y^2/2).
// Transforms keep the universe: output symbols are read as the y family.

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "supertransform/cliffweyl.hpp"
#include "supertransform/hermite.hpp"
#include "supertransform/superalg.hpp"

namespace supertransform {

enum class FourierSign { Plus = 1, Minus = -1 };

inline int sign_value(FourierSign s) { return static_cast<int>(s); }
inline FourierSign opposite(FourierSign s) {
  return s == FourierSign::Plus ? FourierSign::Minus : FourierSign::Plus;
}
/// (+-i)^k for the given sign.
inline ExactScalar sign_phase(FourierSign s, int k) {
  return ExactScalar::i_power(s == FourierSign::Plus ? k : -k);
}

enum class TransformOrder { FermionicFirst, BosonicFirst };

/// pi^{-p} d/dq_{offset+2p-1} ... d/dq_{offset} (d/dq_offset applied first).
template <class C>
SuperPolynomial<C> berezin_block(const SuperPolynomial<C>& f, int offset, int pairs) {
  if (offset < 0 || pairs < 0 || offset + 2 * pairs > f.universe()->fermionic_count())
    throw DomainError("odd subset");
  SuperPolynomial<C> r = f;
  for (int j = 0; j < 2 * pairs; ++j) r = fermionic_derivative(r, offset + j);
  return CoeffOps<C>::from_exact(ExactScalar::pi_power_half(-2 * pairs)) * r;
}

/// Berezin integral over every fermionic symbol; the result only involves
/// bosonic symbols and stays in the same universe.
template <class C>
SuperPolynomial<C> berezin(const SuperPolynomial<C>& f) {
  return berezin_block(f, 0, f.universe()->n());
}

/// exp(c * sum q_{2j-1} q_{2j}) expanded.
template <class C>
SuperPolynomial<C> fermionic_exponential(const UniverseRef& u, const Rational& c) {
  if (u->n() == 0 || c == 0) return SuperPolynomial<C>::one(u);
  return nilpotent_exp(CoeffOps<C>::from_rational(c) * fermionic_square<C>(u));
}

/// Bosonic universe with the same bosonic symbols.
inline UniverseRef bosonic_part(const UniverseRef& u) {
  return std::make_shared<const VariableUniverse>(u->bosonic(), std::vector<std::string>{});
}

/// Berezin integral of a Gaussian-class function; the remaining bosonic
/// envelope exp(-|x|^2/2) is the Gaussian of the bosonic universe.
template <class C>
GaussianFunction<C> berezin(const GaussianFunction<C>& f) {
  SuperPolynomial<C> p = f.poly;
  if (f.envelope) p = p * fermionic_exponential<C>(f.universe(), make_rational(1, 2));
  SuperPolynomial<C> b = berezin(p);
  auto target = bosonic_part(f.universe());
  SuperPolynomial<C> out(target);
  for (const auto& [mono, c] : b.terms()) out.add_term(SuperMonomial{mono.bos, 0}, c);
  return {out, f.envelope};
}

/// Kernel K(x,y) over concat(u_x, u_y) with u_x = 0|2n, u_y = renamed copy.
inline SuperPolynomial<ExactScalar> fermionic_kernel(int n, FourierSign sign) {
  auto ux = VariableUniverse::standard(0, n, "x", "q");
  auto uy = VariableUniverse::standard(0, n, "y", "r");
  auto both = VariableUniverse::concat(*ux, *uy);
  const int f = 2 * n;
  using P = SuperPolynomial<ExactScalar>;
  P a(both);
  for (int j = 0; j < n; ++j) {
    a += P::fermionic_variable(both, 2 * j) * P::fermionic_variable(both, f + 2 * j + 1);
    a -= P::fermionic_variable(both, 2 * j + 1) * P::fermionic_variable(both, f + 2 * j);
  }
  // -+ i/2
  ExactScalar coeff = ExactScalar(ComplexRational(0, Rational(-sign_value(sign), 2)));
  if (n == 0) return P::one(both);
  return nilpotent_exp(coeff * a);
}

namespace detail {

/// Image of the Grassmann monomial q_A under F_{0|2n}, over standard(0, n).
inline const SuperPolynomial<ExactScalar>& fermionic_image(int n, FourierSign sign, FermionMask mask) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, FermionMask>, SuperPolynomial<ExactScalar>> cache;
  static std::map<std::pair<int, int>, SuperPolynomial<ExactScalar>> kernels;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(n, sign_value(sign), mask);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto kit = kernels.find({n, sign_value(sign)});
  if (kit == kernels.end()) kit = kernels.emplace(std::make_pair(n, sign_value(sign)), fermionic_kernel(n, sign)).first;
  const auto& K = kit->second;
  SuperPolynomial<ExactScalar> monomial(K.universe());
  monomial.add_term(SuperMonomial{{}, mask}, ExactScalar(1));
  auto integrated = berezin_block(K * monomial, 0, n);
  auto target = VariableUniverse::standard(0, n);
  SuperPolynomial<ExactScalar> out(target);
  for (const auto& [mono, c] : integrated.terms()) out.add_term(SuperMonomial{{}, mono.fer >> (2 * n)}, c);
  out = ExactScalar::two_pi_power_half(2 * n) * out;
  return cache.emplace(key, std::move(out)).first->second;
}

/// Coefficients of r_k(y) = T^k(1), T = -+i (d/dy - y), lowest power first.
inline const std::vector<ExactScalar>& bosonic_image(FourierSign sign, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<ExactScalar>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(sign_value(sign), k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<ExactScalar> r{ExactScalar(1)};
  const ExactScalar factor = ExactScalar(ComplexRational(0, -sign_value(sign)));
  for (int s = 0; s < k; ++s) {
    std::vector<ExactScalar> next(r.size() + 1);
    for (std::size_t e = 1; e < r.size(); ++e) next[e - 1] += ExactScalar(static_cast<long>(e)) * r[e];
    for (std::size_t e = 0; e < r.size(); ++e) next[e + 1] -= r[e];
    for (auto& v : next) v = factor * v;
    r = std::move(next);
  }
  return cache.emplace(key, std::move(r)).first->second;
}

}  // namespace detail

/// F_{0|2n} on a polynomial (bosonic symbols are spectators).
template <class C>
SuperPolynomial<C> fermionic_fourier(const SuperPolynomial<C>& f, FourierSign sign) {
  const int n = f.universe()->n();
  SuperPolynomial<C> r(f.universe());
  for (const auto& [mono, c] : f.terms()) {
    const auto& image = detail::fermionic_image(n, sign, mono.fer);
    for (const auto& [im, ic] : image.terms()) r.add_term(SuperMonomial{mono.bos, im.fer}, c * CoeffOps<C>::from_exact(ic));
  }
  return r;
}

/// F_{0|2n} on a Gaussian-class function: P G = (P E_f) E_b with the
/// fermionic envelope E_f expanded.
template <class C>
GaussianFunction<C> fermionic_fourier(const GaussianFunction<C>& f, FourierSign sign) {
  if (!f.envelope) return {fermionic_fourier(f.poly, sign), false};
  const auto& u = f.universe();
  SuperPolynomial<C> t = fermionic_fourier(f.poly * fermionic_exponential<C>(u, make_rational(1, 2)), sign);
  return {t * fermionic_exponential<C>(u, make_rational(-1, 2)), true};
}

/// F_{m|0} on a Gaussian-class function by the peel rule.
template <class C>
GaussianFunction<C> bosonic_fourier(const GaussianFunction<C>& f, FourierSign sign) {
  if (!f.envelope) throw DomainError("envelope missing");
  const auto& u = f.universe();
  const int m = u->m();
  SuperPolynomial<C> r(u);
  for (const auto& [mono, c] : f.poly.terms()) {
    // expand prod_i r_{beta_i}(y_i)
    std::vector<std::pair<std::vector<int>, C>> partial{{{}, c}};
    for (int i = 0; i < m; ++i) {
      const auto& img = detail::bosonic_image(sign, mono.bos[static_cast<std::size_t>(i)]);
      std::vector<std::pair<std::vector<int>, C>> next;
      for (const auto& [exps, coeff] : partial)
        for (std::size_t e = 0; e < img.size(); ++e) {
          if (img[e].is_zero()) continue;
          auto ex = exps;
          ex.push_back(static_cast<int>(e));
          next.emplace_back(std::move(ex), coeff * CoeffOps<C>::from_exact(img[e]));
        }
      partial = std::move(next);
    }
    for (auto& [exps, coeff] : partial) r.add_term(SuperMonomial{std::move(exps), mono.fer}, coeff);
  }
  return {r, true};
}

/// F_{m|2n} = F_{m|0} o F_{0|2n} = F_{0|2n} o F_{m|0}.
template <class C>
GaussianFunction<C> super_fourier(const GaussianFunction<C>& f, FourierSign sign,
                                  TransformOrder order = TransformOrder::FermionicFirst) {
  if (!f.envelope) throw DomainError("envelope missing");
  if (order == TransformOrder::FermionicFirst)
    return bosonic_fourier(fermionic_fourier(f, sign), sign);
  return fermionic_fourier(bosonic_fourier(f, sign), sign);
}

/// Componentwise transform of a C-valued Gaussian-class function.
template <class C>
CValuedPolynomial<C> super_fourier(const CValuedPolynomial<C>& f, FourierSign sign) {
  return f.map_components([&](const GaussianFunction<C>& g) { return super_fourier(g, sign); });
}

/// int_{R^{m|2n}} P exp(e x^2/2) for e in {0,1,2}: Berezin part exact,
/// bosonic moments int x^{2p} exp(-c x^2) dx = Gamma(p+1/2) c^{-p-1/2}.
inline ExactScalar super_integral(const SuperPolynomial<ExactScalar>& P, int envelope_power) {
  const auto& u = P.universe();
  if (envelope_power < 0 || envelope_power > 2) throw DomainError("unsupported envelope power");
  SuperPolynomial<ExactScalar> p = P;
  if (envelope_power > 0) p = p * fermionic_exponential<ExactScalar>(u, make_rational(envelope_power, 2));
  SuperPolynomial<ExactScalar> b = berezin(p);
  if (u->m() == 0) return b.constant_term();
  if (envelope_power == 0 && !b.is_zero()) throw DomainError("non-damped bosonic integrand");
  ExactScalar total;
  for (const auto& [mono, c] : b.terms()) {
    ExactScalar term = c;
    for (int e : mono.bos) {
      if (e % 2) {
        term = ExactScalar();
        break;
      }
      const int p2 = e / 2;
      term = term * ExactScalar::gamma_half(2 * p2 + 1);
      if (envelope_power == 1) term = term * ExactScalar::monomial(ComplexRational(1), 0, 2 * p2 + 1);
    }
    total += term;
  }
  return total;
}

inline ExactScalar super_integral(const GaussianFunction<ExactScalar>& f) {
  return super_integral(f.poly, f.envelope ? 1 : 0);
}

struct ParsevalResult {
  ExactScalar lhs;
  ExactScalar rhs;
  bool holds() const { return lhs == rhs; }
};

enum class ParsevalScope { Fermionic, Full };

/// int f conj(g) against int F(f) conj(F(g)).
inline ParsevalResult parseval_check(const GaussianFunction<ExactScalar>& f,
                                     const GaussianFunction<ExactScalar>& g, FourierSign sign,
                                     ParsevalScope scope) {
  if (scope == ParsevalScope::Fermionic) {
    if (f.envelope != g.envelope) throw DomainError("envelope mismatch");
    auto lhs_int = f.poly * g.poly.conj();
    auto ff = fermionic_fourier(f, sign);
    auto fg = fermionic_fourier(g, sign);
    auto rhs_int = ff.poly * fg.poly.conj();
    if (f.envelope) {
      const auto e = fermionic_exponential<ExactScalar>(f.universe(), Rational(1));
      lhs_int = lhs_int * e;
      rhs_int = rhs_int * e;
    }
    return {berezin(lhs_int).constant_term(), berezin(rhs_int).constant_term()};
  }
  if (!f.envelope || !g.envelope) throw DomainError("envelope missing");
  auto ff = super_fourier(f, sign);
  auto fg = super_fourier(g, sign);
  return {super_integral(f.poly * g.poly.conj(), 2), super_integral(ff.poly * fg.poly.conj(), 2)};
}

/// (f * g)(u) = int_{B,x} f(u - x) g(x) for Grassmann elements.
inline SuperPolynomial<ExactScalar> convolution_fermionic(const SuperPolynomial<ExactScalar>& f,
                                                          const SuperPolynomial<ExactScalar>& g) {
  const auto& u = f.universe();
  f.check_universe(g);
  if (!f.is_purely_fermionic() || !g.is_purely_fermionic())
    throw DomainError("convolution needs Grassmann elements");
  const int n = u->n();
  const int d = 2 * n;
  auto both = VariableUniverse::concat(*u, *VariableUniverse::standard(u->m(), n, "y", "r"));
  using P = SuperPolynomial<ExactScalar>;
  // f(u - x): q_j -> u_j - x_j
  P shifted(both);
  for (const auto& [mono, c] : f.terms()) {
    P term = P::constant(both, c);
    for (FermionMask rest = mono.fer; rest; rest &= rest - 1) {
      int j = std::countr_zero(rest);
      term = term * (P::fermionic_variable(both, j) - P::fermionic_variable(both, d + j));
    }
    shifted += term;
  }
  P integrand = shifted * embed(g, both, Block::Right);
  P integrated = berezin_block(integrand, d, n);
  P out(u);
  for (const auto& [mono, c] : integrated.terms()) {
    SuperMonomial m2 = out.unit_monomial();
    m2.fer = mono.fer;
    out.add_term(m2, c);
  }
  return out;
}

/// F(delta) with delta = pi^n delta(x) q_1 ... q_2n; the bosonic factor
/// contributes the classical constant (2 pi)^{-m/2}.
inline ExactScalar delta_fourier(const UniverseRef& u, FourierSign sign) {
  const int n = u->n();
  auto fu = VariableUniverse::standard(0, n);
  SuperPolynomial<ExactScalar> top(fu);
  top.add_term(SuperMonomial{{}, n >= 32 ? ~FermionMask{0} : bit(2 * n) - 1},
               ExactScalar::pi_power_half(2 * n));
  auto image = fermionic_fourier(top, sign);
  if (!image.is_zero() && (image.size() != 1 || image.terms().begin()->first.fer != 0))
    throw DomainError("fermionic delta transform is not constant");
  return image.constant_term() * ExactScalar::two_pi_power_half(-u->m());
}

/// exp(c Delta) on a polynomial; the series stops because Delta lowers degree.
template <class C>
SuperPolynomial<C> laplace_exponential(const SuperPolynomial<C>& p, const Rational& c) {
  SuperPolynomial<C> out = p, term = p;
  Rational coeff = 1;
  for (int s = 1; !term.is_zero(); ++s) {
    term = laplace(term);
    coeff *= c / s;
    if (!term.is_zero()) out += CoeffOps<C>::from_rational(coeff) * term;
  }
  return out;
}

/// On P exp(x^2/2) the oscillator Delta - x^2 - M acts as P -> (2E + Delta) P,
/// whose eigenspaces are exp(Delta/4) P_d. The exponential is therefore
/// exp(Delta/4) (+-i)^E exp(-Delta/4), valid for every M.
template <class C>
GaussianFunction<C> oscillator_exponential_fourier(const GaussianFunction<C>& f, FourierSign sign) {
  if (!f.envelope) throw DomainError("envelope missing");
  SuperPolynomial<C> q = laplace_exponential(f.poly, make_rational(-1, 4));
  SuperPolynomial<C> rotated(q.universe());
  for (const auto& [mono, c] : q.terms())
    rotated.add_term(mono, c * CoeffOps<C>::from_exact(sign_phase(sign, mono.degree())));
  return {laplace_exponential(rotated, make_rational(1, 4)), true};
}

/// F = exp(+- i pi/4 (Delta - x^2 - M)) via the psi expansion.
template <class C>
GaussianFunction<C> operator_exponential_fourier(const GaussianFunction<C>& f, FourierSign sign,
                                                 const PsiExpansion& expansion) {
  auto coeffs = expansion.expand(f);
  return expansion.reassemble(coeffs, [&](int order) { return CoeffOps<C>::from_exact(sign_phase(sign, order)); });
}

/// Psi route when the psi functions form a basis (M not in -2N); otherwise
/// the oscillator eigenspaces are used directly.
template <class C>
GaussianFunction<C> operator_exponential_fourier(const GaussianFunction<C>& f, FourierSign sign,
                                                 int cap = 8) {
  if (f.poly.max_degree() > cap) throw DomainError("degree cap exceeded");
  const int M = f.universe()->super_dimension();
  if (M <= 0 && M % 2 == 0) return oscillator_exponential_fourier(f, sign);
  PsiExpansion expansion(f.universe(), cap);
  return operator_exponential_fourier(f, sign, expansion);
}

}  // namespace supertransform
