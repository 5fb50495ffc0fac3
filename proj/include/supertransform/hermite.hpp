#pragma once
// Clifford-Hermite polynomials (Rodrigues and explicit forms), the scalar
// eigenbasis psi_{j,k,l} = (d_x + x)^{2j} H_k^{(l)} exp(x^2/2), its variant
// psi~_{j,k,l} = Delta^j H_k^{(l)} exp(x^2/2), and expansion in these bases.

#include <bit>
#include <map>
#include <memory>
#include <vector>

#include "supertransform/harmonics.hpp"
#include "supertransform/linalg.hpp"
#include "supertransform/operators.hpp"

namespace supertransform {

inline void require_harmonic(const SuperPolynomial<ExactScalar>& h, int k) {
  if (!h.is_homogeneous(k)) throw DomainError("input is not homogeneous of the stated degree");
  if (!laplace(h).is_zero()) throw DomainError("input is not harmonic");
}

/// exp(-x^2/2) (d_x + x)^t exp(x^2/2) H_k for even t, i.e. CH_{t,M,k} H_k.
inline SuperPolynomial<ExactScalar> ch_rodrigues(int t, const SuperPolynomial<ExactScalar>& h, int k) {
  if (t < 0 || t % 2) throw DomainError("scalar Rodrigues formula needs an even order");
  require_harmonic(h, k);
  GaussianFunction<ExactScalar> f{h, true};
  for (int s = 0; s < t / 2; ++s) f = scalar_square(f);
  return f.poly;
}

/// exp(-x^2/2) d_x^t exp(x^2/2) H_k for even t (Laplacian route), restricted
/// to a sector when requested.
inline SuperPolynomial<ExactScalar> ch_tilde_rodrigues(int t, const SuperPolynomial<ExactScalar>& h,
                                                       Sector sector = Sector::Full) {
  if (t < 0 || t % 2) throw DomainError("scalar Rodrigues formula needs an even order");
  GaussianFunction<ExactScalar> f{h, true};
  for (int s = 0; s < t / 2; ++s) f = laplace(f, sector);
  return f.poly;
}

/// Coefficients c_i of sum_i c_i y^{2i} from the explicit formula
///   sum_i 2^{2t-2i} C(t,i) Gamma(t+k+M/2)/Gamma(i+k+M/2) y^{2i}
/// or, for M = -2n (pass fermionic_n >= 0), the factorial variant
///   sum_i (-1)^{t-i} 2^{2t-2i} C(t,i) (n-k-i)!/(n-k-t)! y^{2i}.
inline std::vector<ExactScalar> ch_explicit(int t, int M, int k, int fermionic_n = -1) {
  std::vector<ExactScalar> c;
  for (int i = 0; i <= t; ++i) {
    ExactScalar v(rational_pow(Rational(2), 2 * t - 2 * i) * binomial(t, i));
    if (fermionic_n >= 0) {
      const int n = fermionic_n;
      if (n - k - t < 0) throw DomainError("factorial of a negative integer");
      v = v * ExactScalar(factorial(n - k - i) / factorial(n - k - t));
      if ((t - i) % 2) v = -v;
    } else {
      // Gamma(t+k+M/2)/Gamma(i+k+M/2) = prod_{s=i}^{t-1} (s+k+M/2)
      if (M % 2 == 0 && i + k + M / 2 <= 0) throw DomainError("Gamma pole");
      Rational prod = 1;
      for (int s = i; s < t; ++s) prod *= make_rational(2 * (s + k) + M, 2);
      v = v * ExactScalar(prod);
    }
    c.push_back(v);
  }
  return c;
}

/// sum_i c_i (square)^i for a given square polynomial.
inline SuperPolynomial<ExactScalar> even_polynomial(const std::vector<ExactScalar>& c,
                                                    const SuperPolynomial<ExactScalar>& square) {
  SuperPolynomial<ExactScalar> r(square.universe());
  SuperPolynomial<ExactScalar> power = SuperPolynomial<ExactScalar>::one(square.universe());
  for (const auto& ci : c) {
    r += ci * power;
    power = power * square;
  }
  return r;
}

/// Writes P = sum_i c_i (square)^i * h and returns the c_i (throws if impossible).
inline std::vector<ExactScalar> divide_by_harmonic(const SuperPolynomial<ExactScalar>& P,
                                                   const SuperPolynomial<ExactScalar>& h,
                                                   const SuperPolynomial<ExactScalar>& square,
                                                   int max_power) {
  MonomialIndex index;
  std::vector<SparseVector> columns;
  SuperPolynomial<ExactScalar> power = SuperPolynomial<ExactScalar>::one(h.universe());
  for (int i = 0; i <= max_power; ++i) {
    columns.push_back(rational_coordinates(power * h, index));
    power = power * square;
  }
  std::map<int, ExactScalar> target;
  for (const auto& [mono, c] : P.terms()) target[index.index(mono)] = c;
  SpanSolver solver(columns, index.size());
  return solver.solve(target);
}

/// psi_{j} = (d_x + x)^{2j} H exp(x^2/2).
inline GaussianFunction<ExactScalar> psi_function(int j, const SuperPolynomial<ExactScalar>& h) {
  GaussianFunction<ExactScalar> f{h, true};
  for (int s = 0; s < j; ++s) f = scalar_square(f);
  return f;
}

/// psi~_{j} = Delta^j H exp(x^2/2).
inline GaussianFunction<ExactScalar> psi_tilde_function(int j, const SuperPolynomial<ExactScalar>& h) {
  GaussianFunction<ExactScalar> f{h, true};
  for (int s = 0; s < j; ++s) f = laplace(f);
  return f;
}

/// psi_{j,k,l} with H_k^{(l)} the l-th element of the computed harmonic basis.
inline GaussianFunction<ExactScalar> psi_basis(int j, int k, int l, const UniverseRef& u) {
  auto basis = harmonic_basis(k, Sector::Full, u);
  if (l < 0 || l >= static_cast<int>(basis.size())) throw DomainError("harmonic index out of range");
  return psi_function(j, basis.elements[static_cast<std::size_t>(l)]);
}

/// Both sides of the identity
///   sum_i C(k,i) (n-j-i)!/Gamma(m/2+l-k-j-i) CH~_{2k-2i,m,l-2k-j}(yb) CH~_{2i,-2n,j}(yf)
///     = f_{k,l-2k-j,j}(yb^2, yf^2).
struct SubstHermiteResult {
  SuperPolynomial<ExactScalar> lhs_explicit;
  SuperPolynomial<ExactScalar> lhs_rodrigues;
  SuperPolynomial<ExactScalar> rhs;
  bool explicit_holds() const { return lhs_explicit == rhs; }
  bool rodrigues_holds() const { return lhs_rodrigues == rhs; }
};

inline SubstHermiteResult substhermite_check(int k, int l, int j, int m, int n) {
  auto u = VariableUniverse::standard(m, n);
  const int bdeg = l - 2 * k - j;
  if (bdeg < 0 || j < 0 || k < 0 || n - j - k < 0) throw DomainError("indices outside the stated range");
  const auto yb = bosonic_square<ExactScalar>(u);
  const auto yf = fermionic_square<ExactScalar>(u);

  // harmonic representatives for the Rodrigues route
  auto hb = harmonic_basis(bdeg, Sector::Bosonic, u);
  auto hf = harmonic_basis(j, Sector::Fermionic, u);
  if (hb.elements.empty() || hf.elements.empty()) throw DomainError("empty harmonic space");
  const auto& Hb = hb.elements.front();
  const auto& Hf = hf.elements.front();

  SubstHermiteResult res{SuperPolynomial<ExactScalar>(u), SuperPolynomial<ExactScalar>(u),
                         f_poly(k, bdeg, j, u)};
  for (int i = 0; i <= k; ++i) {
    ExactScalar w = ExactScalar(binomial(k, i) * factorial(n - j - i)) /
                    ExactScalar::gamma_half(m + 2 * (l - k - j - i));
    auto bos_explicit = even_polynomial(ch_explicit(k - i, m, bdeg), yb);
    auto fer_explicit = even_polynomial(ch_explicit(i, -2 * n, j, n), yf);
    res.lhs_explicit += w * (bos_explicit * fer_explicit);

    auto bos_rod = even_polynomial(
        divide_by_harmonic(ch_tilde_rodrigues(2 * (k - i), Hb, Sector::Bosonic), Hb, yb, k - i), yb);
    auto fer_rod = even_polynomial(
        divide_by_harmonic(ch_tilde_rodrigues(2 * i, Hf, Sector::Fermionic), Hf, yf, i), yf);
    res.lhs_rodrigues += w * (bos_rod * fer_rod);
  }
  return res;
}

/// A family of basis functions indexed by (j, k, l) with spectral order 2j + k.
struct BasisEntry {
  int j = 0;
  int k = 0;
  int l = 0;
  GaussianFunction<ExactScalar> function;
  int order() const { return 2 * j + k; }
};

/// Expansion of Gaussian-class functions in psi (or psi~) functions up to a
/// total polynomial degree cap.
class PsiExpansion {
 public:
  enum class Kind { Psi, PsiTilde };

  PsiExpansion(UniverseRef u, int cap, Kind kind = Kind::Psi) : universe_(std::move(u)), cap_(cap) {
    for (int k = 0; k <= cap; ++k) {
      auto basis = harmonic_basis(k, Sector::Full, universe_);
      for (int j = 0; 2 * j + k <= cap; ++j) {
        for (std::size_t l = 0; l < basis.size(); ++l) {
          auto f = kind == Kind::Psi ? psi_function(j, basis.elements[l])
                                     : psi_tilde_function(j, basis.elements[l]);
          entries_.push_back({j, k, static_cast<int>(l), std::move(f)});
        }
      }
    }
    for (int d = 0; d <= cap; ++d)
      for (const auto& mono : monomials_of_degree(universe_, d)) index_.index(mono);
    std::vector<SparseVector> columns;
    for (const auto& e : entries_) columns.push_back(rational_coordinates(e.function.poly, index_));
    solver_ = std::make_unique<SpanSolver>(columns, index_.size());
  }

  const std::vector<BasisEntry>& entries() const { return entries_; }
  int cap() const { return cap_; }
  int rank() const { return solver_->rank(); }

  /// Coefficients of f in the family; throws "degree cap exceeded" outside the span.
  template <class C>
  std::vector<C> expand(const GaussianFunction<C>& f) const {
    if (!f.envelope) throw DomainError("envelope missing");
    if (!same_universe(f.universe(), universe_)) throw DomainError("universe mismatch");
    std::map<int, C> target;
    for (const auto& [mono, c] : f.poly.terms()) {
      int idx = index_.find(mono);
      if (idx < 0) throw DomainError("degree cap exceeded");
      target[idx] = c;
    }
    return solver_->solve(target);
  }

  /// sum_e coeff_e * phase(order_e) * e.
  template <class C, class Phase>
  GaussianFunction<C> reassemble(const std::vector<C>& coeffs, Phase&& phase) const {
    GaussianFunction<C> out{SuperPolynomial<C>(universe_), true};
    for (std::size_t s = 0; s < entries_.size(); ++s) {
      if (CoeffOps<C>::is_zero(coeffs[s])) continue;
      C w = coeffs[s] * phase(entries_[s].order());
      auto converted = entries_[s].function.poly.template map_coefficients<C>(
          [](const ExactScalar& x) { return CoeffOps<C>::from_exact(x); });
      out.poly += w * converted;
    }
    return out;
  }

 private:
  UniverseRef universe_;
  int cap_;
  std::vector<BasisEntry> entries_;
  MonomialIndex index_;
  std::unique_ptr<SpanSolver> solver_;
};

/// H(d_x): x_i -> -d/dx_i, q_{2i} -> 2 d/dq_{2i-1}, q_{2i-1} -> -2 d/dq_{2i},
/// applied to exp(x^2/2). Factors of each monomial act right to left.
inline GaussianFunction<ExactScalar> apply_as_operator(const SuperPolynomial<ExactScalar>& p,
                                                       const GaussianFunction<ExactScalar>& g) {
  GaussianFunction<ExactScalar> out{SuperPolynomial<ExactScalar>(g.universe()), g.envelope};
  for (const auto& [mono, c] : p.terms()) {
    GaussianFunction<ExactScalar> acc = g;
    // monomial x^beta q_{a1} ... q_{ar} (ascending); rightmost factor acts first
    std::vector<int> fer;
    for (FermionMask rest = mono.fer; rest; rest &= rest - 1) fer.push_back(std::countr_zero(rest));
    for (auto it = fer.rbegin(); it != fer.rend(); ++it) {
      const int idx = *it;
      if (idx % 2 == 1) {  // q_{2i}: 2 d/dq_{2i-1}
        acc = ExactScalar(2) * d_fermionic(acc, idx - 1);
      } else {  // q_{2i-1}: -2 d/dq_{2i}
        acc = ExactScalar(-2) * d_fermionic(acc, idx + 1);
      }
    }
    for (int i = 0; i < static_cast<int>(mono.bos.size()); ++i)
      for (int e = 0; e < mono.bos[static_cast<std::size_t>(i)]; ++e)
        acc = ExactScalar(-1) * d_bosonic(acc, i);
    out += c * acc;
  }
  return out;
}

}  // namespace supertransform
