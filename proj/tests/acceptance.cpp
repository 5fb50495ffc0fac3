// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"

using st::Angle;
using st::ExactScalar;
using st::FloatScalar;
using st::FourierSign;
using st::Sector;
using st::VariableUniverse;
using st::make_rational;
using P = st::SuperPolynomial<ExactScalar>;
using GF = st::GaussianFunction<ExactScalar>;
using FGF = st::GaussianFunction<FloatScalar>;
using CV = st::CValuedPolynomial<ExactScalar>;

namespace {

constexpr double kFracTableTol = 1e-12;
constexpr double kSemigroupTol = 1e-12;
constexpr double kCalculusTol = 1e-10;
constexpr double kKernelTol = 1e-8;

const FourierSign kSigns[] = {FourierSign::Plus, FourierSign::Minus};

/// Collects the first few mismatches of one criterion.
class Report {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void expect_below(double value, double tol, const std::string& what) {
    std::ostringstream s;
    s << what << " deviation " << value << " > " << tol;
    expect(value <= tol, s.str());
    worst_ = std::max(worst_, value);
  }
  bool ok() const { return failures_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (worst_ > 0) s << ", max deviation " << worst_;
    if (failures_) s << ", " << failures_ << " failed: " << notes_;
    return s.str();
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  double worst_ = 0;
  std::string notes_;
};

std::string tag(int m, int n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

P grassmann_monomial(const st::UniverseRef& u, st::FermionMask mask) {
  P p(u);
  p.add_term(st::SuperMonomial{std::vector<int>(static_cast<std::size_t>(u->m()), 0), mask}, ExactScalar(1));
  return p;
}

P random_grassmann(const st::UniverseRef& u) {
  P p(u);
  for (int t = 0; t < 5; ++t) {
    st::FermionMask mask = 0;
    for (int j = 0; j < u->fermionic_count(); ++j)
      if (testutil::uniform_int(0, 1)) mask |= st::bit(j);
    st::ComplexRational q(testutil::random_rational(), testutil::random_rational());
    p.add_term(st::SuperMonomial{{}, mask}, ExactScalar(q));
  }
  return p;
}

Angle random_angle() {
  double a = 0;
  while (std::abs(a) < 0.05) a = std::uniform_real_distribution<double>(-1, 1)(testutil::rng());
  return Angle::numeric(a);
}

/// Random combination of psi_{j,k,l} with 2j + k <= degree.
GF random_psi_span(const st::UniverseRef& u, int degree) {
  GF f{P(u), true};
  for (int k = 0; k <= degree; ++k) {
    auto basis = st::harmonic_basis(k, Sector::Full, u);
    for (const auto& h : basis.elements)
      for (int j = 0; 2 * j + k <= degree; ++j)
        if (testutil::uniform_int(0, 3) == 0) f = f + ExactScalar(testutil::random_rational()) * st::psi_function(j, h);
  }
  if (f.poly.is_zero()) f = GF::gaussian(u);
  return f;
}

// Symplectic transvections on 2n coordinates with omega pairing (2j, 2j+1).
std::vector<std::vector<st::Rational>> random_symplectic(int n) {
  const int d = 2 * n;
  std::vector<std::vector<st::Rational>> S(d, std::vector<st::Rational>(d, 0));
  for (int i = 0; i < d; ++i) S[i][i] = 1;
  for (int step = 0; step < 3; ++step) {
    std::vector<st::Rational> w(d), Jw(d);
    for (auto& v : w) v = testutil::random_rational(3);
    st::Rational t = testutil::random_rational(3);
    for (int j = 0; j < n; ++j) {
      Jw[2 * j] = w[2 * j + 1];
      Jw[2 * j + 1] = -w[2 * j];
    }
    std::vector<std::vector<st::Rational>> next(d, std::vector<st::Rational>(d, 0));
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        for (int k = 0; k < d; ++k) next[r][c] += ((r == k ? 1 : 0) + t * w[r] * Jw[k]) * S[k][c];
    S = next;
  }
  return S;
}

CV random_cvalued(const st::UniverseRef& u, int degree) {
  st::CWShape shape{u->m(), u->n()};
  CV r(u, false);
  for (int t = 0; t < 3; ++t) {
    st::CWKey k = shape.unit();
    k.e_mask = static_cast<std::uint32_t>(testutil::uniform_int(0, (1 << shape.m) - 1));
    for (auto& a : k.weyl) a = testutil::uniform_int(0, 1);
    r.add_component(k, testutil::random_poly(u, degree, 3).homogeneous_part(degree));
  }
  return r;
}

// 1 ---------------------------------------------------------------------------
Report fermionic_powers() {
  Report r;
  for (int n = 1; n <= 4; ++n) {
    auto u = VariableUniverse::standard(0, n);
    auto xf = st::fermionic_square<ExactScalar>(u);
    for (int k = 0; k <= n; ++k)
      for (FourierSign s : kSigns) {
        ExactScalar c(st::rational_pow(st::Rational(2), 2 * k - n) * st::factorial(k) / st::factorial(n - k));
        r.expect(st::fermionic_fourier(xf.pow(k), s) == c * xf.pow(n - k),
                 "n=" + std::to_string(n) + " k=" + std::to_string(k));
      }
  }
  return r;
}

// 2 ---------------------------------------------------------------------------
Report gaussian_invariance() {
  Report r;
  for (int n = 1; n <= 4; ++n) {
    auto u = VariableUniverse::standard(0, n);
    P g = st::fermionic_exponential<ExactScalar>(u, make_rational(1, 2));
    for (FourierSign s : kSigns) r.expect(st::fermionic_fourier(g, s) == g, "fermionic n=" + std::to_string(n));
  }
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 2}}) {
    auto u = VariableUniverse::standard(m, n);
    for (FourierSign s : kSigns) r.expect(st::super_fourier(GF::gaussian(u), s) == GF::gaussian(u), tag(m, n));
  }
  return r;
}

// 3 ---------------------------------------------------------------------------
Report inversion() {
  Report r;
  for (int n = 1; n <= 3; ++n) {
    auto u = VariableUniverse::standard(0, n);
    for (st::FermionMask mask = 0; mask < st::bit(2 * n); ++mask) {
      P f = grassmann_monomial(u, mask);
      r.expect(st::fermionic_fourier(st::fermionic_fourier(f, FourierSign::Minus), FourierSign::Plus) == f &&
                   st::fermionic_fourier(st::fermionic_fourier(f, FourierSign::Plus), FourierSign::Minus) == f,
               "monomial n=" + std::to_string(n) + " mask=" + std::to_string(mask));
    }
  }
  for (auto [m, n] : {std::pair{0, 1}, {0, 2}, {1, 1}, {2, 1}, {1, 2}, {3, 1}}) {
    auto u = VariableUniverse::standard(m, n);
    for (int t = 0; t < 25; ++t) {
      GF f = testutil::random_gaussian(u, 4);
      r.expect(st::super_fourier(st::super_fourier(f, FourierSign::Minus), FourierSign::Plus) == f &&
                   st::super_fourier(st::super_fourier(f, FourierSign::Plus), FourierSign::Minus) == f,
               "random " + tag(m, n));
    }
  }
  return r;
}

// 4 ---------------------------------------------------------------------------
Report parseval() {
  Report r;
  for (int n = 1; n <= 3; ++n) {
    auto u = VariableUniverse::standard(0, n);
    for (int t = 0; t < 25; ++t) {
      GF f{random_grassmann(u), false}, g{random_grassmann(u), false};
      for (FourierSign s : kSigns)
        r.expect(st::parseval_check(f, g, s, st::ParsevalScope::Fermionic).holds(), "fermionic n=" + std::to_string(n));
    }
  }
  auto u = VariableUniverse::standard(1, 1);
  for (int t = 0; t < 10; ++t) {
    GF f = testutil::random_gaussian(u, 3), g = testutil::random_gaussian(u, 3);
    for (FourierSign s : kSigns) r.expect(st::parseval_check(f, g, s, st::ParsevalScope::Full).holds(), "full (1,1)");
  }
  return r;
}

// 5 ---------------------------------------------------------------------------
Report eigen_theorems() {
  Report r;
  for (int n = 1; n <= 3; ++n) {
    auto u = VariableUniverse::standard(0, n);
    for (int l = 0; l <= 2 * n; ++l)
      for (const auto& h : st::harmonic_basis(l, Sector::Fermionic, u).elements)
        for (FourierSign s : kSigns)
          r.expect(st::fermionic_fourier(GF{h, true}, s) == st::sign_phase(s, l) * GF(h, true),
                   "fermionic n=" + std::to_string(n) + " l=" + std::to_string(l));
  }
  for (auto [m, n] : {std::pair{2, 1}, {3, 2}}) {
    auto u = VariableUniverse::standard(m, n);
    for (int l = 0; l <= 4; ++l)
      for (const auto& h : st::harmonic_basis(l, Sector::Full, u).elements)
        for (FourierSign s : kSigns)
          r.expect(st::super_fourier(GF{h, true}, s) == st::sign_phase(s, l) * GF(h, true),
                   "full " + tag(m, n) + " l=" + std::to_string(l));
  }
  // x'^{2k} H_l: F = (+-i)^l 2^{2k+l-n} k!/(n-k-l)! x'^{2(n-k-l)} H_l
  for (int n = 1; n <= 3; ++n) {
    auto u = VariableUniverse::standard(0, n);
    auto xf = st::fermionic_square<ExactScalar>(u);
    for (int l = 0; l <= n; ++l)
      for (const auto& h : st::harmonic_basis(l, Sector::Fermionic, u).elements)
        for (int k = 0; k <= n - l; ++k)
          for (FourierSign s : kSigns) {
            ExactScalar c = st::sign_phase(s, l) * ExactScalar(st::rational_pow(st::Rational(2), 2 * k + l - n) *
                                                               st::factorial(k) / st::factorial(n - k - l));
            r.expect(st::fermionic_fourier(xf.pow(k) * h, s) == c * (xf.pow(n - k - l) * h),
                     "x'^2k H n=" + std::to_string(n) + " k=" + std::to_string(k) + " l=" + std::to_string(l));
          }
  }
  return r;
}

// 6 ---------------------------------------------------------------------------
Report operator_exponential() {
  Report r;
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}}) {
    auto u = VariableUniverse::standard(m, n);
    for (int t = 0; t < 6; ++t) {
      GF f = random_psi_span(u, 6);
      for (FourierSign s : kSigns)
        r.expect(st::operator_exponential_fourier(f, s, 6) == st::super_fourier(f, s), "psi span " + tag(m, n));
    }
  }
  return r;
}

// 7 ---------------------------------------------------------------------------
Report delta() {
  Report r;
  for (auto [m, n] : {std::pair{1, 0}, {0, 1}, {1, 1}, {3, 1}}) {
    auto u = VariableUniverse::standard(m, n);
    for (FourierSign s : kSigns)
      r.expect(st::delta_fourier(u, s) == ExactScalar::two_pi_power_half(-u->super_dimension()), tag(m, n));
  }
  return r;
}

// 8 ---------------------------------------------------------------------------
Report convolution() {
  Report r;
  for (int n = 1; n <= 2; ++n) {
    auto u = VariableUniverse::standard(0, n);
    for (int t = 0; t < 25; ++t) {
      P f = random_grassmann(u), g = random_grassmann(u);
      for (FourierSign s : kSigns)
        r.expect(st::fermionic_fourier(st::convolution_fermionic(f, g), s) ==
                     ExactScalar::two_pi_power_half(-2 * n) * (st::fermionic_fourier(f, s) * st::fermionic_fourier(g, s)),
                 "n=" + std::to_string(n));
    }
  }
  return r;
}

// 9 ---------------------------------------------------------------------------
/// The displayed action of the 0|2 kernel with z = e^{i pi a / 2}.
template <class C>
st::SuperPolynomial<C> frac02_table(st::FermionMask mask, const C& z) {
  auto u = VariableUniverse::standard(0, 1);
  st::SuperPolynomial<C> out(u);
  const C one(1), half = one / C(2), quarter = one / C(4), z2 = z * z;
  auto put = [&](st::FermionMask m, const C& c) { out.add_term(st::SuperMonomial{{}, m}, c); };
  switch (mask) {
    case 0:
      put(0, half * (one + z2));
      put(3, quarter * (one - z2));
      break;
    case 1:
    case 2:
      put(mask, z);
      break;
    default:
      put(0, one - z2);
      put(3, half * (one + z2));
  }
  return out;
}

Report frac_zero_two() {
  Report r;
  auto u = VariableUniverse::standard(0, 1);
  for (int a : {0, 1, -1}) {
    Angle ang = Angle::exact(a);
    for (st::FermionMask mask = 0; mask < 4; ++mask)
      r.expect(st::frac02_kernel_apply<ExactScalar>(grassmann_monomial(u, mask), ang) ==
                   frac02_table<ExactScalar>(mask, ang.phase_exact(1)),
               "table a=" + std::to_string(a) + " mask=" + std::to_string(mask));
    if (a != 0)
      for (st::FermionMask mask = 0; mask < 4; ++mask) {
        P f = grassmann_monomial(u, mask);
        r.expect(st::frac02_kernel_apply<ExactScalar>(f, ang) ==
                     st::fermionic_fourier(f, a > 0 ? FourierSign::Plus : FourierSign::Minus),
                 "kernel vs F at a=" + std::to_string(a));
      }
  }
  for (int t = 0; t < 10; ++t) {
    Angle ang = random_angle();
    for (st::FermionMask mask = 0; mask < 4; ++mask)
      r.expect_below(st::max_deviation(st::frac02_kernel_apply<FloatScalar>(grassmann_monomial(u, mask), ang),
                                       frac02_table<FloatScalar>(mask, ang.phase_float(1))),
                     kFracTableTol, "table a=" + std::to_string(ang.value()));
  }
  // semigroup and inverse on the psi span
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {3, 1}}) {
    auto u2 = VariableUniverse::standard(m, n);
    for (int t = 0; t < 4; ++t) {
      double a = std::uniform_real_distribution<double>(-0.5, 0.5)(testutil::rng());
      double b = std::uniform_real_distribution<double>(-0.5, 0.5)(testutil::rng());
      FGF f = st::to_float(random_psi_span(u2, 4));
      auto Fa = [](const FGF& g, double x) { return st::frac_fourier(g, Angle::numeric(x)); };
      r.expect_below(st::max_deviation(Fa(Fa(f, b), a), Fa(f, a + b)), kSemigroupTol, "semigroup " + tag(m, n));
      r.expect_below(st::max_deviation(Fa(Fa(f, a), -a), f), kSemigroupTol, "inverse " + tag(m, n));
    }
    GF g = random_psi_span(u2, 4);
    r.expect(st::frac_fourier(g, Angle::exact(1)) == st::super_fourier(g, FourierSign::Plus), "a=1 " + tag(m, n));
    r.expect(st::frac_fourier(g, Angle::exact(-1)) == st::super_fourier(g, FourierSign::Minus), "a=-1 " + tag(m, n));
  }
  return r;
}

// 10 --------------------------------------------------------------------------
Report frac_calculus() {
  Report r;
  const st::FracRule rules[] = {st::FracRule::DBosonic,       st::FracRule::DFermionicEven,
                                st::FracRule::DFermionicOdd,  st::FracRule::XBosonic,
                                st::FracRule::XFermionicEven, st::FracRule::XFermionicOdd,
                                st::FracRule::DiracPlusVector};
  auto u = VariableUniverse::standard(1, 1);
  for (st::FracRule rule : rules) {
    for (int a : {-1, 0, 1}) {
      GF g = testutil::random_gaussian(u, 3);
      r.expect(st::frac_calculus_deviation(rule, Angle::exact(a), g, 0) == 0.0,
               std::string(st::frac_rule_name(rule)) + " exact a=" + std::to_string(a));
    }
    for (int t = 0; t < 5; ++t) {
      Angle a = random_angle();
      FGF g = st::to_float(testutil::random_gaussian(u, 3));
      r.expect_below(st::frac_calculus_deviation(rule, a, g, 0), kCalculusTol, st::frac_rule_name(rule));
    }
  }
  return r;
}

// 11 --------------------------------------------------------------------------
Report frac_general_kernel() {
  Report r;
  auto u = VariableUniverse::standard(1, 1);
  std::vector<GF> inputs;
  for (int k = 0; k <= 2; ++k)
    for (const auto& h : st::harmonic_basis(k, Sector::Full, u).elements)
      if (inputs.size() < 5) inputs.push_back(st::psi_function(k == 2 ? 0 : 1, h));
  while (inputs.size() < 5) inputs.push_back(testutil::random_gaussian(u, 3));
  const std::vector<double> ys{-1.1, 0.4, 1.6};
  for (const auto& f : inputs)
    for (int t = 0; t < 5; ++t) {
      Angle a = random_angle();
      r.expect_below(st::general_kernel_check(f, a, ys).max_deviation, kKernelTol, "a=" + std::to_string(a.value()));
    }
  return r;
}

// 12 --------------------------------------------------------------------------
P hermite_in_p(const st::UniverseRef& ru, int k) {
  P out(ru);
  const auto coeffs = st::hermite_1d(k);
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    st::SuperMonomial mono = out.unit_monomial();
    mono.bos[static_cast<std::size_t>(ru->m() - 1)] = static_cast<int>(e);
    out.add_term(mono, ExactScalar(coeffs[e]));
  }
  return out;
}

Report radon_closed_form() {
  Report r;
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {3, 1}}) {
    auto u = VariableUniverse::standard(m, n);
    auto ru = st::radon_universe(m, n);
    const int M = u->super_dimension();
    for (int k = 0; k <= 4; ++k)
      for (const auto& h : st::harmonic_basis(k, Sector::Full, u).elements)
        for (int j = 0; 2 * j + k <= 4; ++j) {
          auto R = st::radon(st::psi_tilde_function(j, h));
          ExactScalar c = ExactScalar(j % 2 ? -1 : 1) * ExactScalar::two_pi_power_half(M - 1);
          r.expect(R.poly == st::reduce_mod_sphere(c * hermite_in_p(ru, 2 * j + k) * st::to_omega(h), m),
                   "closed form " + tag(m, n) + " j=" + std::to_string(j) + " k=" + std::to_string(k));
        }
    for (int t = 0; t < 10; ++t) {
      GF g = testutil::random_gaussian(u, 3);
      auto dR = st::radon(g).d_p();
      for (int i = 0; i < m; ++i)
        r.expect(st::radon(st::d_bosonic(g, i)) == dR.times(P::bosonic_variable(ru, i)), "d/dx " + tag(m, n));
      for (int i = 0; i < n; ++i) {
        r.expect(st::radon(st::d_fermionic(g, 2 * i + 1)) ==
                     dR.times(ExactScalar(make_rational(1, 2)) * P::fermionic_variable(ru, 2 * i)),
                 "d/dq even " + tag(m, n));
        r.expect(st::radon(st::d_fermionic(g, 2 * i)) ==
                     dR.times(ExactScalar(make_rational(-1, 2)) * P::fermionic_variable(ru, 2 * i + 1)),
                 "d/dq odd " + tag(m, n));
      }
    }
  }
  return r;
}

// 13 --------------------------------------------------------------------------
Report fundamental_solution() {
  Report r;
  for (int m = 1; m <= 4; ++m)
    for (int n = 0; n <= 3; ++n)
      r.expect(st::verify_harmonic_away_from_origin(st::super_fundamental_solution(m, n)), "harmonic " + tag(m, n));
  auto base = st::super_fundamental_solution(3, 0);
  r.expect(base.terms.size() == 1 && base.terms[0].radial() ==
                                         st::RadialFunction::term(ExactScalar(make_rational(-1, 4)) *
                                                                      ExactScalar::pi_power_half(-2),
                                                                  -1),
           "m=3 n=0 base case");
  for (int n = 0; n <= 4; ++n)
    for (const auto& t : st::super_fundamental_solution(3, n).terms) {
      ExactScalar expected = ExactScalar::pi_power_half(2 * n) *
                             ExactScalar(st::rational_pow(st::Rational(2), 2 * t.k) * st::factorial(t.k) /
                                         st::factorial(n - t.k));
      r.expect(t.prefactor == expected, "prefactor n=" + std::to_string(n) + " k=" + std::to_string(t.k));
    }
  return r;
}

// 14 --------------------------------------------------------------------------
Report harmonic_decomposition() {
  Report r;
  for (int m = 1; m <= 4; ++m)
    for (int n = 0; n <= 3; ++n) {
      auto u = VariableUniverse::standard(m, n);
      for (int k = 0; k <= 5; ++k) {
        auto rep = st::decomposition_check(k, u);
        std::string where = tag(m, n) + " k=" + std::to_string(k);
        r.expect(rep.dimensions_match(), "dimensions " + where);
        r.expect(rep.products_not_harmonic == 0,
                 "products " + where + (rep.failures.empty() ? "" : ": " + rep.failures.front()));
      }
    }
  return r;
}

// 15 --------------------------------------------------------------------------
Report structural() {
  Report r;
  using V = st::PowerRuleVariant;
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}}) {
    auto u = VariableUniverse::standard(m, n);
    for (int s = 0; s <= 3; ++s)
      for (int k = 0; k <= 2; ++k) {
        CV R = random_cvalued(u, k);
        for (V v : {V::DiracEven, V::DiracOdd, V::Laplace})
          r.expect(st::power_rule_check(s, R, k, v), "power rule " + tag(m, n) + " s=" + std::to_string(s));
      }
  }
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 2; ++n) {
      auto u = VariableUniverse::standard(m, n);
      r.expect(st::dirac_apply(st::vector_variable<ExactScalar>(u)) ==
                   CV::from_scalar(P::constant(u, ExactScalar(u->super_dimension()))),
               "dirac x = M " + tag(m, n));
    }
  for (auto [m, n] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    auto u = VariableUniverse::standard(m, n);
    for (int t = 0; t < 5; ++t) {
      CV f = random_cvalued(u, testutil::uniform_int(0, 3));
      CV lhs = st::vector_mul(st::dirac_apply(f)) + st::dirac_apply(st::vector_mul(f));
      r.expect(lhs == ExactScalar(2) * st::euler(f) + ExactScalar(u->super_dimension()) * f, "2E + M " + tag(m, n));
    }
  }
  for (int n = 0; n <= 3; ++n)
    for (FourierSign s : kSigns) r.expect(st::swap_blocks(st::fermionic_kernel(n, s)) == st::fermionic_kernel(n, s),
                                          "kernel symmetry n=" + std::to_string(n));
  for (int n = 1; n <= 2; ++n) {
    auto u = VariableUniverse::standard(0, n);
    P p = st::pairing(u, u);
    for (int t = 0; t < 5; ++t) {
      auto S = random_symplectic(n);
      std::vector<std::vector<st::Rational>> St(2 * n, std::vector<st::Rational>(2 * n));
      for (int a = 0; a < 2 * n; ++a)
        for (int b = 0; b < 2 * n; ++b) St[a][b] = S[b][a];
      P moved = st::substitute_fermionic_linear(st::substitute_fermionic_linear(p, St, 0), St, 2 * n);
      r.expect(moved == p, "symplectic invariance n=" + std::to_string(n));
    }
  }
  for (int n = 1; n <= 3; ++n) {
    auto u = VariableUniverse::standard(0, n);
    for (int k = 0; k <= 2 * n; ++k)
      for (const auto& mono : st::monomials_of_degree(u, k)) {
        P p(u);
        p.add_term(mono, ExactScalar(1));
        P img = st::fermionic_fourier(p, FourierSign::Plus);
        r.expect(!img.is_zero() && img.is_homogeneous(2 * n - k), "homogeneity flip n=" + std::to_string(n));
      }
  }
  return r;
}

// 16 --------------------------------------------------------------------------
Report substitution_identity() {
  Report r;
  int explicit_fail = 0;
  for (auto [m, n] : {std::pair{2, 1}, {3, 2}})
    for (int k = 0; k <= n; ++k)
      for (int j = 0; j + k <= n; ++j)
        for (int l = 2 * k + j; l <= 2 * k + j + 3; ++l) {
          st::SubstHermiteResult res;
          try {
            res = st::substhermite_check(k, l, j, m, n);
          } catch (const st::DomainError&) {
            continue;
          }
          std::string where = tag(m, n) + " k=" + std::to_string(k) + " l=" + std::to_string(l) +
                              " j=" + std::to_string(j);
          r.expect(res.rodrigues_holds(), "rodrigues " + where);
          if (!res.explicit_holds()) ++explicit_fail;
        }
  r.expect(explicit_fail == 0, "explicit-formula version failed " + std::to_string(explicit_fail) + " cases");
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Report()> run;
  };
  const std::vector<Criterion> criteria{
      {"fermionic power formula", fermionic_powers},
      {"Gaussian invariance", gaussian_invariance},
      {"inversion", inversion},
      {"Parseval", parseval},
      {"eigenfunction theorems", eigen_theorems},
      {"operator exponential", operator_exponential},
      {"delta", delta},
      {"fermionic convolution", convolution},
      {"fractional 0|2 kernel", frac_zero_two},
      {"fractional calculus rules", frac_calculus},
      {"general fractional kernel", frac_general_kernel},
      {"Radon closed form", radon_closed_form},
      {"fundamental solution", fundamental_solution},
      {"harmonic decomposition", harmonic_decomposition},
      {"structural identities", structural},
      {"Hermite substitution identity", substitution_identity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string verdict, detail;
    try {
      Report r = criteria[i].run();
      verdict = r.ok() ? "PASS" : "FAIL";
      detail = r.summary();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (verdict == "FAIL") ++failed;
    std::printf("%s %2zu %s: %s (%.1fs)\n", verdict.c_str(), i + 1, criteria[i].name, detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
