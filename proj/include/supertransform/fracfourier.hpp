#pragma once
// Fractional Fourier transform F^a = exp(i alpha/2 (Delta - x^2 - M)),
// alpha = a pi/2. The spectral action on the psi functions is primary; the
// 0|2 integral kernel and the 1|2 kernel (bosonic Mehler factor by
// quadrature) are kept as independent checks.
//
// a = +1 gives the phases (+i)^{2j+k}, i.e. F^+.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "supertransform/cliffweyl.hpp"
#include "supertransform/fourier.hpp"
#include "supertransform/hermite.hpp"
#include "supertransform/operators.hpp"

namespace supertransform {

/// a in [-1, 1]. Exact when a is a multiple of 1/2 (phases are eighth roots
/// of unity, which live in Q(i)[sqrt2]); float otherwise.
class Angle {
 public:
  static Angle exact(const Rational& a) {
    Rational c = a;
    c.canonicalize();
    if (c < -1 || c > 1) throw DomainError("angle outside [-1,1]");
    Angle r;
    r.rational_ = c;
    r.value_ = c.get_d();
    return r;
  }
  static Angle numeric(double a) {
    if (!std::isfinite(a) || a < -1 || a > 1) throw DomainError("angle outside [-1,1]");
    Angle r;
    r.value_ = a;
    return r;
  }
  /// Parses "p/q" or an integer exactly, anything else as a double.
  static Angle parse(const std::string& text) {
    if (text.empty()) throw DomainError("empty angle");
    bool rational_syntax = text.find_first_not_of("+-0123456789/") == std::string::npos;
    if (rational_syntax) {
      Rational q;
      if (q.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0) throw DomainError("malformed angle");
      if (q.get_den() == 0) throw DomainError("malformed angle");
      return exact(q);
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed angle");
    }
    if (used != text.size()) throw DomainError("malformed angle");
    return numeric(v);
  }

  double value() const { return value_; }
  double alpha() const { return value_ * std::numbers::pi / 2; }
  const std::optional<Rational>& rational() const { return rational_; }
  bool has_exact_phase() const {
    return rational_ && Rational(2 * *rational_).get_den() == 1;
  }

  /// e^{i a t pi/2}
  ExactScalar phase_exact(int t) const {
    if (!has_exact_phase()) throw DomainError("phase not exactly representable");
    Rational twice = 2 * *rational_;
    long eighth = twice.get_num().get_si() * t;  // multiples of pi/4
    int r = static_cast<int>(((eighth % 8) + 8) % 8);
    if (r % 2 == 0) return ExactScalar::i_power(r / 2);
    // (1 + i)/sqrt2 * i^{(r-1)/2}
    ExactScalar root = ExactScalar(ComplexRational(make_rational(1, 2), make_rational(1, 2))) * ExactScalar::sqrt2();
    return root * ExactScalar::i_power((r - 1) / 2);
  }
  FloatScalar phase_float(int t) const {
    if (has_exact_phase()) return phase_exact(t).to_float();
    return std::polar(1.0, alpha() * t);
  }

 private:
  std::optional<Rational> rational_;
  double value_ = 0;
};

template <class C>
C angle_phase(const Angle& a, int t) {
  if constexpr (std::is_same_v<C, ExactScalar>) {
    return a.phase_exact(t);
  } else {
    return a.phase_float(t);
  }
}

inline GaussianFunction<FloatScalar> to_float(const GaussianFunction<ExactScalar>& f) {
  return {f.poly.template map_coefficients<FloatScalar>([](const ExactScalar& x) { return x.to_float(); }), f.envelope};
}

/// Spectral rotation on the Gaussian class: psi expansion when M is not in
/// -2N, the oscillator eigenspaces exp(Delta/4) P_d otherwise.
template <class C>
GaussianFunction<C> frac_fourier(const GaussianFunction<C>& f, const Angle& a, int cap = 8) {
  if (!f.envelope) throw DomainError("envelope missing");
  const int degree = std::max(0, f.poly.max_degree());
  if (degree > cap) throw DomainError("degree cap exceeded");
  const int M = f.universe()->super_dimension();
  if (M <= 0 && M % 2 == 0) {
    SuperPolynomial<C> q = laplace_exponential(f.poly, make_rational(-1, 4));
    SuperPolynomial<C> rotated(q.universe());
    for (const auto& [mono, c] : q.terms()) rotated.add_term(mono, c * angle_phase<C>(a, mono.degree()));
    return {laplace_exponential(rotated, make_rational(1, 4)), true};
  }
  PsiExpansion expansion(f.universe(), degree);
  auto coeffs = expansion.expand(f);
  return expansion.reassemble(coeffs, [&](int order) { return angle_phase<C>(a, order); });
}

template <class C>
CValuedPolynomial<C> frac_fourier(const CValuedPolynomial<C>& f, const Angle& a, int cap = 8) {
  return f.map_components([&](const GaussianFunction<C>& g) { return frac_fourier(g, a, cap); });
}

/// Polynomial in z = e^{i alpha} with Gaussian-rational coefficients.
class PhasePoly {
 public:
  PhasePoly() = default;
  PhasePoly(const ComplexRational& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) coeffs_[0] = c;
  }
  PhasePoly(const Rational& c) : PhasePoly(ComplexRational(c)) {}  // NOLINT(google-explicit-constructor)
  static PhasePoly z_power(int k, const ComplexRational& c = ComplexRational(1)) {
    PhasePoly p;
    if (!c.is_zero()) p.coeffs_[k] = c;
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, ComplexRational>& coeffs() const { return coeffs_; }
  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  PhasePoly& operator+=(const PhasePoly& o) {
    for (const auto& [k, c] : o.coeffs_) add(k, c);
    return *this;
  }
  PhasePoly& operator-=(const PhasePoly& o) {
    for (const auto& [k, c] : o.coeffs_) add(k, -c);
    return *this;
  }
  PhasePoly operator-() const {
    PhasePoly r;
    for (const auto& [k, c] : coeffs_) r.coeffs_[k] = -c;
    return r;
  }
  friend PhasePoly operator+(PhasePoly a, const PhasePoly& b) { return a += b; }
  friend PhasePoly operator-(PhasePoly a, const PhasePoly& b) { return a -= b; }
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
    PhasePoly r;
    for (const auto& [i, x] : a.coeffs_)
      for (const auto& [j, y] : b.coeffs_) r.add(i + j, x * y);
    return r;
  }
  bool operator==(const PhasePoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const PhasePoly& o) const { return !(*this == o); }

  /// Exact division by 1 - z^2; throws when it does not divide.
  PhasePoly divide_one_minus_z2() const {
    // p = (1 - z^2) q  =>  q_k = p_k + q_{k-2}
    PhasePoly q;
    std::map<int, ComplexRational> p = coeffs_;
    const int d = degree();
    if (d < 0) return q;
    std::vector<ComplexRational> qc(static_cast<std::size_t>(std::max(0, d - 1)));
    for (int k = 0; k < d - 1; ++k) {
      ComplexRational v = p.count(k) ? p[k] : ComplexRational();
      if (k >= 2) v = v + qc[static_cast<std::size_t>(k - 2)];
      qc[static_cast<std::size_t>(k)] = v;
    }
    for (int k = 0; k < d - 1; ++k) q.add(k, qc[static_cast<std::size_t>(k)]);
    if (q * (PhasePoly(Rational(1)) - z_power(2)) != *this) throw DomainError("kernel numerator not divisible");
    return q;
  }

  ExactScalar evaluate(const ExactScalar& z) const {
    ExactScalar r, power(1);
    int at = 0;
    for (const auto& [k, c] : coeffs_) {
      while (at < k) {
        power = power * z;
        ++at;
      }
      r += ExactScalar(c) * power;
    }
    return r;
  }
  FloatScalar evaluate(FloatScalar z) const {
    FloatScalar r(0, 0);
    for (const auto& [k, c] : coeffs_) r += FloatScalar(c.re.get_d(), c.im.get_d()) * std::pow(z, k);
    return r;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += "(" + ExactScalar(c).to_string() + ")";
      if (k) s += "*z^" + std::to_string(k);
    }
    return s;
  }

 private:
  void add(int k, const ComplexRational& c) {
    ComplexRational v = coeffs_.count(k) ? coeffs_[k] + c : c;
    if (v.is_zero()) coeffs_.erase(k);
    else coeffs_[k] = v;
  }
  std::map<int, ComplexRational> coeffs_;
};

template <>
struct CoeffOps<PhasePoly> {
  static PhasePoly from_rational(const Rational& q) { return PhasePoly(q); }
  static PhasePoly from_exact(const ExactScalar& s) {
    if (!s.is_gaussian_rational()) throw DomainError("kernel coefficient outside Q(i)");
    return PhasePoly(s.as_gaussian_rational());
  }
  static bool is_zero(const PhasePoly& c) { return c.is_zero(); }
  static PhasePoly conj(const PhasePoly&) { throw DomainError("conjugation of phase polynomials"); }
  static PhasePoly i() { return PhasePoly(ComplexRational(0, 1)); }
};

/// Numerator N of the 0|2 kernel exponent N / (2 - 2 z^2) over (x | y) blocks:
///   N = 2 z (y2 x1 - y1 x2) + (1 + z^2)(x1 x2 + y1 y2).
inline SuperPolynomial<PhasePoly> frac02_numerator() {
  auto ux = VariableUniverse::standard(0, 1, "x", "q");
  auto uy = VariableUniverse::standard(0, 1, "y", "r");
  auto both = VariableUniverse::concat(*ux, *uy);
  using P = SuperPolynomial<PhasePoly>;
  auto v = [&](int j) { return P::fermionic_variable(both, j); };
  const PhasePoly two_z = PhasePoly::z_power(1, ComplexRational(2));
  const PhasePoly one_z2 = PhasePoly(Rational(1)) + PhasePoly::z_power(2);
  return two_z * (v(3) * v(0) - v(2) * v(1)) + one_z2 * (v(0) * v(1) + v(2) * v(3));
}

/// 8 (1 - z^2)^2 exp(N / (2 - 2 z^2)) = 8 (1-z^2)^2 + 4 (1-z^2) N + N^2.
inline SuperPolynomial<PhasePoly> frac02_kernel_scaled() {
  auto N = frac02_numerator();
  const PhasePoly d = PhasePoly(Rational(1)) - PhasePoly::z_power(2);
  auto one = SuperPolynomial<PhasePoly>::one(N.universe());
  return (PhasePoly(Rational(8)) * d * d) * one + (PhasePoly(Rational(4)) * d) * N + N * N;
}

/// pi (1 - z^2) int_{B,x} exp(N/(2 - 2z^2)) f(x), as a Lambda_2 element with
/// phase-polynomial coefficients (the 1/(1 - z^2) is divided out exactly).
inline SuperPolynomial<PhasePoly> frac02_symbolic(const SuperPolynomial<ExactScalar>& f) {
  const auto& u = f.universe();
  if (u->n() != 1 || u->m() != 0) throw DomainError("the 0|2 kernel needs a 0|2 universe");
  auto K = frac02_kernel_scaled();
  const auto& both = K.universe();
  SuperPolynomial<PhasePoly> fx(both);
  for (const auto& [mono, c] : f.terms()) fx.add_term(SuperMonomial{{}, mono.fer}, CoeffOps<PhasePoly>::from_exact(c));
  // pi (1-z^2) * pi^{-1} d2 d1 (K/(8(1-z^2)^2)) f = d2 d1 (K f) / (8 (1 - z^2))
  auto integrated = fermionic_derivative(fermionic_derivative(K * fx, 0), 1);
  SuperPolynomial<PhasePoly> out(u);
  for (const auto& [mono, c] : integrated.terms()) {
    PhasePoly q = c.divide_one_minus_z2();
    PhasePoly scaled;
    for (const auto& [k, v] : q.coeffs()) scaled += PhasePoly::z_power(k, v * ComplexRational(make_rational(1, 8)));
    out.add_term(SuperMonomial{{}, mono.fer >> 2}, scaled);
  }
  return out;
}

template <class C>
SuperPolynomial<C> frac02_kernel_apply(const SuperPolynomial<ExactScalar>& f, const Angle& a) {
  auto sym = frac02_symbolic(f);
  SuperPolynomial<C> out(f.universe());
  for (const auto& [mono, c] : sym.terms()) {
    if constexpr (std::is_same_v<C, ExactScalar>) {
      out.add_term(mono, c.evaluate(a.phase_exact(1)));
    } else {
      out.add_term(mono, c.evaluate(a.phase_float(1)));
    }
  }
  return out;
}

/// Largest coefficient modulus of a - b.
inline double max_deviation(const SuperPolynomial<FloatScalar>& a, const SuperPolynomial<FloatScalar>& b) {
  double dev = 0;
  const auto d = a - b;
  for (const auto& [mono, c] : d.terms()) dev = std::max(dev, std::abs(c));
  return dev;
}
inline double max_deviation(const GaussianFunction<FloatScalar>& a, const GaussianFunction<FloatScalar>& b) {
  if (a.envelope != b.envelope) throw DomainError("envelope mismatch");
  return max_deviation(a.poly, b.poly);
}
inline double max_deviation(const CValuedPolynomial<FloatScalar>& a, const CValuedPolynomial<FloatScalar>& b) {
  double dev = 0;
  const auto d = a - b;
  for (const auto& [key, comp] : d.components()) {
    for (const auto& [mono, c] : comp.terms()) dev = std::max(dev, std::abs(c));
  }
  return dev;
}

struct KernelCheckResult {
  double max_deviation = 0;
  double max_quadrature_error = 0;
  int samples = 0;
};

/// m = n = 1: integrates the bosonic Mehler factor numerically at sample
/// points y, applies the 0|2 kernel to the fermionic factor and compares
/// with the spectral transform.
inline KernelCheckResult general_kernel_check(const GaussianFunction<ExactScalar>& f, const Angle& a,
                                              const std::vector<double>& ys) {
  const auto& u = f.universe();
  if (u->m() != 1 || u->n() != 1) throw DomainError("kernel check runs at m = n = 1");
  if (!f.envelope) throw DomainError("envelope missing");
  KernelCheckResult res;
  // spectral reference, fermionic envelope expanded
  auto spectral = frac_fourier(to_float(f), a);
  auto spectral_expanded = spectral.poly * fermionic_exponential<FloatScalar>(u, make_rational(1, 2));
  // input: sum_A p_A(x) exp(-x^2/2) q_A
  auto expanded = f.poly * fermionic_exponential<ExactScalar>(u, make_rational(1, 2));
  std::map<FermionMask, std::map<int, FloatScalar>> bosonic_parts;
  for (const auto& [mono, c] : expanded.terms()) bosonic_parts[mono.fer][mono.bos[0]] += c.to_float();
  auto fu = VariableUniverse::standard(0, 1);

  const FloatScalar z = a.phase_float(1);
  const FloatScalar one_minus = 1.0 - z * z;
  const bool identity = std::abs(one_minus) < 1e-14;
  const FloatScalar pref = std::pow(std::numbers::pi * one_minus, -0.5);
  for (double y : ys) {
    SuperPolynomial<FloatScalar> value(fu);
    for (const auto& [mask, poly] : bosonic_parts) {
      auto p = [&](double x) {
        FloatScalar s(0, 0);
        for (const auto& [e, c] : poly) s += c * std::pow(x, e);
        return s * std::exp(-x * x / 2);
      };
      FloatScalar b;
      if (identity) {
        // a = 0 or +-2: kernel degenerates, F^a acts as identity or parity
        b = p(z.real() > 0 ? y : -y);
      } else {
        auto kernel = [&](double x) {
          return pref * std::exp((4.0 * z * x * y - (1.0 + z * z) * (x * x + y * y)) / (2.0 * one_minus)) * p(x);
        };
        double err_re = 0, err_im = 0;
        double re = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double x) { return kernel(x).real(); }, -14.0, 14.0, 15, 1e-13, &err_re);
        double im = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double x) { return kernel(x).imag(); }, -14.0, 14.0, 15, 1e-13, &err_im);
        res.max_quadrature_error = std::max({res.max_quadrature_error, err_re, err_im});
        b = FloatScalar(re, im);
      }
      SuperPolynomial<ExactScalar> q(fu);
      q.add_term(SuperMonomial{{}, mask}, ExactScalar(1));
      auto img = frac02_kernel_apply<FloatScalar>(q, a);
      value += b * img;
    }
    // reference at y: coefficients of the fermionic monomials times exp(-y^2/2)
    SuperPolynomial<FloatScalar> ref(fu);
    for (const auto& [mono, c] : spectral_expanded.terms())
      ref.add_term(SuperMonomial{{}, mono.fer}, c * std::pow(y, mono.bos[0]) * std::exp(-y * y / 2));
    res.max_deviation = std::max(res.max_deviation, max_deviation(value, ref));
    ++res.samples;
  }
  return res;
}

enum class FracRule {
  DBosonic,        // d/dx_i
  DFermionicEven,  // d/dq_{2i}
  DFermionicOdd,   // d/dq_{2i-1}
  XBosonic,        // x_i
  XFermionicEven,  // q_{2i}
  XFermionicOdd,   // q_{2i-1}
  DiracPlusVector  // d_x + x
};

inline const char* frac_rule_name(FracRule r) {
  switch (r) {
    case FracRule::DBosonic: return "d/dx_i";
    case FracRule::DFermionicEven: return "d/dq_2i";
    case FracRule::DFermionicOdd: return "d/dq_2i-1";
    case FracRule::XBosonic: return "x_i";
    case FracRule::XFermionicEven: return "q_2i";
    case FracRule::XFermionicOdd: return "q_2i-1";
    default: return "d_x + x";
  }
}

/// Deviation between both sides of a fractional calculus rule applied to g
/// (index: zero-based variable index, or pair index for the fermionic rules).
template <class C>
double frac_calculus_deviation(FracRule rule, const Angle& a, const GaussianFunction<C>& g, int index) {
  const double alpha = a.alpha();
  C cs, sn;
  if constexpr (std::is_same_v<C, ExactScalar>) {
    if (!a.rational() || (*a.rational()).get_den() != 1) throw DomainError("exact rules need a in {-1,0,1}");
    const long k = (*a.rational()).get_num().get_si();
    cs = ExactScalar(k == 0 ? 1 : 0);
    sn = ExactScalar(static_cast<int>(k));
  } else {
    cs = std::cos(alpha);
    sn = std::sin(alpha);
  }
  const C i = CoeffOps<C>::i();
  const C half = CoeffOps<C>::from_rational(make_rational(1, 2));
  const C two = CoeffOps<C>::from_rational(Rational(2));
  auto Fg = frac_fourier(g, a);
  auto diff = [&](const GaussianFunction<C>& l, const GaussianFunction<C>& r) -> double {
    if constexpr (std::is_same_v<C, ExactScalar>) {
      return l == r ? 0.0 : max_deviation(to_float(l), to_float(r));
    } else {
      return max_deviation(l, r);
    }
  };
  const int odd = 2 * index, even = 2 * index + 1;  // q_{2i-1}, q_{2i}
  switch (rule) {
    case FracRule::DBosonic:
      return diff(frac_fourier(d_bosonic(g, index), a),
                  cs * d_bosonic(Fg, index) - (i * sn) * mul_bosonic(Fg, index));
    case FracRule::DFermionicEven:
      return diff(frac_fourier(d_fermionic(g, even), a),
                  cs * d_fermionic(Fg, even) - (half * i * sn) * mul_fermionic(Fg, odd));
    case FracRule::DFermionicOdd:
      return diff(frac_fourier(d_fermionic(g, odd), a),
                  cs * d_fermionic(Fg, odd) + (half * i * sn) * mul_fermionic(Fg, even));
    case FracRule::XBosonic:
      return diff(frac_fourier(mul_bosonic(g, index), a),
                  cs * mul_bosonic(Fg, index) - (i * sn) * d_bosonic(Fg, index));
    case FracRule::XFermionicEven:
      return diff(frac_fourier(mul_fermionic(g, even), a),
                  (two * i * sn) * d_fermionic(Fg, odd) + cs * mul_fermionic(Fg, even));
    case FracRule::XFermionicOdd:
      return diff(frac_fourier(mul_fermionic(g, odd), a),
                  cs * mul_fermionic(Fg, odd) - (two * i * sn) * d_fermionic(Fg, even));
    case FracRule::DiracPlusVector: {
      auto cg = CValuedPolynomial<C>::from_scalar(g);
      auto lhs = frac_fourier(dirac_plus_vector(cg), a);
      auto rhs = angle_phase<C>(a, 1) * dirac_plus_vector(CValuedPolynomial<C>::from_scalar(Fg));
      if constexpr (std::is_same_v<C, ExactScalar>) {
        return lhs == rhs ? 0.0 : 1.0;
      } else {
        return max_deviation(lhs, rhs);
      }
    }
  }
  return 0;
}

}  // namespace supertransform
