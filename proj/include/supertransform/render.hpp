#pragma once
// Text, LaTeX and JSON renderings of polynomials and transform results. The
// text form parses back to the same value.

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "supertransform/cliffweyl.hpp"
#include "supertransform/fundsol.hpp"
#include "supertransform/radon.hpp"
#include "supertransform/scalars.hpp"
#include "supertransform/superalg.hpp"

namespace supertransform {

inline constexpr const char* kJsonSchema = "supertransform/1";

/// Symbol names used when printing; defaults to the universe's own.
struct SymbolNames {
  std::vector<std::string> bosonic;
  std::vector<std::string> fermionic;

  static SymbolNames of(const UniverseRef& u) { return {u->bosonic(), u->fermionic()}; }
  /// Same universe with the bosonic family renamed (x -> y for transforms).
  static SymbolNames renamed(const UniverseRef& u, const std::string& bos) {
    SymbolNames s = of(u);
    for (std::size_t i = 0; i < s.bosonic.size(); ++i) s.bosonic[i] = bos + std::to_string(i + 1);
    return s;
  }
};

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string scalar_text(const ExactScalar& c) { return c.to_string(); }

inline std::string scalar_text(const FloatScalar& c) {
  if (c.imag() == 0) return format_double(c.real());
  if (c.real() == 0) {
    if (c.imag() == 1) return "i";
    if (c.imag() == -1) return "-i";
    return format_double(c.imag()) + "*i";
  }
  std::string im = format_double(c.imag());
  if (im[0] != '-') im = "+" + im;
  return "(" + format_double(c.real()) + im + "*i)";
}

// a single complex term already prints with its own parentheses
inline bool needs_parens(const ExactScalar& c) { return c.terms().size() > 1; }
inline bool needs_parens(const FloatScalar&) { return false; }
inline bool is_one(const ExactScalar& c) { return c == ExactScalar(1); }
inline bool is_one(const FloatScalar& c) { return c == FloatScalar(1, 0); }
inline bool is_minus_one(const ExactScalar& c) { return c == ExactScalar(-1); }
inline bool is_minus_one(const FloatScalar& c) { return c == FloatScalar(-1, 0); }

inline std::string monomial_text(const SuperMonomial& mono, const SymbolNames& names) {
  std::string out;
  for (std::size_t i = 0; i < mono.bos.size(); ++i) {
    if (mono.bos[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names.bosonic[i];
    if (mono.bos[i] > 1) out += "^" + std::to_string(mono.bos[i]);
  }
  if (mono.fer) {
    if (!out.empty()) out += "*";
    for (std::size_t j = 0; j < names.fermionic.size(); ++j)
      if (mono.fer & bit(static_cast<int>(j))) out += names.fermionic[j];
  }
  return out;
}

template <class C>
std::string term_text(const C& c, const std::string& mono) {
  if (mono.empty()) return scalar_text(c);
  if (is_one(c)) return mono;
  if (is_minus_one(c)) return "-" + mono;
  if (needs_parens(c)) return "(" + scalar_text(c) + ")*" + mono;
  return scalar_text(c) + "*" + mono;
}

inline void append_signed(std::string& out, const std::string& term) {
  if (out.empty()) {
    out = term;
  } else if (term[0] == '-') {
    out += " - " + term.substr(1);
  } else {
    out += " + " + term;
  }
}

inline std::string rational_latex(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

}  // namespace detail

template <class C>
std::string to_text(const SuperPolynomial<C>& p, const SymbolNames& names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [mono, c] : p.terms()) detail::append_signed(out, detail::term_text(c, detail::monomial_text(mono, names)));
  return out;
}
template <class C>
std::string to_text(const SuperPolynomial<C>& p) {
  return to_text(p, SymbolNames::of(p.universe()));
}

template <class C>
std::string to_text(const GaussianFunction<C>& f, const SymbolNames& names) {
  if (f.poly.is_zero()) return "0";
  if (!f.envelope) return to_text(f.poly, names);
  if (f.poly.size() == 1) {
    const auto& [mono, c] = *f.poly.terms().begin();
    std::string m = detail::monomial_text(mono, names);
    m = m.empty() ? "G" : m + "*G";
    return detail::term_text(c, m);
  }
  return "(" + to_text(f.poly, names) + ")*G";
}
template <class C>
std::string to_text(const GaussianFunction<C>& f) {
  return to_text(f, SymbolNames::of(f.universe()));
}

/// Sum of components, each word written as a product of generators.
template <class C>
std::string to_text(const CValuedPolynomial<C>& f, const SymbolNames& names) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [key, comp] : f.components()) {
    std::string word = cw_key_to_string(key);
    for (auto& ch : word)
      if (ch == ' ') ch = '*';
    std::string body = to_text(comp, names);
    std::string term;
    if (word.empty()) term = comp.size() > 1 ? "(" + body + ")" : body;
    else if (comp.size() == 1 && body == "1") term = word;
    else if (comp.size() == 1 && body == "-1") term = "-" + word;
    else if (comp.size() == 1) term = body + "*" + word;
    else term = "(" + body + ")*" + word;
    detail::append_signed(out, term);
  }
  return f.envelope() ? "(" + out + ")*G" : out;
}

inline std::string to_text(const RadonResult& r) {
  if (r.poly.is_zero()) return "0";
  return "(" + to_text(r.poly) + ")*exp(-p^2/2)";
}

/// "c*r^a*log(r)^s*q1q2" terms of the expanded fundamental solution.
inline std::string to_text(const FundamentalSolution& f) {
  std::string out;
  for (const auto& t : f.terms) {
    const auto gr = f.grassmann_factor(t.fermionic_power);
    const auto radial = t.radial();
    for (const auto& [key, c] : radial.terms())
      for (const auto& [mono, g] : gr.terms()) {
        std::string factor;
        const auto [alpha, s] = key;
        if (alpha == 1) factor = "r";
        else if (alpha > 1) factor = "r^" + std::to_string(alpha);
        else if (alpha < 0) factor = "r^(" + std::to_string(alpha) + ")";
        if (s > 0) factor += std::string(factor.empty() ? "" : "*") + "log(r)" + (s > 1 ? "^" + std::to_string(s) : "");
        std::string fm = detail::monomial_text(mono, SymbolNames::of(gr.universe()));
        if (!fm.empty()) factor += (factor.empty() ? "" : "*") + fm;
        detail::append_signed(out, detail::term_text(c * g, factor));
      }
  }
  return out.empty() ? "0" : out;
}

// LaTeX ---------------------------------------------------------------------

inline std::string to_latex(const ExactScalar& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (const auto& t : c.terms()) {
    auto piece = [&](const Rational& q, bool imaginary) {
      Rational a = q < 0 ? Rational(-q) : q;
      std::string s;
      std::vector<std::string> f;
      if (imaginary) f.emplace_back("i");
      if (t.sqrt2) f.emplace_back("\\sqrt{2}");
      if (t.half_pi_power == 2) f.emplace_back("\\pi");
      else if (t.half_pi_power % 2 == 0 && t.half_pi_power != 0) f.push_back("\\pi^{" + std::to_string(t.half_pi_power / 2) + "}");
      else if (t.half_pi_power != 0) f.push_back("\\pi^{" + std::to_string(t.half_pi_power) + "/2}");
      if (!(a == 1 && !f.empty())) s = detail::rational_latex(a);
      for (const auto& x : f) s += (s.empty() ? "" : " ") + x;
      std::string sign = q < 0 ? "-" : "+";
      if (out.empty()) out = (q < 0 ? "-" : "") + s;
      else out += " " + sign + " " + s;
    };
    if (t.q.re != 0) piece(t.q.re, false);
    if (t.q.im != 0) piece(t.q.im, true);
  }
  return out;
}
inline std::string to_latex(const FloatScalar& c) { return detail::scalar_text(c); }

inline std::string monomial_latex(const SuperMonomial& mono, const SymbolNames& names) {
  auto sym = [](const std::string& name, bool fermionic) {
    std::size_t d = name.find_first_of("0123456789");
    std::string stem = name.substr(0, d), idx = d == std::string::npos ? "" : name.substr(d);
    if (fermionic) stem = "{" + (stem == "q" ? std::string("x") : stem == "wq" ? std::string("\\omega") : stem) + "\\grave{}}";
    else if (stem == "w") stem = "\\omega";
    return idx.empty() ? stem : stem + "_{" + idx + "}";
  };
  std::string out;
  for (std::size_t i = 0; i < mono.bos.size(); ++i) {
    if (mono.bos[i] == 0) continue;
    if (!out.empty()) out += " ";
    out += sym(names.bosonic[i], false);
    if (mono.bos[i] > 1) out += "^{" + std::to_string(mono.bos[i]) + "}";
  }
  for (std::size_t j = 0; j < names.fermionic.size(); ++j)
    if (mono.fer & bit(static_cast<int>(j))) out += (out.empty() ? "" : " ") + sym(names.fermionic[j], true);
  return out;
}

template <class C>
std::string to_latex(const SuperPolynomial<C>& p, const SymbolNames& names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [mono, c] : p.terms()) {
    std::string m = monomial_latex(mono, names);
    std::string cs = to_latex(c);
    std::string term;
    bool compound = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
    if (m.empty()) term = compound ? "\\left(" + cs + "\\right)" : cs;
    else if (cs == "1") term = m;
    else if (cs == "-1") term = "-" + m;
    else term = (compound ? "\\left(" + cs + "\\right)" : cs) + " " + m;
    detail::append_signed(out, term);
  }
  return out;
}

template <class C>
std::string to_latex(const GaussianFunction<C>& f, const SymbolNames& names) {
  std::string body = to_latex(f.poly, names);
  if (!f.envelope || f.poly.is_zero()) return body;
  std::string x = names.bosonic.empty() || names.bosonic[0][0] != 'y' ? "x" : "y";
  return "\\left(" + body + "\\right) e^{" + x + "^2/2}";
}

// JSON ----------------------------------------------------------------------

inline nlohmann::json scalar_json(const ExactScalar& c) {
  auto v = c.to_float();
  return {{"exact", c.to_string()}, {"value", {v.real(), v.imag()}}};
}
inline nlohmann::json scalar_json(const FloatScalar& c) { return {{"value", {c.real(), c.imag()}}}; }

template <class C>
nlohmann::json to_json(const SuperPolynomial<C>& p, const SymbolNames& names) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, c] : p.terms()) {
    std::vector<int> fer;
    for (std::size_t j = 0; j < names.fermionic.size(); ++j)
      if (mono.fer & bit(static_cast<int>(j))) fer.push_back(static_cast<int>(j) + 1);
    nlohmann::json t = scalar_json(c);
    t["bosonic"] = mono.bos;
    t["fermionic"] = fer;
    t["monomial"] = detail::monomial_text(mono, names);
    terms.push_back(t);
  }
  return {{"text", to_text(p, names)}, {"terms", terms}};
}

template <class C>
nlohmann::json to_json(const GaussianFunction<C>& f, const SymbolNames& names) {
  nlohmann::json j = to_json(f.poly, names);
  j["envelope"] = f.envelope;
  j["text"] = to_text(f, names);
  j["latex"] = to_latex(f, names);
  return j;
}

template <class C>
nlohmann::json to_json(const CValuedPolynomial<C>& f, const SymbolNames& names) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& [key, comp] : f.components()) {
    nlohmann::json c = to_json(comp, names);
    c["word"] = cw_key_to_string(key);
    comps.push_back(c);
  }
  return {{"text", to_text(f, names)}, {"envelope", f.envelope()}, {"components", comps}};
}

/// Separate omega and p parts: for every p-power, its omega coefficient.
inline nlohmann::json to_json(const RadonResult& r) {
  nlohmann::json parts = nlohmann::json::array();
  for (int d = 0; d <= r.p_degree(); ++d) {
    auto coeff = r.p_coefficient(d);
    if (coeff.is_zero()) continue;
    parts.push_back({{"p_power", d}, {"omega", to_json(coeff, SymbolNames::of(coeff.universe()))}});
  }
  return {{"text", to_text(r)}, {"envelope", "exp(-p^2/2)"}, {"parts", parts}};
}

inline nlohmann::json to_json(const FundamentalSolution& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f.terms) {
    nlohmann::json radial = nlohmann::json::array();
    const auto rf = t.radial();
    for (const auto& [key, c] : rf.terms())
      radial.push_back({{"r_power", key.first}, {"log_power", key.second}, {"coefficient", scalar_json(c)}});
    terms.push_back({{"k", t.k},
                     {"prefactor", scalar_json(t.prefactor)},
                     {"fermionic_square_power", t.fermionic_power},
                     {"radial", radial}});
  }
  return {{"text", to_text(f)}, {"m", f.m}, {"n", f.n}, {"terms", terms}};
}

}  // namespace supertransform
