#pragma once
// Command line front end: one verb per operation, expressions from the
// positional arguments or, when absent, one per line from the input stream.
// Exit codes: 0 ok, 1 domain error, 2 parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "supertransform/expression.hpp"
#include "supertransform/render.hpp"
#include "supertransform/supertransform.hpp"

namespace supertransform::cli {

enum class Format { Text, Json, Latex };
enum class Backend { Auto, Exact, Float };

struct Options {
  int m = 0;
  int n = 1;
  std::string sign = "+";
  std::string angle = "1";
  std::string backend = "auto";
  std::string format = "text";
  std::string sector = "full";
  std::string scope = "full";
  int j = 0;
  int k = 0;
  int l = 0;
  std::vector<std::string> inputs;
};

/// One rendered answer: text and LaTeX lines plus the JSON payload.
struct Rendered {
  std::string text;
  std::string latex;
  nlohmann::json json;
};

namespace detail {

inline FourierSign parse_sign(const std::string& s) {
  if (s == "+" || s == "plus" || s == "+1") return FourierSign::Plus;
  if (s == "-" || s == "minus" || s == "-1") return FourierSign::Minus;
  throw ParseError("sign must be + or -", 0);
}

inline Sector parse_sector(const std::string& s) {
  if (s == "full") return Sector::Full;
  if (s == "bosonic") return Sector::Bosonic;
  if (s == "fermionic") return Sector::Fermionic;
  throw ParseError("sector must be full, bosonic or fermionic", 0);
}

inline Backend parse_backend(const std::string& s) {
  if (s == "auto") return Backend::Auto;
  if (s == "exact") return Backend::Exact;
  if (s == "float") return Backend::Float;
  throw ParseError("backend must be exact or float", 0);
}

template <class C>
Rendered render_function(const GaussianFunction<C>& f, const SymbolNames& names) {
  return {to_text(f, names), to_latex(f, names), to_json(f, names)};
}

inline Rendered render_exact(const GaussianFunction<ExactScalar>& f, const SymbolNames& names, Backend b) {
  if (b == Backend::Float) return render_function(to_float(f), names);
  return render_function(f, names);
}

class Session {
 public:
  explicit Session(const Options& o) : o_(o), u_(VariableUniverse::standard(o.m, o.n)) {}

  Rendered run(const std::string& command, const std::vector<std::string>& args) const {
    auto one = [&]() -> GaussianFunction<ExactScalar> {
      if (args.size() != 1) throw ParseError(command + " takes one expression", 0);
      return parse_expression(args[0], u_);
    };
    const Backend backend = parse_backend(o_.backend);
    const SymbolNames x_names = SymbolNames::of(u_);
    const SymbolNames y_names = SymbolNames::renamed(u_, "y");

    if (command == "normalize") return render_exact(one(), x_names, backend);
    if (command == "fourier") {
      const FourierSign s = parse_sign(o_.sign);
      auto f = one();
      if (!f.envelope) {
        if (u_->m() != 0) throw DomainError("envelope missing");
        return render_exact({fermionic_fourier(f.poly, s), false}, y_names, backend);
      }
      return render_exact(super_fourier(f, s), y_names, backend);
    }
    if (command == "berezin") {
      auto f = one();
      if (f.envelope) {
        auto b = berezin(f);
        return render_exact(b, SymbolNames::of(b.universe()), backend);
      }
      auto b = berezin(f.poly);
      return render_exact({b, false}, x_names, backend);
    }
    if (command == "laplace") return render_exact(laplace(one(), parse_sector(o_.sector)), x_names, backend);
    if (command == "euler") return render_exact(euler(one()), x_names, backend);
    if (command == "d2") return render_exact(scalar_square(one()), x_names, backend);
    if (command == "dirac") {
      auto d = dirac_apply(one());
      if (backend == Backend::Float) {
        CValuedPolynomial<FloatScalar> fl(d.universe(), d.envelope());
        for (const auto& [key, comp] : d.components())
          fl.add_component(key, to_float(GaussianFunction<ExactScalar>{comp, false}).poly);
        return {to_text(fl, x_names), to_text(fl, x_names), to_json(fl, x_names)};
      }
      return {to_text(d, x_names), to_text(d, x_names), to_json(d, x_names)};
    }
    if (command == "fracfourier") {
      Angle a = Angle::parse(o_.angle);
      auto f = one();
      bool exact = a.has_exact_phase() && backend != Backend::Float;
      if (backend == Backend::Exact && !a.has_exact_phase())
        throw DomainError("angle has no exact phase; use --backend float");
      if (exact) return render_function(frac_fourier(f, a), y_names);
      return render_function(frac_fourier(to_float(f), a), y_names);
    }
    if (command == "radon") {
      auto r = radon(one());
      nlohmann::json j = to_json(r);
      return {to_text(r), to_latex(r.poly, SymbolNames::of(r.poly.universe())) + " e^{-p^2/2}", j};
    }
    if (command == "fundsol") {
      if (!args.empty()) throw ParseError("fundsol takes no expression", 0);
      auto f = super_fundamental_solution(o_.m, o_.n);
      if (!verify_harmonic_away_from_origin(f)) throw DomainError("fundamental solution failed verification");
      return {to_text(f), to_text(f), to_json(f)};
    }
    if (command == "parseval") {
      if (args.size() != 2) throw ParseError("parseval takes two expressions", 0);
      auto f = parse_expression(args[0], u_), g = parse_expression(args[1], u_);
      ParsevalScope scope = o_.scope == "fermionic" ? ParsevalScope::Fermionic : ParsevalScope::Full;
      if (u_->m() == 0 && !f.envelope && !g.envelope) scope = ParsevalScope::Fermionic;
      if (o_.scope != "full" && o_.scope != "fermionic") throw ParseError("scope must be full or fermionic", 0);
      auto r = parseval_check(f, g, parse_sign(o_.sign), scope);
      std::string text = "lhs = " + r.lhs.to_string() + "; rhs = " + r.rhs.to_string() +
                         "; holds = " + (r.holds() ? "true" : "false");
      return {text, to_latex(r.lhs) + " = " + to_latex(r.rhs),
              {{"lhs", scalar_json(r.lhs)}, {"rhs", scalar_json(r.rhs)}, {"holds", r.holds()}}};
    }
    if (command == "hermite") {
      if (!args.empty()) throw ParseError("hermite takes no expression", 0);
      auto basis = harmonic_basis(o_.k, Sector::Full, u_);
      if (o_.l < 0 || o_.l >= static_cast<int>(basis.size())) throw DomainError("harmonic index out of range");
      auto psi = psi_basis(o_.j, o_.k, o_.l, u_);
      auto psi_tilde = psi_tilde_function(o_.j, basis.elements[static_cast<std::size_t>(o_.l)]);
      nlohmann::json explicit_json = nullptr;
      std::string explicit_text = "pole";
      try {
        auto c = ch_explicit(o_.j, u_->super_dimension(), o_.k);
        explicit_json = nlohmann::json::array();
        explicit_text.clear();
        for (const auto& v : c) {
          explicit_json.push_back(scalar_json(v));
          explicit_text += (explicit_text.empty() ? "" : ", ") + v.to_string();
        }
        explicit_text = "[" + explicit_text + "]";
      } catch (const DomainError&) {
      }
      std::string text = "harmonic = " + to_text(basis.elements[static_cast<std::size_t>(o_.l)], x_names) +
                         "\npsi = " + to_text(psi, x_names) + "\npsi_tilde = " + to_text(psi_tilde, x_names) +
                         "\nexplicit = " + explicit_text;
      return {text, to_latex(psi, x_names),
              {{"j", o_.j}, {"k", o_.k}, {"l", o_.l},
               {"harmonic", to_json(basis.elements[static_cast<std::size_t>(o_.l)], x_names)},
               {"psi", to_json(psi, x_names)}, {"psi_tilde", to_json(psi_tilde, x_names)},
               {"explicit", explicit_json}}};
    }
    if (command == "decompose") {
      if (!args.empty()) throw ParseError("decompose takes no expression", 0);
      auto rep = decomposition_check(o_.k, u_);
      auto basis = harmonic_basis(o_.k, Sector::Full, u_);
      nlohmann::json elems = nlohmann::json::array();
      std::string text = "k = " + std::to_string(rep.k) + "; dim = " + std::to_string(rep.dim_nullspace) +
                         "; sums = " + std::to_string(rep.dim_first_sum) + " + " + std::to_string(rep.dim_second_sum) +
                         "; products not harmonic = " + std::to_string(rep.products_not_harmonic) + "/" +
                         std::to_string(rep.products_checked) + "; ok = " + (rep.ok() ? "true" : "false");
      for (const auto& h : basis.elements) {
        elems.push_back(to_json(h, x_names));
        text += "\n  " + to_text(h, x_names);
      }
      for (const auto& f : rep.failures) text += "\n  failure: " + f;
      return {text, text,
              {{"k", rep.k}, {"dim", rep.dim_nullspace}, {"first_sum", rep.dim_first_sum},
               {"second_sum", rep.dim_second_sum}, {"products_checked", rep.products_checked},
               {"products_not_harmonic", rep.products_not_harmonic}, {"ok", rep.ok()},
               {"failures", rep.failures}, {"basis", elems}}};
    }
    throw ParseError("unknown command '" + command + "'", 0);
  }

 private:
  Options o_;
  UniverseRef u_;
};

inline bool takes_expressions(const std::string& command) {
  return command != "fundsol" && command != "hermite" && command != "decompose";
}

}  // namespace detail

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"normalize", "fourier", "berezin", "laplace", "dirac",
                                              "euler", "d2", "hermite", "decompose", "fracfourier",
                                              "radon", "fundsol", "parseval"};
  return names;
}

/// Runs one invocation; returns the process exit code.
inline int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact super Fourier, fractional Fourier and Radon transforms", "supertransform"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--m", o.m, "bosonic dimension")->check(CLI::Range(0, 16));
  app.add_option("--n", o.n, "half the number of fermionic variables")->check(CLI::Range(0, 16));
  app.add_option("--backend", o.backend, "exact|float (fracfourier picks automatically by default)");
  app.add_option("--format", o.format, "text|json|latex")->check(CLI::IsMember({"text", "json", "latex"}));

  std::vector<CLI::App*> subs;
  for (const auto& name : commands()) {
    CLI::App* s = app.add_subcommand(name);
    subs.push_back(s);
    if (name == "fourier" || name == "parseval") s->add_option("--sign", o.sign, "+ or -");
    if (name == "fracfourier") s->add_option("--a", o.angle, "angle in [-1,1], rational or decimal");
    if (name == "laplace") s->add_option("--sector", o.sector, "full|bosonic|fermionic");
    if (name == "parseval") s->add_option("--scope", o.scope, "full|fermionic");
    if (name == "hermite") {
      s->add_option("--j", o.j);
      s->add_option("--k", o.k);
      s->add_option("--l", o.l);
    }
    if (name == "decompose") s->add_option("--k", o.k);
    if (detail::takes_expressions(name)) s->add_option("expr", o.inputs, "expression(s); read from input when absent");
  }

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  if (!args.empty()) args.pop_back();  // program name
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string command;
  for (auto* s : subs)
    if (s->parsed()) command = s->get_name();
  const Format format = o.format == "json" ? Format::Json : o.format == "latex" ? Format::Latex : Format::Text;

  // batch input: one expression per line (parseval: "f ; g")
  std::vector<std::vector<std::string>> jobs;
  if (!o.inputs.empty() || !detail::takes_expressions(command)) {
    jobs.push_back(o.inputs);
  } else {
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (command == "parseval") {
        auto cut = line.find(';');
        if (cut == std::string::npos) jobs.push_back({line});
        else jobs.push_back({line.substr(0, cut), line.substr(cut + 1)});
      } else {
        jobs.push_back({line});
      }
    }
  }

  int code = 0;
  detail::Session session(o);
  for (const auto& job : jobs) {
    try {
      Rendered r = session.run(command, job);
      if (format == Format::Json) {
        nlohmann::json j{{"schema", kJsonSchema}, {"command", command}, {"m", o.m}, {"n", o.n}, {"result", r.json}};
        if (command == "fourier" || command == "parseval") j["sign"] = o.sign;
        if (command == "fracfourier") j["a"] = o.angle;
        if (!job.empty()) j["input"] = job;
        out << j.dump() << "\n";
      } else {
        out << (format == Format::Latex ? r.latex : r.text) << "\n";
      }
    } catch (const ParseError& e) {
      err << "parse error: " << e.what() << "\n";
      code = std::max(code, 2);
    } catch (const DomainError& e) {
      err << "domain error: " << e.what() << "\n";
      code = std::max(code, 1);
    }
  }
  return code;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace supertransform::cli
