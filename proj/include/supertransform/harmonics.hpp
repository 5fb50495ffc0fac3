#pragma once
// Spherical harmonics as exact nullspaces of the Laplacian on homogeneous
// components, the polynomials f_{k,p,q} of the decomposition of H_k, and
// the Fischer decomposition of Grassmann elements.

#include <string>
#include <vector>

#include "supertransform/linalg.hpp"
#include "supertransform/operators.hpp"
#include "supertransform/superalg.hpp"

namespace supertransform {

struct HarmonicBasis {
  int degree = 0;
  Sector sector = Sector::Full;
  std::vector<SuperPolynomial<ExactScalar>> elements;
  std::size_t size() const { return elements.size(); }
};

/// Degree-k monomials belonging to a sector (bosonic: no fermionic factor,
/// fermionic: no bosonic factor).
inline std::vector<SuperMonomial> sector_monomials(const UniverseRef& u, int k, Sector sector) {
  std::vector<SuperMonomial> out;
  for (auto& mono : monomials_of_degree(u, k)) {
    if (sector == Sector::Bosonic && mono.fer != 0) continue;
    if (sector == Sector::Fermionic && mono.bosonic_degree() != 0) continue;
    out.push_back(std::move(mono));
  }
  return out;
}

/// Nullspace of the sector Laplacian restricted to P_k (sector part).
inline HarmonicBasis harmonic_basis(int k, Sector sector, const UniverseRef& u) {
  if (k < 0) throw DomainError("negative degree");
  HarmonicBasis basis{k, sector, {}};
  const auto domain = sector_monomials(u, k, sector);
  MonomialIndex image;
  std::vector<std::map<int, Rational>> columns;
  for (const auto& mono : domain) {
    SuperPolynomial<ExactScalar> p(u);
    p.add_term(mono, ExactScalar(1));
    columns.push_back(rational_coordinates(laplace(p, sector), image));
  }
  std::vector<SparseVector> rows(static_cast<std::size_t>(image.size()));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [r, v] : columns[c]) rows[static_cast<std::size_t>(r)][static_cast<int>(c)] = v;
  RowReduction red(std::move(rows), static_cast<int>(domain.size()), false);
  for (const auto& v : red.nullspace()) {
    SuperPolynomial<ExactScalar> h(u);
    for (const auto& [c, q] : v) h.add_term(domain[static_cast<std::size_t>(c)], ExactScalar(q));
    basis.elements.push_back(std::move(h));
  }
  return basis;
}

/// f_{k,p,q} = sum_i C(k,i) (n-q-i)! / Gamma(m/2+p+k-i) xb^{2k-2i} xf^{2i}
/// with xb^2 = -sum x_i^2 and xf^2 = sum q_{2j-1} q_{2j}. Terms whose
/// factorial argument is negative vanish (xf^{2i} = 0 beyond i = n).
inline SuperPolynomial<ExactScalar> f_poly(int k, int p, int q, const UniverseRef& u) {
  const int m = u->m(), n = u->n();
  SuperPolynomial<ExactScalar> result(u);
  const auto xb = bosonic_square<ExactScalar>(u);
  const auto xf = fermionic_square<ExactScalar>(u);
  for (int i = 0; i <= k; ++i) {
    if (n - q - i < 0) continue;
    ExactScalar coeff = ExactScalar(binomial(k, i) * factorial(n - q - i)) /
                        ExactScalar::gamma_half(m + 2 * (p + k - i));
    result += coeff * (xb.pow(k - i) * xf.pow(i));
  }
  return result;
}

struct DecompositionReport {
  int k = 0;
  int dim_nullspace = 0;        // dim H_k computed directly
  int dim_first_sum = 0;        // sum_i dim H^b_{k-i} dim H^f_i
  int dim_second_sum = 0;       // the f-weighted sum
  int products_checked = 0;
  int products_not_harmonic = 0;
  std::vector<std::string> failures;
  bool dimensions_match() const { return dim_nullspace == dim_first_sum + dim_second_sum; }
  bool ok() const { return dimensions_match() && products_not_harmonic == 0; }
};

/// Verifies the decomposition of H_k: dimension count of both direct sums
/// (bounds taken verbatim) and harmonicity of every f * H^b * H^f product.
inline DecompositionReport decomposition_check(int k, const UniverseRef& u) {
  const int n = u->n();
  DecompositionReport rep;
  rep.k = k;
  rep.dim_nullspace = static_cast<int>(harmonic_basis(k, Sector::Full, u).size());
  std::map<int, HarmonicBasis> hb, hf;
  auto bos = [&](int d) -> const HarmonicBasis& {
    auto it = hb.find(d);
    if (it == hb.end()) it = hb.emplace(d, harmonic_basis(d, Sector::Bosonic, u)).first;
    return it->second;
  };
  auto fer = [&](int d) -> const HarmonicBasis& {
    auto it = hf.find(d);
    if (it == hf.end()) it = hf.emplace(d, harmonic_basis(d, Sector::Fermionic, u)).first;
    return it->second;
  };
  auto check_products = [&](const SuperPolynomial<ExactScalar>& weight, const HarmonicBasis& b,
                            const HarmonicBasis& f, const std::string& label) {
    for (const auto& hbe : b.elements)
      for (const auto& hfe : f.elements) {
        ++rep.products_checked;
        if (!laplace(weight * hbe * hfe).is_zero()) {
          ++rep.products_not_harmonic;
          if (rep.failures.size() < 8) rep.failures.push_back(label);
        }
      }
  };
  for (int i = 0; i <= std::min(n, k); ++i) {
    const auto& b = bos(k - i);
    const auto& f = fer(i);
    rep.dim_first_sum += static_cast<int>(b.size() * f.size());
    check_products(SuperPolynomial<ExactScalar>::one(u), b, f,
                   "H^b_" + std::to_string(k - i) + " x H^f_" + std::to_string(i));
  }
  const int jmax = std::min(n, k - 1) - 1;
  for (int j = 0; j <= jmax; ++j) {
    const int lmax = std::min(n - j, (k - j) / 2);
    for (int l = 1; l <= lmax; ++l) {
      const int bd = k - 2 * l - j;
      const auto& b = bos(bd);
      const auto& f = fer(j);
      rep.dim_second_sum += static_cast<int>(b.size() * f.size());
      SuperPolynomial<ExactScalar> weight(u);
      try {
        weight = f_poly(l, bd, j, u);
      } catch (const DomainError&) {
        rep.products_not_harmonic += static_cast<int>(b.size() * f.size());
        rep.failures.push_back("f_{" + std::to_string(l) + "," + std::to_string(bd) + "," +
                               std::to_string(j) + "} undefined (Gamma pole)");
        continue;
      }
      check_products(weight, b, f,
                     "f_{" + std::to_string(l) + "," + std::to_string(bd) + "," + std::to_string(j) +
                         "} H^b_" + std::to_string(bd) + " x H^f_" + std::to_string(j));
    }
  }
  return rep;
}

/// Fischer decomposition of a purely fermionic homogeneous element:
/// g = sum_j xf^{2j} h_j with h_j fermionic harmonic of degree k - 2j.
inline std::vector<SuperPolynomial<ExactScalar>> fischer_fermionic(
    const SuperPolynomial<ExactScalar>& g, int k) {
  const UniverseRef& u = g.universe();
  const int n = u->n();
  if (k < 0 || k > 2 * n) throw DomainError("degree out of range");
  if (!g.is_homogeneous(k) || !g.is_purely_fermionic())
    throw DomainError("expected a homogeneous Grassmann element");
  const auto xf = fermionic_square<ExactScalar>(u);
  struct Slot {
    int j;
    SuperPolynomial<ExactScalar> h;
  };
  std::vector<Slot> slots;
  MonomialIndex index;
  std::vector<SparseVector> columns;
  for (int j = 0; 2 * j <= k; ++j) {
    for (const auto& h : harmonic_basis(k - 2 * j, Sector::Fermionic, u).elements) {
      columns.push_back(rational_coordinates(xf.pow(j) * h, index));
      slots.push_back({j, h});
    }
  }
  std::map<int, ExactScalar> target;
  for (const auto& [mono, c] : g.terms()) target[index.index(mono)] = c;
  SpanSolver solver(columns, index.size());
  auto coeffs = solver.solve(target);
  std::vector<SuperPolynomial<ExactScalar>> parts(static_cast<std::size_t>(k / 2 + 1),
                                                  SuperPolynomial<ExactScalar>(u));
  for (std::size_t s = 0; s < slots.size(); ++s)
    parts[static_cast<std::size_t>(slots[s].j)] += coeffs[s] * slots[s].h;
  return parts;
}

}  // namespace supertransform
