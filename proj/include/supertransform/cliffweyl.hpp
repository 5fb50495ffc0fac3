#pragma once
// Clifford-Weyl coefficient algebra: orthogonal generators e_1..e_m with
// e_j e_k + e_k e_j = -2 delta_jk, symplectic generators f_1..f_2n (the
// e`_j) with f_{2j-1} f_{2k} - f_{2k} f_{2j-1} = delta_jk, e's
// anticommuting with f's. Elements are kept in the normal order
//   e_{i1} e_{i2} ... (ascending)  f_1^{a_1} f_2^{a_2} ... f_2n^{a_2n}.
// Polynomials with such coefficients (C-valued functions) are stored as
// a map from normal-ordered generator words to scalar super-polynomials,
// which is legitimate because generators commute with all variables.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "supertransform/linalg.hpp"
#include "supertransform/operators.hpp"
#include "supertransform/superalg.hpp"

namespace supertransform {

struct CWKey {
  std::uint32_t e_mask = 0;
  std::vector<int> weyl;  // exponents of f_1..f_2n

  int weyl_degree() const {
    int d = 0;
    for (int a : weyl) d += a;
    return d;
  }
  int clifford_degree() const { return std::popcount(e_mask); }
  bool is_unit() const { return e_mask == 0 && weyl_degree() == 0; }

  bool operator==(const CWKey& o) const { return e_mask == o.e_mask && weyl == o.weyl; }
  bool operator<(const CWKey& o) const {
    if (clifford_degree() + weyl_degree() != o.clifford_degree() + o.weyl_degree())
      return clifford_degree() + weyl_degree() < o.clifford_degree() + o.weyl_degree();
    if (e_mask != o.e_mask) return e_mask < o.e_mask;
    return weyl > o.weyl;
  }
};

/// Shape (m, n) of a Clifford-Weyl algebra.
struct CWShape {
  int m = 0;
  int n = 0;
  bool operator==(const CWShape& o) const { return m == o.m && n == o.n; }
  CWKey unit() const { return CWKey{0, std::vector<int>(static_cast<std::size_t>(2 * n), 0)}; }
};

/// Product of two normal-ordered words as an integer combination of words.
inline std::vector<std::pair<CWKey, Rational>> cw_word_product(const CWKey& a, const CWKey& b) {
  if (a.weyl.size() != b.weyl.size()) throw DomainError("shape mismatch");
  int sign = 1;
  // moving the f-part of `a` past the e-part of `b`
  if ((a.weyl_degree() * b.clifford_degree()) % 2) sign = -sign;
  // e_A e_B
  int inversions = 0;
  for (std::uint32_t rest = b.e_mask; rest; rest &= rest - 1) {
    int j = std::countr_zero(rest);
    inversions += std::popcount(a.e_mask >> (j + 1));
  }
  inversions += std::popcount(a.e_mask & b.e_mask);  // e_j^2 = -1
  if (inversions % 2) sign = -sign;
  const std::uint32_t mask = a.e_mask ^ b.e_mask;

  // Weyl part, pair by pair: (p^a q^b)(p^c q^d) = sum_r (-1)^r C(b,r) C(c,r) r! p^{a+c-r} q^{b+d-r}
  std::vector<std::pair<std::vector<int>, Rational>> partial{{{}, Rational(sign)}};
  const std::size_t pairs = a.weyl.size() / 2;
  for (std::size_t j = 0; j < pairs; ++j) {
    const int pa = a.weyl[2 * j], qa = a.weyl[2 * j + 1];
    const int pc = b.weyl[2 * j], qd = b.weyl[2 * j + 1];
    std::vector<std::pair<std::vector<int>, Rational>> next;
    for (int r = 0; r <= std::min(qa, pc); ++r) {
      Rational c = binomial(qa, r) * binomial(pc, r) * factorial(r);
      if (r % 2) c = -c;
      for (const auto& [exps, coeff] : partial) {
        std::vector<int> e = exps;
        e.push_back(pa + pc - r);
        e.push_back(qa + qd - r);
        next.emplace_back(std::move(e), coeff * c);
      }
    }
    partial = std::move(next);
  }
  std::vector<std::pair<CWKey, Rational>> out;
  out.reserve(partial.size());
  for (auto& [exps, coeff] : partial) out.emplace_back(CWKey{mask, std::move(exps)}, coeff);
  return out;
}

template <class C>
class CWElement {
 public:
  using TermMap = std::map<CWKey, C>;

  CWElement() = default;
  explicit CWElement(CWShape shape) : shape_(shape) {}

  static CWElement scalar(CWShape shape, const C& c) {
    CWElement r(shape);
    r.add_term(shape.unit(), c);
    return r;
  }
  /// e_i (zero-based).
  static CWElement e(CWShape shape, int i) {
    if (i < 0 || i >= shape.m) throw DomainError("generator index out of range");
    CWKey k = shape.unit();
    k.e_mask = std::uint32_t{1} << i;
    CWElement r(shape);
    r.add_term(k, CoeffOps<C>::from_rational(1));
    return r;
  }
  /// Symplectic generator f_j (zero-based), written e`_{j+1} in one-based notation.
  static CWElement f(CWShape shape, int j) {
    if (j < 0 || j >= 2 * shape.n) throw DomainError("generator index out of range");
    CWKey k = shape.unit();
    k.weyl[static_cast<std::size_t>(j)] = 1;
    CWElement r(shape);
    r.add_term(k, CoeffOps<C>::from_rational(1));
    return r;
  }

  const CWShape& shape() const { return shape_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const CWKey& k, const C& c) {
    if (CoeffOps<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (CoeffOps<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  CWElement& operator+=(const CWElement& o) {
    if (!(shape_ == o.shape_)) throw DomainError("shape mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  CWElement& operator-=(const CWElement& o) {
    if (!(shape_ == o.shape_)) throw DomainError("shape mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  CWElement operator-() const {
    CWElement r(shape_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  friend CWElement operator+(CWElement a, const CWElement& b) { return a += b; }
  friend CWElement operator-(CWElement a, const CWElement& b) { return a -= b; }
  friend CWElement operator*(const CWElement& a, const CWElement& b) {
    if (!(a.shape_ == b.shape_)) throw DomainError("shape mismatch");
    CWElement r(a.shape_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        for (const auto& [k, q] : cw_word_product(ka, kb))
          r.add_term(k, CoeffOps<C>::from_rational(q) * (ca * cb));
    return r;
  }
  friend CWElement operator*(const C& s, const CWElement& a) {
    CWElement r(a.shape_);
    for (const auto& [k, c] : a.terms_) r.add_term(k, s * c);
    return r;
  }
  bool operator==(const CWElement& o) const { return shape_ == o.shape_ && terms_ == o.terms_; }
  bool operator!=(const CWElement& o) const { return !(*this == o); }

 private:
  CWShape shape_;
  TermMap terms_;
};

/// cw_mul on elements.
template <class C>
CWElement<C> cw_mul(const CWElement<C>& a, const CWElement<C>& b) {
  return a * b;
}

/// Generator word "e1 e2 f1^2"; empty string for the unit.
inline std::string cw_key_to_string(const CWKey& k) {
  std::string out;
  auto put = [&](const std::string& s) {
    if (!out.empty()) out += ' ';
    out += s;
  };
  for (std::uint32_t rest = k.e_mask; rest; rest &= rest - 1)
    put("e" + std::to_string(std::countr_zero(rest) + 1));
  for (std::size_t j = 0; j < k.weyl.size(); ++j) {
    if (k.weyl[j] == 0) continue;
    std::string g = "f" + std::to_string(j + 1);
    if (k.weyl[j] > 1) g += "^" + std::to_string(k.weyl[j]);
    put(g);
  }
  return out;
}

/// A function sum_K P_K(x) [exp(x^2/2)] * w_K with generator words w_K.
template <class C>
class CValuedPolynomial {
 public:
  using ComponentMap = std::map<CWKey, SuperPolynomial<C>>;

  CValuedPolynomial() = default;
  CValuedPolynomial(UniverseRef u, bool envelope) : universe_(std::move(u)), envelope_(envelope) {}

  static CValuedPolynomial from_scalar(const GaussianFunction<C>& f) {
    CValuedPolynomial r(f.universe(), f.envelope);
    r.add_component(r.shape().unit(), f.poly);
    return r;
  }
  static CValuedPolynomial from_scalar(const SuperPolynomial<C>& p) {
    return from_scalar(GaussianFunction<C>{p, false});
  }

  const UniverseRef& universe() const { return universe_; }
  bool envelope() const { return envelope_; }
  CWShape shape() const { return {universe_->m(), universe_->n()}; }
  const ComponentMap& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }

  void add_component(const CWKey& k, const SuperPolynomial<C>& p) {
    if (p.is_zero()) return;
    auto it = components_.find(k);
    if (it == components_.end()) {
      components_.emplace(k, p);
      return;
    }
    it->second += p;
    if (it->second.is_zero()) components_.erase(it);
  }

  /// Coefficient of the unit word.
  GaussianFunction<C> scalar_part() const {
    auto it = components_.find(shape().unit());
    return {it == components_.end() ? SuperPolynomial<C>(universe_) : it->second, envelope_};
  }
  bool is_scalar() const {
    return components_.empty() || (components_.size() == 1 && components_.begin()->first.is_unit());
  }

  /// Apply a scalar operator to every component.
  template <class Op>
  CValuedPolynomial map_components(Op&& op) const {
    CValuedPolynomial r(universe_, envelope_);
    for (const auto& [k, p] : components_) {
      GaussianFunction<C> g = op(GaussianFunction<C>{p, envelope_});
      r.envelope_ = g.envelope;
      r.add_component(k, g.poly);
    }
    return r;
  }

  /// Left multiplication by a constant Clifford-Weyl element.
  friend CValuedPolynomial operator*(const CWElement<C>& w, const CValuedPolynomial& f) {
    CValuedPolynomial r(f.universe_, f.envelope_);
    for (const auto& [kw, cw] : w.terms())
      for (const auto& [kf, p] : f.components_)
        for (const auto& [k, q] : cw_word_product(kw, kf))
          r.add_component(k, (CoeffOps<C>::from_rational(q) * cw) * p);
    return r;
  }
  /// Left multiplication by a scalar polynomial (no envelope).
  friend CValuedPolynomial operator*(const SuperPolynomial<C>& s, const CValuedPolynomial& f) {
    CValuedPolynomial r(f.universe_, f.envelope_);
    for (const auto& [k, p] : f.components_) r.add_component(k, s * p);
    return r;
  }
  friend CValuedPolynomial operator*(const C& s, const CValuedPolynomial& f) {
    CValuedPolynomial r(f.universe_, f.envelope_);
    for (const auto& [k, p] : f.components_) r.add_component(k, s * p);
    return r;
  }
  /// Product of two C-valued functions (at most one may carry the envelope).
  friend CValuedPolynomial operator*(const CValuedPolynomial& a, const CValuedPolynomial& b) {
    if (a.envelope_ && b.envelope_) throw DomainError("product of two Gaussian envelopes");
    CValuedPolynomial r(a.universe_, a.envelope_ || b.envelope_);
    for (const auto& [ka, pa] : a.components_)
      for (const auto& [kb, pb] : b.components_) {
        SuperPolynomial<C> prod = pa * pb;
        for (const auto& [k, q] : cw_word_product(ka, kb))
          r.add_component(k, CoeffOps<C>::from_rational(q) * prod);
      }
    return r;
  }

  CValuedPolynomial& operator+=(const CValuedPolynomial& o) {
    if (!same_universe(universe_, o.universe_)) throw DomainError("universe mismatch");
    if (envelope_ != o.envelope_ && !o.is_zero() && !is_zero()) throw DomainError("envelope mismatch");
    if (is_zero()) envelope_ = o.envelope_;
    for (const auto& [k, p] : o.components_) add_component(k, p);
    return *this;
  }
  CValuedPolynomial& operator-=(const CValuedPolynomial& o) {
    return *this += CoeffOps<C>::from_rational(-1) * o;
  }
  friend CValuedPolynomial operator+(CValuedPolynomial a, const CValuedPolynomial& b) { return a += b; }
  friend CValuedPolynomial operator-(CValuedPolynomial a, const CValuedPolynomial& b) { return a -= b; }

  bool operator==(const CValuedPolynomial& o) const {
    if (is_zero() && o.is_zero()) return true;
    return envelope_ == o.envelope_ && same_universe(universe_, o.universe_) &&
           components_ == o.components_;
  }
  bool operator!=(const CValuedPolynomial& o) const { return !(*this == o); }

 private:
  UniverseRef universe_;
  bool envelope_ = false;
  ComponentMap components_;
};

/// Dirac operator d_x = 2 sum_j (f_{2j} d/dq_{2j-1} - f_{2j-1} d/dq_{2j}) - sum_j e_j d/dx_j.
template <class C>
CValuedPolynomial<C> dirac_apply(const CValuedPolynomial<C>& f) {
  const CWShape shape = f.shape();
  const C two = CoeffOps<C>::from_rational(2);
  const C minus_two = CoeffOps<C>::from_rational(-2);
  const C minus_one = CoeffOps<C>::from_rational(-1);
  CValuedPolynomial<C> r(f.universe(), f.envelope());
  for (int j = 0; j < shape.n; ++j) {
    auto d_odd = f.map_components([&](const GaussianFunction<C>& g) { return d_fermionic(g, 2 * j); });
    auto d_even = f.map_components([&](const GaussianFunction<C>& g) { return d_fermionic(g, 2 * j + 1); });
    r += two * (CWElement<C>::f(shape, 2 * j + 1) * d_odd);
    r += minus_two * (CWElement<C>::f(shape, 2 * j) * d_even);
  }
  for (int i = 0; i < shape.m; ++i) {
    auto d = f.map_components([&](const GaussianFunction<C>& g) { return d_bosonic(g, i); });
    r += minus_one * (CWElement<C>::e(shape, i) * d);
  }
  return r;
}

template <class C>
CValuedPolynomial<C> dirac_apply(const GaussianFunction<C>& f) {
  return dirac_apply(CValuedPolynomial<C>::from_scalar(f));
}

/// The vector variable x = sum x_i e_i + sum q_j f_j as a C-valued polynomial.
template <class C>
CValuedPolynomial<C> vector_variable(const UniverseRef& u) {
  const CWShape shape{u->m(), u->n()};
  CValuedPolynomial<C> r(u, false);
  for (int i = 0; i < u->m(); ++i) {
    CWKey k = shape.unit();
    k.e_mask = std::uint32_t{1} << i;
    r.add_component(k, SuperPolynomial<C>::bosonic_variable(u, i));
  }
  for (int j = 0; j < u->fermionic_count(); ++j) {
    CWKey k = shape.unit();
    k.weyl[static_cast<std::size_t>(j)] = 1;
    r.add_component(k, SuperPolynomial<C>::fermionic_variable(u, j));
  }
  return r;
}

/// Left multiplication by the vector variable x.
template <class C>
CValuedPolynomial<C> vector_mul(const CValuedPolynomial<C>& f) {
  const CWShape shape = f.shape();
  const UniverseRef& u = f.universe();
  CValuedPolynomial<C> r(u, f.envelope());
  for (int i = 0; i < shape.m; ++i)
    r += SuperPolynomial<C>::bosonic_variable(u, i) * (CWElement<C>::e(shape, i) * f);
  for (int j = 0; j < 2 * shape.n; ++j)
    r += SuperPolynomial<C>::fermionic_variable(u, j) * (CWElement<C>::f(shape, j) * f);
  return r;
}

/// (d_x + x) applied once.
template <class C>
CValuedPolynomial<C> dirac_plus_vector(const CValuedPolynomial<C>& f) {
  return dirac_apply(f) + vector_mul(f);
}

/// Componentwise Euler operator and Laplacian.
template <class C>
CValuedPolynomial<C> euler(const CValuedPolynomial<C>& f) {
  return f.map_components([](const GaussianFunction<C>& g) { return euler(g); });
}
template <class C>
CValuedPolynomial<C> laplace(const CValuedPolynomial<C>& f) {
  return f.map_components([](const GaussianFunction<C>& g) { return laplace(g); });
}

enum class PowerRuleVariant { DiracEven, DiracOdd, Laplace };

/// Checks one of the three identities
///   d_x(x^{2s} R)   = 2s x^{2s-1} R + x^{2s} d_x R
///   d_x(x^{2s+1} R) = (2k+M+2s) x^{2s} R - x^{2s+1} d_x R
///   Delta(x^{2s} R) = 2s(2k+M+2s-2) x^{2s-2} R + x^{2s} Delta R
/// for R homogeneous of degree k.
template <class C>
bool power_rule_check(int s, const CValuedPolynomial<C>& R, int k, PowerRuleVariant variant) {
  const UniverseRef& u = R.universe();
  const int M = u->super_dimension();
  const SuperPolynomial<C> x2 = vector_square<C>(u);
  auto x2pow = [&](int e) { return x2.pow(e); };
  auto C_ = [](long v) { return CoeffOps<C>::from_rational(v); };
  for (const auto& [key, p] : R.components())
    if (!p.is_homogeneous(k)) throw DomainError("R is not homogeneous of the stated degree");
  switch (variant) {
    case PowerRuleVariant::DiracEven: {
      auto lhs = dirac_apply(x2pow(s) * R);
      CValuedPolynomial<C> rhs = x2pow(s) * dirac_apply(R);
      if (s > 0) rhs += C_(2L * s) * vector_mul(x2pow(s - 1) * R);
      return lhs == rhs;
    }
    case PowerRuleVariant::DiracOdd: {
      auto lhs = dirac_apply(vector_mul(x2pow(s) * R));
      auto rhs = C_(2L * k + M + 2L * s) * (x2pow(s) * R) -
                 vector_mul(x2pow(s) * dirac_apply(R));
      return lhs == rhs;
    }
    case PowerRuleVariant::Laplace: {
      auto lhs = laplace(x2pow(s) * R);
      CValuedPolynomial<C> rhs = x2pow(s) * laplace(R);
      if (s > 0) rhs += C_(2L * s * (2L * k + M + 2L * s - 2)) * (x2pow(s - 1) * R);
      return lhs == rhs;
    }
  }
  return false;
}

/// Basis of spherical monogenics of degree k: polynomials homogeneous of
/// degree k with coefficient words of Weyl order <= weyl_cap, annihilated
/// by the Dirac operator.
inline std::vector<CValuedPolynomial<ExactScalar>> monogenic_basis(const UniverseRef& u, int k,
                                                                   int weyl_cap) {
  const CWShape shape{u->m(), u->n()};
  std::vector<CWKey> words;
  {
    // every e-mask, every Weyl multi-index of total order <= cap
    std::vector<std::vector<int>> weyls{{}};
    for (int j = 0; j < 2 * shape.n; ++j) {
      std::vector<std::vector<int>> next;
      for (const auto& w : weyls) {
        int used = 0;
        for (int a : w) used += a;
        for (int a = 0; a + used <= weyl_cap; ++a) {
          auto e = w;
          e.push_back(a);
          next.push_back(std::move(e));
        }
      }
      weyls = std::move(next);
    }
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << shape.m); ++mask)
      for (const auto& w : weyls) words.push_back(CWKey{mask, w});
  }
  const auto monos = monomials_of_degree(u, k);
  struct Column {
    SuperMonomial mono;
    CWKey word;
  };
  std::vector<Column> columns;
  for (const auto& mono : monos)
    for (const auto& w : words) columns.push_back({mono, w});

  std::map<std::pair<SuperMonomial, CWKey>, int> image_index;
  std::vector<SparseVector> rows;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    SuperPolynomial<ExactScalar> p(u);
    p.add_term(columns[c].mono, ExactScalar(1));
    CValuedPolynomial<ExactScalar> f(u, false);
    f.add_component(columns[c].word, p);
    auto image = dirac_apply(f);
    for (const auto& [word, poly] : image.components()) {
      for (const auto& [mono, coeff] : poly.terms()) {
        auto key = std::make_pair(mono, word);
        auto [it, inserted] = image_index.try_emplace(key, static_cast<int>(rows.size()));
        if (inserted) rows.emplace_back();
        rows[static_cast<std::size_t>(it->second)][static_cast<int>(c)] = coeff.as_rational();
      }
    }
  }
  RowReduction red(std::move(rows), static_cast<int>(columns.size()), false);
  std::vector<CValuedPolynomial<ExactScalar>> basis;
  for (const auto& v : red.nullspace()) {
    CValuedPolynomial<ExactScalar> f(u, false);
    for (const auto& [c, q] : v) {
      SuperPolynomial<ExactScalar> p(u);
      p.add_term(columns[static_cast<std::size_t>(c)].mono, ExactScalar(q));
      f.add_component(columns[static_cast<std::size_t>(c)].word, p);
    }
    basis.push_back(std::move(f));
  }
  return basis;
}

/// phi_{j} = (d_x + x)^j M exp(x^2/2).
template <class C>
CValuedPolynomial<C> phi_function(int j, const CValuedPolynomial<C>& monogenic) {
  CValuedPolynomial<C> f = monogenic;
  if (!f.envelope()) {
    CValuedPolynomial<C> g(f.universe(), true);
    for (const auto& [k, p] : f.components()) g.add_component(k, p);
    f = std::move(g);
  }
  for (int s = 0; s < j; ++s) f = dirac_plus_vector(f);
  return f;
}

}  // namespace supertransform
