#pragma once
// Super-polynomials over commuting (bosonic) and anticommuting (fermionic)
// variables, the Gaussian function class P(x) exp(x^2/2), and the basic
// structures built from them: x^2, the pairing <x,y>, fermionic/bosonic
// partial derivatives.
//
// Sign conventions:
//  * monomials store fermionic factors in ascending index order; products
//    pick up (-1)^{#inversions} when merging two ordered factor lists;
//  * fermionic partials are left derivatives:
//      d/dq_j (q_A) = (-1)^{#{i in A : i < j}} q_{A \ {j}}.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "supertransform/scalars.hpp"

namespace supertransform {

class VariableUniverse;
using UniverseRef = std::shared_ptr<const VariableUniverse>;

class VariableUniverse {
 public:
  VariableUniverse(std::vector<std::string> bosonic, std::vector<std::string> fermionic)
      : bosonic_(std::move(bosonic)), fermionic_(std::move(fermionic)) {
    if (fermionic_.size() % 2 != 0) throw DomainError("fermionic variable count must be even");
    if (fermionic_.size() > 64) throw DomainError("at most 64 fermionic variables");
  }

  /// x1..xm, q1..q2n (or other prefixes).
  static UniverseRef standard(int m, int n, const std::string& bos_prefix = "x",
                              const std::string& fer_prefix = "q") {
    if (m < 0 || n < 0) throw DomainError("negative dimension");
    std::vector<std::string> b, f;
    for (int i = 1; i <= m; ++i) b.push_back(bos_prefix + std::to_string(i));
    for (int j = 1; j <= 2 * n; ++j) f.push_back(fer_prefix + std::to_string(j));
    return std::make_shared<const VariableUniverse>(std::move(b), std::move(f));
  }

  /// Bosonic and fermionic symbols of `a` followed by those of `b`.
  static UniverseRef concat(const VariableUniverse& a, const VariableUniverse& b) {
    std::vector<std::string> bos = a.bosonic_, fer = a.fermionic_;
    bos.insert(bos.end(), b.bosonic_.begin(), b.bosonic_.end());
    fer.insert(fer.end(), b.fermionic_.begin(), b.fermionic_.end());
    return std::make_shared<const VariableUniverse>(std::move(bos), std::move(fer));
  }

  int m() const { return static_cast<int>(bosonic_.size()); }
  int fermionic_count() const { return static_cast<int>(fermionic_.size()); }
  int n() const { return fermionic_count() / 2; }
  int super_dimension() const { return m() - fermionic_count(); }
  const std::vector<std::string>& bosonic() const { return bosonic_; }
  const std::vector<std::string>& fermionic() const { return fermionic_; }

  bool operator==(const VariableUniverse& o) const {
    return bosonic_ == o.bosonic_ && fermionic_ == o.fermionic_;
  }

 private:
  std::vector<std::string> bosonic_;
  std::vector<std::string> fermionic_;
};

inline bool same_universe(const UniverseRef& a, const UniverseRef& b) {
  return a == b || (a && b && *a == *b);
}

using FermionMask = std::uint64_t;

inline int mask_popcount(FermionMask m) { return std::popcount(m); }
inline FermionMask bit(int j) { return FermionMask{1} << j; }

/// Sign of q_A * q_B -> q_{A|B} (0 when A and B overlap).
inline int koszul_sign(FermionMask a, FermionMask b) {
  if (a & b) return 0;
  int inversions = 0;
  FermionMask rest = b;
  while (rest) {
    int j = std::countr_zero(rest);
    rest &= rest - 1;
    // factors of A with index > j must pass this factor of B
    FermionMask above = (j >= 63) ? FermionMask{0} : (a >> (j + 1));
    inversions += std::popcount(above);
  }
  return (inversions % 2) ? -1 : 1;
}

struct SuperMonomial {
  std::vector<int> bos;
  FermionMask fer = 0;

  int bosonic_degree() const {
    int d = 0;
    for (int e : bos) d += e;
    return d;
  }
  int fermionic_degree() const { return mask_popcount(fer); }
  int degree() const { return bosonic_degree() + fermionic_degree(); }
  int parity() const { return fermionic_degree() % 2; }

  bool operator==(const SuperMonomial& o) const { return fer == o.fer && bos == o.bos; }
  bool operator<(const SuperMonomial& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    if (bos != o.bos) return bos > o.bos;  // x1^2 before x1 x2 before x2^2
    // ascending index sets, compared lexicographically
    FermionMask a = fer, b = o.fer;
    while (a && b) {
      int ia = std::countr_zero(a), ib = std::countr_zero(b);
      if (ia != ib) return ia < ib;
      a &= a - 1;
      b &= b - 1;
    }
    return b != 0 && a == 0;
  }
};

template <class C>
class SuperPolynomial {
 public:
  using Coeff = C;
  using TermMap = std::map<SuperMonomial, C>;

  SuperPolynomial() = default;
  explicit SuperPolynomial(UniverseRef u) : universe_(std::move(u)) {}

  static SuperPolynomial constant(UniverseRef u, const C& c) {
    SuperPolynomial p(u);
    p.add_term(p.unit_monomial(), c);
    return p;
  }
  static SuperPolynomial one(UniverseRef u) {
    return constant(std::move(u), CoeffOps<C>::from_rational(1));
  }
  static SuperPolynomial bosonic_variable(UniverseRef u, int i) {
    if (i < 0 || i >= u->m()) throw DomainError("bosonic index out of range");
    SuperPolynomial p(u);
    SuperMonomial mono = p.unit_monomial();
    mono.bos[static_cast<std::size_t>(i)] = 1;
    p.add_term(mono, CoeffOps<C>::from_rational(1));
    return p;
  }
  static SuperPolynomial fermionic_variable(UniverseRef u, int j) {
    if (j < 0 || j >= u->fermionic_count()) throw DomainError("fermionic index out of range");
    SuperPolynomial p(u);
    SuperMonomial mono = p.unit_monomial();
    mono.fer = bit(j);
    p.add_term(mono, CoeffOps<C>::from_rational(1));
    return p;
  }

  const UniverseRef& universe() const { return universe_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  SuperMonomial unit_monomial() const {
    SuperMonomial m;
    m.bos.assign(static_cast<std::size_t>(universe_->m()), 0);
    return m;
  }

  void add_term(const SuperMonomial& mono, const C& c) {
    if (CoeffOps<C>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (CoeffOps<C>::is_zero(it->second)) terms_.erase(it);
    }
  }

  C coefficient(const SuperMonomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? C{} : it->second;
  }
  C constant_term() const { return coefficient(unit_monomial()); }

  int max_degree() const {
    int d = -1;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree());
    return d;
  }
  bool is_homogeneous(int k) const {
    for (const auto& [mono, c] : terms_)
      if (mono.degree() != k) return false;
    return true;
  }
  /// Component of total degree k.
  SuperPolynomial homogeneous_part(int k) const {
    SuperPolynomial p(universe_);
    for (const auto& [mono, c] : terms_)
      if (mono.degree() == k) p.terms_.emplace(mono, c);
    return p;
  }
  bool is_purely_fermionic() const {
    for (const auto& [mono, c] : terms_)
      if (mono.bosonic_degree() != 0) return false;
    return true;
  }

  SuperPolynomial operator-() const {
    SuperPolynomial p(universe_);
    for (const auto& [mono, c] : terms_) p.terms_.emplace(mono, -c);
    return p;
  }
  SuperPolynomial& operator+=(const SuperPolynomial& o) {
    check_universe(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
  }
  SuperPolynomial& operator-=(const SuperPolynomial& o) {
    check_universe(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
  }
  friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
  friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }

  friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
    a.check_universe(b);
    SuperPolynomial r(a.universe_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        int s = koszul_sign(ma.fer, mb.fer);
        if (s == 0) continue;
        SuperMonomial mono;
        mono.bos = ma.bos;
        for (std::size_t k = 0; k < mono.bos.size(); ++k) mono.bos[k] += mb.bos[k];
        mono.fer = ma.fer | mb.fer;
        C c = ca * cb;
        r.add_term(mono, s > 0 ? c : -c);
      }
    }
    return r;
  }
  SuperPolynomial& operator*=(const SuperPolynomial& o) { return *this = *this * o; }

  friend SuperPolynomial operator*(const C& s, const SuperPolynomial& p) {
    SuperPolynomial r(p.universe_);
    if (CoeffOps<C>::is_zero(s)) return r;
    for (const auto& [mono, c] : p.terms_) r.add_term(mono, s * c);
    return r;
  }

  SuperPolynomial pow(int e) const {
    if (e < 0) throw DomainError("negative power of a polynomial");
    SuperPolynomial r = one(universe_);
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
  }

  /// Complex conjugation of the scalars; variables are fixed.
  SuperPolynomial conj() const {
    SuperPolynomial r(universe_);
    for (const auto& [mono, c] : terms_) r.terms_.emplace(mono, CoeffOps<C>::conj(c));
    return r;
  }

  template <class D, class F>
  SuperPolynomial<D> map_coefficients(F&& f) const {
    SuperPolynomial<D> r(universe_);
    for (const auto& [mono, c] : terms_) r.add_term(mono, f(c));
    return r;
  }

  /// Same terms over a different (shape-compatible) universe.
  SuperPolynomial with_universe(UniverseRef u) const {
    if (u->m() != universe_->m() || u->fermionic_count() != universe_->fermionic_count())
      throw DomainError("universe shape mismatch");
    SuperPolynomial r(std::move(u));
    r.terms_ = terms_;
    return r;
  }

  bool operator==(const SuperPolynomial& o) const {
    return same_universe(universe_, o.universe_) && terms_ == o.terms_;
  }
  bool operator!=(const SuperPolynomial& o) const { return !(*this == o); }

  void check_universe(const SuperPolynomial& o) const {
    if (!same_universe(universe_, o.universe_)) throw DomainError("universe mismatch");
  }

  /// Direct access for builders that guarantee canonical, nonzero entries.
  TermMap& mutable_terms() { return terms_; }

 private:
  UniverseRef universe_;
  TermMap terms_;
};

/// Left fermionic partial derivative d/dq_j.
template <class C>
SuperPolynomial<C> fermionic_derivative(const SuperPolynomial<C>& f, int j) {
  if (j < 0 || j >= f.universe()->fermionic_count())
    throw DomainError("fermionic index out of range");
  SuperPolynomial<C> r(f.universe());
  const FermionMask b = bit(j);
  for (const auto& [mono, c] : f.terms()) {
    if (!(mono.fer & b)) continue;
    int before = mask_popcount(mono.fer & (b - 1));
    SuperMonomial out = mono;
    out.fer &= ~b;
    r.add_term(out, (before % 2) ? -c : c);
  }
  return r;
}

template <class C>
SuperPolynomial<C> bosonic_derivative(const SuperPolynomial<C>& f, int i) {
  if (i < 0 || i >= f.universe()->m()) throw DomainError("bosonic index out of range");
  SuperPolynomial<C> r(f.universe());
  const auto idx = static_cast<std::size_t>(i);
  for (const auto& [mono, c] : f.terms()) {
    int e = mono.bos[idx];
    if (e == 0) continue;
    SuperMonomial out = mono;
    out.bos[idx] = e - 1;
    r.add_term(out, CoeffOps<C>::from_rational(e) * c);
  }
  return r;
}

/// Bosonic part of x^2, i.e. -sum x_i^2.
template <class C = ExactScalar>
SuperPolynomial<C> bosonic_square(const UniverseRef& u) {
  SuperPolynomial<C> p(u);
  for (int i = 0; i < u->m(); ++i) {
    SuperMonomial mono = p.unit_monomial();
    mono.bos[static_cast<std::size_t>(i)] = 2;
    p.add_term(mono, CoeffOps<C>::from_rational(-1));
  }
  return p;
}

/// Fermionic part of x^2, i.e. sum_j q_{2j-1} q_{2j}.
template <class C = ExactScalar>
SuperPolynomial<C> fermionic_square(const UniverseRef& u) {
  SuperPolynomial<C> p(u);
  for (int j = 0; j < u->n(); ++j) {
    SuperMonomial mono = p.unit_monomial();
    mono.fer = bit(2 * j) | bit(2 * j + 1);
    p.add_term(mono, CoeffOps<C>::from_rational(1));
  }
  return p;
}

/// x^2 = sum_j q_{2j-1} q_{2j} - sum_i x_i^2.
template <class C = ExactScalar>
SuperPolynomial<C> vector_square(const UniverseRef& u) {
  return fermionic_square<C>(u) + bosonic_square<C>(u);
}

/// exp(p) for p with nilpotent (fermionic, even) content: sum p^k/k!.
template <class C>
SuperPolynomial<C> nilpotent_exp(const SuperPolynomial<C>& p) {
  for (const auto& [mono, c] : p.terms())
    if (mono.fer == 0) throw DomainError("exponent is not nilpotent");
  SuperPolynomial<C> result = SuperPolynomial<C>::one(p.universe());
  SuperPolynomial<C> power = result;
  for (int k = 1;; ++k) {
    power = CoeffOps<C>::from_rational(make_rational(1, k)) * (power * p);
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

/// Which block of a concatenated universe a polynomial is placed into.
enum class Block { Left, Right };

/// Re-express `f` inside `target` = concat(left, right) as the given block.
template <class C>
SuperPolynomial<C> embed(const SuperPolynomial<C>& f, const UniverseRef& target, Block block) {
  const int m_src = f.universe()->m();
  const int fer_src = f.universe()->fermionic_count();
  const int bos_offset = block == Block::Left ? 0 : target->m() - m_src;
  const int fer_offset = block == Block::Left ? 0 : target->fermionic_count() - fer_src;
  SuperPolynomial<C> r(target);
  for (const auto& [mono, c] : f.terms()) {
    SuperMonomial out = r.unit_monomial();
    for (int i = 0; i < m_src; ++i)
      out.bos[static_cast<std::size_t>(bos_offset + i)] = mono.bos[static_cast<std::size_t>(i)];
    out.fer = mono.fer << fer_offset;
    r.add_term(out, c);
  }
  return r;
}

/// Drop a block of a concatenated universe from polynomials that no longer
/// mention it; the remaining symbols keep their relative order.
template <class C>
SuperPolynomial<C> restrict_to(const SuperPolynomial<C>& f, const UniverseRef& target,
                               Block kept) {
  const auto& src = *f.universe();
  const int bos_offset = kept == Block::Left ? 0 : src.m() - target->m();
  const int fer_offset = kept == Block::Left ? 0 : src.fermionic_count() - target->fermionic_count();
  const FermionMask keep_mask =
      target->fermionic_count() == 64 ? ~FermionMask{0} : (bit(target->fermionic_count()) - 1);
  SuperPolynomial<C> r(target);
  for (const auto& [mono, c] : f.terms()) {
    SuperMonomial out = r.unit_monomial();
    for (int i = 0; i < src.m(); ++i) {
      int local = i - bos_offset;
      int e = mono.bos[static_cast<std::size_t>(i)];
      if (local < 0 || local >= target->m()) {
        if (e != 0) throw DomainError("polynomial still depends on a dropped bosonic symbol");
        continue;
      }
      out.bos[static_cast<std::size_t>(local)] = e;
    }
    FermionMask shifted = mono.fer >> fer_offset;
    if ((shifted & ~keep_mask) || (shifted << fer_offset) != mono.fer)
      throw DomainError("polynomial still depends on a dropped fermionic symbol");
    out.fer = shifted;
    r.add_term(out, c);
  }
  return r;
}

/// Pairing <x,y> = -sum x_i y_i + 1/2 sum (x'_{2j-1} y'_{2j} - x'_{2j} y'_{2j-1}),
/// living in concat(u_x, u_y).
template <class C = ExactScalar>
SuperPolynomial<C> pairing(const UniverseRef& u_x, const UniverseRef& u_y) {
  if (u_x->m() != u_y->m() || u_x->n() != u_y->n()) throw DomainError("shape mismatch");
  UniverseRef both = VariableUniverse::concat(*u_x, *u_y);
  const int m = u_x->m();
  const int f = u_x->fermionic_count();
  SuperPolynomial<C> p(both);
  for (int i = 0; i < m; ++i) {
    SuperMonomial mono = p.unit_monomial();
    mono.bos[static_cast<std::size_t>(i)] = 1;
    mono.bos[static_cast<std::size_t>(m + i)] = 1;
    p.add_term(mono, CoeffOps<C>::from_rational(-1));
  }
  const C half = CoeffOps<C>::from_rational(make_rational(1, 2));
  for (int j = 0; j < u_x->n(); ++j) {
    auto xodd = SuperPolynomial<C>::fermionic_variable(both, 2 * j);
    auto xeven = SuperPolynomial<C>::fermionic_variable(both, 2 * j + 1);
    auto yodd = SuperPolynomial<C>::fermionic_variable(both, f + 2 * j);
    auto yeven = SuperPolynomial<C>::fermionic_variable(both, f + 2 * j + 1);
    p += half * (xodd * yeven - xeven * yodd);
  }
  return p;
}

/// Exchange the two blocks of a polynomial over concat(u, u) (x <-> y).
template <class C>
SuperPolynomial<C> swap_blocks(const SuperPolynomial<C>& f) {
  const auto& u = *f.universe();
  if (u.m() % 2 || u.fermionic_count() % 4)
    throw DomainError("swap_blocks needs a doubled universe");
  const int hm = u.m() / 2;
  const int hf = u.fermionic_count() / 2;
  SuperPolynomial<C> r(f.universe());
  const FermionMask low = bit(hf) - 1;
  for (const auto& [mono, c] : f.terms()) {
    SuperMonomial out = mono;
    for (int i = 0; i < hm; ++i)
      std::swap(out.bos[static_cast<std::size_t>(i)], out.bos[static_cast<std::size_t>(hm + i)]);
    FermionMask a = mono.fer & low;         // x-block factors
    FermionMask b = (mono.fer >> hf) & low;  // y-block factors
    // q_A(x) q_B(y) -> q_A(y) q_B(x) = sign * q_B(x) q_A(y)
    out.fer = b | (a << hf);
    int s = (mask_popcount(a) * mask_popcount(b)) % 2 ? -1 : 1;
    r.add_term(out, s > 0 ? c : -c);
  }
  return r;
}

/// Linear substitution of the fermionic symbols q_j -> sum_k S[j][k] q_k
/// inside the block of size S.size() starting at `offset`.
template <class C>
SuperPolynomial<C> substitute_fermionic_linear(const SuperPolynomial<C>& f,
                                               const std::vector<std::vector<Rational>>& S,
                                               int offset) {
  const UniverseRef& u = f.universe();
  const int size = static_cast<int>(S.size());
  std::vector<SuperPolynomial<C>> images;
  for (int j = 0; j < size; ++j) {
    SuperPolynomial<C> img(u);
    for (int k = 0; k < size; ++k) {
      const Rational& s = S[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      if (s != 0)
        img += CoeffOps<C>::from_rational(s) *
               SuperPolynomial<C>::fermionic_variable(u, offset + k);
    }
    images.push_back(std::move(img));
  }
  SuperPolynomial<C> r(u);
  for (const auto& [mono, c] : f.terms()) {
    SuperMonomial bos_only = mono;
    bos_only.fer = 0;
    SuperPolynomial<C> term(u);
    term.add_term(bos_only, c);
    FermionMask rest = mono.fer;
    while (rest) {
      int j = std::countr_zero(rest);
      rest &= rest - 1;
      if (j >= offset && j < offset + size) {
        term = term * images[static_cast<std::size_t>(j - offset)];
      } else {
        term = term * SuperPolynomial<C>::fermionic_variable(u, j);
      }
    }
    r += term;
  }
  return r;
}

/// All monomials of total degree k (bosonic degree + number of fermionic
/// factors), in the canonical monomial order.
inline std::vector<SuperMonomial> monomials_of_degree(const UniverseRef& u, int k) {
  std::vector<SuperMonomial> out;
  const int m = u->m();
  const int f = u->fermionic_count();
  if (k < 0) return out;
  // bosonic exponent vectors of degree d
  auto bosonic = [&](int d) {
    std::vector<std::vector<int>> result;
    if (m == 0) {
      if (d == 0) result.push_back({});
      return result;
    }
    std::vector<int> e(static_cast<std::size_t>(m), 0);
    auto rec = [&](auto&& self, int idx, int left) -> void {
      if (idx == m - 1) {
        e[static_cast<std::size_t>(idx)] = left;
        result.push_back(e);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[static_cast<std::size_t>(idx)] = v;
        self(self, idx + 1, left - v);
      }
    };
    rec(rec, 0, d);
    return result;
  };
  for (int fd = 0; fd <= std::min(k, f); ++fd) {
    auto bos = bosonic(k - fd);
    for (FermionMask mask = 0; mask < (FermionMask{1} << f); ++mask) {
      if (mask_popcount(mask) != fd) continue;
      for (const auto& b : bos) out.push_back(SuperMonomial{b, mask});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Assigns dense coordinates to monomials on first sight.
class MonomialIndex {
 public:
  int index(const SuperMonomial& mono) {
    auto [it, inserted] = map_.try_emplace(mono, static_cast<int>(order_.size()));
    if (inserted) order_.push_back(mono);
    return it->second;
  }
  int find(const SuperMonomial& mono) const {
    auto it = map_.find(mono);
    return it == map_.end() ? -1 : it->second;
  }
  int size() const { return static_cast<int>(order_.size()); }
  const SuperMonomial& monomial(int i) const { return order_[static_cast<std::size_t>(i)]; }

 private:
  std::map<SuperMonomial, int> map_;
  std::vector<SuperMonomial> order_;
};

/// Rational coordinates of a polynomial with rational coefficients.
inline std::map<int, Rational> rational_coordinates(const SuperPolynomial<ExactScalar>& p,
                                                    MonomialIndex& index) {
  std::map<int, Rational> v;
  for (const auto& [mono, c] : p.terms()) {
    if (!c.is_rational()) throw DomainError("expected rational coefficients");
    v[index.index(mono)] = c.as_rational();
  }
  return v;
}

/// P(x) * exp(x^2/2) when `envelope` is set, else the plain polynomial P.
template <class C>
struct GaussianFunction {
  SuperPolynomial<C> poly;
  bool envelope = true;

  GaussianFunction() = default;
  GaussianFunction(SuperPolynomial<C> p, bool env) : poly(std::move(p)), envelope(env) {}

  static GaussianFunction gaussian(const UniverseRef& u) {
    return {SuperPolynomial<C>::one(u), true};
  }
  const UniverseRef& universe() const { return poly.universe(); }

  GaussianFunction& operator+=(const GaussianFunction& o) {
    if (envelope != o.envelope) throw DomainError("envelope mismatch");
    poly += o.poly;
    return *this;
  }
  GaussianFunction& operator-=(const GaussianFunction& o) {
    if (envelope != o.envelope) throw DomainError("envelope mismatch");
    poly -= o.poly;
    return *this;
  }
  friend GaussianFunction operator+(GaussianFunction a, const GaussianFunction& b) { return a += b; }
  friend GaussianFunction operator-(GaussianFunction a, const GaussianFunction& b) { return a -= b; }
  friend GaussianFunction operator*(const C& s, const GaussianFunction& f) {
    return {s * f.poly, f.envelope};
  }
  bool operator==(const GaussianFunction& o) const {
    return envelope == o.envelope && poly == o.poly;
  }
  bool operator!=(const GaussianFunction& o) const { return !(*this == o); }
};

/// Universe (w1..wm, r | wq1..wq2n) used after substituting y -> r*omega.
inline UniverseRef ray_universe(int m, int n, const std::string& radius = "r") {
  std::vector<std::string> b, f;
  for (int i = 1; i <= m; ++i) b.push_back("w" + std::to_string(i));
  b.push_back(radius);
  for (int j = 1; j <= 2 * n; ++j) f.push_back("wq" + std::to_string(j));
  return std::make_shared<const VariableUniverse>(std::move(b), std::move(f));
}

/// Q(r omega) with envelope exp(r^2 omega^2 / 2) kept symbolic.
template <class C>
struct RayFunction {
  SuperPolynomial<C> poly;  // over ray_universe(m, n)
};

/// y_i -> r w_i, y'_j -> r wq_j.
template <class C>
RayFunction<C> substitute_ray(const GaussianFunction<C>& f, const UniverseRef& ray) {
  if (!f.envelope) throw DomainError("envelope missing");
  const int m = f.universe()->m();
  if (ray->m() != m + 1 || ray->fermionic_count() != f.universe()->fermionic_count())
    throw DomainError("ray universe shape mismatch");
  RayFunction<C> out{SuperPolynomial<C>(ray)};
  for (const auto& [mono, c] : f.poly.terms()) {
    SuperMonomial target = out.poly.unit_monomial();
    for (int i = 0; i < m; ++i)
      target.bos[static_cast<std::size_t>(i)] = mono.bos[static_cast<std::size_t>(i)];
    target.bos[static_cast<std::size_t>(m)] = mono.degree();
    target.fer = mono.fer;
    out.poly.add_term(target, c);
  }
  return out;
}

}  // namespace supertransform
