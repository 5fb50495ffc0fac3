#include <gtest/gtest.h>

#include <deque>

#include "test_util.hpp"

using st::CValuedPolynomial;
using st::CWElement;
using st::CWKey;
using st::CWShape;
using st::ExactScalar;
using st::VariableUniverse;
using Poly = st::SuperPolynomial<ExactScalar>;
using CV = CValuedPolynomial<ExactScalar>;
using CW = CWElement<ExactScalar>;

namespace {

// Independent oracle: rewrite generator words with the defining relations
// one adjacent swap at a time.
struct Gen {
  bool symplectic;
  int index;
  bool operator==(const Gen& o) const { return symplectic == o.symplectic && index == o.index; }
};

bool out_of_order(const Gen& a, const Gen& b) {
  if (a.symplectic != b.symplectic) return a.symplectic;  // f before e is out of order
  return a.index > b.index || (!a.symplectic && a.index == b.index);
}

std::map<CWKey, st::Rational> rewrite(const std::vector<Gen>& word, CWShape shape, bool leftmost) {
  std::map<CWKey, st::Rational> result;
  std::deque<std::pair<std::vector<Gen>, st::Rational>> work{{word, 1}};
  while (!work.empty()) {
    auto [w, coeff] = work.front();
    work.pop_front();
    int pos = -1;
    for (int s = 0; s + 1 < static_cast<int>(w.size()); ++s) {
      int idx = leftmost ? s : static_cast<int>(w.size()) - 2 - s;
      if (out_of_order(w[idx], w[idx + 1])) {
        pos = idx;
        break;
      }
    }
    if (pos < 0) {
      CWKey k = shape.unit();
      for (const auto& g : w) {
        if (g.symplectic) ++k.weyl[g.index];
        else k.e_mask |= 1u << g.index;
      }
      result[k] += coeff;
      if (result[k] == 0) result.erase(k);
      continue;
    }
    Gen a = w[pos], b = w[pos + 1];
    std::vector<Gen> swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    if (!a.symplectic && !b.symplectic) {
      if (a.index == b.index) {
        std::vector<Gen> removed = w;
        removed.erase(removed.begin() + pos, removed.begin() + pos + 2);
        work.emplace_back(removed, -coeff);
      } else {
        work.emplace_back(swapped, -coeff);
      }
    } else if (a.symplectic != b.symplectic) {
      work.emplace_back(swapped, -coeff);
    } else {
      // f_a f_b with a > b; only (odd slot, even slot) of the same pair fail to commute
      work.emplace_back(swapped, coeff);
      if (a.index == b.index + 1 && b.index % 2 == 0) {
        std::vector<Gen> removed = w;
        removed.erase(removed.begin() + pos, removed.begin() + pos + 2);
        work.emplace_back(removed, -coeff);
      }
    }
  }
  return result;
}

CW word_element(const std::vector<Gen>& word, CWShape shape) {
  CW r = CW::scalar(shape, ExactScalar(1));
  for (const auto& g : word) r = r * (g.symplectic ? CW::f(shape, g.index) : CW::e(shape, g.index));
  return r;
}

CV random_cvalued(const st::UniverseRef& u, int degree, bool homogeneous) {
  CWShape shape{u->m(), u->n()};
  CV r(u, false);
  for (int t = 0; t < 3; ++t) {
    CWKey k = shape.unit();
    k.e_mask = static_cast<std::uint32_t>(testutil::uniform_int(0, (1 << shape.m) - 1));
    for (auto& a : k.weyl) a = testutil::uniform_int(0, 1);
    Poly p = testutil::random_poly(u, degree, 3);
    if (homogeneous) p = p.homogeneous_part(degree);
    r.add_component(k, p);
  }
  return r;
}

}  // namespace

TEST(CliffordWeyl, DefiningRelations) {
  CWShape s{2, 1};
  CW one = CW::scalar(s, ExactScalar(1));
  EXPECT_EQ(CW::e(s, 0) * CW::e(s, 0), -one);
  EXPECT_EQ(CW::e(s, 0) * CW::e(s, 1), -(CW::e(s, 1) * CW::e(s, 0)));
  EXPECT_EQ(CW::f(s, 1) * CW::f(s, 0), CW::f(s, 0) * CW::f(s, 1) - one);
  EXPECT_TRUE((CW::e(s, 0) * CW::f(s, 0) + CW::f(s, 0) * CW::e(s, 0)).is_zero());
  EXPECT_EQ(CW::f(s, 0) * CW::f(s, 1) - CW::f(s, 1) * CW::f(s, 0), one);
}

TEST(CliffordWeyl, DifferentPairsCommute) {
  CWShape s{0, 2};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a / 2 == b / 2) continue;
      EXPECT_EQ(CW::f(s, a) * CW::f(s, b), CW::f(s, b) * CW::f(s, a));
    }
}

TEST(CliffordWeyl, NormalOrderingConfluentAgainstRewriting) {
  CWShape s{3, 2};
  for (int trial = 0; trial < 300; ++trial) {
    int len = testutil::uniform_int(0, 6);
    std::vector<Gen> word;
    for (int t = 0; t < len; ++t) {
      bool sym = testutil::uniform_int(0, 1);
      word.push_back({sym, sym ? testutil::uniform_int(0, 3) : testutil::uniform_int(0, 2)});
    }
    auto left = rewrite(word, s, true);
    auto right = rewrite(word, s, false);
    ASSERT_EQ(left, right);
    CW product = word_element(word, s);
    std::map<CWKey, st::Rational> ours;
    for (const auto& [k, c] : product.terms()) ours[k] = c.as_rational();
    ASSERT_EQ(ours, left);
  }
}

TEST(CliffordWeyl, Rendering) {
  CWShape s{2, 1};
  CW w = CW::e(s, 0) * CW::e(s, 1) * CW::f(s, 0) * CW::f(s, 0);
  ASSERT_EQ(w.terms().size(), 1u);
  EXPECT_EQ(st::cw_key_to_string(w.terms().begin()->first), "e1 e2 f1^2");
}

TEST(CliffordWeyl, DiracOfVectorIsSuperDimension) {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 2; ++n) {
      auto u = VariableUniverse::standard(m, n);
      CV xv = st::vector_variable<ExactScalar>(u);
      CV d = st::dirac_apply(xv);
      EXPECT_EQ(d, CV::from_scalar(Poly::constant(u, ExactScalar(m - 2 * n))));
    }
}

TEST(CliffordWeyl, VectorSquaredIsScalarSquare) {
  auto u = VariableUniverse::standard(2, 2);
  CV xv = st::vector_variable<ExactScalar>(u);
  CV sq = st::vector_mul(xv);
  EXPECT_TRUE(sq.is_scalar());
  EXPECT_EQ(sq.scalar_part().poly, st::vector_square(u));
}

TEST(CliffordWeyl, DiracOfGaussianIsVectorTimesGaussian) {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {2, 1}, {1, 2}}) {
    auto u = VariableUniverse::standard(m, n);
    auto g = st::GaussianFunction<ExactScalar>::gaussian(u);
    CV d = st::dirac_apply(g);
    CV expected = st::vector_variable<ExactScalar>(u);
    CV withenv(u, true);
    for (const auto& [k, p] : expected.components()) withenv.add_component(k, p);
    EXPECT_EQ(d, withenv);
  }
}

TEST(CliffordWeyl, DiracOfVectorSquare) {
  auto u = VariableUniverse::standard(2, 1);
  CV d = st::dirac_apply(CV::from_scalar(st::vector_square(u)));
  EXPECT_EQ(d, ExactScalar(2) * st::vector_variable<ExactScalar>(u));
}

TEST(CliffordWeyl, AnticommutatorWithVectorIsTwoEulerPlusM) {
  auto u10 = VariableUniverse::standard(1, 1);
  CV x1 = CV::from_scalar(Poly::bosonic_variable(u10, 0));
  CV lhs = st::vector_mul(st::dirac_apply(x1)) + st::dirac_apply(st::vector_mul(x1));
  EXPECT_EQ(lhs, ExactScalar(2 + u10->super_dimension()) * x1);
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
    auto u = VariableUniverse::standard(m, n);
    for (int trial = 0; trial < 10; ++trial) {
      CV f = random_cvalued(u, 3, false);
      CV l = st::vector_mul(st::dirac_apply(f)) + st::dirac_apply(st::vector_mul(f));
      CV r = ExactScalar(2) * st::euler(f) + ExactScalar(u->super_dimension()) * f;
      ASSERT_EQ(l, r);
    }
  }
}

TEST(CliffordWeyl, DiracSquaredIsLaplace) {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {1, 2}}) {
    auto u = VariableUniverse::standard(m, n);
    for (int trial = 0; trial < 10; ++trial) {
      Poly p = testutil::random_poly(u, 4, 5);
      CV d2 = st::dirac_apply(st::dirac_apply(CV::from_scalar(p)));
      ASSERT_EQ(d2, CV::from_scalar(st::laplace(p)));
    }
  }
}

TEST(CliffordWeyl, PowerRules) {
  using V = st::PowerRuleVariant;
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
    auto u = VariableUniverse::standard(m, n);
    for (int s = 0; s <= 3; ++s)
      for (int k = 0; k <= 2; ++k) {
        CV R = random_cvalued(u, k, true);
        EXPECT_TRUE(st::power_rule_check(s, R, k, V::DiracEven)) << s << " " << k;
        EXPECT_TRUE(st::power_rule_check(s, R, k, V::DiracOdd)) << s << " " << k;
        EXPECT_TRUE(st::power_rule_check(s, R, k, V::Laplace)) << s << " " << k;
      }
  }
}

TEST(CliffordWeyl, MonogenicsAreAnnihilatedAndHomogeneous) {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
    auto u = VariableUniverse::standard(m, n);
    for (int k = 0; k <= 2; ++k) {
      auto basis = st::monogenic_basis(u, k, k);
      EXPECT_FALSE(basis.empty());
      for (const auto& M : basis) {
        EXPECT_TRUE(st::dirac_apply(M).is_zero());
        EXPECT_EQ(st::euler(M), ExactScalar(k) * M);
      }
    }
  }
}

TEST(CliffordWeyl, PhiFunctionsAreOscillatorEigenfunctions) {
  // 1/2 (Delta - x^2) phi_{j,k} = (M/2 + j + k) phi_{j,k}
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
    auto u = VariableUniverse::standard(m, n);
    const int M = u->super_dimension();
    Poly x2 = st::vector_square(u);
    for (int k = 0; k <= 2; ++k) {
      auto basis = st::monogenic_basis(u, k, k);
      for (std::size_t l = 0; l < std::min<std::size_t>(basis.size(), 3); ++l)
        for (int j = 0; j <= 2; ++j) {
          CV phi = st::phi_function(j, basis[l]);
          CV lhs = st::laplace(phi) - x2 * phi;
          ASSERT_EQ(lhs, ExactScalar(M + 2 * (j + k)) * phi);
        }
    }
  }
}
