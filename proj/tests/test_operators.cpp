#include <gtest/gtest.h>

#include "test_util.hpp"

using st::ExactScalar;
using st::GaussianFunction;
using st::Sector;
using st::VariableUniverse;
using Poly = st::SuperPolynomial<ExactScalar>;
using GF = GaussianFunction<ExactScalar>;

namespace {

Poly q(const st::UniverseRef& u, int j) { return Poly::fermionic_variable(u, j - 1); }
Poly x(const st::UniverseRef& u, int i) { return Poly::bosonic_variable(u, i - 1); }
Poly c(const st::UniverseRef& u, ExactScalar v) { return Poly::constant(u, v); }

// Independent model: the fermionic half of the envelope is expanded into
// the polynomial, only exp(-sum x_i^2/2) stays symbolic.
Poly fermionic_envelope(const st::UniverseRef& u) {
  return st::nilpotent_exp(ExactScalar(st::make_rational(1, 2)) * st::fermionic_square(u));
}

Poly model_d_bos(const Poly& p, int i) {
  return st::bosonic_derivative(p, i) - Poly::bosonic_variable(p.universe(), i) * p;
}

Poly model_laplace(const Poly& p) {
  const auto& u = p.universe();
  Poly r(u);
  for (int i = 0; i < u->m(); ++i) r -= model_d_bos(model_d_bos(p, i), i);
  for (int j = 0; j < u->n(); ++j)
    r += ExactScalar(4) * st::fermionic_derivative(st::fermionic_derivative(p, 2 * j + 1), 2 * j);
  return r;
}

Poly model_euler(const Poly& p) {
  const auto& u = p.universe();
  Poly r(u);
  for (int i = 0; i < u->m(); ++i) r += Poly::bosonic_variable(u, i) * model_d_bos(p, i);
  for (int j = 0; j < u->fermionic_count(); ++j)
    r += Poly::fermionic_variable(u, j) * st::fermionic_derivative(p, j);
  return r;
}

}  // namespace

TEST(Operators, EulerExamples) {
  auto u = VariableUniverse::standard(1, 1);
  EXPECT_EQ(st::euler(x(u, 1) * q(u, 1)), c(u, 2) * x(u, 1) * q(u, 1));
  EXPECT_TRUE(st::euler(Poly::one(u)).is_zero());
  Poly p = q(u, 1) * q(u, 2) * x(u, 1) * x(u, 1);
  EXPECT_EQ(st::euler(p), c(u, 4) * p);
}

TEST(Operators, LaplaceOfVectorSquareIsTwiceSuperDimension) {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      auto u = VariableUniverse::standard(m, n);
      EXPECT_EQ(st::laplace(st::vector_square(u)), c(u, 2 * (m - 2 * n)));
    }
  auto u = VariableUniverse::standard(0, 1);
  EXPECT_EQ(st::laplace(q(u, 1) * q(u, 2)), c(u, -4));
}

TEST(Operators, LaplaceOfGaussian) {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 2; ++n) {
      auto u = VariableUniverse::standard(m, n);
      GF g = GF::gaussian(u);
      GF expected{c(u, m - 2 * n) + st::vector_square(u), true};
      EXPECT_EQ(st::laplace(g), expected);
    }
}

TEST(Operators, ScalarSquareOnOne) {
  auto u = VariableUniverse::standard(2, 1);
  GF one{Poly::one(u), false};
  EXPECT_EQ(st::scalar_square(one), (GF{st::vector_square(u) + c(u, 0), false}));
}

TEST(Operators, SectorsAddAndCommute) {
  auto u = VariableUniverse::standard(2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    GF f = testutil::random_gaussian(u, 4);
    bool env = testutil::uniform_int(0, 1);
    f.envelope = env;
    ASSERT_EQ(st::laplace(f), st::laplace(f, Sector::Bosonic) + st::laplace(f, Sector::Fermionic));
    ASSERT_EQ(st::laplace(st::laplace(f, Sector::Bosonic), Sector::Fermionic),
              st::laplace(st::laplace(f, Sector::Fermionic), Sector::Bosonic));
  }
}

TEST(Operators, EulerOnHomogeneous) {
  auto u = VariableUniverse::standard(2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    int k = testutil::uniform_int(0, 5);
    Poly p = testutil::random_poly(u, 6, 6).homogeneous_part(k);
    ASSERT_EQ(st::euler(p), c(u, k) * p);
  }
}

TEST(Operators, EnvelopeProductRulesMatchExpandedModel) {
  for (int n = 0; n <= 3; ++n) {
    auto u = VariableUniverse::standard(n == 3 ? 1 : 2, n);
    Poly ef = fermionic_envelope(u);
    for (int trial = 0; trial < 10; ++trial) {
      GF f = testutil::random_gaussian(u, 4);
      ASSERT_EQ(st::laplace(f).poly * ef, model_laplace(f.poly * ef));
      ASSERT_EQ(st::euler(f).poly * ef, model_euler(f.poly * ef));
      for (int j = 0; j < u->fermionic_count(); ++j)
        ASSERT_EQ(st::d_fermionic(f, j).poly * ef, st::fermionic_derivative(f.poly * ef, j));
    }
  }
}

TEST(Operators, ScalarSquareEqualsDiracVectorComposition) {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
    auto u = VariableUniverse::standard(m, n);
    for (int trial = 0; trial < 8; ++trial) {
      GF f = testutil::random_gaussian(u, 3);
      f.envelope = testutil::uniform_int(0, 1);
      auto cv = st::CValuedPolynomial<ExactScalar>::from_scalar(f);
      auto twice = st::dirac_plus_vector(st::dirac_plus_vector(cv));
      ASSERT_TRUE(twice.is_scalar());
      ASSERT_EQ(twice.scalar_part(), st::scalar_square(f));
    }
  }
}

TEST(Operators, ScalarSquarePowersOnGaussianMatchCliffordRoute) {
  auto u = VariableUniverse::standard(1, 1);
  GF g = GF::gaussian(u);
  auto cv = st::CValuedPolynomial<ExactScalar>::from_scalar(g);
  GF scalar = g;
  for (int j = 1; j <= 2; ++j) {
    scalar = st::scalar_square(scalar);
    cv = st::dirac_plus_vector(st::dirac_plus_vector(cv));
    ASSERT_EQ(cv.scalar_part(), scalar);
  }
}
