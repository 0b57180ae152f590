#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "razumikhin/errors.hpp"
#include "razumikhin/model.hpp"

namespace raz {
namespace {

TEST(ModelParams, RejectsNonPositiveDelay) {
  EXPECT_THROW(ModelParams(0, -1, 0.0, 0), DomainError);
  EXPECT_THROW(ModelParams(0, -1, -1.0, 0), DomainError);
  EXPECT_NO_THROW(ModelParams(0, -1, 1.0, 0));
}

TEST(ModelParams, Hypotheses) {
  EXPECT_TRUE(ModelParams(0, -1, 1, 0).in_wedge_cusp_hypotheses());
  EXPECT_TRUE(ModelParams(-1, -1, 1, 0).in_wedge_cusp_hypotheses());
  EXPECT_FALSE(ModelParams(-2, 1, 1, 0).in_wedge_cusp_hypotheses());
  EXPECT_FALSE(ModelParams(1, -1, 1, 0).in_wedge_cusp_hypotheses());
}

TEST(RofDelta, Examples) {
  EXPECT_DOUBLE_EQ(r_of_delta(ModelParams(0, -1, 1, 0), 1.0), 1.0);
  EXPECT_DOUBLE_EQ(r_of_delta(ModelParams(0, -1, 1, 1), 0.5), 1.5);
  EXPECT_DOUBLE_EQ(r_of_delta(ModelParams(0, -1, 2, -3), 0.1), 2.3);
  EXPECT_THROW(r_of_delta(ModelParams(0, -1, 1, 1), 0.0), DomainError);
}

TEST(SigmaStar, ReferenceValues) {
  EXPECT_NEAR(sigma_star_boundary(0.0, 1.0), -std::numbers::pi / 2, 1e-12);
  EXPECT_NEAR(sigma_star_boundary(-2.0, 1.0), -3.0396051, 1e-7);
  EXPECT_NEAR(sigma_star_boundary(-5.0, 1.0), -5.6605586, 1e-7);
}

TEST(SigmaStar, InverseReferenceValues) {
  EXPECT_NEAR(sigma_star_mu_for_sigma(-5.0, 1.0), -4.2734224, 1e-7);
  EXPECT_NEAR(sigma_star_mu_for_sigma(-2.0, 1.0), -0.63804505, 1e-8);
  EXPECT_DOUBLE_EQ(sigma_star_mu_for_sigma(-1.0, 1.0), 1.0);
}

TEST(SigmaStar, OutOfRange) {
  EXPECT_THROW(sigma_star_boundary(1.0, 1.0), DomainError);
  EXPECT_THROW(sigma_star_boundary(2.0, 0.5), DomainError);
}

TEST(SigmaStar, CornerLimit) {
  EXPECT_NEAR(sigma_star_boundary(1.0 - 1e-9, 1.0), -1.0, 1e-4);
  EXPECT_NEAR(sigma_star_boundary(0.5 - 1e-9, 2.0), -0.5, 1e-4);
}

TEST(SigmaStar, InverseRoundTrip) {
  for (double mu : {-7.0, -3.0, -0.5, 0.0, 0.3, 0.9}) {
    const double s = sigma_star_boundary(mu, 1.0);
    EXPECT_NEAR(sigma_star_mu_for_sigma(s, 1.0), mu, 1e-9) << mu;
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(ModelParams(-2, 1, 1, 0)), RegionLabel::Cone);
  EXPECT_EQ(classify(ModelParams(0, -1.5, 1, 0)), RegionLabel::Cusp);
  EXPECT_EQ(classify(ModelParams(0, -1.6, 1, 0)), RegionLabel::OutsideSigmaStar);
  EXPECT_EQ(classify(ModelParams(-1, -2, 1, 0)), RegionLabel::Wedge);
  EXPECT_EQ(classify(ModelParams(1.5, -2, 1, 0)), RegionLabel::OutsideSigmaStar);
}

TEST(Classify, CurveIsExcludedAndJustInsideIsIncluded) {
  const double a = 1.0;
  for (int i = 1; i < 60; ++i) {
    const double s = std::numbers::pi / a * i / 60.0;
    const double mu = s * std::cos(a * s) / std::sin(a * s);
    const double sigma = -s / std::sin(a * s);
    EXPECT_EQ(classify(ModelParams(mu, sigma - 1e-9, a, 0)), RegionLabel::OutsideSigmaStar) << s;
    const RegionLabel in = classify(ModelParams(mu, sigma + 5e-5, a, 0));
    EXPECT_TRUE(in == RegionLabel::Wedge || in == RegionLabel::Cusp) << s;
  }
}

TEST(Classify, InvariantUnderRescaling) {
  for (double lambda : {0.25, 2.0, 7.0}) {
    for (double mu : {-3.0, -0.7, 0.0, 0.4, 0.95}) {
      for (double sigma : {-4.0, -1.5, -0.8, -0.2, 0.5}) {
        EXPECT_EQ(classify(ModelParams(mu, sigma, 1.0, 0)),
                  classify(ModelParams(mu / lambda, sigma / lambda, lambda, 0)))
            << mu << ' ' << sigma << ' ' << lambda;
      }
    }
  }
}

TEST(DerivedConstants, Examples) {
  auto d = derived_constants(ModelParams(-1, -1, 1, 1));
  EXPECT_DOUBLE_EQ(d.m0, -1.0);
  ASSERT_TRUE(d.n0.has_value());
  EXPECT_DOUBLE_EQ(*d.n0, 1.0);
  EXPECT_DOUBLE_EQ(d.lipschitz_l, 2.0);

  d = derived_constants(ModelParams(-2, 1, 2, 1));
  EXPECT_DOUBLE_EQ(d.m0, -2.0);
  EXPECT_DOUBLE_EQ(*d.n0, -1.0);

  d = derived_constants(ModelParams(0.4, -0.6, 1, 1));
  EXPECT_DOUBLE_EQ(d.m0, -1.0);
  EXPECT_NEAR(*d.n0, -1.5, 1e-15);

  d = derived_constants(ModelParams(0, -1, 1, 1));
  EXPECT_FALSE(d.n0.has_value());
  EXPECT_THROW(derived_constants(ModelParams(0, -1, 1, 0)), DomainError);
}

}  // namespace
}  // namespace raz
