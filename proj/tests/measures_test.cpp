#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hdgeom/log_value.hpp"
#include "hdgeom/measures.hpp"
#include "hdgeom/quadrature.hpp"

using namespace hdgeom;

namespace {

constexpr double kPi = std::numbers::pi;

// 1 / K_{n,s} as the Selberg integral S_s(alpha, 1/2, 1/2).
double selberg_log_inverse_k(int n, int s) {
  const double a = 0.5 * (n - 2 * s + 1), b = 0.5, g = 0.5;
  double acc = 0.0;
  for (int j = 0; j < s; ++j)
    acc += std::lgamma(a + j * g) + std::lgamma(b + j * g) + std::lgamma(1 + (j + 1) * g) -
           std::lgamma(a + b + (s + j - 1) * g) - std::lgamma(1 + g);
  return acc;
}

double log_area(int j) { return std::log(2.0) + 0.5 * j * std::log(kPi) - std::lgamma(0.5 * j); }

double aomoto_by_quadrature(int s, double alpha, double c) {
  const quad::VandermondeIntegrator integ(alpha - 1.0, 0.0, [c](double y) { return 1.0 + c * y; }, 64);
  return integ.integrate(std::vector<quad::Interval>(static_cast<std::size_t>(s), {0.0, 1.0}));
}

}  // namespace

TEST(LogValue, Arithmetic) {
  const auto a = LogValue::from_double(3.0), b = LogValue::from_double(-2.0);
  EXPECT_NEAR((a * b).value(), -6.0, 1e-14);
  EXPECT_NEAR((a / b).value(), -1.5, 1e-14);
  EXPECT_NEAR((a + b).value(), 1.0, 1e-14);
  EXPECT_NEAR((a - b).value(), 5.0, 1e-14);
  EXPECT_NEAR((a + LogValue::zero()).value(), 3.0, 1e-15);
  EXPECT_EQ(LogValue::zero().sign(), 0);
  EXPECT_NEAR((LogValue::from_log(-800.0) * LogValue::from_log(790.0)).value(), std::exp(-10.0), 1e-18);
}

TEST(LogValue, CancellationIsFlagged) {
  const auto a = LogValue::from_double(1.0);
  const auto b = LogValue::from_double(-(1.0 - 1e-15));
  EXPECT_THROW(a + b, DomainError);
  EXPECT_THROW(a - a, DomainError);
}

TEST(GaussJacobi, IntegratesPolynomialsExactly) {
  const auto r = quad::gauss_jacobi(10, 0.5, -0.5);
  // int_{-1}^{1} (1-u)^{1/2} (1+u)^{-1/2} du = pi and the u-moment = -pi/2.
  double m0 = 0.0, m1 = 0.0;
  for (std::size_t k = 0; k < r.nodes.size(); ++k) {
    m0 += r.weights[k];
    m1 += r.weights[k] * r.nodes[k];
  }
  EXPECT_NEAR(m0, kPi, 1e-13);
  EXPECT_NEAR(m1, -kPi / 2, 1e-13);
  const auto legendre = quad::gauss_jacobi(5, 0.0, 0.0);
  double quartic = 0.0;
  for (std::size_t k = 0; k < legendre.nodes.size(); ++k) quartic += legendre.weights[k] * std::pow(legendre.nodes[k], 8);
  EXPECT_NEAR(quartic, 2.0 / 9.0, 1e-14);
}

TEST(SphereArea, SmallDimensions) {
  EXPECT_NEAR(sphere_area_log(1).value(), 2.0, 1e-14);
  EXPECT_NEAR(sphere_area_log(2).value(), 2 * kPi, 1e-13);
  EXPECT_NEAR(sphere_area_log(3).value(), 4 * kPi, 1e-13);
  EXPECT_THROW(sphere_area_log(0), ArgumentError);
}

TEST(KTilde, HandValueAndDuplicateFormula) {
  EXPECT_NEAR(k_tilde_log(3, 1).value(), 1.0, 1e-14);
  EXPECT_NEAR(k_norm_log(3, 1).value(), 0.5, 1e-14);
  for (int n = 2; n <= 200; ++n) {
    for (int s = 1; 2 * s <= n; ++s) {
      double brute = 0.0;
      for (int i = 0; i < s; ++i)
        brute += 2 * log_area(s - i) + log_area(n - s - i) - std::log(2.0) - log_area(n - i);
      const double got = k_tilde_log(n, s).log_mag();
      EXPECT_LE(std::abs(got - brute), 1e-12 * std::max(1.0, std::abs(brute))) << n << " " << s;
    }
  }
}

TEST(KTilde, BoundaryAndLargeArguments) {
  for (int n : {2, 3, 10, 57}) {
    EXPECT_TRUE(std::isfinite(k_tilde_log(n, n - 1).log_mag())) << n;
    EXPECT_TRUE(std::isfinite(k_norm_log(n, n - 1).log_mag())) << n;
  }
  const double big = k_norm_log(200, 90).log_mag();
  EXPECT_TRUE(std::isfinite(big));
  EXPECT_NEAR(big, -selberg_log_inverse_k(200, 90), 1e-11 * std::abs(big));
}

TEST(KNorm, SelbergOracle) {
  for (int n = 3; n <= 60; ++n)
    for (int s = 1; 2 * s <= n; ++s)
      EXPECT_NEAR(k_norm_log(n, s).log_mag(), -selberg_log_inverse_k(n, s),
                  1e-11 * std::max(1.0, std::abs(selberg_log_inverse_k(n, s))))
          << n << " " << s;
}

TEST(KNorm, LineCaseClosedForm) {
  for (int n = 3; n <= 500; ++n) {
    const double expect = -0.5 * std::log(kPi) + std::lgamma(0.5 * n) - std::lgamma(0.5 * (n - 1));
    const double got = k_norm_log(n, 1).log_mag();
    EXPECT_LE(std::abs(got - expect), 1e-12 * std::max(1.0, std::abs(expect))) << n;
  }
}

TEST(NuDensity, Examples) {
  const std::vector<double> x{0.75};
  EXPECT_NEAR(nu_density_log(x, {3, 1}).value(), 1.0, 1e-14);
  const std::vector<double> diag{0.3, 0.3};
  EXPECT_EQ(nu_density_log(diag, {10, 2}).sign(), 0);
  const std::vector<double> edge{0.0};
  EXPECT_THROW(nu_density_log(edge, {5, 1}), DomainError);
  EXPECT_THROW(nu_density_log(x, {10, 2}), ArgumentError);
  EXPECT_THROW(validate(MeasureParams{10, 6}), DomainError);
}

TEST(NuDensity, MatchesQuadratureIntegrandShape) {
  // Ratio of densities at two points equals the ratio of raw integrands.
  const MeasureParams p{8, 2};
  const std::vector<double> u{0.2, 0.7}, v{0.4, 0.9};
  const auto raw = [&](const std::vector<double>& z) {
    double f = std::abs(z[0] - z[1]);
    for (double t : z) f *= std::pow(t, p.alpha() - 1) / std::sqrt(1 - t);
    return f;
  };
  EXPECT_NEAR((nu_density_log(u, p) / nu_density_log(v, p)).value(), raw(u) / raw(v), 1e-13);
}

TEST(Aomoto, AnalyticAnchors) {
  EXPECT_NEAR(aomoto_integral_log(1, 2.0, 1.0).value(), 0.5 + 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(aomoto_integral_log(1, 1.0, 0.0).value(), 1.0, 1e-14);
  EXPECT_NEAR(aomoto_integral_log(2, 1.0, 0.0).value(), 1.0 / 3.0, 1e-14);
  for (double a : {0.5, 1.0, 3.5})
    for (double c : {0.0, 0.7, 4.0}) EXPECT_NEAR(aomoto_integral_log(1, a, c).value(), 1 / a + c / (a + 1), 1e-13);
  EXPECT_THROW(aomoto_integral_log(2, 0.0, 1.0), DomainError);
}

TEST(Aomoto, MatchesQuadratureOfRawIntegrand) {
  for (int s : {1, 2})
    for (double a : {1.0, 2.0, 5.0})
      for (double c : {0.0, 0.5, 2.0}) {
        const double closed = aomoto_integral_log(s, a, c).value();
        EXPECT_NEAR(aomoto_by_quadrature(s, a, c) / closed, 1.0, 1e-8) << s << " " << a << " " << c;
      }
  EXPECT_NEAR(aomoto_by_quadrature(3, 1.5, 1.0) / aomoto_integral_log(3, 1.5, 1.0).value(), 1.0, 1e-8);
}

TEST(Aomoto, StrictlyIncreasingInC) {
  for (int s : {1, 3, 10}) {
    double prev = aomoto_integral_log(s, 2.0, 0.0).log_mag();
    for (double c = 0.25; c <= 4.0; c += 0.25) {
      const double cur = aomoto_integral_log(s, 2.0, c).log_mag();
      EXPECT_GT(cur, prev);
      prev = cur;
    }
  }
}

TEST(BallVolume, LineCaseBracket) {
  const auto b = ball_volume_bounds_log(3, 1, 0.6);
  EXPECT_LE(b.lower.value(), 0.2);
  EXPECT_GE(b.upper.value(), 0.2);
  EXPECT_LE(b.lower.value(), b.upper.value());
}

TEST(BallVolume, PlaneCaseContainsQuadrature) {
  const double d2 = 0.09;
  const auto b = ball_volume_bounds_log(10, 2, 0.3);
  const double q = nu_quadrature(10, 2, {{0.0, d2}, {0.0, d2}});
  EXPECT_LE(b.lower.value(), q);
  EXPECT_GE(b.upper.value(), q);
}

TEST(BallVolume, IntervalWidensTowardOne) {
  double prev_ratio = 0.0;
  for (double d : {0.5, 0.8, 0.95, 0.99}) {
    const auto b = ball_volume_bounds_log(6, 1, d);
    const double ratio = (b.upper / b.lower).value();
    EXPECT_GT(ratio, prev_ratio);
    prev_ratio = ratio;
  }
  EXPECT_THROW(ball_volume_bounds_log(6, 1, 1.0), ArgumentError);
  EXPECT_THROW(ball_volume_bounds_log(6, 1, 0.0), ArgumentError);
}

TEST(BallVolume, LargeArgumentsStayFinite) {
  const auto b = ball_volume_bounds_log(400, 100, 0.5);
  EXPECT_TRUE(std::isfinite(b.lower.log_mag()));
  EXPECT_LE(b.lower.log_mag(), b.upper.log_mag());
  EXPECT_LT(b.upper.log_mag(), -1000.0);
}

TEST(Quadrature, Normalization) {
  for (int s : {1, 2})
    for (int n : {6, 10, 20}) EXPECT_NEAR(nu_quadrature(n, s), 1.0, 1e-8) << n << " " << s;
  for (int n : {7, 10}) EXPECT_NEAR(nu_quadrature(n, 3), 1.0, 1e-5) << n;
  EXPECT_NEAR(nu_quadrature(5, 1), 1.0, 1e-12);
}

TEST(Quadrature, Errors) {
  EXPECT_THROW(nu_quadrature(12, 4), ResourceError);
  EXPECT_THROW(nu_quadrature(10, 2, 32), ArgumentError);
  EXPECT_THROW(nu_quadrature(10, 2, {{0.0, 1.0}}), ArgumentError);
}

TEST(Quadrature, MatchesIncompleteBeta) {
  for (int n : {3, 6, 25})
    for (double t : {0.1, 0.5, 0.9}) EXPECT_NEAR(nu_quadrature(n, 1, {{0.0, t * t}}), correlation_ball_volume(n, t), 1e-8);
}

TEST(Quadrature, RegionAwayFromZeroLowerBound) {
  for (int s : {1, 2, 3})
    for (double d1 : {0.1, 0.3, 0.6}) {
      const double bound = std::pow(1 - d1 * d1, 0.5 * s * s);
      const double got = nu_quadrature(10, s, std::vector<quad::Interval>(static_cast<std::size_t>(s), {d1 * d1, 1.0}));
      EXPECT_GE(got, bound) << s << " " << d1;
    }
}

TEST(CorrelationBall, Values) {
  EXPECT_NEAR(correlation_ball_volume(3, 0.6), 0.2, 1e-12);
  for (int n : {2, 5, 100}) {
    EXPECT_EQ(correlation_ball_volume(n, 0.0), 0.0);
    EXPECT_EQ(correlation_ball_volume(n, 1.0), 1.0);
  }
  EXPECT_THROW(correlation_ball_volume(5, 1.1), ArgumentError);
  double prev = 0.0;
  for (double t = 0.05; t < 1.0; t += 0.05) {
    const double v = correlation_ball_volume(8, t);
    EXPECT_GT(v, prev);
    prev = v;
  }
}

TEST(Leading, MatchesFormula) {
  EXPECT_NEAR(ball_volume_log_leading(100, 0.2, 0.5), std::log(0.5) * 0.16 * 1e4 - 20 * std::log(100.0), 1e-9);
}
