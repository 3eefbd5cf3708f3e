#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "peridyn/errors.hpp"
#include "peridyn/material.hpp"

namespace peridyn {
namespace {

constexpr double kPi = std::numbers::pi;

ElasticMaterial unit_material(double G0 = 1.0, double h = 1.0) {
  return ElasticMaterial(1.0, 1.0 / 3.0, 1.0, G0, h);
}

// Midpoint quadrature of f(x, y) * exp(-r^2 / 2) / (2 pi) over the disk of
// radius 10 with unit sigma, written without the library density.
template <class F>
double disk_quadrature(F f, double step = 0.05) {
  const int n = static_cast<int>(std::round(10.0 / step));
  double sum = 0.0;
  for (int q = -n; q <= n; ++q) {
    for (int p = -n; p <= n; ++p) {
      const double x = p * step;
      const double y = q * step;
      const double r2 = x * x + y * y;
      if (r2 > 100.0) continue;
      sum += f(x, y) * std::exp(-0.5 * r2) / (2.0 * kPi) * step * step;
    }
  }
  return sum;
}

TEST(GaussianDensity, ValueAtOrigin) {
  EXPECT_NEAR(gaussian_density(0.0, 1.0, 2), 1.0 / (2.0 * kPi), 1e-15);
}

TEST(GaussianDensity, ClosedFormValues) {
  EXPECT_NEAR(gaussian_density(2.0, 1.0, 2), 0.0215392793018486, 1e-15);
  EXPECT_NEAR(gaussian_density(0.0, 1.0, 3), 0.063493635934241, 1e-15);
}

TEST(GaussianDensity, PositiveAndDecreasing) {
  double prev = gaussian_density(0.0, 0.3, 2);
  for (int k = 1; k < 60; ++k) {
    const double g = gaussian_density(0.05 * k, 0.3, 2);
    EXPECT_GT(g, 0.0);
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(GaussianDensity, RejectsBadArguments) {
  EXPECT_THROW(gaussian_density(1.0, 0.0, 2), ParameterError);
  EXPECT_THROW(gaussian_density(1.0, -1.0, 2), ParameterError);
  EXPECT_THROW(gaussian_density(1.0, 1.0, 4), ParameterError);
  EXPECT_THROW(gaussian_density(1.0, 1.0, 1), ParameterError);
}

TEST(GaussianDensity, NormalizedInTwoDimensions) {
  double sum = 0.0;
  const double step = 0.05;
  const int n = 200;
  for (int q = -n; q <= n; ++q) {
    for (int p = -n; p <= n; ++p) {
      const double r = std::hypot(p * step, q * step);
      if (r <= 10.0) sum += gaussian_density(r, 1.0, 2) * step * step;
    }
  }
  EXPECT_NEAR(sum, 1.0, 1e-6);
}

TEST(GaussianDensity, NormalizedInThreeDimensions) {
  double sum = 0.0;
  const double step = 0.1;
  const int n = 100;
  for (int k = -n; k <= n; ++k) {
    for (int q = -n; q <= n; ++q) {
      for (int p = -n; p <= n; ++p) {
        const double r = std::sqrt(double(p * p + q * q + k * k)) * step;
        if (r <= 10.0) sum += gaussian_density(r, 1.0, 3) * step * step * step;
      }
    }
  }
  EXPECT_NEAR(sum, 1.0, 1e-6);
}

TEST(GaussianMoments, FourthOrderIdentities) {
  const double m40 = disk_quadrature([](double x, double) { return x * x * x * x; });
  const double m22 = disk_quadrature([](double x, double y) { return x * x * y * y; });
  const double m04 = disk_quadrature([](double, double y) { return y * y * y * y; });
  EXPECT_NEAR(m40 / 3.0, 1.0, 1e-6);
  EXPECT_NEAR(m22, 1.0, 1e-6);
  EXPECT_NEAR(m04 / 3.0, 1.0, 1e-6);
  for (auto odd : {+[](double x, double) { return x * x * x; },
                   +[](double x, double y) { return x * x * y; },
                   +[](double x, double y) { return x * y * y; },
                   +[](double, double y) { return y * y * y; }}) {
    EXPECT_NEAR(disk_quadrature(odd), 0.0, 1e-12);
  }
}

TEST(SpringConstant, DirectSubstitution) {
  EXPECT_DOUBLE_EQ(spring_constant(unit_material(), 1.0, 2), 0.75);
  EXPECT_DOUBLE_EQ(spring_constant(unit_material(), 1.0, 3), 0.8);
  const ElasticMaterial steel(1.92e11, 1.0 / 3.0, 8000.0, 0.0);
  EXPECT_NEAR(spring_constant(steel, 0.01, 2) / 1.44e19, 1.0, 1e-14);
  EXPECT_THROW(spring_constant(steel, 0.01, 5), ParameterError);
}

TEST(EnergyEquivalence, PlanarUniformStretch) {
  // (1/2) integral of beta s^2 |xi|^4 G / 2 with unit sigma.
  const double beta = spring_constant(unit_material(), 1.0, 2);
  const double s = 1e-3;
  const double w = 0.5 * disk_quadrature([&](double x, double y) {
    const double r2 = x * x + y * y;
    return beta * s * s * r2 * r2 / 2.0;
  }, 0.025);
  EXPECT_NEAR(w / (2.0 * beta * s * s), 1.0, 1e-6);
  EXPECT_NEAR(w / (1.5 * s * s), 1.0, 1e-6);
}

TEST(EnergyEquivalence, SpatialUniformStretch) {
  const double beta = spring_constant(ElasticMaterial(1.0, 0.25, 1.0, 0.0), 1.0, 3);
  const double s = 1e-3;
  const double step = 0.1;
  const int n = 100;
  double w = 0.0;
  for (int k = -n; k <= n; ++k) {
    for (int q = -n; q <= n; ++q) {
      for (int p = -n; p <= n; ++p) {
        const double r2 = double(p * p + q * q + k * k) * step * step;
        if (r2 > 100.0) continue;
        const double g = std::exp(-0.5 * r2) / std::pow(2.0 * kPi, 1.5);
        w += beta * s * s * r2 * r2 * g / 2.0 * step * step * step;
      }
    }
  }
  w *= 0.5;
  EXPECT_NEAR(w / (3.75 * beta * s * s), 1.0, 1e-6);
}

TEST(CriticalStretch, GaussianClosedForm) {
  EXPECT_NEAR(critical_stretch_gk(unit_material(), 1.0, 2), 0.667549851605739, 1e-12);
  EXPECT_NEAR(critical_stretch_gk(ElasticMaterial(1.0, 0.25, 1.0, 1.0), 1.0, 3),
              0.510986410720216, 1e-12);
}

TEST(CriticalStretch, SquareRootScalingInEnergyReleaseRate) {
  const double base = critical_stretch_gk(unit_material(0.7), 0.2, 2);
  EXPECT_NEAR(critical_stretch_gk(unit_material(2.8), 0.2, 2), 2.0 * base, 1e-14);
}

TEST(CriticalStretch, RejectsMissingEnergyReleaseRate) {
  EXPECT_THROW(critical_stretch_gk(unit_material(0.0), 1.0, 2), ParameterError);
  EXPECT_THROW(critical_stretch_gk(unit_material(), 0.0, 2), ParameterError);
}

TEST(CriticalStretch, ClassicalClosedForm) {
  EXPECT_NEAR(classical_critical_stretch(unit_material(), 1.0, 2), 1.18163590060368, 1e-12);
  EXPECT_NEAR(classical_critical_stretch(ElasticMaterial(1.0, 0.25, 1.0, 1.0), 1.0, 3),
              1.14411404107971, 1e-12);
}

TEST(CriticalStretch, LiteralOverrideBypassesFormula) {
  const ElasticMaterial steel(191e9, 1.0 / 3.0, 8000.0, 0.0, 0.009);
  EXPECT_DOUBLE_EQ(GaussianInfluence::make(steel, 1e-3, 2, 36.0, 0.01).critical_stretch, 0.01);
  EXPECT_DOUBLE_EQ(ClassicalHorizon::make(steel, 3e-3, MicromodulusKind::constant,
                                          CorrectionMethod::none, 2, 0.01)
                       .critical_stretch,
                   0.01);
  EXPECT_TRUE(std::isinf(GaussianInfluence::make(steel, 1e-3, 2, 36.0).critical_stretch));
}

TEST(Micromodulus, ConstantUnitCase) {
  const ElasticMaterial m(kPi, 1.0 / 3.0, 1.0, 0.0, 9.0);
  EXPECT_NEAR(classical_micromodulus(m, 1.0, MicromodulusKind::constant, 0.3), 1.0, 1e-15);
  EXPECT_NEAR(classical_micromodulus(m, 1.0, MicromodulusKind::constant, 1.0), 1.0, 1e-15);
}

TEST(Micromodulus, ConicalShape) {
  const ElasticMaterial m(2.0, 1.0 / 3.0, 1.0, 0.0, 0.5);
  EXPECT_DOUBLE_EQ(classical_micromodulus(m, 0.4, MicromodulusKind::conical, 0.4), 0.0);
  EXPECT_NEAR(classical_micromodulus(m, 0.4, MicromodulusKind::conical, 0.0),
              3.0 * classical_micromodulus(m, 0.4, MicromodulusKind::constant, 0.0), 1e-9);
}

TEST(Micromodulus, OutsideHorizonThrows) {
  EXPECT_THROW(classical_micromodulus(unit_material(), 1.0, MicromodulusKind::constant, 1.0001),
               OutOfHorizonError);
}

TEST(TruncationRadius, Values) {
  EXPECT_NEAR(truncation_radius(0.01, 36.0), 0.06, 1e-17);
  EXPECT_DOUBLE_EQ(truncation_radius(1.0, 16.0), 4.0);
  const GaussianInfluence g = GaussianInfluence::make(unit_material(), 0.01, 2, 36.0);
  EXPECT_EQ(g.truncation_radius, 0.01 * std::sqrt(36.0));
}

TEST(ElasticMaterial, DerivedModuli) {
  const ElasticMaterial m(6e4, 0.25, 1.0, 0.0);
  EXPECT_DOUBLE_EQ(m.shear_modulus(), 2.4e4);
  EXPECT_DOUBLE_EQ(m.bulk_modulus(), 4e4);
}

TEST(ElasticMaterial, RejectsNonPhysicalConstants) {
  EXPECT_THROW(ElasticMaterial(0.0, 0.25, 1.0, 0.0), ParameterError);
  EXPECT_THROW(ElasticMaterial(1.0, 0.25, -1.0, 0.0), ParameterError);
  EXPECT_THROW(ElasticMaterial(1.0, 0.25, 1.0, -1.0), ParameterError);
  EXPECT_THROW(ElasticMaterial(1.0, 0.25, 1.0, 0.0, 0.0), ParameterError);
}

TEST(ElasticMaterial, BondBasedPoissonRatio) {
  EXPECT_NO_THROW(ElasticMaterial::bond_based(2, 1.0, 1.0, 0.0).check_bond_based(2));
  EXPECT_NO_THROW(ElasticMaterial::bond_based(3, 1.0, 1.0, 0.0).check_bond_based(3));
  EXPECT_THROW(ElasticMaterial(1.0, 0.25, 1.0, 0.0).check_bond_based(2), ParameterError);
  EXPECT_THROW(ElasticMaterial(1.0, 1.0 / 3.0, 1.0, 0.0).check_bond_based(3), ParameterError);
}

TEST(ScalarFunctions, PureAndBitwiseRepeatable) {
  const ElasticMaterial m(1.92e11, 1.0 / 3.0, 8000.0, 1e3, 0.0025);
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(spring_constant(m, 0.0123, 2), spring_constant(m, 0.0123, 2));
    EXPECT_EQ(critical_stretch_gk(m, 0.0123, 2), critical_stretch_gk(m, 0.0123, 2));
    EXPECT_EQ(classical_critical_stretch(m, 0.03, 2), classical_critical_stretch(m, 0.03, 2));
    EXPECT_EQ(truncation_radius(0.0123, 36.0), truncation_radius(0.0123, 36.0));
  }
}

TEST(Enums, ParseRoundTrip) {
  for (auto m : {CorrectionMethod::none, CorrectionMethod::fa, CorrectionMethod::lammps,
                 CorrectionMethod::qwj}) {
    EXPECT_EQ(parse_correction_method(to_string(m)), m);
  }
  for (auto k : {MicromodulusKind::constant, MicromodulusKind::conical}) {
    EXPECT_EQ(parse_micromodulus_kind(to_string(k)), k);
  }
  EXPECT_FALSE(parse_correction_method("vca").has_value());
}

}  // namespace
}  // namespace peridyn
