#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qednp/errors.hpp"
#include "qednp/grid.hpp"
#include "qednp/quadrature.hpp"
#include "qednp/units.hpp"

using namespace qednp;

TEST(Convert, MicroElectronVoltToRadPerNs) {
    // Oracle: E / hbar with hbar = 6.58211957e-7 eV ns.
    const double expected = 1e-6 / 6.58211957e-7;
    EXPECT_NEAR(convert(1.0, Unit::MicroEV, Unit::RadPerNs), expected, 1e-9);
    EXPECT_NEAR(convert(1.0, Unit::MicroEV, Unit::RadPerNs), 1.519, 5e-4);
}

TEST(Convert, ZeroMapsToZero) {
    EXPECT_EQ(convert(0.0, Unit::MicroEV, Unit::RadPerNs), 0.0);
    EXPECT_EQ(convert(0.0, Unit::Kelvin, Unit::MilliEV), 0.0);
}

TEST(Convert, CyclicGigahertz) {
    EXPECT_NEAR(convert(22.0, Unit::GHz, Unit::RadPerNs), 138.23, 0.01);
    EXPECT_DOUBLE_EQ(convert(22.0, Unit::GHz, Unit::RadPerNs), 2.0 * kPi * 22.0);
}

TEST(Convert, WavelengthAndTemperature) {
    // 950 nm photon: 2 pi c / lambda.
    EXPECT_NEAR(convert(950.0, Unit::Nanometer, Unit::RadPerNs), 2.0 * kPi * 299792458.0 / 950.0, 1e-6);
    EXPECT_NEAR(convert(convert(950.0, Unit::Nanometer, Unit::MilliEV), Unit::MilliEV, Unit::Nanometer), 950.0, 1e-9);
    // k_B * 1 K = 86.17 ueV
    EXPECT_NEAR(convert(1.0, Unit::Kelvin, Unit::MicroEV), 86.17333262, 1e-6);
}

TEST(Convert, UnsupportedUnitThrows) {
    EXPECT_THROW(parse_unit("furlong"), UnitError);
    EXPECT_THROW(convert(-1.0, Unit::Nanometer, Unit::RadPerNs), UnitError);
    EXPECT_EQ(parse_unit("GHz_x2pi"), Unit::GHz);
    EXPECT_EQ(parse_unit("ueV"), Unit::MicroEV);
}

TEST(Convert, RoundTripProperty) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mag(-6.0, 6.0);
    const Unit all[] = {Unit::MicroEV, Unit::MilliEV, Unit::RadPerNs, Unit::PerNs,
                        Unit::Nanometer, Unit::GHz, Unit::Kelvin};
    for (int i = 0; i < 2000; ++i) {
        const double x = std::pow(10.0, mag(rng));
        const Unit a = all[rng() % 7], b = all[rng() % 7];
        const double y = convert(convert(x, a, b), b, a);
        EXPECT_NEAR(y / x, 1.0, 1e-12) << unit_name(a) << " -> " << unit_name(b);
    }
}

TEST(Grid, RejectsShortAndNonMonotone) {
    EXPECT_THROW(FrequencyGrid({1.0, 2.0}), DomainError);
    EXPECT_THROW(FrequencyGrid({1.0, 2.0, 2.0}), DomainError);
    EXPECT_NO_THROW(FrequencyGrid({1.0, 2.0, 3.0}));
}

TEST(Grid, DenseNearFeatureIsMonotoneAndClustered) {
    auto g = FrequencyGrid::dense_near(-100.0, 100.0, 201, 10.0, 0.5);
    EXPECT_DOUBLE_EQ(g.front(), -100.0);
    EXPECT_DOUBLE_EQ(g.back(), 100.0);
    double near = 1e300, far = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i) {
        const double h = g[i] - g[i - 1];
        EXPECT_GT(h, 0.0);
        if (std::abs(g[i] - 10.0) < 1.0) near = std::min(near, h);
        far = std::max(far, h);
    }
    EXPECT_LT(near * 10.0, far);
}

TEST(Quadrature, GaussLegendreIntegratesPolynomialsExactly) {
    const auto& r = gauss_legendre(10);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], 18);
    EXPECT_NEAR(s, 2.0 / 19.0, 1e-14);
}

TEST(Quadrature, AdaptiveHandlesNarrowPeak) {
    const double w = 1e-5;
    auto f = [w](double x) { return w / (x * x + w * w); };
    const double breaks[] = {-1.0, -10 * w, 0.0, 10 * w, 1.0};
    EXPECT_NEAR(integrate_panels(RealFn(f), breaks), 2.0 * std::atan(1.0 / w), 1e-8);
}

TEST(PrincipalValue, ConstantOnSymmetricGridIsZero) {
    auto g = FrequencyGrid::uniform(-3.0, 3.0, 601);
    std::vector<double> f(g.size(), 1.0);
    EXPECT_NEAR(principal_value_integral(g, f, 0.0), 0.0, 1e-13);
    EXPECT_NEAR(principal_value_integral(RealFn([](double) { return 1.0; }), -3.0, 3.0, 0.0), 0.0, 1e-13);
}

TEST(PrincipalValue, LinearNumerator) {
    // PV int_{-1}^{1} w / (0 - w) dw = -2.
    auto g = FrequencyGrid::uniform(-1.0, 1.0, 11);
    std::vector<double> f(g.points());
    EXPECT_NEAR(principal_value_integral(g, f, 0.0), -2.0, 1e-13);
    EXPECT_NEAR(principal_value_integral(RealFn([](double w) { return w; }), -1.0, 1.0, 0.0), -2.0, 1e-12);
}

TEST(PrincipalValue, OffCentrePoleMatchesAntiderivative) {
    // f = w^2 on [0, 3], pole at 1.3: PV int w^2/(p-w) = -(p^2 ln|p-w| + p w + w^2/2) |_0^3
    const double p = 1.3;
    auto prim = [p](double w) { return -(p * p * std::log(std::abs(p - w)) + p * w + 0.5 * w * w); };
    const double exact = prim(3.0) - prim(0.0);
    EXPECT_NEAR(principal_value_integral(RealFn([](double w) { return w * w; }), 0.0, 3.0, p), exact, 1e-10);
    auto g = FrequencyGrid::uniform(0.0, 3.0, 30001);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = g[i] * g[i];
    EXPECT_NEAR(principal_value_integral(g, f, p), exact, 1e-6);
}

TEST(PrincipalValue, LorentzianCentredOnPoleVanishes) {
    auto g = FrequencyGrid::uniform(-50.0, 50.0, 4001);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = 1.0 / (1.0 + g[i] * g[i]);
    EXPECT_LT(std::abs(principal_value_integral(g, f, 0.0)), 1e-6 * 1.0 * 100.0);
}

TEST(PrincipalValue, PoleOutsideThrows) {
    auto g = FrequencyGrid::uniform(0.0, 1.0, 5);
    std::vector<double> f(5, 1.0);
    EXPECT_THROW(principal_value_integral(g, f, 1.0), DomainError);
    EXPECT_THROW(principal_value_integral(g, f, 2.0), DomainError);
}

TEST(PrincipalValue, LinearityProperty) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    auto g = FrequencyGrid::uniform(-5.0, 5.0, 513);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = u(rng), b = u(rng), pole = 0.9 * u(rng) * 2.0;
        std::vector<double> f(g.size()), h(g.size()), mix(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            f[i] = std::sin(g[i]) + 2.0;
            h[i] = std::exp(-g[i] * g[i]);
            mix[i] = a * f[i] + b * h[i];
        }
        const double lhs = principal_value_integral(g, mix, pole);
        const double rhs = a * principal_value_integral(g, f, pole) + b * principal_value_integral(g, h, pole);
        EXPECT_NEAR(lhs, rhs, 1e-11 * (1.0 + std::abs(lhs)));
    }
}

TEST(PrincipalValue, GridRouteConvergesToCallableRoute) {
    auto f = [](double w) { return std::exp(-0.5 * (w - 0.3) * (w - 0.3)); };
    const double ref = principal_value_integral(RealFn(f), -8.0, 8.0, 0.7);
    double prev_err = 0.0;
    for (std::size_t n : {401u, 801u, 1601u}) {
        auto g = FrequencyGrid::uniform(-8.0, 8.0, n);
        std::vector<double> v(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
        const double err = std::abs(principal_value_integral(g, v, 0.7) - ref);
        if (prev_err > 0.0) EXPECT_LT(err, prev_err / 3.0);
        prev_err = err;
    }
    EXPECT_LT(prev_err, 1e-4);
}
