#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "qednp/grid.hpp"

namespace qednp {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Rules are computed once per order and cached.
const GaussLegendreRule& gauss_legendre(int order);

struct QuadOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    int max_depth = 40;
    int order = 15;
};

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

double integrate(const RealFn& f, double a, double b, const QuadOptions& opt = {});
std::complex<double> integrate(const ComplexFn& f, double a, double b,
                               const QuadOptions& opt = {});

// Integrates piecewise over [breaks[0], breaks[1]], ... ; breaks sorted.
double integrate_panels(const RealFn& f, std::span<const double> breaks,
                        const QuadOptions& opt = {});
std::complex<double> integrate_panels(const ComplexFn& f, std::span<const double> breaks,
                                      const QuadOptions& opt = {});

double trapezoid(std::span<const double> x, std::span<const double> y);

// PV of  ∫ f(w) / (pole - w) dw  over the grid span, f sampled on the grid
// and linearly interpolated. The pole is subtracted and the remaining
// logarithm integrated in closed form, so the result is exact for
// piecewise-linear f.
double principal_value_integral(const FrequencyGrid& grid, std::span<const double> f,
                                double pole);

// Same PV for a callable: symmetric pairs f(p-s) - f(p+s) over the largest
// interval centred on the pole, adaptive quadrature on the remainder.
double principal_value_integral(const RealFn& f, double a, double b, double pole,
                                const QuadOptions& opt = {});

}  // namespace qednp
