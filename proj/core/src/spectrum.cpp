#include "qednp/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "qednp/errors.hpp"
#include "qednp/quadrature.hpp"

namespace qednp {

double area(const Spectrum& s) { return trapezoid(s.grid.points(), s.density); }

Spectrum normalized(Spectrum s, Normalization n) {
    double scale = 1.0;
    if (n == Normalization::Peak) {
        scale = *std::max_element(s.density.begin(), s.density.end());
    } else if (n == Normalization::Area) {
        scale = area(s);
    }
    if (n != Normalization::Raw) {
        if (!(scale > 0.0)) throw DomainError("cannot normalize an empty spectrum");
        for (double& d : s.density) d /= scale;
    }
    s.norm = n;
    return s;
}

std::vector<Peak> find_peaks(const Spectrum& s, double rel_height) {
    const auto& x = s.grid.points();
    const auto& y = s.density;
    std::vector<Peak> out;
    if (y.size() < 3) return out;
    const double top = *std::max_element(y.begin(), y.end());
    if (!(top > 0.0)) return out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        if (y[i] < rel_height * top) continue;
        // Parabola through (x[i-1], x[i], x[i+1]) on a possibly non-uniform grid.
        const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
        const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
        const double d1 = (y1 - y0) / (x1 - x0), d2 = (y2 - y1) / (x2 - x1);
        const double a = (d2 - d1) / (x2 - x0);
        Peak p{x1, y1};
        if (a < 0.0) {
            const double b = d1 - a * (x0 + x1);
            p.position = std::clamp(-b / (2.0 * a), x0, x2);
            p.height = y1 + a * (p.position - x1) * (p.position - x1) +
                       (d1 + a * (x1 - x0)) * (p.position - x1);
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace qednp
