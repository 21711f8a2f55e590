#include "qednp/grid.hpp"

#include <cmath>
#include <string>

#include "qednp/errors.hpp"

namespace qednp {

FrequencyGrid::FrequencyGrid(std::vector<double> points, SpacingPolicy policy)
    : pts_(std::move(points)), policy_(policy) {
    if (pts_.size() < 3) throw DomainError("frequency grid needs at least 3 points");
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (!std::isfinite(pts_[i])) throw DomainError("frequency grid has a non-finite point");
        if (i > 0 && !(pts_[i] > pts_[i - 1]))
            throw DomainError("frequency grid is not strictly increasing at index " +
                              std::to_string(i));
    }
}

FrequencyGrid FrequencyGrid::uniform(double lo, double hi, std::size_t n) {
    if (n < 3) throw DomainError("frequency grid needs at least 3 points");
    if (!(hi > lo)) throw DomainError("grid upper bound must exceed lower bound");
    std::vector<double> p(n);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) p[i] = lo + h * static_cast<double>(i);
    p.back() = hi;
    return FrequencyGrid(std::move(p), SpacingPolicy::Uniform);
}

FrequencyGrid FrequencyGrid::dense_near(double lo, double hi, std::size_t n, double center,
                                        double width) {
    if (n < 3) throw DomainError("frequency grid needs at least 3 points");
    if (!(hi > lo)) throw DomainError("grid upper bound must exceed lower bound");
    if (!(width > 0.0)) throw DomainError("feature width must be positive");
    if (center < lo || center > hi) throw DomainError("feature centre outside grid span");
    // w(u) = center + width * sinh(u), u uniform between the two preimages.
    const double ua = std::asinh((lo - center) / width);
    const double ub = std::asinh((hi - center) / width);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = ua + (ub - ua) * static_cast<double>(i) / static_cast<double>(n - 1);
        p[i] = center + width * std::sinh(u);
    }
    p.front() = lo;
    p.back() = hi;
    return FrequencyGrid(std::move(p), SpacingPolicy::DenseNearFeature);
}

double FrequencyGrid::max_step() const {
    double m = 0.0;
    for (std::size_t i = 1; i < pts_.size(); ++i) m = std::max(m, pts_[i] - pts_[i - 1]);
    return m;
}

std::vector<double> time_grid(double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end > 0.0)) throw DomainError("time grid needs positive dt and end");
    const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
    std::vector<double> t(n + 1);
    for (std::size_t i = 0; i <= n; ++i) t[i] = dt * static_cast<double>(i);
    return t;
}

}  // namespace qednp
