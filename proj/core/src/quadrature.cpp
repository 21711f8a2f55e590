#include "qednp/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "qednp/errors.hpp"
#include "qednp/units.hpp"

namespace qednp {

const GaussLegendreRule& gauss_legendre(int order) {
    static std::mutex mu;
    static std::map<int, GaussLegendreRule> cache;
    if (order < 1 || order > 200) throw DomainError("Gauss-Legendre order out of range");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussLegendreRule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes[i] = -x;
        r.nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.weights[i] = w;
        r.weights[order - 1 - i] = w;
    }
    if (order == 1) {
        r.nodes[0] = 0.0;
        r.weights[0] = 2.0;
    }
    return cache.emplace(order, std::move(r)).first->second;
}

namespace {

template <class T>
struct Panel {
    T value;
    double l1;
};

template <class T, class F>
Panel<T> gl_panel(const F& f, double a, double b, const GaussLegendreRule& rule) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T s{};
    double l1 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const T v = f(c + h * rule.nodes[i]);
        s += rule.weights[i] * v;
        l1 += rule.weights[i] * std::abs(v);
    }
    return {s * h, l1 * std::abs(h)};
}

template <class T, class F>
T adapt(const F& f, double a, double b, T whole, double tol, int depth,
        const GaussLegendreRule& rule) {
    const double m = 0.5 * (a + b);
    const auto left = gl_panel<T, F>(f, a, m, rule);
    const auto right = gl_panel<T, F>(f, m, b, rule);
    const T both = left.value + right.value;
    if (depth <= 0 || std::abs(both - whole) <= tol) return both;
    return adapt<T, F>(f, a, m, left.value, 0.5 * tol, depth - 1, rule) +
           adapt<T, F>(f, m, b, right.value, 0.5 * tol, depth - 1, rule);
}

template <class T, class F>
T integrate_impl(const F& f, double a, double b, const QuadOptions& opt) {
    if (a == b) return T{};
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration bounds must be finite");
    const auto& rule = gauss_legendre(opt.order);
    constexpr int kSeed = 8;
    T total{};
    double l1 = 0.0;
    std::vector<T> seeds(kSeed);
    const double h = (b - a) / kSeed;
    for (int i = 0; i < kSeed; ++i) {
        const auto p = gl_panel<T, F>(f, a + i * h, a + (i + 1) * h, rule);
        seeds[i] = p.value;
        total += p.value;
        l1 += p.l1;
    }
    const double tol = std::max(opt.abs_tol, opt.rel_tol * l1);
    T out{};
    for (int i = 0; i < kSeed; ++i)
        out += adapt<T, F>(f, a + i * h, a + (i + 1) * h, seeds[i], tol / kSeed, opt.max_depth,
                           rule);
    return out;
}

}  // namespace

double integrate(const RealFn& f, double a, double b, const QuadOptions& opt) {
    return integrate_impl<double>(f, a, b, opt);
}

std::complex<double> integrate(const ComplexFn& f, double a, double b, const QuadOptions& opt) {
    return integrate_impl<std::complex<double>>(f, a, b, opt);
}

double integrate_panels(const RealFn& f, std::span<const double> breaks, const QuadOptions& opt) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) s += integrate(f, breaks[i], breaks[i + 1], opt);
    return s;
}

std::complex<double> integrate_panels(const ComplexFn& f, std::span<const double> breaks,
                                      const QuadOptions& opt) {
    std::complex<double> s{};
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) s += integrate(f, breaks[i], breaks[i + 1], opt);
    return s;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("trapezoid: size mismatch");
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

double principal_value_integral(const FrequencyGrid& grid, std::span<const double> f, double pole) {
    const auto& x = grid.points();
    if (f.size() != x.size()) throw DomainError("PV integrand size does not match grid");
    if (!(pole > x.front() && pole < x.back()))
        throw DomainError("PV pole must lie strictly inside the grid span");
    for (double v : f)
        if (!std::isfinite(v)) throw DomainError("PV integrand is not finite");

    // Value of the interpolant at the pole.
    const auto hi = std::upper_bound(x.begin(), x.end(), pole);
    const std::size_t k = static_cast<std::size_t>(hi - x.begin()) - 1;
    const double slope_k = (f[k + 1] - f[k]) / (x[k + 1] - x[k]);
    const double fp = f[k] + slope_k * (pole - x[k]);

    double s = fp * std::log((pole - x.front()) / (x.back() - pole));
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double h = x[i + 1] - x[i];
        const double c1 = (f[i + 1] - f[i]) / h;
        // Linear piece written as c0 + c1 (w - pole).
        const double c0 = f[i] + c1 * (pole - x[i]);
        s -= c1 * h;
        const double d0 = pole - x[i], d1 = pole - x[i + 1];
        if (i != k && d0 != 0.0 && d1 != 0.0)
            s += (c0 - fp) * std::log(std::abs(d0 / d1));
    }
    return s;
}

double principal_value_integral(const RealFn& f, double a, double b, double pole,
                                const QuadOptions& opt) {
    if (!(pole > a && pole < b)) throw DomainError("PV pole must lie strictly inside (a, b)");
    const double d = std::min(pole - a, b - pole);
    auto paired = [&](double s) { return (f(pole - s) - f(pole + s)) / s; };
    double out = integrate(RealFn(paired), 0.0, d, opt);
    auto plain = [&](double w) { return f(w) / (pole - w); };
    if (pole - d > a) out += integrate(RealFn(plain), a, pole - d, opt);
    if (pole + d < b) out += integrate(RealFn(plain), pole + d, b, opt);
    return out;
}

}  // namespace qednp
