#include "qednp/emitter.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "qednp/errors.hpp"
#include "qednp/quadrature.hpp"
#include "qednp/units.hpp"

namespace qednp {

void validate(const EmitterConfig& c) {
    if (!(c.gamma_hom > 0.0)) throw DomainError("gamma_hom must be positive");
    if (!(c.band_lo > 0.0)) throw DomainError("band lower edge must be positive");
    if (!(c.band_hi > c.band_lo)) throw DomainError("band upper edge must exceed lower edge");
    if (!(c.omega0 >= c.band_lo && c.omega0 <= c.band_hi))
        throw DomainError("transition frequency outside the LDOS band");
    if (!(c.gamma_extra >= 0.0)) throw DomainError("extra Markov rate must be non-negative");
}

cplx MemoryKernel::at(double tau) const {
    if (!exp_terms.empty()) {
        cplx s{};
        for (const auto& e : exp_terms) s += e.amplitude * std::exp(e.rate * tau);
        return s;
    }
    if (values.empty() || tau > tau_max() || tau < 0.0) return {};
    const double u = tau / dt;
    const auto k = static_cast<std::size_t>(std::floor(u));
    if (k + 1 >= values.size()) return values.back();
    const double f = u - static_cast<double>(k);
    return values[k] + f * (values[k + 1] - values[k]);
}

bool MemoryKernel::is_zero() const {
    if (!exp_terms.empty()) return false;
    return std::all_of(values.begin(), values.end(), [](cplx v) { return v == cplx{}; });
}

double ww_rate(const LdosProfile& profile, const EmitterConfig& cfg) {
    validate(cfg);
    return cfg.gamma_hom * evaluate_purcell(profile, cfg.omega0);
}

namespace {

std::size_t steps_for(double span, double dt) {
    return static_cast<std::size_t>(std::llround(span / dt));
}

double emitter_linewidth(const LdosProfile& profile, const EmitterConfig& cfg) {
    return cfg.gamma_hom * evaluate_purcell(profile, cfg.omega0) + cfg.gamma_extra;
}

}  // namespace

MemoryKernel build_kernel(const std::function<double(double)>& delta_fp,
                          const std::vector<double>& breaks, const EmitterConfig& cfg,
                          double background_rate, double dt, double tau_max) {
    validate(cfg);
    if (!(dt > 0.0)) throw DomainError("kernel step must be positive");
    if (!(tau_max >= 10.0 * dt)) throw DomainError("kernel span must cover at least 10 steps");
    MemoryKernel k;
    k.dt = dt;
    k.background_rate = background_rate;
    const std::size_t n = steps_for(tau_max, dt);
    k.values.resize(n + 1);
    const double pref = cfg.gamma_hom / kTwoPi;
    QuadOptions opt;
    opt.rel_tol = 1e-8;
    for (std::size_t i = 0; i <= n; ++i) {
        const double tau = dt * static_cast<double>(i);
        ComplexFn f = [&](double w) {
            return (w / cfg.omega0) * delta_fp(w) * std::exp(cplx(0.0, (cfg.omega0 - w) * tau));
        };
        k.values[i] = pref * integrate_panels(f, breaks, opt);
    }
    return k;
}

MemoryKernel build_kernel(const LdosProfile& profile, const EmitterConfig& cfg, double dt,
                          double tau_max) {
    validate(cfg);
    validate(profile);
    const double bg = markov_background(profile);
    const double background_rate = cfg.gamma_hom * bg + cfg.gamma_extra;
    const bool narrow = (cfg.band_hi - cfg.band_lo) < 10.0 * emitter_linewidth(profile, cfg);

    if (std::holds_alternative<Homogeneous>(profile)) {
        if (!(dt > 0.0) || !(tau_max >= 10.0 * dt)) throw DomainError("invalid kernel grid");
        MemoryKernel k;
        k.dt = dt;
        k.background_rate = background_rate;
        k.values.assign(steps_for(tau_max, dt) + 1, cplx{});
        k.truncation_warning = narrow;
        return k;
    }
    if (const auto* c = std::get_if<LorentzianCavity>(&profile)) {
        if (!(dt > 0.0) || !(tau_max >= 10.0 * dt)) throw DomainError("invalid kernel grid");
        // Closed-form transform of the Lorentzian in the pole approximation:
        // g^2 exp[(i(w0 - wc) - kappa/2) tau], g^2 = F gamma_hom kappa / 4.
        const double kappa = c->kappa();
        const double g2 = c->fp_res * cfg.gamma_hom * kappa / 4.0;
        MemoryKernel k;
        k.dt = dt;
        k.background_rate = background_rate;
        k.exp_terms.push_back({cplx(g2, 0.0), cplx(-0.5 * kappa, cfg.omega0 - c->omega_c)});
        const std::size_t n = steps_for(tau_max, dt);
        k.values.resize(n + 1);
        for (std::size_t i = 0; i <= n; ++i) k.values[i] = k.at(dt * static_cast<double>(i));
        k.truncation_warning = narrow;
        return k;
    }
    auto dfp = [&profile, bg](double w) { return evaluate_purcell(profile, w) - bg; };
    auto k = build_kernel(dfp, feature_breaks(profile, cfg.band_lo, cfg.band_hi), cfg,
                          background_rate, dt, tau_max);
    k.truncation_warning = narrow;
    return k;
}

AmplitudeTrajectory solve_volterra(const MemoryKernel& kernel, const EmitterConfig& cfg,
                                   double t_end, double dt) {
    validate(cfg);
    if (!(dt > 0.0) || !(t_end > 0.0)) throw DomainError("time step and span must be positive");
    const bool closed = !kernel.exp_terms.empty();
    if (!closed && !kernel.values.empty()) {
        const double ratio = kernel.dt / dt;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || std::round(ratio) < 1.0)
            throw DomainError("time step must equal or divide the kernel step");
    }
    const std::size_t n = steps_for(t_end, dt);
    const double half_g = 0.5 * kernel.background_rate;
    // The Markovian term is integrated exactly (integrating factor); Heun
    // handles the memory integral only, so a zero kernel is exact.
    const double decay = std::exp(-half_g * dt);

    AmplitudeTrajectory tr;
    tr.t.resize(n + 1);
    tr.c.resize(n + 1);
    tr.emitted.assign(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) tr.t[i] = dt * static_cast<double>(i);
    tr.c[0] = 1.0;

    auto check = [&](cplx c, std::size_t i) {
        if (!(std::abs(c) <= 1.0 + 1e-6) || !std::isfinite(std::abs(c)))
            throw StepSizeError("amplitude exceeded 1 at t = " + std::to_string(tr.t[i]) +
                                " ns; reduce dt (currently " + std::to_string(dt) + " ns)");
    };

    // memory(m, c_m) returns the trapezoidal approximation of
    // int_0^{t_m} K(t_m - s) c(s) ds given c_0..c_{m-1} and a trial c_m.
    if (closed) {
        struct Term {
            cplx amp, z, rate;
            cplx f_prev;  // F_{m-1} = sum_{j<m} z^{m-1-j} c_j
        };
        std::vector<Term> terms;
        for (const auto& e : kernel.exp_terms) terms.push_back({e.amplitude, std::exp(e.rate * dt), e.rate, 0.0});
        auto memory = [&](std::size_t m, cplx cm) {
            if (m == 0) return cplx{};
            cplx s{};
            for (const auto& tm : terms) {
                const cplx zn = std::exp(tm.rate * (dt * static_cast<double>(m)));
                const cplx fm = tm.z * tm.f_prev + cm;
                s += tm.amp * (fm - 0.5 * zn * tr.c[0] - 0.5 * cm);
            }
            return dt * s;
        };
        auto commit = [&](std::size_t m) {
            for (auto& tm : terms) tm.f_prev = (m == 0 ? cplx{} : tm.z * tm.f_prev) + tr.c[m];
        };
        commit(0);
        cplx mem_n{};
        for (std::size_t m = 0; m < n; ++m) {
            const cplx pred = decay * (tr.c[m] - dt * mem_n);
            tr.c[m + 1] = decay * tr.c[m] - 0.5 * dt * (decay * mem_n + memory(m + 1, pred));
            check(tr.c[m + 1], m + 1);
            const cplx mem_next = memory(m + 1, tr.c[m + 1]);
            commit(m + 1);
            const double flux0 = 2.0 * half_g * std::norm(tr.c[m]) + 2.0 * std::real(std::conj(tr.c[m]) * mem_n);
            const double flux1 = 2.0 * half_g * std::norm(tr.c[m + 1]) +
                                 2.0 * std::real(std::conj(tr.c[m + 1]) * mem_next);
            tr.emitted[m + 1] = tr.emitted[m] + 0.5 * dt * (flux0 + flux1);
            mem_n = mem_next;
        }
        return tr;
    }

    std::vector<cplx> kd(n + 1);
    for (std::size_t i = 0; i <= n; ++i) kd[i] = kernel.at(dt * static_cast<double>(i));
    const bool zero = std::all_of(kd.begin(), kd.end(), [](cplx v) { return v == cplx{}; });
    // Sum over the already-fixed interior points j = 1..m-1 plus the c_0 end.
    auto fixed_part = [&](std::size_t m) {
        if (m == 0 || zero) return cplx{};
        cplx s = 0.5 * kd[m] * tr.c[0];
        for (std::size_t j = 1; j < m; ++j) s += kd[m - j] * tr.c[j];
        return s;
    };
    cplx mem_n{};
    for (std::size_t m = 0; m < n; ++m) {
        const cplx pred = decay * (tr.c[m] - dt * mem_n);
        const cplx base = fixed_part(m + 1);
        const cplx mem_pred = dt * (base + 0.5 * kd[0] * pred);
        tr.c[m + 1] = decay * tr.c[m] - 0.5 * dt * (decay * mem_n + mem_pred);
        check(tr.c[m + 1], m + 1);
        const cplx mem_next = dt * (base + 0.5 * kd[0] * tr.c[m + 1]);
        const double flux0 = 2.0 * half_g * std::norm(tr.c[m]) + 2.0 * std::real(std::conj(tr.c[m]) * mem_n);
        const double flux1 = 2.0 * half_g * std::norm(tr.c[m + 1]) +
                             2.0 * std::real(std::conj(tr.c[m + 1]) * mem_next);
        tr.emitted[m + 1] = tr.emitted[m] + 0.5 * dt * (flux0 + flux1);
        mem_n = mem_next;
    }
    return tr;
}

namespace {

// Lorentzian closed form: b^2 PV int_0^inf x / (((x-1)^2 + b^2)(u - x)) dx
// with u = Omega/wc and b = 1/(2Q), via partial fractions.
double lorentzian_lamb_integral(double u, double q) {
    const double b = 0.5 / q;
    const double b2 = b * b;
    const double a = u / ((u - 1.0) * (u - 1.0) + b2);
    const double c = -a * (1.0 + b2) / u;
    return b2 * (a * std::log(u) - 0.5 * a * std::log1p(b2) +
                 ((a + c) / b) * (0.5 * kPi + std::atan(1.0 / b)));
}

}  // namespace

double lamb_shift_numeric(const LdosProfile& profile, const EmitterConfig& cfg, double omega,
                          const LambOptions& opt) {
    validate(cfg);
    if (!(omega > cfg.band_lo && omega < cfg.band_hi))
        throw DomainError("Lamb-shift frequency outside the LDOS band");
    const double bg = markov_background(profile);
    const double wref = std::holds_alternative<LorentzianCavity>(profile)
                            ? std::get<LorentzianCavity>(profile).omega_c
                            : cfg.omega0;
    auto g = [&](double w) {
        const double weight = opt.frequency_weight ? w / cfg.omega0 : wref / cfg.omega0;
        return weight * (evaluate_purcell(profile, w) - bg);
    };
    const double g0 = g(omega);
    auto sub = [&](double w) {
        const double d = omega - w;
        return d == 0.0 ? 0.0 : (g(w) - g0) / d;
    };
    auto breaks = feature_breaks(profile, cfg.band_lo, cfg.band_hi);
    breaks.push_back(omega);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    QuadOptions qo;
    qo.rel_tol = 1e-10;
    double pv = integrate_panels(RealFn(sub), breaks, qo);
    pv += g0 * std::log((omega - cfg.band_lo) / (cfg.band_hi - omega));
    return cfg.gamma_hom / kTwoPi * pv;
}

double lamb_shift(const LdosProfile& profile, const EmitterConfig& cfg, double omega,
                  const LambOptions& opt) {
    validate(cfg);
    if (!(omega > cfg.band_lo && omega < cfg.band_hi))
        throw DomainError("Lamb-shift frequency outside the LDOS band");
    if (std::holds_alternative<Homogeneous>(profile)) return 0.0;
    if (const auto* c = std::get_if<LorentzianCavity>(&profile); c && opt.frequency_weight)
        return cfg.gamma_hom / kTwoPi * (c->omega_c / cfg.omega0) * c->fp_res *
               lorentzian_lamb_integral(omega / c->omega_c, c->q);
    return lamb_shift_numeric(profile, cfg, omega, opt);
}

Spectrum emission_spectrum(const LdosProfile& profile, const EmitterConfig& cfg,
                           const FrequencyGrid& grid, Normalization norm) {
    validate(cfg);
    validate(profile);
    if (grid.front() < cfg.band_lo || grid.back() > cfg.band_hi)
        throw DomainError("spectrum grid must lie inside the LDOS band");
    std::vector<double> s(grid.size());
    const bool homogeneous = std::holds_alternative<Homogeneous>(profile);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        double shift = 0.0;
        if (const auto* c = std::get_if<LorentzianCavity>(&profile))
            shift = cfg.gamma_hom / kTwoPi * (c->omega_c / cfg.omega0) * c->fp_res *
                    lorentzian_lamb_integral(w / c->omega_c, c->q);
        else if (!homogeneous && w > cfg.band_lo && w < cfg.band_hi)
            shift = lamb_shift(profile, cfg, w);
        const double half = 0.5 * (cfg.gamma_hom * evaluate_purcell(profile, w) * w / cfg.omega0 +
                                   cfg.gamma_extra);
        const double d = w - cfg.omega0 - shift;
        s[i] = 1.0 / (d * d + half * half);
    }
    return normalized(Spectrum{grid, std::move(s), Normalization::Raw}, norm);
}

}  // namespace qednp
