#include "qednp/jc.hpp"

#include <algorithm>
#include <cmath>

#include "qednp/errors.hpp"

namespace qednp {

using cplx = std::complex<double>;

void validate(const JcParams& p) {
    for (double v : {p.g, p.kappa, p.gamma_ng, p.gamma_dp})
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("JC rates must be finite and >= 0");
    if (!std::isfinite(p.delta)) throw DomainError("JC detuning must be finite");
}

JcParams from_ldos(const CavityParams& cavity, double gamma_hom, double beta) {
    if (!(beta > 0.0)) throw DegenerateInput("beta = 0 leaves no cavity channel");
    if (beta > 1.0) throw DomainError("beta must lie in (0, 1]");
    if (!(gamma_hom > 0.0)) throw DomainError("gamma_hom must be positive");
    const double f = cavity_fp_res(cavity);
    JcParams p;
    p.g = std::sqrt(f * gamma_hom * cavity.omega_c / (4.0 * cavity.q));
    p.kappa = cavity.omega_c / cavity.q;
    p.gamma_ng = gamma_hom * f * (1.0 / beta - 1.0);
    return p;
}

JcParams from_profile(const LorentzianCavity& c, double gamma_hom, double gamma_ng) {
    validate(LdosProfile{c});
    JcParams p;
    p.g = std::sqrt(c.fp_res * gamma_hom * c.omega_c / (4.0 * c.q));
    p.kappa = c.kappa();
    p.gamma_ng = gamma_ng;
    return p;
}

double cavity_channel_rate(const JcParams& p) {
    if (!(p.kappa > 0.0)) throw DomainError("cavity channel rate needs kappa > 0");
    return 4.0 * p.g * p.g / p.kappa;
}

namespace {

struct Deriv {
    double d11, d22;
    cplx d12, d13, d23;
};

Deriv rhs(const JcParams& p, const JcState& s) {
    const cplx i(0.0, 1.0);
    const double im12 = std::imag(s.rho12);
    Deriv d;
    d.d11 = -p.gamma_ng * s.rho11 - 2.0 * p.g * im12;
    d.d22 = -p.kappa * s.rho22 + 2.0 * p.g * im12;
    d.d12 = -(i * p.delta + 0.5 * (p.gamma_ng + p.kappa) + p.gamma_dp) * s.rho12 +
            i * p.g * (s.rho11 - s.rho22);
    d.d13 = -i * (0.5 * p.delta * s.rho13 + p.g * s.rho23) - (0.5 * p.gamma_ng + p.gamma_dp) * s.rho13;
    d.d23 = -i * (-0.5 * p.delta * s.rho23 + p.g * s.rho13) - 0.5 * p.kappa * s.rho23;
    return d;
}

JcState axpy(const JcState& s, double h, const Deriv& d) {
    return {s.rho11 + h * d.d11, s.rho22 + h * d.d22, s.rho12 + h * d.d12, s.rho13 + h * d.d13,
            s.rho23 + h * d.d23};
}

JcState rk4(const JcParams& p, const JcState& s, double dt) {
    const Deriv k1 = rhs(p, s);
    const Deriv k2 = rhs(p, axpy(s, 0.5 * dt, k1));
    const Deriv k3 = rhs(p, axpy(s, 0.5 * dt, k2));
    const Deriv k4 = rhs(p, axpy(s, dt, k3));
    const double w = dt / 6.0;
    return {s.rho11 + w * (k1.d11 + 2.0 * k2.d11 + 2.0 * k3.d11 + k4.d11),
            s.rho22 + w * (k1.d22 + 2.0 * k2.d22 + 2.0 * k3.d22 + k4.d22),
            s.rho12 + w * (k1.d12 + 2.0 * k2.d12 + 2.0 * k3.d12 + k4.d12),
            s.rho13 + w * (k1.d13 + 2.0 * k2.d13 + 2.0 * k3.d13 + k4.d13),
            s.rho23 + w * (k1.d23 + 2.0 * k2.d23 + 2.0 * k3.d23 + k4.d23)};
}

double max_rate(const JcParams& p) {
    return std::max({p.g, p.kappa, p.gamma_ng, p.gamma_dp, std::abs(p.delta)});
}

void check_state(const JcState& s, double t) {
    const double tol = 1e-6;
    const bool ok = s.rho11 >= -tol && s.rho22 >= -tol && s.rho11 + s.rho22 <= 1.0 + tol &&
                    std::norm(s.rho12) <= s.rho11 * s.rho22 + tol;
    if (!ok)
        throw StepSizeError("density-matrix invariant violated at t = " + std::to_string(t) +
                            " ns; reduce dt");
}

}  // namespace

JcTrajectory evolve(const JcParams& p, const JcState& init, double t_end, double dt,
                    std::size_t sample_every) {
    validate(p);
    if (!(dt > 0.0) || !(t_end > 0.0)) throw DomainError("time step and span must be positive");
    const double mr = max_rate(p);
    if (mr > 0.0 && dt > 0.05 / mr)
        throw StepSizeError("dt must not exceed 0.05 / max rate = " + std::to_string(0.05 / mr) + " ns");
    check_state(init, 0.0);
    if (sample_every == 0) sample_every = 1;
    const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
    JcTrajectory tr;
    tr.t.reserve(n / sample_every + 2);
    tr.states.reserve(n / sample_every + 2);
    tr.t.push_back(0.0);
    tr.states.push_back(init);
    JcState s = init;
    for (std::size_t k = 1; k <= n; ++k) {
        s = rk4(p, s, dt);
        const double t = dt * static_cast<double>(k);
        check_state(s, t);
        if (k % sample_every == 0 || k == n) {
            tr.t.push_back(t);
            tr.states.push_back(s);
        }
    }
    return tr;
}

std::complex<double> rabi_frequency(const JcParams& p) {
    const double d = p.gamma_ng - p.kappa;
    return std::sqrt(cplx(0.25 * d * d - 4.0 * p.g * p.g, 0.0));
}

double analytic_rho11(const JcParams& p, double t) {
    validate(p);
    if (p.delta != 0.0 || p.gamma_dp != 0.0)
        throw DomainError("closed-form population requires zero detuning and dephasing");
    const double d = p.gamma_ng - p.kappa;
    const double w2 = 0.25 * d * d - 4.0 * p.g * p.g;
    // c(t) = ch - (d / 2W) sh with ch = cosh(Wt/2), sh = sinh(Wt/2); the
    // square is written through C = cosh(Wt), S = sinh(Wt)/W, sh/W.
    double big_c, big_s, sh_over_w;
    if (w2 > 0.0) {
        const double w = std::sqrt(w2);
        big_c = std::cosh(w * t);
        big_s = std::sinh(w * t) / w;
        sh_over_w = std::sinh(0.5 * w * t) / w;
    } else if (w2 < 0.0) {
        const double w = std::sqrt(-w2);
        big_c = std::cos(w * t);
        big_s = std::sin(w * t) / w;
        sh_over_w = std::sin(0.5 * w * t) / w;
    } else {
        big_c = 1.0;
        big_s = t;
        sh_over_w = 0.5 * t;
    }
    const double env = std::exp(-0.5 * (p.gamma_ng + p.kappa) * t);
    return env * (0.5 * (big_c + 1.0) - 0.5 * d * big_s + 0.25 * d * d * sh_over_w * sh_over_w);
}

CouplingRegime classify_regime(const JcParams& p, double weak_factor) {
    validate(p);
    const double threshold = 0.25 * std::abs(p.gamma_ng - p.kappa);
    if (p.g > threshold) return CouplingRegime::Strong;
    if (p.g < weak_factor * threshold || p.g == 0.0) return CouplingRegime::Weak;
    return CouplingRegime::Intermediate;
}

const char* regime_name(CouplingRegime r) {
    switch (r) {
        case CouplingRegime::Weak: return "weak";
        case CouplingRegime::Intermediate: return "intermediate";
        case CouplingRegime::Strong: return "strong";
    }
    return "?";
}

TimeIntegrals time_integrals(const JcParams& p, const JcState& init) {
    validate(p);
    if (!(p.kappa + p.gamma_ng > 0.0)) throw DomainError("spectra need a decaying system (kappa + gamma_ng > 0)");
    if (init.rho11 > 0.0 && p.g == 0.0 && p.gamma_ng == 0.0)
        throw DomainError("an uncoupled emitter without side emission never decays");
    const double dt = 0.02 / max_rate(p);
    const std::size_t cap = 50'000'000;
    TimeIntegrals ti;
    JcState s = init;
    // Integrals advanced with the same RK4 stages via Simpson on each step
    // (exact to the order of the state update).
    double prev_trace = s.rho11 + s.rho22;
    double lambda = 0.0;
    std::size_t k = 0;
    const std::size_t probe = std::max<std::size_t>(1, static_cast<std::size_t>(1.0 / (dt * max_rate(p))));
    double trace_at_probe = prev_trace;
    for (; k < cap; ++k) {
        const JcState mid = rk4(p, s, 0.5 * dt);
        const JcState end = rk4(p, mid, 0.5 * dt);
        ti.rho11 += dt / 6.0 * (s.rho11 + 4.0 * mid.rho11 + end.rho11);
        ti.rho22 += dt / 6.0 * (s.rho22 + 4.0 * mid.rho22 + end.rho22);
        ti.rho12 += dt / 6.0 * (s.rho12 + 4.0 * mid.rho12 + end.rho12);
        s = end;
        const double tr = s.rho11 + s.rho22;
        if ((k + 1) % probe == 0) {
            if (tr > 0.0 && trace_at_probe > tr) lambda = std::log(trace_at_probe / tr) / (dt * probe);
            trace_at_probe = tr;
        }
        if (tr < 1e-10) break;
    }
    if (k == cap) throw DomainError("population did not decay within the integration cap");
    if (lambda > 0.0) {
        ti.rho11 += s.rho11 / lambda;
        ti.rho22 += s.rho22 / lambda;
        ti.rho12 += s.rho12 / lambda;
    }
    return ti;
}

JcSpectra jc_spectra(const JcParams& p, const TimeIntegrals& ti, const FrequencyGrid& grid,
                     Normalization norm) {
    validate(p);
    if (!(p.kappa + p.gamma_ng > 0.0)) throw DomainError("spectra need a decaying system (kappa + gamma_ng > 0)");
    const cplx i(0.0, 1.0);
    // Regression of X = (X31, X32): dX/dt = M X. Laplace transform at i w.
    const cplx m11 = i * (0.5 * p.delta) - (0.5 * p.gamma_ng + p.gamma_dp);
    const cplx m12 = i * p.g;
    const cplx m22 = -i * (0.5 * p.delta) - 0.5 * p.kappa;
    const cplx r21 = std::conj(ti.rho12);
    std::vector<double> se(grid.size()), sc(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const cplx s = i * grid[k];
        const cplx a11 = s - m11, a12 = -m12, a22 = s - m22;
        const cplx det = a11 * a22 - a12 * a12;
        // Emitter: X(0) = (rho11, rho12); cavity: X(0) = (rho21, rho22).
        se[k] = std::real((a22 * ti.rho11 - a12 * ti.rho12) / det);
        sc[k] = std::real((a11 * ti.rho22 - a12 * r21) / det);
    }
    auto norm_or_empty = [norm](Spectrum s) {
        const bool empty = std::all_of(s.density.begin(), s.density.end(), [](double v) { return v <= 0.0; });
        if (empty && norm != Normalization::Raw) {
            std::fill(s.density.begin(), s.density.end(), 0.0);
            s.norm = norm;
            return s;
        }
        return normalized(std::move(s), norm);
    };
    return {norm_or_empty(Spectrum{grid, std::move(se), Normalization::Raw}),
            norm_or_empty(Spectrum{grid, std::move(sc), Normalization::Raw})};
}

JcSpectra jc_spectra(const JcParams& p, const FrequencyGrid& grid, Normalization norm) {
    return jc_spectra(p, time_integrals(p), grid, norm);
}

FrequencyGrid default_jc_grid(const JcParams& p, std::size_t n) {
    const double split = std::abs(rabi_frequency(p)) + std::abs(p.delta);
    const double width = 0.5 * (p.gamma_ng + p.kappa) + p.gamma_dp + 1e-12;
    const double half = 0.5 * split + 40.0 * width + 2.0 * p.g;
    return FrequencyGrid::uniform(-half, half, n);
}

DressedLadder dressed_ladder(double g, double omega, int n_max) {
    if (n_max < 1) throw DomainError("ladder needs n_max >= 1");
    if (!(g >= 0.0)) throw DomainError("coupling must be >= 0");
    DressedLadder l;
    l.ground = 0.5 * omega;
    for (int n = 1; n <= n_max; ++n) {
        const double base = (n + 0.5) * omega;
        const double split = g * std::sqrt(static_cast<double>(n));
        l.rungs.push_back({n, base + split, base - split});
    }
    l.blockade_detuning_plus = g;
    l.blockade_detuning_minus = -g;
    l.tunneling_detuning_plus = g * std::sqrt(2.0) / 2.0;
    l.tunneling_detuning_minus = -g * std::sqrt(2.0) / 2.0;
    return l;
}

}  // namespace qednp
