#include "qednp/phonon.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "qednp/errors.hpp"
#include "qednp/quadrature.hpp"
#include "qednp/units.hpp"

namespace qednp {

using cplx = std::complex<double>;

void validate(const PhononParams& p) {
    if (!(p.c_s > 0.0) || !(p.d_m > 0.0) || !(p.sigma_e > 0.0) || !(p.sigma_g > 0.0))
        throw DomainError("c_s, d_m, sigma_e and sigma_g must be positive");
    if (!(p.temperature >= 0.0)) throw DomainError("temperature must be >= 0");
    if (!std::isfinite(p.d_e) || !std::isfinite(p.d_g)) throw DomainError("deformation potentials must be finite");
}

double occupation(double omega, double temperature) {
    if (!(omega > 0.0)) throw DomainError("occupation needs omega > 0");
    if (temperature < 0.0) throw DomainError("temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    const auto& u = default_units();
    const double x = u.rad_ns_to_ev(omega) / (u.k_b * temperature);
    return 1.0 / std::expm1(x);
}

double spectral_density(const PhononParams& p, double omega) {
    validate(p);
    if (omega < 0.0) throw DomainError("spectral density needs omega >= 0");
    if (omega == 0.0) return 0.0;
    const auto& u = default_units();
    const double w_si = omega * 1e9;                 // rad/s
    const double c = p.c_s;                          // m/s
    const double de = p.d_e * u.electron_volt, dg = p.d_g * u.electron_volt;
    const double xe = omega * p.sigma_e / p.c_s, xg = omega * p.sigma_g / p.c_s;
    const double m = de * std::exp(-0.5 * xe * xe) - dg * std::exp(-0.5 * xg * xg);
    const double j_si = w_si * w_si * w_si * m * m /
                        (4.0 * kPi * kPi * p.d_m * std::pow(c, 5) * u.hbar_si);
    return j_si * 1e-9;  // 1/ns
}

double effective_phonon_density(const PhononParams& p, double omega) {
    validate(p);
    if (omega == 0.0) return 0.0;
    const double w = std::abs(omega);
    const double j = spectral_density(p, w);
    const double n = occupation(w, p.temperature);
    return omega > 0.0 ? kPi * j * (n + 1.0) : kPi * j * n;
}

double effective_phonon_dos(const PhononParams& p, double omega) {
    if (!(omega > 0.0)) throw DomainError("phonon DOS needs omega > 0");
    return kTwoPi * spectral_density(p, omega);
}

DosPeak phonon_dos_peak(const PhononParams& p) {
    validate(p);
    // Golden-section search; the DOS is unimodal for physical parameters.
    const double scale = p.c_s / std::min(p.sigma_e, p.sigma_g);
    double a = 1e-3 * scale, b = 5.0 * scale;
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = effective_phonon_dos(p, x1), f2 = effective_phonon_dos(p, x2);
    for (int i = 0; i < 200 && (b - a) > 1e-12 * scale; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = effective_phonon_dos(p, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = effective_phonon_dos(p, x1);
        }
    }
    const double w = 0.5 * (a + b);
    return {w, kTwoPi * p.c_s / w};
}

PhononRate phonon_purcell_rate(const PhononParams& p, const JcParams& jc, double delta,
                               double validity_factor) {
    validate(p);
    validate(jc);
    const double gdis = 0.5 * (jc.gamma_ng + jc.kappa);
    if (!(gdis > 0.0)) throw DomainError("phonon-assisted rate needs gamma_ng + kappa > 0");
    const double phi = effective_phonon_density(p, delta);
    const double rate =
        jc.gamma_ng + 2.0 * jc.g * jc.g * gdis / (gdis * gdis + delta * delta) * (1.0 + phi / gdis);
    return {rate, std::abs(delta) >= validity_factor * jc.g};
}

namespace {

// Low-frequency power-law exponent of J, estimated from two small frequencies.
double onset_exponent(const SpectralDensityFn& j, double omega_cut) {
    const double e = 1e-4 * omega_cut;
    const double j1 = j(e), j2 = j(2.0 * e);
    if (j1 == 0.0 && j2 == 0.0) return 3.0;
    if (!(j1 > 0.0) || !(j2 > 0.0)) return 0.0;
    return std::log2(j2 / j1);
}

// int_a^b of the linear interpolant of f times exp(i d t), exactly.
cplx filon_segment(cplx fa, cplx fb, double a, double b, double d) {
    const double h = b - a;
    const double x = d * h;
    const cplx ea = std::exp(cplx(0.0, d * a));
    if (std::abs(x) < 1e-4) {
        // Series in x to third order.
        const cplx i(0.0, 1.0);
        const cplx m0 = h * (1.0 + i * x / 2.0 - x * x / 6.0);
        const cplx m1 = h * (0.5 + i * x / 3.0 - x * x / 8.0);  // int s e^{ixs} ds on [0,1], times h
        return ea * (fa * m0 + (fb - fa) * m1);
    }
    const cplx eb = std::exp(cplx(0.0, d * b));
    const cplx id(0.0, d);
    const cplx i0 = (eb - ea) / id;
    const cplx i1 = h * eb / id - (eb - ea) / (id * id);
    return fa * i0 + (fb - fa) / h * i1;
}

}  // namespace

IbmResult ibm_spectrum(const SpectralDensityFn& j, double omega_cut, double temperature,
                       double gamma_tot, const FrequencyGrid& grid, const IbmOptions& opt) {
    if (!(gamma_tot > 0.0)) throw DomainError("zero-phonon linewidth must be positive");
    if (!(omega_cut > 0.0)) throw DomainError("phonon cutoff must be positive");
    if (temperature < 0.0) throw DomainError("temperature must be >= 0");
    const double span = meV_to_rad_ns(10.0);
    if (opt.require_span && (grid.front() > -span || grid.back() < span))
        throw DomainError("IBM spectrum grid must span at least +-10 meV around the zero-phonon line");
    const double s = onset_exponent(j, omega_cut);
    const double need = temperature > 0.0 ? 2.0 : 1.0;
    if (!(s > need + 0.1))
        throw ModelError("spectral density does not vanish fast enough at zero frequency; phi(0) diverges");

    auto weight = [&](double w) {
        const double jw = j(w) / (w * w);
        const double cth = temperature > 0.0 ? 1.0 + 2.0 * occupation(w, temperature) : 1.0;
        return std::pair<double, double>{jw * cth, jw};
    };
    QuadOptions qo;
    qo.rel_tol = 1e-10;
    qo.abs_tol = 1e-16;
    auto phi_at = [&](double t) {
        const double re = integrate(RealFn([&](double w) { return weight(w).first * std::cos(w * t); }), 0.0, omega_cut, qo);
        const double im = t == 0.0 ? 0.0
                                   : integrate(RealFn([&](double w) { return weight(w).second * std::sin(w * t); }), 0.0, omega_cut, qo);
        return cplx(re, im);
    };

    // Uniform steps through the phonon memory, then geometric growth.
    std::vector<double> t;
    const double dt = 0.1 / omega_cut;
    const double t1 = std::min(opt.t_max, 400.0 * dt);
    for (double x = 0.0; x < t1; x += dt) t.push_back(x);
    double step = dt;
    for (double x = t1; x < opt.t_max; x += step, step *= 1.03) t.push_back(x);
    t.push_back(opt.t_max);

    const cplx phi0 = phi_at(0.0);
    const double b = std::exp(-phi0.real());
    std::vector<cplx> f(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        const cplx ph = k == 0 ? phi0 : phi_at(t[k]);
        f[k] = b * std::exp(-0.5 * gamma_tot * t[k]) * (std::exp(ph) - 1.0);
    }
    auto sideband_at = [&](double d) {
        cplx acc{};
        for (std::size_t k = 0; k + 1 < t.size(); ++k) acc += filon_segment(f[k], f[k + 1], t[k], t[k + 1], d);
        return acc.real();
    };

    std::vector<double> dens(grid.size());
    std::vector<double> sb(grid.size());
    const double hw = 0.5 * gamma_tot;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double d = grid[k];
        sb[k] = sideband_at(d);
        dens[k] = b * hw / (d * d + hw * hw) + sb[k];
    }
    // The full spectrum integrates to pi; the sideband part to pi (1 - B).
    const double window = 3.0 * gamma_tot;
    const double inside = 2.0 * window * sideband_at(0.0);
    const double fraction = std::max(0.0, (1.0 - b) - inside / kPi);
    double above = 0.0, below = 0.0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        const double a0 = grid[k], a1 = grid[k + 1];
        const double seg = 0.5 * (a1 - a0) * (sb[k] + sb[k + 1]);
        if (a0 >= window) above += seg;
        if (a1 <= -window) below += seg;
    }
    Spectrum spec{grid, std::move(dens), Normalization::Raw};
    double scale = 1.0;
    if (opt.norm == Normalization::Peak) scale = *std::max_element(spec.density.begin(), spec.density.end());
    if (opt.norm == Normalization::Area) scale = area(spec);
    for (double& v : sb) v /= scale;
    return IbmResult{normalized(std::move(spec), opt.norm), std::move(sb), fraction,
                     above / kPi, below / kPi, b};
}

IbmResult ibm_spectrum(const PhononParams& p, double gamma_tot, const FrequencyGrid& grid,
                       const IbmOptions& opt) {
    validate(p);
    const double cut = opt.omega_max_factor * p.c_s / std::min(p.sigma_e, p.sigma_g);
    return ibm_spectrum([&p](double w) { return spectral_density(p, w); }, cut, p.temperature,
                        gamma_tot, grid, opt);
}

}  // namespace qednp
