#include "qednp/resonance.hpp"

#include <cmath>

#include "qednp/errors.hpp"

namespace qednp {

void validate(const DriveParams& p) {
    for (double v : {p.omega_p, p.gamma, p.gamma_dp})
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("drive parameters must be finite and >= 0");
}

namespace {

double denominator(const DriveParams& p) {
    return p.gamma * p.gamma + 2.0 * p.gamma * p.gamma_dp + 8.0 * p.omega_p * p.omega_p;
}

}  // namespace

Intensities intensities(const DriveParams& p) {
    validate(p);
    const double d = denominator(p);
    if (d == 0.0) return {0.0, 0.0};
    const double o2 = p.omega_p * p.omega_p;
    return {4.0 * p.gamma * p.gamma * o2 / (d * d),
            4.0 * o2 * (2.0 * p.gamma * p.gamma_dp + 8.0 * o2) / (d * d)};
}

double steady_population(const DriveParams& p) {
    validate(p);
    const double d = denominator(p);
    return d == 0.0 ? 0.0 : 4.0 * p.omega_p * p.omega_p / d;
}

std::complex<double> effective_rabi(const DriveParams& p) {
    const double a = 0.25 * p.gamma - 0.5 * p.gamma_dp;
    return std::sqrt(std::complex<double>(4.0 * p.omega_p * p.omega_p - a * a, 0.0));
}

double g2(const DriveParams& p, double tau) {
    validate(p);
    if (tau < 0.0) throw DomainError("g2 delay must be >= 0");
    if (tau == 0.0) return 0.0;
    const double a = 0.25 * p.gamma - 0.5 * p.gamma_dp;
    const double mu2 = 4.0 * p.omega_p * p.omega_p - a * a;
    const double damp = 0.75 * p.gamma + 0.5 * p.gamma_dp;
    const double c = (3.0 * p.gamma + 2.0 * p.gamma_dp) / 4.0;
    if (mu2 > 0.0) {
        const double mu = std::sqrt(mu2);
        return 1.0 - std::exp(-damp * tau) * (std::cos(mu * tau) + c / mu * std::sin(mu * tau));
    }
    if (mu2 < 0.0) {
        // cosh/sinh written as exponentials so large tau cannot overflow.
        const double nu = std::sqrt(-mu2);
        const double ep = std::exp((nu - damp) * tau), em = std::exp(-(nu + damp) * tau);
        return 1.0 - (0.5 * (ep + em) + c / nu * 0.5 * (ep - em));
    }
    return 1.0 - std::exp(-damp * tau) * (1.0 + c * tau);
}

double mollow_incoherent(const DriveParams& p, double detuning) {
    validate(p);
    if (p.omega_p == 0.0) throw DegenerateInput("no scattering without drive");
    const double o2 = p.omega_p * p.omega_p;
    const double ns = steady_population(p);
    const double g = p.gamma, gd = p.gamma_dp;
    const double a = 4.0 * o2 - g * (0.5 * g - gd);
    const double b = -(4.0 * o2 * (2.0 * gd - 5.0 * g) + 2.0 * g * gd * gd - 2.0 * g * g * gd + 0.5 * g * g * g);
    const double g1 = gd + 0.5 * g;
    const double damp = 0.5 * gd + 0.75 * g;
    const double aa = 0.25 * g - 0.5 * gd;
    const double mu2 = 4.0 * o2 - aa * aa;
    // The two sideband terms combined over a common denominator; the 1/mu
    // in the individual residues cancels, so mu -> 0 needs no special case.
    const std::complex<double> z(damp, detuning);
    const double side = std::real((a * z + 0.25 * b) / (z * z + mu2));
    return 0.5 * ns * g1 / (detuning * detuning + g1 * g1) + ns * ns / (4.0 * o2) * side;
}

MollowSpectrum mollow_spectrum(const DriveParams& p, const FrequencyGrid& detunings,
                               Normalization norm) {
    validate(p);
    if (p.omega_p == 0.0) throw DegenerateInput("no scattering without drive");
    const double ns = steady_population(p);
    std::vector<double> s(detunings.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = mollow_incoherent(p, detunings[i]);
    MollowSpectrum m{ns * ns * p.gamma * p.gamma / (4.0 * p.omega_p * p.omega_p),
                     Spectrum{detunings, std::move(s), Normalization::Raw}};
    m.incoherent = normalized(std::move(m.incoherent), norm);
    return m;
}

}  // namespace qednp
