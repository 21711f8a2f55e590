#include "qednp/waveguide.hpp"

#include <cmath>
#include <limits>

#include "qednp/errors.hpp"

namespace qednp {

namespace {

bool unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void validate(const ScatterParams& p) {
    if (!unit_interval(p.beta)) throw DomainError("beta must lie in [0, 1]");
    if (!(p.gamma > 0.0)) throw DomainError("emitter decay rate must be positive");
    if (!(p.gamma_dp >= 0.0)) throw DomainError("dephasing rate must be >= 0");
    if (p.delta != 0.0) throw DomainError("closed-form scattering requires a resonant photon (delta = 0)");
}

ScatterResult transmission_reflection(const ScatterParams& p) {
    validate(p);
    const double one_minus = 1.0 - p.beta;
    if (p.gamma_dp == 0.0) {
        const double t = one_minus * one_minus;
        const double r = p.beta * p.beta;
        return {t, r, 1.0 - t - r};
    }
    const double incoherent = 1.0 / (1.0 + p.gamma / (2.0 * p.gamma_dp));
    const double coh = 1.0 / (1.0 + 2.0 * p.gamma_dp / p.gamma);
    const double t = incoherent + one_minus * one_minus * coh;
    const double r = p.beta * p.beta * coh;
    return {t, r, 1.0 - t - r};
}

double g2_transmitted(const ScatterParams& p, double tau) {
    validate(p);
    if (p.gamma_dp != 0.0) throw DomainError("transmitted g2 closed form requires gamma_dp = 0");
    if (p.beta >= 1.0) throw DomainError("transmitted g2 diverges at beta = 1");
    if (tau < 0.0) throw DomainError("delay must be >= 0");
    const double q = p.beta * p.beta / ((1.0 - p.beta) * (1.0 - p.beta));
    // e^{-g tau} (q - e^{g tau/2})^2 = (q e^{-g tau/2} - 1)^2
    const double a = q * std::exp(-0.5 * p.gamma * tau) - 1.0;
    return a * a;
}

void validate(const DipolePair& p) {
    if (!(p.gamma >= 0.0)) throw DomainError("emitter rate must be >= 0");
    if (!(p.coupling_magnitude >= 0.0) || p.coupling_magnitude > p.gamma)
        throw DomainError("coupling magnitude must lie in [0, gamma]");
    if (!std::isfinite(p.k) || !std::isfinite(p.r_ab) || !std::isfinite(p.phase))
        throw DomainError("k, r_AB and phase must be finite");
}

DipoleRates dipole_dipole_rate(const DipolePair& p) {
    validate(p);
    const double gab = p.coupling_magnitude * std::cos(p.k * p.r_ab + p.phase);
    return {gab, p.gamma + gab, p.gamma - gab};
}

DipoleRates damped_dipole_range(const DipolePair& p, double l_ext) {
    if (!(l_ext > 0.0)) throw DomainError("extinction length must be positive");
    DipoleRates r = dipole_dipole_rate(p);
    const double env = std::isinf(l_ext) ? 1.0 : std::exp(-std::abs(p.r_ab) / (2.0 * l_ext));
    r.gamma_ab *= env;
    r.gamma_plus = p.gamma + r.gamma_ab;
    r.gamma_minus = p.gamma - r.gamma_ab;
    return r;
}

double extinction_length(double l_back, double l_leak) {
    if (!(l_back > 0.0) || !(l_leak > 0.0)) throw DomainError("lengths must be positive");
    return 1.0 / (1.0 / l_back + 1.0 / l_leak);
}

double total_efficiency(const EfficiencyBudget& b) {
    if (!unit_interval(b.eta_gen) || !unit_interval(b.beta) || !unit_interval(b.eta_det))
        throw DomainError("efficiencies must lie in [0, 1]");
    return b.eta_det * b.beta * b.eta_gen;
}

}  // namespace qednp
