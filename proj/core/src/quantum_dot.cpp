#include "qednp/quantum_dot.hpp"

#include <cmath>
#include <random>

#include "qednp/errors.hpp"

namespace qednp {

void validate(const ExcitonRates& r) {
    for (double v : {r.gamma_rad_b, r.gamma_nrad, r.gamma_db, r.gamma_dp})
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("exciton rates must be finite and >= 0");
}

BiexpComponents biexp_components(const ExcitonRates& r, double rho_b0, double rho_d0) {
    validate(r);
    if (rho_b0 < 0.0 || rho_d0 < 0.0 || rho_b0 + rho_d0 > 1.0 + 1e-12)
        throw DomainError("initial populations must be >= 0 and sum to <= 1");
    const double root = std::sqrt(0.25 * r.gamma_rad_b * r.gamma_rad_b + r.gamma_db * r.gamma_db);
    const double mean = 0.5 * r.gamma_rad_b + r.gamma_nrad + r.gamma_db;
    BiexpComponents c{mean + root, mean - root, 0.0, 0.0};
    const double split = c.gamma_f - c.gamma_s;
    if (split == 0.0) {
        // gamma_rad_b = gamma_db = 0: bright and dark decay identically.
        c.a_f = rho_b0;
        c.a_s = 0.0;
        return c;
    }
    c.a_f = 0.5 * rho_b0 * (1.0 + r.gamma_rad_b / split) - rho_d0 * r.gamma_db / split;
    c.a_s = 0.5 * rho_b0 * (1.0 - r.gamma_rad_b / split) + rho_d0 * r.gamma_db / split;
    return c;
}

double biexp_decay(const ExcitonRates& r, double rho_b0, double rho_d0, double t) {
    const auto c = biexp_components(r, rho_b0, rho_d0);
    return c.a_f * std::exp(-c.gamma_f * t) + c.a_s * std::exp(-c.gamma_s * t);
}

void validate(const DecayCurve& c) {
    if (c.t.size() != c.counts.size()) throw DomainError("decay curve: t and counts differ in length");
    for (std::size_t i = 0; i < c.t.size(); ++i) {
        if (!(c.counts[i] >= 0.0)) throw DomainError("decay curve counts must be non-negative");
        if (i > 0 && !(c.t[i] > c.t[i - 1])) throw DomainError("decay curve t must be strictly increasing");
    }
}

DecayCurve synth_decay(const ExcitonRates& r, double rho_b0, double rho_d0, double scale,
                       double t_end, std::size_t n, bool noise, unsigned long long seed) {
    if (n < 2) throw DomainError("need at least two samples");
    DecayCurve c;
    c.poisson_noise = noise;
    c.t.resize(n);
    c.counts.resize(n);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        c.t[i] = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
        const double mean = scale * biexp_decay(r, rho_b0, rho_d0, c.t[i]);
        if (noise) {
            std::poisson_distribution<long long> pd(mean);
            c.counts[i] = mean > 0.0 ? static_cast<double>(pd(rng)) : 0.0;
        } else {
            c.counts[i] = mean;
        }
    }
    return c;
}

double quantum_efficiency(double gamma_rad_hom, double gamma_nrad) {
    if (gamma_rad_hom < 0.0 || gamma_nrad < 0.0) throw DomainError("rates must be non-negative");
    const double d = gamma_rad_hom + gamma_nrad;
    if (d == 0.0) throw DegenerateInput("quantum efficiency undefined for zero total rate");
    return gamma_rad_hom / d;
}

double effective_quantum_efficiency(double gamma_rad_local, double gamma_nrad) {
    return quantum_efficiency(gamma_rad_local, gamma_nrad);
}

double oscillator_strength(const OscillatorParams& p, ConfinementRegime regime) {
    if (!(p.hbar_omega > 0.0)) throw DomainError("transition energy must be positive");
    if (regime == ConfinementRegime::Strong) {
        if (p.overlap < 0.0 || p.overlap > 1.0) throw DomainError("overlap must lie in [0, 1]");
        return p.e_p / p.hbar_omega * p.overlap;
    }
    if (!(p.l > 0.0) || !(p.a0 > 0.0)) throw DomainError("L and a0 must be positive");
    const double r = p.l / p.a0;
    return 8.0 * p.e_p / p.hbar_omega * r * r;
}

Coherence coherence(double t1, double t2_star) {
    if (!(t1 > 0.0) || !(t2_star > 0.0)) throw DomainError("T1 and T2* must be positive");
    const double inv = 1.0 / (2.0 * t1) + (std::isinf(t2_star) ? 0.0 : 1.0 / t2_star);
    const double t2 = 1.0 / inv;
    return {t2, t2 / (2.0 * t1)};
}

double indistinguishability_from_rates(double gamma_tot, double gamma_dp) {
    if (!(gamma_tot > 0.0) || gamma_dp < 0.0) throw DomainError("need gamma_tot > 0, gamma_dp >= 0");
    return gamma_tot / (gamma_tot + 2.0 * gamma_dp);
}

}  // namespace qednp
