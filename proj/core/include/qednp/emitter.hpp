#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qednp/ldos.hpp"
#include "qednp/spectrum.hpp"

namespace qednp {

using cplx = std::complex<double>;

struct EmitterConfig {
    double omega0;      // transition, rad/ns
    double gamma_hom;   // radiative rate in the homogeneous reference, 1/ns
    double band_lo;     // LDOS deviates from background only inside [band_lo, band_hi]
    double band_hi;
    double gamma_extra = 0.0;  // additional Markovian channel (e.g. side emission gamma_ng)
};

void validate(const EmitterConfig& c);

// K(tau) = sum_j amp_j * exp(rate_j * tau)
struct ExpTerm {
    cplx amplitude;
    cplx rate;
};

struct MemoryKernel {
    double dt = 0.0;
    std::vector<cplx> values;        // K(k dt), k = 0..n
    double background_rate = 0.0;    // Markovian part, 1/ns
    std::vector<ExpTerm> exp_terms;  // closed form when available
    bool truncation_warning = false;

    double tau_max() const { return dt * static_cast<double>(values.empty() ? 0 : values.size() - 1); }
    cplx at(double tau) const;
    bool is_zero() const;
};

struct AmplitudeTrajectory {
    std::vector<double> t;
    std::vector<cplx> c;
    std::vector<double> emitted;  // cumulative outgoing flux, so |c|^2 + emitted = 1
    double population(std::size_t i) const { return std::norm(c[i]); }
};

double ww_rate(const LdosProfile& profile, const EmitterConfig& cfg);

MemoryKernel build_kernel(const LdosProfile& profile, const EmitterConfig& cfg, double dt,
                          double tau_max);

// Kernel of an arbitrary LDOS deviation dF(w) on [cfg.band_lo, cfg.band_hi];
// `breaks` marks features for panel placement.
MemoryKernel build_kernel(const std::function<double(double)>& delta_fp,
                          const std::vector<double>& breaks, const EmitterConfig& cfg,
                          double background_rate, double dt, double tau_max);

AmplitudeTrajectory solve_volterra(const MemoryKernel& kernel, const EmitterConfig& cfg,
                                   double t_end, double dt);

struct LambOptions {
    // Keep the w/w0 weight of the integrand; off reproduces the symmetric
    // reference integral used for the antisymmetry check.
    bool frequency_weight = true;
};

double lamb_shift(const LdosProfile& profile, const EmitterConfig& cfg, double omega,
                  const LambOptions& opt = {});

// Numerical PV route for any profile (the Lorentzian closed form is checked
// against it).
double lamb_shift_numeric(const LdosProfile& profile, const EmitterConfig& cfg, double omega,
                          const LambOptions& opt = {});

Spectrum emission_spectrum(const LdosProfile& profile, const EmitterConfig& cfg,
                           const FrequencyGrid& grid, Normalization norm = Normalization::Peak);

}  // namespace qednp
