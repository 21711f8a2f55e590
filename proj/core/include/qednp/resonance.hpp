#pragma once

#include <complex>

#include "qednp/spectrum.hpp"

namespace qednp {

// Resonant drive (w0 = w_p); gamma is radiative, non-radiative decay neglected.
struct DriveParams {
    double omega_p;   // |Omega_p|, 1/ns
    double gamma;
    double gamma_dp = 0.0;
};

void validate(const DriveParams& p);

struct Intensities {
    double coherent;
    double incoherent;
};

// Units of I0 = 1.
Intensities intensities(const DriveParams& p);

double steady_population(const DriveParams& p);

// Effective Rabi frequency mu; imaginary when the drive is below the
// damping threshold.
std::complex<double> effective_rabi(const DriveParams& p);

double g2(const DriveParams& p, double tau);

struct MollowSpectrum {
    double coherent_weight;  // weight of the delta line at Delta_p = 0
    Spectrum incoherent;     // raw, over detuning Delta_p = w - w_p
};

double mollow_incoherent(const DriveParams& p, double detuning);
MollowSpectrum mollow_spectrum(const DriveParams& p, const FrequencyGrid& detunings,
                               Normalization norm = Normalization::Raw);

}  // namespace qednp
