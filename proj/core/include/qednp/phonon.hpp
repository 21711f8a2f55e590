#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qednp/jc.hpp"
#include "qednp/spectrum.hpp"

namespace qednp {

// LA-phonon deformation-potential coupling with Gaussian electron/hole
// envelopes. Defaults are GaAs-like; override from configuration.
struct PhononParams {
    double d_e = -14.6;     // eV
    double d_g = -4.8;      // eV
    double c_s = 5110.0;    // nm/ns (= m/s)
    double d_m = 5370.0;    // kg/m^3
    double sigma_e = 1.4;   // nm
    double sigma_g = 1.5;   // nm
    double temperature = 0.0;  // K
};

void validate(const PhononParams& p);

// Bose-Einstein occupation; omega in rad/ns.
double occupation(double omega, double temperature);

// J(omega) in 1/ns; omega >= 0 in rad/ns.
double spectral_density(const PhononParams& p, double omega);

// Signed detuning: omega > 0 phonon emission, omega < 0 absorption.
double effective_phonon_density(const PhononParams& p, double omega);

double effective_phonon_dos(const PhononParams& p, double omega);

// Frequency of the maximum of the effective phonon DOS and the matching
// phonon wavelength 2 pi c_s / omega (nm).
struct DosPeak {
    double omega;
    double wavelength_nm;
};
DosPeak phonon_dos_peak(const PhononParams& p);

struct PhononRate {
    double rate;
    bool valid;  // false when |delta| is not well above g
};

PhononRate phonon_purcell_rate(const PhononParams& p, const JcParams& jc, double delta,
                               double validity_factor = 3.0);

using SpectralDensityFn = std::function<double(double)>;

// The spectrum splits exactly into the zero-phonon Lorentzian (weight
// exp(-phi(0))) and the phonon sideband; fractions refer to the sideband
// part outside +-3 gamma_tot of the line centre.
struct IbmResult {
    Spectrum spectrum;          // over detuning w - w0 (rad/ns)
    std::vector<double> sideband;  // sideband part on the same grid, same scaling
    double sideband_fraction;   // sideband intensity outside the window / total
    double sideband_above;      // fraction of total: sideband at w - w0 > 3 gamma_tot
    double sideband_below;      // fraction of total: sideband at w - w0 < -3 gamma_tot
    double zpl_weight;          // exp(-phi(0))
};

struct IbmOptions {
    double t_max = 0.05;            // ns; phonon memory is a few ps
    double omega_max_factor = 8.0;  // cutoff in units of the J envelope scale
    Normalization norm = Normalization::Peak;
    bool require_span = true;       // grid must reach +-10 meV
};

IbmResult ibm_spectrum(const PhononParams& p, double gamma_tot, const FrequencyGrid& grid,
                       const IbmOptions& opt = {});

// Generic spectral density; omega_cut bounds the phonon frequency integral.
IbmResult ibm_spectrum(const SpectralDensityFn& j, double omega_cut, double temperature,
                       double gamma_tot, const FrequencyGrid& grid, const IbmOptions& opt = {});

}  // namespace qednp
