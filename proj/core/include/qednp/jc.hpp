#pragma once

#include <complex>
#include <vector>

#include "qednp/ldos.hpp"
#include "qednp/spectrum.hpp"

namespace qednp {

// Single-excitation dissipative Jaynes-Cummings model.
// Basis |1> = |e,0>, |2> = |g,1>, |3> = |g,0>; delta = w0 - wc.
struct JcParams {
    double g = 0.0;
    double kappa = 0.0;
    double gamma_ng = 0.0;
    double gamma_dp = 0.0;
    double delta = 0.0;
};

void validate(const JcParams& p);

// Elements in the frame rotating at the mean frequency (w0 + wc)/2.
struct JcState {
    double rho11 = 1.0;
    double rho22 = 0.0;
    std::complex<double> rho12{};
    std::complex<double> rho13{};
    std::complex<double> rho23{};
};

struct JcTrajectory {
    std::vector<double> t;
    std::vector<JcState> states;
};

JcParams from_ldos(const CavityParams& cavity, double gamma_hom, double beta);
JcParams from_profile(const LorentzianCavity& cavity, double gamma_hom, double gamma_ng);

// Purcell rate of the cavity channel, 4 g^2 / kappa (on resonance).
double cavity_channel_rate(const JcParams& p);

// RK4; `sample_every` thins the stored trajectory.
JcTrajectory evolve(const JcParams& p, const JcState& init, double t_end, double dt,
                    std::size_t sample_every = 1);

double analytic_rho11(const JcParams& p, double t);

// Complex Rabi frequency sqrt((gamma_ng - kappa)^2/4 - 4 g^2); purely
// imaginary in strong coupling.
std::complex<double> rabi_frequency(const JcParams& p);

enum class CouplingRegime { Weak, Intermediate, Strong };

CouplingRegime classify_regime(const JcParams& p, double weak_factor = 0.1);
const char* regime_name(CouplingRegime r);

struct TimeIntegrals {
    double rho11 = 0.0;
    double rho22 = 0.0;
    std::complex<double> rho12{};
};

// Time-integrated elements from the RK4 trajectory, stopped once
// rho11 + rho22 < 1e-10 with an exponential tail estimate added.
TimeIntegrals time_integrals(const JcParams& p, const JcState& init = {});

struct JcSpectra {
    Spectrum emitter;
    Spectrum cavity;
};

// Frequencies measured from the mean frequency (w0 + wc)/2.
JcSpectra jc_spectra(const JcParams& p, const FrequencyGrid& grid,
                     Normalization norm = Normalization::Peak);
JcSpectra jc_spectra(const JcParams& p, const TimeIntegrals& ti, const FrequencyGrid& grid,
                     Normalization norm = Normalization::Peak);

// Grid covering both polariton branches with margin, clustered at the centre.
FrequencyGrid default_jc_grid(const JcParams& p, std::size_t n);

struct LadderRung {
    int n;
    double e_plus;
    double e_minus;
};

struct DressedLadder {
    double ground;  // w/2, so that E(+-,n) - ground = n w +- g sqrt(n)
    std::vector<LadderRung> rungs;
    double blockade_detuning_plus;   // laser - w driving the (+,1) transition
    double blockade_detuning_minus;
    double tunneling_detuning_plus;  // two-photon resonance with (+,2)
    double tunneling_detuning_minus;
};

DressedLadder dressed_ladder(double g, double omega, int n_max);

}  // namespace qednp
