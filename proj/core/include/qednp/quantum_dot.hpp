#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace qednp {

struct ExcitonRates {
    double gamma_rad_b = 0.0;
    double gamma_nrad = 0.0;  // shared by bright and dark states
    double gamma_db = 0.0;    // dark <-> bright spin flip
    double gamma_dp = 0.0;
};

void validate(const ExcitonRates& r);

struct BiexpComponents {
    double gamma_f, gamma_s;
    double a_f, a_s;
};

BiexpComponents biexp_components(const ExcitonRates& r, double rho_b0, double rho_d0);
double biexp_decay(const ExcitonRates& r, double rho_b0, double rho_d0, double t);

struct DecayCurve {
    std::vector<double> t;       // ns
    std::vector<double> counts;
    bool poisson_noise = false;
};

void validate(const DecayCurve& c);

enum class FitWeighting {
    Model,   // variance max(model, 1), iteratively reweighted
    Counts,  // variance max(counts, 1)
};

struct FitOptions {
    double rho_b0 = 0.5;
    double rho_d0 = 0.5;
    FitWeighting weighting = FitWeighting::Model;
    int reweight_passes = 4;
    int max_evaluations = 4000;
};

struct FitResult {
    ExcitonRates rates;
    double scale = 0.0;
    // Order: gamma_rad_b, gamma_nrad, gamma_db, scale (linear parameters).
    std::array<std::array<double, 4>, 4> covariance{};
    std::array<double, 4> stderr_{};
    std::array<bool, 4> at_bound{};
    double chi2 = 0.0;
    int evaluations = 0;
    bool span_too_short = false;  // curve shorter than 3 / gamma_s
};

// scale_guess <= 0 means: estimate from the first samples.
FitResult fit_biexp(const DecayCurve& curve, const ExcitonRates& init, const FitOptions& opt = {},
                    double scale_guess = 0.0);

// Noiseless or Poisson-sampled curve of `scale * biexp_decay`.
DecayCurve synth_decay(const ExcitonRates& r, double rho_b0, double rho_d0, double scale,
                       double t_end, std::size_t n, bool noise, unsigned long long seed);

double quantum_efficiency(double gamma_rad_hom, double gamma_nrad);
double effective_quantum_efficiency(double gamma_rad_local, double gamma_nrad);

struct OscillatorParams {
    double e_p = 0.0;          // Kane energy, eV
    double hbar_omega = 0.0;   // transition energy, eV
    double overlap = 1.0;      // |<F_v|F_c>|^2
    double l = 0.0;            // lateral size, nm
    double a0 = 0.0;           // exciton Bohr radius, nm
};

enum class ConfinementRegime { Strong, Weak };

double oscillator_strength(const OscillatorParams& p, ConfinementRegime regime);

struct Coherence {
    double t2;
    double indistinguishability;
};

// T2* = +inf means no pure dephasing.
Coherence coherence(double t1, double t2_star = std::numeric_limits<double>::infinity());
double indistinguishability_from_rates(double gamma_tot, double gamma_dp);

}  // namespace qednp
