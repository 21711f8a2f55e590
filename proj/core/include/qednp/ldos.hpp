#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qednp/grid.hpp"

namespace qednp {

// Relative LDOS profiles F_P(w) = rho(w) / rho_hom(w).

struct Homogeneous {
    double n = 1.0;
};

struct LorentzianCavity {
    double omega_c;  // rad/ns
    double q;
    double fp_res;
    double kappa() const { return omega_c / q; }
    double half_width() const { return omega_c / (2.0 * q); }
};

// Slow-light band edge: flat plateau [omega_edge - plateau_width, omega_edge],
// Gaussian roll-off below the plateau, and `background` inside the gap above
// omega_edge.
struct WaveguideBandEdge {
    double f_peak;
    double omega_edge;
    double rolloff_width;
    double background;
    double plateau_width = 0.0;
};

struct Tabulated {
    FrequencyGrid grid;
    std::vector<double> values;
};

using LdosProfile = std::variant<Homogeneous, LorentzianCavity, WaveguideBandEdge, Tabulated>;

// Throws DomainError on unphysical parameters.
void validate(const LdosProfile& p);

double evaluate_purcell(const LdosProfile& p, double omega);

// Level treated in the Markov approximation; only F_P - background enters
// the memory kernel and the relative Lamb shift.
double markov_background(const LdosProfile& p);

// Frequencies where the profile has structure inside [lo, hi], sorted, with
// lo and hi included. Used to place quadrature panels.
std::vector<double> feature_breaks(const LdosProfile& p, double lo, double hi);

std::string profile_name(const LdosProfile& p);

// Two-column CSV (frequency, F_P) with a header row. Frequencies in rad/ns,
// or in ueV when `frequency_in_ueV` is set.
Tabulated load_tabulated_csv(const std::string& path, bool frequency_in_ueV);

struct CavityParams {
    double omega_c;
    double q;
    double v_eff;  // units of (lambda/n)^3
    double n = 3.5;
    double f_r = 1.0;
    double alignment = 1.0;
};

struct WaveguideModeParams {
    double n = 3.5;
    double n_g = 1.0;
    double v_eff_per_cell = 1.0 / 3.0;  // units of a (lambda/n)^2
    double f_r = 1.0;
    double alignment = 1.0;
};

double cavity_fp_max(const CavityParams& p);
double cavity_fp_res(const CavityParams& p);
LorentzianCavity cavity_profile(const CavityParams& p);

double waveguide_fp_max(const WaveguideModeParams& p, double lambda_nm);
double waveguide_fp(const WaveguideModeParams& p, double lambda_nm);

double beta_factor(double gamma_wg, double gamma_ng, double gamma_nrad);

}  // namespace qednp
