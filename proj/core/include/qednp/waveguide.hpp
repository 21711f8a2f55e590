#pragma once

namespace qednp {

struct ScatterParams {
    double beta;
    double gamma;          // total emitter decay, 1/ns
    double gamma_dp = 0.0;
    double delta = 0.0;    // photon-emitter detuning; closed forms need 0
};

void validate(const ScatterParams& p);

struct ScatterResult {
    double t;
    double r;
    double loss;
};

ScatterResult transmission_reflection(const ScatterParams& p);

double g2_transmitted(const ScatterParams& p, double tau);

struct DipolePair {
    double gamma;               // single-emitter rate
    double coupling_magnitude;  // <= gamma
    double k;                   // rad/nm
    double r_ab;                // nm
    double phase = 0.0;
};

void validate(const DipolePair& p);

struct DipoleRates {
    double gamma_ab;
    double gamma_plus;
    double gamma_minus;
};

DipoleRates dipole_dipole_rate(const DipolePair& p);

// gamma_AB with the amplitude envelope exp(-r_AB / 2 l_ext).
DipoleRates damped_dipole_range(const DipolePair& p, double l_ext);

// 1/l_ext = 1/l_back + 1/l_leak
double extinction_length(double l_back, double l_leak);

struct EfficiencyBudget {
    double eta_gen = 1.0;
    double beta = 1.0;
    double eta_det = 1.0;
};

double total_efficiency(const EfficiencyBudget& b);

}  // namespace qednp
