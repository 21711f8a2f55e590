#include "qednp/ldos.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qednp/csv.hpp"
#include "qednp/errors.hpp"
#include "qednp/units.hpp"

namespace qednp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* msg) {
    if (!ok) throw DomainError(msg);
}

double band_edge_shape(const WaveguideBandEdge& b, double w) {
    if (w > b.omega_edge) return 0.0;
    const double start = b.omega_edge - b.plateau_width;
    if (w >= start) return 1.0;
    const double x = (w - start) / b.rolloff_width;
    return std::exp(-0.5 * x * x);
}

}  // namespace

void validate(const LdosProfile& p) {
    std::visit(overloaded{
                   [](const Homogeneous& h) { require(h.n > 0.0, "refractive index must be positive"); },
                   [](const LorentzianCavity& c) {
                       require(c.omega_c > 0.0, "cavity frequency must be positive");
                       require(c.q > 0.0, "cavity Q must be positive");
                       require(c.fp_res >= 0.0, "resonant Purcell factor must be non-negative");
                   },
                   [](const WaveguideBandEdge& b) {
                       require(std::isfinite(b.f_peak) && b.f_peak >= 0.0,
                               "band-edge peak must be finite and non-negative");
                       require(b.omega_edge > 0.0, "band-edge frequency must be positive");
                       require(b.rolloff_width > 0.0, "roll-off width must be positive");
                       require(b.background >= 0.0, "background LDOS must be non-negative");
                       require(b.plateau_width >= 0.0, "plateau width must be non-negative");
                   },
                   [](const Tabulated& t) {
                       require(t.values.size() == t.grid.size(), "tabulated LDOS size mismatch");
                       for (double v : t.values)
                           require(std::isfinite(v) && v >= 0.0, "tabulated LDOS must be finite and >= 0");
                   },
               },
               p);
}

double evaluate_purcell(const LdosProfile& p, double omega) {
    return std::visit(
        overloaded{
            [](const Homogeneous&) { return 1.0; },
            [omega](const LorentzianCavity& c) {
                const double hw2 = c.half_width() * c.half_width();
                const double d = c.omega_c - omega;
                return c.fp_res * hw2 / (d * d + hw2);
            },
            [omega](const WaveguideBandEdge& b) {
                return b.background + (b.f_peak - b.background) * band_edge_shape(b, omega);
            },
            [omega](const Tabulated& t) {
                const auto& x = t.grid.points();
                if (omega < x.front() || omega > x.back())
                    throw DomainError("frequency outside tabulated LDOS grid");
                auto it = std::upper_bound(x.begin(), x.end(), omega);
                if (it == x.end()) return t.values.back();
                const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
                const double s = (omega - x[i]) / (x[i + 1] - x[i]);
                return t.values[i] + s * (t.values[i + 1] - t.values[i]);
            },
        },
        p);
}

double markov_background(const LdosProfile& p) {
    return std::visit(overloaded{
                          [](const Homogeneous&) { return 1.0; },
                          [](const LorentzianCavity&) { return 0.0; },
                          [](const WaveguideBandEdge& b) { return b.background; },
                          [](const Tabulated&) { return 0.0; },
                      },
                      p);
}

std::vector<double> feature_breaks(const LdosProfile& p, double lo, double hi) {
    std::vector<double> b{lo, hi};
    std::visit(overloaded{
                   [](const Homogeneous&) {},
                   [&](const LorentzianCavity& c) {
                       const double hw = c.half_width();
                       for (double k : {-1000.0, -100.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 100.0, 1000.0})
                           b.push_back(c.omega_c + k * hw);
                   },
                   [&](const WaveguideBandEdge& e) {
                       const double s = e.omega_edge - e.plateau_width;
                       for (double k : {-8.0, -4.0, -2.0, -1.0})
                           b.push_back(s + k * e.rolloff_width);
                       b.push_back(s);
                       b.push_back(e.omega_edge);
                   },
                   [&](const Tabulated& t) {
                       for (double x : t.grid.points()) b.push_back(x);
                   },
               },
               p);
    std::erase_if(b, [&](double x) { return x < lo || x > hi; });
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

std::string profile_name(const LdosProfile& p) {
    return std::visit(overloaded{
                          [](const Homogeneous&) { return std::string("homogeneous"); },
                          [](const LorentzianCavity&) { return std::string("lorentzian"); },
                          [](const WaveguideBandEdge&) { return std::string("band-edge"); },
                          [](const Tabulated&) { return std::string("tabulated"); },
                      },
                      p);
}

Tabulated load_tabulated_csv(const std::string& path, bool frequency_in_ueV) {
    const CsvTable t = read_csv(path);
    if (t.columns.size() != 2) throw DomainError("tabulated LDOS CSV needs exactly two columns: " + path);
    std::vector<double> w = t.columns[0];
    if (frequency_in_ueV)
        for (double& x : w) x = convert(x, Unit::MicroEV, Unit::RadPerNs);
    Tabulated tab{FrequencyGrid(std::move(w)), t.columns[1]};
    validate(tab);
    return tab;
}

double cavity_fp_max(const CavityParams& p) {
    if (!(p.q > 0.0) || !(p.v_eff > 0.0)) throw DomainError("cavity Q and V_eff must be positive");
    return 3.0 * p.q / (4.0 * kPi * kPi * p.v_eff);
}

double cavity_fp_res(const CavityParams& p) {
    if (p.f_r < 0.0 || p.f_r > 1.0 || p.alignment < 0.0 || p.alignment > 1.0)
        throw DomainError("f_r and alignment must lie in [0, 1]");
    return cavity_fp_max(p) * p.f_r * p.alignment;
}

LorentzianCavity cavity_profile(const CavityParams& p) {
    return LorentzianCavity{p.omega_c, p.q, cavity_fp_res(p)};
}

double waveguide_fp_max(const WaveguideModeParams& p, double lambda_nm) {
    if (!(p.n_g >= 1.0)) throw DomainError("group index must be >= 1");
    if (!(p.n > 0.0) || !(p.v_eff_per_cell > 0.0) || !(lambda_nm > 0.0))
        throw DomainError("n, V_eff and wavelength must be positive");
    // (lambda/n)^2 cancels between the numerator and V_eff/a.
    return 3.0 / (4.0 * kPi * p.n) * (1.0 / p.v_eff_per_cell) * p.n_g;
}

double waveguide_fp(const WaveguideModeParams& p, double lambda_nm) {
    if (p.f_r < 0.0 || p.f_r > 1.0 || p.alignment < 0.0 || p.alignment > 1.0)
        throw DomainError("f_r and alignment must lie in [0, 1]");
    return waveguide_fp_max(p, lambda_nm) * p.f_r * p.alignment;
}

double beta_factor(double gamma_wg, double gamma_ng, double gamma_nrad) {
    if (gamma_wg < 0.0 || gamma_ng < 0.0 || gamma_nrad < 0.0)
        throw DomainError("rates must be non-negative");
    const double tot = gamma_wg + gamma_ng + gamma_nrad;
    if (tot == 0.0) throw DegenerateInput("beta factor undefined for all-zero rates");
    return gamma_wg / tot;
}

}  // namespace qednp
