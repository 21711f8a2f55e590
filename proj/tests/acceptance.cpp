// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qednp/emitter.hpp"
#include "qednp/jc.hpp"
#include "qednp/ldos.hpp"
#include "qednp/phonon.hpp"
#include "qednp/quantum_dot.hpp"
#include "qednp/resonance.hpp"
#include "qednp/units.hpp"
#include "qednp/waveguide.hpp"
#include "qednp_cli/config.hpp"
#include "qednp_cli/run.hpp"

using namespace qednp;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("%s [%2d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

const double kW0 = wavelength_to_omega(950.0);

EmitterConfig wide(double gamma_hom, double extra = 0.0) {
    return EmitterConfig{kW0, gamma_hom, 0.5 * kW0, 1.5 * kW0, extra};
}

void dual_formalism() {
    struct Set {
        const char* name;
        double g, kappa, gamma;
    };
    const Set sets[] = {{"micropillar", 4.0, 5.0, 4.0}, {"pc-cavity", 22.0, 11.0, 0.1}, {"microdisk", 3.0, 1.0, 0.6}};
    const auto t0 = Clock::now();
    double worst = 0.0;
    std::string detail;
    for (const auto& s : sets) {
        const double g = ghz_to_rad_ns(s.g), kappa = ghz_to_rad_ns(s.kappa), gng = ghz_to_rad_ns(s.gamma);
        // Cavity whose kernel is the JC coupling: g^2 = F gamma_hom kappa / 4 with gamma_hom = 1.
        const LorentzianCavity cav{kW0, kW0 / kappa, 4.0 * g * g / kappa};
        const auto cfg = wide(1.0, gng);
        const JcParams jc{g, kappa, gng, 0.0, 0.0};
        const double t_end = 10.0 / kappa;
        const double dt = 2e-4 / std::max(g, kappa);
        const auto k = build_kernel(cav, cfg, dt, t_end);
        const auto tr = solve_volterra(k, cfg, t_end, dt);
        double err = 0.0;
        for (std::size_t i = 0; i < tr.t.size(); ++i)
            err = std::max(err, std::abs(tr.population(i) - analytic_rho11(jc, tr.t[i])));
        worst = std::max(worst, err);
        detail += std::string(s.name) + fmt(" %.2e, ", err);
    }
    const double wall = seconds_since(t0);
    report(1, "dual-formalism oracle", worst < 1e-6 && wall < 5.0,
           detail + fmt("max %.2e (< 1e-6), %.2f s (< 5 s)", worst, wall));
}

void wigner_weisskopf() {
    const double gamma = 1.0;
    const auto cfg = wide(gamma);
    const double dt = 1e-3, t_end = 10.0;
    const auto tr = solve_volterra(build_kernel(Homogeneous{}, cfg, dt, t_end), cfg, t_end, dt);
    double perr = 0.0;
    for (std::size_t i = 0; i < tr.t.size(); ++i)
        perr = std::max(perr, std::abs(tr.population(i) - std::exp(-gamma * tr.t[i])));
    const auto grid = FrequencyGrid::uniform(kW0 - 20.0, kW0 + 20.0, 4001);
    const auto s = emission_spectrum(Homogeneous{}, cfg, grid, Normalization::Peak);
    double serr = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = grid[i] - kW0;
        const double lor = 0.25 * gamma * gamma / (d * d + 0.25 * gamma * gamma);
        serr = std::max(serr, std::abs(s.density[i] / lor - 1.0));
    }
    report(2, "Wigner-Weisskopf limit", perr < 1e-8 && serr < 1e-3,
           fmt("population max |err| %.2e (< 1e-8), ", perr) +
               fmt("spectrum max rel err %.2e (< 1e-3) over +-20 gamma", serr));
}

void vacuum_rabi() {
    auto params = [](double q, double fp) {
        return from_profile(LorentzianCavity{kW0, q, fp}, 1.0, 0.0);
    };
    const auto strong = params(1e5, 100.0);
    const auto weak = params(1e4, 20.0);
    const auto grid = default_jc_grid(strong, 20001);
    const auto sp = jc_spectra(strong, grid);
    const auto peaks = find_peaks(sp.emitter);
    const double expected = std::sqrt(4.0 * strong.g * strong.g -
                                      0.25 * (strong.gamma_ng - strong.kappa) * (strong.gamma_ng - strong.kappa));
    const double split = peaks.size() >= 2 ? peaks.back().position - peaks.front().position : 0.0;
    const double rel = std::abs(split / expected - 1.0);
    const auto wp = find_peaks(jc_spectra(weak, default_jc_grid(weak, 20001)).emitter);
    const bool ok = peaks.size() == 2 && rel <= 0.01 && wp.size() == 1;
    std::ostringstream d;
    d << "Q=1e5 F=100: " << peaks.size() << " peaks, splitting " << fmt("%.4f", split) << " vs "
      << fmt("%.4f rad/ns", expected) << fmt(" (rel %.4f, limit 0.01, grid step %.1e); ", rel, grid.max_step() / expected)
      << "Q=1e4 F=20: " << wp.size() << " peak(s)";
    report(3, "vacuum Rabi splitting", ok, d.str());
}

void purcell_arithmetic() {
    const double fp = cavity_fp_max(CavityParams{kW0, 9.6e4, 0.75});
    WaveguideModeParams w;
    w.n = 3.5;
    w.n_g = 300.0;
    const double fw = waveguide_fp_max(w, 950.0);
    report(4, "Purcell arithmetic", std::abs(fp / 9.7e3 - 1.0) <= 0.005 && std::abs(fw - 61.0) <= 2.0,
           fmt("cavity F_P^max %.1f (9.7e3 +- 0.5%%), ", fp) + fmt("waveguide F_P %.2f (61 +- 2)", fw));
}

void resonance_fluorescence() {
    const DriveParams p{2.0, 1.0, 0.0};
    const double g0 = g2(p, 0.0);
    const double ginf = g2(p, 1e3);

    auto sideband = [](double omega) {
        const DriveParams d{omega, 1.0, 0.0};
        const auto grid = FrequencyGrid::uniform(-3.0 * omega, 3.0 * omega, 6001);
        const auto peaks = find_peaks(mollow_spectrum(d, grid).incoherent);
        return peaks.size() >= 2 ? peaks.back().position : 0.0;
    };
    const double sb20 = sideband(20.0);
    const double sb_rel = std::abs(sb20 / 40.0 - 1.0);

    // log(splitting) vs log(power), power ~ Omega^2
    std::vector<double> x, y;
    for (int i = 0; i < 9; ++i) {
        const double omega = 5.0 * std::pow(10.0, i / 8.0);
        x.push_back(std::log(omega * omega));
        y.push_back(std::log(2.0 * sideband(omega)));
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const bool ok = g0 == 0.0 && std::abs(ginf - 1.0) <= 1e-9 && sb_rel <= 0.01 && std::abs(slope - 0.5) <= 0.01;
    report(5, "resonance fluorescence", ok,
           fmt("g2(0) = %g, ", g0) + fmt("|g2(inf)-1| = %.1e, ", std::abs(ginf - 1.0)) +
               fmt("sideband at Omega=20: %.4f (2 Omega +- 1%%), ", sb20) +
               fmt("power exponent %.4f (0.50 +- 0.01)", slope));
}

void scattering() {
    const auto one = transmission_reflection({1.0, 1.0, 0.0, 0.0});
    const auto r98 = transmission_reflection({0.98, 1.0, 0.0, 0.0});
    double worst = 0.0;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j < 100; ++j) {
            const auto r = transmission_reflection({i / 99.0, 1.0, 10.0 * j / 99.0, 0.0});
            worst = std::max(worst, std::abs(r.t + r.r + r.loss - 1.0));
        }
    const double g2half = g2_transmitted({0.5, 1.0, 0.0, 0.0}, 0.0);
    const bool ok = one.t == 0.0 && one.r == 1.0 && std::abs(r98.r - 0.9604) < 1e-12 && worst < 1e-12 &&
                    g2half == 0.0;
    report(6, "waveguide scattering", ok,
           fmt("beta=1: (T,R) = (%g, %g), ", one.t, one.r) + fmt("beta=0.98: R = %.12f, ", r98.r) +
               fmt("max |T+R+loss-1| = %.1e over 1e4 points, ", worst) + fmt("g2_T(0) at beta=0.5: %g", g2half));
}

void phonons() {
    const double occ = occupation(meV_to_rad_ns(1.0), 10.0);

    double db = 0.0;
    for (double temp : {4.0, 10.0, 40.0}) {
        PhononParams p;
        p.temperature = temp;
        for (double w = 50.0; w < 8000.0; w *= 1.4) {
            const double ratio = effective_phonon_density(p, w) / effective_phonon_density(p, -w);
            const double expected = std::exp(default_units().rad_ns_to_ev(w) / (default_units().k_b * temp));
            db = std::max(db, std::abs(ratio / expected - 1.0));
        }
    }

    const JcParams jc{20.0, 100.0, 1.0, 0.0, 0.0};
    bool asym0 = true;
    for (double mev : {0.3, 0.6, 1.0, 2.0}) {
        const double d = meV_to_rad_ns(mev);
        asym0 = asym0 && phonon_purcell_rate(PhononParams{}, jc, d).rate > phonon_purcell_rate(PhononParams{}, jc, -d).rate;
    }
    bool ratio_down = true, frac_up = true;
    double prev_ratio = INFINITY, prev_frac = -1.0;
    std::string fracs;
    const double d = meV_to_rad_ns(0.6);
    const double span = meV_to_rad_ns(12.0);
    const auto grid = FrequencyGrid::dense_near(-span, span, 4001, 0.0, 0.002);
    for (double temp : {0.0, 10.0, 20.0, 40.0}) {
        PhononParams p;
        p.temperature = temp;
        const double ratio = (phonon_purcell_rate(p, jc, d).rate - jc.gamma_ng) /
                             (phonon_purcell_rate(p, jc, -d).rate - jc.gamma_ng);
        ratio_down = ratio_down && ratio < prev_ratio;
        prev_ratio = ratio;
        const double frac = ibm_spectrum(p, 1.0, grid).sideband_fraction;
        frac_up = frac_up && frac > prev_frac;
        prev_frac = frac;
        fracs += fmt("%.3f ", frac);
    }
    const bool ok = std::abs(occ - 0.457) <= 0.005 && db < 1e-10 && asym0 && ratio_down && frac_up;
    report(7, "phonons", ok,
           fmt("n(1 meV, 10 K) = %.4f, ", occ) + fmt("detailed balance max rel err %.1e, ", db) +
               "T=0 asymmetric: " + (asym0 ? "yes" : "no") + ", asymmetry falls with T: " +
               (ratio_down ? "yes" : "no") + ", sideband fraction at 0/10/20/40 K: " + fracs);
}

void biexp_inverse() {
    const auto t0 = Clock::now();
    const ExcitonRates base{1.0, 0.1, 0.05, 0.0};
    const ExcitonRates start{0.5, 0.3, 0.2, 0.0};

    // noiseless
    const auto clean = synth_decay(base, 0.5, 0.5, 1e4 / biexp_decay(base, 0.5, 0.5, 0.0), 40.0, 1000, false, 0);
    const auto cf = fit_biexp(clean, start);
    const double clean_err = std::max({std::abs(cf.rates.gamma_rad_b / 1.0 - 1.0), std::abs(cf.rates.gamma_nrad / 0.1 - 1.0),
                                       std::abs(cf.rates.gamma_db / 0.05 - 1.0)});

    std::vector<double> e_rad, e_nrad, e_db;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int fit_failures = 0;
    for (unsigned long long seed = 0; seed < 100; ++seed) {
        const ExcitonRates r{base.gamma_rad_b * std::pow(10.0, u(rng)), base.gamma_nrad * std::pow(10.0, u(rng)),
                             base.gamma_db * std::pow(10.0, u(rng)), 0.0};
        const double gs = biexp_components(r, 0.5, 0.5).gamma_s;
        const double scale = 1e4 / biexp_decay(r, 0.5, 0.5, 0.0);
        const auto curve = synth_decay(r, 0.5, 0.5, scale, 8.0 / gs, 1000, true, seed);
        try {
            const auto f = fit_biexp(curve, start);
            e_rad.push_back(std::abs(f.rates.gamma_rad_b / r.gamma_rad_b - 1.0));
            e_nrad.push_back(std::abs(f.rates.gamma_nrad / r.gamma_nrad - 1.0));
            e_db.push_back(std::abs(f.rates.gamma_db / r.gamma_db - 1.0));
        } catch (const std::exception&) {
            ++fit_failures;
            e_rad.push_back(INFINITY);
            e_nrad.push_back(INFINITY);
            e_db.push_back(INFINITY);
        }
    }
    const double m1 = median(e_rad), m2 = median(e_nrad), m3 = median(e_db);
    const double wall = seconds_since(t0);
    const bool ok = clean_err < 1e-6 && m1 < 0.05 && m2 < 0.05 && m3 < 0.05 && wall < 30.0;
    report(8, "biexponential inverse problem", ok,
           fmt("noiseless max rel err %.1e, ", clean_err) + fmt("median rel err rad %.4f, ", m1) +
               fmt("nrad %.4f, ", m2) + fmt("db %.4f (< 0.05, 100 seeds, ", m3) +
               std::to_string(fit_failures) + " failed fits), " + fmt("%.2f s (< 30 s)", wall));
}

void dipole_pair() {
    bool sum_rule = true, colocated = true;
    double period = 0.0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double gamma = 0.1 + 5.0 * u(rng);
        const DipolePair p{gamma, gamma * u(rng), 0.01 + 0.1 * u(rng), 2000.0 * u(rng), 6.0 * u(rng)};
        const auto r = dipole_dipole_rate(p);
        // identical up to the last bit of the sum
        sum_rule = sum_rule && std::abs(r.gamma_plus + r.gamma_minus - 2.0 * gamma) <= 4e-16 * 2.0 * gamma;
        DipolePair at0 = p;
        at0.r_ab = 0.0;
        at0.phase = 0.0;
        colocated = colocated && dipole_dipole_rate(at0).gamma_ab == p.coupling_magnitude;
        DipolePair shifted = p;
        shifted.r_ab = p.r_ab + kTwoPi / p.k;
        period = std::max(period, std::abs(dipole_dipole_rate(shifted).gamma_ab - r.gamma_ab) / gamma);
    }
    report(9, "dipole pair", sum_rule && colocated && period < 1e-12,
           std::string("sum rule ") + (sum_rule ? "holds" : "broken") + ", co-located gamma_AB = coupling: " +
               (colocated ? "yes" : "no") + fmt(", max rel deviation over one period %.1e", period));
}

std::vector<fs::path> configs_in(const fs::path& dir) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".ini") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void determinism(const fs::path& config_dir, const fs::path& out) {
    const auto configs = configs_in(config_dir);
    std::vector<std::string> names[2];
    std::string problem;
    for (int pass = 0; pass < 2; ++pass) {
        const fs::path dir = out / ("run" + std::to_string(pass + 1));
        fs::remove_all(dir);
        for (const auto& c : configs) {
            try {
                cli::RunOptions opt;
                opt.out_dir = dir.string();
                opt.plot = false;
                const auto rep = cli::run(cli::load_config(c.string()), opt);
                if (rep.exit_code() != 0) problem = c.filename().string() + " had failed sweep points";
                for (const auto& f : rep.files) names[pass].push_back(fs::path(f.path).filename().string());
            } catch (const std::exception& e) {
                problem = c.filename().string() + ": " + e.what();
            }
        }
    }
    std::size_t differ = 0;
    if (names[0] != names[1]) problem = "file lists differ";
    for (const auto& n : names[0])
        if (slurp(out / "run1" / n) != slurp(out / "run2" / n)) ++differ;
    const bool ok = problem.empty() && differ == 0 && !names[0].empty();
    report(10, "determinism", ok,
           std::to_string(configs.size()) + " configs, " + std::to_string(names[0].size()) + " CSV files, " +
               std::to_string(differ) + " differ" + (problem.empty() ? "" : "; " + problem));
}

}  // namespace

int main(int argc, char** argv) {
    fs::path out = fs::temp_directory_path() / "qednp_acceptance";
    fs::path configs = QEDNP_CONFIG_DIR;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string a = argv[i];
        if (a == "--out") out = argv[i + 1];
        else if (a == "--configs") configs = argv[i + 1];
        else {
            std::fprintf(stderr, "usage: acceptance [--out DIR] [--configs DIR]\n");
            return 2;
        }
    }
    const auto t0 = Clock::now();
    dual_formalism();
    wigner_weisskopf();
    vacuum_rabi();
    purcell_arithmetic();
    resonance_fluorescence();
    scattering();
    phonons();
    biexp_inverse();
    dipole_pair();
    determinism(configs, out);
    std::printf("%d of 10 criteria passed (%.1f s)\n", 10 - failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
