#include <cmath>
#include <sstream>

#include "qednp/csv.hpp"
#include "qednp/emitter.hpp"
#include "qednp/errors.hpp"
#include "qednp/jc.hpp"
#include "qednp/ldos.hpp"
#include "qednp/phonon.hpp"
#include "qednp/quantum_dot.hpp"
#include "qednp/resonance.hpp"
#include "qednp/units.hpp"
#include "qednp/waveguide.hpp"
#include "qednp_cli/run.hpp"

namespace qednp::cli {

namespace {

std::size_t as_size(long v) { return static_cast<std::size_t>(v); }

Normalization normalization(const ParamSet& p) {
    const auto& n = p.text("normalization");
    if (n == "area") return Normalization::Area;
    if (n == "raw") return Normalization::Raw;
    return Normalization::Peak;
}

CsvTable make_table(std::vector<std::string> header) {
    CsvTable t;
    t.columns.assign(header.size(), {});
    t.header = std::move(header);
    return t;
}

void add_row(CsvTable& t, std::initializer_list<double> row) {
    std::size_t i = 0;
    for (double v : row) t.columns[i++].push_back(v);
}

// Emitter + LDOS

struct EmitterSetup {
    LdosProfile profile;
    EmitterConfig cfg;
};

EmitterSetup emitter_setup(const ParamSet& p) {
    const double w0 = wavelength_to_omega(p.num("wavelength"));
    const double f = p.num("band_fraction");
    EmitterSetup s{Homogeneous{}, EmitterConfig{w0, p.num("gamma_hom"), w0 * (1.0 - f), w0 * (1.0 + f),
                                                p.num("gamma_ng")}};
    const auto& kind = p.text("profile");
    if (kind == "lorentzian") {
        s.profile = LorentzianCavity{w0 - p.num("cavity_detuning"), p.num("q"), p.num("fp_res")};
    } else if (kind == "band-edge") {
        s.profile = WaveguideBandEdge{p.num("f_peak"), w0 + p.num("edge_offset"), p.num("rolloff_width"),
                                      p.num("background"), p.num("plateau_width")};
    } else if (kind == "tabulated") {
        if (p.text("ldos_file").empty()) throw DomainError("profile = tabulated needs ldos_file");
        s.profile = load_tabulated_csv(p.text("ldos_file"), p.flag("ldos_in_ueV"));
    }
    validate(s.profile);
    validate(s.cfg);
    return s;
}

PointResult decay(const ParamSet& p) {
    const auto s = emitter_setup(p);
    const double t_end = p.num("t_end");
    const double dt = p.num("dt");
    const auto kernel = build_kernel(s.profile, s.cfg, dt, t_end);
    const auto tr = solve_volterra(kernel, s.cfg, t_end, dt);
    auto t = make_table({"t_ns", "re_ce", "im_ce", "population", "emitted"});
    const auto every = as_size(p.count("sample_every"));
    for (std::size_t i = 0; i < tr.t.size(); i += every)
        add_row(t, {tr.t[i], tr.c[i].real(), tr.c[i].imag(), tr.population(i), tr.emitted[i]});
    PointResult r;
    r.notes.push_back("profile: " + profile_name(s.profile));
    if (kernel.truncation_warning)
        r.warnings.push_back("LDOS band narrower than 10 linewidths; memory kernel may be truncated");
    r.summary = {{"population_end", tr.population(tr.t.size() - 1)}, {"emitted_end", tr.emitted.back()}};
    r.tables.push_back({"decay", std::move(t), {}, true});
    return r;
}

PointResult spectrum(const ParamSet& p) {
    const auto s = emitter_setup(p);
    const double span = p.num("span");
    const auto det = FrequencyGrid::uniform(-span, span, as_size(p.count("points")));
    std::vector<double> abs(det.points());
    for (auto& w : abs) w += s.cfg.omega0;
    const auto sp = emission_spectrum(s.profile, s.cfg, FrequencyGrid(abs), normalization(p));
    auto t = make_table({"detuning", "omega", "density"});
    for (std::size_t i = 0; i < det.size(); ++i) add_row(t, {det[i], abs[i], sp.density[i]});
    const auto peaks = find_peaks(sp);
    PointResult r;
    r.notes.push_back("profile: " + profile_name(s.profile));
    r.summary = {{"peak_count", static_cast<double>(peaks.size())}};
    r.tables.push_back({"spectrum", std::move(t), {}, true});
    return r;
}

PointResult lamb(const ParamSet& p) {
    const auto s = emitter_setup(p);
    const double span = p.num("span");
    const auto det = FrequencyGrid::uniform(-span, span, as_size(p.count("points")));
    auto t = make_table({"detuning", "lamb_shift"});
    for (double d : det.points()) add_row(t, {d, lamb_shift(s.profile, s.cfg, s.cfg.omega0 + d)});
    PointResult r;
    r.notes.push_back("profile: " + profile_name(s.profile));
    r.summary = {{"lamb_shift_at_transition", lamb_shift(s.profile, s.cfg, s.cfg.omega0)}};
    r.tables.push_back({"lamb", std::move(t), {}, true});
    return r;
}

// Resonance fluorescence

DriveParams drive(const ParamSet& p) {
    DriveParams d{p.num("omega_p"), p.num("gamma"), p.num("gamma_dp")};
    validate(d);
    return d;
}

PointResult mollow(const ParamSet& p) {
    const auto d = drive(p);
    const double span = p.num("span");
    const auto grid = FrequencyGrid::uniform(-span, span, as_size(p.count("points")));
    const auto ms = mollow_spectrum(d, grid, Normalization::Raw);
    const auto in = intensities(d);
    auto t = make_table({"detuning", "incoherent"});
    for (std::size_t i = 0; i < grid.size(); ++i) add_row(t, {grid[i], ms.incoherent.density[i]});
    // Zero until the spectrum resolves into separate lines.
    const auto peaks = find_peaks(ms.incoherent);
    const double sideband = peaks.size() > 1 ? peaks.back().position : 0.0;
    PointResult r;
    t.comments.push_back("coherent_weight = " + format_number(ms.coherent_weight) + " (delta line at 0)");
    r.summary = {{"i_coh", in.coherent},
                 {"i_inc", in.incoherent},
                 {"n_s", steady_population(d)},
                 {"sideband_position", sideband}};
    r.tables.push_back({"mollow", std::move(t), {}, true});
    return r;
}

PointResult g2_curve(const ParamSet& p) {
    const auto d = drive(p);
    const auto taus = FrequencyGrid::uniform(0.0, p.num("tau_max"), as_size(p.count("points")));
    auto t = make_table({"tau_ns", "g2"});
    for (double tau : taus.points()) add_row(t, {tau, g2(d, tau)});
    PointResult r;
    r.summary = {{"g2_0", g2(d, 0.0)}};
    r.tables.push_back({"g2", std::move(t), {}, true});
    return r;
}

// Jaynes-Cummings

JcParams jc_params(const ParamSet& p) {
    JcParams j;
    if (p.text("coupling") == "cavity") {
        const double w0 = wavelength_to_omega(p.num("wavelength"));
        j = from_profile(LorentzianCavity{w0 - p.num("delta"), p.num("q"), p.num("fp_res")}, p.num("gamma_hom"),
                         p.num("gamma_ng"));
    } else {
        j.g = p.num("g");
        j.kappa = p.num("kappa");
        j.gamma_ng = p.num("gamma_ng");
    }
    j.gamma_dp = p.num("gamma_dp");
    j.delta = p.num("delta");
    validate(j);
    if (!(j.kappa + j.gamma_ng > 0.0)) throw DomainError("kappa + gamma_ng must be positive");
    return j;
}

void describe(PointResult& r, const JcParams& j, double weak_factor) {
    r.notes.push_back(std::string("regime: ") + regime_name(classify_regime(j, weak_factor)));
    r.summary.insert(r.summary.begin(), {{"g", j.g}, {"kappa", j.kappa}, {"gamma_ng", j.gamma_ng}});
}

PointResult jc_evolve(const ParamSet& p) {
    const auto j = jc_params(p);
    const auto tr = evolve(j, JcState{}, p.num("t_end"), p.num("dt"), as_size(p.count("sample_every")));
    const bool closed = j.gamma_dp == 0.0 && j.delta == 0.0;
    std::vector<std::string> head = {"t_ns", "rho11", "rho22", "re_rho12", "im_rho12"};
    if (closed) head.push_back("analytic_rho11");
    auto t = make_table(head);
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        const auto& s = tr.states[i];
        add_row(t, {tr.t[i], s.rho11, s.rho22, s.rho12.real(), s.rho12.imag()});
        if (closed) t.columns[5].push_back(analytic_rho11(j, tr.t[i]));
    }
    PointResult r;
    describe(r, j, 0.1);
    r.summary.emplace_back("rho11_end", tr.states.back().rho11);
    if (!closed) r.notes.push_back("analytic column omitted: needs gamma_dp = 0 and delta = 0");
    r.tables.push_back({"jc", std::move(t), {}, true});
    return r;
}

double outer_splitting(const std::vector<Peak>& peaks) {
    return peaks.size() < 2 ? 0.0 : peaks.back().position - peaks.front().position;
}

PointResult jc_spectra_point(const ParamSet& p) {
    const auto j = jc_params(p);
    const auto grid = default_jc_grid(j, as_size(p.count("points")));
    const auto sp = jc_spectra(j, grid, normalization(p));
    auto t = make_table({"omega", "s_em", "s_cav"});
    for (std::size_t i = 0; i < grid.size(); ++i) add_row(t, {grid[i], sp.emitter.density[i], sp.cavity.density[i]});
    const auto pe = find_peaks(sp.emitter);
    const auto pc = find_peaks(sp.cavity);
    PointResult r;
    describe(r, j, p.num("weak_factor"));
    t.comments.push_back("omega measured from the mean frequency (w0 + wc)/2, rad/ns");
    r.summary.emplace_back("rabi_magnitude", std::abs(rabi_frequency(j)));
    r.summary.emplace_back("peaks_em", static_cast<double>(pe.size()));
    r.summary.emplace_back("peaks_cav", static_cast<double>(pc.size()));
    r.summary.emplace_back("peak_splitting_em", outer_splitting(pe));
    r.summary.emplace_back("peak_splitting_cav", outer_splitting(pc));
    r.tables.push_back({"spectra", std::move(t), {}, true});
    return r;
}

// Phonons

PhononParams phonon_params(const ParamSet& p) {
    PhononParams ph;
    ph.d_e = p.num("d_e");
    ph.d_g = p.num("d_g");
    ph.c_s = p.num("c_s");
    ph.d_m = p.num("d_m");
    ph.sigma_e = p.num("sigma_e");
    ph.sigma_g = p.num("sigma_g");
    ph.temperature = p.num("temperature");
    validate(ph);
    return ph;
}

PointResult phonon_rate(const ParamSet& p) {
    const auto ph = phonon_params(p);
    JcParams j{p.num("g"), p.num("kappa"), p.num("gamma_ng"), p.num("gamma_dp"), 0.0};
    validate(j);
    const double span = p.num("span");
    const auto grid = FrequencyGrid::uniform(-span, span, as_size(p.count("points")));
    auto t = make_table({"delta", "rate", "valid"});
    std::size_t invalid = 0;
    for (double d : grid.points()) {
        const auto pr = phonon_purcell_rate(ph, j, d, p.num("validity_factor"));
        if (!pr.valid) ++invalid;
        add_row(t, {d, pr.rate, pr.valid ? 1.0 : 0.0});
    }
    PointResult r;
    if (invalid > 0)
        r.warnings.push_back(std::to_string(invalid) + " of " + std::to_string(grid.size()) +
                             " detunings are not well above g (valid = 0 rows)");
    r.summary = {{"invalid_points", static_cast<double>(invalid)}};
    r.tables.push_back({"phonon_rate", std::move(t), {}, true});
    return r;
}

PointResult ibm(const ParamSet& p) {
    const auto ph = phonon_params(p);
    const double span = p.num("span");
    const auto grid = FrequencyGrid::dense_near(-span, span, as_size(p.count("points")), 0.0, p.num("cluster_width"));
    IbmOptions opt;
    opt.t_max = p.num("t_max");
    opt.norm = normalization(p);
    const auto res = ibm_spectrum(ph, p.num("gamma_tot"), grid, opt);
    auto t = make_table({"detuning", "density", "sideband"});
    for (std::size_t i = 0; i < grid.size(); ++i) add_row(t, {grid[i], res.spectrum.density[i], res.sideband[i]});
    PointResult r;
    r.summary = {{"sideband_fraction", res.sideband_fraction},
                 {"sideband_above", res.sideband_above},
                 {"sideband_below", res.sideband_below},
                 {"zpl_weight", res.zpl_weight}};
    r.tables.push_back({"ibm", std::move(t), {}, true});
    return r;
}

// Waveguide QED

PointResult scatter(const ParamSet& p) {
    const ScatterParams sp{p.num("beta"), p.num("gamma"), p.num("gamma_dp"), 0.0};
    const auto tr = transmission_reflection(sp);
    PointResult r;
    r.summary = {{"t", tr.t}, {"r", tr.r}, {"loss", tr.loss}};
    if (sp.gamma_dp == 0.0 && sp.beta < 1.0) {
        const auto taus = FrequencyGrid::uniform(0.0, p.num("tau_max"), as_size(p.count("points")));
        auto t = make_table({"tau_ns", "g2_t"});
        for (double tau : taus.points()) add_row(t, {tau, g2_transmitted(sp, tau)});
        r.tables.push_back({"g2_t", std::move(t), {}, true});
    } else {
        r.notes.push_back("transmitted g2 omitted: needs gamma_dp = 0 and beta < 1");
    }
    return r;
}

PointResult dipole(const ParamSet& p) {
    const auto rs = FrequencyGrid::uniform(0.0, p.num("r_max"), as_size(p.count("points")));
    const double l_ext = p.num("l_ext");
    auto t = make_table({"r_nm", "gamma_ab", "gamma_plus", "gamma_minus"});
    for (double r_ab : rs.points()) {
        const DipolePair dp{p.num("gamma"), p.num("coupling"), p.num("k"), r_ab, p.num("phase")};
        const auto rates = l_ext > 0.0 ? damped_dipole_range(dp, l_ext) : dipole_dipole_rate(dp);
        add_row(t, {r_ab, rates.gamma_ab, rates.gamma_plus, rates.gamma_minus});
    }
    PointResult r;
    const auto at0 = dipole_dipole_rate({p.num("gamma"), p.num("coupling"), p.num("k"), 0.0, p.num("phase")});
    r.summary = {{"gamma_ab_colocated", at0.gamma_ab}};
    if (l_ext == 0.0) r.notes.push_back("l_ext = 0: no propagation loss");
    r.tables.push_back({"dipole", std::move(t), {}, true});
    return r;
}

// Quantum dot decay fit

PointResult fit(const ParamSet& p) {
    DecayCurve curve;
    PointResult r;
    if (p.text("input").empty()) {
        const ExcitonRates truth{p.num("gamma_rad_b"), p.num("gamma_nrad"), p.num("gamma_db"), 0.0};
        validate(truth);
        curve = synth_decay(truth, p.num("rho_b0"), p.num("rho_d0"), p.num("scale"), p.num("t_end"),
                            as_size(p.count("bins")), p.flag("noise"), static_cast<unsigned long long>(p.count("seed")));
        auto t = make_table({"t_ns", "counts"});
        for (std::size_t i = 0; i < curve.t.size(); ++i) add_row(t, {curve.t[i], curve.counts[i]});
        r.tables.push_back({"curve", std::move(t), {}, true});
    } else {
        const auto csv = read_csv(p.text("input"));
        if (csv.columns.size() < 2) throw DomainError(p.text("input") + ": need time and count columns");
        curve.t = csv.columns[0];
        curve.counts = csv.columns[1];
        curve.poisson_noise = true;
    }
    validate(curve);
    FitOptions opt;
    opt.rho_b0 = p.num("rho_b0");
    opt.rho_d0 = p.num("rho_d0");
    opt.weighting = p.text("weighting") == "counts" ? FitWeighting::Counts : FitWeighting::Model;
    const ExcitonRates init{p.num("init_rad_b"), p.num("init_nrad"), p.num("init_db"), 0.0};
    const auto res = fit_biexp(curve, init, opt);
    const char* names[] = {"gamma_rad_b", "gamma_nrad", "gamma_db", "scale"};
    const double est[] = {res.rates.gamma_rad_b, res.rates.gamma_nrad, res.rates.gamma_db, res.scale};
    std::ostringstream rep;
    rep << "parameter,estimate,stderr\n";
    for (int i = 0; i < 4; ++i) {
        rep << names[i] << "," << format_number(est[i]) << "," << format_number(res.stderr_[i]) << "\n";
        if (res.at_bound[i]) r.warnings.push_back(std::string(names[i]) + " ended at its bound");
    }
    if (res.span_too_short) r.warnings.push_back("decay curve shorter than 3 / gamma_s; slow rate poorly constrained");
    r.tables.push_back({"fit", {}, rep.str(), false});
    for (int i = 0; i < 4; ++i) r.summary.emplace_back(names[i], est[i]);
    r.summary.emplace_back("chi2", res.chi2);
    return r;
}

PointResult efficiency(const ParamSet& p) {
    PointResult r;
    r.summary = {{"eta_tot", total_efficiency({p.num("eta_gen"), p.num("beta"), p.num("eta_det")})}};
    return r;
}

}  // namespace

PointResult evaluate(ScenarioKind kind, const ParamSet& params) {
    switch (kind) {
        case ScenarioKind::Decay: return decay(params);
        case ScenarioKind::Spectrum: return spectrum(params);
        case ScenarioKind::Lamb: return lamb(params);
        case ScenarioKind::Mollow: return mollow(params);
        case ScenarioKind::G2: return g2_curve(params);
        case ScenarioKind::JcEvolve: return jc_evolve(params);
        case ScenarioKind::JcSpectra: return jc_spectra_point(params);
        case ScenarioKind::PhononRate: return phonon_rate(params);
        case ScenarioKind::IbmSpectrum: return ibm(params);
        case ScenarioKind::Scatter: return scatter(params);
        case ScenarioKind::DipolePair: return dipole(params);
        case ScenarioKind::FitBiexp: return fit(params);
        case ScenarioKind::Efficiency: return efficiency(params);
    }
    throw ScenarioError("unhandled scenario kind");
}

void check_models(const ScenarioConfig& cfg) {
    const auto plan = sweep_plan(cfg);
    const std::size_t n = plan.empty() ? 1 : plan.size();
    for (std::size_t i = 0; i < n; ++i) {
        ParamSet p = cfg.params;
        if (!plan.empty()) p.set_number(cfg.sweep->param, plan[i]);
        const std::string where =
            plan.empty() ? std::string() : " (sweep " + cfg.sweep->param + " = " + format_number(plan[i]) + ")";
        try {
            switch (cfg.kind) {
                case ScenarioKind::Decay:
                case ScenarioKind::Spectrum:
                case ScenarioKind::Lamb: {
                    const auto s = emitter_setup(p);
                    if (cfg.kind != ScenarioKind::Decay && p.num("span") >= s.cfg.omega0 - s.cfg.band_lo)
                        throw DomainError("span must stay inside the LDOS band");
                    break;
                }
                case ScenarioKind::Mollow:
                case ScenarioKind::G2: drive(p); break;
                case ScenarioKind::JcEvolve:
                case ScenarioKind::JcSpectra: jc_params(p); break;
                case ScenarioKind::PhononRate:
                case ScenarioKind::IbmSpectrum: phonon_params(p); break;
                case ScenarioKind::Scatter: validate(ScatterParams{p.num("beta"), p.num("gamma"), p.num("gamma_dp"), 0.0}); break;
                case ScenarioKind::DipolePair:
                    validate(DipolePair{p.num("gamma"), p.num("coupling"), p.num("k"), 0.0, p.num("phase")});
                    break;
                case ScenarioKind::FitBiexp:
                    validate(ExcitonRates{p.num("gamma_rad_b"), p.num("gamma_nrad"), p.num("gamma_db"), 0.0});
                    break;
                case ScenarioKind::Efficiency: break;
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string(kind_name(cfg.kind)) + ": " + e.what() + where, 0);
        }
    }
}

}  // namespace qednp::cli
