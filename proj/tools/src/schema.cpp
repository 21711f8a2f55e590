#include <map>

#include "qednp_cli/config.hpp"

namespace qednp::cli {

namespace {

using V = std::vector<ParamSpec>;

V cat(std::initializer_list<V> parts) {
    V out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

// Emitter in an LDOS profile; shared by decay, spectrum and lamb.
const V& emitter_block() {
    static const V v = {
        {"profile", Dim::Text, "homogeneous", Check::None,
         {"homogeneous", "lorentzian", "band-edge", "tabulated"}},
        {"wavelength", Dim::Length, "950", Check::Positive, {}},
        {"gamma_hom", Dim::Rate, "1", Check::Positive, {}},
        {"gamma_ng", Dim::Rate, "0", Check::NonNegative, {}},
        {"band_fraction", Dim::Number, "0.5", Check::OpenUnitInterval, {}},
        // lorentzian
        {"q", Dim::Number, "10000", Check::Positive, {}},
        {"fp_res", Dim::Number, "10", Check::NonNegative, {}},
        {"cavity_detuning", Dim::Frequency, "0", Check::None, {}},
        // band-edge, measured from the transition
        {"f_peak", Dim::Number, "60", Check::Positive, {}},
        {"edge_offset", Dim::Frequency, "0", Check::None, {}},
        {"rolloff_width", Dim::Frequency, "10", Check::Positive, {}},
        {"background", Dim::Number, "0.1", Check::NonNegative, {}},
        {"plateau_width", Dim::Frequency, "0", Check::NonNegative, {}},
        // tabulated
        {"ldos_file", Dim::Text, "", Check::None, {}},
        {"ldos_in_ueV", Dim::Flag, "false", Check::None, {}},
    };
    return v;
}

const V& jc_block() {
    static const V v = {
        {"coupling", Dim::Text, "direct", Check::None, {"direct", "cavity"}},
        {"g", Dim::Rate, "0", Check::NonNegative, {}},
        {"kappa", Dim::Rate, "0", Check::NonNegative, {}},
        {"gamma_ng", Dim::Rate, "0", Check::NonNegative, {}},
        {"gamma_dp", Dim::Rate, "0", Check::NonNegative, {}},
        {"delta", Dim::Frequency, "0", Check::None, {}},
        // coupling = cavity
        {"q", Dim::Number, "10000", Check::Positive, {}},
        {"fp_res", Dim::Number, "10", Check::NonNegative, {}},
        {"wavelength", Dim::Length, "950", Check::Positive, {}},
        {"gamma_hom", Dim::Rate, "1", Check::Positive, {}},
    };
    return v;
}

const V& phonon_block() {
    static const V v = {
        {"d_e", Dim::Energy, "-14.6", Check::None, {}},
        {"d_g", Dim::Energy, "-4.8", Check::None, {}},
        {"c_s", Dim::Speed, "5110", Check::Positive, {}},
        {"d_m", Dim::MassDensity, "5370", Check::Positive, {}},
        {"sigma_e", Dim::Length, "1.4", Check::Positive, {}},
        {"sigma_g", Dim::Length, "1.5", Check::Positive, {}},
        {"temperature", Dim::Temperature, "0", Check::NonNegative, {}},
    };
    return v;
}

const V& drive_block() {
    static const V v = {
        {"omega_p", Dim::Rate, "", Check::NonNegative, {}},
        {"gamma", Dim::Rate, "1", Check::Positive, {}},
        {"gamma_dp", Dim::Rate, "0", Check::NonNegative, {}},
    };
    return v;
}

const V norm_param = {{"normalization", Dim::Text, "peak", Check::None, {"peak", "area", "raw"}}};

std::map<ScenarioKind, V> build() {
    std::map<ScenarioKind, V> m;
    m[ScenarioKind::Decay] = cat({emitter_block(),
                                  {{"t_end", Dim::Time, "5", Check::Positive, {}},
                                   {"dt", Dim::Time, "0.001", Check::Positive, {}},
                                   {"sample_every", Dim::Count, "1", Check::Positive, {}}}});
    m[ScenarioKind::Spectrum] = cat({emitter_block(), norm_param,
                                     {{"span", Dim::Frequency, "20", Check::Positive, {}},
                                      {"points", Dim::Count, "2001", Check::Positive, {}}}});
    m[ScenarioKind::Lamb] = cat({emitter_block(),
                                 {{"span", Dim::Frequency, "20", Check::Positive, {}},
                                  {"points", Dim::Count, "401", Check::Positive, {}}}});
    m[ScenarioKind::Mollow] = cat({drive_block(),
                                   {{"span", Dim::Frequency, "60", Check::Positive, {}},
                                    {"points", Dim::Count, "2001", Check::Positive, {}}}});
    m[ScenarioKind::G2] = cat({drive_block(),
                               {{"tau_max", Dim::Time, "10", Check::Positive, {}},
                                {"points", Dim::Count, "1001", Check::Positive, {}}}});
    m[ScenarioKind::JcEvolve] = cat({jc_block(),
                                     {{"t_end", Dim::Time, "1", Check::Positive, {}},
                                      {"dt", Dim::Time, "0.0001", Check::Positive, {}},
                                      {"sample_every", Dim::Count, "10", Check::Positive, {}}}});
    m[ScenarioKind::JcSpectra] = cat({jc_block(), norm_param,
                                      {{"points", Dim::Count, "4001", Check::Positive, {}},
                                       {"weak_factor", Dim::Number, "0.1", Check::Positive, {}}}});
    m[ScenarioKind::PhononRate] =
        cat({phonon_block(),
             {{"g", Dim::Rate, "", Check::NonNegative, {}},
              {"kappa", Dim::Rate, "", Check::NonNegative, {}},
              {"gamma_ng", Dim::Rate, "0", Check::NonNegative, {}},
              {"gamma_dp", Dim::Rate, "0", Check::NonNegative, {}},
              {"span", Dim::Frequency, "3 meV", Check::Positive, {}},
              {"points", Dim::Count, "301", Check::Positive, {}},
              {"validity_factor", Dim::Number, "3", Check::Positive, {}}}});
    m[ScenarioKind::IbmSpectrum] = cat({phonon_block(), norm_param,
                                        {{"gamma_tot", Dim::Rate, "1", Check::Positive, {}},
                                         {"span", Dim::Frequency, "12 meV", Check::Positive, {}},
                                         {"points", Dim::Count, "4001", Check::Positive, {}},
                                         {"cluster_width", Dim::Number, "0.002", Check::Positive, {}},
                                         {"t_max", Dim::Time, "0.05", Check::Positive, {}}}});
    m[ScenarioKind::Scatter] = {
        {"beta", Dim::Number, "", Check::UnitInterval, {}},
        {"gamma", Dim::Rate, "1", Check::Positive, {}},
        {"gamma_dp", Dim::Rate, "0", Check::NonNegative, {}},
        {"tau_max", Dim::Time, "5", Check::Positive, {}},
        {"points", Dim::Count, "501", Check::Positive, {}},
    };
    m[ScenarioKind::DipolePair] = {
        {"gamma", Dim::Rate, "1", Check::NonNegative, {}},
        {"coupling", Dim::Rate, "1", Check::NonNegative, {}},
        {"k", Dim::WaveNumber, "", Check::None, {}},
        {"phase", Dim::Number, "0", Check::None, {}},
        {"r_max", Dim::Length, "", Check::Positive, {}},
        {"points", Dim::Count, "501", Check::Positive, {}},
        {"l_ext", Dim::Length, "0", Check::NonNegative, {}},
    };
    m[ScenarioKind::FitBiexp] = {
        {"input", Dim::Text, "", Check::None, {}},
        {"gamma_rad_b", Dim::Rate, "1", Check::NonNegative, {}},
        {"gamma_nrad", Dim::Rate, "0.1", Check::NonNegative, {}},
        {"gamma_db", Dim::Rate, "0.05", Check::NonNegative, {}},
        {"rho_b0", Dim::Number, "0.5", Check::UnitInterval, {}},
        {"rho_d0", Dim::Number, "0.5", Check::UnitInterval, {}},
        {"scale", Dim::Number, "20000", Check::Positive, {}},
        {"t_end", Dim::Time, "160", Check::Positive, {}},
        {"bins", Dim::Count, "1000", Check::Positive, {}},
        {"noise", Dim::Flag, "true", Check::None, {}},
        {"seed", Dim::Count, "0", Check::NonNegative, {}},
        {"init_rad_b", Dim::Rate, "1", Check::Positive, {}},
        {"init_nrad", Dim::Rate, "0.1", Check::Positive, {}},
        {"init_db", Dim::Rate, "0.05", Check::Positive, {}},
        {"weighting", Dim::Text, "model", Check::None, {"model", "counts"}},
    };
    m[ScenarioKind::Efficiency] = {
        {"eta_gen", Dim::Number, "1", Check::UnitInterval, {}},
        {"beta", Dim::Number, "1", Check::UnitInterval, {}},
        {"eta_det", Dim::Number, "1", Check::UnitInterval, {}},
    };
    return m;
}

}  // namespace

const std::vector<ParamSpec>& schema(ScenarioKind kind) {
    static const std::map<ScenarioKind, V> table = build();
    return table.at(kind);
}

}  // namespace qednp::cli
