#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qednp/emitter.hpp"
#include "qednp/errors.hpp"
#include "qednp/jc.hpp"
#include "qednp/units.hpp"

using namespace qednp;

namespace {

const double kW0 = wavelength_to_omega(950.0);

EmitterConfig wide_config(double gamma_hom = 1.0, double gamma_extra = 0.0) {
    return EmitterConfig{kW0, gamma_hom, 0.5 * kW0, 1.5 * kW0, gamma_extra};
}

// JC parameters reproduced by a Lorentzian kernel with gamma_hom = 1.
struct Mapped {
    LorentzianCavity cavity;
    EmitterConfig cfg;
    JcParams jc;
};

Mapped map_jc(double g, double kappa, double gamma_ng) {
    Mapped m{LorentzianCavity{kW0, kW0 / kappa, 4.0 * g * g / kappa}, wide_config(1.0, gamma_ng),
             JcParams{g, kappa, gamma_ng, 0.0, 0.0}};
    return m;
}

double max_error_vs_jc(const Mapped& m, double dt) {
    const double t_end = 10.0 / m.jc.kappa;
    const auto k = build_kernel(m.cavity, m.cfg, dt, std::max(t_end, 10.0 * dt));
    const auto tr = solve_volterra(k, m.cfg, t_end, dt);
    double err = 0.0;
    for (std::size_t i = 0; i < tr.t.size(); ++i)
        err = std::max(err, std::abs(tr.population(i) - analytic_rho11(m.jc, tr.t[i])));
    return err;
}

}  // namespace

TEST(WwRate, Examples) {
    EXPECT_DOUBLE_EQ(ww_rate(Homogeneous{}, wide_config()), 1.0);
    LorentzianCavity c{kW0, 1e4, 5.2};
    EXPECT_NEAR(ww_rate(c, wide_config()), 5.2, 1e-12);
    EXPECT_NEAR(1.0 / ww_rate(c, wide_config()), 0.192, 5e-4);
    WaveguideBandEdge gap{10.0, 0.9 * kW0, 0.01 * kW0, 0.0};
    EXPECT_EQ(ww_rate(gap, wide_config()), 0.0);
}

TEST(Kernel, HomogeneousIsPureBackground) {
    const auto k = build_kernel(Homogeneous{}, wide_config(2.0), 0.01, 1.0);
    EXPECT_TRUE(k.is_zero());
    EXPECT_DOUBLE_EQ(k.background_rate, 2.0);
}

TEST(Kernel, LorentzianEnvelopeDecaysAtHalfKappa) {
    LorentzianCavity c{kW0, 2e4, 10.0};
    const auto k = build_kernel(c, wide_config(), 1e-3, 0.5);
    const double t1 = 0.1, t2 = 0.4;
    const double rate = -std::log(std::abs(k.at(t2)) / std::abs(k.at(t1))) / (t2 - t1);
    EXPECT_NEAR(rate / (0.5 * c.kappa()), 1.0, 0.01);
}

TEST(Kernel, LorentzianClosedFormMatchesQuadrature) {
    // The closed form drops the w/w0 weight and the lower band limit; at
    // Q = 2000 both corrections sit far below the comparison tolerance.
    LorentzianCavity c{kW0, 2e3, 10.0};
    EmitterConfig cfg = wide_config();
    const double hw = c.half_width();
    cfg.band_lo = kW0 - 1000 * hw;
    cfg.band_hi = kW0 + 1000 * hw;
    const auto closed = build_kernel(c, cfg, 1e-3, 0.02);
    auto dfp = [&c](double w) { return evaluate_purcell(c, w); };
    const auto numeric = build_kernel(dfp, feature_breaks(c, cfg.band_lo, cfg.band_hi), cfg, 0.0,
                                      1e-3, 0.02);
    const double scale = std::abs(closed.values[0]);
    for (std::size_t i = 2; i < closed.values.size(); ++i)
        EXPECT_LT(std::abs(closed.values[i] - numeric.values[i]) / scale, 2e-3) << i;
}

TEST(Kernel, RectangleGivesSinc) {
    const double h = 3.0, w = 200.0;
    auto cfg = wide_config();
    auto dfp = [&](double x) { return std::abs(x - kW0) <= 0.5 * w ? h : 0.0; };
    const std::vector<double> br{cfg.band_lo, kW0 - 0.5 * w, kW0 + 0.5 * w, cfg.band_hi};
    const double dt = kTwoPi / w / 200.0;
    const auto k = build_kernel(dfp, br, cfg, 0.0, dt, 2.0 * kTwoPi / w);
    // K(0) = (gamma_hom / 2 pi) h w up to the w/w0 weight, which averages to 1.
    EXPECT_NEAR(std::real(k.values[0]), cfg.gamma_hom / kTwoPi * h * w, 1e-8);
    std::size_t first_min = 1;
    for (std::size_t i = 1; i + 1 < k.values.size(); ++i) {
        if (std::abs(k.values[i]) < std::abs(k.values[i - 1]) &&
            std::abs(k.values[i]) <= std::abs(k.values[i + 1])) {
            first_min = i;
            break;
        }
    }
    EXPECT_NEAR(k.dt * static_cast<double>(first_min), kTwoPi / w, 1.5 * dt);
    EXPECT_LT(std::abs(k.values[first_min]), 1e-3 * std::abs(k.values[0]));
}

TEST(Kernel, NarrowBandRaisesWarning) {
    LorentzianCavity c{kW0, 1e3, 10.0};
    EmitterConfig cfg{kW0, 1.0, kW0 - 20.0, kW0 + 20.0};
    EXPECT_TRUE(build_kernel(c, cfg, 1e-3, 0.1).truncation_warning);
    EXPECT_FALSE(build_kernel(c, wide_config(), 1e-3, 0.1).truncation_warning);
}

TEST(Kernel, RejectsBadGrid) {
    EXPECT_THROW(build_kernel(Homogeneous{}, wide_config(), 0.0, 1.0), DomainError);
    EXPECT_THROW(build_kernel(Homogeneous{}, wide_config(), 0.2, 1.0), DomainError);
}

TEST(Volterra, ZeroKernelIsExponential) {
    const double gamma = 1.7;
    const auto cfg = wide_config(gamma);
    const auto k = build_kernel(Homogeneous{}, cfg, 1e-3, 1.0);
    const auto tr = solve_volterra(k, cfg, 5.0, 1e-3);
    double err = 0.0;
    for (std::size_t i = 0; i < tr.t.size(); ++i)
        err = std::max(err, std::abs(tr.population(i) - std::exp(-gamma * tr.t[i])));
    EXPECT_LT(err, 1e-12);
}

TEST(Volterra, MatchesJcAnalyticSolution) {
    // Table-like parameter sets in rad/ns: g, kappa, gamma_ng.
    const double sets[][3] = {{ghz_to_rad_ns(4.0), ghz_to_rad_ns(5.0), ghz_to_rad_ns(4.0)},
                              {ghz_to_rad_ns(22.0), ghz_to_rad_ns(11.0), ghz_to_rad_ns(0.1)},
                              {ghz_to_rad_ns(3.0), ghz_to_rad_ns(1.0), ghz_to_rad_ns(0.6)}};
    for (const auto& s : sets) {
        const auto m = map_jc(s[0], s[1], s[2]);
        const double dt = 2e-4 / std::max(s[0], s[1]);
        EXPECT_LT(max_error_vs_jc(m, dt), 1e-6) << "g = " << s[0];
    }
}

TEST(Volterra, WeakCouplingAlsoMatches) {
    const auto m = map_jc(5.0, 400.0, 0.3);
    EXPECT_LT(max_error_vs_jc(m, 1e-5), 1e-6);
}

TEST(Volterra, SecondOrderConvergence) {
    const auto m = map_jc(ghz_to_rad_ns(4.0), ghz_to_rad_ns(5.0), ghz_to_rad_ns(4.0));
    const double dt = 0.05 / ghz_to_rad_ns(5.0);
    const double e1 = max_error_vs_jc(m, dt);
    const double e2 = max_error_vs_jc(m, 0.5 * dt);
    EXPECT_GE(e1 / e2, 3.5);
}

TEST(Volterra, GenericKernelPathAgreesWithClosedPath) {
    const auto m = map_jc(30.0, 40.0, 1.0);
    const double dt = 2e-4;
    const auto closed = build_kernel(m.cavity, m.cfg, dt, 0.25);
    MemoryKernel sampled = closed;
    sampled.exp_terms.clear();
    const auto a = solve_volterra(closed, m.cfg, 0.25, dt);
    const auto b = solve_volterra(sampled, m.cfg, 0.25, dt);
    for (std::size_t i = 0; i < a.t.size(); ++i) EXPECT_NEAR(std::abs(a.c[i] - b.c[i]), 0.0, 1e-12);
}

TEST(Volterra, PopulationConservation) {
    const auto m = map_jc(ghz_to_rad_ns(22.0), ghz_to_rad_ns(11.0), ghz_to_rad_ns(0.1));
    const double dt = 1e-4 / ghz_to_rad_ns(22.0);
    const auto k = build_kernel(m.cavity, m.cfg, dt, 1.0);
    const auto tr = solve_volterra(k, m.cfg, 10.0 / m.jc.kappa, dt);
    for (std::size_t i = 0; i < tr.t.size(); ++i)
        EXPECT_NEAR(tr.population(i) + tr.emitted[i], 1.0, 1e-4);
}

TEST(Volterra, StrongCouplingOscillationPeriod) {
    const double g = 60.0, kappa = 30.0, gng = 1.0;
    const auto m = map_jc(g, kappa, gng);
    const double dt = 1e-5;
    const auto k = build_kernel(m.cavity, m.cfg, dt, 0.3);
    const auto tr = solve_volterra(k, m.cfg, 0.3, dt);
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < tr.t.size(); ++i)
        if (tr.population(i) > tr.population(i - 1) && tr.population(i) >= tr.population(i + 1))
            peaks.push_back(tr.t[i]);
    ASSERT_GE(peaks.size(), 2u);
    const double omega_r = std::sqrt(4.0 * g * g - (gng - kappa) * (gng - kappa) / 4.0);
    EXPECT_NEAR((peaks[1] - peaks[0]) / (kTwoPi / omega_r), 1.0, 0.02);
}

TEST(Volterra, StepSizeErrorOnUnstableKernel) {
    MemoryKernel k;
    k.dt = 1.0;
    k.values.assign(21, cplx(-50.0, 0.0));
    EXPECT_THROW(solve_volterra(k, wide_config(), 20.0, 1.0), StepSizeError);
}

TEST(Spectrum, HomogeneousIsWwLorentzian) {
    const auto cfg = wide_config(1.3);
    const auto grid = FrequencyGrid::uniform(kW0 - 13.0, kW0 + 13.0, 2001);
    const auto s = emission_spectrum(Homogeneous{}, cfg, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = grid[i] - kW0;
        const double lor = 0.25 * 1.69 / (d * d + 0.25 * 1.69);
        EXPECT_NEAR(s.density[i] / lor, 1.0, 1e-3);
    }
}

TEST(Spectrum, FlatLorentzianCavityReducesToWw) {
    // F_P varies < 1% over +-10 linewidths when kappa >> gamma.
    LorentzianCavity c{kW0, 200.0, 3.0};
    const auto cfg = wide_config(0.5);
    const double gamma = 1.5;
    const auto grid = FrequencyGrid::uniform(kW0 - 10 * gamma, kW0 + 10 * gamma, 801);
    const auto s = emission_spectrum(c, cfg, grid, Normalization::Raw);
    const double shift = lamb_shift(c, cfg, kW0);
    double smax = *std::max_element(s.density.begin(), s.density.end());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = grid[i] - kW0 - shift;
        const double lor = 1.0 / (d * d + 0.25 * gamma * gamma);
        EXPECT_NEAR(s.density[i] / lor, 1.0, 1e-2) << i;
        EXPECT_GE(s.density[i], 0.0);
        EXPECT_LE(s.density[i], smax);
    }
}

TEST(Spectrum, VacuumRabiSplittingTransition) {
    const auto cfg = wide_config(1.0);
    LorentzianCavity strong{kW0, 1e5, 100.0};
    LorentzianCavity weak{kW0, 1e4, 20.0};
    const auto grid = FrequencyGrid::uniform(kW0 - 150.0, kW0 + 150.0, 6001);
    EXPECT_EQ(find_peaks(emission_spectrum(strong, cfg, grid), 0.05).size(), 2u);
    const auto sw = emission_spectrum(weak, cfg, grid);
    const auto pw = find_peaks(sw, 0.05);
    ASSERT_EQ(pw.size(), 1u);
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (sw.density[i] >= 0.5) {
            if (lo == 0.0) lo = grid[i];
            hi = grid[i];
        }
    const double fwhm = hi - lo;
    EXPECT_GT(fwhm, 20.0 * 0.9);
    EXPECT_LT(fwhm, weak.kappa());
}

TEST(Lamb, ZeroForHomogeneous) {
    EXPECT_EQ(lamb_shift(Homogeneous{}, wide_config(), kW0 * 1.01), 0.0);
}

TEST(Lamb, CavityShiftIsLargeAndChangesSign) {
    LorentzianCavity c{kW0, 5e4, 50.0};
    const auto cfg = wide_config(1.0);
    double max_abs = 0.0, left = 0.0, right = 0.0;
    for (int i = -400; i <= 400; ++i) {
        const double w = kW0 + i * c.half_width() / 40.0;
        const double s = lamb_shift(c, cfg, w);
        max_abs = std::max(max_abs, std::abs(s));
        if (i == -40) left = s;
        if (i == 40) right = s;
    }
    EXPECT_GT(max_abs, 5.0);
    EXPECT_LT(max_abs, 100.0);
    EXPECT_LT(left * right, 0.0);
}

TEST(Lamb, ClosedFormMatchesNumericPv) {
    LorentzianCavity c{kW0, 1e3, 30.0};
    EmitterConfig cfg = wide_config(1.0);
    cfg.band_lo = 1e-6 * kW0;
    cfg.band_hi = 1e3 * kW0;
    for (double off : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
        const double w = kW0 + off * c.half_width();
        const double a = lamb_shift(c, cfg, w);
        const double b = lamb_shift_numeric(c, cfg, w);
        EXPECT_NEAR(a, b, 2e-3 * std::max(1.0, std::abs(a))) << off;
    }
}

TEST(Lamb, EvenProfileWithoutWeightVanishesAtCentre) {
    LorentzianCavity c{kW0, 2e3, 10.0};
    const auto cfg = wide_config(1.0);
    EmitterConfig sym = cfg;
    const double hw = c.half_width();
    sym.band_lo = kW0 - 3000 * hw;
    sym.band_hi = kW0 + 3000 * hw;
    const double s = lamb_shift(c, sym, kW0, LambOptions{false});
    EXPECT_NEAR(s, 0.0, 1e-6 * c.fp_res);
}

TEST(Lamb, OutsideBandThrows) {
    EXPECT_THROW(lamb_shift(Homogeneous{}, wide_config(), 3.0 * kW0), DomainError);
}

TEST(RateVsDetuning, FollowsLorentzianLaw) {
    LorentzianCavity c{kW0, 1e3, 8.0};
    const auto cfg = wide_config(1.0);
    for (double off : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        EmitterConfig e = cfg;
        e.omega0 = kW0 + off * c.half_width();
        const double law = 8.0 / (1.0 + off * off);
        EXPECT_NEAR(ww_rate(c, e), law, 1e-12 * law);
    }
}
