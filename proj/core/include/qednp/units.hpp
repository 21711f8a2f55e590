#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace qednp {

// Internal system: hbar = 1, angular frequencies in rad/ns, rates in 1/ns.
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Unit {
    MicroEV,
    MilliEV,
    RadPerNs,
    PerNs,
    Nanometer,  // vacuum wavelength
    GHz,        // cyclic frequency f, so omega = 2*pi*f
    Kelvin,     // thermal energy k_B*T
};

struct UnitContext {
    double hbar = 6.582119569e-7;         // eV ns
    double c = 299792458.0;               // nm/ns
    double k_b = 8.617333262e-5;          // eV/K
    double hbar_si = 1.054571817e-34;     // J s
    double electron_volt = 1.602176634e-19;  // J

    double ev_to_rad_ns(double e) const { return e / hbar; }
    double rad_ns_to_ev(double w) const { return w * hbar; }
    double wavelength_to_omega(double lambda_nm) const;
    double omega_to_wavelength(double w) const;
    double kelvin_to_rad_ns(double t) const { return k_b * t / hbar; }
};

const UnitContext& default_units();

// Throws UnitError for names outside the supported set.
Unit parse_unit(std::string_view name);
std::string unit_name(Unit u);

// Both units must be in the supported set; nm <-> anything requires a
// strictly positive value.
double convert(double value, Unit from, Unit to, const UnitContext& ctx = default_units());

inline double ghz_to_rad_ns(double f) { return kTwoPi * f; }
inline double ueV_to_rad_ns(double e) { return convert(e, Unit::MicroEV, Unit::RadPerNs); }
inline double meV_to_rad_ns(double e) { return convert(e, Unit::MilliEV, Unit::RadPerNs); }
inline double wavelength_to_omega(double lambda_nm) {
    return default_units().wavelength_to_omega(lambda_nm);
}

}  // namespace qednp
