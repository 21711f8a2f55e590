#include "qednp/units.hpp"

#include <cmath>

#include "qednp/errors.hpp"

namespace qednp {

double UnitContext::wavelength_to_omega(double lambda_nm) const {
    if (!(lambda_nm > 0.0) || !std::isfinite(lambda_nm))
        throw UnitError("wavelength must be positive and finite");
    return kTwoPi * c / lambda_nm;
}

double UnitContext::omega_to_wavelength(double w) const {
    if (!(w > 0.0) || !std::isfinite(w))
        throw UnitError("cannot express a non-positive frequency as a wavelength");
    return kTwoPi * c / w;
}

const UnitContext& default_units() {
    static const UnitContext ctx{};
    return ctx;
}

Unit parse_unit(std::string_view s) {
    if (s == "ueV" || s == "µeV" || s == "μeV") return Unit::MicroEV;
    if (s == "meV") return Unit::MilliEV;
    if (s == "rad/ns") return Unit::RadPerNs;
    if (s == "ns^-1" || s == "1/ns" || s == "ns-1" || s == "ns⁻¹") return Unit::PerNs;
    if (s == "nm") return Unit::Nanometer;
    if (s == "GHz" || s == "GHz_x2pi") return Unit::GHz;
    if (s == "K") return Unit::Kelvin;
    throw UnitError("unsupported unit '" + std::string(s) + "'");
}

std::string unit_name(Unit u) {
    switch (u) {
        case Unit::MicroEV: return "ueV";
        case Unit::MilliEV: return "meV";
        case Unit::RadPerNs: return "rad/ns";
        case Unit::PerNs: return "ns^-1";
        case Unit::Nanometer: return "nm";
        case Unit::GHz: return "GHz";
        case Unit::Kelvin: return "K";
    }
    return "?";
}

namespace {

double to_internal(double v, Unit u, const UnitContext& ctx) {
    switch (u) {
        case Unit::MicroEV: return ctx.ev_to_rad_ns(v * 1e-6);
        case Unit::MilliEV: return ctx.ev_to_rad_ns(v * 1e-3);
        case Unit::RadPerNs:
        case Unit::PerNs: return v;
        case Unit::Nanometer: return ctx.wavelength_to_omega(v);
        case Unit::GHz: return kTwoPi * v;
        case Unit::Kelvin: return ctx.kelvin_to_rad_ns(v);
    }
    throw UnitError("unknown unit");
}

double from_internal(double w, Unit u, const UnitContext& ctx) {
    switch (u) {
        case Unit::MicroEV: return ctx.rad_ns_to_ev(w) * 1e6;
        case Unit::MilliEV: return ctx.rad_ns_to_ev(w) * 1e3;
        case Unit::RadPerNs:
        case Unit::PerNs: return w;
        case Unit::Nanometer: return ctx.omega_to_wavelength(w);
        case Unit::GHz: return w / kTwoPi;
        case Unit::Kelvin: return ctx.rad_ns_to_ev(w) / ctx.k_b;
    }
    throw UnitError("unknown unit");
}

}  // namespace

double convert(double value, Unit from, Unit to, const UnitContext& ctx) {
    if (!std::isfinite(value)) throw UnitError("non-finite value");
    if (from == to) return value;
    return from_internal(to_internal(value, from, ctx), to, ctx);
}

}  // namespace qednp
