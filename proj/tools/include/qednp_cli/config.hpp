#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qednp::cli {

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& msg, int line_no)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
    int line;
};

enum class ScenarioKind {
    Decay,
    Spectrum,
    Lamb,
    Mollow,
    G2,
    JcEvolve,
    JcSpectra,
    PhononRate,
    IbmSpectrum,
    Scatter,
    DipolePair,
    FitBiexp,
    Efficiency,
};

const char* kind_name(ScenarioKind k);
std::optional<ScenarioKind> parse_kind(std::string_view name);
const std::vector<ScenarioKind>& all_kinds();

// Physical dimension of a parameter; values are stored in internal units
// (rad/ns, 1/ns, K, nm, ns, eV, m/s, kg/m^3, rad/nm).
enum class Dim { Number, Count, Flag, Text, Frequency, Rate, Temperature, Length, Time, Energy, Speed, MassDensity, WaveNumber };

const char* internal_unit(Dim d);

enum class Check { None, Positive, NonNegative, UnitInterval, OpenUnitInterval };

struct ParamSpec {
    std::string name;
    Dim dim;
    std::string default_text;  // empty means required
    Check check = Check::None;
    std::vector<std::string> choices;  // for Text parameters with a fixed vocabulary
};

const std::vector<ParamSpec>& schema(ScenarioKind kind);

struct ParamValue {
    Dim dim = Dim::Number;
    double number = 0.0;
    std::string text;
    int line = 0;  // 0 for defaults
};

class ParamSet {
public:
    double num(const std::string& name) const;
    long count(const std::string& name) const;
    bool flag(const std::string& name) const;
    const std::string& text(const std::string& name) const;
    bool has(const std::string& name) const { return values_.count(name) != 0; }
    // Only for numeric parameters; used by sweeps.
    void set_number(const std::string& name, double v);
    const std::map<std::string, ParamValue>& values() const { return values_; }
    std::map<std::string, ParamValue>& values() { return values_; }

private:
    const ParamValue& get(const std::string& name) const;
    std::map<std::string, ParamValue> values_;
};

enum class Spacing { Linear, Log };

struct SweepSpec {
    std::string param;
    // Either a range ...
    double start = 0.0;
    double stop = 0.0;
    long steps = 0;
    Spacing spacing = Spacing::Linear;
    // ... or an explicit list.
    std::vector<double> values;
};

struct OutputSpec {
    std::string dir = ".";
    bool plot = false;
    bool log_scale = false;
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Decay;
    std::string id;
    std::string description;
    ParamSet params;
    std::optional<SweepSpec> sweep;
    OutputSpec output;
};

// INI-style text with [scenario], [params], [sweep] and [output] sections.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

// Canonical text: every parameter in internal units, shortest round-trip numbers.
std::string to_text(const ScenarioConfig& cfg);

// Parameter values of the sweep in internal units; empty without a sweep.
std::vector<double> sweep_plan(const ScenarioConfig& cfg);

// Builds the module parameters of every sweep point and runs the module
// validators; model-level problems become ConfigError.
void check_models(const ScenarioConfig& cfg);

// "22 GHz_x2pi" -> 138.23 (rad/ns). Throws ConfigError.
double parse_quantity(std::string_view text, Dim dim, int line);

}  // namespace qednp::cli
