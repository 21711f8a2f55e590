#include "qednp_cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qednp/csv.hpp"
#include "qednp/errors.hpp"
#include "qednp/units.hpp"

namespace qednp::cli {

namespace {

constexpr std::pair<ScenarioKind, const char*> kKindNames[] = {
    {ScenarioKind::Decay, "decay"},
    {ScenarioKind::Spectrum, "spectrum"},
    {ScenarioKind::Lamb, "lamb"},
    {ScenarioKind::Mollow, "mollow"},
    {ScenarioKind::G2, "g2"},
    {ScenarioKind::JcEvolve, "jc-evolve"},
    {ScenarioKind::JcSpectra, "jc-spectra"},
    {ScenarioKind::PhononRate, "phonon-rate"},
    {ScenarioKind::IbmSpectrum, "ibm-spectrum"},
    {ScenarioKind::Scatter, "scatter"},
    {ScenarioKind::DipolePair, "dipole-pair"},
    {ScenarioKind::FitBiexp, "fit-biexp"},
    {ScenarioKind::Efficiency, "efficiency"},
};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view s, double& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size() && std::isfinite(out);
}

bool parse_bool(std::string_view s, int line) {
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw ConfigError("expected a boolean, got '" + std::string(s) + "'", line);
}

double scale_for(std::string_view unit, Dim dim, int line) {
    auto bad = [&]() -> double {
        throw ConfigError("unit '" + std::string(unit) + "' does not fit a " +
                              internal_unit(dim) + " parameter",
                          line);
    };
    switch (dim) {
        case Dim::Temperature: return unit == "K" ? 1.0 : bad();
        case Dim::Length:
            if (unit == "nm") return 1.0;
            if (unit == "um" || unit == "µm") return 1e3;
            if (unit == "mm") return 1e6;
            return bad();
        case Dim::Time:
            if (unit == "ns") return 1.0;
            if (unit == "ps") return 1e-3;
            if (unit == "fs") return 1e-6;
            if (unit == "us" || unit == "µs") return 1e3;
            return bad();
        case Dim::Energy:
            if (unit == "eV") return 1.0;
            if (unit == "meV") return 1e-3;
            return bad();
        case Dim::Speed: return (unit == "m/s" || unit == "nm/ns") ? 1.0 : bad();
        case Dim::MassDensity: return unit == "kg/m^3" ? 1.0 : bad();
        case Dim::WaveNumber:
            if (unit == "rad/nm") return 1.0;
            if (unit == "rad/um" || unit == "rad/µm") return 1e-3;
            return bad();
        default: return bad();
    }
}

void check_value(const ParamSpec& spec, double v, int line) {
    auto fail = [&](const char* what) {
        throw ConfigError(spec.name + " = " + format_number(v) + ": " + what, line);
    };
    switch (spec.check) {
        case Check::None: break;
        case Check::Positive:
            if (!(v > 0.0)) fail("must be positive");
            break;
        case Check::NonNegative:
            if (!(v >= 0.0)) fail("must be >= 0");
            break;
        case Check::UnitInterval:
            if (!(v >= 0.0 && v <= 1.0)) fail("must lie in [0, 1]");
            break;
        case Check::OpenUnitInterval:
            if (!(v > 0.0 && v < 1.0)) fail("must lie in (0, 1)");
            break;
    }
}

const ParamSpec* find_spec(ScenarioKind kind, const std::string& name) {
    for (const auto& s : schema(kind))
        if (s.name == name) return &s;
    return nullptr;
}

ParamValue parse_value(const ParamSpec& spec, std::string_view raw, int line) {
    ParamValue v;
    v.dim = spec.dim;
    v.line = line;
    switch (spec.dim) {
        case Dim::Text:
            v.text = std::string(raw);
            if (!spec.choices.empty() &&
                std::find(spec.choices.begin(), spec.choices.end(), v.text) == spec.choices.end()) {
                std::string all;
                for (const auto& c : spec.choices) all += (all.empty() ? "" : ", ") + c;
                throw ConfigError(spec.name + ": '" + v.text + "' is not one of {" + all + "}", line);
            }
            return v;
        case Dim::Flag:
            v.number = parse_bool(raw, line) ? 1.0 : 0.0;
            return v;
        case Dim::Count: {
            double d = 0.0;
            if (!parse_double(raw, d) || d != std::floor(d) || std::fabs(d) > 1e15)
                throw ConfigError(spec.name + ": expected an integer, got '" + std::string(raw) + "'", line);
            v.number = d;
            break;
        }
        default: v.number = parse_quantity(raw, spec.dim, line);
    }
    check_value(spec, v.number, line);
    return v;
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto p = s.find(',');
        out.push_back(trim(s.substr(0, p)));
        if (p == std::string_view::npos) break;
        s.remove_prefix(p + 1);
    }
    return out;
}

std::string value_text(const ParamValue& v) {
    switch (v.dim) {
        case Dim::Text: return v.text;
        case Dim::Flag: return v.number != 0.0 ? "true" : "false";
        case Dim::Count:
        case Dim::Number: return format_number(v.number);
        default: return format_number(v.number) + " " + internal_unit(v.dim);
    }
}

struct RawEntry {
    std::string value;
    int line;
};

using Section = std::map<std::string, RawEntry>;

const RawEntry* get(const Section& s, const char* key) {
    auto it = s.find(key);
    return it == s.end() ? nullptr : &it->second;
}

}  // namespace

const char* kind_name(ScenarioKind k) {
    for (const auto& [kind, name] : kKindNames)
        if (kind == k) return name;
    return "?";
}

std::optional<ScenarioKind> parse_kind(std::string_view name) {
    for (const auto& [kind, n] : kKindNames)
        if (name == n) return kind;
    return std::nullopt;
}

const std::vector<ScenarioKind>& all_kinds() {
    static const std::vector<ScenarioKind> v = [] {
        std::vector<ScenarioKind> out;
        for (const auto& [kind, name] : kKindNames) out.push_back(kind);
        return out;
    }();
    return v;
}

const char* internal_unit(Dim d) {
    switch (d) {
        case Dim::Frequency: return "rad/ns";
        case Dim::Rate: return "1/ns";
        case Dim::Temperature: return "K";
        case Dim::Length: return "nm";
        case Dim::Time: return "ns";
        case Dim::Energy: return "eV";
        case Dim::Speed: return "m/s";
        case Dim::MassDensity: return "kg/m^3";
        case Dim::WaveNumber: return "rad/nm";
        case Dim::Number:
        case Dim::Count:
        case Dim::Flag:
        case Dim::Text: return "";
    }
    return "";
}

double parse_quantity(std::string_view text, Dim dim, int line) {
    text = trim(text);
    const auto sp = text.find_first_of(" \t");
    const std::string_view num = sp == std::string_view::npos ? text : text.substr(0, sp);
    const std::string_view unit = sp == std::string_view::npos ? std::string_view{} : trim(text.substr(sp));
    double v = 0.0;
    if (!parse_double(num, v)) throw ConfigError("malformed number '" + std::string(num) + "'", line);
    if (unit.empty() || unit == internal_unit(dim)) return v;
    if (dim == Dim::Number || dim == Dim::Count)
        throw ConfigError("unexpected unit '" + std::string(unit) + "' on a dimensionless value", line);
    if (dim == Dim::Frequency || dim == Dim::Rate) {
        Unit u;
        try {
            u = parse_unit(unit);
        } catch (const UnitError& e) {
            throw ConfigError(std::string("malformed unit: ") + e.what(), line);
        }
        // Rates are not absolute transition frequencies, and temperatures
        // are not frequencies.
        if (u == Unit::Kelvin || (u == Unit::Nanometer && dim == Dim::Rate))
            throw ConfigError("unit '" + std::string(unit) + "' does not fit a " + internal_unit(dim) +
                                  " parameter",
                              line);
        try {
            return convert(v, u, Unit::RadPerNs);
        } catch (const std::exception& e) {
            throw ConfigError(e.what(), line);
        }
    }
    return v * scale_for(unit, dim, line);
}

double ParamSet::num(const std::string& name) const { return get(name).number; }

long ParamSet::count(const std::string& name) const { return static_cast<long>(get(name).number); }

bool ParamSet::flag(const std::string& name) const { return get(name).number != 0.0; }

const std::string& ParamSet::text(const std::string& name) const { return get(name).text; }

void ParamSet::set_number(const std::string& name, double v) {
    auto it = values_.find(name);
    if (it == values_.end()) throw ConfigError("unknown parameter '" + name + "'", 0);
    it->second.number = v;
}

const ParamValue& ParamSet::get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw ConfigError("parameter '" + name + "' is not defined", 0);
    return it->second;
}

ScenarioConfig parse_config(std::string_view text) {
    static const std::set<std::string> kSections = {"scenario", "params", "sweep", "output"};
    std::map<std::string, Section> sections;
    std::map<std::string, int> section_line;
    std::string current;
    int lineno = 0;
    std::istringstream in{std::string(text)};
    std::string raw_line;
    while (std::getline(in, raw_line)) {
        ++lineno;
        std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        // Trailing comments need whitespace in front so "1/ns#" stays an error.
        for (std::size_t i = 1; i < line.size(); ++i) {
            if ((line[i] == '#' || line[i] == ';') && (line[i - 1] == ' ' || line[i - 1] == '\t')) {
                line = trim(line.substr(0, i));
                break;
            }
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header", lineno);
            current = std::string(trim(line.substr(1, line.size() - 2)));
            if (!kSections.count(current)) throw ConfigError("unknown section [" + current + "]", lineno);
            if (section_line.count(current)) throw ConfigError("duplicate section [" + current + "]", lineno);
            section_line[current] = lineno;
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", lineno);
        if (current.empty()) throw ConfigError("key outside of a section", lineno);
        std::string key(trim(line.substr(0, eq)));
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("empty key", lineno);
        if (value.empty()) throw ConfigError("empty value for '" + key + "'", lineno);
        auto& sec = sections[current];
        if (sec.count(key)) throw ConfigError("duplicate key '" + key + "'", lineno);
        sec[key] = {value, lineno};
    }

    ScenarioConfig cfg;

    // [scenario]
    if (!sections.count("scenario")) throw ConfigError("missing [scenario] section", 0);
    const Section& sc = sections["scenario"];
    for (const auto& [k, e] : sc)
        if (k != "kind" && k != "id" && k != "description")
            throw ConfigError("unknown key '" + k + "' in [scenario]", e.line);
    const RawEntry* kind = get(sc, "kind");
    if (!kind) throw ConfigError("missing required key 'kind' in [scenario]", section_line["scenario"]);
    const auto k = parse_kind(kind->value);
    if (!k) throw ConfigError("unknown scenario kind '" + kind->value + "'", kind->line);
    cfg.kind = *k;
    if (const RawEntry* id = get(sc, "id")) {
        cfg.id = id->value;
        const bool ok = std::all_of(cfg.id.begin(), cfg.id.end(), [](char c) {
            return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
        });
        if (!ok) throw ConfigError("id may only contain letters, digits, '_', '-' and '.'", id->line);
    } else {
        cfg.id = kind_name(cfg.kind);
    }
    if (const RawEntry* d = get(sc, "description")) cfg.description = d->value;

    // [params]
    const Section params = sections.count("params") ? sections["params"] : Section{};
    for (const auto& [key, e] : params)
        if (!find_spec(cfg.kind, key))
            throw ConfigError("unknown key '" + key + "' for scenario kind " + kind_name(cfg.kind), e.line);
    std::vector<const ParamSpec*> missing;
    for (const auto& spec : schema(cfg.kind)) {
        const RawEntry* e = get(params, spec.name.c_str());
        if (e) {
            cfg.params.values()[spec.name] = parse_value(spec, e->value, e->line);
        } else if (spec.default_text.empty() && spec.dim != Dim::Text) {
            missing.push_back(&spec);
        } else {
            ParamValue v = spec.dim == Dim::Text ? ParamValue{Dim::Text, 0.0, spec.default_text, 0}
                                                 : parse_value(spec, spec.default_text, 0);
            v.line = 0;
            cfg.params.values()[spec.name] = v;
        }
    }

    // [sweep]
    if (sections.count("sweep")) {
        const Section& sw = sections["sweep"];
        const int sl = section_line["sweep"];
        for (const auto& [key, e] : sw)
            if (key != "param" && key != "start" && key != "stop" && key != "steps" && key != "spacing" &&
                key != "values")
                throw ConfigError("unknown key '" + key + "' in [sweep]", e.line);
        const RawEntry* p = get(sw, "param");
        if (!p) throw ConfigError("missing required key 'param' in [sweep]", sl);
        const ParamSpec* spec = find_spec(cfg.kind, p->value);
        if (!spec) throw ConfigError("sweep parameter '" + p->value + "' is not in the parameter block", p->line);
        if (spec->dim == Dim::Text || spec->dim == Dim::Flag)
            throw ConfigError("sweep parameter '" + p->value + "' is not numeric", p->line);
        SweepSpec s;
        s.param = p->value;
        if (const RawEntry* vals = get(sw, "values")) {
            for (const char* key : {"start", "stop", "steps", "spacing"})
                if (const RawEntry* extra = get(sw, key))
                    throw ConfigError(std::string("'") + key + "' cannot be combined with 'values'", extra->line);
            for (auto item : split_list(vals->value)) {
                if (item.empty()) throw ConfigError("empty entry in sweep values", vals->line);
                s.values.push_back(parse_value(*spec, item, vals->line).number);
            }
        } else {
            const RawEntry* start = get(sw, "start");
            const RawEntry* stop = get(sw, "stop");
            const RawEntry* steps = get(sw, "steps");
            if (!start) throw ConfigError("missing required key 'start' in [sweep]", sl);
            if (!stop) throw ConfigError("missing required key 'stop' in [sweep]", sl);
            if (!steps) throw ConfigError("missing required key 'steps' in [sweep]", sl);
            s.start = parse_value(*spec, start->value, start->line).number;
            s.stop = parse_value(*spec, stop->value, stop->line).number;
            double n = 0.0;
            if (!parse_double(steps->value, n) || n != std::floor(n) || n < 1 || n > 1e6)
                throw ConfigError("steps must be an integer in [1, 1e6]", steps->line);
            s.steps = static_cast<long>(n);
            if (s.steps == 1 && s.start != s.stop)
                throw ConfigError("a single step needs start = stop", steps->line);
            if (const RawEntry* sp = get(sw, "spacing")) {
                if (sp->value == "linear") s.spacing = Spacing::Linear;
                else if (sp->value == "log") s.spacing = Spacing::Log;
                else throw ConfigError("spacing must be 'linear' or 'log'", sp->line);
                if (s.spacing == Spacing::Log && !(s.start > 0.0 && s.stop > 0.0))
                    throw ConfigError("log spacing needs positive start and stop", sp->line);
            }
        }
        cfg.sweep = s;
    }

    // A required parameter may be left out when the sweep supplies it.
    for (const ParamSpec* spec : missing) {
        if (!cfg.sweep || cfg.sweep->param != spec->name)
            throw ConfigError("missing required key '" + spec->name + "' in [params]",
                              section_line.count("params") ? section_line["params"] : 0);
        cfg.params.values()[spec->name] = ParamValue{spec->dim, sweep_plan(cfg).front(), {}, 0};
    }

    // [output]
    if (sections.count("output")) {
        for (const auto& [key, e] : sections["output"]) {
            if (key == "dir") cfg.output.dir = e.value;
            else if (key == "plot") cfg.output.plot = parse_bool(e.value, e.line);
            else if (key == "log_scale") cfg.output.log_scale = parse_bool(e.value, e.line);
            else throw ConfigError("unknown key '" + key + "' in [output]", e.line);
        }
    }
    check_models(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file " + path, 0);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string to_text(const ScenarioConfig& cfg) {
    std::ostringstream out;
    out << "[scenario]\n";
    out << "kind = " << kind_name(cfg.kind) << "\n";
    out << "id = " << cfg.id << "\n";
    if (!cfg.description.empty()) out << "description = " << cfg.description << "\n";
    out << "\n[params]\n";
    for (const auto& spec : schema(cfg.kind)) {
        const auto& vals = cfg.params.values();
        auto it = vals.find(spec.name);
        if (it == vals.end()) continue;
        if (spec.dim == Dim::Text && it->second.text.empty()) continue;
        out << spec.name << " = " << value_text(it->second) << "\n";
    }
    if (cfg.sweep) {
        const auto& s = *cfg.sweep;
        const Dim dim = cfg.params.values().at(s.param).dim;
        auto q = [&](double v) { return value_text(ParamValue{dim, v, {}, 0}); };
        out << "\n[sweep]\nparam = " << s.param << "\n";
        if (!s.values.empty()) {
            out << "values = ";
            for (std::size_t i = 0; i < s.values.size(); ++i) out << (i ? ", " : "") << q(s.values[i]);
            out << "\n";
        } else {
            out << "start = " << q(s.start) << "\nstop = " << q(s.stop) << "\nsteps = " << s.steps
                << "\nspacing = " << (s.spacing == Spacing::Log ? "log" : "linear") << "\n";
        }
    }
    out << "\n[output]\ndir = " << cfg.output.dir << "\nplot = " << (cfg.output.plot ? "true" : "false")
        << "\nlog_scale = " << (cfg.output.log_scale ? "true" : "false") << "\n";
    return out.str();
}

std::vector<double> sweep_plan(const ScenarioConfig& cfg) {
    if (!cfg.sweep) return {};
    const auto& s = *cfg.sweep;
    if (!s.values.empty()) return s.values;
    std::vector<double> out(static_cast<std::size_t>(s.steps));
    if (s.steps == 1) {
        out[0] = s.start;
        return out;
    }
    const double n = static_cast<double>(s.steps - 1);
    for (long i = 0; i < s.steps; ++i) {
        const double f = static_cast<double>(i) / n;
        out[static_cast<std::size_t>(i)] =
            s.spacing == Spacing::Log ? s.start * std::pow(s.stop / s.start, f) : s.start + (s.stop - s.start) * f;
    }
    // End points exactly as written.
    out.front() = s.start;
    out.back() = s.stop;
    return out;
}

}  // namespace qednp::cli
