#include <algorithm>
#include <cmath>
#include <regex>
#include <set>

#include "json.hpp"
#include "qmem/errors.hpp"
#include "qmem/scenario.hpp"

namespace qmem::scenario {

using nlohmann::json;

std::string to_string(CouplingScheme s) {
    switch (s) {
        case CouplingScheme::Capacitive: return "capacitive";
        case CouplingScheme::Inductive: return "inductive";
        case CouplingScheme::Both: return "both";
    }
    return "unknown";
}

namespace {

constexpr double kFemto = 1e-15;
constexpr double kMicro = 1e-6;

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown field");
    }
}

const json& require_object(const json& parent, const std::string& key, const std::string& path) {
    if (!parent.contains(key)) throw ConfigError(join(path, key), "missing required object");
    const json& v = parent.at(key);
    if (!v.is_object()) throw ConfigError(join(path, key), "must be an object");
    return v;
}

double as_number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ConfigError(field, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field, "must be finite");
    return d;
}

// Numbers or strings such as "pi", "pi/4", "3*pi/4", "0.5pi".
double as_angle(const json& v, const std::string& field) {
    if (v.is_number()) return as_number(v, field);
    if (!v.is_string()) throw ConfigError(field, "must be a number or a multiple of pi such as \"pi/4\"");
    static const std::regex pattern(R"(^\s*([0-9]*\.?[0-9]+)?\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)");
    const std::string s = v.get<std::string>();
    std::smatch m;
    if (!std::regex_match(s, m, pattern)) throw ConfigError(field, "cannot parse angle \"" + s + "\"");
    const double coefficient = m[1].matched ? std::stod(m[1].str()) : 1.0;
    const double denominator = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (denominator == 0.0) throw ConfigError(field, "zero denominator");
    return coefficient * kPi / denominator;
}

template <typename Parse>
std::array<double, 2> pair_of(const json& v, const std::string& field, Parse parse) {
    if (v.is_array()) {
        if (v.size() != 2) throw ConfigError(field, "must have exactly two entries (one per memristor)");
        return {parse(v[0], field + "[0]"), parse(v[1], field + "[1]")};
    }
    const double x = parse(v, field);
    return {x, x};
}

double positive(double v, const std::string& field) {
    if (!(v > 0.0)) throw ConfigError(field, "must be > 0");
    return v;
}

std::array<double, 2> positive_pair(const json& v, const std::string& field) {
    return pair_of(v, field, [](const json& e, const std::string& f) { return positive(as_number(e, f), f); });
}

CouplingScheme parse_scheme(const json& v, const std::string& field) {
    if (!v.is_string()) throw ConfigError(field, "must be one of capacitive, inductive, both");
    const auto s = v.get<std::string>();
    if (s == "capacitive") return CouplingScheme::Capacitive;
    if (s == "inductive") return CouplingScheme::Inductive;
    if (s == "both") return CouplingScheme::Both;
    throw ConfigError(field, "must be one of capacitive, inductive, both (got \"" + s + "\")");
}

circuit::CircuitParams parse_circuit(const json& c) {
    const std::string path = "circuit";
    reject_unknown(c, path, {"cap_sigma_fF", "coupling_capacitance_fF", "inductance_uH", "coupling_inductance_uH"});
    circuit::CircuitParams p;
    if (!c.contains("cap_sigma_fF")) throw ConfigError("circuit.cap_sigma_fF", "missing");
    if (!c.contains("inductance_uH")) throw ConfigError("circuit.inductance_uH", "missing");
    const auto cs = positive_pair(c.at("cap_sigma_fF"), "circuit.cap_sigma_fF");
    const auto l = positive_pair(c.at("inductance_uH"), "circuit.inductance_uH");
    p.cap_sigma = {cs[0] * kFemto, cs[1] * kFemto};
    p.inductance = {l[0] * kMicro, l[1] * kMicro};
    if (c.contains("coupling_capacitance_fF") && !c.at("coupling_capacitance_fF").is_null()) {
        const double cc = as_number(c.at("coupling_capacitance_fF"), "circuit.coupling_capacitance_fF");
        if (cc < 0.0) throw ConfigError("circuit.coupling_capacitance_fF", "must be >= 0");
        p.coupling_capacitance = cc * kFemto;
    }
    if (c.contains("coupling_inductance_uH") && !c.at("coupling_inductance_uH").is_null()) {
        const double lc = positive(as_number(c.at("coupling_inductance_uH"), "circuit.coupling_inductance_uH"),
                                   "circuit.coupling_inductance_uH");
        p.coupling_inductance = lc * kMicro;
    }
    return p;
}

DirectModeEntry parse_mode(const json& m) {
    reject_unknown(m, "mode", {"omega_rad_per_ns", "alpha", "beta", "zero_point", "cap_sigma_fF"});
    DirectModeEntry d;
    if (!m.contains("omega_rad_per_ns")) throw ConfigError("mode.omega_rad_per_ns", "missing");
    if (!m.contains("cap_sigma_fF")) throw ConfigError("mode.cap_sigma_fF", "missing");
    d.omega = positive_pair(m.at("omega_rad_per_ns"), "mode.omega_rad_per_ns");
    const auto cs = positive_pair(m.at("cap_sigma_fF"), "mode.cap_sigma_fF");
    d.cap_sigma = {cs[0] * kFemto, cs[1] * kFemto};
    const auto ratio = [&](const char* key) {
        if (!m.contains(key)) return 0.0;
        const std::string f = std::string("mode.") + key;
        const double r = as_number(m.at(key), f);
        if (!(std::abs(r) < 1.0)) throw ConfigError(f, "must satisfy |value| < 1");
        return r;
    };
    d.alpha = ratio("alpha");
    d.beta = ratio("beta");
    if (m.contains("zero_point") && !m.at("zero_point").is_null()) {
        d.zero_point = positive_pair(m.at("zero_point"), "mode.zero_point");
    }
    return d;
}

std::array<circuit::DriveParams, 2> parse_drive(const json& d) {
    reject_unknown(d, "drive", {"flux_offset", "amplitude", "frequency_rad_per_ns"});
    std::array<circuit::DriveParams, 2> out{};
    if (d.contains("flux_offset")) {
        const auto v = pair_of(d.at("flux_offset"), "drive.flux_offset", as_angle);
        out[0].flux_offset = v[0];
        out[1].flux_offset = v[1];
    }
    if (d.contains("amplitude")) {
        const auto v = pair_of(d.at("amplitude"), "drive.amplitude", [](const json& e, const std::string& f) {
            const double a = as_angle(e, f);
            if (a < 0.0) throw ConfigError(f, "must be >= 0");
            return a;
        });
        out[0].amplitude = v[0];
        out[1].amplitude = v[1];
    }
    if (d.contains("frequency_rad_per_ns")) {
        const json& f = d.at("frequency_rad_per_ns");
        const auto one = [](const json& e, const std::string& field) -> std::optional<double> {
            if (e.is_string() && e.get<std::string>() == "auto") return std::nullopt;
            if (e.is_null()) return std::nullopt;
            return positive(as_number(e, field), field);
        };
        if (f.is_array()) {
            if (f.size() != 2) throw ConfigError("drive.frequency_rad_per_ns", "must have exactly two entries");
            out[0].frequency = one(f[0], "drive.frequency_rad_per_ns[0]");
            out[1].frequency = one(f[1], "drive.frequency_rad_per_ns[1]");
        } else {
            out[0].frequency = out[1].frequency = one(f, "drive.frequency_rad_per_ns");
        }
    }
    return out;
}

void check_scheme(const ScenarioConfig& cfg) {
    const auto fail = [&](const std::string& msg) { throw ConfigError("coupling_scheme", msg); };
    if (cfg.circuit) {
        const bool has_c = cfg.circuit->coupling_capacitance > 0.0;
        const bool has_l = cfg.circuit->coupling_inductance.has_value();
        switch (cfg.scheme) {
            case CouplingScheme::Capacitive:
                if (has_l) fail("capacitive scheme must not set circuit.coupling_inductance_uH");
                break;
            case CouplingScheme::Inductive:
                if (has_c) fail("inductive scheme requires circuit.coupling_capacitance_fF = 0");
                if (!has_l) fail("inductive scheme requires circuit.coupling_inductance_uH");
                break;
            case CouplingScheme::Both:
                if (!has_l) fail("scheme 'both' requires circuit.coupling_inductance_uH");
                break;
        }
    } else {
        if (cfg.scheme == CouplingScheme::Capacitive && cfg.direct->alpha != 0.0) {
            fail("capacitive scheme requires mode.alpha = 0");
        }
        if (cfg.scheme == CouplingScheme::Inductive && cfg.direct->beta != 0.0) {
            fail("inductive scheme requires mode.beta = 0");
        }
    }
}

json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
    }
}

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : path) {
        if (ch == '.') {
            parts.push_back(current);
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    parts.push_back(current);
    for (const auto& p : parts) {
        if (p.empty()) throw ConfigError(std::string(path), "empty path segment");
    }
    return parts;
}

bool is_index(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Returns the node at `path`, creating the final object member if `create` is set.
json& locate(json& doc, std::string_view path, bool create) {
    const auto parts = split_path(path);
    json* node = &doc;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const std::string& key = parts[k];
        const bool last = k + 1 == parts.size();
        if (node->is_array() && is_index(key)) {
            const auto idx = std::stoul(key);
            if (idx >= node->size()) throw ConfigError(std::string(path), "array index out of range");
            node = &(*node)[idx];
        } else if (node->is_object()) {
            if (!node->contains(key)) {
                if (!(create && last)) throw ConfigError(std::string(path), "no such field");
            }
            node = &(*node)[key];
        } else {
            throw ConfigError(std::string(path), "path descends into a scalar");
        }
    }
    return *node;
}

}  // namespace

ScenarioConfig parse_config(std::string_view json_text) {
    const json doc = parse_document(json_text);
    if (!doc.is_object()) throw ConfigError("<document>", "must be a JSON object");
    reject_unknown(doc, "", {"schema_version", "name", "description", "coupling_scheme", "circuit", "mode",
                             "drive", "initial_state", "duration_periods", "step_ns", "analysis",
                             "reference", "notes", "output_dir"});

    if (!doc.contains("schema_version")) throw ConfigError("schema_version", "missing");
    if (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != kSchemaVersion) {
        throw ConfigError("schema_version", "must be " + std::to_string(kSchemaVersion));
    }

    ScenarioConfig cfg;
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) throw ConfigError("name", "must be a string");
        cfg.name = doc.at("name").get<std::string>();
    }

    const bool has_circuit = doc.contains("circuit") && !doc.at("circuit").is_null();
    const bool has_mode = doc.contains("mode") && !doc.at("mode").is_null();
    if (has_circuit == has_mode) {
        throw ConfigError("circuit", "exactly one of 'circuit' or 'mode' must be given");
    }
    if (has_circuit) cfg.circuit = parse_circuit(require_object(doc, "circuit", ""));
    if (has_mode) cfg.direct = parse_mode(require_object(doc, "mode", ""));

    if (!doc.contains("coupling_scheme")) throw ConfigError("coupling_scheme", "missing");
    cfg.scheme = parse_scheme(doc.at("coupling_scheme"), "coupling_scheme");

    if (doc.contains("drive")) {
        cfg.drive = parse_drive(require_object(doc, "drive", ""));
    }

    const json& init = require_object(doc, "initial_state", "");
    reject_unknown(init, "initial_state", {"theta", "phi"});
    if (!init.contains("theta")) throw ConfigError("initial_state.theta", "missing");
    if (!init.contains("phi")) throw ConfigError("initial_state.phi", "missing");
    cfg.theta = pair_of(init.at("theta"), "initial_state.theta", as_angle);
    cfg.phase = pair_of(init.at("phi"), "initial_state.phi", as_angle);
    for (int l = 0; l < 2; ++l) {
        const std::string idx = "[" + std::to_string(l) + "]";
        if (!(cfg.theta[l] >= 0.0 && cfg.theta[l] <= kPi)) throw ConfigError("initial_state.theta" + idx, "must lie in [0, pi]");
        if (!(cfg.phase[l] >= 0.0 && cfg.phase[l] < 2.0 * kPi)) throw ConfigError("initial_state.phi" + idx, "must lie in [0, 2 pi)");
    }

    if (!doc.contains("duration_periods")) throw ConfigError("duration_periods", "missing");
    cfg.duration_periods = as_number(doc.at("duration_periods"), "duration_periods");
    if (!(cfg.duration_periods >= 1.0)) throw ConfigError("duration_periods", "must be >= 1");

    if (doc.contains("step_ns") && !doc.at("step_ns").is_null()) {
        cfg.step_ns = positive(as_number(doc.at("step_ns"), "step_ns"), "step_ns");
    }

    if (doc.contains("analysis")) {
        const json& a = require_object(doc, "analysis", "");
        reject_unknown(a, "analysis", {"pinch_epsilon", "esd_epsilon", "min_plateau_steps", "crosscheck_tolerance"});
        const auto num = [&](const char* key, double& target) {
            if (a.contains(key)) target = positive(as_number(a.at(key), std::string("analysis.") + key),
                                                   std::string("analysis.") + key);
        };
        num("pinch_epsilon", cfg.analysis.pinch_epsilon);
        num("esd_epsilon", cfg.analysis.esd_epsilon);
        num("crosscheck_tolerance", cfg.analysis.crosscheck_tolerance);
        if (a.contains("min_plateau_steps")) {
            cfg.analysis.min_plateau_steps = as_number(a.at("min_plateau_steps"), "analysis.min_plateau_steps");
            if (cfg.analysis.min_plateau_steps < 0.0) throw ConfigError("analysis.min_plateau_steps", "must be >= 0");
        }
    }

    if (doc.contains("reference") && !doc.at("reference").is_null()) {
        const json& r = require_object(doc, "reference", "");
        reject_unknown(r, "reference", {"omega_rad_per_ns", "note"});
        Reference ref;
        if (r.contains("omega_rad_per_ns")) ref.omega = as_number(r.at("omega_rad_per_ns"), "reference.omega_rad_per_ns");
        if (r.contains("note")) ref.note = r.at("note").get<std::string>();
        cfg.reference = ref;
    }

    if (doc.contains("notes")) {
        const json& n = doc.at("notes");
        if (!n.is_array()) throw ConfigError("notes", "must be an array of strings");
        for (std::size_t k = 0; k < n.size(); ++k) {
            if (!n[k].is_string()) throw ConfigError("notes[" + std::to_string(k) + "]", "must be a string");
            cfg.notes.push_back(n[k].get<std::string>());
        }
    }
    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) throw ConfigError("output_dir", "must be a string");
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }

    if (cfg.circuit) {
        cfg.circuit->drive = cfg.drive;
        try {
            circuit::validate(*cfg.circuit);
        } catch (const InvalidParameter& e) {
            throw ConfigError("circuit", e.what());
        }
    }
    check_scheme(cfg);
    return cfg;
}

std::string apply_overrides(std::string_view json_text, std::span<const std::string> overrides) {
    json doc = parse_document(json_text);
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError(item, "override must look like key=value");
        const std::string path = item.substr(0, eq);
        const std::string raw = item.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::parse_error&) {
            value = raw;
        }
        locate(doc, path, true) = value;
    }
    return doc.dump(2);
}

std::optional<double> scalar_at(std::string_view json_text, std::string_view path) {
    json doc = parse_document(json_text);
    const json& node = locate(doc, path, false);
    if (node.is_null()) return std::nullopt;
    if (!node.is_number()) throw ConfigError(std::string(path), "sweep path must address a numeric scalar");
    return node.get<double>();
}

std::string with_scalar(std::string_view json_text, std::string_view path, double value) {
    json doc = parse_document(json_text);
    json& node = locate(doc, path, false);
    if (!node.is_null() && !node.is_number()) {
        throw ConfigError(std::string(path), "sweep path must address a numeric scalar");
    }
    node = value;
    return doc.dump(2);
}

}  // namespace qmem::scenario
