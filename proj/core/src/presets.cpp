#include <algorithm>
#include <array>
#include <string>
#include <string_view>

#include "qmem/errors.hpp"
#include "qmem/scenario.hpp"

namespace qmem::scenario {

namespace {

struct Preset {
    std::string_view name;
    std::string_view json;
};

// Quoted parameter values are copied verbatim; every other entry is listed in
// "notes" as a chosen default.
constexpr std::array<Preset, 8> kPresets{{
    {"fig2a", R"json({
  "schema_version": 1,
  "name": "fig2a",
  "description": "Identical memristors, capacitive coupling, QM1 |Psi(pi/4,pi/2)>, QM2 |Psi(pi/3,pi/2)>",
  "coupling_scheme": "capacitive",
  "circuit": {"cap_sigma_fF": [3.6, 3.6], "coupling_capacitance_fF": 0.9, "inductance_uH": [6.1, 6.1]},
  "drive": {"flux_offset": "pi/2", "amplitude": "pi", "frequency_rad_per_ns": "auto"},
  "initial_state": {"theta": ["pi/4", "pi/3"], "phi": ["pi/2", "pi/2"]},
  "duration_periods": 20,
  "reference": {"omega_rad_per_ns": 5.03, "note": "quoted frequency, in GHz"},
  "notes": [
    "chosen: drive flux_offset = pi/2 and amplitude = pi (not quoted)",
    "chosen: drive frequency = mode frequency",
    "chosen: 20 drive periods"
  ]
})json"},
    {"fig2b", R"json({
  "schema_version": 1,
  "name": "fig2b",
  "description": "Identical memristors, capacitive coupling, QM1 |Psi(pi/4,pi/2)>, QM2 |Psi(pi/4,0)>",
  "coupling_scheme": "capacitive",
  "circuit": {"cap_sigma_fF": [3.6, 3.6], "coupling_capacitance_fF": 0.9, "inductance_uH": [6.1, 6.1]},
  "drive": {"flux_offset": "pi/2", "amplitude": "pi", "frequency_rad_per_ns": "auto"},
  "initial_state": {"theta": ["pi/4", "pi/4"], "phi": ["pi/2", 0]},
  "duration_periods": 20,
  "reference": {"omega_rad_per_ns": 5.03, "note": "quoted frequency, in GHz"},
  "notes": [
    "chosen: drive flux_offset = pi/2 and amplitude = pi (not quoted)",
    "chosen: drive frequency = mode frequency",
    "chosen: 20 drive periods"
  ]
})json"},
    {"fig3_identical", R"json({
  "schema_version": 1,
  "name": "fig3_identical",
  "description": "Per-period form factor, identical memristors in |Psi(pi/4,pi/2)>",
  "coupling_scheme": "capacitive",
  "circuit": {"cap_sigma_fF": [3.6, 3.6], "coupling_capacitance_fF": 0.9, "inductance_uH": [6.1, 6.1]},
  "drive": {"flux_offset": "pi/2", "amplitude": "pi", "frequency_rad_per_ns": "auto"},
  "initial_state": {"theta": ["pi/4", "pi/4"], "phi": ["pi/2", "pi/2"]},
  "duration_periods": 20,
  "reference": {"omega_rad_per_ns": 5.03, "note": "quoted frequency, in GHz"},
  "notes": [
    "gap: C_c not quoted; chosen 0.9 fF as in fig2a",
    "chosen: drive flux_offset = pi/2 and amplitude = pi",
    "chosen: drive frequency = mode frequency",
    "chosen: 20 drive periods"
  ]
})json"},
    {"fig3_nonidentical", R"json({
  "schema_version": 1,
  "name": "fig3_nonidentical",
  "description": "Per-period form factor, non-identical memristors in |Psi(pi/3,pi/2)>",
  "coupling_scheme": "capacitive",
  "mode": {
    "omega_rad_per_ns": [6, 8],
    "alpha": 0,
    "beta": 0.22677868380553634,
    "cap_sigma_fF": [3.6, 2.6]
  },
  "drive": {"flux_offset": "pi/2", "amplitude": "pi", "frequency_rad_per_ns": "auto"},
  "initial_state": {"theta": ["pi/3", "pi/3"], "phi": ["pi/2", "pi/2"]},
  "duration_periods": 20,
  "notes": [
    "gap: L1 and L2 not quoted; frequencies 6 and 8 entered directly and read as rad/ns",
    "gap: C_c not quoted; beta = 0.9 / sqrt((3.6 + 0.9)(2.6 + 0.9)) assumes C_c = 0.9 fF",
    "chosen: zero-point scales derived from omega and cap_sigma",
    "chosen: drive flux_offset = pi/2 and amplitude = pi",
    "chosen: drive frequency = mode frequency of each memristor",
    "chosen: 20 drive periods of the slower memristor's frequency"
  ]
})json"},
    {"fig4", R"json({
  "schema_version": 1,
  "name": "fig4",
  "description": "Concurrence and form factor, identical memristors in |Psi(pi/4,pi/2)>",
  "coupling_scheme": "capacitive",
  "circuit": {"cap_sigma_fF": [3.6, 3.6], "coupling_capacitance_fF": 0.9, "inductance_uH": [6.1, 6.1]},
  "drive": {"flux_offset": "pi/2", "amplitude": "pi", "frequency_rad_per_ns": "auto"},
  "initial_state": {"theta": ["pi/4", "pi/4"], "phi": ["pi/2", "pi/2"]},
  "duration_periods": 50,
  "reference": {"omega_rad_per_ns": 5.03, "note": "quoted frequency, in GHz"},
  "notes": [
    "gap: values follow fig3_identical; C_c = 0.9 fF chosen",
    "chosen: drive flux_offset = pi/2 and amplitude = pi",
    "chosen: drive frequency = mode frequency",
    "chosen: 50 drive periods"
  ]
})json"},
    {"fig5", R"json({
  "schema_version": 1,
  "name": "fig5",
  "description": "Hysteresis direction over the first oscillations, identical memristors",
  "coupling_scheme": "capacitive",
  "circuit": {"cap_sigma_fF": [3.6, 3.6], "coupling_capacitance_fF": 0.9, "inductance_uH": [6.1, 6.1]},
  "drive": {"flux_offset": "pi/2", "amplitude": "pi", "frequency_rad_per_ns": "auto"},
  "initial_state": {"theta": ["pi/4", "pi/4"], "phi": ["pi/2", "pi/2"]},
  "duration_periods": 10,
  "reference": {"omega_rad_per_ns": 5.03, "note": "quoted frequency, in GHz"},
  "notes": [
    "gap: values follow fig3_identical; C_c = 0.9 fF chosen",
    "chosen: drive flux_offset = pi/2 and amplitude = pi",
    "chosen: drive frequency = mode frequency",
    "chosen: 10 drive periods"
  ]
})json"},
    {"appC_inductive", R"json({
  "schema_version": 1,
  "name": "appC_inductive",
  "description": "Inductively coupled identical memristors in |Psi(pi/4,pi/2)>",
  "coupling_scheme": "inductive",
  "circuit": {
    "cap_sigma_fF": [3.6, 3.6],
    "coupling_capacitance_fF": 0,
    "inductance_uH": [6.1, 6.1],
    "coupling_inductance_uH": 24.4
  },
  "drive": {"flux_offset": "pi/2", "amplitude": "pi", "frequency_rad_per_ns": "auto"},
  "initial_state": {"theta": ["pi/4", "pi/4"], "phi": ["pi/2", "pi/2"]},
  "duration_periods": 20,
  "notes": [
    "gap: no coupling inductance is quoted; chosen L_c = 24.4 uH = 4 L",
    "chosen: drive flux_offset = pi/2 and amplitude = pi",
    "chosen: drive frequency = mode frequency",
    "chosen: 20 drive periods"
  ]
})json"},
    {"appD_both", R"json({
  "schema_version": 1,
  "name": "appD_both",
  "description": "Identical memristors coupled through a capacitor and an inductor at once",
  "coupling_scheme": "both",
  "circuit": {
    "cap_sigma_fF": [3.6, 3.6],
    "coupling_capacitance_fF": 0.9,
    "inductance_uH": [6.1, 6.1],
    "coupling_inductance_uH": 24.4
  },
  "drive": {"flux_offset": "pi/2", "amplitude": "pi", "frequency_rad_per_ns": "auto"},
  "initial_state": {"theta": ["pi/4", "pi/4"], "phi": ["pi/2", "pi/2"]},
  "duration_periods": 30,
  "notes": [
    "gap: no coupling elements are quoted; chosen C_c = 0.9 fF and L_c = 24.4 uH",
    "chosen: drive flux_offset = pi/2 and amplitude = pi",
    "chosen: drive frequency = mode frequency",
    "chosen: 30 drive periods to cover the 29th oscillation"
  ]
})json"},
}};

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : kPresets) names.emplace_back(p.name);
    return names;
}

std::string preset_json(std::string_view name) {
    const auto it = std::find_if(kPresets.begin(), kPresets.end(), [&](const Preset& p) { return p.name == name; });
    if (it == kPresets.end()) throw ConfigError("preset", "unknown preset \"" + std::string(name) + "\"");
    return std::string(it->json);
}

}  // namespace qmem::scenario
