#pragma once

// Configuration-driven scenario runner: builds the system from a JSON
// document, runs the density-matrix and first-moment integrations, and
// analyses loops and entanglement.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmem/circuit_model.hpp"
#include "qmem/entanglement.hpp"
#include "qmem/hysteresis.hpp"
#include "qmem/lindblad.hpp"
#include "qmem/meanfield.hpp"

namespace qmem::scenario {

inline constexpr int kSchemaVersion = 1;

enum class CouplingScheme { Capacitive, Inductive, Both };

std::string to_string(CouplingScheme s);

/// Mode parameters given directly instead of through the SI circuit.
struct DirectModeEntry {
    std::array<double, 2> omega{};                    // rad/ns
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<std::array<double, 2>> zero_point;  // derived from omega and cap_sigma if absent
    std::array<double, 2> cap_sigma{};                // F, for the voltage/current mapping
};

struct AnalysisOptions {
    double pinch_epsilon = 0.05;
    double esd_epsilon = 1e-4;
    double min_plateau_steps = 10.0;
    double crosscheck_tolerance = 1e-6;
};

struct Reference {
    std::optional<double> omega;  // rad/ns, as quoted for the parameter set
    std::string note;
};

struct ScenarioConfig {
    std::string name;
    std::optional<circuit::CircuitParams> circuit;  // exactly one of circuit / direct
    std::optional<DirectModeEntry> direct;
    std::array<circuit::DriveParams, 2> drive{};
    CouplingScheme scheme = CouplingScheme::Capacitive;
    std::array<double, 2> theta{};
    std::array<double, 2> phase{};
    double duration_periods = 1.0;
    std::optional<double> step_ns;
    AnalysisOptions analysis;
    std::optional<Reference> reference;
    std::vector<std::string> notes;
    std::string output_dir = "out";
};

/// Parses and validates a schema_version 1 document; throws ConfigError naming the field.
ScenarioConfig parse_config(std::string_view json_text);

/// Applies `dot.path=value` overrides (value parsed as JSON, else taken as a string).
std::string apply_overrides(std::string_view json_text, std::span<const std::string> overrides);

/// Reads a scalar (number or null) at a dot path; throws ConfigError for a non-scalar path.
std::optional<double> scalar_at(std::string_view json_text, std::string_view path);
std::string with_scalar(std::string_view json_text, std::string_view path, double value);

std::vector<std::string> preset_names();
/// Throws ConfigError for an unknown name.
std::string preset_json(std::string_view name);

/// Mode parameters and voltage-mapping capacitances for a config.
struct ResolvedSystem {
    circuit::ModeParams mode;
    std::optional<circuit::EnergyMatrices> energy;  // SI entry only
    std::array<double, 2> cap_sigma{};
    lindblad::DriveSignal drive;
};
ResolvedSystem resolve(const ScenarioConfig& config);

struct PeriodSummary {
    std::size_t index = 0;
    double start = 0.0;
    double end = 0.0;
    double form_factor = 0.0;
    double concurrence_mean = 0.0;
    double concurrence_max = 0.0;
};

struct FrequencyReport {
    double printed_effective = 0.0;    // sqrt(w1 w2) sqrt((1-alpha)(1-beta))
    double symmetric_mode = 0.0;       // w1 - J
    std::array<double, 2> fitted{};    // phase fit of <a_l> on the first-moment solution
};

struct RunResult {
    ScenarioConfig config;
    ResolvedSystem system;
    lindblad::TimeGrid grid;
    meanfield::MeanFieldSeries meanfield;
    meanfield::IVTrace iv;
    std::vector<lindblad::Observables> exact_moments;  // three-level Lindblad
    std::vector<lindblad::Observables> two_level_moments;
    std::vector<double> crosscheck_residual;
    double crosscheck_max = 0.0;
    double two_level_deviation = 0.0;  // informational: relative sup-norm, two-level vs first moments
    entanglement::ConcurrenceTrace concurrence;
    std::vector<entanglement::EsdEvent> esd;
    std::vector<double> concurrence_maxima;
    std::array<std::vector<hysteresis::Loop>, 2> loops;
    std::array<hysteresis::OrientationSeries, 2> orientation;
    std::array<std::vector<PeriodSummary>, 2> periods;
    linalg::PhysicalityReport two_level_physicality;
    linalg::PhysicalityReport exact_physicality;
    FrequencyReport frequencies;
};

/// Thrown after a run whose cross-check residual exceeds the tolerance.
class CrossCheckFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runs all integrations and analyses in memory. Throws ConfigError / IntegrationDiverged.
RunResult run(const ScenarioConfig& config);

/// Writes timeseries.csv, loops.csv, formfactor.csv and summary.json into `dir`.
void write_bundle(const RunResult& result, const std::filesystem::path& dir);

/// Throws CrossCheckFailed when crosscheck_max >= tolerance.
void enforce_crosscheck(const RunResult& result);

struct SweepRow {
    double value = 0.0;
    double exchange_coupling = 0.0;
    double peak_concurrence = 0.0;
    std::array<double, 2> form_factor_mean{};
    std::array<double, 2> form_factor_min{};
    std::array<double, 2> form_factor_max{};
    std::size_t esd_pairs = 0;
    std::array<std::size_t, 2> reversals{};
    double crosscheck_max = 0.0;
};

/// One independent run per value, distributed over `threads` workers; rows follow `values`.
std::vector<SweepRow> sweep(std::string_view json_text, std::string_view path,
                            std::span<const double> values, std::size_t threads = 1);

std::string sweep_csv(std::span<const SweepRow> rows, std::string_view path);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace qmem::scenario
