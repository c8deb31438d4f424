// qmem: run, sweep and inspect coupled quantum-memristor scenarios.
//
// Exit status: 0 success, 1 I/O or usage failure, 2 configuration error,
// 3 integration diverged, 4 Lindblad / first-moment cross-check failed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmem/errors.hpp"
#include "qmem/scenario.hpp"

namespace {

namespace sc = qmem::scenario;

enum Exit : int { kOk = 0, kFailure = 1, kConfig = 2, kDiverged = 3, kCrossCheck = 4 };

struct Source {
    std::string config_path;
    std::string preset;
    std::vector<std::string> overrides;
};

void add_source_options(CLI::App* cmd, Source& src) {
    auto* cfg = cmd->add_option("--config", src.config_path, "Scenario JSON file");
    auto* pre = cmd->add_option("--preset", src.preset, "Built-in scenario name (see `qmem presets`)");
    cfg->excludes(pre);
    cmd->add_option("--override", src.overrides, "dot.path=value applied to the document (repeatable)");
}

std::string load_document(const Source& src) {
    std::string text;
    if (!src.preset.empty()) {
        text = sc::preset_json(src.preset);
    } else if (!src.config_path.empty()) {
        std::ifstream in(src.config_path, std::ios::binary);
        if (!in) throw qmem::ConfigError("--config", "cannot read " + src.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        throw qmem::ConfigError("--config", "one of --config or --preset is required");
    }
    if (!src.overrides.empty()) text = sc::apply_overrides(text, src.overrides);
    return text;
}

std::size_t default_threads() {
    if (const char* env = std::getenv("QMEM_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid QMEM_THREADS=" << env << "\n";
    }
    return 1;
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw qmem::ConfigError("--values", "not a number: \"" + item + "\"");
        }
    }
    if (out.empty()) throw qmem::ConfigError("--values", "at least one value is required");
    return out;
}

void print_run(const sc::RunResult& r, const std::string& out) {
    const auto& m = r.system.mode;
    double peak = 0.0;
    for (double c : r.concurrence.value) peak = std::max(peak, c);
    std::cout << "scenario        " << (r.config.name.empty() ? "(unnamed)" : r.config.name) << "\n"
              << "omega [rad/ns]  " << sc::format_double(m.omega[0]) << ", " << sc::format_double(m.omega[1]) << "\n"
              << "alpha, beta     " << sc::format_double(m.alpha) << ", " << sc::format_double(m.beta) << "\n"
              << "steps           " << r.grid.steps << " (dt " << sc::format_double(r.grid.dt) << " ns)\n"
              << "loops           " << r.loops[0].size() << ", " << r.loops[1].size() << "\n"
              << "reversals       " << r.orientation[0].reversals.size() << ", "
              << r.orientation[1].reversals.size() << "\n"
              << "peak C          " << sc::format_double(peak) << "\n"
              << "ESD pairs       " << qmem::entanglement::esd_pair_count(r.esd) << "\n"
              << "cross-check     " << sc::format_double(r.crosscheck_max) << "\n"
              << "output          " << out << "\n";
}

int run_command(const Source& src, std::string out) {
    const auto config = sc::parse_config(load_document(src));
    if (out.empty()) out = config.output_dir;
    const auto result = sc::run(config);
    sc::write_bundle(result, out);
    print_run(result, out);
    sc::enforce_crosscheck(result);
    return kOk;
}

int sweep_command(const Source& src, const std::string& param, const std::string& values, std::size_t threads,
                  const std::string& out) {
    const std::string text = load_document(src);
    const auto rows = sc::sweep(text, param, parse_values(values), threads);
    const std::string csv = sc::sweep_csv(rows, param);
    if (out.empty()) {
        std::cout << csv;
    } else {
        std::filesystem::create_directories(out);
        std::ofstream f(std::filesystem::path(out) / "sweep.csv", std::ios::binary | std::ios::trunc);
        f << csv;
        if (!f) throw std::runtime_error("failed writing " + out + "/sweep.csv");
        std::cout << "wrote " << rows.size() << " rows to " << out << "/sweep.csv\n";
    }
    const double tol = sc::parse_config(text).analysis.crosscheck_tolerance;
    for (const auto& row : rows) {
        if (!(row.crosscheck_max < tol)) {
            throw sc::CrossCheckFailed("cross-check residual " + sc::format_double(row.crosscheck_max) +
                                       " at " + param + " = " + sc::format_double(row.value));
        }
    }
    return kOk;
}

int validate_command(const Source& src) {
    const auto config = sc::parse_config(load_document(src));
    const auto sys = sc::resolve(config);
    std::cout << "ok: " << (config.name.empty() ? "(unnamed)" : config.name) << " [" << sc::to_string(config.scheme)
              << "] omega = " << sc::format_double(sys.mode.omega[0]) << ", "
              << sc::format_double(sys.mode.omega[1]) << " rad/ns, J = "
              << sc::format_double(sys.mode.exchange_coupling) << " rad/ns\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled superconducting quantum memristor simulator"};
    app.require_subcommand(1);

    Source run_src;
    std::string run_out;
    auto* run = app.add_subcommand("run", "Run one scenario and write its output bundle");
    add_source_options(run, run_src);
    run->add_option("--out", run_out, "Output directory (default: the config's output_dir)");

    Source sweep_src;
    std::string sweep_param;
    std::string sweep_values;
    std::string sweep_out;
    std::size_t threads = default_threads();
    auto* sweep = app.add_subcommand("sweep", "Run one scenario per value of a scalar parameter");
    add_source_options(sweep, sweep_src);
    sweep->add_option("--param", sweep_param, "Dot path of a numeric config field")->required();
    sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
    sweep->add_option("--threads", threads, "Worker threads (default: QMEM_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_out, "Directory for sweep.csv (default: stdout)");

    std::string show;
    auto* presets = app.add_subcommand("presets", "List built-in scenarios");
    presets->add_option("--show", show, "Print the JSON document of one preset");

    Source validate_src;
    auto* validate = app.add_subcommand("validate", "Check a scenario document without running it");
    add_source_options(validate, validate_src);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kFailure;
    }

    try {
        if (*run) return run_command(run_src, run_out);
        if (*sweep) return sweep_command(sweep_src, sweep_param, sweep_values, threads, sweep_out);
        if (*validate) return validate_command(validate_src);
        if (*presets) {
            if (!show.empty()) {
                std::cout << sc::preset_json(show) << "\n";
            } else {
                for (const auto& name : sc::preset_names()) std::cout << name << "\n";
            }
            return kOk;
        }
    } catch (const qmem::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const qmem::IntegrationDiverged& e) {
        std::cerr << "integration diverged: " << e.what() << "\n";
        return kDiverged;
    } catch (const sc::CrossCheckFailed& e) {
        std::cerr << "cross-check failed: " << e.what() << "\n";
        return kCrossCheck;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
