#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"
#include "qmem/errors.hpp"
#include "qmem/scenario.hpp"

namespace qmem::scenario {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

class CsvRow {
public:
    explicit CsvRow(std::ostringstream& os) : os_(os) {}
    ~CsvRow() { os_ << "\r\n"; }
    CsvRow& operator<<(double v) { return field(format_double(v)); }
    CsvRow& operator<<(std::size_t v) { return field(std::to_string(v)); }
    CsvRow& operator<<(const std::string& s) {
        if (s.find_first_of(",\"\r\n") == std::string::npos) return field(s);
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return field(quoted + "\"");
    }
    CsvRow& operator<<(const char* s) { return *this << std::string(s); }

private:
    CsvRow& field(const std::string& s) {
        if (!first_) os_ << ',';
        os_ << s;
        first_ = false;
        return *this;
    }
    std::ostringstream& os_;
    bool first_ = true;
};

std::string timeseries_csv(const RunResult& r) {
    std::ostringstream os;
    CsvRow(os) << "t_ns" << "n1" << "phi1" << "n2" << "phi2" << "V1_V" << "I1_A" << "V2_V" << "I2_A"
               << "Gamma1" << "Gamma2" << "concurrence" << "crosscheck_residual";
    for (std::size_t k = 0; k < r.grid.points(); ++k) {
        const auto& a = r.iv.memristor[0][k];
        const auto& b = r.iv.memristor[1][k];
        CsvRow(os) << r.iv.time[k] << a.n << a.phi << b.n << b.phi << a.voltage << a.current << b.voltage
                   << b.current << a.decay_rate << b.decay_rate << r.concurrence.value[k]
                   << r.crosscheck_residual[k];
    }
    return os.str();
}

std::string loops_csv(const RunResult& r) {
    std::ostringstream os;
    CsvRow(os) << "memristor" << "loop" << "point" << "V_V" << "I_A" << "V_norm" << "I_norm";
    for (std::size_t l = 0; l < 2; ++l) {
        for (std::size_t k = 0; k < r.loops[l].size(); ++k) {
            const auto& loop = r.loops[l][k];
            for (std::size_t p = 0; p < loop.points.size(); ++p) {
                CsvRow(os) << l + 1 << k << p << loop.points[p].x << loop.points[p].y
                           << loop.normalized_points[p].x << loop.normalized_points[p].y;
            }
        }
    }
    return os.str();
}

std::string formfactor_csv(const RunResult& r) {
    std::ostringstream os;
    CsvRow(os) << "memristor" << "period" << "t_start_ns" << "t_end_ns" << "form_factor" << "orientation"
               << "tie_carried" << "concurrence_mean" << "concurrence_max" << "warning";
    for (std::size_t l = 0; l < 2; ++l) {
        for (std::size_t k = 0; k < r.loops[l].size(); ++k) {
            const auto& p = r.periods[l][k];
            CsvRow(os) << l + 1 << k << p.start << p.end << p.form_factor
                       << hysteresis::to_string(r.orientation[l].orientation[k])
                       << std::string(r.orientation[l].carried[k] ? "1" : "0") << p.concurrence_mean
                       << p.concurrence_max << r.loops[l][k].warning.value_or("");
        }
    }
    return os.str();
}

// Non-finite doubles become null, since JSON has no representation for them.
ordered_json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

ordered_json pair(const std::array<double, 2>& v) { return ordered_json::array({num(v[0]), num(v[1])}); }

ordered_json physicality_json(const linalg::PhysicalityReport& p) {
    return {{"max_trace_error", num(p.trace_error)},
            {"max_hermiticity_error", num(p.hermiticity_error)},
            {"min_eigenvalue", num(p.min_eigenvalue)},
            {"ok", p.ok()}};
}

std::string summary_json(const RunResult& r) {
    const auto& m = r.system.mode;
    ordered_json s;
    s["schema_version"] = kSchemaVersion;
    s["name"] = r.config.name;
    s["coupling_scheme"] = to_string(r.config.scheme);
    s["entry"] = r.config.circuit ? "circuit" : "mode";

    ordered_json mode;
    mode["omega_rad_per_ns"] = pair(m.omega);
    mode["zero_point"] = pair(m.zero_point);
    mode["alpha"] = num(m.alpha);
    mode["beta"] = num(m.beta);
    mode["exchange_coupling_rad_per_ns"] = num(m.exchange_coupling);
    if (r.system.energy) {
        const auto mat = [](const circuit::Matrix2& a) {
            return ordered_json::array({pair(a[0]), pair(a[1])});
        };
        mode["charge_energy_matrix_rad_per_ns"] = mat(r.system.energy->charge);
        mode["inductive_energy_matrix_rad_per_ns"] = mat(r.system.energy->inductive);
    }
    s["mode"] = mode;

    ordered_json drive;
    drive["flux_offset"] = pair(r.system.drive.flux_offset);
    drive["amplitude"] = pair(r.system.drive.amplitude);
    drive["frequency_rad_per_ns"] = pair(r.system.drive.frequency);
    s["drive"] = drive;

    s["grid"] = {{"dt_ns", num(r.grid.dt)}, {"steps", r.grid.steps}, {"duration_ns", num(r.grid.duration())}};

    ordered_json freq;
    freq["printed_effective_rad_per_ns"] = num(r.frequencies.printed_effective);
    freq["symmetric_mode_rad_per_ns"] = num(r.frequencies.symmetric_mode);
    freq["fitted_rad_per_ns"] = pair(r.frequencies.fitted);
    freq["fitted_minus_printed"] = pair({r.frequencies.fitted[0] - r.frequencies.printed_effective,
                                         r.frequencies.fitted[1] - r.frequencies.printed_effective});
    s["frequencies"] = freq;

    if (r.config.reference) {
        ordered_json ref;
        ref["note"] = r.config.reference->note;
        if (r.config.reference->omega) {
            const double quoted = *r.config.reference->omega;
            ref["quoted_omega"] = num(quoted);
            ref["computed_omega_rad_per_ns"] = pair(m.omega);
            ref["relative_discrepancy"] = pair({(m.omega[0] - quoted) / quoted, (m.omega[1] - quoted) / quoted});
        }
        s["reference"] = ref;
    }

    s["crosscheck"] = {{"max_relative_residual", num(r.crosscheck_max)},
                       {"tolerance", num(r.config.analysis.crosscheck_tolerance)},
                       {"passed", r.crosscheck_max < r.config.analysis.crosscheck_tolerance},
                       {"two_level_relative_deviation", num(r.two_level_deviation)}};
    s["physicality"] = {{"two_level", physicality_json(r.two_level_physicality)},
                        {"three_level", physicality_json(r.exact_physicality)}};

    double peak = 0.0;
    for (double c : r.concurrence.value) peak = std::max(peak, c);
    ordered_json ent;
    ent["peak_concurrence"] = num(peak);
    ent["threshold"] = num(r.config.analysis.esd_epsilon);
    ent["esd_pairs"] = entanglement::esd_pair_count(r.esd);
    ordered_json events = ordered_json::array();
    for (const auto& e : r.esd) {
        events.push_back({{"kind", e.kind == entanglement::EsdKind::Death ? "death" : "birth"},
                          {"t_ns", num(e.time)},
                          {"plateau_start_ns", num(e.plateau_start)},
                          {"plateau_end_ns", num(e.plateau_end)},
                          {"paired", e.paired}});
    }
    ent["events"] = events;
    ordered_json maxima = ordered_json::array();
    for (double t : r.concurrence_maxima) maxima.push_back(num(t));
    ent["local_maxima_t_ns"] = maxima;
    s["entanglement"] = ent;

    ordered_json mems = ordered_json::array();
    for (std::size_t l = 0; l < 2; ++l) {
        ordered_json mj;
        mj["memristor"] = l + 1;
        ordered_json periods = ordered_json::array();
        for (std::size_t k = 0; k < r.periods[l].size(); ++k) {
            const auto& p = r.periods[l][k];
            ordered_json pj = {{"index", p.index},
                               {"t_start_ns", num(p.start)},
                               {"t_end_ns", num(p.end)},
                               {"form_factor", num(p.form_factor)},
                               {"orientation", hysteresis::to_string(r.orientation[l].orientation[k])},
                               {"tie_carried", static_cast<bool>(r.orientation[l].carried[k])},
                               {"concurrence_mean", num(p.concurrence_mean)},
                               {"concurrence_max", num(p.concurrence_max)}};
            if (r.loops[l][k].warning) pj["warning"] = *r.loops[l][k].warning;
            periods.push_back(pj);
        }
        mj["periods"] = periods;
        ordered_json revs = ordered_json::array();
        for (const auto& rv : r.orientation[l].reversals) {
            revs.push_back({{"loop_index", rv.loop_index},
                            {"t_ns", num(rv.time)},
                            {"from", hysteresis::to_string(rv.from)},
                            {"to", hysteresis::to_string(rv.to)}});
        }
        mj["reversals"] = revs;
        mems.push_back(mj);
    }
    s["memristors"] = mems;

    ordered_json notes = ordered_json::array();
    for (const auto& n : r.config.notes) notes.push_back(n);
    s["notes"] = notes;
    return s.dump(2) + "\n";
}

}  // namespace

void write_bundle(const RunResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
    write_file(dir / "timeseries.csv", timeseries_csv(result));
    write_file(dir / "loops.csv", loops_csv(result));
    write_file(dir / "formfactor.csv", formfactor_csv(result));
    write_file(dir / "summary.json", summary_json(result));
}

std::string sweep_csv(std::span<const SweepRow> rows, std::string_view path) {
    std::ostringstream os;
    CsvRow(os) << std::string(path) << "exchange_coupling" << "peak_concurrence" << "ff_mean_1" << "ff_min_1"
               << "ff_max_1" << "ff_mean_2" << "ff_min_2" << "ff_max_2" << "esd_pairs" << "reversals_1"
               << "reversals_2" << "crosscheck_max";
    for (const auto& r : rows) {
        CsvRow(os) << r.value << r.exchange_coupling << r.peak_concurrence << r.form_factor_mean[0]
                   << r.form_factor_min[0] << r.form_factor_max[0] << r.form_factor_mean[1] << r.form_factor_min[1]
                   << r.form_factor_max[1] << r.esd_pairs << r.reversals[0] << r.reversals[1] << r.crosscheck_max;
    }
    return os.str();
}

}  // namespace qmem::scenario
