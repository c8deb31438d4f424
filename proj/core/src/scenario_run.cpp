#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "qmem/errors.hpp"
#include "qmem/scenario.hpp"

namespace qmem::scenario {

namespace {

struct SeriesScale {
    double number = 0.0;
    double phase = 0.0;
};

SeriesScale sup_norms(const meanfield::MeanFieldSeries& mf) {
    SeriesScale s;
    for (const auto& st : mf.states) {
        for (int l = 0; l < 2; ++l) {
            s.number = std::max(s.number, std::abs(st.n[l]));
            s.phase = std::max(s.phase, std::abs(st.phi[l]));
        }
    }
    return s;
}

// Pointwise deviation of each quadrature, divided by the sup-norm of the first-moment series.
std::vector<double> relative_residual(const std::vector<lindblad::Observables>& obs,
                                      const meanfield::MeanFieldSeries& mf) {
    const SeriesScale scale = sup_norms(mf);
    const double sn = scale.number > 0.0 ? scale.number : 1.0;
    const double sp = scale.phase > 0.0 ? scale.phase : 1.0;
    std::vector<double> out(obs.size());
    for (std::size_t k = 0; k < obs.size(); ++k) {
        double r = 0.0;
        for (int l = 0; l < 2; ++l) {
            r = std::max(r, std::abs(obs[k].number[l] - mf.states[k].n[l]) / sn);
            r = std::max(r, std::abs(obs[k].phase[l] - mf.states[k].phi[l]) / sp);
        }
        out[k] = r;
    }
    return out;
}

std::vector<double> column(const std::vector<meanfield::IVPoint>& pts, double meanfield::IVPoint::*field) {
    std::vector<double> out(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) out[k] = pts[k].*field;
    return out;
}

std::vector<PeriodSummary> summarize_periods(const std::vector<hysteresis::Loop>& loops,
                                             const entanglement::ConcurrenceTrace& c) {
    std::vector<PeriodSummary> out;
    for (std::size_t k = 0; k < loops.size(); ++k) {
        PeriodSummary p;
        p.index = k;
        p.start = loops[k].start_time;
        p.end = loops[k].end_time;
        p.form_factor = loops[k].form_factor;
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t j = 0; j < c.time.size(); ++j) {
            if (c.time[j] < p.start || c.time[j] >= p.end) continue;
            sum += c.value[j];
            p.concurrence_max = std::max(p.concurrence_max, c.value[j]);
            ++count;
        }
        p.concurrence_mean = count ? sum / static_cast<double>(count) : 0.0;
        out.push_back(p);
    }
    return out;
}

}  // namespace

ResolvedSystem resolve(const ScenarioConfig& config) {
    ResolvedSystem rs;
    try {
        if (config.circuit) {
            rs.energy = circuit::inverse_energy_matrices(*config.circuit);
            rs.mode = circuit::mode_params(*rs.energy);
            rs.cap_sigma = config.circuit->cap_sigma;
        } else if (config.direct) {
            const auto& d = *config.direct;
            std::array<double, 2> g{};
            if (d.zero_point) {
                g = *d.zero_point;
            } else {
                for (int l = 0; l < 2; ++l) g[l] = circuit::zero_point_from_frequency(d.omega[l], d.cap_sigma[l]);
            }
            rs.mode = circuit::mode_params_direct(d.omega, d.alpha, d.beta, g);
            rs.cap_sigma = d.cap_sigma;
        } else {
            throw ConfigError("circuit", "exactly one of 'circuit' or 'mode' must be given");
        }
    } catch (const InvalidParameter& e) {
        throw ConfigError(config.circuit ? "circuit" : "mode", e.what());
    } catch (const SingularMatrix& e) {
        throw ConfigError(config.circuit ? "circuit" : "mode", e.what());
    }
    rs.drive = lindblad::resolve_drive(config.drive, rs.mode);
    return rs;
}

RunResult run(const ScenarioConfig& config) {
    RunResult r;
    r.config = config;
    r.system = resolve(config);
    const auto& mode = r.system.mode;

    const double slowest = std::min(r.system.drive.frequency[0], r.system.drive.frequency[1]);
    const double duration = config.duration_periods * 2.0 * kPi / slowest;
    r.grid = lindblad::make_grid(duration, config.step_ns.value_or(lindblad::default_step(mode)));

    const auto two = lindblad::make_system(mode, r.system.drive, 2);
    const auto three = lindblad::make_system(mode, r.system.drive, 3);

    const auto m0 = meanfield::initial_moments(config.theta, config.phase, mode.zero_point);
    r.meanfield = meanfield::integrate_meanfield(m0, r.grid, two);
    r.iv = meanfield::iv_signals(r.meanfield, r.system.cap_sigma);

    // Truncating each mode at two excitations keeps the quadrature equations exact, since the
    // product initial state holds at most two quanta and the dynamics never adds any.
    // Only the moments of this run are used, so RK4 positivity drift is recorded, not fatal.
    const auto& th = config.theta;
    const auto& ph = config.phase;
    lindblad::IntegrateOptions moment_opts;
    moment_opts.enforce_positivity = false;
    const auto exact =
        lindblad::integrate(linalg::product_state(th[0], ph[0], th[1], ph[1], 3), r.grid, three, moment_opts);
    r.exact_moments = exact.observables;
    r.exact_physicality = exact.worst;
    r.crosscheck_residual = relative_residual(r.exact_moments, r.meanfield);
    for (double v : r.crosscheck_residual) r.crosscheck_max = std::max(r.crosscheck_max, v);

    lindblad::IntegrateOptions opts;
    r.concurrence.time.reserve(r.grid.points());
    r.concurrence.value.reserve(r.grid.points());
    opts.observer = [&](std::size_t, double t, const linalg::ComplexMatrix& rho) {
        r.concurrence.time.push_back(t);
        r.concurrence.value.push_back(entanglement::concurrence(rho));
    };
    const auto qubit = lindblad::integrate(linalg::product_state(th[0], ph[0], th[1], ph[1], 2), r.grid, two, opts);
    r.two_level_moments = qubit.observables;
    r.two_level_physicality = qubit.worst;
    for (double v : relative_residual(r.two_level_moments, r.meanfield)) {
        r.two_level_deviation = std::max(r.two_level_deviation, v);
    }

    entanglement::EsdOptions esd;
    esd.threshold = config.analysis.esd_epsilon;
    esd.min_plateau = config.analysis.min_plateau_steps * r.grid.dt;
    r.esd = entanglement::esd_events(r.concurrence, esd);
    r.concurrence_maxima = entanglement::local_maxima(r.concurrence, config.analysis.esd_epsilon);

    hysteresis::SegmentOptions seg;
    seg.pinch_epsilon = config.analysis.pinch_epsilon;
    for (int l = 0; l < 2; ++l) {
        const auto v = column(r.iv.memristor[l], &meanfield::IVPoint::voltage);
        const auto i = column(r.iv.memristor[l], &meanfield::IVPoint::current);
        try {
            r.loops[l] = hysteresis::segment_loops(r.iv.time, v, i, seg);
        } catch (const InvalidParameter&) {
            r.loops[l].clear();  // flat trace: nothing to segment
        }
        r.orientation[l] = hysteresis::orientation_series(r.loops[l]);
        r.periods[l] = summarize_periods(r.loops[l], r.concurrence);
    }

    r.frequencies.printed_effective = mode.effective_frequency;
    r.frequencies.symmetric_mode = meanfield::symmetric_mode_frequency(two);
    for (int l = 0; l < 2; ++l) r.frequencies.fitted[l] = meanfield::fit_frequency(r.meanfield, l, two);
    return r;
}

void enforce_crosscheck(const RunResult& result) {
    if (!(result.crosscheck_max < result.config.analysis.crosscheck_tolerance)) {
        throw CrossCheckFailed("cross-check residual " + format_double(result.crosscheck_max) +
                               " exceeds tolerance " + format_double(result.config.analysis.crosscheck_tolerance));
    }
}

std::vector<SweepRow> sweep(std::string_view json_text, std::string_view path, std::span<const double> values,
                            std::size_t threads) {
    (void)scalar_at(json_text, path);  // throws for an object or array path
    std::vector<std::string> documents;
    documents.reserve(values.size());
    for (double v : values) documents.push_back(with_scalar(json_text, path, v));
    // Validate up front so configuration errors surface before any worker starts.
    std::vector<ScenarioConfig> configs;
    configs.reserve(values.size());
    for (const auto& d : documents) configs.push_back(parse_config(d));

    std::vector<SweepRow> rows(values.size());
    std::vector<std::exception_ptr> errors(values.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < configs.size(); k = next++) {
            try {
                const RunResult r = run(configs[k]);
                SweepRow& row = rows[k];
                row.value = values[k];
                row.exchange_coupling = r.system.mode.exchange_coupling;
                for (double c : r.concurrence.value) row.peak_concurrence = std::max(row.peak_concurrence, c);
                for (int l = 0; l < 2; ++l) {
                    const auto& loops = r.loops[l];
                    if (loops.empty()) continue;
                    double sum = 0.0;
                    double lo = loops.front().form_factor;
                    double hi = lo;
                    for (const auto& loop : loops) {
                        sum += loop.form_factor;
                        lo = std::min(lo, loop.form_factor);
                        hi = std::max(hi, loop.form_factor);
                    }
                    row.form_factor_mean[l] = sum / static_cast<double>(loops.size());
                    row.form_factor_min[l] = lo;
                    row.form_factor_max[l] = hi;
                    row.reversals[l] = r.orientation[l].reversals.size();
                }
                row.esd_pairs = entanglement::esd_pair_count(r.esd);
                row.crosscheck_max = r.crosscheck_max;
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };

    const std::size_t n = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(1, configs.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

}  // namespace qmem::scenario
