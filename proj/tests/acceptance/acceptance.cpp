// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero if any
// pass/fail criterion fails; criterion 10 is informational.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qmem/entanglement.hpp"
#include "qmem/hysteresis.hpp"
#include "qmem/lindblad.hpp"
#include "qmem/meanfield.hpp"
#include "qmem/scenario.hpp"

namespace {

using namespace qmem;
using linalg::Complex;
using linalg::ComplexMatrix;
namespace sc = qmem::scenario;

// Tolerances and limits.
constexpr double kTraceTol = 1e-9;
constexpr double kHermTol = 1e-10;
constexpr double kMinEigTol = -1e-8;
constexpr double kPhysicalitySeconds = 10.0;
constexpr double kOracleTol = 1e-6;
constexpr double kOracleSeconds = 60.0;
constexpr int kOracleStates = 10;
constexpr double kDecayTol = 1e-8;
constexpr double kRatioLo = 14.0;
constexpr double kRatioHi = 18.0;
constexpr double kBellTol = 1e-10;
constexpr double kProductTol = 1e-10;
constexpr double kWernerTol = 1e-9;
constexpr double kUnitaryTol = 1e-8;
constexpr double kDecouplingTol = 1e-8;
constexpr double kCircleTol = 1e-4;
constexpr double kScaleTol = 1e-9;
constexpr double kEllipseTol = 1e-4;
constexpr double kCvLimit = 0.05;
constexpr double kRatioLimit = 1.5;
constexpr std::size_t kMinPeriods = 10;

std::mt19937_64 gen(7);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body, bool informational = false) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const char* tag = informational ? "INFO" : (o.pass ? "PASS" : "FAIL");
    if (!informational && !o.pass) ++failures;
    std::printf("criterion %2d: %s  %s | %s\n", id, tag, title, o.detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) { return sc::format_double(v); }

std::string with(const std::string& text, std::vector<std::string> items) { return sc::apply_overrides(text, items); }

sc::RunResult run_preset(const std::string& name, std::vector<std::string> overrides = {}) {
    return sc::run(sc::parse_config(with(sc::preset_json(name), std::move(overrides))));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexMatrix ket(const std::vector<Complex>& psi) {
    ComplexMatrix p(psi.size(), psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j) p(i, j) = psi[i] * std::conj(psi[j]);
    return p;
}

ComplexMatrix random_unitary(std::size_t n) {
    std::normal_distribution<double> g;
    ComplexMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q(i, j) = Complex(g(gen), g(gen));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= std::sqrt(norm);
    }
    return q;
}

ComplexMatrix random_state(std::size_t n, std::size_t rank) {
    ComplexMatrix rho(n, n);
    double total = 0.0;
    for (std::size_t r = 0; r < rank; ++r) {
        const auto u = random_unitary(n);
        const double w = uniform(0.1, 1.0);
        total += w;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rho(i, j) += w * u(i, 0) * std::conj(u(j, 0));
    }
    rho *= 1.0 / total;
    return rho;
}

std::vector<hysteresis::Point> ellipse(double a, double b, std::size_t n) {
    std::vector<hysteresis::Point> pts;
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = 2.0 * kPi * static_cast<double>(k % n) / static_cast<double>(n);
        pts.push_back({a * std::cos(t), b * std::sin(t)});
    }
    return pts;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
        syy += (y[k] - my) * (y[k] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> form_factors(const sc::RunResult& r, int l) {
    std::vector<double> out;
    for (const auto& p : r.periods[l]) out.push_back(p.form_factor);
    return out;
}

Outcome physicality() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_preset("fig4");
    const double elapsed = seconds_since(t0);
    const auto& p = r.two_level_physicality;
    const bool ok = r.config.duration_periods >= 50 && p.trace_error < kTraceTol && p.hermiticity_error < kHermTol &&
                    p.min_eigenvalue > kMinEigTol && elapsed < kPhysicalitySeconds;
    std::ostringstream os;
    os << r.grid.steps << " steps over " << r.config.duration_periods << " periods: max|Tr-1| = " << fmt(p.trace_error)
       << ", max herm = " << fmt(p.hermiticity_error) << ", min eig = " << fmt(p.min_eigenvalue) << ", "
       << fmt(std::round(elapsed * 100) / 100) << " s";
    return {ok, os.str()};
}

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int runs = 0;
    for (const char* preset : {"fig3_identical", "appC_inductive", "appD_both"}) {
        for (int k = 0; k < kOracleStates; ++k) {
            std::vector<std::string> ov;
            ov.push_back("initial_state.theta=[" + fmt(uniform(0.05, kPi - 0.05)) + "," + fmt(uniform(0.05, kPi - 0.05)) + "]");
            ov.push_back("initial_state.phi=[" + fmt(uniform(0, 2 * kPi)) + "," + fmt(uniform(0, 2 * kPi)) + "]");
            const auto r = run_preset(preset, ov);
            worst = std::max(worst, r.crosscheck_max);
            ++runs;
        }
    }
    const double elapsed = seconds_since(t0);
    std::ostringstream os;
    os << runs << " runs (capacitive, inductive, both): max relative sup-norm = " << fmt(worst) << ", "
       << fmt(std::round(elapsed * 100) / 100) << " s";
    return {worst < kOracleTol && elapsed < kOracleSeconds, os.str()};
}

Outcome closed_form_decay() {
    lindblad::DriveSignal d;
    d.amplitude = {0.0, 0.0};
    d.frequency = {6.0, 6.0};
    const auto sys = lindblad::make_system(circuit::mode_params_direct({6.0, 6.0}, 0.0, 0.0, {0.2, 0.2}), d);
    const double gamma = 0.8;
    lindblad::IntegrateOptions opts;
    opts.rates = [gamma](double) { return std::array<double, 2>{gamma, 0.0}; };
    opts.keep_states = true;
    const auto grid = lindblad::make_grid(5.0 / gamma, 1e-3 / gamma);
    const auto traj = lindblad::integrate(linalg::product_state(kPi, 0.0, 0.0, 0.0), grid, sys, opts);
    double decay_err = 0.0;
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const double pop = linalg::expectation(traj.states[k], sys.operators.occupation[0]);
        decay_err = std::max(decay_err, std::abs(pop - std::exp(-gamma * grid.time(k))));
    }

    // Order check on a coupled, flux-driven system against a dt/16 reference.
    const auto m = circuit::mode_params_direct({6.0, 7.0}, -0.1, 0.2, {0.3, 0.35});
    std::array<circuit::DriveParams, 2> dp{};
    dp[0].flux_offset = dp[1].flux_offset = 0.4;
    const auto driven = lindblad::make_system(m, lindblad::resolve_drive(dp, m));
    const auto rho0 = linalg::product_state(kPi / 3, kPi / 2, kPi / 4, 1.0);
    const std::size_t coarse = 100;
    const double duration = 2.0;
    const auto obs = [&](std::size_t steps) {
        return lindblad::integrate(rho0, lindblad::TimeGrid{duration / steps, steps}, driven).observables;
    };
    const auto ref = obs(coarse * 16);
    const auto err = [&](std::size_t steps) {
        const auto o = obs(steps);
        const std::size_t stride = coarse * 16 / steps;
        double e = 0.0;
        for (std::size_t k = 0; k < o.size(); ++k)
            for (int l = 0; l < 2; ++l) {
                e = std::max(e, std::abs(o[k].number[l] - ref[k * stride].number[l]));
                e = std::max(e, std::abs(o[k].phase[l] - ref[k * stride].phase[l]));
            }
        return e;
    };
    const double ratio = err(coarse) / err(coarse * 2);
    std::ostringstream os;
    os << "max |p - exp(-Gamma t)| = " << fmt(decay_err) << ", halving-step error ratio = " << fmt(ratio);
    return {decay_err < kDecayTol && ratio >= kRatioLo && ratio <= kRatioHi, os.str()};
}

Outcome concurrence_oracle() {
    const double s = 1.0 / std::sqrt(2.0);
    const auto bell = ket({s, 0.0, 0.0, s});
    const double bell_err = std::abs(entanglement::concurrence(bell) - 1.0);

    double product_max = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto rho = linalg::tensor_product(random_state(2, 1 + k % 2), random_state(2, 1 + (k / 2) % 2));
        product_max = std::max(product_max, entanglement::concurrence(rho));
    }

    double werner_err = 0.0;
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        ComplexMatrix w = bell;
        w *= p;
        ComplexMatrix mixed = ComplexMatrix::identity(4);
        mixed *= (1.0 - p) / 4.0;
        werner_err = std::max(werner_err, std::abs(entanglement::concurrence(w + mixed) - std::max(0.0, (3 * p - 1) / 2)));
    }

    double unitary_err = 0.0;
    for (int k = 0; k < 50; ++k) {
        const auto rho = random_state(4, 1 + k % 4);
        const auto u = linalg::tensor_product(random_unitary(2), random_unitary(2));
        unitary_err = std::max(unitary_err, std::abs(entanglement::concurrence(u * rho * u.adjoint()) -
                                                     entanglement::concurrence(rho)));
    }
    std::ostringstream os;
    os << "Bell |C-1| = " << fmt(bell_err) << ", product max = " << fmt(product_max) << ", Werner max err = "
       << fmt(werner_err) << ", local-unitary max diff = " << fmt(unitary_err);
    return {bell_err < kBellTol && product_max < kProductTol && werner_err < kWernerTol && unitary_err < kUnitaryTol,
            os.str()};
}

Outcome decoupling() {
    // alpha = beta needs a positive alpha, which no SI inductor produces; use direct entry.
    const std::string doc = R"({"schema_version": 1, "name": "alpha_equals_beta", "coupling_scheme": "both",
      "mode": {"omega_rad_per_ns": 6.16, "alpha": 0.2, "beta": 0.2, "cap_sigma_fF": 3.6},
      "drive": {"flux_offset": "pi/2", "amplitude": "pi"},
      "initial_state": {"theta": ["pi/4", "pi/3"], "phi": ["pi/2", "pi/2"]},
      "duration_periods": 20})";
    double worst = 0.0;
    int runs = 0;
    for (int k = 0; k < 6; ++k) {
        std::vector<std::string> ov;
        if (k > 0) {
            ov.push_back("initial_state.theta=[" + fmt(uniform(0, kPi)) + "," + fmt(uniform(0, kPi)) + "]");
            ov.push_back("initial_state.phi=[" + fmt(uniform(0, 2 * kPi)) + "," + fmt(uniform(0, 2 * kPi)) + "]");
        }
        const auto r = sc::run(sc::parse_config(with(doc, ov)));
        for (double c : r.concurrence.value) worst = std::max(worst, c);
        ++runs;
    }
    std::ostringstream os;
    os << runs << " product states, alpha = beta = 0.2: max C = " << fmt(worst);
    return {worst < kDecouplingTol, os.str()};
}

Outcome geometry() {
    const auto circle = ellipse(1.0, 1.0, 10000);
    const double circle_err = std::abs(hysteresis::form_factor(circle) - 1.0);

    double scale_err = 0.0;
    for (double lambda : {1e-6, 0.01, 3.7, 1e5}) {
        for (const auto& base : {ellipse(2.0, 1.0, 777), ellipse(1.0, 5.0, 333)}) {
            std::vector<hysteresis::Point> scaled;
            for (const auto& p : base) scaled.push_back({lambda * p.x, lambda * p.y});
            scale_err = std::max(scale_err, std::abs(hysteresis::form_factor(scaled) - hysteresis::form_factor(base)));
        }
    }

    const double a = 2.0, b = 1.0;
    const std::size_t fine = 1000000;
    double perimeter = 0.0;
    for (std::size_t k = 0; k < fine; ++k) {
        const double t0 = 2.0 * kPi * k / fine, t1 = 2.0 * kPi * (k + 1) / fine;
        perimeter += std::hypot(a * (std::cos(t1) - std::cos(t0)), b * (std::sin(t1) - std::sin(t0)));
    }
    const double oracle = 4.0 * kPi * (kPi * a * b) / (perimeter * perimeter);
    const double ellipse_value = hysteresis::form_factor(ellipse(a, b, 10000));
    std::ostringstream os;
    os << "circle |F-1| = " << fmt(circle_err) << ", scale max diff = " << fmt(scale_err) << ", 2:1 ellipse F = "
       << fmt(ellipse_value) << " vs oracle " << fmt(oracle);
    return {circle_err < kCircleTol && scale_err < kScaleTol && std::abs(ellipse_value - oracle) < kEllipseTol,
            os.str()};
}

Outcome fig3() {
    const auto uncoupled = run_preset("fig3_identical", {"circuit.coupling_capacitance_fF=0"});
    const auto coupled = run_preset("fig3_identical");
    bool ok = true;
    std::ostringstream os;
    for (int l = 0; l < 2; ++l) {
        const auto fu = form_factors(uncoupled, l);
        const auto fc = form_factors(coupled, l);
        double mean = 0.0, var = 0.0;
        for (double f : fu) mean += f;
        mean /= static_cast<double>(fu.size());
        for (double f : fu) var += (f - mean) * (f - mean);
        const double cv = std::sqrt(var / static_cast<double>(fu.size())) / mean;
        const double ratio = *std::max_element(fc.begin(), fc.end()) / *std::min_element(fc.begin(), fc.end());
        ok = ok && fu.size() >= kMinPeriods && fc.size() >= kMinPeriods && cv < kCvLimit && ratio > kRatioLimit;
        os << (l ? "; " : "") << "QM" << l + 1 << ": uncoupled CV = " << fmt(cv) << " (" << fu.size()
           << " periods), coupled max/min = " << fmt(ratio) << " (" << fc.size() << " periods)";
    }
    return {ok, os.str()};
}

Outcome fig4() {
    const auto r = run_preset("fig4");
    const std::size_t pairs = entanglement::esd_pair_count(r.esd);
    double shortest = 0.0;
    for (const auto& e : r.esd) {
        if (e.paired && e.kind == entanglement::EsdKind::Death) {
            const double len = e.plateau_end - e.plateau_start;
            shortest = shortest == 0.0 ? len : std::min(shortest, len);
        }
    }
    bool ok = pairs >= 1 && shortest >= 10.0 * r.grid.dt;
    std::ostringstream os;
    os << pairs << " ESD/ESB pairs (shortest plateau " << fmt(shortest / r.grid.dt) << " dt)";
    for (int l = 0; l < 2; ++l) {
        std::vector<double> c;
        for (const auto& p : r.periods[l]) c.push_back(p.concurrence_mean);
        const double rho = pearson(c, form_factors(r, l));
        ok = ok && rho < 0.0;
        os << ", QM" << l + 1 << " corr(C, F) = " << fmt(rho) << " over " << c.size() << " periods";
    }
    return {ok, os.str()};
}

Outcome fig5() {
    const auto r = run_preset("fig5");
    const double period = 2.0 * kPi / r.system.drive.frequency[0];
    std::size_t matched = 0, total = 0;
    double best = -1.0;
    for (int l = 0; l < 2; ++l) {
        for (const auto& rev : r.orientation[l].reversals) {
            ++total;
            for (double t : r.concurrence_maxima) {
                const double gap = std::abs(rev.time - t);
                if (best < 0.0 || gap < best) best = gap;
                if (gap <= 0.5 * period) {
                    ++matched;
                    break;
                }
            }
        }
    }
    std::ostringstream os;
    os << total << " reversals, " << matched << " within T/2 = " << fmt(0.5 * period) << " ns of a concurrence maximum"
       << " (closest gap " << fmt(best) << " ns)";
    return {matched >= 1, os.str()};
}

Outcome reference_numbers() {
    const auto r = run_preset("fig2a");
    const auto& m = r.system.mode;
    const auto u = run_preset("fig2a", {"circuit.coupling_capacitance_fF=0", "duration_periods=1"});
    std::ostringstream os;
    os << "quoted omega = 5.03; computed omega = " << fmt(m.omega[0]) << " rad/ns (uncoupled "
       << fmt(u.system.mode.omega[0]) << "); printed omega' = " << fmt(r.frequencies.printed_effective)
       << ", w - J = " << fmt(r.frequencies.symmetric_mode) << ", fitted = " << fmt(r.frequencies.fitted[0]) << ", "
       << fmt(r.frequencies.fitted[1]) << " rad/ns (written to summary.json)";
    return {true, os.str()};
}

}  // namespace

int main() {
    report(1, "physicality over a 50-period fig4 run", physicality);
    report(2, "Lindblad vs first-moment equations", oracle_equivalence);
    report(3, "closed-form decay and RK4 order", closed_form_decay);
    report(4, "concurrence oracles", concurrence_oracle);
    report(5, "alpha = beta decoupling", decoupling);
    report(6, "form-factor geometry", geometry);
    report(7, "fig3: constant vs oscillating form factor", fig3);
    report(8, "fig4: ESD/ESB and C vs F anti-alignment", fig4);
    report(9, "fig5: reversal near a concurrence maximum", fig5);
    report(10, "reference-number compatibility", reference_numbers, true);
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
