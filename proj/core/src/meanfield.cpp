#include "qmem/meanfield.hpp"

#include <cmath>

#include "qmem/errors.hpp"

namespace qmem::meanfield {

namespace {

MeanFieldState axpy(const MeanFieldState& y, double h, const MeanFieldState& k) {
    MeanFieldState out;
    for (int l = 0; l < 2; ++l) {
        out.n[l] = y.n[l] + h * k.n[l];
        out.phi[l] = y.phi[l] + h * k.phi[l];
    }
    return out;
}

}  // namespace

MeanFieldState initial_moments(std::array<double, 2> theta, std::array<double, 2> phase,
                               std::array<double, 2> zero_point) {
    MeanFieldState s;
    for (int l = 0; l < 2; ++l) {
        s.n[l] = std::sin(theta[l]) * std::sin(phase[l]) / (4.0 * zero_point[l]);
        s.phi[l] = 2.0 * zero_point[l] * std::sin(theta[l]) * std::cos(phase[l]);
    }
    return s;
}

MeanFieldState meanfield_rhs(const MeanFieldState& state, double t, const lindblad::SystemSpec& sys) {
    return meanfield_rhs(state, sys, {lindblad::decay_rate(t, 0, sys), lindblad::decay_rate(t, 1, sys)});
}

MeanFieldState meanfield_rhs(const MeanFieldState& s, const lindblad::SystemSpec& sys,
                             const std::array<double, 2>& rates) {
    const auto& w = sys.mode.omega;
    const auto& g = sys.mode.zero_point;
    const double j = sys.mode.exchange_coupling;
    const double gg = g[0] * g[1];
    MeanFieldState d;
    for (int l = 0; l < 2; ++l) {
        const int m = 1 - l;
        d.n[l] = -w[l] * s.phi[l] / (8.0 * g[l] * g[l]) + j * s.phi[m] / (8.0 * gg) -
                 0.5 * rates[l] * s.n[l];
        d.phi[l] = 8.0 * g[l] * g[l] * w[l] * s.n[l] - 8.0 * gg * j * s.n[m] -
                   0.5 * rates[l] * s.phi[l];
    }
    return d;
}

MeanFieldSeries integrate_meanfield(const MeanFieldState& state0, const lindblad::TimeGrid& grid,
                                    const lindblad::SystemSpec& sys,
                                    const lindblad::RateFunction& rates) {
    if (!(grid.dt > 0.0)) throw InvalidParameter("time step must be positive");
    const auto rates_at = [&](double t) -> std::array<double, 2> {
        if (rates) return rates(t);
        return {lindblad::decay_rate(t, 0, sys), lindblad::decay_rate(t, 1, sys)};
    };

    MeanFieldSeries out;
    out.time.reserve(grid.points());
    out.states.reserve(grid.points());
    out.decay_rates.reserve(grid.points());

    MeanFieldState y = state0;
    auto rate_now = rates_at(0.0);
    out.time.push_back(0.0);
    out.states.push_back(y);
    out.decay_rates.push_back(rate_now);

    const double dt = grid.dt;
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t = grid.time(k);
        const auto rate_mid = rates_at(t + 0.5 * dt);
        const auto rate_end = rates_at(t + dt);
        const MeanFieldState k1 = meanfield_rhs(y, sys, rate_now);
        const MeanFieldState k2 = meanfield_rhs(axpy(y, 0.5 * dt, k1), sys, rate_mid);
        const MeanFieldState k3 = meanfield_rhs(axpy(y, 0.5 * dt, k2), sys, rate_mid);
        const MeanFieldState k4 = meanfield_rhs(axpy(y, dt, k3), sys, rate_end);
        for (int l = 0; l < 2; ++l) {
            y.n[l] += dt / 6.0 * (k1.n[l] + 2.0 * k2.n[l] + 2.0 * k3.n[l] + k4.n[l]);
            y.phi[l] += dt / 6.0 * (k1.phi[l] + 2.0 * k2.phi[l] + 2.0 * k3.phi[l] + k4.phi[l]);
        }
        rate_now = rate_end;
        out.time.push_back(grid.time(k + 1));
        out.states.push_back(y);
        out.decay_rates.push_back(rate_now);
    }
    return out;
}

double mode_energy(const MeanFieldState& s, int l, const lindblad::SystemSpec& sys) {
    const double g = sys.mode.zero_point[l];
    return 32.0 * g * g * g * g * s.n[l] * s.n[l] + 0.5 * s.phi[l] * s.phi[l];
}

double symmetric_mode_frequency(const lindblad::SystemSpec& sys) {
    return sys.mode.omega[0] - sys.mode.exchange_coupling;
}

void require_identical(const lindblad::SystemSpec& sys) {
    const auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
    };
    const auto& m = sys.mode;
    const auto& d = sys.drive;
    if (!close(m.omega[0], m.omega[1]) || !close(m.zero_point[0], m.zero_point[1]) ||
        d.flux_offset[0] != d.flux_offset[1] || d.amplitude[0] != d.amplitude[1] ||
        !close(d.frequency[0], d.frequency[1])) {
        throw InvalidParameter("invalid configuration: analytic solution requires identical memristors");
    }
}

std::vector<double> half_rate_integral(const lindblad::TimeGrid& grid, int l,
                                       const lindblad::SystemSpec& sys) {
    std::vector<double> out(grid.points(), 0.0);
    double acc = 0.0;
    double left = lindblad::decay_rate(0.0, l, sys);
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t = grid.time(k);
        const double mid = lindblad::decay_rate(t + 0.5 * grid.dt, l, sys);
        const double right = lindblad::decay_rate(t + grid.dt, l, sys);
        acc += grid.dt / 6.0 * (left + 4.0 * mid + right) * 0.5;
        out[k + 1] = acc;
        left = right;
    }
    return out;
}

std::vector<MeanFieldState> analytic_identical(double n0, const lindblad::TimeGrid& grid,
                                               const lindblad::SystemSpec& sys, double frequency) {
    require_identical(sys);
    const double g = sys.mode.zero_point[0];
    const double phase_amplitude = 8.0 * g * g;
    const auto damping = half_rate_integral(grid, 0, sys);
    std::vector<MeanFieldState> out(grid.points());
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const double t = grid.time(k);
        const double envelope = n0 * std::exp(-damping[k]);
        const double n = envelope * std::cos(frequency * t);
        const double phi = phase_amplitude * envelope * std::sin(frequency * t);
        out[k] = MeanFieldState{{n, n}, {phi, phi}};
    }
    return out;
}

double fit_frequency(const MeanFieldSeries& series, int l, const lindblad::SystemSpec& sys) {
    const std::size_t count = series.time.size();
    if (count < 3) throw InvalidParameter("frequency fit needs at least three samples");
    const double g = sys.mode.zero_point[l];
    // Unwrapped phase of <a>, least-squares slope.
    std::vector<double> phase(count);
    double previous = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double re = series.states[k].phi[l] / (4.0 * g);
        const double im = 2.0 * g * series.states[k].n[l];
        double p = std::atan2(im, re);
        if (k > 0) {
            while (p - previous > kPi) p -= 2.0 * kPi;
            while (p - previous < -kPi) p += 2.0 * kPi;
        }
        phase[k] = p;
        previous = p;
    }
    double mt = 0.0, mp = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        mt += series.time[k];
        mp += phase[k];
    }
    mt /= static_cast<double>(count);
    mp /= static_cast<double>(count);
    double stp = 0.0, stt = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double dtk = series.time[k] - mt;
        stp += dtk * (phase[k] - mp);
        stt += dtk * dtk;
    }
    return -stp / stt;
}

IVTrace iv_signals(const MeanFieldSeries& series, const std::array<double, 2>& cap_sigma,
                   const PhysicalConstants& consts) {
    IVTrace out;
    out.time = series.time;
    for (int l = 0; l < 2; ++l) {
        if (!(cap_sigma[l] > 0.0)) throw InvalidParameter("cap_sigma must be positive");
        auto& column = out.memristor[l];
        column.reserve(series.time.size());
        for (std::size_t k = 0; k < series.time.size(); ++k) {
            IVPoint p;
            p.n = series.states[k].n[l];
            p.phi = series.states[k].phi[l];
            p.decay_rate = series.decay_rates[k][l];
            p.voltage = -2.0 * consts.electron_charge * p.n / cap_sigma[l];
            p.conductance = cap_sigma[l] * (p.decay_rate / kSecondsPerNs) / 2.0;
            p.current = p.conductance * p.voltage;
            column.push_back(p);
        }
    }
    return out;
}

}  // namespace qmem::meanfield
