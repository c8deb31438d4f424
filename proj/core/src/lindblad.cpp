#include "qmem/lindblad.hpp"

#include <cmath>
#include <limits>

#include "qmem/errors.hpp"

namespace qmem::lindblad {

using linalg::Complex;

DriveSignal resolve_drive(const std::array<circuit::DriveParams, 2>& drive,
                          const circuit::ModeParams& mode) {
    DriveSignal out;
    for (int l = 0; l < 2; ++l) {
        if (!(drive[l].amplitude >= 0.0)) throw InvalidParameter("drive amplitude must be >= 0");
        out.flux_offset[l] = drive[l].flux_offset;
        out.amplitude[l] = drive[l].amplitude;
        out.frequency[l] = drive[l].frequency.value_or(mode.omega[l]);
    }
    return out;
}

SystemSpec make_system(const circuit::ModeParams& mode, const DriveSignal& drive,
                       std::size_t levels) {
    SystemSpec sys;
    sys.mode = mode;
    sys.drive = drive;
    sys.operators = linalg::build_operators(mode.zero_point, levels);

    const auto& a = sys.operators.lowering;
    const std::size_t n = levels * levels;
    ComplexMatrix h(n, n);
    for (int l = 0; l < 2; ++l) h.add_scaled(sys.operators.occupation[l], mode.omega[l]);
    const ComplexMatrix hop = a[0].adjoint() * a[1] + a[0] * a[1].adjoint();
    h.add_scaled(hop, -mode.exchange_coupling);
    sys.hamiltonian = std::move(h);
    for (int l = 0; l < 2; ++l) {
        sys.jump_dagger[l] = a[l].adjoint();
        sys.jump_dagger_jump[l] = sys.operators.occupation[l];
    }
    return sys;
}

double drive_flux(double t, int memristor, const DriveSignal& drive) {
    return drive.flux_offset[memristor] +
           drive.amplitude[memristor] * std::sin(drive.frequency[memristor] * t);
}

double peak_decay_rate(int memristor, const SystemSpec& sys) {
    const double g = sys.mode.zero_point[memristor];
    return g * g * sys.mode.omega[memristor] * std::exp(-g * g);
}

double decay_rate(double t, int memristor, const SystemSpec& sys) {
    const double phi_d = drive_flux(t, memristor, sys.drive);
    return peak_decay_rate(memristor, sys) * 0.5 * (1.0 + std::cos(phi_d));
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double t, const SystemSpec& sys) {
    return lindblad_rhs(rho, t, sys, {decay_rate(t, 0, sys), decay_rate(t, 1, sys)});
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double /*t*/, const SystemSpec& sys,
                           const std::array<double, 2>& rates) {
    const ComplexMatrix& h = sys.hamiltonian;
    ComplexMatrix out = h * rho;
    out -= rho * h;
    out *= Complex{0.0, -1.0};
    for (int l = 0; l < 2; ++l) {
        if (rates[l] == 0.0) continue;
        const ComplexMatrix& a = sys.operators.lowering[l];
        const ComplexMatrix& nl = sys.jump_dagger_jump[l];
        out.add_scaled((a * rho) * sys.jump_dagger[l], rates[l]);
        out.add_scaled(nl * rho, -0.5 * rates[l]);
        out.add_scaled(rho * nl, -0.5 * rates[l]);
    }
    return out;
}

double default_step(const circuit::ModeParams& mode) {
    return (2.0 * kPi / std::max(mode.omega[0], mode.omega[1])) / 200.0;
}

TimeGrid make_grid(double duration, double max_dt) {
    if (!(duration > 0.0) || !(max_dt > 0.0)) throw InvalidParameter("grid needs positive duration and step");
    const double ratio = duration / max_dt;
    auto steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * ratio));
    if (steps == 0) steps = 1;
    return TimeGrid{duration / static_cast<double>(steps), steps};
}

Observables observe(const ComplexMatrix& rho, const linalg::OperatorSet& ops) {
    Observables o;
    for (int l = 0; l < 2; ++l) {
        o.number[l] = linalg::expectation(rho, ops.number[l]);
        o.phase[l] = linalg::expectation(rho, ops.phase[l]);
    }
    return o;
}

namespace {

void check_step(std::size_t step, const ComplexMatrix& rho, bool positivity, bool enforce,
                linalg::PhysicalityReport& worst) {
    const double trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
    const double herm = linalg::hermiticity_error(rho);
    worst.trace_error = std::max(worst.trace_error, trace_error);
    worst.hermiticity_error = std::max(worst.hermiticity_error, herm);
    if (!std::isfinite(trace_error) || trace_error >= DensityMatrix::kTraceTol) {
        throw IntegrationDiverged(step, "trace error", trace_error);
    }
    if (!(herm < DensityMatrix::kHermiticityTol)) {
        throw IntegrationDiverged(step, "hermiticity error", herm);
    }
    if (positivity) {
        const double min_eig = linalg::hermitian_eigenvalues(rho).back();
        worst.min_eigenvalue = std::min(worst.min_eigenvalue, min_eig);
        if (enforce && !(min_eig > DensityMatrix::kPositivityTol)) {
            throw IntegrationDiverged(step, "minimum eigenvalue", min_eig);
        }
    }
}

}  // namespace

Trajectory integrate(const DensityMatrix& rho0, const TimeGrid& grid, const SystemSpec& sys,
                     const IntegrateOptions& options) {
    if (rho0.dimension() != sys.hamiltonian.rows()) {
        throw ContractViolation("initial state dimension does not match the system");
    }
    if (!(grid.dt > 0.0)) throw InvalidParameter("time step must be positive");

    const auto rates_at = [&](double t) -> std::array<double, 2> {
        if (options.rates) return options.rates(t);
        return {decay_rate(t, 0, sys), decay_rate(t, 1, sys)};
    };

    Trajectory traj;
    traj.time.reserve(grid.points());
    traj.observables.reserve(grid.points());
    traj.decay_rates.reserve(grid.points());
    traj.worst = linalg::PhysicalityReport{0.0, 0.0, std::numeric_limits<double>::infinity()};

    ComplexMatrix rho = rho0.matrix();
    const double dt = grid.dt;
    std::array<double, 2> rate_now = rates_at(0.0);

    const auto record = [&](std::size_t k, double t) {
        check_step(k, rho, options.check_positivity, options.enforce_positivity, traj.worst);
        traj.time.push_back(t);
        traj.observables.push_back(observe(rho, sys.operators));
        traj.decay_rates.push_back(rate_now);
        if (options.keep_states) traj.states.push_back(DensityMatrix::unchecked(rho));
        if (options.observer) options.observer(k, t, rho);
    };

    record(0, 0.0);
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t = grid.time(k);
        const auto rate_mid = rates_at(t + 0.5 * dt);
        const auto rate_end = rates_at(t + dt);

        const ComplexMatrix k1 = lindblad_rhs(rho, t, sys, rate_now);
        ComplexMatrix stage = rho;
        stage.add_scaled(k1, 0.5 * dt);
        const ComplexMatrix k2 = lindblad_rhs(stage, t + 0.5 * dt, sys, rate_mid);
        stage = rho;
        stage.add_scaled(k2, 0.5 * dt);
        const ComplexMatrix k3 = lindblad_rhs(stage, t + 0.5 * dt, sys, rate_mid);
        stage = rho;
        stage.add_scaled(k3, dt);
        const ComplexMatrix k4 = lindblad_rhs(stage, t + dt, sys, rate_end);

        rho.add_scaled(k1, dt / 6.0);
        rho.add_scaled(k2, dt / 3.0);
        rho.add_scaled(k3, dt / 3.0);
        rho.add_scaled(k4, dt / 6.0);

        rate_now = rate_end;
        record(k + 1, grid.time(k + 1));
    }
    if (!options.check_positivity) traj.worst.min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    return traj;
}

}  // namespace qmem::lindblad
