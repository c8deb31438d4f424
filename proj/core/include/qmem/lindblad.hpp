#pragma once

// Time-dependent Lindblad evolution of the two-mode density matrix with
// flux-controlled amplitude damping on each memristor.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "qmem/circuit_model.hpp"
#include "qmem/state_algebra.hpp"

namespace qmem::lindblad {

using linalg::ComplexMatrix;
using linalg::DensityMatrix;

/// Resolved drive: phi_d(t) = flux_offset + amplitude * sin(frequency * t), frequencies in rad/ns.
struct DriveSignal {
    std::array<double, 2> flux_offset{};
    std::array<double, 2> amplitude{kPi, kPi};
    std::array<double, 2> frequency{};
};

/// Resolves "auto" frequencies to the mode frequencies.
DriveSignal resolve_drive(const std::array<circuit::DriveParams, 2>& drive,
                          const circuit::ModeParams& mode);

/// Immutable after construction; safe to share across concurrent runs.
struct SystemSpec {
    circuit::ModeParams mode;
    DriveSignal drive;
    linalg::OperatorSet operators;
    ComplexMatrix hamiltonian;  // sum w_l a_l^dag a_l - J (a1^dag a2 + a1 a2^dag), J = sqrt(w1 w2)(alpha - beta)
    std::array<ComplexMatrix, 2> jump_dagger_jump;  // a_l^dag a_l
    std::array<ComplexMatrix, 2> jump_dagger;       // a_l^dag
};

/// `levels` = Fock states per mode; 2 is the two-level memristor model.
SystemSpec make_system(const circuit::ModeParams& mode, const DriveSignal& drive,
                       std::size_t levels = 2);

double drive_flux(double t, int memristor, const DriveSignal& drive);

/// Gamma_l(t) = g^2 w exp(-g^2) (1 + cos phi_d(t)) / 2, in rad/ns.
double decay_rate(double t, int memristor, const SystemSpec& sys);

/// Upper bound g^2 w exp(-g^2) of decay_rate.
double peak_decay_rate(int memristor, const SystemSpec& sys);

/// Optional override of the time-dependent rates; used by tests that need a constant Gamma.
using RateFunction = std::function<std::array<double, 2>(double t)>;

/// -i[H, rho] + sum_l Gamma_l(t) (a rho a^dag - {a^dag a, rho} / 2).
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double t, const SystemSpec& sys);
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double t, const SystemSpec& sys,
                           const std::array<double, 2>& rates);

/// Uniform grid t_k = k * dt, k = 0..steps.
struct TimeGrid {
    double dt = 0.0;
    std::size_t steps = 0;

    double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt; }
    std::size_t points() const noexcept { return steps + 1; }
    double duration() const noexcept { return time(steps); }
};

/// (2 pi / max(w1, w2)) / 200.
double default_step(const circuit::ModeParams& mode);

/// Grid covering `duration` with the largest step <= max_dt that divides it evenly.
TimeGrid make_grid(double duration, double max_dt);

struct Observables {
    std::array<double, 2> number{};  // <n_l>
    std::array<double, 2> phase{};   // <phi_l>
};

Observables observe(const ComplexMatrix& rho, const linalg::OperatorSet& ops);

struct Trajectory {
    std::vector<double> time;
    std::vector<Observables> observables;
    std::vector<std::array<double, 2>> decay_rates;
    std::vector<DensityMatrix> states;  // only filled when IntegrateOptions::keep_states
    linalg::PhysicalityReport worst;    // worst value of each invariant over the run
};

struct IntegrateOptions {
    bool keep_states = false;
    bool check_positivity = true;  // eigen-decomposition at every step
    bool enforce_positivity = true;  // false: only record the minimum eigenvalue
    RateFunction rates;            // empty: use decay_rate
    std::function<void(std::size_t step, double t, const ComplexMatrix& rho)> observer;
};

/// Fixed-step classical RK4 with rates sampled at t, t + dt/2, t + dt. No renormalization:
/// an invariant breach throws IntegrationDiverged naming the step and invariant.
Trajectory integrate(const DensityMatrix& rho0, const TimeGrid& grid, const SystemSpec& sys,
                     const IntegrateOptions& options = {});

}  // namespace qmem::lindblad
