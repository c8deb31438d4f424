#pragma once

// Closed first-moment equations for <n_l>, <phi_l> and their mapping to
// capacitor voltage and quasiparticle current.

#include <array>
#include <vector>

#include "qmem/constants.hpp"
#include "qmem/lindblad.hpp"

namespace qmem::meanfield {

struct MeanFieldState {
    std::array<double, 2> n{};
    std::array<double, 2> phi{};

    friend bool operator==(const MeanFieldState&, const MeanFieldState&) = default;
};

/// <n> and <phi> of the product state |Psi(theta1, phi1)> (x) |Psi(theta2, phi2)>:
/// <n_l> = sin(theta) sin(phi) / (4 g_l), <phi_l> = 2 g_l sin(theta) cos(phi).
MeanFieldState initial_moments(std::array<double, 2> theta, std::array<double, 2> phase,
                               std::array<double, 2> zero_point);

/// Heisenberg equations of the beam-splitter Hamiltonian plus amplitude damping, written for
/// the quadratures (J = exchange coupling, g_l = zero-point scales):
///   d<n_l>/dt   = -w_l <phi_l> / (8 g_l^2) + J <phi_m> / (8 g_l g_m) - Gamma_l <n_l> / 2
///   d<phi_l>/dt =  8 g_l^2 w_l <n_l>     - 8 g_l g_m J <n_m>       - Gamma_l <phi_l> / 2
MeanFieldState meanfield_rhs(const MeanFieldState& state, double t, const lindblad::SystemSpec& sys);
MeanFieldState meanfield_rhs(const MeanFieldState& state, const lindblad::SystemSpec& sys,
                             const std::array<double, 2>& rates);

struct MeanFieldSeries {
    std::vector<double> time;
    std::vector<MeanFieldState> states;
    std::vector<std::array<double, 2>> decay_rates;
};

/// RK4 with the same stage-time convention as the Lindblad integrator.
MeanFieldSeries integrate_meanfield(const MeanFieldState& state0, const lindblad::TimeGrid& grid,
                                    const lindblad::SystemSpec& sys,
                                    const lindblad::RateFunction& rates = {});

/// Coupling-free energy proxy E_C <n>^2 + E_L <phi>^2 / 2 in units of E_L,
/// i.e. 32 g^4 <n>^2 + <phi>^2 / 2.
double mode_energy(const MeanFieldState& state, int memristor, const lindblad::SystemSpec& sys);

/// Frequency of the symmetric normal mode of identical memristors, w - J.
double symmetric_mode_frequency(const lindblad::SystemSpec& sys);

/// Throws InvalidParameter (invalid configuration) unless w, g, and the drive coincide.
void require_identical(const lindblad::SystemSpec& sys);

/// Cumulative integral of Gamma_l / 2 on the grid; each interval uses Simpson's rule with the
/// rate evaluated at the interval midpoint.
std::vector<double> half_rate_integral(const lindblad::TimeGrid& grid, int memristor,
                                       const lindblad::SystemSpec& sys);

/// Closed-form identical-memristor solution for <n_l>(0) = n0, <phi_l>(0) = 0:
///   <n>   = n0 exp(-int Gamma/2) cos(w' t)
///   <phi> = n0 * 8 g^2 * exp(-int Gamma/2) sin(w' t)
/// `frequency` is w'; pass symmetric_mode_frequency(sys) or a fitted value.
std::vector<MeanFieldState> analytic_identical(double n0, const lindblad::TimeGrid& grid,
                                               const lindblad::SystemSpec& sys, double frequency);

/// Angular frequency of <a_l> = <phi_l>/(4 g) + 2 i g <n_l> from a least-squares fit of its
/// unwrapped phase (positive for clockwise rotation, the sense of free evolution).
double fit_frequency(const MeanFieldSeries& series, int memristor, const lindblad::SystemSpec& sys);

struct IVPoint {
    double voltage = 0.0;      // V
    double current = 0.0;      // A
    double conductance = 0.0;  // S
    double decay_rate = 0.0;   // rad/ns
    double n = 0.0;
    double phi = 0.0;
};

struct IVTrace {
    std::vector<double> time;  // ns
    std::array<std::vector<IVPoint>, 2> memristor;
};

/// V = -2 e <n> / C_sigma, G = C_sigma Gamma / 2 (Gamma in 1/s), I = G V.
IVTrace iv_signals(const MeanFieldSeries& series, const std::array<double, 2>& cap_sigma,
                   const PhysicalConstants& consts = PhysicalConstants::codata());

}  // namespace qmem::meanfield
