#pragma once

// Lumped-element description of two coupled flux-driven memristors and the
// quantization that maps it onto two harmonic modes with an exchange coupling.

#include <array>
#include <optional>

#include "qmem/constants.hpp"

namespace qmem::circuit {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Sinusoidal flux control of one memristor: phi_d(t) = offset + amplitude * sin(frequency * t).
struct DriveParams {
    double flux_offset = 0.0;           // rad
    double amplitude = kPi;             // rad
    std::optional<double> frequency;    // rad/ns; empty means "auto" (the mode frequency)
};

/// SI lumped-element parameters. An empty coupling_inductance means no inductive path.
struct CircuitParams {
    std::array<double, 2> cap_sigma{};      // F
    double coupling_capacitance = 0.0;      // F
    std::array<double, 2> inductance{};     // H
    std::optional<double> coupling_inductance;  // H
    std::array<DriveParams, 2> drive{};
};

/// Charging and inductive energy matrices, stored as angular frequencies (rad/ns).
struct EnergyMatrices {
    Matrix2 charge{};
    Matrix2 inductive{};
};

struct ModeParams {
    std::array<double, 2> omega{};       // rad/ns
    std::array<double, 2> zero_point{};  // g_l, dimensionless
    double alpha = 0.0;                  // inductive energy ratio
    double beta = 0.0;                   // charge energy ratio
    double effective_frequency = 0.0;    // sqrt(w1 w2) * sqrt((1-alpha)(1-beta)), rad/ns
    double exchange_coupling = 0.0;      // sqrt(w1 w2) * (alpha - beta), rad/ns
};

void validate(const CircuitParams& params);

/// [[Cs1 + Cc, -Cc], [-Cc, Cs2 + Cc]] in farads.
Matrix2 capacitance_matrix(const CircuitParams& params);

/// Closed-form inverse of the capacitance matrix (1/F).
Matrix2 inverse_capacitance_matrix(const CircuitParams& params);

/// Inverse inductance matrix (1/H); the coupling terms vanish without an inductive path.
Matrix2 inverse_inductance_matrix(const CircuitParams& params);

double determinant(const Matrix2& m) noexcept;

/// Adjugate inverse; throws SingularMatrix when the determinant is not strictly nonzero.
Matrix2 invert(const Matrix2& m);

Matrix2 multiply(const Matrix2& a, const Matrix2& b) noexcept;

/// E_C = 2 e^2 C^-1 and E_L = phi0^2 L^-1, divided by hbar and expressed in rad/ns.
EnergyMatrices inverse_energy_matrices(const CircuitParams& params,
                                       const PhysicalConstants& consts = PhysicalConstants::codata());

ModeParams mode_params(const EnergyMatrices& energy);

/// Direct entry that bypasses the SI circuit: mode frequencies, ratios and zero-point scales.
ModeParams mode_params_direct(std::array<double, 2> omega, double alpha, double beta,
                              std::array<double, 2> zero_point);

/// Zero-point scale of an isolated mode with frequency omega and capacitance cap_sigma:
/// g = sqrt(E_C / (4 omega)) with E_C = 2 e^2 / (hbar C).
double zero_point_from_frequency(double omega, double cap_sigma,
                                 const PhysicalConstants& consts = PhysicalConstants::codata());

}  // namespace qmem::circuit
