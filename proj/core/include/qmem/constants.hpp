#pragma once

namespace qmem {

/// SI constants used to map lumped-element values into the internal unit system.
struct PhysicalConstants {
    double electron_charge;       // C
    double reduced_planck;        // J s
    double reduced_flux_quantum;  // Wb, hbar / 2e

    static constexpr PhysicalConstants make(double e, double hbar) noexcept {
        return PhysicalConstants{e, hbar, hbar / (2.0 * e)};
    }

    /// CODATA 2018 exact values.
    static constexpr PhysicalConstants codata() noexcept {
        return make(1.602176634e-19, 1.054571817e-34);
    }
};

// Internal units: time in ns, angular frequencies and energies/hbar in rad/ns.
inline constexpr double kSecondsPerNs = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace qmem
