#pragma once

// Two-qubit concurrence and entanglement sudden death / birth detection.

#include <vector>

#include "qmem/state_algebra.hpp"

namespace qmem::entanglement {

using linalg::ComplexMatrix;

/// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y). Requires a 4x4 matrix.
ComplexMatrix spin_flip(const ComplexMatrix& rho);

/// Descending lambda_i: square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho),
/// which equal those of rho rho~.
std::vector<double> concurrence_spectrum(const ComplexMatrix& rho);

/// max(0, l1 - l2 - l3 - l4). Throws ContractViolation for anything but a valid 4x4 state.
double concurrence(const linalg::DensityMatrix& rho);
double concurrence(const ComplexMatrix& rho);

struct ConcurrenceTrace {
    std::vector<double> time;
    std::vector<double> value;
};

enum class EsdKind { Death, Birth };

struct EsdEvent {
    EsdKind kind = EsdKind::Death;
    double time = 0.0;           // interpolated crossing of the threshold
    double plateau_start = 0.0;  // sub-threshold interval [start, end]
    double plateau_end = 0.0;
    bool paired = false;         // plateau bounded on both sides
};

struct EsdOptions {
    double threshold = 1e-4;
    double min_plateau = 0.0;  // shortest sub-threshold interval reported (ns)
};

/// Maximal intervals with C < threshold. Interior plateaus emit a death at the left edge and
/// a birth at the right edge; a plateau touching the start or end of the trace emits only
/// its bounded edge.
std::vector<EsdEvent> esd_events(const ConcurrenceTrace& trace, const EsdOptions& options = {});

/// Number of complete death/birth pairs.
std::size_t esd_pair_count(const std::vector<EsdEvent>& events);

/// Times of strict interior local maxima with C above `floor`.
std::vector<double> local_maxima(const ConcurrenceTrace& trace, double floor = 1e-4);

}  // namespace qmem::entanglement
