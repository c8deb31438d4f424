#include "qmem/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "qmem/errors.hpp"

namespace qmem::entanglement {

using linalg::Complex;

namespace {

const ComplexMatrix& sigma_yy() {
    static const ComplexMatrix yy = linalg::tensor_product(linalg::pauli_y(), linalg::pauli_y());
    return yy;
}

void require_two_qubit(const ComplexMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) {
        throw ContractViolation("concurrence is defined for 4x4 two-qubit states only");
    }
}

}  // namespace

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
    require_two_qubit(rho);
    return sigma_yy() * rho.conjugate() * sigma_yy();
}

std::vector<double> concurrence_spectrum(const ComplexMatrix& rho) {
    require_two_qubit(rho);
    // With rho = W W^dagger the lambda_i are the singular values of W^T (sy x sy) W, which
    // avoids taking square roots of the rounding residue in the null space of rho.
    const auto eig = linalg::hermitian_eigen(rho);
    ComplexMatrix w(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        const double r = std::sqrt(std::max(eig.values[k], 0.0));
        for (std::size_t i = 0; i < 4; ++i) w(i, k) = eig.vectors(i, k) * r;
    }
    return linalg::singular_values(w.transpose() * sigma_yy() * w);
}

double concurrence(const ComplexMatrix& rho) {
    require_two_qubit(rho);
    const auto physical = linalg::physicality(rho);
    if (!physical.ok()) throw ContractViolation("concurrence: input is not a valid density matrix");
    const auto l = concurrence_spectrum(rho);
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double concurrence(const linalg::DensityMatrix& rho) { return concurrence(rho.matrix()); }

std::vector<EsdEvent> esd_events(const ConcurrenceTrace& trace, const EsdOptions& options) {
    const auto& t = trace.time;
    const auto& c = trace.value;
    if (t.size() != c.size()) throw ContractViolation("esd_events: trace columns differ in length");
    std::vector<EsdEvent> events;
    const std::size_t n = t.size();
    if (n == 0) return events;

    const double eps = options.threshold;
    const auto cross = [&](std::size_t k) {
        // threshold crossing between samples k and k + 1
        const double f = (c[k] - eps) / (c[k] - c[k + 1]);
        return t[k] + f * (t[k + 1] - t[k]);
    };

    std::size_t k = 0;
    while (k < n) {
        if (c[k] >= eps) {
            ++k;
            continue;
        }
        const std::size_t begin = k;
        while (k < n && c[k] < eps) ++k;
        const std::size_t end = k;  // one past the plateau

        const bool left_bounded = begin > 0;
        const bool right_bounded = end < n;
        if (!left_bounded && !right_bounded) break;

        const double start = left_bounded ? cross(begin - 1) : t.front();
        const double stop = right_bounded ? cross(end - 1) : t.back();
        if (stop - start < options.min_plateau) continue;

        const bool paired = left_bounded && right_bounded;
        if (left_bounded) events.push_back({EsdKind::Death, start, start, stop, paired});
        if (right_bounded) events.push_back({EsdKind::Birth, stop, start, stop, paired});
    }
    return events;
}

std::size_t esd_pair_count(const std::vector<EsdEvent>& events) {
    return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const EsdEvent& e) {
        return e.paired && e.kind == EsdKind::Death;
    }));
}

std::vector<double> local_maxima(const ConcurrenceTrace& trace, double floor) {
    std::vector<double> out;
    const auto& c = trace.value;
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
        if (c[k] > floor && c[k] > c[k - 1] && c[k] >= c[k + 1]) out.push_back(trace.time[k]);
    }
    return out;
}

}  // namespace qmem::entanglement
