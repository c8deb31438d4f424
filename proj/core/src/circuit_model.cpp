#include "qmem/circuit_model.hpp"

#include <cmath>
#include <string>

#include "qmem/errors.hpp"

namespace qmem::circuit {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidParameter(std::string(name) + " must be finite and strictly positive");
    }
}

double reciprocal_coupling_inductance(const CircuitParams& params) {
    return params.coupling_inductance ? 1.0 / *params.coupling_inductance : 0.0;
}

}  // namespace

void validate(const CircuitParams& params) {
    require_positive(params.cap_sigma[0], "cap_sigma[0]");
    require_positive(params.cap_sigma[1], "cap_sigma[1]");
    require_positive(params.inductance[0], "inductance[0]");
    require_positive(params.inductance[1], "inductance[1]");
    if (!(params.coupling_capacitance >= 0.0) || !std::isfinite(params.coupling_capacitance)) {
        throw InvalidParameter("coupling_capacitance must be finite and non-negative");
    }
    if (params.coupling_inductance) {
        require_positive(*params.coupling_inductance, "coupling_inductance");
    }
    for (const auto& d : params.drive) {
        if (!(d.amplitude >= 0.0)) throw InvalidParameter("drive amplitude must be non-negative");
        if (d.frequency) require_positive(*d.frequency, "drive frequency");
    }
}

Matrix2 capacitance_matrix(const CircuitParams& params) {
    validate(params);
    const double cc = params.coupling_capacitance;
    return {{{params.cap_sigma[0] + cc, -cc}, {-cc, params.cap_sigma[1] + cc}}};
}

Matrix2 inverse_capacitance_matrix(const CircuitParams& params) {
    validate(params);
    const double c1 = params.cap_sigma[0];
    const double c2 = params.cap_sigma[1];
    const double cc = params.coupling_capacitance;
    const double c_star = cc * (c1 + c2) + c1 * c2;
    if (!(c_star > 0.0)) throw SingularMatrix("capacitance matrix is singular");
    return {{{(cc + c2) / c_star, cc / c_star}, {cc / c_star, (cc + c1) / c_star}}};
}

Matrix2 inverse_inductance_matrix(const CircuitParams& params) {
    validate(params);
    const double inv_lc = reciprocal_coupling_inductance(params);
    const double off = inv_lc > 0.0 ? -inv_lc : 0.0;  // keep +0 when uncoupled
    return {{{inv_lc + 1.0 / params.inductance[0], off},
             {off, inv_lc + 1.0 / params.inductance[1]}}};
}

double determinant(const Matrix2& m) noexcept {
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

Matrix2 invert(const Matrix2& m) {
    const double det = determinant(m);
    const double scale = std::abs(m[0][0] * m[1][1]) + std::abs(m[0][1] * m[1][0]);
    if (det == 0.0 || !std::isfinite(det) || std::abs(det) <= 1e-14 * scale) {
        throw SingularMatrix("2x2 matrix is singular");
    }
    return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) noexcept {
    Matrix2 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return out;
}

EnergyMatrices inverse_energy_matrices(const CircuitParams& params, const PhysicalConstants& consts) {
    const Matrix2 c_inv = inverse_capacitance_matrix(params);
    const Matrix2 l_inv = inverse_inductance_matrix(params);
    // J -> rad/ns
    const double to_rate = kSecondsPerNs / consts.reduced_planck;
    const double charge_scale = 2.0 * consts.electron_charge * consts.electron_charge * to_rate;
    const double flux_scale = consts.reduced_flux_quantum * consts.reduced_flux_quantum * to_rate;

    EnergyMatrices out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.charge[i][j] = charge_scale * c_inv[i][j];
            out.inductive[i][j] = flux_scale * l_inv[i][j];
        }
    }
    return out;
}

ModeParams mode_params(const EnergyMatrices& energy) {
    const auto& ec = energy.charge;
    const auto& el = energy.inductive;
    for (int l = 0; l < 2; ++l) {
        if (!(ec[l][l] > 0.0) || !(el[l][l] > 0.0)) {
            throw InvalidParameter("energy matrix diagonals must be strictly positive");
        }
    }
    std::array<double, 2> omega{};
    std::array<double, 2> g{};
    for (int l = 0; l < 2; ++l) {
        omega[l] = std::sqrt(2.0 * ec[l][l] * el[l][l]);
        g[l] = std::pow(ec[l][l] / (32.0 * el[l][l]), 0.25);
    }
    const double alpha = el[0][1] / std::sqrt(el[0][0] * el[1][1]);
    const double beta = ec[0][1] / std::sqrt(ec[0][0] * ec[1][1]);
    return mode_params_direct(omega, alpha, beta, g);
}

ModeParams mode_params_direct(std::array<double, 2> omega, double alpha, double beta,
                              std::array<double, 2> zero_point) {
    for (int l = 0; l < 2; ++l) {
        require_positive(omega[l], "omega");
        require_positive(zero_point[l], "zero_point");
    }
    if (!std::isfinite(alpha) || !std::isfinite(beta) || std::abs(alpha) >= 1.0 ||
        std::abs(beta) >= 1.0) {
        throw InvalidParameter("alpha and beta must satisfy |alpha| < 1 and |beta| < 1");
    }
    ModeParams m;
    m.omega = omega;
    m.zero_point = zero_point;
    m.alpha = alpha;
    m.beta = beta;
    const double geometric = std::sqrt(omega[0] * omega[1]);
    m.effective_frequency = geometric * std::sqrt((1.0 - alpha) * (1.0 - beta));
    m.exchange_coupling = geometric * (alpha - beta);
    return m;
}

double zero_point_from_frequency(double omega, double cap_sigma, const PhysicalConstants& consts) {
    require_positive(omega, "omega");
    require_positive(cap_sigma, "cap_sigma");
    const double e = consts.electron_charge;
    const double charge_energy = 2.0 * e * e / (consts.reduced_planck * cap_sigma) * kSecondsPerNs;
    return std::sqrt(charge_energy / (4.0 * omega));
}

}  // namespace qmem::circuit
