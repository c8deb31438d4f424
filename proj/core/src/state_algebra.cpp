#include "qmem/state_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "qmem/constants.hpp"
#include "qmem/errors.hpp"

namespace qmem::linalg {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw ContractViolation("ComplexMatrix: entry count does not match dimensions");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw ContractViolation("ComplexMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(*this);
    for (auto& z : out.data_) z = std::conj(z);
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!square()) throw ContractViolation("trace of a non-square matrix");
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    return add_scaled(rhs, 1.0);
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    return add_scaled(rhs, -1.0);
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) noexcept {
    for (auto& z : data_) z *= scalar;
    return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(const ComplexMatrix& rhs, Complex scale) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw ContractViolation("matrix dimension mismatch in addition");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += scale * rhs.data_[k];
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) throw ContractViolation("matrix dimension mismatch in product");
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b + b * a;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

double hermiticity_error(const ComplexMatrix& m) {
    if (!m.square()) throw ContractViolation("hermiticity of a non-square matrix");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ContractViolation("matrix dimension mismatch in comparison");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    return worst;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& z : m.entries()) s += std::norm(z);
    return std::sqrt(s);
}

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    if (!m.square()) throw ContractViolation("hermitian_eigen: matrix is not square");
    if (hermiticity_error(m) > 1e-8) throw ContractViolation("hermitian_eigen: matrix is not Hermitian");

    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(frobenius_norm(m), 1e-300);
    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-16 * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq_abs = std::abs(a(p, q));
                if (apq_abs <= 1e-300) continue;
                const Complex phase = a(p, q) / apq_abs;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * apq_abs);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // J = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on (p, q); a <- J^dagger a J.
                const Complex jpq = s * phase;
                const Complex jqp = -s * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * c + akq * jqp;
                    a(k, q) = akp * jpq + akq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * c;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eigen(m).values;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t n = m.cols();
    ComplexMatrix a = m;
    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0;
                double beta = 0.0;
                Complex gamma = 0.0;
                for (std::size_t k = 0; k < rows; ++k) {
                    alpha += std::norm(a(k, p));
                    beta += std::norm(a(k, q));
                    gamma += std::conj(a(k, p)) * a(k, q);
                }
                const double g = std::abs(gamma);
                if (g <= 1e-300 || g <= 1e-16 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const Complex phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < rows; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * phase * akp + c * akq;
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < rows; ++k) s += std::norm(a(k, j));
        out[j] = std::sqrt(s);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.square()) throw ContractViolation("density matrix must be square");
    const auto n = m_.rows();
    const auto lv = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
    if (lv * lv != n || lv < 2) throw ContractViolation("density matrix dimension must be levels^2");
    const PhysicalityReport report = physicality(m_);
    if (report.hermiticity_error >= kHermiticityTol) {
        throw ContractViolation("density matrix is not Hermitian");
    }
    if (report.trace_error >= kTraceTol) throw ContractViolation("density matrix trace is not 1");
    if (report.min_eigenvalue <= kPositivityTol) {
        throw ContractViolation("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) { return DensityMatrix(std::move(m), Unchecked{}); }

std::size_t DensityMatrix::levels() const noexcept {
    return static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(m_.rows()))));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

PhysicalityReport physicality(const ComplexMatrix& rho) {
    PhysicalityReport r;
    r.trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
    r.hermiticity_error = hermiticity_error(rho);
    if (r.hermiticity_error <= 1e-8) {
        const auto values = hermitian_eigenvalues(rho);
        r.min_eigenvalue = values.back();
    } else {
        r.min_eigenvalue = -std::numeric_limits<double>::infinity();
    }
    return r;
}

ComplexMatrix lowering_operator(std::size_t levels) {
    ComplexMatrix a(levels, levels);
    for (std::size_t k = 1; k < levels; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

OperatorSet build_operators(std::array<double, 2> zero_point, std::size_t levels) {
    if (levels < 2) throw InvalidParameter("truncation needs at least two levels per mode");
    for (double g : zero_point) {
        if (!(g > 0.0) || !std::isfinite(g)) throw InvalidParameter("zero-point scale g must be > 0");
    }
    const ComplexMatrix a = lowering_operator(levels);
    const ComplexMatrix id = ComplexMatrix::identity(levels);

    OperatorSet ops;
    ops.levels = levels;
    ops.zero_point = zero_point;
    ops.lowering[0] = tensor_product(a, id);
    ops.lowering[1] = tensor_product(id, a);
    for (int l = 0; l < 2; ++l) {
        const ComplexMatrix& al = ops.lowering[l];
        const ComplexMatrix ad = al.adjoint();
        const double g = zero_point[l];
        ops.number[l] = Complex{0.0, 1.0 / (4.0 * g)} * (ad - al);
        ops.phase[l] = Complex{2.0 * g, 0.0} * (ad + al);
        ops.occupation[l] = ad * al;
    }
    return ops;
}

double expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
    if (rho.rows() != op.rows() || rho.cols() != op.cols() || !rho.square()) {
        throw ContractViolation("expectation: dimension mismatch");
    }
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < rho.rows(); ++i)
        for (std::size_t k = 0; k < rho.cols(); ++k) t += rho(i, k) * op(k, i);
    const double scale = std::max(1.0, frobenius_norm(op));
    if (std::abs(t.imag()) >= 1e-10 * scale) {
        throw ContractViolation("expectation: operator is not Hermitian (imaginary residue " +
                                std::to_string(t.imag()) + ")");
    }
    return t.real();
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
    return expectation(rho.matrix(), op);
}

DensityMatrix product_state(double theta1, double phi1, double theta2, double phi2,
                            std::size_t levels) {
    const auto check = [](double theta, double phi) {
        if (!(theta >= 0.0 && theta <= kPi)) throw InvalidParameter("theta must lie in [0, pi]");
        if (!(phi >= 0.0 && phi < 2.0 * kPi)) throw InvalidParameter("phi must lie in [0, 2 pi)");
    };
    check(theta1, phi1);
    check(theta2, phi2);
    if (levels < 2) throw InvalidParameter("truncation needs at least two levels per mode");

    const auto single = [levels](double theta, double phi) {
        std::vector<Complex> psi(levels, Complex{0.0, 0.0});
        psi[0] = std::cos(theta / 2.0);
        psi[1] = std::polar(std::sin(theta / 2.0), phi);
        return psi;
    };
    const auto psi1 = single(theta1, phi1);
    const auto psi2 = single(theta2, phi2);
    const std::size_t n = levels * levels;
    std::vector<Complex> psi(n);
    for (std::size_t i = 0; i < levels; ++i)
        for (std::size_t j = 0; j < levels; ++j) psi[i * levels + j] = psi1[i] * psi2[j];

    ComplexMatrix rho(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) rho(r, c) = psi[r] * std::conj(psi[c]);
    return DensityMatrix(std::move(rho));
}

ComplexMatrix pauli_x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() {
    return ComplexMatrix{{Complex{0.0, 0.0}, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, Complex{0.0, 0.0}}};
}
ComplexMatrix pauli_z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace qmem::linalg
