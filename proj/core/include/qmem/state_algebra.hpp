#pragma once

// Small dense complex linear algebra for two-mode density matrices.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qmem::linalg {

using Complex = std::complex<double>;

/// Row-major dense complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<Complex>& values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
        return data_[r * cols_ + c];
    }
    const std::vector<Complex>& entries() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix transpose() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scalar) noexcept;

    /// this += scale * rhs
    ComplexMatrix& add_scaled(const ComplexMatrix& rhs, Complex scale);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product: (A (x) B)[i*rB + k, j*cB + l] = A[i, j] * B[k, l].
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |M - M^dagger| entrywise.
double hermiticity_error(const ComplexMatrix& m);
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);

struct HermitianEigen {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

/// Cyclic complex Jacobi. Throws ContractViolation if m is not Hermitian within 1e-8.
HermitianEigen hermitian_eigen(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// One-sided Jacobi; descending. Small singular values keep absolute accuracy ~ eps * |m|.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Applies f to the spectrum: V diag(f(lambda)) V^dagger.
template <typename F>
ComplexMatrix hermitian_function(const HermitianEigen& eig, F&& f) {
    const std::size_t n = eig.values.size();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(eig.values[k]);
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = eig.vectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Two-mode states

/// Density matrix of two modes truncated to `levels` Fock states each;
/// basis index = n1 * levels + n2 (memristor 1 is the left tensor factor).
class DensityMatrix {
public:
    static constexpr double kHermiticityTol = 1e-10;
    static constexpr double kTraceTol = 1e-9;
    static constexpr double kPositivityTol = -1e-8;

    /// Validates every invariant; throws ContractViolation on failure.
    explicit DensityMatrix(ComplexMatrix m);

    /// Skips validation; caller guarantees the invariants (integrator internals).
    static DensityMatrix unchecked(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dimension() const noexcept { return m_.rows(); }
    std::size_t levels() const noexcept;

    double purity() const;

private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

struct PhysicalityReport {
    double trace_error = 0.0;        // |Tr rho - 1|
    double hermiticity_error = 0.0;  // max |rho - rho^dagger|
    double min_eigenvalue = 1.0;

    bool ok() const noexcept {
        return trace_error < DensityMatrix::kTraceTol &&
               hermiticity_error < DensityMatrix::kHermiticityTol &&
               min_eigenvalue > DensityMatrix::kPositivityTol;
    }
};

PhysicalityReport physicality(const ComplexMatrix& rho);

/// Ladder and quadrature operators embedded in the two-mode space.
struct OperatorSet {
    std::size_t levels = 2;
    std::array<double, 2> zero_point{};
    std::array<ComplexMatrix, 2> lowering;    // a_l
    std::array<ComplexMatrix, 2> number;      // n_l = (i / 4g) (a^dagger - a), charge quadrature
    std::array<ComplexMatrix, 2> phase;       // phi_l = 2g (a^dagger + a)
    std::array<ComplexMatrix, 2> occupation;  // a^dagger a
};

/// Single-mode lowering operator truncated to `levels` Fock states.
ComplexMatrix lowering_operator(std::size_t levels);

/// Throws InvalidParameter if any g <= 0 or levels < 2.
OperatorSet build_operators(std::array<double, 2> zero_point, std::size_t levels = 2);

/// Re Tr(rho O); throws ContractViolation on dimension mismatch or imaginary residue >= 1e-10.
double expectation(const DensityMatrix& rho, const ComplexMatrix& op);
double expectation(const ComplexMatrix& rho, const ComplexMatrix& op);

/// |Psi(theta1, phi1)> (x) |Psi(theta2, phi2)> with |Psi(theta, phi)> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
/// Requires theta in [0, pi], phi in [0, 2 pi).
DensityMatrix product_state(double theta1, double phi1, double theta2, double phi2,
                            std::size_t levels = 2);

// Pauli matrices in the (|0>, |1>) basis.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace qmem::linalg
