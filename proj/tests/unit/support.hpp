#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qmem/constants.hpp"
#include "qmem/state_algebra.hpp"

namespace qmem::test {

using linalg::Complex;
using linalg::ComplexMatrix;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline ComplexMatrix random_matrix(std::size_t n) {
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(g(rng()), g(rng()));
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n) {
    const ComplexMatrix a = random_matrix(n);
    ComplexMatrix h = a + a.adjoint();
    h *= 0.5;
    return h;
}

// Modified Gram-Schmidt on a Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n) {
    ComplexMatrix q = random_matrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
    return q;
}

// rho = sum_k w_k |psi_k><psi_k| with random weights.
inline ComplexMatrix random_density(std::size_t n, std::size_t rank) {
    ComplexMatrix rho(n, n);
    double total = 0.0;
    for (std::size_t r = 0; r < rank; ++r) {
        const ComplexMatrix u = random_unitary(n);
        const double w = uniform(0.1, 1.0);
        total += w;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rho(i, j) += w * u(i, 0) * std::conj(u(j, 0));
    }
    rho *= 1.0 / total;
    return rho;
}

inline ComplexMatrix ket_projector(const std::vector<Complex>& psi) {
    ComplexMatrix p(psi.size(), psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i)
        for (std::size_t j = 0; j < psi.size(); ++j) p(i, j) = psi[i] * std::conj(psi[j]);
    return p;
}

}  // namespace qmem::test
