#pragma once

#include <cmath>

#include "complex_matrix.hpp"
#include "eig.hpp"
#include "errors.hpp"

namespace supchan {

inline double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw ProbabilityRange("binary_entropy: argument outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

namespace detail {

// Entropy in bits of an eigenvalue list, clamping the usual -1e-16-ish
// rounding negatives to zero.  No validation; callers feed CPTP outputs.
inline double entropy_from_eigenvalues(const std::vector<double>& values) {
    double s = 0.0;
    for (double lambda : values) {
        if (lambda > 0.0) s -= lambda * std::log2(lambda);
    }
    return s;
}

inline double entropy_bits_unchecked(const ComplexMatrix& rho) {
    return entropy_from_eigenvalues(hermitian_eig(rho).values);
}

}  // namespace detail

// Von Neumann entropy in bits.  The argument must be a density matrix:
// Hermitian, unit trace within 1e-8, eigenvalues >= -1e-10 (small negatives
// are clamped to zero before the log).
inline double von_neumann_entropy(const ComplexMatrix& rho) {
    if (!rho.is_square()) throw NotDensityMatrix("von_neumann_entropy: matrix is not square");
    if (!all_finite(rho)) throw NotDensityMatrix("von_neumann_entropy: non-finite entries");
    if (hermiticity_gap(rho) > 1e-8)
        throw NotDensityMatrix("von_neumann_entropy: matrix is not Hermitian");
    if (std::abs(rho.trace() - complexd(1.0)) > 1e-8)
        throw NotDensityMatrix("von_neumann_entropy: trace is not 1");
    HermitianEigenSystem es = hermitian_eig(rho);
    for (double lambda : es.values) {
        if (lambda < -1e-10)
            throw NotDensityMatrix("von_neumann_entropy: negative eigenvalue");
    }
    return detail::entropy_from_eigenvalues(es.values);
}

}  // namespace supchan
