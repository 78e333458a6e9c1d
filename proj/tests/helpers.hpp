#pragma once

// Deterministic generators shared by the test suites.  Everything is seeded
// explicitly so failures reproduce.

#include <random>

#include "supchan/complex_matrix.hpp"
#include "supchan/eig.hpp"
#include "supchan/kraus.hpp"
#include "supchan/vacuum.hpp"

namespace testutil {

using supchan::ComplexMatrix;
using supchan::complexd;

inline ComplexMatrix random_matrix(std::mt19937& rng, int rows, int cols) {
    std::normal_distribution<double> d(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = complexd(d(rng), d(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937& rng, int n) {
    ComplexMatrix g = random_matrix(rng, n, n);
    ComplexMatrix h(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

inline ComplexMatrix random_density(std::mt19937& rng, int n) {
    ComplexMatrix b = random_matrix(rng, n, n);
    ComplexMatrix rho = b * b.dagger();
    rho *= complexd(1.0) / rho.trace();
    return rho;
}

inline ComplexMatrix random_ket(std::mt19937& rng, int n) {
    ComplexMatrix v = random_matrix(rng, n, 1);
    v *= complexd(1.0 / supchan::vec_norm(v));
    return v;
}

// Random CPTP channel: draw k Gaussian operators G_i and normalize the set
// with S^{-1/2}, S = sum G_i^dagger G_i.
inline supchan::KrausChannel random_channel(std::mt19937& rng, int dim, int k) {
    std::vector<ComplexMatrix> g;
    ComplexMatrix s(dim, dim);
    for (int i = 0; i < k; ++i) {
        g.push_back(random_matrix(rng, dim, dim));
        s += g.back().dagger() * g.back();
    }
    supchan::HermitianEigenSystem es = supchan::hermitian_eig(s);
    ComplexMatrix d(dim, dim);
    for (int i = 0; i < dim; ++i) d(i, i) = 1.0 / std::sqrt(es.values[i]);
    ComplexMatrix s_inv_sqrt = es.vectors * d * es.vectors.dagger();
    std::vector<ComplexMatrix> ops;
    for (auto& gi : g) ops.push_back(gi * s_inv_sqrt);
    return supchan::KrausChannel(dim, dim, std::move(ops));
}

// Random vacuum extension: any CPTP channel plus any normalized amplitude
// list is valid.
inline supchan::VacuumExtension random_extension(std::mt19937& rng, int dim, int k) {
    supchan::KrausChannel ch = random_channel(rng, dim, k);
    ComplexMatrix a = random_ket(rng, k);
    std::vector<complexd> amps;
    for (int i = 0; i < k; ++i) amps.push_back(a(i, 0));
    return supchan::VacuumExtension(std::move(ch), std::move(amps));
}

// Unitary via Gram-Schmidt on a random matrix.
inline ComplexMatrix random_unitary(std::mt19937& rng, int n) {
    ComplexMatrix g = random_matrix(rng, n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            complexd proj = 0.0;
            for (int i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
            for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        for (int i = 0; i < n; ++i) g(i, j) /= nrm;
    }
    return g;
}

}  // namespace testutil
