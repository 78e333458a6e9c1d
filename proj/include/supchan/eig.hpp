#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "complex_matrix.hpp"
#include "errors.hpp"

namespace supchan {

struct HermitianEigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns, aligned with values
};

// Cyclic Jacobi for complex Hermitian matrices.  Intended envelope is
// dim <= 9 (single-link and two-path operators); precision there is near
// machine epsilon, far inside the 1e-10 reconstruction tolerance.
inline HermitianEigenSystem hermitian_eig(const ComplexMatrix& input) {
    if (!input.is_square()) throw NotSquare("hermitian_eig: matrix is not square");
    if (!all_finite(input)) throw NotHermitian("hermitian_eig: non-finite entries");
    if (hermiticity_gap(input) > 1e-10) throw NotHermitian("hermitian_eig: matrix is not Hermitian");

    const int n = input.rows();
    ComplexMatrix a = input;
    // Symmetrize exactly so rounding in the input cannot bias the sweeps.
    for (int i = 0; i < n; ++i) {
        a(i, i) = complexd(a(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            complexd m = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = m;
            a(j, i) = std::conj(m);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, max_abs(a));
    const double stop = 1e-15 * scale;
    const int max_sweeps = 60;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= stop) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq <= stop) continue;

                // Phase that makes the pivot real, then a real rotation.
                const complexd phase = a(p, q) / apq;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Combined plane rotation U: col p = (c, -e^{-i phi} s),
                // col q = (s, e^{-i phi} c) in the (p,q) plane; U^dagger A U
                // then has pivot (c^2 - s^2)|a_pq| + c s (a_pp - a_qq) = 0.
                const complexd upp = c, upq = s;
                const complexd uqp = -std::conj(phase) * s, uqq = std::conj(phase) * c;

                // A <- U^dagger A U, applied as columns then rows.
                for (int k = 0; k < n; ++k) {
                    const complexd akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (int k = 0; k < n; ++k) {
                    const complexd apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = complexd(a(p, p).real(), 0.0);
                a(q, q) = complexd(a(q, q).real(), 0.0);

                for (int k = 0; k < n; ++k) {
                    const complexd vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigenSystem out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

// Square roots of the eigenvalues of a^dagger a, descending, clamped at zero.
// Returns cols(a) values.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
    HermitianEigenSystem es = hermitian_eig(a.dagger() * a);
    std::vector<double> sv(es.values.size());
    for (size_t i = 0; i < es.values.size(); ++i) {
        double lambda = es.values[es.values.size() - 1 - i];
        sv[i] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
    }
    return sv;
}

inline double sigma_max(const ComplexMatrix& a) {
    std::vector<double> sv = singular_values(a);
    return sv.empty() ? 0.0 : sv[0];
}

// Column of `vectors` with the largest eigenvalue.
inline ComplexMatrix top_eigenvector(const HermitianEigenSystem& es) {
    const int n = es.vectors.rows();
    ComplexMatrix v(n, 1);
    for (int i = 0; i < n; ++i) v(i, 0) = es.vectors(i, n - 1);
    return v;
}

}  // namespace supchan
