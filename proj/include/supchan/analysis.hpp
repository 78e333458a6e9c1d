#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "supchan/capacity.hpp"
#include "supchan/eig.hpp"
#include "supchan/vacuum.hpp"

namespace supchan {

// Alignment data for the repeater-existence test: phi is the input achieving
// the unit singular value of the interference operator, zeta the common pure
// output it is sent to, theta the global phase relating the vacuum amplitudes
// to the per-operator transfer weights.
struct AmplitudeAlignment {
    bool holds = false;
    ComplexMatrix phi;
    ComplexMatrix zeta;
    double theta = 0.0;
};

struct Theorem1Report {
    double sigma_max = 0.0;
    bool condition2 = false;
    std::optional<AmplitudeAlignment> condition3;
    std::optional<VacuumExtension> suggested_repeater;
    bool hypothesis_witness = false;
};

namespace detail {

inline ComplexMatrix eigen_column(const HermitianEigenSystem& es, int k) {
    ComplexMatrix v(es.vectors.rows(), 1);
    for (int r = 0; r < es.vectors.rows(); ++r) v(r, 0) = es.vectors(r, k);
    return v;
}

}  // namespace detail

// Decides whether the extension supports a perfect repeater: the interference
// operator must reach operator norm one (condition 2), and on the achieving
// input every channel operator must emit the same pure state with weights
// matching the vacuum amplitudes up to a global phase (condition 3).  When
// condition 2 holds, a repeater resetting the common output back to the
// achieving input is returned.  The witness field records whether the bare
// channel alone already loses essentially all classical capacity over a chain
// of thirty links.
inline Theorem1Report theorem1_check(const VacuumExtension& ext, double tol = 1e-8) {
    const KrausChannel& ch = ext.channel();
    ComplexMatrix f = vacuum_interference(ext);

    Theorem1Report report;
    report.sigma_max = sigma_max(f);
    report.condition2 = std::abs(report.sigma_max - 1.0) <= tol;

    if (ch.dim_in() == 2 && ch.dim_out() == 2) {
        KrausChannel chain = ch;
        for (int i = 1; i < 30; ++i) chain = compress_kraus(compose(ch, chain));
        report.hypothesis_witness = two_state_lower_bound(chain).value < 1e-3;
    }

    if (!report.condition2) return report;
    const int d = ch.dim_in();

    HermitianEigenSystem ff = hermitian_eig(f.dagger() * f);
    ComplexMatrix phi = detail::eigen_column(ff, d - 1);

    AmplitudeAlignment align;
    align.phi = phi;
    ComplexMatrix out = apply_channel(ch, outer(phi, phi));
    HermitianEigenSystem oe = hermitian_eig(out);
    const double purity = oe.values[out.rows() - 1];
    align.zeta = detail::eigen_column(oe, out.rows() - 1);

    size_t lead = 0;
    for (size_t i = 1; i < ext.amplitudes().size(); ++i)
        if (std::abs(ext.amplitudes()[i]) > std::abs(ext.amplitudes()[lead])) lead = i;
    align.theta = std::arg(ext.amplitudes()[lead]);

    bool amps_match = purity >= 1.0 - tol;
    const complexd phase = std::polar(1.0, align.theta);
    for (size_t i = 0; i < ext.amplitudes().size(); ++i) {
        const double weight = vec_norm(ch.kraus()[i] * phi);
        if (std::abs(ext.amplitudes()[i] - phase * weight) > tol) amps_match = false;
    }
    align.holds = amps_match;
    report.condition3 = std::move(align);

    // Repeater: reset the common output back to the achieving input.
    ComplexMatrix zeta_f = f * phi;
    zeta_f *= complexd(1.0 / vec_norm(zeta_f));
    std::vector<ComplexMatrix> basis = {zeta_f};
    for (int k = 0; k < d && static_cast<int>(basis.size()) < d; ++k) {
        ComplexMatrix v = ComplexMatrix::basis_ket(d, k);
        for (const auto& b : basis) {
            ComplexMatrix overlap = inner(b, v) * b;
            v -= overlap;
        }
        const double norm = vec_norm(v);
        if (norm > 1e-6) basis.push_back(complexd(1.0 / norm) * v);
    }
    std::vector<ComplexMatrix> ops;
    std::vector<complexd> amps;
    for (size_t k = 0; k < basis.size(); ++k) {
        ops.push_back(outer(phi, basis[k]));
        amps.push_back(k == 0 ? complexd(1.0) : complexd(0.0));
    }
    report.suggested_repeater = VacuumExtension(KrausChannel(d, d, std::move(ops)), std::move(amps));
    return report;
}

namespace detail {

// Orthogonal companion ket with its first nonvanishing component made real
// and positive.
inline ComplexMatrix oriented_perp(const ComplexMatrix& v) {
    ComplexMatrix w = perp(v);
    for (int r = 0; r < w.rows(); ++r) {
        const double mag = std::abs(w(r, 0));
        if (mag > 1e-12) {
            w *= std::conj(w(r, 0)) / mag;
            break;
        }
    }
    return w;
}

}  // namespace detail

// Unitary repeater rotating the dephasing basis of one link into the next:
// maps `from` to `to` and the orthogonal companion accordingly, with the full
// weight on the occupied branch.
inline VacuumExtension synthesize_variable_repeater(const ComplexMatrix& from,
                                                    const ComplexMatrix& to) {
    detail::require_unit_ket(from, "synthesize_variable_repeater: from");
    detail::require_unit_ket(to, "synthesize_variable_repeater: to");
    ComplexMatrix g = outer(to, from) + outer(detail::oriented_perp(to), detail::oriented_perp(from));
    return VacuumExtension(KrausChannel(2, 2, {g}), {complexd(1.0)});
}

// Output of an arbitrarily long superposed chain of basis-rotating dephasing
// links stitched by matched repeaters: the message settles onto the final
// basis state while the control keeps the overlap of the input with the first
// basis state as path parity weights.
inline ComplexMatrix variable_chain_limit(const std::vector<ComplexMatrix>& etas,
                                          const std::vector<double>& ps,
                                          const ComplexMatrix& rho) {
    if (etas.empty()) throw EmptyChain("variable_chain_limit: no links");
    if (etas.size() != ps.size())
        throw DimensionMismatch("variable_chain_limit: one dephasing strength per link");
    for (const auto& eta : etas) detail::require_unit_ket(eta, "variable_chain_limit: eta");
    for (double p : ps)
        if (!(p > 0.0 && p <= 1.0))
            throw ProbabilityRange("variable_chain_limit: link strengths must be in (0, 1]");
    if (rho.rows() != 2 || rho.cols() != 2 || !all_finite(rho) || hermiticity_gap(rho) > 1e-8 ||
        std::abs(rho.trace() - complexd(1.0)) > 1e-8)
        throw NotDensityMatrix("variable_chain_limit: input is not a qubit density matrix");

    const ComplexMatrix& first = etas.front();
    const ComplexMatrix& last = etas.back();
    const double overlap = std::real(inner(first, rho * first));
    ComplexMatrix path(2, 2);
    path(0, 0) = path(1, 1) = 0.5;
    path(0, 1) = path(1, 0) = overlap / 2.0;
    return kron(outer(last, last), path);
}

}  // namespace supchan
