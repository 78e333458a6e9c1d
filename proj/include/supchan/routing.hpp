#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "supchan/eig.hpp"
#include "supchan/vacuum.hpp"

namespace supchan {

// One arm of a routed transmission: accumulated channel action, accumulated
// vacuum interference operator, and the number of channel links traversed.
struct Branch {
    KrausChannel channel;
    ComplexMatrix f_op;
    int links = 1;
};

// Chain of channels stitched together by repeaters, traversed as one arm.
// Exactly one repeater sits between consecutive channels.  dephase_s is the
// per-link dephasing probability felt by the which-path qubit.
struct RouteSpec {
    std::vector<VacuumExtension> channels;
    std::vector<VacuumExtension> repeaters;
    double dephase_s = 0.0;
};

// Coherence survival factor of the which-path qubit after `links` links, each
// dephasing independently with probability s.
inline double gamma_factor(double s, int links) {
    if (!(s >= 0.0 && s <= 0.5)) throw ProbabilityRange("gamma_factor: s outside [0, 1/2]");
    if (links < 1) throw EmptyChain("gamma_factor: links must be positive");
    return std::pow(1.0 - 2.0 * s, links);
}

inline Branch compose_branch(const RouteSpec& route) {
    if (route.channels.empty()) throw EmptyChain("compose_branch: no channels");
    if (route.repeaters.size() + 1 != route.channels.size())
        throw DimensionMismatch("compose_branch: need one repeater between consecutive channels");
    if (!(route.dephase_s >= 0.0 && route.dephase_s <= 0.5))
        throw ProbabilityRange("compose_branch: dephase_s outside [0, 1/2]");

    KrausChannel ch = route.channels[0].channel();
    ComplexMatrix f = vacuum_interference(route.channels[0]);
    for (size_t i = 1; i < route.channels.size(); ++i) {
        const VacuumExtension& rep = route.repeaters[i - 1];
        ch = compress_kraus(compose(rep.channel(), ch));
        f = vacuum_interference(rep) * f;
        ch = compress_kraus(compose(route.channels[i].channel(), ch));
        f = vacuum_interference(route.channels[i]) * f;
    }
    return Branch{std::move(ch), std::move(f), static_cast<int>(route.channels.size())};
}

inline Branch branch_from_extension(const VacuumExtension& ext) {
    return Branch{ext.channel(), vacuum_interference(ext), 1};
}

// Initial state of the which-path control qubit.
class PathState {
public:
    explicit PathState(ComplexMatrix omega) : omega_(std::move(omega)) {
        if (omega_.rows() != 2 || omega_.cols() != 2)
            throw NotDensityMatrix("path state must be a qubit density matrix");
        if (!all_finite(omega_) || hermiticity_gap(omega_) > 1e-10)
            throw NotDensityMatrix("path state must be hermitian");
        if (std::abs(omega_.trace() - complexd(1.0)) > 1e-10)
            throw NotDensityMatrix("path state must have unit trace");
        HermitianEigenSystem es = hermitian_eig(omega_);
        for (double v : es.values)
            if (v < -1e-10) throw NotDensityMatrix("path state must be positive semidefinite");
    }

    static PathState plus() {
        ComplexMatrix m(2, 2);
        m(0, 0) = m(0, 1) = m(1, 0) = m(1, 1) = 0.5;
        return PathState(m);
    }

    const ComplexMatrix& matrix() const { return omega_; }

private:
    ComplexMatrix omega_;
};

namespace detail {

// Kraus set and vacuum amplitudes jointly reproducing a branch's channel
// action and interference operator.  Works on the Choi-orthogonal operators
// from compress_kraus, where the amplitude of each operator is read off by
// projection; any interference weight the channel operators cannot carry
// rides on an appended zero operator, so the amplitudes stay normalized.
struct MatchedExtension {
    std::vector<ComplexMatrix> kraus;
    std::vector<complexd> amps;
};

inline MatchedExtension match_amplitudes(const Branch& b) {
    KrausChannel slim = compress_kraus(b.channel);
    ComplexMatrix fvec = vec_op(b.f_op);
    MatchedExtension m;
    double used = 0.0;
    for (const auto& e : slim.kraus()) {
        ComplexMatrix w = vec_op(e);
        double lambda = std::real(inner(w, w));
        complexd c = inner(w, fvec) / lambda;
        m.kraus.push_back(e);
        m.amps.push_back(std::conj(c));
        used += std::norm(c);
    }
    if (used > 1.0 + 1e-6)
        throw NotNormalized("interference operator is too large for its channel");
    double residual = 1.0 - used;
    if (residual > 1e-12) {
        m.kraus.push_back(ComplexMatrix(b.channel.dim_out(), b.channel.dim_in()));
        m.amps.push_back(complexd(std::sqrt(residual)));
    }
    return m;
}

}  // namespace detail

// Routes the message through two arms in superposition, steered by a control
// qubit in state omega: arm 1 acts when the control reads 0, arm 2 when it
// reads 1.  The output carries message and control together (row index
// m * 2 + path).  gamma scales the surviving path coherence; gamma = 1 keeps
// it fully, gamma = 0 reduces the control to a classical coin.
inline KrausChannel superpose(const Branch& b1, const Branch& b2, const PathState& omega,
                              double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw GammaRange("superpose: gamma outside [0, 1]");
    if (b1.channel.dim_in() != b2.channel.dim_in() || b1.channel.dim_out() != b2.channel.dim_out())
        throw DimensionMismatch("superpose: branch dimensions differ");
    const int din = b1.channel.dim_in();
    const int dout = b1.channel.dim_out();

    detail::MatchedExtension m1 = detail::match_amplitudes(b1);
    detail::MatchedExtension m2 = detail::match_amplitudes(b2);

    HermitianEigenSystem es = hermitian_eig(omega.matrix());
    const double sprime = (1.0 - gamma) / 2.0;

    std::vector<ComplexMatrix> ops;
    for (int k = 0; k < 2; ++k) {
        if (es.values[k] <= 1e-15) continue;
        const double sw = std::sqrt(es.values[k]);
        const complexd chi0 = es.vectors(0, k);
        const complexd chi1 = es.vectors(1, k);
        for (size_t i = 0; i < m1.kraus.size(); ++i)
            for (size_t j = 0; j < m2.kraus.size(); ++j) {
                const complexd w0 = sw * chi0 * m2.amps[j];
                const complexd w1 = sw * chi1 * m1.amps[i];
                ComplexMatrix s(dout * 2, din);
                double mass = 0.0;
                for (int r = 0; r < dout; ++r)
                    for (int c = 0; c < din; ++c) {
                        s(r * 2 + 0, c) = w0 * m1.kraus[i](r, c);
                        s(r * 2 + 1, c) = w1 * m2.kraus[j](r, c);
                        mass += std::norm(s(r * 2, c)) + std::norm(s(r * 2 + 1, c));
                    }
                if (mass == 0.0) continue;
                if (sprime == 0.0) {
                    ops.push_back(std::move(s));
                    continue;
                }
                ComplexMatrix flipped = s;
                for (int r = 0; r < dout; ++r)
                    for (int c = 0; c < din; ++c) flipped(r * 2 + 1, c) = -flipped(r * 2 + 1, c);
                ops.push_back(complexd(std::sqrt(1.0 - sprime)) * s);
                ops.push_back(complexd(std::sqrt(sprime)) * flipped);
            }
    }
    return compress_kraus(KrausChannel(din, dout * 2, std::move(ops)));
}

// Limit of routing ever longer chains of one fixed extension along both arms
// with an even control.  The message register settles onto the channel fixed
// point while the interference term survives as P rho P, with P the projector
// onto the invariant subspace of the interference operator.
inline ComplexMatrix asymptotic_superposition(const VacuumExtension& ext, const ComplexMatrix& rho) {
    const KrausChannel& ch = ext.channel();
    if (ch.dim_in() != ch.dim_out())
        throw DimensionMismatch("asymptotic_superposition: channel must be square");
    const int d = ch.dim_in();
    if (rho.rows() != d || rho.cols() != d)
        throw DimensionMismatch("asymptotic_superposition: state dimension mismatch");
    if (!all_finite(rho) || hermiticity_gap(rho) > 1e-8 ||
        std::abs(rho.trace() - complexd(1.0)) > 1e-8)
        throw NotDensityMatrix("asymptotic_superposition: input is not a density matrix");
    {
        HermitianEigenSystem es = hermitian_eig(rho);
        for (double v : es.values)
            if (v < -1e-10) throw NotDensityMatrix("asymptotic_superposition: input is not psd");
    }

    ComplexMatrix f = vacuum_interference(ext);
    if (sigma_max(f) < 1.0 - 1e-6)
        throw NoUnitEigenvalue("interference operator has no unit singular value");

    // Projector onto the invariant subspace, from the null space of F - I.
    ComplexMatrix shifted = f;
    shifted -= ComplexMatrix::identity(d);
    HermitianEigenSystem null_es = hermitian_eig(shifted.dagger() * shifted);
    ComplexMatrix proj(d, d);
    for (int k = 0; k < d; ++k) {
        if (null_es.values[k] > 1e-12) continue;
        ComplexMatrix v(d, 1);
        for (int r = 0; r < d; ++r) v(r, 0) = null_es.vectors(r, k);
        proj += outer(v, v);
    }

    // Fixed point of the channel, iterated from several starting states; any
    // disagreement between the limits means the fixed point is not unique.
    auto iterate = [&](ComplexMatrix sigma) {
        for (int step = 0; step < 200000; ++step) {
            ComplexMatrix next = apply_channel(ch, sigma);
            if (max_abs_diff(next, sigma) < 1e-13) return next;
            sigma = std::move(next);
        }
        throw NoFixedPoint("channel iteration did not converge");
    };
    ComplexMatrix fixed = iterate(complexd(1.0 / d) * ComplexMatrix::identity(d));
    for (int k = 0; k < d; ++k) {
        ComplexMatrix basis = outer(ComplexMatrix::basis_ket(d, k), ComplexMatrix::basis_ket(d, k));
        if (max_abs_diff(iterate(basis), fixed) > 1e-7)
            throw NoFixedPoint("channel fixed point is not unique");
    }

    ComplexMatrix interference = proj * rho * proj;
    ComplexMatrix block_plus = complexd(0.5) * (fixed + interference);
    ComplexMatrix block_minus = complexd(0.5) * (fixed - interference);
    ComplexMatrix path_plus(2, 2), path_minus(2, 2);
    path_plus(0, 0) = path_plus(0, 1) = path_plus(1, 0) = path_plus(1, 1) = 0.5;
    path_minus(0, 0) = path_minus(1, 1) = 0.5;
    path_minus(0, 1) = path_minus(1, 0) = -0.5;
    return kron(block_plus, path_plus) + kron(block_minus, path_minus);
}

}  // namespace supchan
