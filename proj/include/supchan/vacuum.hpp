#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "complex_matrix.hpp"
#include "eig.hpp"
#include "errors.hpp"
#include "kraus.hpp"

namespace supchan {

// Vacuum extension of a channel: each Kraus operator E_i is extended to
// E_i + alpha_i |vac><vac| on the one-larger space, with sum |alpha_i|^2 = 1.
// Stored as the bare channel plus the amplitude list; the extended operators
// are reconstructed on demand.  The vacuum interference operator
// F = sum_i conj(alpha_i) E_i always satisfies sigma_max(F) <= 1.
class VacuumExtension {
public:
    VacuumExtension(KrausChannel channel, std::vector<complexd> amplitudes)
        : channel_(std::move(channel)), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != channel_.kraus().size())
            throw DimensionMismatch("VacuumExtension: one amplitude per Kraus operator");
        double total = 0.0;
        for (const auto& a : amplitudes_) total += std::norm(a);
        if (std::abs(total - 1.0) > 1e-9)
            throw NotNormalized("VacuumExtension: vacuum amplitudes are not normalized");
    }

    const KrausChannel& channel() const { return channel_; }
    const std::vector<complexd>& amplitudes() const { return amplitudes_; }

    // E_i + alpha_i |vac><vac|, the vacuum slot appended as the last basis
    // state on both sides.
    ComplexMatrix extended_kraus(size_t i) const {
        const ComplexMatrix& e = channel_.kraus()[i];
        ComplexMatrix ext(e.rows() + 1, e.cols() + 1);
        for (int r = 0; r < e.rows(); ++r)
            for (int c = 0; c < e.cols(); ++c) ext(r, c) = e(r, c);
        ext(e.rows(), e.cols()) = amplitudes_[i];
        return ext;
    }

private:
    KrausChannel channel_;
    std::vector<complexd> amplitudes_;
};

inline ComplexMatrix vacuum_interference(const VacuumExtension& ext) {
    ComplexMatrix f(ext.channel().dim_out(), ext.channel().dim_in());
    for (size_t i = 0; i < ext.amplitudes().size(); ++i) {
        ComplexMatrix term = ext.channel().kraus()[i];
        term *= std::conj(ext.amplitudes()[i]);
        f += term;
    }
    return f;
}

namespace detail {

inline void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw ProbabilityRange(std::string(what) + " outside [0,1]");
}

inline void require_unit_ket(const ComplexMatrix& v, const char* what) {
    if (v.cols() != 1 || v.rows() != 2)
        throw NotUnitVector(std::string(what) + " is not a qubit ket");
    if (std::abs(vec_norm(v) - 1.0) > 1e-10)
        throw NotUnitVector(std::string(what) + " is not normalized");
}

// Assemble an extension, dropping operators whose channel part and vacuum
// amplitude are both exactly zero (degenerate parameter values).
inline VacuumExtension make_extension(int dim_in, int dim_out,
                                      std::vector<std::pair<ComplexMatrix, complexd>> ops) {
    std::vector<ComplexMatrix> kraus;
    std::vector<complexd> amps;
    for (auto& [e, a] : ops) {
        if (max_abs(e) == 0.0 && a == complexd(0.0)) continue;
        kraus.push_back(std::move(e));
        amps.push_back(a);
    }
    return VacuumExtension(KrausChannel(dim_in, dim_out, std::move(kraus)), std::move(amps));
}

}  // namespace detail

// rho -> p |0><0| + (1-p) diag(rho).  Minimal Kraus set.
inline KrausChannel z_channel(double p) {
    detail::require_probability(p, "z_channel: p");
    const ComplexMatrix p00 = outer(ComplexMatrix::basis_ket(2, 0), ComplexMatrix::basis_ket(2, 0));
    const ComplexMatrix p11 = outer(ComplexMatrix::basis_ket(2, 1), ComplexMatrix::basis_ket(2, 1));
    const ComplexMatrix e01 = outer(ComplexMatrix::basis_ket(2, 0), ComplexMatrix::basis_ket(2, 1));
    std::vector<ComplexMatrix> ops;
    ops.push_back(p00);
    if (p > 0.0) ops.push_back(complexd(std::sqrt(p)) * e01);
    if (p < 1.0) ops.push_back(complexd(std::sqrt(1.0 - p)) * p11);
    return KrausChannel(2, 2, std::move(ops));
}

// Photonic realization of the Z channel: the erased branch re-emits |0>, and
// the vacuum rides along the two no-jump operators.  F = |0><0| for every p.
inline VacuumExtension physical_z_extension(double p) {
    detail::require_probability(p, "physical_z_extension: p");
    const ComplexMatrix k0 = ComplexMatrix::basis_ket(2, 0);
    const ComplexMatrix k1 = ComplexMatrix::basis_ket(2, 1);
    const double sp = std::sqrt(p), sq = std::sqrt(1.0 - p);
    std::vector<std::pair<ComplexMatrix, complexd>> ops;
    ops.emplace_back(complexd(sp) * outer(k0, k0), complexd(sp));
    ops.emplace_back(complexd(sp) * outer(k0, k1), complexd(0.0));
    ops.emplace_back(complexd(sq) * outer(k0, k0), complexd(sq));
    ops.emplace_back(complexd(sq) * outer(k1, k1), complexd(0.0));
    return detail::make_extension(2, 2, std::move(ops));
}

struct BinaryAsymmetricParams {
    double q = 0.0;  // 0 -> 1 flip probability
    double p = 0.0;  // 1 -> 0 flip probability

    BinaryAsymmetricParams(double q_, double p_) : q(q_), p(p_) {
        detail::require_probability(q, "BinaryAsymmetricParams: q");
        detail::require_probability(p, "BinaryAsymmetricParams: p");
        if (p + q > 1.0 + 1e-12)
            throw ProbabilityRange("BinaryAsymmetricParams: p + q exceeds 1");
    }
};

// Three-branch dilation of the binary asymmetric channel (flip probabilities
// q for 0->1 and p for 1->0), with the vacuum weight split as (p, q, 1-p-q).
// F = (1-q) |0><0|.
inline VacuumExtension bac_extension(double q, double p) {
    BinaryAsymmetricParams params(q, p);
    const ComplexMatrix k0 = ComplexMatrix::basis_ket(2, 0);
    const ComplexMatrix k1 = ComplexMatrix::basis_ket(2, 1);
    const double sp = std::sqrt(params.p);
    const double sq = std::sqrt(params.q);
    const double sr = std::sqrt(std::max(0.0, 1.0 - params.p - params.q));
    std::vector<std::pair<ComplexMatrix, complexd>> ops;
    ops.emplace_back(complexd(sp) * outer(k0, k0), complexd(sp));
    ops.emplace_back(complexd(sp) * outer(k0, k1), complexd(0.0));
    ops.emplace_back(complexd(sq) * outer(k1, k0), complexd(0.0));
    ops.emplace_back(complexd(sq) * outer(k1, k1), complexd(0.0));
    ops.emplace_back(ComplexMatrix(2, 2), complexd(sq));  // vacuum-only branch
    ops.emplace_back(complexd(sr) * outer(k0, k0), complexd(sr));
    ops.emplace_back(complexd(sr) * outer(k1, k1), complexd(0.0));
    return detail::make_extension(2, 2, std::move(ops));
}

// Unitary change of basis sending |0> to eta (and |1> to the orthogonal
// companion).
inline ComplexMatrix basis_unitary(const ComplexMatrix& eta) {
    detail::require_unit_ket(eta, "basis_unitary: eta");
    ComplexMatrix etp = perp(eta);
    ComplexMatrix w(2, 2);
    for (int i = 0; i < 2; ++i) {
        w(i, 0) = eta(i, 0);
        w(i, 1) = etp(i, 0);
    }
    return w;
}

inline VacuumExtension conjugate_extension(const VacuumExtension& ext, const ComplexMatrix& w) {
    std::vector<ComplexMatrix> ops;
    for (const auto& e : ext.channel().kraus()) ops.push_back(w * e * w.dagger());
    return VacuumExtension(KrausChannel(ext.channel().dim_in(), ext.channel().dim_out(), std::move(ops)),
                           ext.amplitudes());
}

// Z channel dephasing in the basis {eta, eta_perp}:
// rho -> p |eta><eta| + (1-p) (diagonal of rho in that basis).
inline KrausChannel variable_basis_z(double p, const ComplexMatrix& eta) {
    detail::require_probability(p, "variable_basis_z: p");
    ComplexMatrix w = basis_unitary(eta);
    KrausChannel z = z_channel(p);
    std::vector<ComplexMatrix> ops;
    for (const auto& e : z.kraus()) ops.push_back(w * e * w.dagger());
    return KrausChannel(2, 2, std::move(ops));
}

// Companion vacuum extension of variable_basis_z; F = |eta><eta|.
inline VacuumExtension variable_basis_z_extension(double p, const ComplexMatrix& eta) {
    detail::require_probability(p, "variable_basis_z_extension: p");
    return conjugate_extension(physical_z_extension(p), basis_unitary(eta));
}

namespace detail {

inline void require_amplitude_pair(complexd a0, complexd a1, const char* what) {
    if (std::abs(std::norm(a0) + std::norm(a1) - 1.0) > 1e-10)
        throw NotNormalized(std::string(what) + ": |alpha_0|^2 + |alpha_1|^2 must be 1");
}

}  // namespace detail

// Reset-to-|0> channel with steerable vacuum amplitudes (alpha_0, alpha_1);
// the bare channel is the Z channel at p = 1 while F = |0><alpha| keeps a
// unit singular value for every amplitude pair.  JSON kind "appendix_b".
inline VacuumExtension reset_extension(complexd alpha0, complexd alpha1) {
    detail::require_amplitude_pair(alpha0, alpha1, "reset_extension");
    const ComplexMatrix k0 = ComplexMatrix::basis_ket(2, 0);
    const ComplexMatrix k1 = ComplexMatrix::basis_ket(2, 1);
    std::vector<ComplexMatrix> ops = {outer(k0, k0), outer(k0, k1)};
    return VacuumExtension(KrausChannel(2, 2, std::move(ops)), {alpha0, alpha1});
}

// Repeater matched to reset_extension(alpha): re-encodes the computational
// basis into {|alpha>, |alpha_perp>}, so G = |alpha><0| and G F has a unit
// eigenvalue.
inline VacuumExtension matched_repeater(complexd alpha0, complexd alpha1) {
    detail::require_amplitude_pair(alpha0, alpha1, "matched_repeater");
    ComplexMatrix alpha = ComplexMatrix::column({alpha0, alpha1});
    ComplexMatrix alpha_perp = perp(alpha);
    const ComplexMatrix k0 = ComplexMatrix::basis_ket(2, 0);
    const ComplexMatrix k1 = ComplexMatrix::basis_ket(2, 1);
    std::vector<ComplexMatrix> ops = {outer(alpha, k0), outer(alpha_perp, k1)};
    return VacuumExtension(KrausChannel(2, 2, std::move(ops)), {complexd(1.0), complexd(0.0)});
}

inline VacuumExtension identity_extension(int dim) {
    return VacuumExtension(identity_channel(dim), {complexd(1.0)});
}

// outer after inner.  Kraus operators and vacuum amplitudes both multiply,
// so vacuum_interference factors: F = F_outer F_inner.
inline VacuumExtension compose_extensions(const VacuumExtension& outer,
                                          const VacuumExtension& inner) {
    if (outer.channel().dim_in() != inner.channel().dim_out())
        throw DimensionMismatch("compose_extensions: dimensions do not chain");
    std::vector<ComplexMatrix> ops;
    std::vector<complexd> amps;
    for (size_t j = 0; j < outer.channel().kraus().size(); ++j)
        for (size_t i = 0; i < inner.channel().kraus().size(); ++i) {
            ops.push_back(outer.channel().kraus()[j] * inner.channel().kraus()[i]);
            amps.push_back(outer.amplitudes()[j] * inner.amplitudes()[i]);
        }
    return VacuumExtension(
        KrausChannel(inner.channel().dim_in(), outer.channel().dim_out(), std::move(ops)),
        std::move(amps));
}

}  // namespace supchan
