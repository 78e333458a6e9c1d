#pragma once

#include <utility>
#include <vector>

#include "complex_matrix.hpp"
#include "eig.hpp"
#include "errors.hpp"

namespace supchan {

// Completely positive trace-preserving map in Kraus form.  Operators are
// dim_out x dim_in; completeness sum_i E_i^dagger E_i = I is enforced at
// construction within 1e-9.
class KrausChannel {
public:
    KrausChannel(int dim_in, int dim_out, std::vector<ComplexMatrix> kraus)
        : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
        if (dim_in_ <= 0 || dim_out_ <= 0)
            throw DimensionMismatch("KrausChannel: non-positive dimension");
        if (kraus_.empty()) throw NotTracePreserving("KrausChannel: empty Kraus list");
        for (const auto& e : kraus_) {
            if (e.rows() != dim_out_ || e.cols() != dim_in_)
                throw DimensionMismatch("KrausChannel: operator shape mismatch");
            if (!all_finite(e)) throw NotTracePreserving("KrausChannel: non-finite operator");
        }
        ComplexMatrix sum(dim_in_, dim_in_);
        for (const auto& e : kraus_) sum += e.dagger() * e;
        if (max_abs_diff(sum, ComplexMatrix::identity(dim_in_)) > 1e-9)
            throw NotTracePreserving("KrausChannel: Kraus operators do not resolve the identity");
    }

    int dim_in() const { return dim_in_; }
    int dim_out() const { return dim_out_; }
    const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

private:
    int dim_in_;
    int dim_out_;
    std::vector<ComplexMatrix> kraus_;
};

inline ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& rho) {
    if (rho.rows() != ch.dim_in() || rho.cols() != ch.dim_in())
        throw DimensionMismatch("apply_channel: state dimension mismatch");
    ComplexMatrix out(ch.dim_out(), ch.dim_out());
    for (const auto& e : ch.kraus()) out += e * rho * e.dagger();
    return out;
}

// outer after inner (Kraus products).
inline KrausChannel compose(const KrausChannel& outer, const KrausChannel& inner) {
    if (outer.dim_in() != inner.dim_out())
        throw DimensionMismatch("compose: channel dimensions do not chain");
    std::vector<ComplexMatrix> ops;
    ops.reserve(outer.kraus().size() * inner.kraus().size());
    for (const auto& o : outer.kraus())
        for (const auto& i : inner.kraus()) ops.push_back(o * i);
    return KrausChannel(inner.dim_in(), outer.dim_out(), std::move(ops));
}

inline KrausChannel identity_channel(int dim) {
    return KrausChannel(dim, dim, {ComplexMatrix::identity(dim)});
}

namespace detail {

// Row-major vectorization: entry (m, n) of a dim_out x dim_in operator sits
// at index m * dim_in + n.
inline ComplexMatrix vec_op(const ComplexMatrix& e) {
    ComplexMatrix v(e.rows() * e.cols(), 1);
    for (int m = 0; m < e.rows(); ++m)
        for (int n = 0; n < e.cols(); ++n) v(m * e.cols() + n, 0) = e(m, n);
    return v;
}

inline ComplexMatrix unvec_op(const ComplexMatrix& v, int dim_out, int dim_in) {
    ComplexMatrix e(dim_out, dim_in);
    for (int m = 0; m < dim_out; ++m)
        for (int n = 0; n < dim_in; ++n) e(m, n) = v(m * dim_in + n, 0);
    return e;
}

}  // namespace detail

// Choi matrix sum_a vec(E_a) vec(E_a)^dagger; Hermitian PSD with
// trace = dim_in, and identical for all Kraus representations of a channel.
inline ComplexMatrix choi_matrix(const KrausChannel& ch) {
    const int d = ch.dim_in() * ch.dim_out();
    ComplexMatrix j(d, d);
    for (const auto& e : ch.kraus()) {
        ComplexMatrix v = detail::vec_op(e);
        j += v * v.dagger();
    }
    return j;
}

inline double choi_distance(const KrausChannel& a, const KrausChannel& b) {
    return max_abs_diff(choi_matrix(a), choi_matrix(b));
}

// Minimal Kraus representation via Choi eigendecomposition.  Eigenvalues
// <= 1e-12 are dropped; at most rank_cap operators are kept (default
// dim_in * dim_out, the maximum possible rank).  The result reproduces the
// input Choi matrix within 1e-9.
inline KrausChannel compress_kraus(const KrausChannel& ch, int rank_cap = 0) {
    if (rank_cap <= 0) rank_cap = ch.dim_in() * ch.dim_out();
    HermitianEigenSystem es = hermitian_eig(choi_matrix(ch));
    const int d = static_cast<int>(es.values.size());
    std::vector<ComplexMatrix> ops;
    for (int k = d - 1; k >= 0 && static_cast<int>(ops.size()) < rank_cap; --k) {
        const double lambda = es.values[k];
        if (lambda <= 1e-12) break;
        ComplexMatrix v(d, 1);
        for (int i = 0; i < d; ++i) v(i, 0) = es.vectors(i, k);
        v *= complexd(std::sqrt(lambda));
        ops.push_back(detail::unvec_op(v, ch.dim_out(), ch.dim_in()));
    }
    return KrausChannel(ch.dim_in(), ch.dim_out(), std::move(ops));
}

}  // namespace supchan
