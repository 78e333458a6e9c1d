#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "supchan/entropy.hpp"
#include "supchan/kraus.hpp"
#include "supchan/vacuum.hpp"

namespace supchan {

struct Ensemble {
    std::vector<double> probs;
    std::vector<ComplexMatrix> states;
};

enum class BoundKind { analytic_exact, holevo_lower, blahut_arimoto };

struct CapacityBound {
    double value = 0.0;
    BoundKind kind = BoundKind::holevo_lower;
    std::optional<Ensemble> witness;
};

// chi = S(sum_x p_x E(rho_x)) - sum_x p_x S(E(rho_x)), in bits.
template <typename Apply>
double holevo_information(Apply&& apply, const Ensemble& ens) {
    if (ens.probs.empty() || ens.probs.size() != ens.states.size())
        throw DimensionMismatch("holevo_information: ensemble sizes mismatch");
    double total = 0.0;
    for (double p : ens.probs) {
        if (!(p >= 0.0 && p <= 1.0))
            throw ProbabilityRange("holevo_information: probability outside [0, 1]");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw ProbabilityRange("holevo_information: probabilities do not sum to 1");

    ComplexMatrix first = apply(ens.states[0]);
    ComplexMatrix avg(first.rows(), first.cols());
    double conditional = 0.0;
    for (size_t i = 0; i < ens.probs.size(); ++i) {
        ComplexMatrix out = (i == 0) ? std::move(first) : apply(ens.states[i]);
        conditional += ens.probs[i] * von_neumann_entropy(out);
        avg += complexd(ens.probs[i]) * out;
    }
    return von_neumann_entropy(avg) - conditional;
}

namespace detail {

inline ComplexMatrix pure_qubit(double theta, double phi) {
    ComplexMatrix v(2, 1);
    v(0, 0) = std::cos(theta / 2.0);
    v(1, 0) = std::polar(std::sin(theta / 2.0), phi);
    return v;
}

// Channel action tabulated on four density matrices whose affine span covers
// every qubit state (synthesis coefficients sum to 1), so the table also
// reproduces maps with a constant part.
struct QubitMapTable {
    ComplexMatrix o00, o11, ox, oy;

    ComplexMatrix operator()(const ComplexMatrix& rho) const {
        const double c = 2.0 * std::real(rho(0, 1));
        const double d = -2.0 * std::imag(rho(0, 1));
        const double a = std::real(rho(0, 0)) - (c + d) / 2.0;
        const double b = std::real(rho(1, 1)) - (c + d) / 2.0;
        return complexd(a) * o00 + complexd(b) * o11 + complexd(c) * ox + complexd(d) * oy;
    }
};

template <typename Apply>
QubitMapTable tabulate_qubit_map(Apply&& apply) {
    ComplexMatrix e00(2, 2), e11(2, 2), px(2, 2), py(2, 2);
    e00(0, 0) = 1.0;
    e11(1, 1) = 1.0;
    px(0, 0) = px(0, 1) = px(1, 0) = px(1, 1) = 0.5;
    py(0, 0) = py(1, 1) = 0.5;
    py(0, 1) = complexd(0.0, -0.5);
    py(1, 0) = complexd(0.0, 0.5);
    return QubitMapTable{apply(e00), apply(e11), apply(px), apply(py)};
}

// Deterministic downhill-simplex maximizer in three variables.
template <typename F>
std::pair<std::array<double, 3>, double> simplex_max(F&& f, std::array<double, 3> start,
                                                     std::array<double, 3> step) {
    std::array<std::array<double, 3>, 4> xs;
    std::array<double, 4> fs;
    xs[0] = start;
    for (int i = 0; i < 3; ++i) {
        xs[i + 1] = start;
        xs[i + 1][i] += step[i];
    }
    for (int i = 0; i < 4; ++i) fs[i] = f(xs[i]);

    for (int iter = 0; iter < 600; ++iter) {
        std::array<int, 4> ord = {0, 1, 2, 3};
        std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fs[a] > fs[b]; });
        std::array<std::array<double, 3>, 4> nx;
        std::array<double, 4> nf;
        for (int i = 0; i < 4; ++i) {
            nx[i] = xs[ord[i]];
            nf[i] = fs[ord[i]];
        }
        xs = nx;
        fs = nf;

        double spread = 0.0;
        for (int i = 0; i < 3; ++i)
            spread = std::max(spread, std::abs(xs[3][i] - xs[0][i]) + std::abs(xs[1][i] - xs[0][i]) +
                                          std::abs(xs[2][i] - xs[0][i]));
        if (fs[0] - fs[3] < 1e-12 && spread < 1e-9) break;

        std::array<double, 3> centroid = {0, 0, 0};
        for (int i = 0; i < 3; ++i)
            centroid[i] = (xs[0][i] + xs[1][i] + xs[2][i]) / 3.0;
        auto blend = [&](double t) {
            std::array<double, 3> x;
            for (int i = 0; i < 3; ++i) x[i] = centroid[i] + t * (xs[3][i] - centroid[i]);
            return x;
        };

        std::array<double, 3> xr = blend(-1.0);
        double fr = f(xr);
        if (fr > fs[0]) {
            std::array<double, 3> xe = blend(-2.0);
            double fe = f(xe);
            if (fe > fr) {
                xs[3] = xe;
                fs[3] = fe;
            } else {
                xs[3] = xr;
                fs[3] = fr;
            }
        } else if (fr > fs[2]) {
            xs[3] = xr;
            fs[3] = fr;
        } else {
            std::array<double, 3> xc = blend(0.5);
            double fc = f(xc);
            if (fc > fs[3]) {
                xs[3] = xc;
                fs[3] = fc;
            } else {
                for (int i = 1; i < 4; ++i) {
                    for (int k = 0; k < 3; ++k) xs[i][k] = xs[0][k] + 0.5 * (xs[i][k] - xs[0][k]);
                    fs[i] = f(xs[i]);
                }
            }
        }
    }
    std::array<int, 4> ord = {0, 1, 2, 3};
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return fs[a] > fs[b]; });
    return {xs[ord[0]], fs[ord[0]]};
}

}  // namespace detail

// Best Holevo information over ensembles of two orthogonal pure qubit inputs:
// a coarse scan over the Bloch direction and the prior weight, then a simplex
// refinement.  Declared accuracy 1e-6.  The map may be affine, as long as it
// sends density matrices to density matrices.
template <typename Apply>
    requires(!std::same_as<std::remove_cvref_t<Apply>, KrausChannel>)
CapacityBound two_state_lower_bound(Apply&& apply) {
    detail::QubitMapTable table = detail::tabulate_qubit_map(apply);

    auto pair_outputs = [&](double theta, double phi) {
        ComplexMatrix v = detail::pure_qubit(theta, phi);
        ComplexMatrix w = perp(v);
        return std::pair<ComplexMatrix, ComplexMatrix>(table(outer(v, v)), table(outer(w, w)));
    };
    auto mixed_value = [&](const ComplexMatrix& o0, const ComplexMatrix& o1, double s0, double s1,
                           double lam) {
        ComplexMatrix avg = complexd(lam) * o0 + complexd(1.0 - lam) * o1;
        return detail::entropy_bits_unchecked(avg) - lam * s0 - (1.0 - lam) * s1;
    };

    constexpr double pi = std::numbers::pi;
    double best = -1.0, best_theta = 0.0, best_phi = 0.0, best_lam = 0.5;
    for (int it = 0; it < 32; ++it) {
        const double theta = pi * it / 31.0;
        for (int ip = 0; ip < 32; ++ip) {
            const double phi = 2.0 * pi * ip / 32.0;
            auto [o0, o1] = pair_outputs(theta, phi);
            const double s0 = detail::entropy_bits_unchecked(o0);
            const double s1 = detail::entropy_bits_unchecked(o1);
            for (int il = 0; il <= 16; ++il) {
                const double lam = il / 16.0;
                const double v = mixed_value(o0, o1, s0, s1, lam);
                if (v > best) {
                    best = v;
                    best_theta = theta;
                    best_phi = phi;
                    best_lam = lam;
                }
            }
        }
    }

    auto objective = [&](const std::array<double, 3>& x) {
        if (x[2] < 0.0 || x[2] > 1.0) return -1e9;
        auto [o0, o1] = pair_outputs(x[0], x[1]);
        return mixed_value(o0, o1, detail::entropy_bits_unchecked(o0),
                           detail::entropy_bits_unchecked(o1), x[2]);
    };
    std::array<double, 3> start = {best_theta, best_phi, best_lam};
    std::array<double, 3> step = {pi / 31.0, 2.0 * pi / 32.0, best_lam > 0.5 ? -1.0 / 16.0 : 1.0 / 16.0};
    auto [arg, refined] = detail::simplex_max(objective, start, step);

    double lam = std::clamp(arg[2], 0.0, 1.0);
    ComplexMatrix v = detail::pure_qubit(arg[0], arg[1]);
    ComplexMatrix w = perp(v);
    Ensemble witness{{lam, 1.0 - lam}, {outer(v, v), outer(w, w)}};
    return CapacityBound{std::max(best, refined), BoundKind::holevo_lower, std::move(witness)};
}

inline CapacityBound two_state_lower_bound(const KrausChannel& ch) {
    if (ch.dim_in() != 2) throw DimensionMismatch("two_state_lower_bound: qubit input expected");
    return two_state_lower_bound([&](const ComplexMatrix& rho) { return apply_channel(ch, rho); });
}

// Capacity of the channel keeping 0 intact and flipping 1 to 0 with
// probability p.
inline double z_capacity(double p) {
    detail::require_probability(p, "z_capacity: p");
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;
    return std::log2(1.0 + (1.0 - p) * std::pow(p, p / (1.0 - p)));
}

// Capacity of the binary channel flipping 0 with probability q and 1 with
// probability p.  Closed form via the optimal output distribution.
inline double bac_capacity(double q, double p) {
    detail::require_probability(q, "bac_capacity: q");
    detail::require_probability(p, "bac_capacity: p");
    const double d = 1.0 - p - q;
    if (std::abs(d) < 1e-12) return 0.0;
    const double hp = binary_entropy(p);
    const double hq = binary_entropy(q);
    const double z = std::exp2((hp - hq) / d);
    const double ystar = 1.0 / (1.0 + z);
    const double xstar = (ystar - q) / d;
    return binary_entropy(ystar) - (1.0 - xstar) * hq - xstar * hp;
}

// Flip probabilities of a chain of `links` identical binary channels.
inline BinaryAsymmetricParams effective_bac_params(double q, double p, int links) {
    BinaryAsymmetricParams base(q, p);
    if (links < 1) throw EmptyChain("effective_bac_params: links must be positive");
    const double total = base.q + base.p;
    if (total == 0.0) return BinaryAsymmetricParams(0.0, 0.0);
    const double factor = (1.0 - std::pow(1.0 - total, links)) / total;
    return BinaryAsymmetricParams(base.q * factor, base.p * factor);
}

// Capacity of a discrete memoryless channel given its row-stochastic
// transition matrix, iterated until the bracketing bounds pinch to 1e-10.
inline CapacityBound blahut_arimoto(const std::vector<std::vector<double>>& w) {
    const size_t nx = w.size();
    if (nx == 0) throw NotStochastic("blahut_arimoto: transition matrix is empty");
    const size_t ny = w[0].size();
    if (ny == 0) throw NotStochastic("blahut_arimoto: transition matrix has no outputs");
    for (const auto& row : w) {
        if (row.size() != ny) throw NotStochastic("blahut_arimoto: ragged transition matrix");
        double s = 0.0;
        for (double v : row) {
            if (!(v >= 0.0 && v <= 1.0))
                throw NotStochastic("blahut_arimoto: entries outside [0, 1]");
            s += v;
        }
        if (std::abs(s - 1.0) > 1e-9) throw NotStochastic("blahut_arimoto: rows must sum to 1");
    }

    std::vector<double> p(nx, 1.0 / static_cast<double>(nx));
    std::vector<double> q(ny), d(nx);
    for (int iter = 0; iter < 100000; ++iter) {
        std::fill(q.begin(), q.end(), 0.0);
        for (size_t x = 0; x < nx; ++x)
            for (size_t y = 0; y < ny; ++y) q[y] += p[x] * w[x][y];
        double upper = 0.0;
        double zsum = 0.0;
        for (size_t x = 0; x < nx; ++x) {
            double acc = 0.0;
            for (size_t y = 0; y < ny; ++y)
                if (w[x][y] > 0.0) acc += w[x][y] * std::log2(w[x][y] / q[y]);
            d[x] = acc;
            upper = std::max(upper, acc);
            zsum += p[x] * std::exp2(acc);
        }
        const double lower = std::log2(zsum);
        if (upper - lower < 1e-10) {
            Ensemble witness;
            witness.probs = p;
            for (size_t x = 0; x < nx; ++x) {
                ComplexMatrix e(static_cast<int>(nx), static_cast<int>(nx));
                e(static_cast<int>(x), static_cast<int>(x)) = 1.0;
                witness.states.push_back(std::move(e));
            }
            return CapacityBound{std::max(lower, 0.0), BoundKind::blahut_arimoto,
                                 std::move(witness)};
        }
        for (size_t x = 0; x < nx; ++x) p[x] *= std::exp2(d[x]) / zsum;
    }
    throw NoConvergence("blahut_arimoto: iteration cap reached");
}

}  // namespace supchan
