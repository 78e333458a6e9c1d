#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "supchan/capacity.hpp"
#include "supchan/routing.hpp"

namespace supchan {

// One sweep point.  Unused parameters stay at zero so every experiment fills
// the same columns.
struct SweepRow {
    std::string experiment;
    double p = 0.0;
    double q = 0.0;
    double s = 0.0;
    int n = 0;
    double bound_superposed = 0.0;
    double capacity_classical = 0.0;
    double gap = 0.0;
};

struct Fig4Config {
    double p = 0.5;
    std::vector<double> s_values = {0.0, 0.01, 0.05, 0.1, 0.2, 0.5};
    int n_max = 20;
};

struct Fig5Config {
    double p = 0.5;
    std::vector<double> q_values = {0.0, 0.01, 0.05, 0.1, 0.2};
    int n_max = 20;
};

namespace detail {

// Branches for chains of 1..n_max copies of one extension, compressed as the
// chain grows.
inline std::vector<Branch> chain_branches(const VacuumExtension& ext, int n_max) {
    std::vector<Branch> out;
    KrausChannel acc = ext.channel();
    ComplexMatrix f = vacuum_interference(ext);
    out.push_back(Branch{acc, f, 1});
    for (int n = 2; n <= n_max; ++n) {
        acc = compress_kraus(compose(ext.channel(), acc));
        f = vacuum_interference(ext) * f;
        out.push_back(Branch{acc, f, n});
    }
    return out;
}

inline double superposed_bound(const Branch& b, double gamma) {
    return two_state_lower_bound(superpose(b, b, PathState::plus(), gamma)).value;
}

}  // namespace detail

// Dephasing sweep: chains of one erasing channel routed along both arms, the
// control losing coherence at rate s per link.  The classical reference is
// the bare chain capacity.
inline std::vector<SweepRow> run_fig4(const Fig4Config& cfg) {
    if (cfg.n_max < 1) throw InvalidConfig("fig4: n_max must be positive");
    if (cfg.s_values.empty()) throw InvalidConfig("fig4: s_values must not be empty");
    VacuumExtension ext = physical_z_extension(cfg.p);
    std::vector<Branch> branches = detail::chain_branches(ext, cfg.n_max);

    std::vector<SweepRow> rows;
    for (double s : cfg.s_values)
        for (int n = 1; n <= cfg.n_max; ++n) {
            const double bound = detail::superposed_bound(branches[n - 1], gamma_factor(s, n));
            const double classical = z_capacity(1.0 - std::pow(1.0 - cfg.p, n));
            rows.push_back({"fig4", cfg.p, 0.0, s, n, bound, classical, bound - classical});
        }
    return rows;
}

// Asymmetry sweep: chains of binary asymmetric channels routed with a fully
// coherent control.  The classical reference is the capacity of the composed
// chain, via its effective flip probabilities.
inline std::vector<SweepRow> run_fig5(const Fig5Config& cfg) {
    if (cfg.n_max < 1) throw InvalidConfig("fig5: n_max must be positive");
    if (cfg.q_values.empty()) throw InvalidConfig("fig5: q_values must not be empty");

    std::vector<SweepRow> rows;
    for (double q : cfg.q_values) {
        VacuumExtension ext = bac_extension(q, cfg.p);
        std::vector<Branch> branches = detail::chain_branches(ext, cfg.n_max);
        for (int n = 1; n <= cfg.n_max; ++n) {
            const double bound = detail::superposed_bound(branches[n - 1], 1.0);
            BinaryAsymmetricParams eff = effective_bac_params(q, cfg.p, n);
            const double classical = bac_capacity(eff.q, eff.p);
            rows.push_back({"fig5", cfg.p, q, 0.0, n, bound, classical, bound - classical});
        }
    }
    return rows;
}

// Long-chain limit of one channel per entry.  A channel whose interference
// operator cannot reach norm one has no surviving coherence; that outcome is
// reported in place rather than raised.
struct AsymptoticEntry {
    std::string kind;
    bool ok = false;
    double sigma_max = 0.0;
    double bound_superposed = 0.0;
    double capacity_classical = 0.0;
    std::string error;
};

inline std::vector<AsymptoticEntry> run_asymptotic(
    const std::vector<std::pair<std::string, VacuumExtension>>& channels) {
    std::vector<AsymptoticEntry> entries;
    for (const auto& [kind, ext] : channels) {
        AsymptoticEntry e;
        e.kind = kind;
        e.sigma_max = sigma_max(vacuum_interference(ext));
        try {
            e.bound_superposed =
                two_state_lower_bound(
                    [&](const ComplexMatrix& rho) { return asymptotic_superposition(ext, rho); })
                    .value;
            KrausChannel chain = ext.channel();
            for (int i = 1; i < 30; ++i) chain = compress_kraus(compose(ext.channel(), chain));
            e.capacity_classical = two_state_lower_bound(chain).value;
            e.ok = true;
        } catch (const NoUnitEigenvalue&) {
            e.error = "NoUnitEigenvalue";
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

inline std::vector<SweepRow> asymptotic_rows(const std::vector<AsymptoticEntry>& entries) {
    std::vector<SweepRow> rows;
    for (const auto& e : entries) {
        if (!e.ok) continue;
        rows.push_back({"asymptotic", 0.0, 0.0, 0.0, 0, e.bound_superposed, e.capacity_classical,
                        e.bound_superposed - e.capacity_classical});
    }
    return rows;
}

namespace detail {

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace detail

inline void write_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path);
    out << "experiment,p,q,s,n,bound_superposed,capacity_classical,gap\n";
    for (const auto& r : rows) {
        out << r.experiment << ',' << detail::format_number(r.p) << ','
            << detail::format_number(r.q) << ',' << detail::format_number(r.s) << ',' << r.n << ','
            << detail::format_number(r.bound_superposed) << ','
            << detail::format_number(r.capacity_classical) << ',' << detail::format_number(r.gap)
            << '\n';
    }
    if (!out) throw IoError("failed while writing " + path);
}

}  // namespace supchan
