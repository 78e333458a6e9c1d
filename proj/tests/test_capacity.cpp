#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "supchan/capacity.hpp"
#include "supchan/routing.hpp"

using namespace supchan;

namespace {

constexpr double LOG2_5_4 = 0.32192809488736235;

KrausChannel bac_channel(double q, double p) { return bac_extension(q, p).channel(); }

}  // namespace

TEST_CASE("z_capacity frozen values") {
    REQUIRE(z_capacity(0.5) == Catch::Approx(LOG2_5_4).margin(1e-15));
    REQUIRE(z_capacity(0.0) == 1.0);
    REQUIRE(z_capacity(1.0) == 0.0);
    REQUIRE_THROWS_AS(z_capacity(1.5), ProbabilityRange);

    // Strictly decreasing in p.
    double prev = 1.0;
    for (int i = 1; i <= 10; ++i) {
        double c = z_capacity(i / 10.0);
        REQUIRE(c < prev);
        prev = c;
    }
}

TEST_CASE("bac_capacity frozen values") {
    REQUIRE(bac_capacity(0.0, 0.5) == Catch::Approx(LOG2_5_4).margin(1e-12));
    REQUIRE(bac_capacity(0.1, 0.1) == Catch::Approx(1.0 - binary_entropy(0.1)).margin(1e-12));
    REQUIRE(bac_capacity(0.0, 0.0) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(bac_capacity(1.0, 1.0) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(bac_capacity(0.3, 0.7) == 0.0);
    REQUIRE(bac_capacity(0.5, 0.5) == 0.0);
    REQUIRE_THROWS_AS(bac_capacity(1.1, 0.0), ProbabilityRange);

    for (int i = 0; i <= 10; ++i) {
        double p = i / 10.0;
        REQUIRE(bac_capacity(0.0, p) == Catch::Approx(z_capacity(p)).margin(1e-12));
    }
}

TEST_CASE("blahut_arimoto frozen values and guards") {
    REQUIRE(blahut_arimoto({{1.0, 0.0}, {0.0, 1.0}}).value == Catch::Approx(1.0).margin(1e-9));
    REQUIRE(blahut_arimoto({{1.0, 0.0}, {0.5, 0.5}}).value ==
            Catch::Approx(LOG2_5_4).margin(1e-9));
    REQUIRE(blahut_arimoto({{0.5, 0.5}, {0.5, 0.5}}).value == Catch::Approx(0.0).margin(1e-9));
    REQUIRE(blahut_arimoto({{0.89, 0.11}, {0.11, 0.89}}).value ==
            Catch::Approx(1.0 - binary_entropy(0.11)).margin(1e-9));

    CapacityBound b = blahut_arimoto({{1.0, 0.0}, {0.5, 0.5}});
    REQUIRE(b.kind == BoundKind::blahut_arimoto);
    REQUIRE(b.witness.has_value());
    REQUIRE(b.witness->probs.size() == 2);

    REQUIRE_THROWS_AS(blahut_arimoto({}), NotStochastic);
    REQUIRE_THROWS_AS(blahut_arimoto({{0.5, 0.5}, {0.5}}), NotStochastic);
    REQUIRE_THROWS_AS(blahut_arimoto({{0.7, 0.7}}), NotStochastic);
    REQUIRE_THROWS_AS(blahut_arimoto({{1.3, -0.3}}), NotStochastic);
}

TEST_CASE("bac_capacity agrees with blahut_arimoto on a parameter grid") {
    for (int iq = 0; iq <= 5; ++iq)
        for (int ip = 0; ip <= 5; ++ip) {
            double q = iq / 5.0, p = ip / 5.0;
            double direct = bac_capacity(q, p);
            double iterated = blahut_arimoto({{1.0 - q, q}, {p, 1.0 - p}}).value;
            INFO("q=" << q << " p=" << p);
            REQUIRE(direct == Catch::Approx(iterated).margin(1e-6));
        }
}

TEST_CASE("effective_bac_params") {
    BinaryAsymmetricParams e = effective_bac_params(0.1, 0.3, 3);
    REQUIRE(e.q == Catch::Approx(0.196).margin(1e-12));
    REQUIRE(e.p == Catch::Approx(0.588).margin(1e-12));

    BinaryAsymmetricParams one = effective_bac_params(0.1, 0.3, 1);
    REQUIRE(one.q == Catch::Approx(0.1).margin(1e-15));
    REQUIRE(one.p == Catch::Approx(0.3).margin(1e-15));

    BinaryAsymmetricParams none = effective_bac_params(0.0, 0.0, 5);
    REQUIRE(none.q == 0.0);
    REQUIRE(none.p == 0.0);

    REQUIRE_THROWS_AS(effective_bac_params(0.1, 0.3, 0), EmptyChain);
    REQUIRE_THROWS_AS(effective_bac_params(0.6, 0.6, 2), ProbabilityRange);
}

TEST_CASE("composed binary channels have the effective parameters") {
    const double q = 0.1, p = 0.3;
    KrausChannel acc = bac_channel(q, p);
    for (int n = 2; n <= 4; ++n) {
        acc = compress_kraus(compose(bac_channel(q, p), acc));
        BinaryAsymmetricParams e = effective_bac_params(q, p, n);
        REQUIRE(choi_distance(acc, bac_channel(e.q, e.p)) < 1e-9);
    }
}

TEST_CASE("holevo_information frozen value and guards") {
    ComplexMatrix e00(2, 2), e11(2, 2);
    e00(0, 0) = 1.0;
    e11(1, 1) = 1.0;
    Ensemble basis{{0.5, 0.5}, {e00, e11}};

    auto through = [](const KrausChannel& ch) {
        return [&ch](const ComplexMatrix& rho) { return apply_channel(ch, rho); };
    };
    KrausChannel id = identity_channel(2);
    REQUIRE(holevo_information(through(id), basis) == Catch::Approx(1.0).margin(1e-12));

    KrausChannel z = z_channel(0.5);
    REQUIRE(holevo_information(through(z), basis) ==
            Catch::Approx(0.3112781244591328).margin(1e-12));

    Ensemble mismatched{{1.0}, {e00, e11}};
    REQUIRE_THROWS_AS(holevo_information(through(id), mismatched), DimensionMismatch);
    Ensemble short_probs{{0.4, 0.4}, {e00, e11}};
    REQUIRE_THROWS_AS(holevo_information(through(id), short_probs), ProbabilityRange);
}

TEST_CASE("two_state_lower_bound reaches known capacities") {
    REQUIRE(two_state_lower_bound(identity_channel(2)).value == Catch::Approx(1.0).margin(1e-9));

    for (double p : {0.2, 0.5, 0.8}) {
        CapacityBound b = two_state_lower_bound(z_channel(p));
        REQUIRE(b.value == Catch::Approx(z_capacity(p)).margin(1e-6));
        REQUIRE(b.kind == BoundKind::holevo_lower);
    }

    CapacityBound bac = two_state_lower_bound(bac_channel(0.1, 0.3));
    REQUIRE(bac.value == Catch::Approx(bac_capacity(0.1, 0.3)).margin(1e-6));
}

TEST_CASE("two_state_lower_bound witness reproduces its value") {
    KrausChannel ch = bac_channel(0.05, 0.4);
    CapacityBound b = two_state_lower_bound(ch);
    REQUIRE(b.witness.has_value());
    REQUIRE(b.witness->probs[0] + b.witness->probs[1] == Catch::Approx(1.0).margin(1e-12));
    double chi = holevo_information([&](const ComplexMatrix& rho) { return apply_channel(ch, rho); },
                                    *b.witness);
    REQUIRE(chi == Catch::Approx(b.value).margin(1e-9));
}

TEST_CASE("two_state_lower_bound on a constant channel is zero") {
    const double r = 1.0 / std::sqrt(2.0);
    CapacityBound b = two_state_lower_bound(reset_extension(r, r).channel());
    REQUIRE(b.value == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("two_state_lower_bound handles the asymptotic routing map") {
    VacuumExtension ext = physical_z_extension(0.5);
    CapacityBound b = two_state_lower_bound(
        [&](const ComplexMatrix& rho) { return asymptotic_superposition(ext, rho); });
    REQUIRE(b.value == Catch::Approx(LOG2_5_4).margin(1e-4));
}

TEST_CASE("coherent routing beats the classical capacity of a short chain") {
    VacuumExtension ext = bac_extension(0.05, 0.5);
    Branch b = branch_from_extension(ext);
    CapacityBound sup = two_state_lower_bound(superpose(b, b, PathState::plus(), 1.0));
    double classical = bac_capacity(0.05, 0.5);
    REQUIRE(sup.value > classical + 1e-3);
}

TEST_CASE("dephased routing of a z chain reduces to the bare chain capacity") {
    VacuumExtension ext = physical_z_extension(0.5);
    Branch b = branch_from_extension(ext);
    CapacityBound flat = two_state_lower_bound(superpose(b, b, PathState::plus(), 0.0));
    REQUIRE(flat.value == Catch::Approx(z_capacity(0.5)).margin(1e-6));
}
