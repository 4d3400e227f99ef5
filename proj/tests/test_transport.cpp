#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "pmc/decompose.hpp"
#include "pmc/transport.hpp"
#include "transport_oracle.hpp"

using namespace pmc;

TEST_CASE("two diracs: W1 is the distance, potentials certify it") {
    const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, {{0, 0}, {3, 4}}));
    const AtomicMeasure plus = AtomicMeasure::dirac(0);
    const AtomicMeasure minus = AtomicMeasure::dirac(1);
    const KantorovichResult kr = kantorovich(plus, minus, *s);
    CHECK(kr.cost == doctest::Approx(5.0).epsilon(1e-12));
    REQUIRE(kr.plan.entries().size() == 1);
    CHECK(kr.plan.entries()[0].source == 0);
    CHECK(kr.plan.entries()[0].target == 1);
    CHECK(kr.plan.entries()[0].mass == doctest::Approx(1.0));

    // the potential difference pays the full distance
    CHECK(kr.potentials.at(0) - kr.potentials.at(1) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(duality_gap(plus, minus, kr.potentials, kr.cost, *s) <= 1e-12);
}

TEST_CASE("equal measures transport for free") {
    const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, {{0, 0}, {1, 1}}));
    const AtomicMeasure mu{{0, 1.0}, {1, 2.0}};
    const KantorovichResult kr = kantorovich(mu, mu, *s);
    CHECK(kr.cost == 0.0);
    const BeckmannResult b = beckmann(mu, mu, s);
    CHECK(b.current.empty());
    CHECK(b.certificate.ok(1e-9));
}

TEST_CASE("unit square corners: opposite pairs cost 2") {
    const SpacePtr s = make_space(
        EmbeddedSpace(2, NormP::two, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    const AtomicMeasure plus{{0, 1.0}, {2, 1.0}};   // (0,0) and (1,1)
    const AtomicMeasure minus{{1, 1.0}, {3, 1.0}};  // (1,0) and (0,1)
    const KantorovichResult kr = kantorovich(plus, minus, *s);
    CHECK(kr.cost == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(duality_gap(plus, minus, kr.potentials, kr.cost, *s) <= 1e-9);
}

TEST_CASE("solver matches the spanning-tree vertex oracle on random instances") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coord(0.0, 4.0);
    std::uniform_int_distribution<int> size(1, 3);
    std::uniform_int_distribution<int> units(1, 1024);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = size(rng), n = size(rng);
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < m + n; ++i) pts.push_back({coord(rng), coord(rng)});
        const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, pts));

        // dyadic masses, balanced exactly by making the totals match
        std::vector<std::pair<int, double>> plus, minus;
        double total = 0.0;
        for (int i = 0; i < m; ++i) {
            const double w = units(rng) / 1024.0;
            plus.push_back({i, w});
            total += w;
        }
        double left = total;
        for (int j = 0; j < n; ++j) {
            double w;
            if (j + 1 == n) {
                w = left;
            } else {
                w = std::min(left / 2, units(rng) / 2048.0);
            }
            minus.push_back({m + j, w});
            left -= w;
        }
        AtomicMeasure pm, mm;
        for (const auto& [i, w] : plus) pm.add(i, w);
        for (const auto& [i, w] : minus) mm.add(i, w);

        const pmc_test::BruteTransport oracle = pmc_test::brute_transport(plus, minus, *s);
        REQUIRE(oracle.found);
        const KantorovichResult kr = kantorovich(pm, mm, *s);
        const double solver_cost = pmc_test::canonical_cost(pmc_test::sorted_entries(kr.plan), *s);
        CHECK(std::abs(solver_cost - oracle.cost) <= 1e-12 * std::max(1.0, oracle.cost));
        CHECK(duality_gap(pm, mm, kr.potentials, kr.cost, *s) <= 1e-9);

        // potentials are 1-Lipschitz on the joint support
        std::vector<int> support;
        for (const auto& [i, w] : pm.atoms()) support.push_back(i);
        for (const auto& [i, w] : mm.atoms()) support.push_back(i);
        for (const int p : support)
            for (const int q : support) {
                CHECK(std::abs(kr.potentials.at(p) - kr.potentials.at(q)) <=
                      s->distance(p, q) + 1e-9);
            }
        // complementary slackness on the plan support
        for (const auto& e : kr.plan.entries()) {
            CHECK(std::abs(kr.potentials.at(e.source) - kr.potentials.at(e.target) -
                           s->distance(e.source, e.target)) <= 1e-9);
        }
    }
}

TEST_CASE("plan_to_transport: paths per entry, marginals preserved") {
    const SpacePtr base = make_space(
        EmbeddedSpace(2, NormP::two, {{0, 0}, {2, 0}, {5, 5}}));
    const Plan plan({{0, 1, 0.5}, {2, 2, 0.25}});
    Space space = *base;  // writable copy for chord sampling
    const Transport tr = plan_to_transport(plan, space, 1);
    REQUIRE(tr.size() == 2);
    CHECK(tr.atoms()[0].path == Path({0, 1}));
    CHECK(tr.atoms()[1].path == Path({2}));  // mass kept in place
    CHECK(tr.start_measure() == plan.source_marginal());
    CHECK(tr.end_measure() == plan.target_marginal());
    CHECK(transport_cost(tr, space) == doctest::Approx(plan.cost(space)).epsilon(1e-12));

    SUBCASE("chord refinement keeps the length on straight segments") {
        Space fine = *base;
        const Transport dense = plan_to_transport(plan, fine, 4);
        CHECK(dense.atoms()[0].path.size() == 5);
        CHECK(parametric_length(dense.atoms()[0].path, fine) == doctest::Approx(2.0));
    }
    SUBCASE("metric-only spaces refuse subdivision") {
        Space metric{FiniteMetricSpace({{0.0, 1.0}, {1.0, 0.0}})};
        const Plan direct({{0, 1, 1.0}});
        const Transport coarse = plan_to_transport(direct, metric, 1);
        CHECK(coarse.atoms()[0].path == Path({0, 1}));
        CHECK_THROWS_AS(plan_to_transport(direct, metric, 2), UnsupportedGeodesicError);
    }
}

TEST_CASE("beckmann: certified mass-minimizing current") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(0.0, 5.0);
    std::uniform_int_distribution<int> units(1, 1024);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < 6; ++i) pts.push_back({coord(rng), coord(rng)});
        const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, pts));
        AtomicMeasure plus, minus;
        double total = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double w = units(rng) / 1024.0;
            plus.add(i, w);
            total += w;
        }
        minus.add(3, total / 2);
        minus.add(4, total / 4);
        minus.add(5, total / 4);

        const BeckmannResult b = beckmann(plus, minus, s);
        CHECK(b.certificate.ok(1e-9));
        CHECK(std::abs(mass(b.current) - b.kantorovich.cost) <= 1e-9);
        CHECK(total_variation(boundary(b.current) - (plus - minus)) <= 1e-12);
        CHECK(extract_cycles(b.current).cycles.empty());

        // round trip: the optimal current decomposes into verified curves
        const Transport curves = decompose(b.current);
        CHECK(verify_decomposition(b.current, curves).all_pass());

        // any transport synthesizing the current costs at least the mass
        CHECK(transport_cost(b.transport, *s) >= mass(b.current) - 1e-12);
    }
}

TEST_CASE("beckmann works on metric-only spaces") {
    const SpacePtr s = make_space(
        FiniteMetricSpace({{0.0, 1.0, 1.5}, {1.0, 0.0, 1.0}, {1.5, 1.0, 0.0}}));
    const BeckmannResult b = beckmann(AtomicMeasure::dirac(0), AtomicMeasure::dirac(2), s);
    CHECK(b.kantorovich.cost == doctest::Approx(1.5).epsilon(1e-12));
    // minus-to-plus orientation: the boundary identity needs +1 at the plus atom
    CHECK(b.current == PolyhedralCurrent(s, {{2, 0, 1.0}}));
    CHECK(total_variation(boundary(b.current) -
                          (AtomicMeasure::dirac(0) - AtomicMeasure::dirac(2))) <= 1e-12);
    CHECK(b.certificate.ok(1e-9));
}

TEST_CASE("unequal masses are rejected with both totals in the message") {
    const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, {{0, 0}, {1, 0}}));
    const AtomicMeasure plus = AtomicMeasure::dirac(0, 1.5);
    const AtomicMeasure minus = AtomicMeasure::dirac(1, 2.0);
    try {
        kantorovich(plus, minus, *s);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("1.5") != std::string::npos);
        CHECK(msg.find("2") != std::string::npos);
    }

    // the documented fix: rescale one side to the other's total
    const AtomicMeasure fixed = normalize_total(minus, plus.total_weight());
    CHECK(fixed.total_weight() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(kantorovich(plus, fixed, *s).cost == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("mass tolerance is absolute: sub-tolerance drift is absorbed") {
    const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, {{0, 0}, {1, 0}}));
    const AtomicMeasure plus = AtomicMeasure::dirac(0, 1.0);
    const AtomicMeasure minus = AtomicMeasure::dirac(1, 1.0 + 5e-13);
    const KantorovichResult kr = kantorovich(plus, minus, *s);
    CHECK(kr.cost == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("normalize_total validates and rescales") {
    const AtomicMeasure mu{{0, 1.0}, {1, 2.0}};
    const AtomicMeasure scaled = normalize_total(mu, 6.0);
    CHECK(scaled == AtomicMeasure{{0, 2.0}, {1, 4.0}});
    CHECK_THROWS_AS(normalize_total(mu, 0.0), ValidationError);
    CHECK_THROWS_AS(normalize_total(mu, -1.0), ValidationError);
    CHECK_THROWS_AS(normalize_total(AtomicMeasure{}, 1.0), ValidationError);
    CHECK_THROWS_AS(normalize_total(AtomicMeasure{{0, -1.0}}, 1.0), ValidationError);
}
