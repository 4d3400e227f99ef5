#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "pmc/current.hpp"
#include "pmc/flatnorm.hpp"

using namespace pmc;

namespace {

/* Independent oracle for unit-weight atoms: the optimal filling of a
 * 0-current with integral weights is a partial matching of plus atoms to
 * minus atoms; every unmatched atom pays the creation cost.  Enumerates
 * all partial matchings recursively. */
double brute_flat_norm(const std::vector<int>& plus, const std::vector<int>& minus,
                       const Space& space, double creation) {
    std::vector<bool> used(minus.size(), false);
    double best = 1e300;
    auto rec = [&](auto&& self, std::size_t p, double acc) -> void {
        if (p == plus.size()) {
            double unmatched = 0.0;
            for (const bool u : used) unmatched += u ? 0.0 : 1.0;
            best = std::min(best, acc + creation * unmatched);
            return;
        }
        self(self, p + 1, acc + creation);  // discard this plus atom
        for (std::size_t m = 0; m < minus.size(); ++m) {
            if (used[m]) continue;
            used[m] = true;
            self(self, p + 1, acc + space.distance(plus[p], minus[m]));
            used[m] = false;
        }
    };
    rec(rec, 0, 0.0);
    return best;
}

AtomicMeasure dipole(int a, int b) { return AtomicMeasure::dirac(b) - AtomicMeasure::dirac(a); }

}  // namespace

TEST_CASE("dipole closed form min(d, 2 * creation)") {
    SUBCASE("close pair transports: d = 0.5") {
        const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, {{0, 0}, {0.5, 0}}));
        const FlatNormResult r = flat_norm(dipole(0, 1), s);
        CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(r.residue.empty());
        CHECK(r.filling == PolyhedralCurrent(s, {{0, 1, 1.0}}));
        CHECK(boundary(r.filling) + r.residue == dipole(0, 1));
    }
    SUBCASE("far pair cancels by creation: d = 10") {
        const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, {{0, 0}, {10, 0}}));
        const FlatNormResult r = flat_norm(dipole(0, 1), s);
        CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(r.filling.empty());
        CHECK(r.residue == dipole(0, 1));
    }
    SUBCASE("custom creation cost shifts the break-even") {
        const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, {{0, 0}, {0.5, 0}}));
        CHECK(flat_norm(dipole(0, 1), s, 0.1).value == doctest::Approx(0.2).epsilon(1e-12));
        CHECK(flat_norm(dipole(0, 1), s, 10.0).value == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("zero measure has zero flat norm") {
    const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, {{0, 0}}));
    const FlatNormResult r = flat_norm(AtomicMeasure{}, s);
    CHECK(r.value == 0.0);
    CHECK(r.residue.empty());
    CHECK(r.filling.empty());
}

TEST_CASE("narrow_gap separates multiples of the same dirac") {
    const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, {{0, 0}, {1, 0}}));
    const AtomicMeasure one = AtomicMeasure::dirac(0, 1.0);
    const AtomicMeasure two = AtomicMeasure::dirac(0, 2.0);
    CHECK(narrow_gap(one, two, s) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(narrow_gap(one, one, s) == 0.0);
}

TEST_CASE("flat norm is bounded by total variation and is symmetric") {
    const SpacePtr s = make_space(
        EmbeddedSpace(2, NormP::two, {{0, 0}, {3, 1}, {-2, 4}, {0.25, 0.5}}));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> w(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        AtomicMeasure mu;
        for (int i = 0; i < 4; ++i) mu.add(i, w(rng));
        const FlatNormResult r = flat_norm(mu, s);
        CHECK(r.value <= total_variation(mu) + 1e-12);
        CHECK(r.value == doctest::Approx(flat_norm(-mu, s).value).epsilon(1e-12));
        // decomposition identity holds exactly on atoms
        CHECK(total_variation(boundary(r.filling) + r.residue - mu) <= 1e-12);
    }
}

TEST_CASE("matches the partial-matching oracle on unit-weight instances") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(0.0, 3.0);
    std::uniform_int_distribution<int> count(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const int np = count(rng), nm = count(rng);
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < np + nm; ++i) pts.push_back({coord(rng), coord(rng)});
        const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, pts));

        AtomicMeasure mu;
        std::vector<int> plus, minus;
        for (int i = 0; i < np; ++i) {
            plus.push_back(i);
            mu.add(i, 1.0);
        }
        for (int i = np; i < np + nm; ++i) {
            minus.push_back(i);
            mu.add(i, -1.0);
        }
        const double creation = trial % 2 == 0 ? 1.0 : 0.6;
        const double expected = brute_flat_norm(plus, minus, *s, creation);
        CHECK(flat_norm(mu, s, creation).value == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("narrow_gap is a metric on random triples") {
    const SpacePtr s = make_space(
        EmbeddedSpace(2, NormP::two, {{0, 0}, {1, 2}, {4, 0}, {-1, -1}, {2, 2}}));
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> w(-1.5, 1.5);
    auto random_measure = [&] {
        AtomicMeasure mu;
        for (int i = 0; i < 5; ++i) mu.add(i, w(rng));
        return mu;
    };
    for (int trial = 0; trial < 25; ++trial) {
        const AtomicMeasure a = random_measure(), b = random_measure(), c = random_measure();
        const double ab = narrow_gap(a, b, s);
        const double bc = narrow_gap(b, c, s);
        const double ac = narrow_gap(a, c, s);
        CHECK(ab >= 0.0);
        CHECK(ab == doctest::Approx(narrow_gap(b, a, s)).epsilon(1e-12));
        CHECK(ac <= ab + bc + 1e-9);
        CHECK(narrow_gap(a, a, s) <= 1e-12);
    }
}

TEST_CASE("flat norm rejects atoms outside the space") {
    const SpacePtr s = make_space(EmbeddedSpace(2, NormP::two, {{0, 0}}));
    CHECK_THROWS_AS(flat_norm(AtomicMeasure::dirac(3), s), ValidationError);
    CHECK_THROWS_AS(flat_norm(AtomicMeasure::dirac(0), s, -1.0), ValidationError);
}
