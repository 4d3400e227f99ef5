#include <cmath>
#include <vector>

#include "doctest.h"
#include "pmc/curves.hpp"

using namespace pmc;

namespace {

EmbeddedSpace plane(const std::vector<std::vector<double>>& pts) {
    return EmbeddedSpace(2, NormP::two, pts);
}

}  // namespace

TEST_CASE("identical curves are at distance zero") {
    const EmbeddedSpace s = plane({{0, 0}, {1, 0}, {1, 1}});
    const Path p({0, 1, 2});
    CHECK(theta_distance(p, p, s) == 0.0);
}

TEST_CASE("a vertical translate of a segment sits at the offset height") {
    const EmbeddedSpace s = plane({{0, 0}, {1, 0}, {0, 0.25}, {1, 0.25}});
    const double d = theta_distance(Path({0, 1}), Path({2, 3}), s);
    CHECK(d == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("orientation matters: a segment and its reversal stay apart") {
    const EmbeddedSpace s = plane({{0, 0}, {1, 0}});
    const double d = theta_distance(Path({0, 1}), Path({1, 0}), s);
    // any monotone matching pairs the two start points (distance 1)
    CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("symmetry and triangle inequality on sampled curves") {
    const EmbeddedSpace s = plane({{0, 0}, {2, 0}, {1, 1}, {0, 1}, {2, 1}, {1, -0.5}});
    const Path a({0, 1});
    const Path b({0, 2, 1});
    const Path c({3, 5, 4});
    const double ab = theta_distance(a, b, s);
    const double ba = theta_distance(b, a, s);
    const double bc = theta_distance(b, c, s);
    const double ac = theta_distance(a, c, s);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(ac <= ab + bc + 1e-9);
    CHECK(ab > 0.0);
}

TEST_CASE("collinear resampling barely moves the distance") {
    // [a, c] versus [a, b, c] with b on the segment: same image, same
    // orientation; only the sampling pattern differs.
    const EmbeddedSpace s = plane({{0, 0}, {1, 0}, {2, 0}});
    const double d = theta_distance(Path({0, 2}), Path({0, 1, 2}), s);
    CHECK(d <= 0.05);
}

TEST_CASE("denser sampling tightens the estimate") {
    const EmbeddedSpace s = plane({{0, 0}, {1, 0}, {0.5, 0.4}});
    const Path a({0, 1});
    const Path b({0, 2, 1});
    const double coarse = theta_distance(a, b, s, 8.0);
    const double fine = theta_distance(a, b, s, 128.0);
    // the true value is 0.4 (apex against the flat segment)
    CHECK(std::abs(fine - 0.4) <= std::abs(coarse - 0.4) + 1e-12);
    CHECK(fine == doctest::Approx(0.4).epsilon(0.05));
}

TEST_CASE("input validation") {
    const EmbeddedSpace s = plane({{0, 0}, {1, 0}});
    CHECK_THROWS_AS(theta_distance(Path({0, 1}), Path({0, 1}), s, 0.0), ValidationError);
    CHECK_THROWS_AS(theta_distance(Path({0, 5}), Path({0, 1}), s), ValidationError);
}

TEST_CASE("spiral suite: exact masses, shrinking boundary, stubborn curves") {
    const std::vector<SpiralRow> rows = spiral_suite({1, 2, 4, 8});
    REQUIRE(rows.size() == 4);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const SpiralRow& r = rows[k];
        const double nu = static_cast<double>(r.nu);
        CHECK(r.eta_mass == 1.0 / nu);  // exact: a single atom of weight 1/nu
        CHECK(std::abs(r.boundary_tv - 2.0 / nu) <= 1e-12);
        CHECK(r.segments == 64 * r.nu);
        CHECK(r.weight == 1.0 / nu);
        // currents converge (boundary + mass defect shrink) while the
        // curve-space gap stays pinned between the coil's radial drift
        // (exactly 1 at level 1) and the diameter
        CHECK(r.theta_gap >= 1.0);
        CHECK(r.theta_gap < 2.6);
        if (k > 0) CHECK(r.form_error < rows[k - 1].form_error);
    }
}

TEST_CASE("spiral level 1 endpoints: outer coil lands at (2, 0)") {
    const std::vector<SpiralRow> rows = spiral_suite({1});
    REQUIRE(rows.size() == 1);
    // one winding: start (1, 0), end (1 + 1/1, 0); boundary TV = 2/1
    CHECK(rows[0].boundary_tv == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rows[0].eta_mass == 1.0);
}

TEST_CASE("spiral level validation") {
    CHECK_THROWS_AS(spiral_suite({0}), ValidationError);
    CHECK_THROWS_AS(spiral_suite({5000}), ValidationError);
}
