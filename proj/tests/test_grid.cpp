#include <cmath>

#include "doctest.h"
#include "pmc/grid.hpp"

using namespace pmc;

namespace {

GridCurrent unit_square(std::array<double, 2> l, NormP p) {
    GridCurrent g;
    g.rect = {0, 0, 1, 1};
    g.nx = g.ny = 1;
    g.field = {l};
    g.p = p;
    return g;
}

}  // namespace

TEST_CASE("validate rejects degenerate grids") {
    GridCurrent g = unit_square({1, 0}, NormP::two);
    CHECK_NOTHROW(g.validate());

    SUBCASE("flipped rectangle") {
        g.rect = {1, 0, 0, 1};
        CHECK_THROWS_AS(g.validate(), ValidationError);
    }
    SUBCASE("nonpositive shape") {
        g.nx = 0;
        CHECK_THROWS_AS(g.validate(), ValidationError);
    }
    SUBCASE("field size mismatch") {
        g.field.push_back({1, 1});
        CHECK_THROWS_AS(g.validate(), ValidationError);
    }
    SUBCASE("non-finite entry") {
        g.field[0][0] = std::nan("");
        CHECK_THROWS_AS(g.validate(), ValidationError);
    }
}

TEST_CASE("grid_mass integrates the cell norms") {
    CHECK(grid_mass(unit_square({1, 1}, NormP::two)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(grid_mass(unit_square({1, 1}, NormP::one)) == 2.0);
    CHECK(grid_mass(unit_square({1, 1}, NormP::inf)) == 1.0);
    CHECK(grid_mass(unit_square({0, 0}, NormP::two)) == 0.0);

    // two cells, areas 0.5 each, norms 1 and 2
    GridCurrent g;
    g.rect = {0, 0, 1, 1};
    g.nx = 2;
    g.ny = 1;
    g.field = {{1, 0}, {2, 0}};
    g.p = NormP::two;
    CHECK(grid_mass(g) == doctest::Approx(1.5));
}

TEST_CASE("grid_space: node layout with exact far corners") {
    GridCurrent g;
    g.rect = {0, 0, 1, 1};
    g.nx = g.ny = 2;
    g.field = {{1, 0}, {1, 0}, {1, 0}, {1, 0}};
    const EmbeddedSpace s = grid_space(g);
    REQUIRE(s.size() == 9);
    // node (i, j) at index j * 3 + i
    CHECK(s.point(0)[0] == 0.0);
    CHECK(s.point(4)[0] == 0.5);  // center node (1,1)
    CHECK(s.point(4)[1] == 0.5);
    CHECK(s.point(8)[0] == 1.0);  // far corner hits the rect corner exactly
    CHECK(s.point(8)[1] == 1.0);

    // non-dyadic extents still land the last node exactly on the corner
    GridCurrent odd;
    odd.rect = {0, 0, 1, 1};
    odd.nx = 3;
    odd.ny = 1;
    odd.field = {{1, 0}, {1, 0}, {1, 0}};
    const EmbeddedSpace so = grid_space(odd);
    CHECK(so.point(3)[0] == 1.0);
}

TEST_CASE("grid_boundary of a left-to-right unit field") {
    const GridCurrent g = unit_square({1, 0}, NormP::two);
    const AtomicMeasure b = grid_boundary(g);
    // nodes: 0=(0,0), 1=(1,0), 2=(0,1), 3=(1,1); flux enters left, leaves right
    CHECK(b == AtomicMeasure{{0, -0.5}, {1, 0.5}, {2, -0.5}, {3, 0.5}});
    CHECK(total_variation(b) == 2.0);
    CHECK(b.total_weight() == 0.0);
}

TEST_CASE("grid_boundary: constant fields vanish at interior nodes") {
    GridCurrent g;
    g.rect = {0, 0, 1, 1};
    g.nx = g.ny = 2;
    g.field = {{0.3, -0.7}, {0.3, -0.7}, {0.3, -0.7}, {0.3, -0.7}};
    const AtomicMeasure b = grid_boundary(g);
    CHECK(b.at(4) == 0.0);  // center node
    CHECK(std::abs(b.total_weight()) <= 1e-15);
}

TEST_CASE("grid_boundary weights always sum to zero") {
    GridCurrent g;
    g.rect = {-1, 0, 2, 2};
    g.nx = 3;
    g.ny = 2;
    g.field = {{1, 2}, {-0.5, 0.25}, {3, -1}, {0, 0}, {2, 2}, {-1, -1}};
    const AtomicMeasure b = grid_boundary(g);
    CHECK(std::abs(b.total_weight()) <= 1e-12);
}
