#include <random>

#include "doctest.h"
#include "lrfim/coarse.hpp"

using namespace lrfim;

namespace {

SiteSet2 random_blobs(std::mt19937_64& gen, int span, int nblobs, int radius) {
    SiteSet2 a;
    std::uniform_int_distribution<int> pos(0, span - 1);
    for (int b = 0; b < nblobs; ++b) {
        int cx = pos(gen), cy = pos(gen);
        for (int x = cx - radius; x <= cx + radius; ++x)
            for (int y = cy - radius; y <= cy + radius; ++y)
                if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= radius * radius && x >= 0 && y >= 0 &&
                    x < span && y < span)
                    a.push_back({x, y});
    }
    sort_unique(a);
    return a;
}

}  // namespace

TEST_CASE("cube grid geometry") {
    CubeGrid grid{5};
    CHECK_THROWS(CubeGrid{4});
    CHECK(grid.side(0) == 1);
    CHECK(grid.side(1) == 32);
    CHECK(grid.cube_of({33, -1}, 1) == Vec2{1, -1});
    CHECK(grid.cube_box({0, 0}, 1) == Box2{0, 0, 32, 32});

    // shrunk cubes: empty at level 0, side - 2*2^(r(l-1)) otherwise
    CHECK(grid.shrunk_cube_box({0, 0}, 0).empty());
    Box2 hat = grid.shrunk_cube_box({0, 0}, 1);
    CHECK(hat == Box2{1, 1, 31, 31});
    CHECK(hat.area() == 30 * 30);
    Box2 hat2 = grid.shrunk_cube_box({0, 0}, 2);
    CHECK(hat2.width() == 1024 - 2 * 32);
}

TEST_CASE("every site lies in exactly one cube per level") {
    CubeGrid grid{5};
    std::mt19937_64 gen(3);
    for (int t = 0; t < 200; ++t) {
        Vec2 p{static_cast<int>(gen() % 3000) - 1500, static_cast<int>(gen() % 3000) - 1500};
        for (int level = 0; level <= 2; ++level) {
            Vec2 c = grid.cube_of(p, level);
            CHECK(grid.cube_box(c, level).contains(p));
            CHECK(!grid.cube_box({c.x + 1, c.y}, level).contains(p));
            CHECK(!grid.cube_box({c.x - 1, c.y}, level).contains(p));
        }
    }
}

TEST_CASE("admissible cubes by direct counting") {
    CubeGrid grid{5};
    SiteSet2 a{{0, 0}, {40, 40}};
    CubeSet adm0 = admissible_cubes(a, 0, grid);
    CHECK(adm0 == CubeSet{{0, 0}, {40, 40}});  // level 0: the sites themselves

    // fill one level-1 cube fully
    SiteSet2 full;
    for (int x = 0; x < 32; ++x)
        for (int y = 0; y < 32; ++y) full.push_back({x, y});
    sort_unique(full);
    CHECK(admissible_cubes(full, 1, grid) == CubeSet{{0, 0}});

    std::mt19937_64 gen(7);
    for (int t = 0; t < 10; ++t) {
        SiteSet2 r;
        for (int x = 0; x < 32; ++x)
            for (int y = 0; y < 32; ++y)
                if (gen() & 1u) r.push_back({x, y});
        sort_unique(r);
        bool admissible = static_cast<long long>(r.size()) >= 512;
        CubeSet adm = admissible_cubes(r, 1, grid);
        CHECK((adm == (admissible ? CubeSet{{0, 0}} : CubeSet{})));
    }
}

TEST_CASE("edge boundary counts") {
    CubeSet one{{0, 0}};
    CHECK(edge_boundary(one).size() == 4);
    CubeSet square{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(edge_boundary(square).size() == 8);

    std::mt19937_64 gen(11);
    for (int t = 0; t < 20; ++t) {
        CubeSet s;
        for (int x = 0; x < 8; ++x)
            for (int y = 0; y < 8; ++y)
                if (gen() & 1u) s.push_back({x, y});
        sort_unique(s);
        long long brute = 0;
        for (Vec2 c : s)
            for (Vec2 d : {Vec2{1, 0}, Vec2{-1, 0}, Vec2{0, 1}, Vec2{0, -1}})
                if (!set_contains(s, {c.x + d.x, c.y + d.y})) ++brute;
        CHECK(static_cast<long long>(edge_boundary(s).size()) == brute);
    }
}

TEST_CASE("level interactions: empty, level zero, half plane") {
    CubeGrid grid{5};
    CouplingKernel k{3.0, 2};
    Box2 window{-16, -16, 80, 80};
    CouplingTable2D table(k, 128);
    CHECK(level_interaction({}, window, 1, grid, table) == 0.0);

    SiteSet2 half;
    for (int x = 0; x < 64; ++x)
        for (int y = 0; y < 32; ++y) half.push_back({x, y});
    sort_unique(half);
    CHECK(level_interaction(half, window, 0, grid, table) == 0.0);  // empty C_hat
    double q1 = level_interaction(half, window, 1, grid, table);
    CHECK(q1 > 0.0);
    SiteSet2 ac;
    for (int x = window.x0; x < window.x1; ++x)
        for (int y = window.y0; y < window.y1; ++y)
            if (!set_contains(half, {x, y})) ac.push_back({x, y});
    double j_a = interaction_sum(half, ac, table);
    CHECK(q1 <= j_a);
}

TEST_CASE("no-overlap inequality on random sets") {
    CubeGrid grid{5};
    std::mt19937_64 gen(13);
    for (double alpha : {2.5, 3.0}) {
        CouplingKernel k{alpha, 2};
        for (int t = 0; t < 8; ++t) {
            SiteSet2 a = random_blobs(gen, 64, 3, 9);
            NoOverlapCheck nc = no_overlap_check(a, k, grid, 48);
            CHECK(nc.pass);
            CHECK(nc.sum_q >= 0.0);
        }
        NoOverlapCheck empty = no_overlap_check({}, k, grid, 48);
        CHECK(empty.pass);
    }
}

TEST_CASE("large interaction per admissible edge pair") {
    CubeGrid grid{5};
    CouplingKernel k{3.0, 2};
    // bound value from the constant: 2^(r l (4-alpha)) b6 = 32/(16*27)
    CHECK(b6_constant(3.0) * std::exp2(5.0) == doctest::Approx(2.0 / 27.0));
    std::mt19937_64 gen(17);
    int pairs_seen = 0;
    for (int t = 0; t < 12; ++t) {
        SiteSet2 a = random_blobs(gen, 64, 4, 12);
        PairBoundCheck pc = large_int_check(a, 1, k, grid, 48);
        CHECK(pc.failures == 0);
        pairs_seen += static_cast<int>(pc.pairs);
        if (pc.pairs > 0) CHECK(pc.min_j >= pc.bound * (1.0 - 1e-9));
    }
    CHECK(pairs_seen > 0);
    CHECK(large_int_check({}, 1, k, grid, 48).pairs == 0);
}

TEST_CASE("coarse approximation bounds per level") {
    CubeGrid grid{5};
    CouplingKernel k{3.0, 2};
    std::mt19937_64 gen(19);
    for (int t = 0; t < 6; ++t) {
        SiteSet2 a = random_blobs(gen, 64, 3, 10);
        for (const FfsLevelReport& rep : ffs_checks(a, k, grid, 48)) CHECK(rep.pass);
    }

    SiteSet2 cube;
    for (int x = 0; x < 32; ++x)
        for (int y = 0; y < 32; ++y) cube.push_back({x, y});
    sort_unique(cube);
    std::vector<FfsLevelReport> reps = ffs_checks(cube, k, grid, 48);
    REQUIRE(reps.size() >= 2);
    CHECK(reps[1].boundary_pairs == 4);
    CHECK(reps[1].pass);
}

TEST_CASE("isoperimetric check on cube grids") {
    // even split of a 4x4 grid into two 2x4 halves
    std::vector<Vec2> half;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 4; ++y) half.push_back({x, y});
    IsoCheck ic = iso_check(half, 4, 0.5);
    CHECK(ic.boundary == 4);
    CHECK(ic.bound == doctest::Approx(std::sqrt(0.5) * 4.0));
    CHECK(ic.pass);

    CHECK(cell_perimeter(half) == 12);
    CHECK(static_cast<double>(cell_perimeter(half)) >= 4.0 * std::sqrt(8.0));

    // below the threshold: rejected
    std::vector<Vec2> tiny{{0, 0}};
    CHECK_THROWS(iso_check(tiny, 4, 0.5));
}

TEST_CASE("exhaustive isoperimetric sweep on 3x3 and 4x4 grids") {
    for (int g : {3, 4}) {
        const int cells = g * g;
        for (unsigned mask = 1; mask + 1 < (1u << cells); ++mask) {
            std::vector<Vec2> side;
            for (int i = 0; i < cells; ++i)
                if ((mask >> i) & 1u) side.push_back({i / g, i % g});
            long long m = std::min<long long>(static_cast<long long>(side.size()),
                                              cells - static_cast<long long>(side.size()));
            double c = static_cast<double>(m) / static_cast<double>(cells);
            if (c <= 0.0) continue;
            IsoCheck ic = iso_check(side, g, std::min(0.5, c));
            CHECK(ic.pass);
            CHECK(static_cast<double>(cell_perimeter(side)) >=
                  4.0 * std::sqrt(static_cast<double>(side.size())));
        }
    }
}

TEST_CASE("nesting of shrunk cubes across levels") {
    CubeGrid grid{5};
    // an edge pair at level l inside an edge pair at level k > l never meets
    // the shrunk cube of the outer level
    for (int l = 0; l <= 1; ++l) {
        int k = l + 1;
        Box2 outer_hat = grid.shrunk_cube_box({0, 0}, k);
        // level-l cubes along the shared edge of cube (0,0) and (1,0) at level k
        long long ratio = grid.side(k) / grid.side(l);
        for (long long i = 0; i < ratio; ++i) {
            Vec2 inner_cube{static_cast<int>(ratio) - 1, static_cast<int>(i)};
            Box2 inner = grid.cube_box(inner_cube, l);
            bool disjoint = inner.x1 <= outer_hat.x0 || inner.x0 >= outer_hat.x1 ||
                            inner.y1 <= outer_hat.y0 || inner.y0 >= outer_hat.y1;
            CHECK(disjoint);
        }
    }
}

TEST_CASE("annealed mixing minima and the fitted floor") {
    CouplingKernel k{3.0, 2};
    CubeGrid grid{5};
    MixingProbe probe = cube_mixing_bound_probe(grid, 1, {0, 1, 4, 16}, k, 12345, 2, 8000);
    REQUIRE(probe.min_j.size() == 4);
    CHECK(probe.min_j[0] == 0.0);
    // m=1 exact: a corner spin minimizes J(x, cube \ x)
    CouplingTable2D table(k, 33);
    double corner = 0.0;
    for (int x = 0; x < 32; ++x)
        for (int y = 0; y < 32; ++y)
            if (x || y) corner += table({0, 0}, {x, y});
    CHECK(probe.min_j[1] == doctest::Approx(corner).epsilon(1e-9));
    CHECK(probe.fitted_coefficient > 0.0);
    CHECK(probe.b8_hat > 0.0);
    CHECK_THROWS(cube_mixing_bound_probe(grid, 0, {1}, k, 1, 1, 10));
}
