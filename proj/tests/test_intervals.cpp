#include <random>

#include "doctest.h"
#include "lrfim/intervals.hpp"

using namespace lrfim;

namespace {

// Exact-endpoint oracle: k belongs to I_l(x) iff 16 k >= 2^l (x-8) and
// 16 k < 2^l (x+8), evaluated in integers.
bool site_in_interval_oracle(Site k, int level, Site x) {
    __int128 lhs = static_cast<__int128>(16) * k;
    __int128 lo = (static_cast<__int128>(1) << level) * (x - 8);
    __int128 hi = (static_cast<__int128>(1) << level) * (x + 8);
    return lhs >= lo && lhs < hi;
}

SpinConfig1D all_plus(IntRange w) { return SpinConfig1D(w, +1, +1); }

}  // namespace

TEST_CASE("interval site ranges against the exact-endpoint oracle") {
    CHECK(DyadicInterval{3, 0}.range() == IntRange{-4, 4});
    CHECK(DyadicInterval{0, 8}.range() == IntRange{0, 1});
    CHECK(DyadicInterval{4, 0}.range() == IntRange{-8, 8});
    for (int level = 0; level <= 7; ++level)
        for (Site x = -40; x <= 40; ++x) {
            DyadicInterval iv{level, x};
            for (Site k = iv.lo() - 3; k <= iv.hi() + 3; ++k)
                CHECK(iv.contains(k) == site_in_interval_oracle(k, level, x));
        }
}

TEST_CASE("interval sizes are exactly 2^l") {
    for (int level = 0; level <= 12; ++level)
        for (Site x = -256; x <= 256; ++x) CHECK(DyadicInterval{level, x}.range().size() == (Site{1} << level));
}

TEST_CASE("each sub-collection tiles Z") {
    for (int level = 0; level <= 6; ++level)
        for (int i = 0; i < 16; ++i) {
            std::vector<int> covered(2001, 0);
            IntRange span{-1000, 1001};
            IntRange xs = level_index_span(level, span);
            for (Site x = xs.lo; x < xs.hi; ++x) {
                DyadicInterval iv{level, x};
                if (!subcollection(iv, i)) continue;
                for (Site s = std::max(iv.lo(), span.lo); s < std::min(iv.hi(), span.hi); ++s)
                    ++covered[static_cast<size_t>(s + 1000)];
            }
            for (int c : covered) CHECK(c == 1);
        }
}

TEST_CASE("subcollection membership matches the left-endpoint formula") {
    // I_l(x) has left endpoint 2^(l-4)(x-8), so it sits in the sub-collection
    // with offset (x-8) mod 16. In particular the i = 0 family is the plain
    // 2^l-aligned tiling.
    CHECK(subcollection(DyadicInterval{3, 8}, 0));
    CHECK(subcollection(DyadicInterval{3, 0}, 8));
    CHECK(subcollection(DyadicInterval{3, 3}, 11));
    CHECK(subcollection(DyadicInterval{5, 24}, 0));
    for (Site x = -50; x <= 50; ++x) {
        int hits = 0;
        for (int i = 0; i < 16; ++i) hits += subcollection(DyadicInterval{2, x}, i) ? 1 : 0;
        CHECK(hits == 1);
    }
    for (Site y = -20; y <= 20; ++y) {
        DyadicInterval iv{4, 16 * y + 8};
        CHECK(subcollection(iv, 0));
        CHECK(iv.lo() == y * 16);
    }
}

TEST_CASE("density classes at the figure parameters") {
    // M0 = 1, delta = 1/3, level 3: M_3 = 2, vacant threshold 4 of 8.
    ScaleParams sp{1.0, 1.0 / 3.0, 10.0};
    DyadicInterval iv{3, 8};  // [0, 8)
    for (int minuses = 0; minuses <= 3; ++minuses) {
        SpinConfig1D cfg = all_plus({-2, 10});
        for (Site i = 0; i < minuses; ++i) cfg.set(i, -1);
        DensityClass dc = classify_density(iv, cfg, sp);
        CHECK(dc.minus_vacant);
        CHECK(!dc.minus_dense);
        CHECK(dc.plus_dense == (minuses < 4));
    }
    SpinConfig1D five = all_plus({-2, 10});
    for (Site i = 0; i < 5; ++i) five.set(i, -1);
    CHECK(classify_density(iv, five, sp).minus_occupied);
}

TEST_CASE("all-minus interval is minus dense; half density is vacant both ways") {
    ScaleParams sp{4.0, 0.25, 10.0};
    DyadicInterval iv{2, 8};  // [0, 4)
    SpinConfig1D cfg = all_plus({0, 4});
    for (Site i = 0; i < 4; ++i) cfg.set(i, -1);
    CHECK(classify_density(iv, cfg, sp).minus_dense);

    // M0 = 1, delta = 1/2 gives M_2 = 2 exactly; half-minus sits on the
    // boundary, so strict occupancy fails and both vacancies hold.
    ScaleParams sp2{1.0, 0.5, 10.0};
    SpinConfig1D half = all_plus({0, 4});
    half.set(0, -1);
    half.set(1, -1);
    DensityClass dc = classify_density(iv, half, sp2);
    CHECK(dc.minus_vacant);
    CHECK(dc.plus_vacant);
    CHECK(!dc.minus_occupied);
    CHECK(!dc.plus_occupied);
    CHECK(!dc.minus_dense);
    CHECK(!dc.plus_dense);
}

TEST_CASE("dense and vacant exclude each other (M0 > 2)") {
    // off-boundary thresholds: vacant then forces the mirrored density to be
    // strictly dense (the exact-boundary case sits in its own test above)
    ScaleParams sp{4.3, 0.25, 10.0};
    std::mt19937_64 gen(17);
    for (int t = 0; t < 400; ++t) {
        SpinConfig1D cfg = all_plus({-16, 16});
        for (Site x = -16; x < 16; ++x)
            if (gen() & 1u) cfg.set(x, -1);
        int level = static_cast<int>(gen() % 5);
        DyadicInterval iv{level, static_cast<Site>(gen() % 32) - 16};
        DensityClass dc = classify_density(iv, cfg, sp);
        CHECK(!(dc.minus_dense && dc.minus_vacant));
        CHECK(!(dc.plus_dense && dc.plus_vacant));
        if (dc.plus_vacant) CHECK(dc.minus_dense);
        if (dc.minus_vacant) CHECK(dc.plus_dense);
    }
}

TEST_CASE("figure instance: plus favored and isolated at level 3") {
    // M0 = 1, delta = 1/3: I_3's 4 nearest sites on each side are plus and
    // the neighbors I_3(x +- 16), I_3(x +- 32) hold at most 3 minuses.
    ScaleParams sp{1.0, 1.0 / 3.0, 10.0};
    SpinConfig1D cfg = all_plus({-24, 32});
    DyadicInterval iv{3, 8};  // [0, 8)
    cfg.set(3, -1);
    cfg.set(4, -1);                                  // minuses inside I
    for (Site s : {Site{13}, Site{14}, Site{15}}) cfg.set(s, -1);   // I_3(24) = [8,16): 3 minuses
    for (Site s : {Site{-6}, Site{-5}}) cfg.set(s, -1);             // I_3(-8) = [-8,0): 2 minuses
    cfg.set(17, -1);                                 // I_3(40) = [16,24)
    cfg.set(-15, -1);                                // I_3(-24) = [-16,-8)
    CHECK(is_plus_favored(iv, cfg, sp));
    CHECK(is_sign_isolated(iv, cfg, sp, +1));
    CHECK(!is_minus_favored(iv, cfg, sp));
    // A minus in the inner margin breaks condition (I).
    SpinConfig1D margin_hit = cfg;
    margin_hit.set(9, -1);
    CHECK(!is_plus_favored(iv, margin_hit, sp));
    // Five minuses in a neighbor interval break condition (II).
    SpinConfig1D crowded = cfg;
    for (Site s = 17; s <= 21; ++s) crowded.set(s, -1);
    CHECK(!is_plus_favored(iv, crowded, sp));
}

TEST_CASE("globally constant configurations") {
    ScaleParams sp{1.0, 0.25, 10.0};
    SpinConfig1D plus = all_plus({-20, 20});
    SpinConfig1D minus({-20, 20}, -1, -1);
    for (int level = 0; level <= 5; ++level)
        for (Site x = -10; x <= 10; x += 3) {
            DyadicInterval iv{level, x};
            CHECK(is_plus_favored(iv, plus, sp));
            CHECK(!is_isolated(iv, plus, sp));
            CHECK(is_minus_favored(iv, minus, sp));
            CHECK(!is_isolated(iv, minus, sp));
        }
    CHECK(is_balanced({-18, 18}, plus, sp));
    CHECK(is_balanced({-18, 18}, minus, sp));
}

TEST_CASE("strong favored implies weak favored") {
    ScaleParams sp{4.0, 0.25, 10.0};
    std::mt19937_64 gen(23);
    for (int t = 0; t < 600; ++t) {
        SpinConfig1D cfg = all_plus({-24, 24});
        for (Site x = -24; x < 24; ++x)
            if (gen() % 3 == 0) cfg.set(x, -1);
        int level = static_cast<int>(gen() % 4);
        DyadicInterval iv{level, static_cast<Site>(gen() % 48) - 24};
        for (int sign : {+1, -1})
            if (is_favored(iv, cfg, sp, sign, false)) CHECK(is_favored(iv, cfg, sp, sign, true));
    }
}

TEST_CASE("expansion arithmetic") {
    CHECK(expand(IntRange{0, 8}, 1.0) == IntRange{0, 8});
    CHECK(expand(IntRange{0, 8}, 1.5) == IntRange{-4, 12});
    CHECK(expand(IntRange{0, 4}, 2.0) == IntRange{-4, 8});
    CHECK(expand(DyadicInterval{3, 8}, 1.5) == IntRange{-4, 12});
}

TEST_CASE("balance predicate: single minus breaks it") {
    ScaleParams sp{1.0, 0.25, 10.0};
    SpinConfig1D cfg = all_plus({-30, 30});
    cfg.set(0, -1);
    // I_0(8) = {0} is isolated (plus favored, holds a minus); its
    // rho_{M_0} expansion is itself, so any region containing 0 spots it.
    CHECK(is_sign_isolated(DyadicInterval{0, 8}, cfg, sp, +1));
    CHECK(!is_balanced({-10, 10}, cfg, sp));
    CHECK(is_balanced({1, 10}, cfg, sp));
}
