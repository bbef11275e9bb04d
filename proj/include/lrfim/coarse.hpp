#pragma once

#include "lrfim/kernel.hpp"

namespace lrfim {

// Cubes C_l(x) = [2^(rl) x_i, 2^(rl)(x_i+1))^2 tile Z^2 at each level.
struct CubeGrid {
    int r = 5;

    CubeGrid() = default;
    explicit CubeGrid(int rr) : r(rr) {
        if (rr <= 4) throw std::invalid_argument("CubeGrid requires r > 4");
    }
    long long side(int level) const { return 1LL << (r * level); }
    Vec2 cube_of(Vec2 p, int level) const {
        long long s = side(level);
        return {static_cast<int>(floor_div(p.x, s)), static_cast<int>(floor_div(p.y, s))};
    }
    Box2 cube_box(Vec2 cube, int level) const {
        long long s = side(level);
        return {static_cast<int>(cube.x * s), static_cast<int>(cube.y * s), static_cast<int>((cube.x + 1) * s),
                static_cast<int>((cube.y + 1) * s)};
    }
    // C_hat: the cube minus an outer layer of thickness 2^(r(l-1)). Empty at
    // l = 0 (the fractional layer removes every integer point).
    Box2 shrunk_cube_box(Vec2 cube, int level) const {
        if (level == 0) return {0, 0, 0, 0};
        long long s = side(level), inner = side(level - 1);
        return {static_cast<int>(cube.x * s + inner), static_cast<int>(cube.y * s + inner),
                static_cast<int>((cube.x + 1) * s - inner), static_cast<int>((cube.y + 1) * s - inner)};
    }
};

using CubeSet = std::vector<Vec2>;  // sorted, unique cube coordinates
using CubePair = std::pair<Vec2, Vec2>;

// l-cubes at least half covered by A.
CubeSet admissible_cubes(const SiteSet2& a, int level, const CubeGrid& grid);

// Adjacent pairs (inside, outside) of a cube collection.
std::vector<CubePair> edge_boundary(const CubeSet& s);

// B_l(A): the union of admissible cubes as sites.
SiteSet2 coarse_approximation(const SiteSet2& a, int level, const CubeGrid& grid);

// Q_l(A) = sum over admissible edge pairs of J(A inter C_hat, A^c inter C_hat'),
// with A^c truncated to `window`.
double level_interaction(const SiteSet2& a, Box2 window, int level, const CubeGrid& grid,
                         const CouplingTable2D& table);

// Smallest level whose single cube covers `window`; levels above it
// contribute nothing.
int top_level(Box2 window, const CubeGrid& grid);

struct NoOverlapCheck {
    double sum_q = 0.0;
    double j_a = 0.0;
    bool pass = false;
};

// sum_l Q_l(A) <= J(A), both sides truncated to the same padded window.
NoOverlapCheck no_overlap_check(const SiteSet2& a, const CouplingKernel& k, const CubeGrid& grid, int pad);

struct PairBoundCheck {
    long long pairs = 0;
    long long failures = 0;
    double min_j = std::numeric_limits<double>::infinity();
    double bound = 0.0;
    bool pass() const { return failures == 0; }
};

// J(A inter C_hat, A^c inter C_hat') >= b6 2^(r l (4 - alpha)) per admissible
// edge pair, b6 = 1/(16 3^alpha).
PairBoundCheck large_int_check(const SiteSet2& a, int level, const CouplingKernel& k, const CubeGrid& grid,
                               int pad);

inline double b6_constant(double alpha) { return 1.0 / (16.0 * std::pow(3.0, alpha)); }

struct FfsLevelReport {
    int level = 0;
    double q = 0.0;
    long long boundary_pairs = 0;
    double boundary_cap = 0.0;
    long long sym_diff = 0;
    double sym_diff_cap = 0.0;
    bool pass = true;
};

// Per level: |bd C_l(A)| <= Q_l / (b6 2^(rl(4-alpha))) and
// |B_l delta B_{l+1}| <= b7 2^(rl(alpha-2)) Q_l with b7 = 2^(2r+1)/b6.
// At l = 0 (where Q_0 = 0 by the empty C_hat convention) the weaker J(A)
// bounds are used instead.
std::vector<FfsLevelReport> ffs_checks(const SiteSet2& a, const CouplingKernel& k, const CubeGrid& grid, int pad);

struct IsoCheck {
    long long boundary = 0;
    double bound = 0.0;
    bool pass = false;
};

// Two cube collections tiling a g x g grid: if min(|C|,|C'|) >= c g^2 then
// the straddling boundary has at least sqrt(c) g pairs. `cells` holds the
// members of one side as coordinates in [0,g)^2.
IsoCheck iso_check(const std::vector<Vec2>& cells, int g, double c);

// Perimeter (infinite-grid edge boundary count) of a cell set.
long long cell_perimeter(const std::vector<Vec2>& cells);

struct MixingProbe {
    std::vector<long long> m_values;
    std::vector<double> min_j;        // annealed minima of J(C+, C-)
    std::vector<double> basis;        // sqrt(m+1) ln(m+1)
    double fitted_coefficient = 0.0;  // least squares on min_j ~ c basis
    double max_residual = 0.0;        // max |y - c w| / (c w)
    double b8_hat = 0.0;              // min over m of min_j / basis
};

// Minimizes J(C+, C-) over configurations of an L-cube with exactly m
// minority spins via seeded simulated annealing (corner-block and random
// starts, deterministic given `seed`). The cube is the level-`level` cube of
// the grid, so its side is a grid power.
MixingProbe cube_mixing_bound_probe(const CubeGrid& grid, int level, const std::vector<long long>& m_values,
                                    const CouplingKernel& k, std::uint64_t seed, int restarts = 3,
                                    int steps_per_restart = 60000);

}  // namespace lrfim
