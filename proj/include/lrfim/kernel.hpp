#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lrfim/geometry.hpp"

namespace lrfim {

// J_xy = |x-y|^(-alpha) for x != y, 0 on the diagonal. Euclidean norm in 2D.
struct CouplingKernel {
    double alpha = 1.3;
    int dim = 1;

    CouplingKernel() = default;
    CouplingKernel(double a, int d) : alpha(a), dim(d) {
        if (d != 1 && d != 2) throw std::invalid_argument("kernel dimension must be 1 or 2");
        if (a <= d) throw std::invalid_argument("kernel requires alpha > dimension");
    }
};

inline double coupling(Site x, Site y, const CouplingKernel& k) {
    if (k.dim != 1) throw std::invalid_argument("coupling: 1d site with 2d kernel");
    if (x == y) return 0.0;
    return std::pow(static_cast<double>(std::llabs(x - y)), -k.alpha);
}

inline double coupling(Vec2 x, Vec2 y, const CouplingKernel& k) {
    if (k.dim != 2) throw std::invalid_argument("coupling: 2d site with 1d kernel");
    long long d2 = sq_dist(x, y);
    if (d2 == 0) return 0.0;
    return std::pow(static_cast<double>(d2), -0.5 * k.alpha);
}

// Precomputed |d|^(-alpha) for 0 <= d <= max_dist. d = 0 maps to 0.
class CouplingTable1D {
public:
    CouplingTable1D(const CouplingKernel& k, Site max_dist) : vals_(static_cast<size_t>(max_dist) + 1, 0.0) {
        for (Site d = 1; d <= max_dist; ++d)
            vals_[static_cast<size_t>(d)] = std::pow(static_cast<double>(d), -k.alpha);
    }
    double operator()(Site x, Site y) const { return vals_[static_cast<size_t>(std::llabs(x - y))]; }
    Site max_dist() const { return static_cast<Site>(vals_.size()) - 1; }

private:
    std::vector<double> vals_;
};

// Precomputed (dx^2+dy^2)^(-alpha/2) for |dx|,|dy| <= max_coord.
class CouplingTable2D {
public:
    CouplingTable2D(const CouplingKernel& k, int max_coord)
        : n_(max_coord + 1), vals_(static_cast<size_t>(n_) * n_, 0.0) {
        for (int dx = 0; dx < n_; ++dx)
            for (int dy = 0; dy < n_; ++dy) {
                long long d2 = 1LL * dx * dx + 1LL * dy * dy;
                if (d2 > 0) vals_[static_cast<size_t>(dx) * n_ + dy] = std::pow(static_cast<double>(d2), -0.5 * k.alpha);
            }
    }
    double operator()(Vec2 a, Vec2 b) const {
        int dx = a.x < b.x ? b.x - a.x : a.x - b.x;
        int dy = a.y < b.y ? b.y - a.y : a.y - b.y;
        return vals_[static_cast<size_t>(dx) * n_ + dy];
    }
    int max_coord() const { return n_ - 1; }

private:
    int n_;
    std::vector<double> vals_;
};

// J(A,B) = sum_{x in A, y in B} J_xy. Parallel over fixed-size blocks of A
// with partials combined in index order, so the result does not depend on
// the thread count. interaction_sum_serial is the reference kept for tests.
double interaction_sum_serial(const SiteSet& a, const SiteSet& b, const CouplingKernel& k);
double interaction_sum_serial(const SiteSet2& a, const SiteSet2& b, const CouplingKernel& k);
double interaction_sum(const SiteSet& a, const SiteSet& b, const CouplingKernel& k);
double interaction_sum(const SiteSet2& a, const SiteSet2& b, const CouplingKernel& k);
double interaction_sum(const SiteSet2& a, const SiteSet2& b, const CouplingTable2D& table);

// +-1 spins on a finite window, constant boundary value outside.
struct SpinConfig1D {
    IntRange window;
    std::vector<std::int8_t> spins;  // indexed by x - window.lo
    std::int8_t outside = +1;

    SpinConfig1D() = default;
    SpinConfig1D(IntRange w, std::int8_t fill, std::int8_t out)
        : window(w), spins(static_cast<size_t>(w.size()), fill), outside(out) {}

    int spin(Site x) const { return window.contains(x) ? spins[static_cast<size_t>(x - window.lo)] : outside; }
    void set(Site x, int v) {
        if (!window.contains(x)) throw std::out_of_range("SpinConfig1D::set outside window");
        spins[static_cast<size_t>(x - window.lo)] = static_cast<std::int8_t>(v);
    }
    SiteSet sites_with(int sign) const {
        SiteSet out;
        for (Site x = window.lo; x < window.hi; ++x)
            if (spin(x) == sign) out.push_back(x);
        return out;
    }
    bool operator==(const SpinConfig1D&) const = default;
};

struct SpinConfig2D {
    Box2 window;
    std::vector<std::int8_t> spins;  // row-major, (x - x0) * height + (y - y0)
    std::int8_t outside = +1;

    SpinConfig2D() = default;
    SpinConfig2D(Box2 w, std::int8_t fill, std::int8_t out)
        : window(w), spins(static_cast<size_t>(w.area()), fill), outside(out) {}

    size_t idx(Vec2 p) const {
        return static_cast<size_t>(p.x - window.x0) * static_cast<size_t>(window.height()) +
               static_cast<size_t>(p.y - window.y0);
    }
    int spin(Vec2 p) const { return window.contains(p) ? spins[idx(p)] : outside; }
    void set(Vec2 p, int v) {
        if (!window.contains(p)) throw std::out_of_range("SpinConfig2D::set outside window");
        spins[idx(p)] = static_cast<std::int8_t>(v);
    }
    SiteSet2 sites_with(int sign) const {
        SiteSet2 out;
        for (int x = window.x0; x < window.x1; ++x)
            for (int y = window.y0; y < window.y1; ++y)
                if (spin({x, y}) == sign) out.push_back({x, y});
        return out;
    }
    bool operator==(const SpinConfig2D&) const = default;
};

// beta multiplies H only inside Gibbs weights; the Hamiltonian itself is
// evaluated at epsilon * h. An absent field means h = 0.
struct HamiltonianParams {
    double epsilon = 0.0;
    std::vector<double> field;  // aligned with the window; empty = zero field
    Site cutoff = 10000;        // truncation radius R for the Lambda x Lambda^c sum
};

// H = -sum_{x,y in L} J sx sy  -  sum_{x in L, y outside, |y-x|<=R} J sx eta
//     -  sum_{x in L} eps h_x sx.
// The first sum runs over ordered pairs, so each unordered pair contributes
// 2 J_xy.
double hamiltonian(const SpinConfig1D& cfg, const HamiltonianParams& p, const CouplingKernel& k);
double hamiltonian(const SpinConfig2D& cfg, const HamiltonianParams& p, const CouplingKernel& k);

// tau_A(sigma): spins in A negated. A must lie inside the window.
SpinConfig1D flip_set(const SpinConfig1D& cfg, const SiteSet& a);
SpinConfig2D flip_set(const SpinConfig2D& cfg, const SiteSet2& a);

// H(sigma) - H(tau_A(sigma)) at eps = 0, evaluated from cross pairs only:
// 4 * sum_{x in A, y in L \ A} J sx sy + 2 * sum_{x in A, y outside, <=R} J sx eta,
// all negated. Agrees with the direct difference of the two Hamiltonians.
double flip_energy_gain(const SpinConfig1D& cfg, const SiteSet& a, const CouplingKernel& k, Site cutoff);
double flip_energy_gain(const SpinConfig2D& cfg, const SiteSet2& a, const CouplingKernel& k, Site cutoff);

// J(A, A^c) with A^c truncated to (bounding range of A expanded by `cutoff`) \ A.
double truncated_complement_interaction(const SiteSet& a, const CouplingKernel& k, Site cutoff);
double truncated_complement_interaction(const SiteSet2& a, const CouplingKernel& k, Site cutoff);

}  // namespace lrfim
