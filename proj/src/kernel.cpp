#include "lrfim/kernel.hpp"

#include <omp.h>

namespace lrfim {

namespace {

constexpr size_t kBlock = 2048;

// Deterministic parallel reduction: fixed blocks, partials summed in order.
template <typename Body>
double blocked_sum(size_t n, const Body& body) {
    size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
    for (long long bi = 0; bi < static_cast<long long>(nblocks); ++bi) {
        size_t begin = static_cast<size_t>(bi) * kBlock;
        size_t end = std::min(begin + kBlock, n);
        double acc = 0.0;
        for (size_t i = begin; i < end; ++i) acc += body(i);
        partial[static_cast<size_t>(bi)] = acc;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

}  // namespace

double interaction_sum_serial(const SiteSet& a, const SiteSet& b, const CouplingKernel& k) {
    double total = 0.0;
    for (Site x : a)
        for (Site y : b) total += coupling(x, y, k);
    return total;
}

double interaction_sum_serial(const SiteSet2& a, const SiteSet2& b, const CouplingKernel& k) {
    double total = 0.0;
    for (Vec2 x : a)
        for (Vec2 y : b) total += coupling(x, y, k);
    return total;
}

double interaction_sum(const SiteSet& a, const SiteSet& b, const CouplingKernel& k) {
    if (a.empty() || b.empty()) return 0.0;
    if (a.size() * b.size() < 4 * kBlock) return interaction_sum_serial(a, b, k);
    return blocked_sum(a.size(), [&](size_t i) {
        double acc = 0.0;
        for (Site y : b) acc += coupling(a[i], y, k);
        return acc;
    });
}

double interaction_sum(const SiteSet2& a, const SiteSet2& b, const CouplingKernel& k) {
    if (a.empty() || b.empty()) return 0.0;
    if (a.size() * b.size() < 4 * kBlock) return interaction_sum_serial(a, b, k);
    return blocked_sum(a.size(), [&](size_t i) {
        double acc = 0.0;
        for (Vec2 y : b) acc += coupling(a[i], y, k);
        return acc;
    });
}

double interaction_sum(const SiteSet2& a, const SiteSet2& b, const CouplingTable2D& table) {
    if (a.empty() || b.empty()) return 0.0;
    return blocked_sum(a.size(), [&](size_t i) {
        double acc = 0.0;
        for (Vec2 y : b) acc += table(a[i], y);
        return acc;
    });
}

double hamiltonian(const SpinConfig1D& cfg, const HamiltonianParams& p, const CouplingKernel& k) {
    if (!p.field.empty() && p.field.size() != cfg.spins.size())
        throw std::invalid_argument("hamiltonian: field size does not match window");
    const Site lo = cfg.window.lo, hi = cfg.window.hi;
    double pair_term = 0.0;
    for (Site x = lo; x < hi; ++x)
        for (Site y = x + 1; y < hi; ++y)
            pair_term += 2.0 * coupling(x, y, k) * cfg.spin(x) * cfg.spin(y);
    double boundary = 0.0;
    for (Site x = lo; x < hi; ++x) {
        double row = 0.0;
        for (Site y = lo - 1; y >= x - p.cutoff; --y) row += coupling(x, y, k);
        for (Site y = hi; y <= x + p.cutoff; ++y) row += coupling(x, y, k);
        boundary += row * cfg.spin(x) * cfg.outside;
    }
    double field = 0.0;
    if (p.epsilon != 0.0 && !p.field.empty())
        for (Site x = lo; x < hi; ++x) field += p.epsilon * p.field[static_cast<size_t>(x - lo)] * cfg.spin(x);
    return -pair_term - boundary - field;
}

double hamiltonian(const SpinConfig2D& cfg, const HamiltonianParams& p, const CouplingKernel& k) {
    if (!p.field.empty() && p.field.size() != cfg.spins.size())
        throw std::invalid_argument("hamiltonian: field size does not match window");
    const Box2 w = cfg.window;
    SiteSet2 all;
    all.reserve(static_cast<size_t>(w.area()));
    for (int x = w.x0; x < w.x1; ++x)
        for (int y = w.y0; y < w.y1; ++y) all.push_back({x, y});

    double pair_term = 0.0;
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j)
            pair_term += 2.0 * coupling(all[i], all[j], k) * cfg.spin(all[i]) * cfg.spin(all[j]);

    const int R = static_cast<int>(p.cutoff);
    double boundary = 0.0;
    for (const Vec2& s : all) {
        double row = 0.0;
        for (int x = s.x - R; x <= s.x + R; ++x)
            for (int y = s.y - R; y <= s.y + R; ++y) {
                Vec2 q{x, y};
                if (w.contains(q)) continue;
                long long d2 = sq_dist(s, q);
                if (d2 > 1LL * R * R) continue;
                row += std::pow(static_cast<double>(d2), -0.5 * k.alpha);
            }
        boundary += row * cfg.spin(s) * cfg.outside;
    }
    double field = 0.0;
    if (p.epsilon != 0.0 && !p.field.empty())
        for (const Vec2& s : all) field += p.epsilon * p.field[cfg.idx(s)] * cfg.spin(s);
    return -pair_term - boundary - field;
}

SpinConfig1D flip_set(const SpinConfig1D& cfg, const SiteSet& a) {
    SpinConfig1D out = cfg;
    for (Site x : a) {
        if (!cfg.window.contains(x)) throw std::out_of_range("flip_set: site outside window");
        out.set(x, -cfg.spin(x));
    }
    return out;
}

SpinConfig2D flip_set(const SpinConfig2D& cfg, const SiteSet2& a) {
    SpinConfig2D out = cfg;
    for (Vec2 p : a) {
        if (!cfg.window.contains(p)) throw std::out_of_range("flip_set: site outside window");
        out.set(p, -cfg.spin(p));
    }
    return out;
}

double flip_energy_gain(const SpinConfig1D& cfg, const SiteSet& a, const CouplingKernel& k, Site cutoff) {
    double interior = 0.0;
    for (Site x : a)
        for (Site y = cfg.window.lo; y < cfg.window.hi; ++y) {
            if (set_contains(a, y)) continue;
            interior += coupling(x, y, k) * cfg.spin(x) * cfg.spin(y);
        }
    double boundary = 0.0;
    for (Site x : a) {
        double row = 0.0;
        for (Site y = cfg.window.lo - 1; y >= x - cutoff; --y) row += coupling(x, y, k);
        for (Site y = cfg.window.hi; y <= x + cutoff; ++y) row += coupling(x, y, k);
        boundary += row * cfg.spin(x) * cfg.outside;
    }
    return -4.0 * interior - 2.0 * boundary;
}

double flip_energy_gain(const SpinConfig2D& cfg, const SiteSet2& a, const CouplingKernel& k, Site cutoff) {
    const Box2 w = cfg.window;
    const int R = static_cast<int>(cutoff);
    double interior = 0.0, boundary = 0.0;
    for (Vec2 s : a) {
        for (int x = w.x0; x < w.x1; ++x)
            for (int y = w.y0; y < w.y1; ++y) {
                Vec2 q{x, y};
                if (set_contains(a, q)) continue;
                interior += coupling(s, q, k) * cfg.spin(s) * cfg.spin(q);
            }
        double row = 0.0;
        for (int x = s.x - R; x <= s.x + R; ++x)
            for (int y = s.y - R; y <= s.y + R; ++y) {
                Vec2 q{x, y};
                if (w.contains(q)) continue;
                long long d2 = sq_dist(s, q);
                if (d2 > 1LL * R * R) continue;
                row += std::pow(static_cast<double>(d2), -0.5 * k.alpha);
            }
        boundary += row * cfg.spin(s) * cfg.outside;
    }
    return -4.0 * interior - 2.0 * boundary;
}

double truncated_complement_interaction(const SiteSet& a, const CouplingKernel& k, Site cutoff) {
    if (a.empty()) return 0.0;
    Site lo = a.front() - cutoff, hi = a.back() + cutoff + 1;
    CouplingTable1D table(k, hi - lo);
    return blocked_sum(a.size(), [&](size_t i) {
        double acc = 0.0;
        for (Site y = lo; y < hi; ++y) acc += table(a[i], y);
        for (Site y : a) acc -= table(a[i], y);
        return acc;
    });
}

double truncated_complement_interaction(const SiteSet2& a, const CouplingKernel& k, Site cutoff) {
    if (a.empty()) return 0.0;
    Box2 w = bounding_box(a).expanded(static_cast<int>(cutoff));
    CouplingTable2D table(k, static_cast<int>(std::max(w.width(), w.height())));
    return blocked_sum(a.size(), [&](size_t i) {
        double acc = 0.0;
        for (int x = w.x0; x < w.x1; ++x)
            for (int y = w.y0; y < w.y1; ++y) acc += table(a[i], {x, y});
        for (Vec2 y : a) acc -= table(a[i], y);
        return acc;
    });
}

}  // namespace lrfim
