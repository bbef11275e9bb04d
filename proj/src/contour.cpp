#include "lrfim/contour.hpp"

#include <deque>
#include <set>

namespace lrfim {

namespace {

const Vec2 kSteps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

double min_sq_dist(const SiteSet2& a, const SiteSet2& b) {
    long long best = std::numeric_limits<long long>::max();
    for (Vec2 p : a)
        for (Vec2 q : b) best = std::min(best, sq_dist(p, q));
    return static_cast<double>(best);
}

// (B): d(g,g') > M min(|V|,|V'|)^(a/2), compared via squared distances.
bool pair_ok(const SiteSet2& g1, const SiteSet2& g2, size_t v1, size_t v2, const PartitionParams& pp) {
    double thr = pp.M * std::pow(static_cast<double>(std::min(v1, v2)), pp.a / 2.0);
    return min_sq_dist(g1, g2) > thr * thr;
}

}  // namespace

SiteSet2 incorrect_points(const SpinConfig2D& cfg) {
    SiteSet2 out;
    Box2 scan = cfg.window.expanded(1);
    for (int x = scan.x0; x < scan.x1; ++x)
        for (int y = scan.y0; y < scan.y1; ++y) {
            Vec2 p{x, y};
            int s = cfg.spin(p);
            bool bad = false;
            for (Vec2 d : kSteps) {
                Vec2 q{p.x + d.x, p.y + d.y};
                if (cfg.spin(q) == -s) {
                    bad = true;
                    break;
                }
            }
            if (bad) out.push_back(p);
        }
    sort_unique(out);
    return out;
}

SiteSet2 hull(const SiteSet2& a) {
    if (a.empty()) return {};
    Box2 box = bounding_box(a).expanded(1);
    const int w = static_cast<int>(box.width()), h = static_cast<int>(box.height());
    std::vector<std::uint8_t> blocked(static_cast<size_t>(w) * h, 0), seen(static_cast<size_t>(w) * h, 0);
    auto at = [&](Vec2 p) { return static_cast<size_t>(p.x - box.x0) * h + static_cast<size_t>(p.y - box.y0); };
    for (Vec2 p : a) blocked[at(p)] = 1;
    std::deque<Vec2> queue;
    auto push = [&](Vec2 p) {
        if (!box.contains(p)) return;
        size_t i = at(p);
        if (blocked[i] || seen[i]) return;
        seen[i] = 1;
        queue.push_back(p);
    };
    for (int x = box.x0; x < box.x1; ++x) {
        push({x, box.y0});
        push({x, box.y1 - 1});
    }
    for (int y = box.y0; y < box.y1; ++y) {
        push({box.x0, y});
        push({box.x1 - 1, y});
    }
    while (!queue.empty()) {
        Vec2 p = queue.front();
        queue.pop_front();
        for (Vec2 d : kSteps) push({p.x + d.x, p.y + d.y});
    }
    SiteSet2 out;
    for (int x = box.x0; x < box.x1; ++x)
        for (int y = box.y0; y < box.y1; ++y) {
            Vec2 p{x, y};
            if (blocked[at(p)] || !seen[at(p)]) out.push_back(p);
        }
    sort_unique(out);
    return out;
}

std::vector<SiteSet2> finest_partition(const SiteSet2& a, const PartitionParams& pp) {
    std::vector<SiteSet2> parts;
    for (Vec2 p : a) parts.push_back({p});
    bool merged = true;
    while (merged) {
        merged = false;
        std::vector<size_t> vsize(parts.size());
        for (size_t i = 0; i < parts.size(); ++i) vsize[i] = hull(parts[i]).size();
        for (size_t i = 0; i < parts.size() && !merged; ++i)
            for (size_t j = i + 1; j < parts.size() && !merged; ++j) {
                if (pair_ok(parts[i], parts[j], vsize[i], vsize[j], pp)) continue;
                parts[i].insert(parts[i].end(), parts[j].begin(), parts[j].end());
                sort_unique(parts[i]);
                parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
            }
    }
    // Hard postcondition: the fixpoint satisfies (A) and (B).
    size_t total = 0;
    for (auto& p : parts) total += p.size();
    if (total != a.size()) throw std::logic_error("finest_partition: lost sites");
    for (size_t i = 0; i < parts.size(); ++i)
        for (size_t j = i + 1; j < parts.size(); ++j)
            if (!pair_ok(parts[i], parts[j], hull(parts[i]).size(), hull(parts[j]).size(), pp))
                throw std::logic_error("finest_partition: fixpoint violates condition (B)");
    return parts;
}

namespace {

// Connected components of box \ support; component 0 collects everything
// reachable from the box frame (the unbounded one once the box padding
// encloses the support).
struct Complement {
    Box2 box;
    std::vector<int> comp;  // -1 on the support
    int ncomp = 0;

    int at(Vec2 p) const {
        if (!box.contains(p)) return 0;
        return comp[static_cast<size_t>(p.x - box.x0) * static_cast<size_t>(box.height()) +
                    static_cast<size_t>(p.y - box.y0)];
    }
};

Complement complement_components(const SiteSet2& support, Box2 box) {
    Complement out;
    out.box = box;
    const int h = static_cast<int>(box.height());
    out.comp.assign(static_cast<size_t>(box.area()), -2);
    auto idx = [&](Vec2 p) { return static_cast<size_t>(p.x - box.x0) * h + static_cast<size_t>(p.y - box.y0); };
    for (Vec2 p : support) out.comp[idx(p)] = -1;
    auto flood = [&](Vec2 seed, int label) {
        std::deque<Vec2> queue{seed};
        out.comp[idx(seed)] = label;
        while (!queue.empty()) {
            Vec2 p = queue.front();
            queue.pop_front();
            for (Vec2 d : kSteps) {
                Vec2 q{p.x + d.x, p.y + d.y};
                if (!box.contains(q) || out.comp[idx(q)] != -2) continue;
                out.comp[idx(q)] = label;
                queue.push_back(q);
            }
        }
    };
    // Unbounded component first, seeded from the frame.
    for (int x = box.x0; x < box.x1; ++x)
        for (int y : {box.y0, box.y1 - 1})
            if (out.comp[idx({x, y})] == -2) flood({x, y}, 0);
    for (int y = box.y0; y < box.y1; ++y)
        for (int x : {box.x0, box.x1 - 1})
            if (out.comp[idx({x, y})] == -2) flood({x, y}, 0);
    out.ncomp = 1;
    for (int x = box.x0; x < box.x1; ++x)
        for (int y = box.y0; y < box.y1; ++y)
            if (out.comp[idx({x, y})] == -2) flood({x, y}, out.ncomp++);
    return out;
}

}  // namespace

std::vector<Contour> extract_contours(const SpinConfig2D& cfg, const PartitionParams& pp) {
    SiteSet2 incorrect = incorrect_points(cfg);
    std::vector<Contour> out;
    if (incorrect.empty()) return out;
    for (const SiteSet2& part : finest_partition(incorrect, pp)) {
        Contour c;
        c.support = part;
        c.vol = hull(part);
        Box2 box = bounding_box(part).expanded(2);
        Complement comp = complement_components(part, box);
        std::vector<int> label(static_cast<size_t>(comp.ncomp), 0);
        for (int x = box.x0; x < box.x1; ++x)
            for (int y = box.y0; y < box.y1; ++y) {
                Vec2 p{x, y};
                int id = comp.at(p);
                if (id < 0) continue;
                bool touches = false;
                for (Vec2 d : kSteps)
                    if (comp.at({p.x + d.x, p.y + d.y}) == -1) touches = true;
                if (!touches) continue;
                int s = cfg.spin(p);
                if (label[static_cast<size_t>(id)] == 0)
                    label[static_cast<size_t>(id)] = s;
                else if (label[static_cast<size_t>(id)] != s)
                    throw std::runtime_error("extract_contours: non-constant sign on a component boundary");
            }
        c.outer_label = label[0] == 0 ? cfg.outside : label[0];
        for (Vec2 p : c.vol) {
            if (set_contains(c.support, p)) continue;
            int id = comp.at(p);
            if (id <= 0) throw std::logic_error("extract_contours: interior site in the unbounded component");
            (label[static_cast<size_t>(id)] > 0 ? c.int_plus : c.int_minus).push_back(p);
        }
        sort_unique(c.int_plus);
        sort_unique(c.int_minus);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<size_t> external_indices(const std::vector<Contour>& contours) {
    std::vector<size_t> out;
    for (size_t i = 0; i < contours.size(); ++i) {
        bool external = true;
        for (size_t j = 0; j < contours.size() && external; ++j) {
            if (i == j) continue;
            bool contained = true;
            for (Vec2 p : contours[i].vol)
                if (!set_contains(contours[j].vol, p)) {
                    contained = false;
                    break;
                }
            external = !contained;
        }
        if (external) out.push_back(i);
    }
    return out;
}

namespace {

SpinConfig2D extended_to(const SpinConfig2D& cfg, Box2 must_cover) {
    Box2 w{std::min(cfg.window.x0, must_cover.x0), std::min(cfg.window.y0, must_cover.y0),
           std::max(cfg.window.x1, must_cover.x1), std::max(cfg.window.y1, must_cover.y1)};
    if (w == cfg.window) return cfg;
    SpinConfig2D out(w, cfg.outside, cfg.outside);
    for (int x = cfg.window.x0; x < cfg.window.x1; ++x)
        for (int y = cfg.window.y0; y < cfg.window.y1; ++y) out.set({x, y}, cfg.spin({x, y}));
    return out;
}

}  // namespace

SpinConfig2D erase_contour(const SpinConfig2D& cfg, const Contour& gamma) {
    // V(gamma) can poke one cell past the stored window.
    SpinConfig2D out = extended_to(cfg, bounding_box(gamma.vol));
    for (Vec2 p : gamma.support) out.set(p, +1);
    for (Vec2 p : gamma.int_minus) out.set(p, -out.spin(p));
    return out;
}

EraseCost cost_erasing_check(const SpinConfig2D& cfg, const Contour& gamma, const CouplingKernel& k, Site cutoff) {
    EraseCost out;
    HamiltonianParams hp;
    hp.cutoff = cutoff;
    // Both energies on a common window, so the boundary terms cancel off A.
    SpinConfig2D base = extended_to(cfg, bounding_box(gamma.vol));
    SpinConfig2D erased = erase_contour(base, gamma);
    out.delta_h = hamiltonian(base, hp, k) - hamiltonian(erased, hp, k);
    out.support_size = static_cast<double>(gamma.support.size());
    out.j_int_minus =
        gamma.int_minus.empty() ? 0.0 : truncated_complement_interaction(gamma.int_minus, k, cutoff);
    out.ratio = out.delta_h / (out.support_size + out.j_int_minus);
    return out;
}

long long enumerate_contours_at_size(int n, Box2 box, const PartitionParams& pp, int max_minus) {
    if (n > 8) throw std::invalid_argument("enumerate_contours_at_size: n > 8 not exhaustible");
    // Generating configurations: minus sets F inside the box. Every
    // component of F contributes at least 5 incorrect points, so supports of
    // size <= 8 only arise from small F; max_minus = 3 is already exhaustive
    // for that range.
    SiteSet2 cells;
    for (int x = box.x0; x < box.x1; ++x)
        for (int y = box.y0; y < box.y1; ++y) cells.push_back({x, y});
    const size_t m = cells.size();
    std::set<std::pair<SiteSet2, std::pair<SiteSet2, SiteSet2>>> seen;  // (support, (int+, int-))
    std::vector<size_t> pick;
    SpinConfig2D cfg(box.expanded(2), +1, +1);

    auto consider = [&]() {
        for (size_t i : pick) cfg.set(cells[i], -1);
        std::vector<Contour> contours = extract_contours(cfg, pp);
        for (size_t idx : external_indices(contours)) {
            const Contour& c = contours[idx];
            if (c.size() != n) continue;
            if (!set_contains(c.vol, {0, 0})) continue;
            bool inside = true;
            for (Vec2 p : c.support) inside = inside && box.contains(p);
            if (inside) seen.insert({c.support, {c.int_plus, c.int_minus}});
        }
        for (size_t i : pick) cfg.set(cells[i], +1);
    };

    // All subsets of size 1..max_minus.
    auto rec = [&](auto&& self, size_t start, int remaining) -> void {
        if (!pick.empty()) consider();
        if (remaining == 0) return;
        for (size_t i = start; i < m; ++i) {
            pick.push_back(i);
            self(self, i + 1, remaining - 1);
            pick.pop_back();
        }
    };
    rec(rec, 0, max_minus);
    return static_cast<long long>(seen.size());
}

}  // namespace lrfim
