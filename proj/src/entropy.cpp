#include "lrfim/entropy.hpp"

#include <set>

namespace lrfim {

PsiMap psi(const SiteSet& a, int level, IntRange host) {
    PsiMap out;
    out.level = level;
    out.first_tile = tile_of(host.lo, level);
    const Site last_tile = tile_of(host.hi - 1, level);
    out.values.assign(static_cast<size_t>(last_tile - out.first_tile + 1), +1);
    for (Site t = out.first_tile; t <= last_tile; ++t) {
        IntRange tr = tile_range(t, level);
        Site inside = 0;
        for (Site x : a)
            if (tr.contains(x)) ++inside;
        std::int8_t v;
        if (inside == tr.size())
            v = -1;
        else if (inside == 0)
            v = +1;
        else
            v = 0;
        out.values[static_cast<size_t>(t - out.first_tile)] = v;
    }
    return out;
}

SiteSet BalancedFamily::member_sites(size_t i) const {
    SiteSet out;
    std::uint32_t mask = members[i];
    for (Site b = 0; b < host.length(); ++b)
        if ((mask >> b) & 1u) out.push_back(host.lo() + b);
    return out;
}

BalancedFamily enumerate_balanced(const DyadicInterval& host, const ScaleParams& sp) {
    const Site n = host.length();
    if (n > 20) throw std::invalid_argument("enumerate_balanced: host larger than 20 sites");
    BalancedFamily fam;
    fam.host = host;
    SpinConfig1D cfg(host.range(), +1, +1);
    const std::uint32_t total = static_cast<std::uint32_t>(1u << n);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        for (Site i = 0; i < n; ++i)
            cfg.spins[static_cast<size_t>(i)] = (mask >> i) & 1u ? -1 : +1;
        if (is_balanced(host.range(), cfg, sp)) fam.members.push_back(mask);
    }
    return fam;
}

BalancedFamily filter_q_band(const BalancedFamily& fam, const CouplingKernel& k, Site cutoff, double q) {
    BalancedFamily out;
    out.host = fam.host;
    for (size_t i = 0; i < fam.members.size(); ++i) {
        SiteSet a = fam.member_sites(i);
        if (a.empty()) continue;
        double j = truncated_complement_interaction(a, k, cutoff);
        if (j >= q && j < 2.0 * q) out.members.push_back(fam.members[i]);
    }
    return out;
}

long long count_images(const BalancedFamily& fam, int level) {
    std::set<PsiMap> images;
    for (size_t i = 0; i < fam.members.size(); ++i)
        images.insert(psi(fam.member_sites(i), level, fam.host.range()));
    return static_cast<long long>(images.size());
}

RefinementCheck refinement_counts_check(const BalancedFamily& fam, int level) {
    std::map<PsiMap, std::set<PsiMap>> groups;
    for (size_t i = 0; i < fam.members.size(); ++i) {
        SiteSet a = fam.member_sites(i);
        groups[psi(a, level + 1, fam.host.range())].insert(psi(a, level, fam.host.range()));
    }
    RefinementCheck out;
    out.groups = static_cast<long long>(groups.size());
    const double log3 = std::log(3.0);
    for (auto& [coarse, fine_images] : groups) {
        double cap = std::pow(3.0, 2.0 * static_cast<double>(coarse.zero_count()));
        double margin = std::log(static_cast<double>(fine_images.size())) / log3 -
                        2.0 * static_cast<double>(coarse.zero_count());
        out.worst_log3_margin = std::max(out.worst_log3_margin, margin);
        if (static_cast<double>(fine_images.size()) > cap * (1.0 + 1e-12)) out.pass = false;
    }
    return out;
}

std::vector<SiteSet> coarse_sets(const SiteSet& a, int n) {
    std::vector<SiteSet> out;
    for (int level = 0; level <= n - 2; ++level) {
        std::set<Site> tiles;
        for (Site x : a) tiles.insert(tile_of(x, level));
        SiteSet cur;
        for (Site t : tiles) {
            IntRange tr = tile_range(t, level);
            for (Site x = tr.lo; x < tr.hi; ++x) cur.push_back(x);
        }
        sort_unique(cur);
        out.push_back(std::move(cur));
    }
    return out;
}

}  // namespace lrfim
