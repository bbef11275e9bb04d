#pragma once

#include <cstdint>
#include <map>

#include "lrfim/intervals.hpp"

namespace lrfim {

// Level-l tiles are the intervals [t 2^l, (t+1) 2^l); they partition Z and
// are the i = 0 sub-collection used by the coarse maps.
inline Site tile_of(Site x, int level) { return floor_div(x, Site{1} << level); }
inline IntRange tile_range(Site t, int level) { return {t << level, (t + 1) << level}; }

// Trichotomy per tile meeting the host: -1 if the tile lies inside A, +1 if
// it misses A, 0 otherwise.
struct PsiMap {
    int level = 0;
    Site first_tile = 0;
    std::vector<std::int8_t> values;

    int value_at_tile(Site t) const {
        Site off = t - first_tile;
        if (off < 0 || off >= static_cast<Site>(values.size())) return +1;
        return values[static_cast<size_t>(off)];
    }
    Site zero_count() const {
        Site n = 0;
        for (auto v : values) n += v == 0;
        return n;
    }
    auto operator<=>(const PsiMap&) const = default;
};

PsiMap psi(const SiteSet& a, int level, IntRange host);

// Subsets of the host realizable as I^-(sigma) for sigma balanced on the
// host (indicator configuration, plus boundary). Hosts above 20 sites are
// rejected; enumeration is exhaustive.
struct BalancedFamily {
    DyadicInterval host;
    std::vector<std::uint32_t> members;  // bit i = site host.lo() + i

    SiteSet member_sites(size_t i) const;
};

BalancedFamily enumerate_balanced(const DyadicInterval& host, const ScaleParams& sp);

// Keep only members with J(A, A^c) in [Q, 2Q), complement truncated at
// `cutoff`.
BalancedFamily filter_q_band(const BalancedFamily& fam, const CouplingKernel& k, Site cutoff, double q);

// Number of distinct Psi_level images over the family.
long long count_images(const BalancedFamily& fam, int level);

// For each distinct Psi_{level+1} image: the number of distinct Psi_level
// refinements within the family, against the 3^(2 Z) cap where Z is the
// image's zero-tile count.
struct RefinementCheck {
    long long groups = 0;
    bool pass = true;
    double worst_log3_margin = 0.0;  // max over groups of log3(count) - 2 Z
};

RefinementCheck refinement_counts_check(const BalancedFamily& fam, int level);

// A = A_0 up to A_{n-2}, where A_l is the union of level-l tiles meeting A.
std::vector<SiteSet> coarse_sets(const SiteSet& a, int n);

}  // namespace lrfim
