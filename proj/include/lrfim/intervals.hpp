#pragma once

#include <cmath>
#include <stdexcept>

#include "lrfim/kernel.hpp"

namespace lrfim {

// I_l(x) = [2^(l-4) x - 2^(l-1), 2^(l-4) x + 2^(l-1)) intersected with Z.
// Endpoints are dyadic rationals with denominator 16; the site range is
// computed exactly. |I_l(x)| = 2^l for every (l, x). Below level 4 distinct
// indices can share a site set; they are kept distinct on purpose.
struct DyadicInterval {
    int level = 0;
    Site index = 0;

    Site length() const { return Site{1} << level; }
    Site lo() const { return ceil_div((Site{1} << level) * (index - 8), 16); }
    Site hi() const { return lo() + length(); }
    IntRange range() const { return {lo(), hi()}; }
    bool contains(Site s) const { return s >= lo() && s < hi(); }
    bool operator==(const DyadicInterval&) const = default;
};

// Membership in the sub-collection with offset i: the left real endpoint is
// 2^(l-4) (16 y + i) for some integer y, i.e. index - 8 = i (mod 16). For
// each fixed (l, i) these intervals tile Z.
inline bool subcollection(const DyadicInterval& iv, int i) {
    if (i < 0 || i > 15) throw std::invalid_argument("subcollection offset must be in 0..15");
    Site r = (iv.index - 8) % 16;
    if (r < 0) r += 16;
    return r == i;
}

// rho_r(I) = {x : d(x, I) <= (r-1)|I|}, for real r >= 1.
inline IntRange expand(IntRange iv, double r) {
    if (r < 1.0) throw std::invalid_argument("expand requires r >= 1");
    Site pad = static_cast<Site>(std::floor((r - 1.0) * static_cast<double>(iv.size())));
    return {iv.lo - pad, iv.hi + pad};
}

inline IntRange expand(const DyadicInterval& iv, double r) { return expand(iv.range(), r); }

// M_l = M0 2^(delta l); M'_l = 2 floor(M_l / (2 c1)). The paper wants M0
// large; the toy instances here run down to M0 = 1, which the predicates
// accept (M0 < 1 would make every 0-interval favored and is rejected).
struct ScaleParams {
    double M0 = 1.0;
    double delta = 0.001;
    double c1 = 10.0;

    ScaleParams() = default;
    ScaleParams(double m0, double d, double c) : M0(m0), delta(d), c1(c) {
        if (m0 < 1.0) throw std::invalid_argument("ScaleParams: M0 must be >= 1");
        if (d <= 0.0 || d >= 1.0) throw std::invalid_argument("ScaleParams: delta must be in (0,1)");
        if (c < 1.0) throw std::invalid_argument("ScaleParams: c1 must be >= 1");
    }

    double M(int level) const { return M0 * std::exp2(delta * level); }
    Site M_floor(int level) const { return static_cast<Site>(std::floor(M(level))); }
    Site Mprime(int level) const { return 2 * static_cast<Site>(std::floor(M(level) / (2.0 * c1))); }

    static double default_delta(double alpha) { return std::min(0.001, (1.5 - alpha) / 20.0); }
};

struct DensityClass {
    bool minus_dense = false, minus_vacant = false, minus_occupied = false;
    bool plus_dense = false, plus_vacant = false, plus_occupied = false;
};

// Number of sites of `range` carrying `sign`; sites outside the window count
// as the boundary value.
inline Site count_sign(const SpinConfig1D& cfg, IntRange range, int sign) {
    Site inside = 0;
    IntRange clip = range.clipped(cfg.window);
    for (Site x = clip.lo; x < clip.hi; ++x)
        if (cfg.spin(x) == sign) ++inside;
    if (cfg.outside == sign) inside += range.size() - clip.size();
    return inside;
}

// minus dense: |I^-|/|I| > 1 - 1/M_l; minus vacant: <= 1/M_l; minus
// occupied: > 1/M_l. Plus classes mirrored. Dense/vacant/occupied use
// strict/non-strict inequalities exactly as defined, so boundary densities
// can be vacant for both signs.
DensityClass classify_density(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp);

// |I^sign| > |I| (1 - 1/M_l), or with 1/M_l replaced by c1/M_l when weak.
bool is_dense(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp, int sign, bool weak);

// Conditions of a favored interval:
//  (I)  sigma_y = sign whenever 1 <= d(y, I) <= 2^(l-1)   (vacuous at l = 0)
//  (II) I_l(x +- 16k) is (weakly) sign-dense for 1 <= k <= floor(M_l)
//       (floor(M'_l) when weak).
bool is_favored(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp, int sign, bool weak);

inline bool is_plus_favored(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp,
                            bool weak = false) {
    return is_favored(iv, cfg, sp, +1, weak);
}
inline bool is_minus_favored(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp,
                             bool weak = false) {
    return is_favored(iv, cfg, sp, -1, weak);
}

// sign-isolated: sign-favored and containing at least one -sign spin.
bool is_sign_isolated(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp, int sign,
                      bool weak = false);

inline bool is_isolated(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp,
                        bool weak = false) {
    return is_sign_isolated(iv, cfg, sp, +1, weak) || is_sign_isolated(iv, cfg, sp, -1, weak);
}

// Candidate indices x such that I_l(x) intersects [span.lo, span.hi).
IntRange level_index_span(int level, IntRange span);

// sigma is balanced in `region` iff no l-interval I' with
// rho_{M_l}(I') inside `region` is isolated. With exclude_origin_plus set,
// plus isolated intervals containing the origin do not count: they are what
// the balancing procedure legitimately leaves behind, and at small M_l the
// final interval's own expansion fits inside the inspected region.
bool is_balanced(IntRange region, const SpinConfig1D& cfg, const ScaleParams& sp,
                 bool exclude_origin_plus = false);

}  // namespace lrfim
