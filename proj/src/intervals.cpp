#include "lrfim/intervals.hpp"

namespace lrfim {

DensityClass classify_density(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp) {
    const double len = static_cast<double>(iv.length());
    const double m = static_cast<double>(count_sign(cfg, iv.range(), -1));
    const double p = len - m;
    const double inv = 1.0 / sp.M(iv.level);
    DensityClass out;
    out.minus_dense = m / len > 1.0 - inv;
    out.minus_vacant = m / len <= inv;
    out.minus_occupied = m / len > inv;
    out.plus_dense = p / len > 1.0 - inv;
    out.plus_vacant = p / len <= inv;
    out.plus_occupied = p / len > inv;
    return out;
}

bool is_dense(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp, int sign, bool weak) {
    const double len = static_cast<double>(iv.length());
    const double factor = weak ? sp.c1 : 1.0;
    // |I^sign| > |I|(1 - factor/M_l)  <=>  |I^{-sign}| < |I| factor/M_l
    const double threshold = len * factor / sp.M(iv.level);
    // Fast path: interval fully outside the window is constant.
    if (!iv.range().intersects(cfg.window))
        return cfg.outside == sign ? threshold > 0.0 : len < threshold;
    return static_cast<double>(count_sign(cfg, iv.range(), -sign)) < threshold;
}

namespace {

// Condition (I): all sites at distance 1..2^(l-1) from I carry `sign`.
bool neighborhood_constant(const DyadicInterval& iv, const SpinConfig1D& cfg, int sign) {
    if (iv.level == 0) return true;  // 2^(l-1) = 1/2, no site qualifies
    const Site margin = iv.length() / 2;
    const IntRange left{iv.lo() - margin, iv.lo()};
    const IntRange right{iv.hi(), iv.hi() + margin};
    for (IntRange side : {left, right}) {
        if (cfg.outside != sign && side.size() > side.clipped(cfg.window).size()) return false;
        IntRange clip = side.clipped(cfg.window);
        for (Site x = clip.lo; x < clip.hi; ++x)
            if (cfg.spin(x) != sign) return false;
    }
    return true;
}

}  // namespace

bool is_favored(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp, int sign, bool weak) {
    if (!neighborhood_constant(iv, cfg, sign)) return false;
    const Site kmax = weak ? sp.Mprime(iv.level) : sp.M_floor(iv.level);
    const Site len = iv.length();
    for (int dir : {-1, +1}) {
        for (Site k = 1; k <= kmax; ++k) {
            DyadicInterval nb{iv.level, iv.index + dir * 16 * k};
            if (!nb.range().intersects(cfg.window)) {
                // Everything further out on this side is constant equal to
                // the boundary value; resolve the remaining k at once.
                if (cfg.outside == sign) break;
                double threshold = static_cast<double>(len) * (weak ? sp.c1 : 1.0) / sp.M(iv.level);
                if (static_cast<double>(len) < threshold) break;
                return false;
            }
            if (!is_dense(nb, cfg, sp, sign, weak)) return false;
        }
    }
    return true;
}

bool is_sign_isolated(const DyadicInterval& iv, const SpinConfig1D& cfg, const ScaleParams& sp, int sign,
                      bool weak) {
    if (count_sign(cfg, iv.range(), -sign) == 0) return false;
    return is_favored(iv, cfg, sp, sign, weak);
}

IntRange level_index_span(int level, IntRange span) {
    if (span.empty()) return {0, 0};
    // lo(x) < span.hi  and  hi(x) > span.lo
    // lo(x) = ceil(2^l (x-8) / 16) <= 2^l (x-8)/16 + 1
    const double scale = std::exp2(level - 4);
    Site xmin = static_cast<Site>(std::floor(static_cast<double>(span.lo - (Site{1} << level)) / scale)) + 8 - 2;
    Site xmax = static_cast<Site>(std::ceil(static_cast<double>(span.hi) / scale)) + 8 + 2;
    return {xmin, xmax + 1};
}

bool is_balanced(IntRange region, const SpinConfig1D& cfg, const ScaleParams& sp, bool exclude_origin_plus) {
    for (int level = 0;; ++level) {
        const Site len = Site{1} << level;
        const Site pad = static_cast<Site>(std::floor((sp.M(level) - 1.0) * static_cast<double>(len)));
        if (len + 2 * pad > region.size()) {
            // Larger levels only need more room; M_l grows with l.
            if (len > region.size()) break;
            continue;
        }
        const IntRange allowed{region.lo + pad, region.hi - pad - len + 1};  // admissible lo(x)
        IntRange xs = level_index_span(level, {allowed.lo, allowed.hi + len});
        for (Site x = xs.lo; x < xs.hi; ++x) {
            DyadicInterval iv{level, x};
            Site lo = iv.lo();
            if (lo < allowed.lo || lo >= allowed.hi) continue;
            bool skip_plus = exclude_origin_plus && iv.contains(0);
            if (!skip_plus && is_sign_isolated(iv, cfg, sp, +1)) return false;
            if (is_sign_isolated(iv, cfg, sp, -1)) return false;
        }
    }
    return true;
}

}  // namespace lrfim
