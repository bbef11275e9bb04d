#include "lrfim/balance.hpp"

#include <ostream>

namespace lrfim {

namespace {

// Every isolated interval touches the 1-neighborhood of the current minus
// set: plus isolated ones contain a minus, and minus favored ones have minus
// sites adjacent (condition (I) at l >= 1, condition (II) with k = 1 at
// l = 0). An empty minus set admits no isolated interval.
std::optional<IntRange> minus_span(const SpinConfig1D& cfg) {
    Site lo = 0, hi = 0;
    bool found = false;
    for (Site x = cfg.window.lo; x < cfg.window.hi; ++x) {
        if (cfg.spin(x) != -1) continue;
        if (!found) {
            lo = hi = x;
            found = true;
        } else {
            hi = x;
        }
    }
    if (!found) return std::nullopt;
    return IntRange{lo - 1, hi + 2};
}

int max_level(const SpinConfig1D& cfg) {
    double n = static_cast<double>(std::max<Site>(cfg.window.size(), 2));
    return static_cast<int>(std::ceil(std::log2(32.0 * n)));
}

SiteSet minority_sites(const SpinConfig1D& cfg, const DyadicInterval& iv, int sign) {
    SiteSet out;
    IntRange clip = iv.range().clipped(cfg.window);
    for (Site x = clip.lo; x < clip.hi; ++x)
        if (cfg.spin(x) == -sign) out.push_back(x);
    return out;
}

}  // namespace

SpinConfig1D BalanceTrace::config_at(size_t t) const {
    SpinConfig1D cfg = initial;
    for (size_t s = 0; s < t && s < steps.size(); ++s)
        for (Site x : steps[s].flipped) cfg.set(x, -cfg.spin(x));
    return cfg;
}

std::optional<BalanceStep> find_balancing_step(const SpinConfig1D& cfg, const ScaleParams& sp) {
    auto span = minus_span(cfg);
    if (!span) return std::nullopt;
    const int lmax = max_level(cfg);
    for (int level = 0; level <= lmax; ++level) {
        IntRange xs = level_index_span(level, *span);
        for (Site x = xs.lo; x < xs.hi; ++x) {
            DyadicInterval iv{level, x};
            if (!iv.range().intersects(*span)) continue;
            if (is_sign_isolated(iv, cfg, sp, +1) && !iv.contains(0))
                return BalanceStep{iv, true, minority_sites(cfg, iv, +1)};
            if (is_sign_isolated(iv, cfg, sp, -1))
                return BalanceStep{iv, false, minority_sites(cfg, iv, -1)};
        }
    }
    return std::nullopt;
}

BalanceTrace run_balancing(const SpinConfig1D& cfg, const ScaleParams& sp) {
    if (cfg.outside != +1) throw std::invalid_argument("run_balancing requires a plus boundary");
    BalanceTrace trace;
    trace.initial = cfg;
    SpinConfig1D cur = cfg;
    const double n = static_cast<double>(std::max<Site>(cfg.window.size(), 2));
    const size_t budget = std::max<size_t>(64, static_cast<size_t>(64.0 * n * std::log2(n)));
    while (true) {
        auto step = find_balancing_step(cur, sp);
        if (!step) break;
        if (step->flipped.empty()) throw std::logic_error("balancing selected an interval with no flips");
        for (Site x : step->flipped) cur.set(x, -cur.spin(x));
        trace.steps.push_back(std::move(*step));
        if (trace.steps.size() > budget) throw std::runtime_error("balancing step budget exceeded");
    }
    trace.final = std::move(cur);
    return trace;
}

PeierlsResult peierls_map(const SpinConfig1D& cfg, const ScaleParams& sp) {
    PeierlsResult out;
    out.trace = run_balancing(cfg, sp);
    const SpinConfig1D& fin = out.trace.final;

    Site reach = 1;
    for (Site x = fin.window.lo; x < fin.window.hi; ++x)
        if (fin.spin(x) == -1) reach = std::max({reach, std::llabs(x), std::llabs(x) + 1});
    bool any_minus = false;
    for (Site x = fin.window.lo; x < fin.window.hi && !any_minus; ++x)
        if (fin.spin(x) == -1) any_minus = true;
    if (!any_minus) return out;  // all plus: no isolated interval contains 0

    // A level whose intervals can cover the whole minus support with the
    // plus sea around it always yields a plus isolated interval around the
    // origin, so the scan below terminates well before the cap.
    const int lmax = static_cast<int>(std::ceil(std::log2(32.0 * static_cast<double>(reach + 16)))) + 6;
    for (int level = 0; level <= lmax; ++level) {
        DyadicInterval found{};
        bool have = false;
        IntRange xs = level_index_span(level, {0, 1});
        for (Site x = xs.lo; x < xs.hi; ++x) {
            DyadicInterval iv{level, x};
            if (!iv.contains(0)) continue;
            if (is_isolated(iv, fin, sp)) {
                found = iv;
                have = true;
                break;  // x ascending = leftmost first
            }
        }
        if (have) {
            out.interval = found;
            out.flip_set = minority_sites(fin, found, +1);
            return out;
        }
    }
    throw std::logic_error("peierls_map: no isolated interval around the origin found below the level cap");
}

bool check_tame(IntRange iv, const BalanceTrace& trace, size_t T) {
    if (T > trace.steps.size()) throw std::invalid_argument("check_tame: T exceeds trace length");
    const Site len = iv.size();
    for (size_t t = 0; t < T; ++t) {
        Site overlap = iv.clipped(trace.steps[t].interval.range()).size();
        if (16 * (len - overlap) < len) return false;
    }
    return true;
}

std::optional<DyadicInterval> last_flip_interval(const BalanceTrace& trace, Site x) {
    std::optional<DyadicInterval> out;
    for (const BalanceStep& s : trace.steps)
        if (set_contains(s.flipped, x)) out = s.interval;
    return out;
}

void write_trace(std::ostream& os, const BalanceTrace& trace) {
    for (const BalanceStep& s : trace.steps)
        os << s.interval.level << ' ' << s.interval.index << ' ' << (s.to_plus ? "to_plus" : "to_minus") << ' '
           << s.flipped.size() << '\n';
}

}  // namespace lrfim
