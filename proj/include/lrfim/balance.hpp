#pragma once

#include <iosfwd>
#include <optional>

#include "lrfim/intervals.hpp"

namespace lrfim {

struct BalanceStep {
    DyadicInterval interval;
    bool to_plus = false;  // plus isolated -> minuses flipped to plus
    SiteSet flipped;       // nonempty by construction
};

struct BalanceTrace {
    SpinConfig1D initial;
    SpinConfig1D final;
    std::vector<BalanceStep> steps;

    size_t step_count() const { return steps.size(); }

    // sigma^t, reconstructed by replaying the first t steps.
    SpinConfig1D config_at(size_t t) const;
};

struct PeierlsResult {
    BalanceTrace trace;
    std::optional<DyadicInterval> interval;  // I_sigma, empty if none exists
    SiteSet flip_set;                        // A_sigma = I_sigma^-(sigma^S)
};

// One balancing step: the smallest-level, then leftmost, isolated interval
// in C(sigma) \ C^{+,0}(sigma); plus isolated intervals containing the
// origin are skipped (minus isolated ones containing it are eligible).
std::optional<BalanceStep> find_balancing_step(const SpinConfig1D& cfg, const ScaleParams& sp);

// Runs the procedure to completion. Requires a plus boundary. The step
// budget (64 |window| log2 |window|, at least 64) is a tripwire only:
// termination is guaranteed, exceeding it means a bug.
BalanceTrace run_balancing(const SpinConfig1D& cfg, const ScaleParams& sp);

PeierlsResult peierls_map(const SpinConfig1D& cfg, const ScaleParams& sp);

// Tame up to step T: |I inter B_t^c| >= |I|/16 for every t < T.
bool check_tame(IntRange iv, const BalanceTrace& trace, size_t T);

// Interval that performed the last flip of x, if x was ever flipped.
std::optional<DyadicInterval> last_flip_interval(const BalanceTrace& trace, Site x);

// One step per line: level index direction flipped-count.
void write_trace(std::ostream& os, const BalanceTrace& trace);

}  // namespace lrfim
