#include "lrfim/bounds.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace lrfim {

namespace {

SiteSet sites_in(const SpinConfig1D& cfg, IntRange range, int sign) {
    SiteSet out;
    IntRange clip = range.clipped(cfg.window);
    for (Site x = clip.lo; x < clip.hi; ++x)
        if (cfg.spin(x) == sign) out.push_back(x);
    return out;
}

double pow_len(Site n, double e) { return std::pow(static_cast<double>(n), e); }

}  // namespace

BoundCheck min_interaction_lower_bound_check(IntRange iv, const SpinConfig1D& cfg, const CouplingKernel& k) {
    SiteSet minus = sites_in(cfg, iv, -1);
    SiteSet plus = sites_in(cfg, iv, +1);
    Site m = static_cast<Site>(std::min(minus.size(), plus.size()));
    BoundCheck out;
    out.lhs = interaction_sum(minus, plus, k);
    out.rhs = m == 0 ? 0.0 : std::exp2(-k.alpha) * pow_len(m, 2.0 - k.alpha);
    out.pass = out.lhs >= out.rhs * (1.0 - kRelSlack);
    return out;
}

BoundCheck set_interaction_lower_bound_check(const SiteSet& a, const CouplingKernel& k, Site cutoff) {
    if (a.empty()) throw std::invalid_argument("set_interaction_lower_bound_check: empty set");
    BoundCheck out;
    out.lhs = truncated_complement_interaction(a, k, cutoff);
    out.rhs = std::exp2(-k.alpha) * pow_len(static_cast<Site>(a.size()), 2.0 - k.alpha);
    out.pass = out.lhs >= out.rhs * (1.0 - kRelSlack);
    return out;
}

ApproximateInterval approximate_interval(IntRange iv) {
    if (iv.empty()) throw std::invalid_argument("approximate_interval: empty interval");
    const double len = static_cast<double>(iv.size());
    int level = 0;
    while (15.0 / 8.0 * std::exp2(level - 1) < len) ++level;
    ApproximateInterval best{};
    double best_dev = -1.0;
    IntRange xs = level_index_span(level, iv);
    for (Site x = xs.lo; x < xs.hi; ++x) {
        DyadicInterval cand{level, x};
        // real containment: 2^l (x-8) <= 16 u and 2^l (x+8) >= 16 (v+1)
        Site a16 = (Site{1} << level) * (x - 8);
        Site b16 = (Site{1} << level) * (x + 8);
        if (a16 > 16 * iv.lo || b16 < 16 * iv.hi) continue;
        double dl = static_cast<double>(16 * iv.lo - a16) / 16.0;
        double dr = static_cast<double>(b16 - 16 * iv.hi) / 16.0;
        double dev = std::max(dl, dr);
        if (best_dev < 0.0 || dev < best_dev) {
            best_dev = dev;
            best = {cand, dl, dr};
        }
    }
    if (best_dev < 0.0) throw std::logic_error("approximate_interval: no covering interval at the chosen level");
    if (best_dev > 0.7 * len)
        throw std::logic_error("approximate_interval: endpoint distance bound violated");
    return best;
}

bool is_lambda_good(const GoodSequence& seq) {
    const int n = static_cast<int>(seq.bits.size());
    if (n < 1) throw std::invalid_argument("is_lambda_good: empty sequence");
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // proper subintervals only
            bool has_one = false;
            for (int t = i; t <= j && !has_one; ++t) has_one = seq.bits[static_cast<size_t>(t)] == 1;
            if (!has_one) continue;
            const double reach = seq.lambda * static_cast<double>(j - i + 1) + 1.0;
            bool witness = false;
            for (int t = 0; t < n && !witness; ++t) {
                if (t >= i && t <= j) continue;
                if (seq.bits[static_cast<size_t>(t)] != 1) continue;
                int d = t < i ? i - t : t - j;
                witness = static_cast<double>(d) <= reach;
            }
            if (!witness) return false;
        }
    return true;
}

SequenceBound sequence01_bound_check(int n, double lambda) {
    if (n < 1) throw std::invalid_argument("sequence01_bound_check: N >= 1 required");
    if (n > 20) throw std::invalid_argument("sequence01_bound_check: N > 20 not exhaustible");
    SequenceBound out;
    out.min_ones = n + 1;
    GoodSequence seq;
    seq.lambda = lambda;
    seq.bits.assign(static_cast<size_t>(n), 0);
    const unsigned long long total = 1ull << n;
    for (unsigned long long mask = 0; mask < total; ++mask) {
        if (!(mask & 1ull) || !(mask & (1ull << (n - 1)))) continue;
        if (static_cast<long long>(__builtin_popcountll(mask)) >= out.min_ones) continue;
        for (int i = 0; i < n; ++i) seq.bits[static_cast<size_t>(i)] = (mask >> i) & 1ull ? 1 : 0;
        if (!is_lambda_good(seq)) continue;
        out.min_ones = static_cast<long long>(__builtin_popcountll(mask));
    }
    out.bound = std::pow(static_cast<double>(n), std::log(2.0) / std::log(lambda + 2.0));
    out.pass = static_cast<double>(out.min_ones) >= out.bound * (1.0 - kRelSlack);
    return out;
}

BoundCheck balanced_interaction_check(IntRange iv, const SpinConfig1D& cfg, const ScaleParams& sp,
                                      const CouplingKernel& k, double theta, double cbar2) {
    IntRange rho = expand(iv, 1.5);
    if (!is_balanced(rho, cfg, sp))
        throw std::invalid_argument("balanced_interaction_check: configuration not balanced in rho_3/2(I)");
    Site minus_on_iv = count_sign(cfg, iv, -1);
    if (minus_on_iv == 0 || minus_on_iv == iv.size())
        throw std::invalid_argument("balanced_interaction_check: configuration constant on I");
    BoundCheck out;
    out.lhs = interaction_sum(sites_in(cfg, rho, -1), sites_in(cfg, rho, +1), k);
    out.rhs = cbar2 * std::pow(static_cast<double>(iv.size()), theta);
    out.pass = out.lhs >= out.rhs * (1.0 - kRelSlack);
    return out;
}

double calibrate_cbar2(Site max_len, const ScaleParams& sp, const CouplingKernel& k, double theta) {
    double best = std::numeric_limits<double>::infinity();
    for (Site len = 2; len <= max_len; ++len) {
        IntRange iv{0, len};
        IntRange rho = expand(iv, 1.5);
        const Site n = rho.size();
        if (n > 24) throw std::invalid_argument("calibrate_cbar2: window too large to exhaust");
        SpinConfig1D cfg(rho, +1, +1);
        const unsigned long long total = 1ull << n;
        for (unsigned long long mask = 0; mask < total; ++mask) {
            for (Site i = 0; i < n; ++i)
                cfg.spins[static_cast<size_t>(i)] = (mask >> i) & 1ull ? -1 : +1;
            Site minus_on_iv = count_sign(cfg, iv, -1);
            if (minus_on_iv == 0 || minus_on_iv == iv.size()) continue;
            if (!is_balanced(rho, cfg, sp)) continue;
            double j = interaction_sum(sites_in(cfg, rho, -1), sites_in(cfg, rho, +1), k);
            best = std::min(best, j / std::pow(static_cast<double>(len), theta));
        }
    }
    return best;
}

BoundCheck energy_bound_1_check(const PeierlsResult& pr, const CouplingKernel& k, Site cutoff, double theta,
                                double c2) {
    if (pr.flip_set.empty()) throw std::invalid_argument("energy_bound_1_check: empty flip set");
    BoundCheck out;
    out.lhs = truncated_complement_interaction(pr.flip_set, k, cutoff);
    out.rhs = c2 * std::pow(static_cast<double>(pr.interval->length()), theta);
    out.pass = out.lhs >= out.rhs * (1.0 - kRelSlack);
    return out;
}

double calibrate_c2(Site L, const ScaleParams& sp, const CouplingKernel& k, Site cutoff, double theta) {
    IntRange window{-L, L + 1};
    const Site n = window.size();
    if (n > 24) throw std::invalid_argument("calibrate_c2: window too large to exhaust");
    double best = std::numeric_limits<double>::infinity();
    const unsigned long long total = 1ull << n;
    const Site origin_bit = -window.lo;
    for (unsigned long long mask = 0; mask < total; ++mask) {
        if (!((mask >> origin_bit) & 1ull)) continue;  // sigma_0 = -1
        SpinConfig1D cfg(window, +1, +1);
        for (Site i = 0; i < n; ++i)
            cfg.spins[static_cast<size_t>(i)] = (mask >> i) & 1ull ? -1 : +1;
        PeierlsResult pr = peierls_map(cfg, sp);
        if (pr.flip_set.empty()) continue;
        double j = truncated_complement_interaction(pr.flip_set, k, cutoff);
        best = std::min(best, j / std::pow(static_cast<double>(pr.interval->length()), theta));
    }
    return best;
}

EnergyBound2 energy_bound_2_check(const PeierlsResult& pr, const CouplingKernel& k, Site cutoff) {
    if (pr.flip_set.empty()) throw std::invalid_argument("energy_bound_2_check: empty flip set");
    EnergyBound2 out;
    out.delta_h = flip_energy_gain(pr.trace.initial, pr.flip_set, k, cutoff);
    out.j_value = truncated_complement_interaction(pr.flip_set, k, cutoff);
    out.pass = out.delta_h >= out.j_value - kRelSlack * std::fabs(out.delta_h);
    return out;
}

SiteSet flipped_to_minus(const PeierlsResult& pr) {
    SiteSet out;
    for (Site x : pr.flip_set)
        if (pr.trace.initial.spin(x) == +1) out.push_back(x);
    return out;
}

SiteSet flipped_to_plus(const PeierlsResult& pr) {
    SiteSet out;
    const SpinConfig1D& ini = pr.trace.initial;
    const SpinConfig1D& fin = pr.trace.final;
    for (Site x = ini.window.lo; x < ini.window.hi; ++x)
        if (ini.spin(x) == -1 && fin.spin(x) == +1 && !set_contains(pr.flip_set, x)) out.push_back(x);
    return out;
}

BoundCheck first_interaction_check(const PeierlsResult& pr, const CouplingKernel& k, Site cutoff) {
    BoundCheck out;
    const SpinConfig1D& ini = pr.trace.initial;
    const SpinConfig1D& fin = pr.trace.final;
    IntRange iv = pr.interval ? pr.interval->range() : IntRange{0, 0};
    double lhs = 0.0;
    for (Site x : pr.flip_set) {
        if (ini.spin(x) != -1) continue;
        for (Site y = fin.window.lo; y < fin.window.hi; ++y) {
            if (iv.contains(y) || fin.spin(y) != -1) continue;
            lhs += coupling(x, y, k);
        }
    }
    out.lhs = lhs;
    out.rhs = 0.1 * truncated_complement_interaction(pr.flip_set, k, cutoff);
    out.pass = out.lhs <= out.rhs * (1.0 + kRelSlack);
    return out;
}

namespace {

// Last-flip intervals of the Peierls flip set, grouped as in the flipped-site
// bookkeeping: for sign = -1 the intervals that performed the final minus
// flip of some x in A_sigma, for sign = +1 the final plus flip of some x
// outside it. Returns (interval, step index of its selection).
std::vector<std::pair<DyadicInterval, size_t>> last_flip_intervals(const PeierlsResult& pr, int sign) {
    SiteSet targets = sign == -1 ? flipped_to_minus(pr) : flipped_to_plus(pr);
    std::vector<std::pair<DyadicInterval, size_t>> out;
    for (Site x : targets) {
        for (size_t s = pr.trace.steps.size(); s-- > 0;) {
            if (!set_contains(pr.trace.steps[s].flipped, x)) continue;
            DyadicInterval iv = pr.trace.steps[s].interval;
            bool seen = false;
            for (auto& [prev, _] : out) seen = seen || prev == iv;
            if (!seen) out.emplace_back(iv, s);
            break;
        }
    }
    return out;
}

}  // namespace

FakeIntervalReport fake_interval_expansion_check(const PeierlsResult& pr, const ScaleParams& sp) {
    FakeIntervalReport rep;
    if (!pr.interval) return rep;
    const IntRange host = pr.interval->range();
    for (auto& [iv, step] : last_flip_intervals(pr, -1)) {
        if (iv.length() >= pr.interval->length()) continue;  // l < n only
        Site mp = sp.Mprime(iv.level);
        if (mp < 2) continue;
        rep.applicable = true;
        ++rep.checked;
        IntRange rho = expand(iv, static_cast<double>(mp) / 2.0);
        if (!host.contains(rho)) ++rep.violations;
    }
    return rep;
}

TracedLemmaReport interaction_far_from_I_check(const PeierlsResult& pr, const ScaleParams& sp,
                                               const CouplingKernel& k, Site cutoff) {
    TracedLemmaReport rep;
    const SpinConfig1D& ini = pr.trace.initial;
    IntRange world{ini.window.lo - cutoff, ini.window.hi + cutoff};
    for (int sign : {-1, +1}) {
        for (auto& [iv, step] : last_flip_intervals(pr, sign)) {
            Site mp = sp.Mprime(iv.level);
            if (mp < 2) continue;
            IntRange tilde = expand(iv, static_cast<double>(mp) / 2.0);
            // I^{-sign}(sigma^{s_I}) is exactly the set flipped at that step.
            const SiteSet& core = pr.trace.steps[step].flipped;
            if (core.empty()) continue;
            // B = the truncated world outside tilde(I), split by A_sigma.
            SiteSet a_in_b, ac_in_b;
            for (Site y = world.lo; y < world.hi; ++y) {
                if (tilde.contains(y)) continue;
                (set_contains(pr.flip_set, y) ? a_in_b : ac_in_b).push_back(y);
            }
            SiteSet a_tilde, ac_tilde;
            for (Site y = tilde.lo; y < tilde.hi; ++y)
                (set_contains(pr.flip_set, y) ? a_tilde : ac_tilde).push_back(y);
            double lhs, rhs;
            if (sign == -1) {
                lhs = interaction_sum(core, ac_in_b, k);
                rhs = 4.0 / static_cast<double>(mp) * interaction_sum(a_tilde, ac_in_b, k) *
                      static_cast<double>(core.size()) / static_cast<double>(iv.length());
            } else {
                lhs = interaction_sum(core, a_in_b, k);
                rhs = 4.0 / static_cast<double>(mp) * interaction_sum(ac_tilde, a_in_b, k) *
                      static_cast<double>(core.size()) / static_cast<double>(iv.length());
            }
            ++rep.checked;
            if (lhs > rhs * (1.0 + kRelSlack)) ++rep.violations;
            if (rhs > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
        }
    }
    return rep;
}

TracedLemmaReport interaction_close_to_I_check(const PeierlsResult& pr, const ScaleParams& sp,
                                               const CouplingKernel& k, Site cutoff) {
    TracedLemmaReport rep;
    (void)cutoff;
    const double cbar3 = std::exp2(2.0 * k.alpha);  // 2^alpha / cbar1
    for (int sign : {-1, +1}) {
        for (auto& [iv, step] : last_flip_intervals(pr, sign)) {
            Site mp = sp.Mprime(iv.level);
            if (mp < 2) continue;
            const SiteSet& core = pr.trace.steps[step].flipped;
            if (core.empty()) continue;
            for (Site kk = -mp / 2; kk <= mp / 2; ++kk) {
                if (kk == 0) continue;
                DyadicInterval nb{iv.level, iv.index + 16 * kk};
                SiteSet a_nb, ac_nb;
                for (Site y = nb.lo(); y < nb.hi(); ++y)
                    (set_contains(pr.flip_set, y) ? a_nb : ac_nb).push_back(y);
                double cross = interaction_sum(a_nb, ac_nb, k);
                double lhs = sign == -1 ? interaction_sum(core, ac_nb, k) : interaction_sum(core, a_nb, k);
                double rhs = cbar3 * std::pow(static_cast<double>(mp), 1.0 - k.alpha) * cross *
                             static_cast<double>(core.size()) / static_cast<double>(iv.length());
                ++rep.checked;
                if (lhs > rhs * (1.0 + kRelSlack)) ++rep.violations;
                if (rhs > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
            }
        }
    }
    return rep;
}

std::string CalibrationTable::key(const std::string& name, double alpha, double delta, double m0) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s %.9g %.9g %.9g", name.c_str(), alpha, delta, m0);
    return buf;
}

void CalibrationTable::set(const std::string& name, double alpha, double delta, double m0, double value) {
    entries_[key(name, alpha, delta, m0)] = value;
}

const double* CalibrationTable::find(const std::string& name, double alpha, double delta, double m0) const {
    auto it = entries_.find(key(name, alpha, delta, m0));
    return it == entries_.end() ? nullptr : &it->second;
}

void CalibrationTable::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write calibration file: " + path);
    for (auto& [k, v] : entries_) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        os << k << ' ' << buf << '\n';
    }
}

CalibrationTable CalibrationTable::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read calibration file: " + path);
    CalibrationTable out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string name;
        double alpha, delta, m0, value;
        if (ss >> name >> alpha >> delta >> m0 >> value) out.set(name, alpha, delta, m0, value);
    }
    return out;
}

}  // namespace lrfim
