#include "lrfim/disorder.hpp"

namespace lrfim {

DisorderField sample_field(size_t count, std::uint64_t seed) {
    DisorderField out;
    out.seed = seed;
    out.values.resize(count);
    GaussianStream gs(seed);
    for (double& v : out.values) v = gs.next();
    return out;
}

ExactGibbs::ExactGibbs(IntRange window, double beta, double epsilon, const CouplingKernel& k, Site cutoff)
    : window_(window), n_(static_cast<int>(window.size())), beta_(beta), epsilon_(epsilon) {
    if (n_ < 1 || n_ > 22) throw std::invalid_argument("ExactGibbs: window must hold 1..22 sites");
    if (beta_ < 0.0) throw std::invalid_argument("ExactGibbs: beta must be nonnegative");
    pair_.assign(static_cast<size_t>(n_) * n_, 0.0);
    boundary_.assign(static_cast<size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        Site x = window.lo + i;
        for (int j = 0; j < n_; ++j)
            pair_[static_cast<size_t>(i) * n_ + j] = coupling(x, window.lo + j, k);
        double b = 0.0;
        for (Site y = window.lo - 1; y >= x - cutoff; --y) b += coupling(x, y, k);
        for (Site y = window.hi; y <= x + cutoff; ++y) b += coupling(x, y, k);
        boundary_[static_cast<size_t>(i)] = b;
    }
}

double ExactGibbs::energy(const std::vector<int>& spins, const std::vector<double>& h) const {
    double pair_term = 0.0, field_term = 0.0, bnd_term = 0.0;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j)
            pair_term += pair_[static_cast<size_t>(i) * n_ + j] * spins[static_cast<size_t>(i)] *
                         spins[static_cast<size_t>(j)];
        bnd_term += boundary_[static_cast<size_t>(i)] * spins[static_cast<size_t>(i)];
        if (!h.empty()) field_term += h[static_cast<size_t>(i)] * spins[static_cast<size_t>(i)];
    }
    return -2.0 * pair_term - bnd_term - epsilon_ * field_term;
}

// Gray-code sweep over all configurations. The visitor receives the state
// mask (bit = minus), the bit flipped to reach it (-1 for the initial all
// plus state), the pair+boundary part of H, and sum h_i s_i.
template <typename Visitor>
void ExactGibbs::sweep(const std::vector<double>& h, Visitor&& visit) const {
    std::vector<int> spins(static_cast<size_t>(n_), +1);
    std::vector<double> local(static_cast<size_t>(n_), 0.0);  // L_i = sum_j J_ij s_j
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) local[static_cast<size_t>(i)] += pair_[static_cast<size_t>(i) * n_ + j];
    double pair_bnd = 0.0;  // -2 sum_{i<j} J si sj - sum si B_i
    {
        double p2 = 0.0, b = 0.0;
        for (int i = 0; i < n_; ++i) {
            for (int j = i + 1; j < n_; ++j) p2 += pair_[static_cast<size_t>(i) * n_ + j];
            b += boundary_[static_cast<size_t>(i)];
        }
        pair_bnd = -2.0 * p2 - b;
    }
    double field_dot = 0.0;  // sum h_i s_i
    if (!h.empty())
        for (int i = 0; i < n_; ++i) field_dot += h[static_cast<size_t>(i)];

    const std::uint32_t total = static_cast<std::uint32_t>(1u) << n_;
    std::uint32_t gray = 0;
    visit(gray, -1, pair_bnd, field_dot);
    for (std::uint32_t t = 1; t < total; ++t) {
        int bit = __builtin_ctz(t);
        gray ^= std::uint32_t(1) << bit;
        int s_old = spins[static_cast<size_t>(bit)];
        // flipping s_i changes the pair part by +4 s_old L_i (J_ii = 0) and
        // the boundary part by +2 s_old B_i.
        pair_bnd +=
            4.0 * s_old * local[static_cast<size_t>(bit)] + 2.0 * s_old * boundary_[static_cast<size_t>(bit)];
        if (!h.empty()) field_dot -= 2.0 * s_old * h[static_cast<size_t>(bit)];
        spins[static_cast<size_t>(bit)] = -s_old;
        for (int j = 0; j < n_; ++j)
            local[static_cast<size_t>(j)] -= 2.0 * s_old * pair_[static_cast<size_t>(j) * n_ + bit];
        visit(gray, bit, pair_bnd, field_dot);
    }
}

namespace {

struct StreamingLse {
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;

    void add(double e) {
        if (e > max) {
            sum = sum * std::exp(max - e) + 1.0;
            max = e;
        } else {
            sum += std::exp(e - max);
        }
    }
    double value() const { return max + std::log(sum); }
};

}  // namespace

double ExactGibbs::log_partition(const std::vector<double>& h) const {
    StreamingLse lse;
    sweep(h, [&](std::uint32_t, int, double pair_bnd, double field_dot) {
        lse.add(-beta_ * (pair_bnd - epsilon_ * field_dot));
    });
    return lse.value();
}

double ExactGibbs::delta_a(const std::vector<double>& h, std::uint32_t mask) const {
    return delta_pair(h, mask, mask).first;
}

std::pair<double, double> ExactGibbs::delta_pair(const std::vector<double>& h, std::uint32_t mask_a,
                                                 std::uint32_t mask_b) const {
    if (h.size() != static_cast<size_t>(n_)) throw std::invalid_argument("delta_pair: field size mismatch");
    if (beta_ <= 0.0) throw std::invalid_argument("delta_pair: beta must be positive");
    // tau_A(h) dot s = h dot s - 2 sum_{i in A} h_i s_i; the masked partial
    // dots are updated along the Gray flips.
    double dot_a = 0.0, dot_b = 0.0;
    for (int i = 0; i < n_; ++i) {
        if ((mask_a >> i) & 1u) dot_a += h[static_cast<size_t>(i)];
        if ((mask_b >> i) & 1u) dot_b += h[static_cast<size_t>(i)];
    }
    StreamingLse plain, flip_a, flip_b;
    sweep(h, [&](std::uint32_t gray, int bit, double pair_bnd, double field_dot) {
        if (bit >= 0) {
            int s_new = (gray >> bit) & 1u ? -1 : +1;
            double step = 2.0 * s_new * h[static_cast<size_t>(bit)];
            if ((mask_a >> bit) & 1u) dot_a += step;
            if ((mask_b >> bit) & 1u) dot_b += step;
        }
        plain.add(-beta_ * (pair_bnd - epsilon_ * field_dot));
        flip_a.add(-beta_ * (pair_bnd - epsilon_ * (field_dot - 2.0 * dot_a)));
        flip_b.add(-beta_ * (pair_bnd - epsilon_ * (field_dot - 2.0 * dot_b)));
    });
    double da = -(plain.value() - flip_a.value()) / beta_;
    double db = -(plain.value() - flip_b.value()) / beta_;
    return {da, db};
}

std::vector<double> ExactGibbs::distribution(const std::vector<double>& h) const {
    std::vector<double> weights(static_cast<size_t>(1u) << n_, 0.0);
    double max = -std::numeric_limits<double>::infinity();
    sweep(h, [&](std::uint32_t gray, int, double pair_bnd, double field_dot) {
        double e = -beta_ * (pair_bnd - epsilon_ * field_dot);
        weights[gray] = e;
        max = std::max(max, e);
    });
    double z = 0.0;
    for (double& w : weights) {
        w = std::exp(w - max);
        z += w;
    }
    for (double& w : weights) w /= z;
    return weights;
}

TailCheck tail_check(const ExactGibbs& g, std::uint32_t mask_a, std::uint32_t mask_b, double lambda,
                     int n_samples, std::uint64_t seed) {
    if (g.size() > 14) throw std::invalid_argument("tail_check: window above 14 sites is too slow");
    int sym = __builtin_popcount(mask_a ^ mask_b);
    TailCheck out;
    out.bound = sym == 0 ? 0.0
                         : 2.0 * std::exp(-lambda * lambda /
                                          (8.0 * g.epsilon() * g.epsilon() * static_cast<double>(sym)));
    int exceed = 0;
    for (int s = 0; s < n_samples; ++s) {
        DisorderField f = sample_field(static_cast<size_t>(g.size()), substream_seed(seed, static_cast<std::uint64_t>(s)));
        auto [da, db] = g.delta_pair(f.values, mask_a, mask_b);
        if (std::fabs(da - db) > lambda) ++exceed;
    }
    out.empirical = static_cast<double>(exceed) / static_cast<double>(n_samples);
    out.stderr_est =
        std::sqrt(std::max(out.empirical * (1.0 - out.empirical), 1e-12) / static_cast<double>(n_samples));
    out.pass = out.empirical <= out.bound + 3.0 * out.stderr_est || out.bound >= 1.0;
    return out;
}

GoodEventStats good_event_eval(const ExactGibbs& g, const std::vector<std::uint32_t>& masks,
                               const std::vector<double>& thresholds, int n_samples, std::uint64_t seed) {
    if (masks.size() != thresholds.size()) throw std::invalid_argument("good_event_eval: size mismatch");
    GoodEventStats out;
    for (int s = 0; s < n_samples; ++s) {
        DisorderField f = sample_field(static_cast<size_t>(g.size()), substream_seed(seed, static_cast<std::uint64_t>(s)));
        bool ok = true;
        for (size_t i = 0; i < masks.size() && ok; ++i)
            ok = g.delta_a(f.values, masks[i]) <= thresholds[i];
        ++out.trials;
        if (ok) ++out.held;
    }
    return out;
}

}  // namespace lrfim
