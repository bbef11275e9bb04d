#include "lrfim/mc.hpp"

#include <cstdio>

namespace lrfim {

Chain1D::Chain1D(IntRange window, double beta, double epsilon, const CouplingKernel& k, Site cutoff,
                 const std::vector<double>& field, std::uint64_t seed)
    : cfg_(window, +1, +1), beta_(beta), epsilon_(epsilon), gen_(seed) {
    const Site n = window.size();
    if (n < 1) throw std::invalid_argument("Chain1D: empty window");
    if (!field.empty() && field.size() != static_cast<size_t>(n))
        throw std::invalid_argument("Chain1D: field size mismatch");
    h_ = field.empty() ? std::vector<double>(static_cast<size_t>(n), 0.0) : field;
    coupl_.assign(static_cast<size_t>(n), 0.0);
    for (Site d = 1; d < n; ++d) coupl_[static_cast<size_t>(d)] = std::pow(static_cast<double>(d), -k.alpha);
    // K_R = sum over 1 <= |d| <= R; B_x = K_R - sum over the window.
    if (cutoff < n) throw std::invalid_argument("Chain1D: cutoff must dominate the window size");
    double k_r = 0.0;
    for (Site d = 1; d <= cutoff; ++d) k_r += 2.0 * std::pow(static_cast<double>(d), -k.alpha);
    b_.assign(static_cast<size_t>(n), 0.0);
    w_.assign(static_cast<size_t>(n), 0.0);
    for (Site i = 0; i < n; ++i) {
        double in_window = 0.0;
        for (Site j = 0; j < n; ++j)
            if (j != i) in_window += coupl_[static_cast<size_t>(std::llabs(i - j))];
        b_[static_cast<size_t>(i)] = k_r - in_window;
        w_[static_cast<size_t>(i)] = 2.0 * in_window + b_[static_cast<size_t>(i)];  // all spins start +1
    }
}

void Chain1D::flip_commit(Site x) {
    const Site n = cfg_.window.size();
    const Site i = x - cfg_.window.lo;
    const double step = -4.0 * cfg_.spin(x);
    for (Site j = 0; j < n; ++j)
        if (j != i) w_[static_cast<size_t>(j)] += step * coupl_[static_cast<size_t>(std::llabs(i - j))];
    cfg_.set(x, -cfg_.spin(x));
}

void Chain1D::sweep() {
    const Site n = cfg_.window.size();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (Site i = 0; i < n; ++i) {
        Site x = cfg_.window.lo + i;
        double dh = 2.0 * cfg_.spin(x) * (w_[static_cast<size_t>(i)] + epsilon_ * h_[static_cast<size_t>(i)]);
        if (dh <= 0.0 || unit(gen_) < std::exp(-beta_ * dh)) flip_commit(x);
    }
    ++sweeps_;
}

double Chain1D::cache_error() const {
    const Site n = cfg_.window.size();
    double worst = 0.0;
    for (Site i = 0; i < n; ++i) {
        double row = 0.0;
        for (Site j = 0; j < n; ++j)
            if (j != i)
                row += coupl_[static_cast<size_t>(std::llabs(i - j))] * cfg_.spins[static_cast<size_t>(j)];
        double fresh = 2.0 * row + b_[static_cast<size_t>(i)];
        worst = std::max(worst, std::fabs(fresh - w_[static_cast<size_t>(i)]));
    }
    return worst;
}

void Chain1D::refresh_cache() {
    const Site n = cfg_.window.size();
    for (Site i = 0; i < n; ++i) {
        double row = 0.0;
        for (Site j = 0; j < n; ++j)
            if (j != i)
                row += coupl_[static_cast<size_t>(std::llabs(i - j))] * cfg_.spins[static_cast<size_t>(j)];
        w_[static_cast<size_t>(i)] = 2.0 * row + b_[static_cast<size_t>(i)];
    }
}

double Chain1D::conditional_minus_probability() const {
    Site i = -cfg_.window.lo;
    double gap = 2.0 * (w_[static_cast<size_t>(i)] + epsilon_ * h_[static_cast<size_t>(i)]);
    return 1.0 / (1.0 + std::exp(beta_ * gap));
}

std::uint32_t Chain1D::state_mask() const {
    const Site n = cfg_.window.size();
    if (n > 32) throw std::logic_error("state_mask: window too large");
    std::uint32_t m = 0;
    for (Site i = 0; i < n; ++i)
        if (cfg_.spins[static_cast<size_t>(i)] == -1) m |= std::uint32_t(1) << i;
    return m;
}

Chain2D::Chain2D(Box2 window, double beta, double epsilon, const CouplingKernel& k, Site cutoff,
                 const std::vector<double>& field, std::uint64_t seed)
    : cfg_(window, +1, +1),
      window_(window),
      beta_(beta),
      epsilon_(epsilon),
      table_(k, static_cast<int>(std::max(window.width(), window.height()))),
      gen_(seed) {
    const size_t n = static_cast<size_t>(window.area());
    if (n == 0) throw std::invalid_argument("Chain2D: empty window");
    if (!field.empty() && field.size() != n) throw std::invalid_argument("Chain2D: field size mismatch");
    h_ = field.empty() ? std::vector<double>(n, 0.0) : field;
    // K_R over the full disc is site independent; B_p = K_R - window row.
    const int R = static_cast<int>(cutoff);
    if (R < static_cast<int>(window.width() + window.height()))
        throw std::invalid_argument("Chain2D: cutoff must dominate the window diameter");
    double k_r = 0.0;
    for (int dx = -R; dx <= R; ++dx)
        for (int dy = -R; dy <= R; ++dy) {
            long long d2 = 1LL * dx * dx + 1LL * dy * dy;
            if (d2 == 0 || d2 > 1LL * R * R) continue;
            k_r += std::pow(static_cast<double>(d2), -0.5 * k.alpha);
        }
    b_.assign(n, 0.0);
    w_.assign(n, 0.0);
    for (int x = window.x0; x < window.x1; ++x)
        for (int y = window.y0; y < window.y1; ++y) {
            Vec2 p{x, y};
            double row = 0.0;
            for (int u = window.x0; u < window.x1; ++u)
                for (int v = window.y0; v < window.y1; ++v) row += table_(p, {u, v});
            size_t i = cfg_.idx(p);
            b_[i] = k_r - row;
            w_[i] = 2.0 * row + b_[i];
        }
}

void Chain2D::flip_commit(size_t idx) {
    const int h = static_cast<int>(window_.height());
    Vec2 p{window_.x0 + static_cast<int>(idx) / h, window_.y0 + static_cast<int>(idx) % h};
    const double step = -4.0 * cfg_.spins[idx];
    for (int x = window_.x0; x < window_.x1; ++x)
        for (int y = window_.y0; y < window_.y1; ++y) {
            Vec2 q{x, y};
            w_[cfg_.idx(q)] += step * table_(p, q);
        }
    // the self term added J_pp = 0, so no correction needed
    cfg_.spins[idx] = static_cast<std::int8_t>(-cfg_.spins[idx]);
}

void Chain2D::sweep() {
    const size_t n = w_.size();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (size_t i = 0; i < n; ++i) {
        double dh = 2.0 * cfg_.spins[i] * (w_[i] + epsilon_ * h_[i]);
        if (dh <= 0.0 || unit(gen_) < std::exp(-beta_ * dh)) flip_commit(i);
    }
}

double Chain2D::conditional_minus_probability() const {
    size_t i = cfg_.idx({0, 0});
    double gap = 2.0 * (w_[i] + epsilon_ * h_[i]);
    return 1.0 / (1.0 + std::exp(beta_ * gap));
}

double Chain2D::cache_error() const {
    double worst = 0.0;
    for (int x = window_.x0; x < window_.x1; ++x)
        for (int y = window_.y0; y < window_.y1; ++y) {
            Vec2 p{x, y};
            double row = 0.0;
            for (int u = window_.x0; u < window_.x1; ++u)
                for (int v = window_.y0; v < window_.y1; ++v)
                    row += table_(p, {u, v}) * cfg_.spin({u, v});
            double fresh = 2.0 * row + b_[cfg_.idx(p)];
            worst = std::max(worst, std::fabs(fresh - w_[cfg_.idx(p)]));
        }
    return worst;
}

namespace {

// Batch-means standard error over the kept samples.
double batch_stderr(const std::vector<double>& samples) {
    const size_t nb = 16;
    if (samples.size() < nb * 2) return 0.5;
    size_t per = samples.size() / nb;
    std::vector<double> means;
    for (size_t b = 0; b < nb; ++b) {
        double acc = 0.0;
        for (size_t i = b * per; i < (b + 1) * per; ++i) acc += samples[i];
        means.push_back(acc / static_cast<double>(per));
    }
    double mu = 0.0;
    for (double m : means) mu += m;
    mu /= static_cast<double>(nb);
    double var = 0.0;
    for (double m : means) var += (m - mu) * (m - mu);
    var /= static_cast<double>(nb - 1);
    return std::sqrt(var / static_cast<double>(nb));
}

}  // namespace

std::vector<MagnetizationCell> magnetization_experiment(const ExperimentSpec& spec) {
    std::vector<MagnetizationCell> out;
    for (double alpha : spec.alphas) {
        if (spec.dim == 1 && (alpha <= 1.0 || alpha >= 1.5))
            std::fprintf(stderr, "warning: alpha=%g outside the 1d theorem range (1, 3/2)\n", alpha);
        if (spec.dim == 2 && (alpha <= 2.0 || alpha > 3.0))
            std::fprintf(stderr, "warning: alpha=%g outside the 2d theorem range (2, 3]\n", alpha);
        CouplingKernel k{alpha, spec.dim};
        for (double beta : spec.betas)
            for (double eps : spec.epsilons)
                for (std::uint64_t seed : spec.seeds) {
                    MagnetizationCell cell;
                    cell.dim = spec.dim;
                    cell.alpha = alpha;
                    cell.beta = beta;
                    cell.epsilon = eps;
                    cell.seed = seed;
                    cell.sweeps = spec.sweeps;
                    std::vector<double> samples;
                    if (spec.dim == 1) {
                        size_t nsites = static_cast<size_t>(spec.window1d.size());
                        std::vector<double> field(nsites, 0.0);
                        GaussianStream gs(substream_seed(seed, 101));
                        for (double& v : field) v = gs.next();
                        Chain1D chain(spec.window1d, beta, eps, k, spec.cutoff1d, field,
                                      substream_seed(seed, 7));
                        int burn = spec.sweeps / 2;
                        chain.sweeps(burn);
                        for (int s = burn; s < spec.sweeps; ++s) {
                            chain.sweep();
                            samples.push_back(chain.conditional_minus_probability());
                        }
                    } else {
                        size_t nsites = static_cast<size_t>(spec.window2d.area());
                        std::vector<double> field(nsites, 0.0);
                        GaussianStream gs(substream_seed(seed, 102));
                        for (double& v : field) v = gs.next();
                        Chain2D chain(spec.window2d, beta, eps, k, spec.cutoff2d, field,
                                      substream_seed(seed, 8));
                        int burn = spec.sweeps / 2;
                        chain.sweeps(burn);
                        for (int s = burn; s < spec.sweeps; ++s) {
                            chain.sweep();
                            samples.push_back(chain.conditional_minus_probability());
                        }
                    }
                    double mean = 0.0;
                    for (double v : samples) mean += v;
                    cell.estimate = samples.empty() ? 0.0 : mean / static_cast<double>(samples.size());
                    cell.stderr_est = batch_stderr(samples);
                    out.push_back(cell);
                }
    }
    return out;
}

PooledEstimate pool_over_seeds(const std::vector<MagnetizationCell>& cells, double alpha, double beta,
                               double epsilon) {
    std::vector<const MagnetizationCell*> rows;
    for (const MagnetizationCell& c : cells)
        if (c.alpha == alpha && c.beta == beta && c.epsilon == epsilon) rows.push_back(&c);
    PooledEstimate out;
    if (rows.empty()) return out;
    double mean = 0.0;
    for (auto* c : rows) mean += c->estimate;
    mean /= static_cast<double>(rows.size());
    double spread = 0.0, thermal = 0.0;
    for (auto* c : rows) {
        spread += (c->estimate - mean) * (c->estimate - mean);
        thermal += c->stderr_est * c->stderr_est;
    }
    const double n = static_cast<double>(rows.size());
    out.estimate = mean;
    double seed_var = rows.size() > 1 ? spread / (n - 1.0) / n : 0.0;
    out.stderr_est = std::sqrt(seed_var + thermal / (n * n));
    return out;
}

}  // namespace lrfim
