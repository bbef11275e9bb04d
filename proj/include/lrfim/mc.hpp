#pragma once

#include "lrfim/kernel.hpp"
#include "lrfim/rng.hpp"

namespace lrfim {

// Single-site Metropolis chain with cached fields W_x = 2 sum_{y in L} J s_y
// + B_x, so a flip costs O(1) to evaluate and O(|L|) to commit. The flip
// energy is 2 s_x (W_x + eps h_x) under the ordered-pair Hamiltonian.
class Chain1D {
public:
    Chain1D(IntRange window, double beta, double epsilon, const CouplingKernel& k, Site cutoff,
            const std::vector<double>& field, std::uint64_t seed);

    void sweep();
    void sweeps(int n) {
        for (int i = 0; i < n; ++i) sweep();
    }

    int spin(Site x) const { return cfg_.spin(x); }
    const SpinConfig1D& config() const { return cfg_; }
    long long sweep_count() const { return sweeps_; }
    double beta() const { return beta_; }

    // Max |cached - recomputed| over the window; refreshed caches must agree
    // to 1e-7.
    double cache_error() const;
    void refresh_cache();

    std::uint32_t state_mask() const;  // bit i = minus at window.lo + i (n <= 32)

    // P(sigma_0 = -1 | rest) = 1/(1 + exp(2 beta (W_0 + eps h_0))). Its time
    // average is the Rao-Blackwellized magnetization estimator; unlike the
    // raw indicator it resolves probabilities far below 1/samples.
    double conditional_minus_probability() const;

private:
    SpinConfig1D cfg_;
    double beta_, epsilon_;
    std::vector<double> coupl_;  // J by distance within the window
    std::vector<double> b_;      // boundary sums per site
    std::vector<double> w_;      // cached 2 sum J s + B
    std::vector<double> h_;
    std::mt19937_64 gen_;
    long long sweeps_ = 0;

    void flip_commit(Site x);
};

class Chain2D {
public:
    Chain2D(Box2 window, double beta, double epsilon, const CouplingKernel& k, Site cutoff,
            const std::vector<double>& field, std::uint64_t seed);

    void sweep();
    void sweeps(int n) {
        for (int i = 0; i < n; ++i) sweep();
    }

    int spin(Vec2 p) const { return cfg_.spin(p); }
    const SpinConfig2D& config() const { return cfg_; }
    double cache_error() const;
    double conditional_minus_probability() const;

private:
    SpinConfig2D cfg_;
    Box2 window_;
    double beta_, epsilon_;
    CouplingTable2D table_;
    std::vector<double> b_;  // boundary sums per site
    std::vector<double> w_;
    std::vector<double> h_;
    std::mt19937_64 gen_;

    void flip_commit(size_t idx);
};

struct MagnetizationCell {
    int dim = 1;
    double alpha = 0.0, beta = 0.0, epsilon = 0.0;
    std::uint64_t seed = 0;
    double estimate = 0.0;  // mu+(sigma_0 = -1)
    double stderr_est = 0.0;
    int sweeps = 0;
};

struct ExperimentSpec {
    int dim = 1;
    IntRange window1d{-32, 33};
    Box2 window2d{-24, -24, 24, 24};
    std::vector<double> alphas{1.3};
    std::vector<double> betas{1.0};
    std::vector<double> epsilons{0.0};
    std::vector<std::uint64_t> seeds{1};
    int sweeps = 2000;  // first half discarded
    Site cutoff1d = 10000;
    Site cutoff2d = 256;
};

// One row per (alpha, beta, epsilon, seed): time average of the conditional
// origin magnetization after discarding the first half, with a batch-means
// standard error. Warns (does not fail) outside the theorem parameter
// ranges.
std::vector<MagnetizationCell> magnetization_experiment(const ExperimentSpec& spec);

// Pooled over the seed axis: mean of the per-seed estimates and a standard
// error combining seed spread with the per-seed errors.
struct PooledEstimate {
    double estimate = 0.0;
    double stderr_est = 0.0;
};

PooledEstimate pool_over_seeds(const std::vector<MagnetizationCell>& cells, double alpha, double beta,
                               double epsilon);

}  // namespace lrfim
