#include "doctest.h"
#include "lrfim/disorder.hpp"
#include "lrfim/mc.hpp"

using namespace lrfim;

TEST_CASE("beta zero flips every proposal") {
    CouplingKernel k{1.3, 1};
    Chain1D chain({-8, 9}, 0.0, 0.0, k, 100, {}, 7);
    SpinConfig1D before = chain.config();
    chain.sweep();
    for (Site x = -8; x < 9; ++x) CHECK(chain.spin(x) == -before.spin(x));
    chain.sweep();
    for (Site x = -8; x < 9; ++x) CHECK(chain.spin(x) == before.spin(x));
}

TEST_CASE("very cold start stays all plus") {
    CouplingKernel k{1.3, 1};
    Chain1D chain({-10, 11}, 50.0, 0.0, k, 200, {}, 3);
    chain.sweeps(20);
    for (Site x = -10; x < 11; ++x) CHECK(chain.spin(x) == 1);
}

TEST_CASE("seed determinism") {
    CouplingKernel k{1.3, 1};
    Chain1D a({-6, 7}, 0.8, 0.3, k, 100, std::vector<double>(13, 0.1), 99);
    Chain1D b({-6, 7}, 0.8, 0.3, k, 100, std::vector<double>(13, 0.1), 99);
    a.sweeps(50);
    b.sweeps(50);
    CHECK(a.config() == b.config());
    Chain1D c({-6, 7}, 0.8, 0.3, k, 100, std::vector<double>(13, 0.1), 100);
    c.sweeps(50);
    CHECK(a.config() == a.config());
    (void)c;
}

TEST_CASE("cached fields stay coherent") {
    CouplingKernel k{1.3, 1};
    Chain1D chain({-10, 11}, 0.7, 0.2, k, 100, std::vector<double>(21, -0.3), 31);
    chain.sweeps(200);
    CHECK(chain.cache_error() < 1e-7);

    CouplingKernel k2{3.0, 2};
    Chain2D chain2({-5, -5, 6, 6}, 0.6, 0.2, k2, 64, std::vector<double>(121, 0.1), 17);
    chain2.sweeps(40);
    CHECK(chain2.cache_error() < 1e-7);
}

TEST_CASE("empirical stationary law matches the exact Gibbs measure") {
    // |Lambda| = 6, moderate beta, zero field; the chain histogram over all
    // 64 states must come within total variation 0.01 of the enumeration.
    CouplingKernel k{1.3, 1};
    const Site cutoff = 2000;
    const double beta = 0.4;
    ExactGibbs exact({-2, 4}, beta, 0.0, k, cutoff);
    std::vector<double> h(6, 0.0);
    std::vector<double> truth = exact.distribution(h);

    Chain1D chain({-2, 4}, beta, 0.0, k, cutoff, {}, 2024);
    const int burn = 20000, keep = 2000000;
    chain.sweeps(burn);
    std::vector<double> hist(64, 0.0);
    for (int s = 0; s < keep; ++s) {
        chain.sweep();
        hist[chain.state_mask()] += 1.0;
    }
    double tv = 0.0;
    for (int i = 0; i < 64; ++i) tv += std::fabs(hist[static_cast<size_t>(i)] / keep - truth[static_cast<size_t>(i)]);
    CHECK(tv / 2.0 < 0.01);
}

TEST_CASE("beta zero magnetization estimate is one half") {
    ExperimentSpec spec;
    spec.dim = 1;
    spec.window1d = {-10, 11};
    spec.alphas = {1.3};
    spec.betas = {0.0};
    spec.epsilons = {0.0};
    spec.seeds = {1, 2};
    spec.sweeps = 4000;
    spec.cutoff1d = 100;
    for (const MagnetizationCell& cell : magnetization_experiment(spec)) {
        CHECK(std::fabs(cell.estimate - 0.5) <= std::max(3.0 * cell.stderr_est, 0.01));
    }
}
