#pragma once

#include "lrfim/kernel.hpp"
#include "lrfim/rng.hpp"

namespace lrfim {

// i.i.d. standard Gaussians over a window, reproducible from the seed.
struct DisorderField {
    std::vector<double> values;
    std::uint64_t seed = 0;
};

DisorderField sample_field(size_t count, std::uint64_t seed);

// Exact finite-volume Gibbs data over windows of at most 22 sites: pair
// couplings, truncated boundary sums, Gray-code partition function.
class ExactGibbs {
public:
    ExactGibbs(IntRange window, double beta, double epsilon, const CouplingKernel& k, Site cutoff);

    int size() const { return n_; }
    IntRange window() const { return window_; }
    double beta() const { return beta_; }
    double epsilon() const { return epsilon_; }

    // -2 sum_{i<j} J si sj - sum si B_i - eps sum h_i si, the ordered-pair
    // Hamiltonian restricted to the window with plus boundary.
    double energy(const std::vector<int>& spins, const std::vector<double>& h) const;

    double log_partition(const std::vector<double>& h) const;

    // Delta_A(h) = -(1/beta) log( Z(h) / Z(tau_A h) ); mask bit i flips the
    // field at window.lo + i.
    double delta_a(const std::vector<double>& h, std::uint32_t mask) const;

    // Both Delta values from one sweep (shares the pair terms).
    std::pair<double, double> delta_pair(const std::vector<double>& h, std::uint32_t mask_a,
                                         std::uint32_t mask_b) const;

    // Exact Gibbs probabilities of all 2^n configurations (index bit i set =
    // minus at site window.lo + i).
    std::vector<double> distribution(const std::vector<double>& h) const;

private:
    IntRange window_;
    int n_;
    double beta_, epsilon_;
    std::vector<double> pair_;      // J_ij, row-major n x n
    std::vector<double> boundary_;  // B_i

    template <typename Visitor>
    void sweep(const std::vector<double>& h, Visitor&& visit) const;
};

struct TailCheck {
    double empirical = 0.0;
    double bound = 0.0;
    double stderr_est = 0.0;
    bool pass = false;
};

// P(|Delta_A - Delta_A'| > lambda) over n_samples fresh fields, against
// 2 exp(-lambda^2 / (8 eps^2 |A delta A'|)) plus three binomial standard
// errors.
TailCheck tail_check(const ExactGibbs& g, std::uint32_t mask_a, std::uint32_t mask_b, double lambda,
                     int n_samples, std::uint64_t seed);

struct GoodEventStats {
    int trials = 0;
    int held = 0;
    double frequency() const { return trials > 0 ? static_cast<double>(held) / trials : 1.0; }
};

// Fraction of disorder samples on which Delta_A <= J(A, A^c)/10 for every
// supplied set (1D good event; thresholds precomputed by the caller).
GoodEventStats good_event_eval(const ExactGibbs& g, const std::vector<std::uint32_t>& masks,
                               const std::vector<double>& thresholds, int n_samples, std::uint64_t seed);

}  // namespace lrfim
