#pragma once

#include <map>
#include <string>

#include "lrfim/balance.hpp"

namespace lrfim {

// theta = min{2 - alpha - 10 delta, log_3.9(2)}; > 1/2 for alpha < 3/2 with
// the default delta.
struct ThetaParams {
    double theta;

    explicit ThetaParams(double alpha, double delta) {
        theta = std::min(2.0 - alpha - 10.0 * delta, std::log(2.0) / std::log(3.9));
    }
};

struct BoundCheck {
    double lhs = 0.0;    // quantity the lemma bounds
    double rhs = 0.0;    // the bound
    bool pass = false;
    double ratio() const { return rhs != 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity(); }
};

inline constexpr double kRelSlack = 1e-9;

// J(I^-, I^+) >= cbar1 m^(2-alpha), cbar1 = 2^(-alpha), m = min(|I^-|,|I^+|).
BoundCheck min_interaction_lower_bound_check(IntRange iv, const SpinConfig1D& cfg, const CouplingKernel& k);

// J(A, A^c) >= cbar1 |A|^(2-alpha), complement truncated at `cutoff`.
BoundCheck set_interaction_lower_bound_check(const SiteSet& a, const CouplingKernel& k, Site cutoff);

struct ApproximateInterval {
    DyadicInterval interval;
    double dist_left = 0.0;   // d(I, a), to the real left endpoint
    double dist_right = 0.0;  // d(I, b), to the real right endpoint
};

// Smallest-deviation l-interval covering I with both real-endpoint distances
// <= 0.7 |I|; l satisfies (15/8) 2^(l-2) <= |I| <= (15/8) 2^(l-1). Distances
// are measured between the real spans [u, v+1) and
// [2^(l-4)(x-8), 2^(l-4)(x+8)), whose fractional endpoints step in 1/16.
ApproximateInterval approximate_interval(IntRange iv);

struct GoodSequence {
    std::vector<int> bits;  // 0/1, indices 1..N in the definition
    double lambda = 1.0;
};

// Every proper subinterval of [1,N] holding a 1 has another 1 within
// lambda |I| + 1 of it.
bool is_lambda_good(const GoodSequence& seq);

struct SequenceBound {
    long long min_ones = 0;
    double bound = 0.0;
    bool pass = false;
};

// Brute force over all lambda-good sequences with p_1 = p_N = 1:
// min #ones >= N^(log_{lambda+2} 2). N > 20 is rejected.
SequenceBound sequence01_bound_check(int n, double lambda);

// Mixed interaction over rho_{3/2}(I) of a configuration balanced there and
// non-constant on I, against cbar2 |I|^theta. Throws if the preconditions
// fail.
BoundCheck balanced_interaction_check(IntRange iv, const SpinConfig1D& cfg, const ScaleParams& sp,
                                      const CouplingKernel& k, double theta, double cbar2);

// Exhaustive minimum of J(mixed)/|I|^theta over configurations on
// rho_{3/2}(I) (plus boundary) balanced there and non-constant on I, for
// |I| = 2..max_len. This is the calibration companion for cbar2.
double calibrate_cbar2(Site max_len, const ScaleParams& sp, const CouplingKernel& k, double theta);

// J(A_sigma, A_sigma^c) >= c2 |I_sigma|^theta. Throws on empty A_sigma.
BoundCheck energy_bound_1_check(const PeierlsResult& pr, const CouplingKernel& k, Site cutoff, double theta,
                                double c2);

// Exhaustive minimum of J(A,A^c)/|I_sigma|^theta over sigma on [-L, L] with
// sigma_0 = -1; calibration companion for c2.
double calibrate_c2(Site L, const ScaleParams& sp, const CouplingKernel& k, Site cutoff, double theta);

struct EnergyBound2 {
    double delta_h = 0.0;
    double j_value = 0.0;
    bool pass = false;
    double ratio() const { return j_value > 0.0 ? delta_h / j_value : std::numeric_limits<double>::infinity(); }
};

// H(sigma) - H(tau_{A_sigma} sigma) at eps = 0 against J(A_sigma, A_sigma^c).
EnergyBound2 energy_bound_2_check(const PeierlsResult& pr, const CouplingKernel& k, Site cutoff);

// Sites flipped to minus that ended in A_sigma, resp. flipped to plus
// outside it.
SiteSet flipped_to_minus(const PeierlsResult& pr);
SiteSet flipped_to_plus(const PeierlsResult& pr);

// sum_{x in A, y in I_sigma^c} 1{sigma_x = sigma^S_y = -1} J_xy
// <= 0.1 J(A_sigma, A_sigma^c).
BoundCheck first_interaction_check(const PeierlsResult& pr, const CouplingKernel& k, Site cutoff);

struct FakeIntervalReport {
    int checked = 0;
    int violations = 0;
    bool applicable = false;  // false when M'_l < 2 at every relevant level
};

// rho_{M'_l/2}(I_l) inside I_sigma for every l < n and I_l recorded as the
// last minus-flip interval of some x in A_sigma.
FakeIntervalReport fake_interval_expansion_check(const PeierlsResult& pr, const ScaleParams& sp);

// Worst ratio lhs/rhs over the lemma instances on one traced run; empty
// (checked = 0) when the run had no minus flips.
struct TracedLemmaReport {
    int checked = 0;
    int violations = 0;
    double worst_ratio = 0.0;
};

TracedLemmaReport interaction_far_from_I_check(const PeierlsResult& pr, const ScaleParams& sp,
                                               const CouplingKernel& k, Site cutoff);
TracedLemmaReport interaction_close_to_I_check(const PeierlsResult& pr, const ScaleParams& sp,
                                               const CouplingKernel& k, Site cutoff);

// Calibrated constants persisted as text: one line per entry,
// "name alpha delta M0 value".
class CalibrationTable {
public:
    void set(const std::string& name, double alpha, double delta, double m0, double value);
    const double* find(const std::string& name, double alpha, double delta, double m0) const;

    void save(const std::string& path) const;
    static CalibrationTable load(const std::string& path);

    const std::map<std::string, double>& entries() const { return entries_; }

private:
    static std::string key(const std::string& name, double alpha, double delta, double m0);
    std::map<std::string, double> entries_;
};

}  // namespace lrfim
