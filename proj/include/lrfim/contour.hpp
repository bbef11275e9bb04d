#pragma once

#include "lrfim/kernel.hpp"

namespace lrfim {

// M and a = 6/(alpha - 2) govern condition (B) of the contour partition:
// parts must satisfy d(g, g') > M min{|V(g)|, |V(g')|}^(a/2).
struct PartitionParams {
    double M = 10.0;
    double a = 6.0;

    static PartitionParams for_alpha(double m, double alpha) { return {m, 6.0 / (alpha - 2.0)}; }
};

// {x : sigma_x != sigma_y for some nearest neighbor y}.
SiteSet2 incorrect_points(const SpinConfig2D& cfg);

// V(A): A together with everything A separates from infinity
// (4-neighbor flood fill on the complement).
SiteSet2 hull(const SiteSet2& a);

// Merge-to-fixpoint partition: any two parts violating (B) are merged until
// none do. The result is verified against (A) and (B).
std::vector<SiteSet2> finest_partition(const SiteSet2& a, const PartitionParams& pp);

struct Contour {
    SiteSet2 support;
    SiteSet2 vol;         // V(gamma)
    SiteSet2 int_plus;    // union of complement components labeled +1 inside V
    SiteSet2 int_minus;
    int outer_label = +1;  // label of the unbounded complement component

    long long size() const { return static_cast<long long>(support.size()); }
};

// Finest partition of the incorrect points, labels read from sigma on the
// inner boundary of each complement component (throws if a label is not
// constant there).
std::vector<Contour> extract_contours(const SpinConfig2D& cfg, const PartitionParams& pp);

// gamma is external within `contours` when V(gamma) is contained in no other
// V(gamma').
std::vector<size_t> external_indices(const std::vector<Contour>& contours);

// tau_gamma: +1 on the support, negated on Int_-, untouched elsewhere.
// The contour must come from extract_contours(cfg, .) and be external.
SpinConfig2D erase_contour(const SpinConfig2D& cfg, const Contour& gamma);

struct EraseCost {
    double delta_h = 0.0;
    double support_size = 0.0;
    double j_int_minus = 0.0;
    double ratio = 0.0;  // delta_h / (|gamma| + J(Int_-))
};

EraseCost cost_erasing_check(const SpinConfig2D& cfg, const Contour& gamma, const CouplingKernel& k, Site cutoff);

// External contours with support size n, support within `box`, and the
// origin in V(gamma), realizable from a plus-boundary configuration.
// Enumerates generating minus sets of size up to max_minus.
long long enumerate_contours_at_size(int n, Box2 box, const PartitionParams& pp, int max_minus = 3);

}  // namespace lrfim
