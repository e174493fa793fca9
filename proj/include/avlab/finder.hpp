#pragma once

#include <optional>
#include <vector>

#include "avlab/zeta.hpp"

namespace avlab {

struct SearchRegion {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    std::optional<int> winding;
    // set instead of throwing when subdivision hits the depth limit, so the
    // offending box is returned rather than dropped
    bool depth_flagged = false;
};

struct AValueRecord {
    cplx a;
    double beta = 0.0;
    double gamma = 0.0;
    int multiplicity = 1;
    double residual = 0.0; // |zeta(rho) - a|
    bool trivial = false;  // beta <= 0
    bool simple = true;    // multiplicity == 1
};

struct FinderConfig {
    double newton_tol = 1e-10;
    int max_subdivision_depth = 40;
    // <= 0 means the 1/log T device (resolved against the tallest ordinate
    // of the region in play)
    double edge_clearance = 0.0;
    int quadrature_nodes_per_unit = 64; // doubled adaptively
};

// number of roots of zeta(s) = a inside the rectangle, counted with
// multiplicity by the argument principle. The integrand is the logarithmic
// derivative of (s-1)(zeta(s)-a), which is entire, so rectangles containing
// or touching s = 1 count plain roots with no pole correction.
int winding_count(const SearchRegion& region, cplx a, const FinderConfig& cfg = {});

// disjoint sub-rectangles covering all roots: winding 1 each, or a winding-m
// cluster of diameter < newton_tol*10, or depth_flagged at the depth limit
std::vector<SearchRegion> isolate(const SearchRegion& region, cplx a,
                                  const FinderConfig& cfg = {});

// damped Newton on zeta(s)-a from the seed; the iterate must stay within the
// doubled box implied by the seed's isolating rectangle (here: unit box)
AValueRecord refine(cplx seed, cplx a, const FinderConfig& cfg = {});

// Newton from -2n for n = 1..n_max; reports the contiguous top range of n
// whose roots land within distance 1 of -2n (the lemma's regime)
std::vector<AValueRecord> trivial_avalues(cplx a, int n_max, const FinderConfig& cfg = {});

// all a-values with 0 < gamma <= T (up to the clearance-nudged effective
// boundaries) and beta > 0, ascending by gamma then beta
std::vector<AValueRecord> find_nontrivial(cplx a, double T, const FinderConfig& cfg = {});

// the concrete rectangle find_nontrivial searches: left edge just right of
// sigma = 0, adaptive right edge, top/bottom ordinates nudged to clearance.
// Shared with the contour oracles so empirical and contour counts always
// refer to the same region.
struct SearchBox {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double t_floor = 0.0;
    double t_eff = 0.0;
    double clearance = 0.0;
};
SearchBox resolve_search_box(cplx a, double T, const FinderConfig& cfg = {});

} // namespace avlab
