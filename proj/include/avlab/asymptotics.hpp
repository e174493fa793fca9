#pragma once

#include <optional>
#include <span>
#include <vector>

#include "avlab/finder.hpp"

namespace avlab {

// empirical root count over the adaptive search rectangle next to the
// (T/2pi) log(T/(2pi e c_a)) prediction
struct CountComparison {
    cplx a;
    double T = 0.0;
    long long empirical = 0; // sum of multiplicities, 0 < gamma <= T
    double main_term = 0.0;
    double deviation = 0.0; // empirical - main_term
    double c_a = 1.0;       // 2 iff a == 1, else 1
};

// a discrete moment next to its closed-form main term and an independent
// contour-integral value. oracle_budget is the accumulated accepted
// refinement delta of the adaptive quadrature; the residue theorem makes
// |empirical_sum - oracle| <= oracle_budget a hard consistency check.
struct MomentReport {
    cplx a;
    double T = 0.0;
    cplx empirical_sum;
    cplx theory_main;
    cplx oracle;
    double oracle_budget = 0.0;
    std::optional<double> alpha; // shifted moments only
    std::optional<double> delta; // 2 pi alpha / log(T/2pi), exactly as computed
    bool delta_flagged = false;  // |delta| > 1: outside the formula's regime, still evaluated
};

// fraction of roots lying within the shrinking critical-line window
struct ClusterReport {
    cplx a;
    double T = 0.0;
    double window = 0.0; // (log log T)^2 / log T
    double inside_fraction = 0.0;
};

// Closed-form main terms, L = log(T/2pi). The zero-count specialization is
// coded separately from the general form so the two can be cross-checked.
//   zero_sum_main:        (T/4pi)L^2 + (c0-1)(T/2pi)L + (1-c0-c1)(T/2pi)
//   zeta_prime_sum_main:  (1/2-a)(T/2pi)L^2 + (2a+c0-1)(T/2pi)L + (1-c0-c1-2a)(T/2pi)
double zero_sum_main(double T, const StieltjesPair& st);
cplx zeta_prime_sum_main(cplx a, double T, const StieltjesPair& st);

// Main term of sum (zeta(rho_a + i delta) - a) over 0 < gamma_a <= T with
// delta = 2 pi alpha / L: a (log T/2pi)-coefficient block plus a (T/2pi)
// block built from exp(-2 pi i alpha), zeta(1 - i delta), zeta'/zeta(1 + i
// delta) and 1/(i delta). The 1/(i delta) singularities cancel analytically;
// for |delta| < 1e-4 the cancelling pairs are evaluated by their Laurent
// series in i delta (coefficients from st) to avoid loss of significance.
// Throws AlphaZero for |alpha| < 1e-12.
cplx shifted_sum_main(cplx a, double T, double alpha, const StieltjesPair& st);

// weight factor multiplying zeta'/(zeta - a) in the contour integrand
enum class ContourWeight {
    one,        // counts roots
    zeta_prime, // residues zeta'(rho)
    shifted,    // residues zeta(rho + i delta) - a
};

struct ContourValue {
    cplx value;
    double budget = 0.0; // accepted adaptive-refinement error estimate
};

// (1/2pi i) times the boundary integral of weight * zeta'/(zeta - a) over
// the same rectangle find_nontrivial searches, by adaptive panel-bisected
// 16-point Gauss-Legendre quadrature. alpha is only read for the shifted
// weight (delta = 2 pi alpha / log(T/2pi); alpha = 0 gives the integral of
// zeta', which vanishes). For delta < 0 the shifted factor has a pole at
// s = 1 - i delta; when that point falls inside the rectangle its residue is
// subtracted so the value still equals the sum over roots.
ContourValue contour_oracle(cplx a, double T, ContourWeight weight, double alpha = 0.0,
                            const FinderConfig& cfg = {});

// one record pass + one boundary sweep producing the count comparison, the
// zeta' moment, and one shifted moment per alpha (at most 4). records must
// be find_nontrivial(a, T, cfg) for the same arguments; reusing a cached
// vector avoids re-running the finder.
struct MomentSet {
    CountComparison count;
    ContourValue count_oracle; // weight-one boundary integral; rounds to count.empirical
    MomentReport zeta_prime;
    std::vector<MomentReport> shifted;
};
MomentSet compute_moments(cplx a, double T, std::span<const double> alphas,
                          std::span<const AValueRecord> records,
                          const FinderConfig& cfg = {});

CountComparison count_avalues(cplx a, double T, const FinderConfig& cfg = {});
CountComparison count_avalues(cplx a, double T, std::span<const AValueRecord> records);

MomentReport sum_zeta_prime(cplx a, double T, const FinderConfig& cfg = {});
MomentReport sum_shifted(cplx a, double T, double alpha, const FinderConfig& cfg = {});

// requires T >= 20 so the window is positive and meaningful
ClusterReport levinson_fraction(cplx a, double T, const FinderConfig& cfg = {});
ClusterReport levinson_fraction(cplx a, double T, std::span<const AValueRecord> records);

// |zeta'/(zeta-a) - sum 1/(s-rho)| over roots with |Im s - gamma| <= 1,
// multiplicity-weighted; the partial-fraction remainder, O(log |Im s|).
// Requires -1 <= Re s <= 2 and |Im s| >= 1; throws TooCloseToRoot within
// 1e-4 of a root. The first overload collects the window's records itself
// (ordinates below reflect to the conjugate problem); the second requires
// Im s >= 1 and records covering the window.
double partial_fraction_residual(cplx s, cplx a, const FinderConfig& cfg = {});
double partial_fraction_residual(cplx s, cplx a, std::span<const AValueRecord> records);

} // namespace avlab
