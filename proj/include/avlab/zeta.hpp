#pragma once

#include <complex>
#include <span>
#include <vector>

#include "avlab/errors.hpp"

namespace avlab {

using cplx = std::complex<double>;

// evaluation strategy knobs. Defaults meet an absolute error target of about
// 1e-10 near the critical strip for |Im s| <= 5000 (relative ~5e-14 in the
// far left half-plane where |zeta| is astronomically large).
struct EvalConfig {
    double em_cutoff_factor = 1.0; // Dirichlet terms ~ factor * |Im s|, >= 1
    int bernoulli_terms = 12;      // Euler-Maclaurin correction pairs (max 30)
    double target_abs_err = 1e-10;
};

struct ZetaPair {
    cplx z;  // zeta(s)
    cplx zp; // zeta'(s)
};

struct StieltjesPair {
    double c0; // Euler's constant
    double c1; // first Stieltjes constant
};

// supported window; outside -> RangeExceeded
inline constexpr double max_imag_height = 5000.0;
inline constexpr double max_real_extent = 200.0;

// Riemann zeta and derivative. Preconditions: s within the supported window,
// s != 1 (PoleAtOne if |s-1| < 1e-12). Conjugate symmetric bit-for-bit:
// zeta(conj(s)) == conj(zeta(s)).
cplx zeta(cplx s, const EvalConfig& cfg = {});
cplx zeta_prime(cplx s, const EvalConfig& cfg = {});
ZetaPair zeta_pair(cplx s, const EvalConfig& cfg = {}); // fused, one pass

// functional-equation factor in zeta(s) = delta(s) zeta(1-s), computed in
// log space. Poles (s = 1 and odd integers >= 3) raise DeltaPole.
cplx delta(cplx s, const EvalConfig& cfg = {});

// logarithmic derivative X'(s)/X(s) = log 2pi - psi(1-s) + (pi/2) cot(pi s/2).
// Exactly real on the critical line (enforced structurally, not by rounding).
cplx log_delta_deriv(cplx s, const EvalConfig& cfg = {});

// c0, c1 from Cauchy integrals of zeta(s) - 1/(s-1) on the circle
// |s-1| = radius with `nodes` trapezoid points; the node count is doubled
// once and QuadratureNotConverged is thrown if the doubling moves either
// constant by more than 1e-9.
StieltjesPair stieltjes_constants(double radius = 0.25, int nodes = 64,
                                  const EvalConfig& cfg = {});

// log Gamma (Lanczos, 15 coefficients) and digamma, valid on Re z > 0 here;
// exposed mainly for tests and the functional-equation path
cplx log_gamma_right(cplx z);
cplx digamma(cplx z);

namespace detail {

// rotation table rot[n] = exp(-i * delta * log n) so a Dirichlet sum for
// zeta(s + i delta) costs one complex multiply per term on top of zeta(s)
struct ShiftTable {
    double delta = 0.0;
    std::vector<cplx> rot; // index n, valid for 1 <= n < rot.size()
};

ShiftTable make_shift_table(double delta, std::size_t n_max);

// fused evaluation of zeta(s), zeta'(s) and zeta(s + i delta_j) for every
// shift table in one pass over the Dirichlet terms. Precondition
// Re s > -0.5 (direct Euler-Maclaurin regime) and each shifted point within
// the supported window.
void zeta_multi(cplx s, std::span<const ShiftTable* const> shifts,
                ZetaPair& base, std::span<cplx> shifted,
                const EvalConfig& cfg = {});

// natural logs of 1..n-1, grown on demand, stable addresses
const double* log_table(std::size_t n);

// deterministic pairwise-tree reduction, fixed association independent of
// thread count
cplx pairwise_sum(std::span<const cplx> xs);

} // namespace detail

} // namespace avlab
