#include "avlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "avlab/parallel.hpp"

namespace avlab {

namespace {

constexpr double TWO_PI = 6.28318530717958647692;

} // namespace

IdentityResidual critical_line_identity(double t, const EvalConfig& cfg) {
    if (t < 2.0) throw RangeError("critical-line identity needs t >= 2");
    ZetaPair p = zeta_pair(cplx(0.5, t), cfg);
    double az = std::abs(p.z), azp = std::abs(p.zp);
    if (azp > 1e-300 && az / azp < 1e-3)
        throw NearZeroOfZeta("sample point within ~1e-3 of a zero on the critical line");
    IdentityResidual r;
    r.t = t;
    r.residual = std::abs(2.0 * (p.zp / p.z).real() + std::log(t / TWO_PI));
    return r;
}

double nondensity_margin(double a, double t_max, double step, const EvalConfig& cfg) {
    if (std::abs(a) < 10.0)
        throw RangeError("margin probe is meaningful only for real |a| >= 10");
    if (!(step > 0.0)) throw RangeError("step must be positive");
    if (t_max < 2.0) throw RangeError("t_max must be >= 2");
    std::size_t n = (std::size_t)std::floor((t_max - 2.0) / step + 1e-12) + 1;
    std::vector<double> vals(n);
    parallel_for(n, [&](std::size_t i) {
        double t = 2.0 + (double)i * step;
        ZetaPair p = zeta_pair(cplx(0.5, t), cfg);
        vals[i] = std::max(std::abs(p.z - a), std::abs(p.zp - a));
    });
    return *std::min_element(vals.begin(), vals.end());
}

double left_lower_bound(double sigma, std::span<const double> t_grid, const EvalConfig& cfg) {
    if (sigma > 0.0) throw RangeError("lower-bound probe needs sigma <= 0");
    if (t_grid.empty()) throw RangeError("empty t grid");
    for (double t : t_grid)
        if (std::abs(t) < 2.0) throw RangeError("every grid ordinate needs |t| >= 2");
    std::vector<double> vals(t_grid.size());
    parallel_for(t_grid.size(), [&](std::size_t i) {
        double t = t_grid[i];
        cplx z = zeta(cplx(sigma, t), cfg);
        vals[i] = std::abs(z) * std::log(std::abs(t)) / std::pow(std::abs(t), 0.5 - sigma);
    });
    return *std::min_element(vals.begin(), vals.end());
}

std::vector<CurveSample> sample_curve(double sigma, double t_min, double t_max, double step,
                                      const EvalConfig& cfg) {
    if (!(step > 0.0)) throw RangeError("step must be positive");
    if (t_max < t_min) throw RangeError("t_max must be >= t_min");
    std::size_t n = (std::size_t)std::llround((t_max - t_min) / step);
    std::vector<CurveSample> out(n + 1);
    parallel_for(n + 1, [&](std::size_t i) {
        double t = t_min + (double)i * step;
        ZetaPair p = zeta_pair(cplx(sigma, t), cfg);
        out[i] = CurveSample{t, p.z, p.zp, sigma};
    });
    return out;
}

} // namespace avlab
