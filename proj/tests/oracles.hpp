#pragma once

// independent cross-check machinery used only by tests. Deliberately naive
// implementations (phase tracking, finite differences, direct series) so
// they share no code with the library paths they validate.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "avlab/zeta.hpp"

namespace oracle {

using avlab::cplx;

// winding number of f(s) = zeta(s) - a around the rectangle [lo, hi] by
// sampling the boundary densely and accumulating principal-branch phase
// increments. No Gauss-Legendre, no zeta', no panel logic.
inline int naive_winding(cplx lo, cplx hi, cplx a, double step = 0.005) {
    std::vector<cplx> corners = {lo, {hi.real(), lo.imag()}, hi, {lo.real(), hi.imag()}, lo};
    double total = 0.0;
    cplx prev = avlab::zeta(corners[0]) - a;
    for (int e = 0; e < 4; ++e) {
        cplx z0 = corners[e], z1 = corners[e + 1];
        double len = std::abs(z1 - z0);
        int n = std::max(2, (int)std::ceil(len / step));
        for (int k = 1; k <= n; ++k) {
            cplx s = z0 + (z1 - z0) * ((double)k / n);
            cplx f = avlab::zeta(s) - a;
            total += std::arg(f / prev);
            prev = f;
        }
    }
    return (int)std::lround(total / (2.0 * 3.14159265358979323846));
}

// ordinate of the lowest zero above `t_lo` located by winding bisection over
// [-1, 2] x [t_lo, t_hi] boxes
inline double bisect_first_zero(double t_lo, double t_hi, double tol = 1e-8) {
    auto count_below = [&](double t) {
        return naive_winding({-1.0, t_lo}, {2.0, t}, {0.0, 0.0});
    };
    double lo = t_lo, hi = t_hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (count_below(mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// central difference in the real axis direction
inline cplx fd_derivative(const std::function<cplx(cplx)>& f, cplx s, double h = 1e-5) {
    return (f(s + cplx(h, 0.0)) - f(s - cplx(h, 0.0))) / (2.0 * h);
}

// central difference along the imaginary axis (derivative = that / i)
inline cplx fd_derivative_imag(const std::function<cplx(cplx)>& f, cplx s, double h = 1e-5) {
    return (f(s + cplx(0.0, h)) - f(s - cplx(0.0, h))) / cplx(0.0, 2.0 * h);
}

// c1 by its series definition with an Euler-Maclaurin endpoint correction:
// sum_{n<=N} (log n)/n - log^2(N)/2 - log(N)/(2N), error O(log N / N^2)
inline double c1_series(long n_cap = 1000000) {
    double sum = 0.0, comp = 0.0;
    for (long n = 2; n <= n_cap; ++n) {
        double x = std::log((double)n) / (double)n;
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double ln = std::log((double)n_cap);
    return sum - 0.5 * ln * ln - 0.5 * ln / (double)n_cap;
}

} // namespace oracle
