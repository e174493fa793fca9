#pragma once

// 16-point Gauss-Legendre rule on [-1,1], positive half (the rule is
// symmetric). Shared by the winding integrals and the contour oracles.

namespace avlab::detail {

inline constexpr double gl16_x[8] = {
    0.0950125098376374401853,
    0.2816035507792589132305,
    0.4580167776572273863424,
    0.6178762444026437484467,
    0.7554044083550030338951,
    0.8656312023878317438805,
    0.9445750230732325760780,
    0.9894009349916499325962,
};
inline constexpr double gl16_w[8] = {
    0.1894506104550684962854,
    0.1826034150449235888667,
    0.1691565193950025381893,
    0.1495959888165767320815,
    0.1246289712555338720524,
    0.0951585116824927848099,
    0.0622535239386478928628,
    0.0271524594117540948518,
};

} // namespace avlab::detail
