#include "avlab/zeta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

namespace avlab {

namespace {

constexpr double PI = 3.14159265358979323846;
constexpr double LOG_2 = 0.69314718055994530942;
constexpr double LOG_PI = 1.14472988584940017414;
constexpr double LOG_2PI = 1.83787706640934548356;
constexpr double LOG_SQRT_2PI = 0.91893853320467274178;

// B_{2k}/(2k)! for k = 1..30, precomputed so Bernoulli corrections never
// divide by huge factorials
constexpr double b2k_over_fact[31] = {
    0.0,
    0.0833333333333333333333,
    -0.00138888888888888888889,
    0.0000330687830687830687831,
    -8.26719576719576719577e-7,
    2.08767569878680989792e-8,
    -5.28419013868749318485e-10,
    1.33825365306846788328e-11,
    -3.38968029632258286683e-13,
    8.58606205627784456414e-15,
    -2.17486869855806187304e-16,
    5.50900282836022951520e-18,
    -1.39544646858125233407e-19,
    3.53470703962946747169e-21,
    -8.95351742703754685040e-23,
    2.26795245233768306031e-24,
    -5.74479066887220244526e-26,
    1.45517247561486490187e-27,
    -3.68599494066531017818e-29,
    9.33673425709504467203e-31,
    -2.36502241570062993456e-32,
    5.99067176248213430466e-34,
    -1.51745488446829026171e-35,
    3.84375812545418823223e-37,
    -9.73635307264669103527e-39,
    2.46624704420068095711e-40,
    -6.24707674182074369315e-42,
    1.58240302446449142975e-43,
    -4.00827368594893596853e-45,
    1.01530758555695563116e-46,
    -2.57180415824187174992e-48,
};

// -B_{2k}/(2k) for k = 1..7, the digamma asymptotic series coefficients
constexpr double digamma_coef[8] = {
    0.0,
    -1.0 / 12.0,
    1.0 / 120.0,
    -1.0 / 252.0,
    1.0 / 240.0,
    -1.0 / 132.0,
    691.0 / 32760.0,
    -1.0 / 12.0,
};

struct kahan {
    double hi = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = hi + y;
        c = (t - hi) - y;
        hi = t;
    }
};

struct kahan_cplx {
    kahan re, im;
    void add(cplx x) {
        re.add(x.real());
        im.add(x.imag());
    }
    cplx get() const { return {re.hi, im.hi}; }
};

void check_range(cplx s) {
    if (std::abs(s.imag()) > max_imag_height)
        throw RangeExceeded("Im s outside supported window at s = (" +
                            std::to_string(s.real()) + ", " + std::to_string(s.imag()) + ")");
    if (std::abs(s.real()) > max_real_extent)
        throw RangeExceeded("Re s outside supported window at s = (" +
                            std::to_string(s.real()) + ", " + std::to_string(s.imag()) + ")");
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw RangeError("non-finite argument");
}

void check_config(const EvalConfig& cfg) {
    if (!(cfg.em_cutoff_factor >= 1.0))
        throw RangeError("em_cutoff_factor must be >= 1");
    if (cfg.bernoulli_terms < 1 || cfg.bernoulli_terms > 30)
        throw RangeError("bernoulli_terms must be in [1, 30]");
    if (!(cfg.target_abs_err > 0.0))
        throw RangeError("target_abs_err must be positive");
}

// Dirichlet truncation point. Base rule N = max(floor(factor*|t|), 32); for
// sigma > 2.5 the tail already decays like N^{-sigma}, so N is lowered to the
// smallest value whose first omitted Bernoulli term (rising-factorial bound,
// computed in logs) is safely below the accuracy target. Pure function of
// (s, max|t| over fused shifts, cfg), so results are reproducible.
int choose_n(cplx s, double max_abs_t, const EvalConfig& cfg) {
    int base = std::max(32, (int)std::floor(cfg.em_cutoff_factor * max_abs_t));
    double sigma = s.real();
    if (sigma <= 2.5 || base <= 32) return base;
    int m = cfg.bernoulli_terms;
    double abs_s = std::abs(s);
    double lp = 0.0;
    for (int j = 0; j <= 2 * m; ++j) lp += std::log(abs_s + j);
    int kb = std::min(m + 1, 30);
    double lb = std::log(std::abs(b2k_over_fact[kb]));
    double target = 0.05 * cfg.target_abs_err;
    // smallest N with lb + lp - (sigma + 2m + 1) log N < log target
    double ln_n = (lb + lp - std::log(target)) / (sigma + 2.0 * m + 1.0);
    double n_req = std::exp(ln_n);
    // stay inside the regime where the correction series actually decays
    double n_min = 1.1 * (abs_s + 2.0 * m + 2.0) / (2.0 * PI);
    int n = (int)std::ceil(std::max({32.0, n_req, n_min}));
    return std::min(n, base);
}

// tail of the Euler-Maclaurin formula at argument w with cut at N:
// N^{1-w}/(w-1) + N^{-w}/2 + sum_k B_{2k}/(2k)! P_k(w) N^{-w-2k+1},
// P_k(w) = w(w+1)...(w+2k-2). Derivative accumulated via the product-rule
// recurrence, no divisions.
void em_tail(cplx w, double n, double ln_n, int m, bool want_d, cplx* out, cplx* out_d) {
    cplx nm_w = std::exp(-w * ln_n); // N^{-w}
    cplx inv_wm1 = 1.0 / (w - 1.0);
    cplx t0 = nm_w * n * inv_wm1;
    cplx half = 0.5 * nm_w;
    cplx p = w;        // P_k
    cplx pd = 1.0;     // P_k'
    double npow_scale = std::exp(-2.0 * ln_n);
    cplx npow = nm_w / n; // N^{-w-2k+1} at k=1
    cplx bsum = 0.0, bsum_d = 0.0;
    for (int k = 1; k <= m; ++k) {
        double c = b2k_over_fact[k];
        bsum += c * p * npow;
        if (want_d) bsum_d += c * (pd - p * ln_n) * npow;
        if (k < m) {
            cplx f1 = w + (2.0 * k - 1.0);
            cplx f2 = w + (2.0 * k);
            if (want_d) pd = pd * (f1 * f2) + p * (f1 + f2);
            p = p * (f1 * f2);
            npow *= npow_scale;
        }
    }
    *out = t0 + half + bsum;
    if (want_d) {
        cplx t0_d = t0 * (-ln_n - inv_wm1);
        *out_d = t0_d - ln_n * half + bsum_d;
    }
}

// direct Euler-Maclaurin evaluation, Re s > -0.5 regime. Optionally fuses
// the derivative and any number of imaginary shifts into the single pass
// over Dirichlet terms (the dominant cost).
void em_eval(cplx s, std::span<const detail::ShiftTable* const> shifts,
             bool want_zp, cplx* out_z, cplx* out_zp, cplx* out_shifted,
             const EvalConfig& cfg) {
    double sigma = s.real(), t = s.imag();
    double max_abs_t = std::abs(t);
    for (const auto* sh : shifts)
        max_abs_t = std::max(max_abs_t, std::abs(t + sh->delta));
    int n = choose_n(s, max_abs_t, cfg);
    const double* lg = detail::log_table((std::size_t)n + 1);
    int m = cfg.bernoulli_terms;

    kahan_cplx sum_z, sum_zp;
    std::size_t nsh = shifts.size();
    // shift counts are tiny (<= 3 in practice); fixed stack buffer
    kahan_cplx sum_sh[4];
    sum_z.add(1.0);
    for (std::size_t j = 0; j < nsh; ++j) sum_sh[j].add(1.0);
    for (int k = 2; k < n; ++k) {
        double ln = lg[k];
        double mag = std::exp(-sigma * ln);
        double ph = -t * ln;
        cplx e = mag * cplx(std::cos(ph), std::sin(ph));
        sum_z.add(e);
        if (want_zp) sum_zp.add(-ln * e);
        for (std::size_t j = 0; j < nsh; ++j) sum_sh[j].add(e * shifts[j]->rot[(std::size_t)k]);
    }
    double ln_n = lg[n];
    cplx tail, tail_d;
    em_tail(s, (double)n, ln_n, m, want_zp, &tail, &tail_d);
    *out_z = sum_z.get() + tail;
    if (want_zp) *out_zp = sum_zp.get() + tail_d;
    for (std::size_t j = 0; j < nsh; ++j) {
        cplx w = s + cplx(0.0, shifts[j]->delta);
        cplx tw, twd;
        em_tail(w, (double)n, ln_n, m, false, &tw, &twd);
        out_shifted[j] = sum_sh[j].get() + tw;
    }
}

// log sin w for |Im w| >= 1, branch-safe: sin w = (i/2) e^{-iw}(1-e^{2iw})
// in the upper half-plane, conjugate below
cplx log_sin_tall(cplx w) {
    if (w.imag() < 0.0) return std::conj(log_sin_tall(std::conj(w)));
    cplx q = std::exp(cplx(0.0, 2.0) * w);
    return cplx(0.0, -1.0) * w + cplx(-LOG_2, PI / 2.0) + std::log(1.0 - q);
}

// cot w without overflow for |Im w| >= 1
cplx cot_tall(cplx w) {
    if (w.imag() < 0.0) return std::conj(cot_tall(std::conj(w)));
    cplx q = std::exp(cplx(0.0, 2.0) * w);
    return cplx(0.0, -1.0) * (1.0 + q) / (1.0 - q);
}

// functional-equation evaluation for Re s < -0.5: zeta(s) = D(s) zeta(1-s)
// with D = A sin(pi s/2), A = 2^s pi^(s-1) Gamma(1-s). The A-times-sin form
// keeps trivial-zero neighborhoods regular; for tall |t| everything moves to
// log space (sin alone would overflow while the product stays finite).
void fe_eval(cplx s, bool want_zp, cplx* out_z, cplx* out_zp, const EvalConfig& cfg) {
    cplx w = 1.0 - s; // Re w > 1.5
    cplx z1, zp1;
    em_eval(w, {}, want_zp, &z1, &zp1, nullptr, cfg);
    cplx log_a = s * LOG_2 + (s - 1.0) * LOG_PI + log_gamma_right(w);
    cplx half_pi_s = 0.5 * PI * s;
    if (std::abs(s.imag()) < 30.0) {
        cplx a = std::exp(log_a);
        cplx sn = std::sin(half_pi_s);
        *out_z = a * sn * z1;
        if (want_zp) {
            cplx daa = LOG_2 + LOG_PI - digamma(w);
            cplx cs = std::cos(half_pi_s);
            *out_zp = a * ((daa * sn + 0.5 * PI * cs) * z1 - sn * zp1);
        }
    } else {
        cplx e = std::exp(log_a + log_sin_tall(half_pi_s));
        *out_z = e * z1;
        if (want_zp) {
            cplx daa = LOG_2 + LOG_PI - digamma(w);
            cplx ct = cot_tall(half_pi_s);
            *out_zp = e * ((daa + 0.5 * PI * ct) * z1 - zp1);
        }
    }
}

void eval_core(cplx s, bool want_zp, cplx* out_z, cplx* out_zp, const EvalConfig& cfg) {
    check_range(s);
    check_config(cfg);
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12)
        throw PoleAtOne("zeta pole at s = 1");
    if (s.real() < -0.5)
        fe_eval(s, want_zp, out_z, out_zp, cfg);
    else
        em_eval(s, {}, want_zp, out_z, out_zp, nullptr, cfg);
}

// functional-equation factor on Re s <= 0.5 where Gamma(1-s) is pole-free
cplx delta_left(cplx s, const EvalConfig&) {
    cplx w = 1.0 - s;
    cplx log_a = s * LOG_2 + (s - 1.0) * LOG_PI + log_gamma_right(w);
    cplx half_pi_s = 0.5 * PI * s;
    if (std::abs(s.imag()) < 30.0)
        return std::exp(log_a) * std::sin(half_pi_s);
    return std::exp(log_a + log_sin_tall(half_pi_s));
}

} // namespace

cplx log_gamma_right(cplx z) {
    // Lanczos, g = 607/128, 15 coefficients (Godfrey set); ~1e-15 relative
    // accuracy for Re z > 0
    static const double cof[14] = {
        57.1562356658629235,
        -59.5979603554754912,
        14.1360979747417471,
        -0.491913816097620199,
        0.339946499848118887e-4,
        0.465236289270485756e-4,
        -0.983744753048795646e-4,
        0.158088703224912494e-3,
        -0.210264441724104883e-3,
        0.217439618115212643e-3,
        -0.164318106536763890e-3,
        0.844182239838527433e-4,
        -0.261908384015814087e-4,
        0.368991826595316234e-5,
    };
    cplx tmp = z + 5.2421875;
    tmp = (z + 0.5) * std::log(tmp) - tmp;
    cplx ser = 0.999999999999997092;
    for (int j = 0; j < 14; ++j) ser += cof[j] / (z + (double)(j + 1));
    return tmp + std::log(2.5066282746310005 * ser / z);
}

cplx digamma(cplx z) {
    cplx acc = 0.0;
    cplx w = z;
    while (std::abs(w) < 12.0) {
        acc -= 1.0 / w;
        w += 1.0;
    }
    cplx inv2 = 1.0 / (w * w);
    cplx series = 0.0;
    cplx pw = inv2;
    for (int k = 1; k <= 7; ++k) {
        series += digamma_coef[k] * pw;
        pw *= inv2;
    }
    return acc + std::log(w) - 0.5 / w + series;
}

cplx zeta(cplx s, const EvalConfig& cfg) {
    cplx z, zp;
    eval_core(s, false, &z, &zp, cfg);
    return z;
}

cplx zeta_prime(cplx s, const EvalConfig& cfg) {
    cplx z, zp;
    eval_core(s, true, &z, &zp, cfg);
    return zp;
}

ZetaPair zeta_pair(cplx s, const EvalConfig& cfg) {
    ZetaPair out;
    eval_core(s, true, &out.z, &out.zp, cfg);
    return out;
}

cplx delta(cplx s, const EvalConfig& cfg) {
    check_range(s);
    // genuine poles: s = 1 and odd integers >= 3 (Gamma pole not cancelled
    // by a sine zero)
    double rr = std::round(s.real());
    if (std::abs(s.imag()) < 1e-9 && std::abs(s.real() - rr) < 1e-9 && rr >= 1.0 &&
        (rr == 1.0 || std::fmod(rr, 2.0) != 0.0))
        throw DeltaPole("delta pole near s = (" + std::to_string(s.real()) + ", " +
                        std::to_string(s.imag()) + ")");
    if (s.real() > 0.5) {
        // reflection identity delta(s) delta(1-s) = 1 keeps the Gamma factor
        // in its pole-free half-plane
        return 1.0 / delta_left(1.0 - s, cfg);
    }
    return delta_left(s, cfg);
}

cplx log_delta_deriv(cplx s, const EvalConfig&) {
    check_range(s);
    if (std::abs(s.imag()) < 1.0)
        throw RangeError("log_delta_deriv needs |Im s| >= 1");
    // the log-derivative is invariant under s -> 1-s, so evaluate on the side
    // where Gamma(1-s) is pole-free
    cplx se = (s.real() > 0.5) ? 1.0 - s : s;
    cplx w = 1.0 - se;
    if (s.real() == 0.5) {
        // exactly real on the critical line (pairing of psi and cot terms);
        // compute the real part analytically instead of rounding
        cplx ps = digamma(w);
        cplx ct = cot_tall(0.5 * PI * se);
        return cplx(LOG_2PI - ps.real() + 0.5 * PI * ct.real(), 0.0);
    }
    return LOG_2PI - digamma(w) + 0.5 * PI * cot_tall(0.5 * PI * se);
}

StieltjesPair stieltjes_constants(double radius, int nodes, const EvalConfig& cfg) {
    if (!(radius > 0.0 && radius < 1.0)) throw RangeError("stieltjes radius must be in (0,1)");
    if (nodes < 64) throw RangeError("stieltjes nodes must be >= 64");
    auto eval = [&](int k) {
        kahan a0, a1;
        for (int j = 0; j < k; ++j) {
            double th = 2.0 * PI * (double)j / (double)k;
            cplx u = std::polar(radius, th);
            cplx s = 1.0 + u;
            cplx g = zeta(s, cfg) - 1.0 / u;
            a0.add(g.real());
            cplx g1 = g * std::polar(1.0 / radius, -th);
            a1.add(g1.real());
        }
        return StieltjesPair{a0.hi / (double)k, -a1.hi / (double)k};
    };
    StieltjesPair coarse = eval(nodes);
    StieltjesPair fine = eval(2 * nodes);
    if (std::abs(fine.c0 - coarse.c0) > 1e-9 || std::abs(fine.c1 - coarse.c1) > 1e-9)
        throw QuadratureNotConverged("stieltjes trapezoid did not settle under node doubling");
    return fine;
}

namespace detail {

ShiftTable make_shift_table(double delta, std::size_t n_max) {
    ShiftTable t;
    t.delta = delta;
    t.rot.resize(n_max + 1);
    const double* lg = log_table(n_max + 1);
    t.rot[0] = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        double ph = -delta * lg[n];
        t.rot[n] = cplx(std::cos(ph), std::sin(ph));
    }
    return t;
}

void zeta_multi(cplx s, std::span<const ShiftTable* const> shifts,
                ZetaPair& base, std::span<cplx> shifted, const EvalConfig& cfg) {
    check_range(s);
    check_config(cfg);
    if (shifts.size() > 4) throw RangeError("zeta_multi supports at most 4 fused shifts");
    if (shifted.size() < shifts.size()) throw RangeError("zeta_multi output span too small");
    if (s.real() <= -0.5) throw RangeError("zeta_multi requires Re s > -0.5");
    if (std::abs(s - cplx(1.0, 0.0)) < 1e-12) throw PoleAtOne("zeta pole at s = 1");
    double max_abs_t = std::abs(s.imag());
    for (const auto* sh : shifts) {
        cplx w = s + cplx(0.0, sh->delta);
        if (std::abs(w - cplx(1.0, 0.0)) < 1e-12) throw PoleAtOne("shifted zeta pole at s = 1");
        if (std::abs(w.imag()) > max_imag_height) throw RangeExceeded("shifted point above window");
        max_abs_t = std::max(max_abs_t, std::abs(w.imag()));
    }
    int need = choose_n(s, max_abs_t, cfg);
    for (const auto* sh : shifts)
        if ((int)sh->rot.size() <= need)
            throw RangeError("shift rotation table shorter than the Dirichlet truncation");
    em_eval(s, shifts, true, &base.z, &base.zp, shifted.data(), cfg);
}

const double* log_table(std::size_t n) {
    static std::mutex m;
    static std::atomic<const std::vector<double>*> cur{nullptr};
    static std::vector<std::unique_ptr<std::vector<double>>>* gens =
        new std::vector<std::unique_ptr<std::vector<double>>>();
    const std::vector<double>* v = cur.load(std::memory_order_acquire);
    if (v && v->size() >= n) return v->data();
    std::lock_guard<std::mutex> lk(m);
    v = cur.load(std::memory_order_relaxed);
    if (!v || v->size() < n) {
        std::size_t cap = std::max<std::size_t>(n, v ? v->size() * 2 : 4096);
        auto nv = std::make_unique<std::vector<double>>(cap);
        (*nv)[0] = 0.0;
        for (std::size_t i = 1; i < cap; ++i) (*nv)[i] = std::log((double)i);
        gens->push_back(std::move(nv));
        cur.store(gens->back().get(), std::memory_order_release);
        v = gens->back().get();
    }
    return v->data();
}

cplx pairwise_sum(std::span<const cplx> xs) {
    if (xs.empty()) return 0.0;
    if (xs.size() == 1) return xs[0];
    if (xs.size() <= 8) {
        cplx acc = xs[0];
        for (std::size_t i = 1; i < xs.size(); ++i) acc += xs[i];
        return acc;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

} // namespace detail

} // namespace avlab
