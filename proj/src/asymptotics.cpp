#include "avlab/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "avlab/parallel.hpp"
#include "gl16.hpp"

namespace avlab {

namespace {

constexpr double PI = 3.14159265358979323846;
constexpr double TWO_PI = 6.28318530717958647692;
constexpr double EULER_E = 2.71828182845904523536;

// one + zeta' + up to 4 shifted factors, all riding on a single fused
// kernel evaluation per quadrature node
constexpr std::size_t NW_MAX = 6;

struct weight_plan {
    bool want_one = false;
    bool want_zp = false;
    std::vector<double> deltas;
    std::vector<detail::ShiftTable> tables;
    std::vector<const detail::ShiftTable*> ptrs; // stable, set after tables
    EvalConfig ecfg;

    std::size_t n() const { return (want_one ? 1 : 0) + (want_zp ? 1 : 0) + deltas.size(); }
    std::size_t shift_base() const { return (want_one ? 1 : 0) + (want_zp ? 1 : 0); }
};

weight_plan make_plan(bool one, bool zp, std::span<const double> deltas, double t_abs_max) {
    weight_plan p;
    p.want_one = one;
    p.want_zp = zp;
    p.deltas.assign(deltas.begin(), deltas.end());
    std::size_t nmax = (std::size_t)std::ceil(t_abs_max) + 64;
    p.tables.reserve(p.deltas.size());
    for (double d : p.deltas) p.tables.push_back(detail::make_shift_table(d, nmax));
    for (const auto& t : p.tables) p.ptrs.push_back(&t);
    return p;
}

// weight(s) * zeta'(s)/(zeta(s)-a) for every planned weight at once
void integrand(cplx s, cplx a, const weight_plan& plan, cplx* out) {
    ZetaPair base;
    cplx sh[4];
    detail::zeta_multi(s, {plan.ptrs.data(), plan.ptrs.size()}, base,
                       {sh, plan.deltas.size()}, plan.ecfg);
    cplx h = base.zp / (base.z - a);
    std::size_t i = 0;
    if (plan.want_one) out[i++] = h;
    if (plan.want_zp) out[i++] = base.zp * h;
    for (std::size_t k = 0; k < plan.deltas.size(); ++k) out[i++] = (sh[k] - a) * h;
}

void gl16_vec(cplx a, const weight_plan& plan, cplx z0, cplx z1, cplx* out) {
    cplx mid = 0.5 * (z0 + z1), half = 0.5 * (z1 - z0);
    std::size_t nw = plan.n();
    cplx acc[NW_MAX] = {};
    cplx v1[NW_MAX], v2[NW_MAX];
    for (int i = 0; i < 8; ++i) {
        integrand(mid + half * detail::gl16_x[i], a, plan, v1);
        integrand(mid - half * detail::gl16_x[i], a, plan, v2);
        for (std::size_t j = 0; j < nw; ++j) acc[j] += detail::gl16_w[i] * (v1[j] + v2[j]);
    }
    for (std::size_t j = 0; j < nw; ++j) out[j] = acc[j] * half;
}

// bisect a panel until the whole-vs-halves delta of every weight is below
// its per-unit tolerance; accept the refined value, bank the delta as the
// panel's error budget
void adapt_rec(cplx a, const weight_plan& plan, const double* tol_unit, cplx z0, cplx z1,
               const cplx* whole, int depth, int max_depth, cplx* acc_val, double* acc_budget) {
    std::size_t nw = plan.n();
    cplx mid = 0.5 * (z0 + z1);
    cplx left[NW_MAX], right[NW_MAX];
    gl16_vec(a, plan, z0, mid, left);
    gl16_vec(a, plan, mid, z1, right);
    double len = std::abs(z1 - z0);
    double deltas[NW_MAX];
    bool ok = true;
    for (std::size_t j = 0; j < nw; ++j) {
        deltas[j] = std::abs(whole[j] - (left[j] + right[j]));
        if (deltas[j] > tol_unit[j] * len) ok = false;
    }
    if (ok) {
        for (std::size_t j = 0; j < nw; ++j) {
            acc_val[j] += left[j] + right[j];
            acc_budget[j] += deltas[j];
        }
        return;
    }
    if (depth >= max_depth)
        throw BoundaryTooClose(
            "contour panel failed to settle under bisection; a root or pole hugs the boundary");
    adapt_rec(a, plan, tol_unit, z0, mid, left, depth + 1, max_depth, acc_val, acc_budget);
    adapt_rec(a, plan, tol_unit, mid, z1, right, depth + 1, max_depth, acc_val, acc_budget);
}

struct sweep_result {
    std::size_t nw = 0;
    cplx value[NW_MAX] = {};
    double budget[NW_MAX] = {};
};

// adaptive counterclockwise boundary integral of every planned weight,
// normalized by 1/(2 pi i). Two phases: a coarse pass fixes per-weight
// tolerances from magnitude estimates, then panel bisection integrates to a
// budget of at most 1e-4 (1 + |value|) per weight, retrying tighter if the
// banked deltas overshoot. For a shifted weight with delta < 0 the factor
// zeta(s + i delta) carries a pole at 1 - i delta; if that point lies inside
// the rectangle its residue is subtracted so the result stays equal to the
// sum over roots of zeta = a.
sweep_result boundary_sweep(cplx a, const SearchBox& box, const weight_plan& plan) {
    std::size_t nw = plan.n();
    cplx c0(box.sigma_min, box.t_floor), c1(box.sigma_max, box.t_floor);
    cplx c2(box.sigma_max, box.t_eff), c3(box.sigma_min, box.t_eff);
    const cplx corners[5] = {c0, c1, c2, c3, c0};

    std::vector<cplx> p0, p1; // base panels, counterclockwise
    for (int e = 0; e < 4; ++e) {
        cplx z0 = corners[e], z1 = corners[e + 1];
        int np = std::max(1, (int)std::ceil(std::abs(z1 - z0) / 0.5 - 1e-9));
        for (int i = 0; i < np; ++i) {
            p0.push_back(z0 + (double)i / np * (z1 - z0));
            p1.push_back(z0 + (double)(i + 1) / np * (z1 - z0));
        }
    }
    std::size_t npan = p0.size();
    double perimeter = 2.0 * (box.sigma_max - box.sigma_min) + 2.0 * (box.t_eff - box.t_floor);

    // phase 1: one coarse pass, reused as the whole-panel values below
    std::vector<std::array<cplx, NW_MAX>> whole(npan);
    parallel_for(npan, [&](std::size_t i) { gl16_vec(a, plan, p0[i], p1[i], whole[i].data()); });

    double i0[NW_MAX];
    std::vector<cplx> col(npan);
    for (std::size_t j = 0; j < nw; ++j) {
        for (std::size_t i = 0; i < npan; ++i) col[i] = whole[i][j];
        i0[j] = std::abs(detail::pairwise_sum(col)) / TWO_PI;
    }

    double tol_unit[NW_MAX];
    for (std::size_t j = 0; j < nw; ++j)
        tol_unit[j] = 0.5e-4 * (1.0 + i0[j]) * TWO_PI / perimeter;

    sweep_result res;
    res.nw = nw;
    for (int attempt = 0;; ++attempt) {
        std::vector<std::array<cplx, NW_MAX>> vals(npan);
        std::vector<std::array<double, NW_MAX>> buds(npan);
        parallel_for(npan, [&](std::size_t i) {
            vals[i].fill(cplx(0.0, 0.0));
            buds[i].fill(0.0);
            adapt_rec(a, plan, tol_unit, p0[i], p1[i], whole[i].data(), 0, 26,
                      vals[i].data(), buds[i].data());
        });
        bool all_ok = true;
        for (std::size_t j = 0; j < nw; ++j) {
            for (std::size_t i = 0; i < npan; ++i) col[i] = vals[i][j];
            res.value[j] = detail::pairwise_sum(col) * cplx(0.0, -1.0 / TWO_PI);
            double b = 0.0;
            for (std::size_t i = 0; i < npan; ++i) b += buds[i][j];
            res.budget[j] = b / TWO_PI;
            if (res.budget[j] > 1e-4 * (1.0 + std::abs(res.value[j]))) all_ok = false;
        }
        if (all_ok) break;
        if (attempt >= 3)
            throw NoConvergence("contour quadrature budget failed to meet its target");
        for (std::size_t j = 0; j < nw; ++j) tol_unit[j] /= 16.0;
    }

    // interior pole of a down-shifted factor
    std::size_t base = plan.shift_base();
    for (std::size_t k = 0; k < plan.deltas.size(); ++k) {
        double d = plan.deltas[k];
        if (d < 0.0 && -d > box.t_floor && -d < box.t_eff) {
            cplx s0(1.0, -d);
            ZetaPair p = zeta_pair(s0, plan.ecfg);
            res.value[base + k] -= p.zp / (p.z - a);
        }
    }
    return res;
}

struct empirical_sums {
    long long count = 0;
    cplx zp;
    std::vector<cplx> shifted;
};

// multiplicity-weighted record sums, one fused kernel call per record
empirical_sums empirical_pass(std::span<const AValueRecord> records, cplx a,
                              const weight_plan& plan) {
    std::size_t n = records.size(), k = plan.deltas.size();
    std::vector<cplx> zp_terms(n);
    std::vector<std::vector<cplx>> sh_terms(k, std::vector<cplx>(n));
    parallel_for(n, [&](std::size_t i) {
        const AValueRecord& r = records[i];
        cplx rho(r.beta, r.gamma);
        ZetaPair base;
        cplx sh[4];
        detail::zeta_multi(rho, {plan.ptrs.data(), plan.ptrs.size()}, base, {sh, k}, plan.ecfg);
        double m = (double)r.multiplicity;
        zp_terms[i] = m * base.zp;
        for (std::size_t j = 0; j < k; ++j) sh_terms[j][i] = m * (sh[j] - a);
    });
    empirical_sums out;
    for (const AValueRecord& r : records) out.count += r.multiplicity;
    out.zp = detail::pairwise_sum(zp_terms);
    out.shifted.reserve(k);
    for (std::size_t j = 0; j < k; ++j) out.shifted.push_back(detail::pairwise_sum(sh_terms[j]));
    return out;
}

double resolve_c_a(cplx a) { return (a == cplx(1.0, 0.0)) ? 2.0 : 1.0; }

// common core; window records must cover |Im s - gamma| <= 1
double pf_core(cplx s, cplx a, std::span<const AValueRecord> records) {
    std::vector<cplx> terms;
    for (const AValueRecord& r : records) {
        if (std::abs(s.imag() - r.gamma) > 1.0) continue;
        cplx rho(r.beta, r.gamma);
        if (std::abs(s - rho) < 1e-4)
            throw TooCloseToRoot("sample point within 1e-4 of a root of zeta = a");
        terms.push_back((double)r.multiplicity / (s - rho));
    }
    ZetaPair p = zeta_pair(s);
    cplx lhs = p.zp / (p.z - a);
    return std::abs(lhs - detail::pairwise_sum(terms));
}

void pf_check_sigma(cplx s) {
    if (s.real() < -1.0 || s.real() > 2.0)
        throw RangeError("partial-fraction sample needs -1 <= Re s <= 2");
}

} // namespace

double zero_sum_main(double T, const StieltjesPair& st) {
    if (T <= TWO_PI) throw RangeError("main terms need T > 2 pi");
    double L = std::log(T / TWO_PI);
    double W = T / TWO_PI;
    return (T / (2.0 * TWO_PI)) * L * L + (st.c0 - 1.0) * W * L + (1.0 - st.c0 - st.c1) * W;
}

cplx zeta_prime_sum_main(cplx a, double T, const StieltjesPair& st) {
    if (T <= TWO_PI) throw RangeError("main terms need T > 2 pi");
    double L = std::log(T / TWO_PI);
    double W = T / TWO_PI;
    return (0.5 - a) * (W * L * L) + (2.0 * a + (st.c0 - 1.0)) * (W * L) +
           (1.0 - st.c0 - st.c1 - 2.0 * a) * W;
}

cplx shifted_sum_main(cplx a, double T, double alpha, const StieltjesPair& st) {
    if (T <= TWO_PI) throw RangeError("main terms need T > 2 pi");
    if (std::abs(alpha) < 1e-12)
        throw AlphaZero("shifted moment main term needs alpha != 0 (delta = 0 excluded)");
    double L = std::log(T / TWO_PI);
    double W = T / TWO_PI;
    double delta = TWO_PI * alpha / L;
    cplx x(0.0, delta); // i delta

    double c2a = std::cos(TWO_PI * alpha), s2a = std::sin(TWO_PI * alpha);
    double sinc2 = s2a / (TWO_PI * alpha);
    double sincp = std::sin(PI * alpha) / (PI * alpha);
    cplx logcoef = cplx(1.0 - sinc2, PI * alpha * sincp * sincp) -
                   a * cplx(1.0 - c2a, s2a);

    cplx e(c2a, -s2a); // exp(-2 pi i alpha)
    cplx inv1 = 1.0 / (1.0 - x);
    // q = zeta(1 - i delta) + 1/(i delta), r = zeta'/zeta(1 + i delta) + 1/(i delta);
    // both are analytic through delta = 0, series-evaluated when the direct
    // forms would cancel catastrophically
    cplx q, r;
    if (std::abs(delta) < 1e-4) {
        q = st.c0 + st.c1 * x;
        r = st.c0 - (st.c0 * st.c0 + 2.0 * st.c1) * x;
    } else {
        q = zeta(1.0 - x) + 1.0 / x;
        ZetaPair p = zeta_pair(1.0 + x);
        r = p.zp / p.z + 1.0 / x;
    }
    double log_ca = std::log(resolve_c_a(a));
    cplx ablock = 1.0 + log_ca + e * (inv1 * inv1 - cplx(0.0, TWO_PI * alpha) * inv1);
    cplx block = -1.0 + e * (inv1 - inv1 * q) + r - a * ablock;
    return logcoef * (W * L) + W * block;
}

ContourValue contour_oracle(cplx a, double T, ContourWeight weight, double alpha,
                            const FinderConfig& cfg) {
    if (T < 5.0) throw RangeError("contour oracle needs T >= 5");
    SearchBox box = resolve_search_box(a, T, cfg);
    std::vector<double> deltas;
    if (weight == ContourWeight::shifted) {
        if (T <= TWO_PI) throw RangeError("shifted weight needs T > 2 pi");
        deltas.push_back(TWO_PI * alpha / std::log(T / TWO_PI));
    }
    double maxad = deltas.empty() ? 0.0 : std::abs(deltas[0]);
    weight_plan plan = make_plan(weight == ContourWeight::one, weight == ContourWeight::zeta_prime,
                                 deltas, box.t_eff + maxad);
    sweep_result sw = boundary_sweep(a, box, plan);
    return ContourValue{sw.value[0], sw.budget[0]};
}

MomentSet compute_moments(cplx a, double T, std::span<const double> alphas,
                          std::span<const AValueRecord> records, const FinderConfig& cfg) {
    if (T <= TWO_PI) throw RangeError("moment comparisons need T > 2 pi");
    if (alphas.size() > 4) throw RangeError("at most 4 shifted moments per sweep");
    StieltjesPair st = stieltjes_constants();
    double L = std::log(T / TWO_PI);

    // theory first: cheap, and AlphaZero/RangeError fire before the sweep
    cplx theory_zp = zeta_prime_sum_main(a, T, st);
    std::vector<cplx> theory_sh;
    std::vector<double> deltas;
    for (double al : alphas) {
        theory_sh.push_back(shifted_sum_main(a, T, al, st));
        deltas.push_back(TWO_PI * al / L);
    }

    SearchBox box = resolve_search_box(a, T, cfg);
    double maxad = 0.0;
    for (double d : deltas) maxad = std::max(maxad, std::abs(d));
    weight_plan plan = make_plan(true, true, deltas, box.t_eff + maxad);
    sweep_result sw = boundary_sweep(a, box, plan);
    empirical_sums emp = empirical_pass(records, a, plan);

    MomentSet out;
    out.count_oracle = ContourValue{sw.value[0], sw.budget[0]};
    out.count.a = a;
    out.count.T = T;
    out.count.empirical = emp.count;
    out.count.c_a = resolve_c_a(a);
    out.count.main_term = (T / TWO_PI) * std::log(T / (TWO_PI * EULER_E * out.count.c_a));
    out.count.deviation = (double)out.count.empirical - out.count.main_term;

    out.zeta_prime.a = a;
    out.zeta_prime.T = T;
    out.zeta_prime.empirical_sum = emp.zp;
    out.zeta_prime.theory_main = theory_zp;
    out.zeta_prime.oracle = sw.value[1];
    out.zeta_prime.oracle_budget = sw.budget[1];

    for (std::size_t k = 0; k < alphas.size(); ++k) {
        MomentReport m;
        m.a = a;
        m.T = T;
        m.empirical_sum = emp.shifted[k];
        m.theory_main = theory_sh[k];
        m.oracle = sw.value[2 + k];
        m.oracle_budget = sw.budget[2 + k];
        m.alpha = alphas[k];
        m.delta = deltas[k];
        m.delta_flagged = std::abs(deltas[k]) > 1.0;
        out.shifted.push_back(m);
    }
    return out;
}

CountComparison count_avalues(cplx a, double T, const FinderConfig& cfg) {
    std::vector<AValueRecord> recs = find_nontrivial(a, T, cfg);
    return count_avalues(a, T, std::span<const AValueRecord>(recs));
}

CountComparison count_avalues(cplx a, double T, std::span<const AValueRecord> records) {
    if (T < 5.0) throw RangeError("count comparison needs T >= 5");
    CountComparison c;
    c.a = a;
    c.T = T;
    for (const AValueRecord& r : records) c.empirical += r.multiplicity;
    c.c_a = resolve_c_a(a);
    c.main_term = (T / TWO_PI) * std::log(T / (TWO_PI * EULER_E * c.c_a));
    c.deviation = (double)c.empirical - c.main_term;
    return c;
}

MomentReport sum_zeta_prime(cplx a, double T, const FinderConfig& cfg) {
    std::vector<AValueRecord> recs = find_nontrivial(a, T, cfg);
    return compute_moments(a, T, {}, recs, cfg).zeta_prime;
}

MomentReport sum_shifted(cplx a, double T, double alpha, const FinderConfig& cfg) {
    std::vector<AValueRecord> recs = find_nontrivial(a, T, cfg);
    double al[1] = {alpha};
    return compute_moments(a, T, {al, 1}, recs, cfg).shifted[0];
}

ClusterReport levinson_fraction(cplx a, double T, const FinderConfig& cfg) {
    std::vector<AValueRecord> recs = find_nontrivial(a, T, cfg);
    return levinson_fraction(a, T, std::span<const AValueRecord>(recs));
}

ClusterReport levinson_fraction(cplx a, double T, std::span<const AValueRecord> records) {
    if (T < 20.0) throw RangeError("clustering fraction needs T >= 20");
    ClusterReport c;
    c.a = a;
    c.T = T;
    c.window = std::pow(std::log(std::log(T)), 2) / std::log(T);
    long long num = 0, den = 0;
    for (const AValueRecord& r : records) {
        den += r.multiplicity;
        if (std::abs(r.beta - 0.5) < c.window) num += r.multiplicity;
    }
    // an empty range has no stragglers
    c.inside_fraction = (den > 0) ? (double)num / (double)den : 1.0;
    return c;
}

double partial_fraction_residual(cplx s, cplx a, const FinderConfig& cfg) {
    pf_check_sigma(s);
    if (std::abs(s.imag()) < 1.0) throw RangeError("partial-fraction sample needs |Im s| >= 1");
    if (s.imag() < 0.0) return partial_fraction_residual(std::conj(s), std::conj(a), cfg);
    std::vector<AValueRecord> recs = find_nontrivial(a, std::max(5.0, s.imag() + 2.0), cfg);
    if (s.imag() <= 2.0) {
        // only here can the window reach the real axis
        try {
            std::vector<AValueRecord> triv = trivial_avalues(a, 30, cfg);
            recs.insert(recs.end(), triv.begin(), triv.end());
        } catch (const NotFound&) {
        }
    }
    return pf_core(s, a, recs);
}

double partial_fraction_residual(cplx s, cplx a, std::span<const AValueRecord> records) {
    pf_check_sigma(s);
    if (s.imag() < 1.0)
        throw RangeError("record-backed partial-fraction sample needs Im s >= 1");
    return pf_core(s, a, records);
}

} // namespace avlab
