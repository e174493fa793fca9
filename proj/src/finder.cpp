#include "avlab/finder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "avlab/parallel.hpp"
#include "gl16.hpp"

namespace avlab {

namespace {

constexpr double PI = 3.14159265358979323846;
constexpr double TWO_PI = 6.28318530717958647692;

using detail::gl16_x;
using detail::gl16_w;

// the counting integrand is the log-derivative of g(s) = (s-1)(zeta(s)-a),
// which is entire: rectangles containing or touching the zeta pole at s=1
// still count plain roots of zeta=a. g/g' also drives the root-proximity
// estimate used for boundary clearance.
struct GNode {
    cplx h;     // g'/g
    double est; // |g|/|g'|, first-order distance to the nearest root
};

GNode g_node(cplx s, cplx a, const EvalConfig& ecfg) {
    ZetaPair p = zeta_pair(s, ecfg);
    cplx sm1 = s - 1.0;
    cplx g = sm1 * (p.z - a);
    cplx gp = (p.z - a) + sm1 * p.zp;
    GNode out;
    out.h = gp / g;
    double ag = std::abs(g), agp = std::abs(gp);
    out.est = (agp > 1e-300) ? ag / agp : 1e300;
    return out;
}

// directed straight segment carrying per-panel integrals of g'/g so that
// sub-segments aligned to the panel grid can be sliced without requery
struct EdgeVal {
    cplx p, q;
    int npanels = 0;
    int level = 0;
    std::vector<cplx> panel;
    double min_est = 1e300;

    cplx total() const { return detail::pairwise_sum(panel); }
};

int panels_for(double len, int nodes_per_unit, int level) {
    double want = len * (double)nodes_per_unit * (double)(1 << level) / 16.0;
    return std::max(1, (int)std::ceil(want - 1e-9));
}

EdgeVal make_edge(cplx p, cplx q, cplx a, int npanels, int level, const FinderConfig& cfg) {
    (void)cfg;
    EdgeVal e;
    e.p = p;
    e.q = q;
    e.npanels = npanels;
    e.level = level;
    e.panel.resize((std::size_t)npanels);
    EvalConfig ecfg;
    cplx dz = (q - p) / (double)npanels;
    for (int k = 0; k < npanels; ++k) {
        cplx mid = p + dz * ((double)k + 0.5);
        cplx half = dz * 0.5;
        cplx acc = 0.0;
        for (int i = 0; i < 8; ++i) {
            GNode n1 = g_node(mid + half * gl16_x[i], a, ecfg);
            GNode n2 = g_node(mid - half * gl16_x[i], a, ecfg);
            acc += gl16_w[i] * (n1.h + n2.h);
            e.min_est = std::min({e.min_est, n1.est, n2.est});
        }
        e.panel[(std::size_t)k] = acc * half;
    }
    return e;
}

EdgeVal slice_edge(const EdgeVal& e, int k0, int k1) {
    EdgeVal out;
    cplx dz = (e.q - e.p) / (double)e.npanels;
    out.p = e.p + dz * (double)k0;
    out.q = e.p + dz * (double)k1;
    out.npanels = k1 - k0;
    out.level = e.level;
    out.panel.assign(e.panel.begin() + k0, e.panel.begin() + k1);
    out.min_est = e.min_est; // conservative: parent minimum
    return out;
}

struct Box {
    double x0, x1, y0, y1;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double diam() const { return std::hypot(width(), height()); }
};

// counterclockwise: bottom and right enter positively, top and left
// negatively; all four stored in canonical direction (left-to-right,
// bottom-to-top)
struct BoxEdges {
    EdgeVal b, r, t, l;
};

cplx box_sum(const BoxEdges& e) {
    return (e.b.total() + e.r.total() - e.t.total() - e.l.total()) / cplx(0.0, TWO_PI);
}

std::optional<int> as_winding(cplx wsum) {
    long r = std::lround(wsum.real());
    if (r < 0) return std::nullopt;
    if (std::abs(wsum - cplx((double)r, 0.0)) > 0.25) return std::nullopt;
    return (int)r;
}

BoxEdges fresh_edges(const Box& b, cplx a, int level, const FinderConfig& cfg) {
    int ph = panels_for(b.width(), cfg.quadrature_nodes_per_unit, level);
    int pv = panels_for(b.height(), cfg.quadrature_nodes_per_unit, level);
    BoxEdges e;
    e.b = make_edge({b.x0, b.y0}, {b.x1, b.y0}, a, ph, level, cfg);
    e.t = make_edge({b.x0, b.y1}, {b.x1, b.y1}, a, ph, level, cfg);
    e.l = make_edge({b.x0, b.y0}, {b.x0, b.y1}, a, pv, level, cfg);
    e.r = make_edge({b.x1, b.y0}, {b.x1, b.y1}, a, pv, level, cfg);
    return e;
}

double resolve_clearance(const FinderConfig& cfg, double tallest) {
    if (cfg.edge_clearance > 0.0) return cfg.edge_clearance;
    return 1.0 / std::log(std::max(3.0, tallest));
}

std::string box_str(const Box& b) {
    std::ostringstream os;
    os << "[" << b.x0 << "," << b.x1 << "]x[" << b.y0 << "," << b.y1 << "]";
    return os.str();
}

void check_region(const SearchRegion& r) {
    if (!(r.sigma_min < r.sigma_max) || !(r.t_min < r.t_max))
        throw RangeError("degenerate search region");
}

// minimum root-distance estimate along a segment, sampled coarsely; used for
// edge placement (clearance from the nearest root), not for certification
double line_min_est(cplx p, cplx q, cplx a, double per_unit = 8.0) {
    EvalConfig ecfg;
    double len = std::abs(q - p);
    int n = std::max(3, (int)std::ceil(len * per_unit));
    double m = 1e300;
    for (int k = 0; k <= n; ++k) {
        cplx s = p + (q - p) * ((double)k / n);
        m = std::min(m, g_node(s, a, ecfg).est);
    }
    return m;
}

// recursive winding-conserving subdivision; emits isolating regions into out
struct Subdivider {
    cplx a;
    const FinderConfig* cfg;
    double cut_clearance;
    std::vector<SearchRegion>* out;
    double emit_extent = 0.55;

    void emit(const Box& b, int w, bool flagged) const {
        SearchRegion r;
        r.sigma_min = b.x0;
        r.sigma_max = b.x1;
        r.t_min = b.y0;
        r.t_max = b.y1;
        r.winding = w;
        r.depth_flagged = flagged;
        out->push_back(r);
    }

    // winding of a child box: try the sliced edges first, rebuild fresh at
    // higher density if the raw value does not commit to an integer
    std::optional<std::pair<int, BoxEdges>> settle(const Box& b, BoxEdges e) const {
        if (auto w = as_winding(box_sum(e))) return std::make_pair(*w, std::move(e));
        for (int lv = e.b.level + 1; lv <= e.b.level + 6; ++lv) {
            BoxEdges f = fresh_edges(b, a, lv, *cfg);
            if (auto w = as_winding(box_sum(f))) return std::make_pair(*w, std::move(f));
        }
        return std::nullopt;
    }

    void run(const Box& b, BoxEdges e, int w, int depth) const {
        if (w <= 0) return;
        if (b.diam() < cfg->newton_tol * 10.0) {
            emit(b, w, false);
            return;
        }
        if (w == 1 && b.width() <= emit_extent && b.height() <= emit_extent) {
            emit(b, w, false);
            return;
        }
        if (depth >= cfg->max_subdivision_depth) {
            emit(b, w, true);
            return;
        }
        bool split_x = b.width() >= b.height();
        if (try_direction(b, e, w, depth, split_x)) return;
        if (try_direction(b, e, w, depth, !split_x)) return;
        // no admissible cut on the current grids: refine the grid (twice the
        // panels means twice the cut candidates) and retry
        BoxEdges f = fresh_edges(b, a, e.b.level + 1, *cfg);
        auto s = as_winding(box_sum(f));
        if (!s || *s != w)
            throw NoConvergence("winding unstable under refinement at " + box_str(b));
        run(b, std::move(f), w, depth + 1);
    }

    bool try_direction(const Box& b, const BoxEdges& e, int w, int depth, bool split_x) const {
        int grid = split_x ? e.b.npanels : e.l.npanels;
        if (grid < 2) return false;
        // all grid-aligned cuts, nearest the midpoint first
        std::vector<int> ks;
        for (int k = 1; k <= grid - 1; ++k) ks.push_back(k);
        std::sort(ks.begin(), ks.end(), [grid](int u, int v) {
            double du = std::abs(u - 0.5 * grid), dv = std::abs(v - 0.5 * grid);
            if (du != dv) return du < dv;
            return u < v;
        });
        for (int k : ks) {
            Box ca, cb;
            EdgeVal cut;
            BoxEdges ea, eb;
            if (split_x) {
                double dx = b.width() / grid;
                double xc = b.x0 + dx * k;
                if (line_min_est({xc, b.y0}, {xc, b.y1}, a) < cut_clearance) continue;
                cut = make_edge({xc, b.y0}, {xc, b.y1}, a, e.l.npanels, e.l.level, *cfg);
                ca = {b.x0, xc, b.y0, b.y1};
                cb = {xc, b.x1, b.y0, b.y1};
                ea = {slice_edge(e.b, 0, k), cut, slice_edge(e.t, 0, k), e.l};
                eb = {slice_edge(e.b, k, grid), e.r, slice_edge(e.t, k, grid), cut};
            } else {
                double dy = b.height() / grid;
                double yc = b.y0 + dy * k;
                if (line_min_est({b.x0, yc}, {b.x1, yc}, a) < cut_clearance) continue;
                cut = make_edge({b.x0, yc}, {b.x1, yc}, a, e.b.npanels, e.b.level, *cfg);
                ca = {b.x0, b.x1, b.y0, yc};
                cb = {b.x0, b.x1, yc, b.y1};
                ea = {e.b, slice_edge(e.r, 0, k), cut, slice_edge(e.l, 0, k)};
                eb = {cut, slice_edge(e.r, k, grid), e.t, slice_edge(e.l, k, grid)};
            }
            auto ra = settle(ca, std::move(ea));
            if (!ra) continue;
            auto rb = settle(cb, std::move(eb));
            if (!rb) continue;
            if (ra->first + rb->first != w) continue; // cut too hot, try another
            run(ca, std::move(ra->second), ra->first, depth + 1);
            run(cb, std::move(rb->second), rb->first, depth + 1);
            return true;
        }
        return false;
    }
};

// damped Newton on zeta(s)-a with an escape window; returns the converged
// point (residual policing is the caller's job)
struct NewtonResult {
    cplx s;
    cplx zp;
    double residual;
    double last_step;
};

NewtonResult newton_iterate(cplx seed, cplx a, const FinderConfig& cfg,
                            const Box& escape) {
    EvalConfig ecfg;
    cplx s = seed;
    ZetaPair p = zeta_pair(s, ecfg);
    double fa = std::abs(p.z - a);
    double last_step = 1e300;
    for (int it = 0; it < 50; ++it) {
        double azp = std::abs(p.zp);
        if (azp < 1e-13)
            throw DerivativeVanished("zeta' ~ 0 during refinement near (" +
                                     std::to_string(s.real()) + ", " + std::to_string(s.imag()) + ")");
        cplx step = (p.z - a) / p.zp;
        cplx snew = s;
        ZetaPair pnew;
        double fnew = fa;
        bool accepted = false;
        for (int h = 0; h < 6 && !accepted; ++h) {
            cplx cand = s - step / (double)(1 << h);
            // escape test first so wild steps never get evaluated
            if (cand.real() < escape.x0 || cand.real() > escape.x1 || cand.imag() < escape.y0 ||
                cand.imag() > escape.y1)
                continue;
            ZetaPair pc = zeta_pair(cand, ecfg);
            double fc = std::abs(pc.z - a);
            if (fc <= fa || std::abs(step) / (double)(1 << h) < cfg.newton_tol || h == 5) {
                snew = cand;
                pnew = pc;
                fnew = fc;
                accepted = true;
            }
        }
        if (!accepted)
            throw NewtonDiverged("iterate escaped the doubled box from seed (" +
                                 std::to_string(seed.real()) + ", " + std::to_string(seed.imag()) + ")");
        last_step = std::abs(snew - s);
        s = snew;
        p = pnew;
        fa = fnew;
        if (last_step < cfg.newton_tol) break;
    }
    return {s, p.zp, fa, last_step};
}

AValueRecord make_record(cplx a, cplx rho, int mult, double residual, double zp_abs) {
    AValueRecord rec;
    rec.a = a;
    rec.beta = rho.real();
    rec.gamma = rho.imag();
    rec.multiplicity = mult;
    rec.residual = residual;
    rec.trivial = rec.beta <= 0.0;
    rec.simple = (mult == 1) && (zp_abs > 1e-10);
    return rec;
}

// refinement of one isolating region coming out of the subdivider
AValueRecord refine_region(const SearchRegion& r, cplx a, const FinderConfig& cfg) {
    int w = r.winding.value_or(1);
    cplx center{0.5 * (r.sigma_min + r.sigma_max), 0.5 * (r.t_min + r.t_max)};
    if (w > 1) {
        // multiplicity cluster: the box has already shrunk to diameter
        // ~ newton_tol*10, the center is the reported root
        EvalConfig ecfg;
        ZetaPair p = zeta_pair(center, ecfg);
        double res = std::abs(p.z - a);
        if (res > 1e-8)
            throw NoConvergence("cluster residual too large at (" + std::to_string(center.real()) +
                                ", " + std::to_string(center.imag()) + ")");
        return make_record(a, center, w, res, std::abs(p.zp));
    }
    double hw = r.sigma_max - r.sigma_min, hh = r.t_max - r.t_min;
    Box region{r.sigma_min, r.sigma_max, r.t_min, r.t_max};
    Box doubled{r.sigma_min - 0.5 * hw, r.sigma_max + 0.5 * hw, r.t_min - 0.5 * hh,
                r.t_max + 0.5 * hh};
    auto inside = [&](cplx s) {
        return s.real() >= region.x0 && s.real() <= region.x1 && s.imag() >= region.y0 &&
               s.imag() <= region.y1;
    };
    // Newton from the region center can walk out of the doubled window
    // (divergence) or, worse, converge to a neighboring root outside the
    // certified region while the region's own root goes unrecorded — that
    // would silently duplicate the neighbor and drop a root. Either way the
    // cure is the same: shrink the certificate around the root it isolates
    // and reseed from the smaller box until the converged point lands inside
    // the certificate.
    Box cur = region;
    double ext = std::max(hw, hh);
    for (int attempt = 0; attempt < 7; ++attempt) {
        cplx seed{0.5 * (cur.x0 + cur.x1), 0.5 * (cur.y0 + cur.y1)};
        bool converged = false;
        NewtonResult nr;
        try {
            nr = newton_iterate(seed, a, cfg, doubled);
            converged = true;
        } catch (const NewtonDiverged&) {
        }
        if (converged && inside(nr.s)) {
            if (nr.residual > 1e-8)
                throw NoConvergence("refined residual " + std::to_string(nr.residual) +
                                    " above 1e-8 near (" + std::to_string(nr.s.real()) + ", " +
                                    std::to_string(nr.s.imag()) + ")");
            return make_record(a, nr.s, 1, nr.residual, std::abs(nr.zp));
        }
        if (cur.diam() < cfg.newton_tol * 10.0) {
            // the certificate already pinpoints the root; report its center
            EvalConfig ecfg;
            ZetaPair p = zeta_pair(seed, ecfg);
            double res = std::abs(p.z - a);
            if (res > 1e-8)
                throw NoConvergence("pinned residual too large at (" + std::to_string(seed.real()) +
                                    ", " + std::to_string(seed.imag()) + ")");
            return make_record(a, seed, 1, res, std::abs(p.zp));
        }
        std::vector<SearchRegion> subs;
        FinderConfig tight = cfg;
        tight.max_subdivision_depth = 12;
        ext *= 0.3;
        Subdivider sub{a, &tight, 0.01, &subs, ext};
        auto settled = sub.settle(cur, fresh_edges(cur, a, 1, tight));
        if (!settled || settled->first != 1)
            throw NoConvergence("winding lost while reseeding inside " + box_str(cur));
        sub.run(cur, std::move(settled->second), 1, 0);
        if (subs.empty())
            throw NoConvergence("reseed subdivision emitted nothing inside " + box_str(cur));
        const SearchRegion& s0 = subs.front();
        cur = Box{s0.sigma_min, s0.sigma_max, s0.t_min, s0.t_max};
    }
    throw NoConvergence("newton kept converging outside the certified region " + box_str(region));
}

} // namespace

int winding_count(const SearchRegion& region, cplx a, const FinderConfig& cfg) {
    check_region(region);
    double clear = resolve_clearance(cfg, std::max(std::abs(region.t_min), std::abs(region.t_max)));
    Box b{region.sigma_min, region.sigma_max, region.t_min, region.t_max};
    for (int lv = 0; lv <= 6; ++lv) {
        BoxEdges e = fresh_edges(b, a, lv, cfg);
        for (const EdgeVal* ev : {&e.b, &e.r, &e.t, &e.l}) {
            double plen = std::abs(ev->q - ev->p) / ev->npanels;
            double thr = std::min(clear, 0.1 * plen);
            if (ev->min_est < thr)
                throw BoundaryTooClose("root estimate " + std::to_string(ev->min_est) +
                                       " within clearance of boundary of " + box_str(b));
        }
        if (auto w = as_winding(box_sum(e))) return *w;
    }
    throw NoConvergence("winding did not settle after 6 density doublings on " + box_str(b));
}

std::vector<SearchRegion> isolate(const SearchRegion& region, cplx a, const FinderConfig& cfg) {
    check_region(region);
    int w = region.winding ? *region.winding : winding_count(region, a, cfg);
    std::vector<SearchRegion> out;
    if (w == 0) return out;
    double clear = resolve_clearance(cfg, std::max(std::abs(region.t_min), std::abs(region.t_max)));
    Box b{region.sigma_min, region.sigma_max, region.t_min, region.t_max};
    BoxEdges e = fresh_edges(b, a, 0, cfg);
    auto w0 = as_winding(box_sum(e));
    if (!w0) {
        Subdivider tmp{a, &cfg, 0.0, &out};
        auto settled = tmp.settle(b, std::move(e));
        if (!settled) throw NoConvergence("winding did not settle on " + box_str(b));
        w0 = settled->first;
        e = std::move(settled->second);
    }
    if (*w0 != w) throw NoConvergence("provided winding disagrees with quadrature on " + box_str(b));
    Subdivider sub{a, &cfg, std::min(0.04, clear), &out};
    sub.run(b, std::move(e), w, 0);
    std::sort(out.begin(), out.end(), [](const SearchRegion& p, const SearchRegion& q) {
        if (p.t_min != q.t_min) return p.t_min < q.t_min;
        return p.sigma_min < q.sigma_min;
    });
    return out;
}

AValueRecord refine(cplx seed, cplx a, const FinderConfig& cfg) {
    Box escape{seed.real() - 1.0, seed.real() + 1.0, seed.imag() - 1.0, seed.imag() + 1.0};
    NewtonResult nr = newton_iterate(seed, a, cfg, escape);
    if (nr.residual > 1e-8)
        throw NewtonDiverged("residual " + std::to_string(nr.residual) + " above 1e-8 from seed (" +
                             std::to_string(seed.real()) + ", " + std::to_string(seed.imag()) + ")");
    return make_record(a, nr.s, 1, nr.residual, std::abs(nr.zp));
}

std::vector<AValueRecord> trivial_avalues(cplx a, int n_max, const FinderConfig& cfg) {
    if (n_max < 1) throw RangeError("n_max must be >= 1");
    std::vector<std::optional<AValueRecord>> found((std::size_t)n_max + 1);
    EvalConfig ecfg;
    for (int n = 1; n <= n_max; ++n) {
        double c = -2.0 * (double)n;
        if (c < -max_real_extent + 1.0) break; // stay inside the kernel window
        Box escape{c - 2.0, c + 2.0, -2.0, 2.0};
        try {
            NewtonResult nr = newton_iterate({c, 0.0}, a, cfg, escape);
            double dist = std::abs(nr.s - cplx(c, 0.0));
            // once |zeta'| is astronomically large the true root is closer
            // to -2n than one ulp; accept on the backward criterion then
            bool backward_ok = nr.residual / std::max(std::abs(nr.zp), 1e-300) <=
                               8.0 * std::numeric_limits<double>::epsilon() * std::abs(c);
            if (dist < 1.0 && (nr.residual <= 1e-8 || backward_ok))
                found[(std::size_t)n] = make_record(a, nr.s, 1, nr.residual, std::abs(nr.zp));
        } catch (const NumericError&) {
            // below the lemma's threshold: recorded as absent, not fatal
        }
    }
    int first = n_max + 1;
    for (int n = n_max; n >= 1; --n) {
        if (found[(std::size_t)n])
            first = n;
        else
            break;
    }
    std::vector<AValueRecord> out;
    for (int n = first; n <= n_max; ++n)
        if (found[(std::size_t)n]) out.push_back(*found[(std::size_t)n]);
    if (out.empty())
        throw NotFound("no trivial a-values found up to n_max = " + std::to_string(n_max));
    return out;
}

SearchBox resolve_search_box(cplx a, double T, const FinderConfig& cfg) {
    if (!(T >= 5.0)) throw RangeError("T must be >= 5");
    double clear = resolve_clearance(cfg, T);
    SearchBox box;
    box.sigma_min = 1.0 / 1024.0;
    box.clearance = clear;
    double width_hi = 12.0;
    for (int round = 0; round < 3; ++round) {
        // bottom edge: scan upward until the whole line clears; the zeta pole
        // at s=1 is invisible to the (s-1)-regularized estimate, so only real
        // roots and low a-values push the floor up
        double start = (a.imag() == 0.0) ? 0.05 : 0.02;
        box.t_floor = -1.0;
        for (int k = 0; k <= 256; ++k) {
            double y = start + (double)k / 64.0;
            if (line_min_est({box.sigma_min, y}, {width_hi, y}, a) >= clear) {
                box.t_floor = y;
                break;
            }
        }
        if (box.t_floor < 0.0)
            throw NoConvergence("no clear bottom edge found above the real axis");
        // top edge: largest clear ordinate in (T-1, T]
        box.t_eff = -1.0;
        for (int k = 0; k <= 63; ++k) {
            double y = T - (double)k / 64.0;
            if (line_min_est({box.sigma_min, y}, {width_hi, y}, a) >= clear) {
                box.t_eff = y;
                break;
            }
        }
        if (box.t_eff < 0.0)
            throw NoConvergence("no clear top edge found in (T-1, T]");
        // right edge: extend until an a-value-free strip certifies emptiness
        box.sigma_max = 6.0;
        for (;;) {
            SearchRegion strip{box.sigma_max, box.sigma_max + 2.0, box.t_floor, box.t_eff, {}, false};
            FinderConfig scfg = cfg;
            scfg.edge_clearance = clear;
            if (winding_count(strip, a, scfg) == 0) break;
            box.sigma_max += 2.0;
            if (box.sigma_max > 40.0)
                throw NoConvergence("right search edge ran past sigma = 40");
        }
        if (box.sigma_max + 2.0 <= width_hi) break;
        width_hi = box.sigma_max + 4.0;
    }
    return box;
}

std::vector<AValueRecord> find_nontrivial(cplx a, double T, const FinderConfig& cfg) {
    SearchBox sb = resolve_search_box(a, T, cfg);
    double x0 = sb.sigma_min, x1 = sb.sigma_max;
    double cut_clear = std::min(0.04, sb.clearance);

    // strip decomposition at clear ordinates roughly one mean root gap apart
    std::vector<double> cuts;
    cuts.push_back(sb.t_floor);
    double h_nom = std::clamp(TWO_PI / std::log(T / TWO_PI + 2.72), 0.5, 2.0);
    double y = sb.t_floor;
    while (y + 1.6 * h_nom < sb.t_eff) {
        double target = y + h_nom;
        double picked = -1.0;
        while (picked < 0.0 && target < sb.t_eff - 0.3) {
            for (int d = 0; d < 33; ++d) {
                double yc = target + ((d % 2 == 0) ? (double)(d / 2) : -(double)(d / 2 + 1)) / 64.0;
                if (yc < y + 0.3 || yc > sb.t_eff - 0.3) continue;
                if (line_min_est({x0, yc}, {x1, yc}, a) >= cut_clear) {
                    picked = yc;
                    break;
                }
            }
            if (picked < 0.0) target += 0.5 * h_nom;
        }
        if (picked < 0.0) break;
        cuts.push_back(picked);
        y = picked;
    }
    cuts.push_back(sb.t_eff);

    // shared horizontal edges, one per cut ordinate
    int ph = panels_for(x1 - x0, cfg.quadrature_nodes_per_unit, 0);
    std::vector<EdgeVal> horiz(cuts.size());
    parallel_for(cuts.size(), [&](std::size_t i) {
        horiz[i] = make_edge({x0, cuts[i]}, {x1, cuts[i]}, a, ph, 0, cfg);
    });

    std::size_t nstrips = cuts.size() - 1;
    std::vector<std::vector<AValueRecord>> per_strip(nstrips);
    std::vector<std::vector<SearchRegion>> flagged(nstrips);
    parallel_for(nstrips, [&](std::size_t i) {
        Box b{x0, x1, cuts[i], cuts[i + 1]};
        int pv = panels_for(b.height(), cfg.quadrature_nodes_per_unit, 0);
        BoxEdges e;
        e.b = horiz[i];
        e.t = horiz[i + 1];
        e.l = make_edge({b.x0, b.y0}, {b.x0, b.y1}, a, pv, 0, cfg);
        e.r = make_edge({b.x1, b.y0}, {b.x1, b.y1}, a, pv, 0, cfg);
        auto w = as_winding(box_sum(e));
        if (!w) {
            bool settled = false;
            for (int lv = 1; lv <= 6 && !settled; ++lv) {
                e = fresh_edges(b, a, lv, cfg);
                if (auto w2 = as_winding(box_sum(e))) {
                    w = w2;
                    settled = true;
                }
            }
            if (!settled)
                throw NoConvergence("strip winding did not settle on " + box_str(b));
        }
        if (*w == 0) return;
        std::vector<SearchRegion> regions;
        Subdivider sub{a, &cfg, cut_clear, &regions};
        sub.run(b, std::move(e), *w, 0);
        for (const auto& r : regions) {
            if (r.depth_flagged) {
                flagged[i].push_back(r);
                continue;
            }
            per_strip[i].push_back(refine_region(r, a, cfg));
        }
    });
    for (const auto& f : flagged)
        if (!f.empty()) {
            const SearchRegion& r = f.front();
            throw DepthExceeded("subdivision depth limit inside [" + std::to_string(r.sigma_min) +
                                "," + std::to_string(r.sigma_max) + "]x[" + std::to_string(r.t_min) +
                                "," + std::to_string(r.t_max) + "]");
        }

    std::vector<AValueRecord> out;
    for (auto& v : per_strip)
        for (auto& rec : v) out.push_back(rec);
    std::sort(out.begin(), out.end(), [](const AValueRecord& p, const AValueRecord& q) {
        if (p.gamma != q.gamma) return p.gamma < q.gamma;
        return p.beta < q.beta;
    });
    // two records closer than the refinement scale are one root recorded
    // twice: genuinely close roots are clustered by the subdivider long
    // before this separation, so this can only be a certification failure
    double dup_tol = std::max(1e-9, 16.0 * cfg.newton_tol);
    for (std::size_t i = 1; i < out.size(); ++i) {
        double db = out[i].beta - out[i - 1].beta;
        double dg = out[i].gamma - out[i - 1].gamma;
        if (std::hypot(db, dg) < dup_tol)
            throw NoConvergence("duplicate records for one root near (" +
                                std::to_string(out[i].beta) + ", " +
                                std::to_string(out[i].gamma) + ")");
    }
    return out;
}

} // namespace avlab
