// avalue-lab: command line front end. Subcommands expose the kernel, the
// root finder, the moment and counting comparisons, the contour oracles and
// the density probes as CSV (default) or JSON tables with an embedded run
// manifest. Exit codes: 0 success, 2 usage error, 3 numeric failure.

#include <CLI11.hpp>

#include <avlab/asymptotics.hpp>
#include <avlab/density.hpp>
#include <avlab/errors.hpp>
#include <avlab/finder.hpp>
#include <avlab/parallel.hpp>
#include <avlab/report.hpp>
#include <avlab/version.hpp>
#include <avlab/zeta.hpp>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using avlab::cplx;
using avlab::ColumnSpec;
using avlab::Table;

ColumnSpec rc(std::string name) { return ColumnSpec{std::move(name), false}; }
ColumnSpec cc(std::string name) { return ColumnSpec{std::move(name), true}; }

// locale-independent "RE" or "RE,IM"
std::optional<cplx> parse_complex(const std::string& text) {
    double re = 0.0, im = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    auto r1 = std::from_chars(b, e, re);
    if (r1.ec != std::errc{}) return std::nullopt;
    if (r1.ptr == e) return cplx(re, 0.0);
    if (*r1.ptr != ',') return std::nullopt;
    auto r2 = std::from_chars(r1.ptr + 1, e, im);
    if (r2.ec != std::errc{} || r2.ptr != e) return std::nullopt;
    return cplx(re, im);
}

std::string complex_param(cplx z) {
    return avlab::format_sig(std::real(z)) + "," + avlab::format_sig(std::imag(z));
}

struct common_opts {
    std::string format = "csv";
    std::string out;
    unsigned threads = 0; // 0 = machine parallelism; env var overrides
};

struct config_opts {
    avlab::EvalConfig eval{};
    avlab::FinderConfig finder{};
};

void add_common(CLI::App* cmd, common_opts& c, config_opts& k) {
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out, "write to FILE instead of stdout");
    cmd->add_option("--threads", c.threads,
                    "worker cap, 0 = all cores (AVALUE_LAB_THREADS overrides)");
    cmd->add_option("--em-factor", k.eval.em_cutoff_factor,
                    "Dirichlet truncation factor (>= 1)");
    cmd->add_option("--bernoulli-terms", k.eval.bernoulli_terms,
                    "Euler-Maclaurin correction pairs");
    cmd->add_option("--newton-tol", k.finder.newton_tol, "root polish tolerance");
    cmd->add_option("--edge-clearance", k.finder.edge_clearance,
                    "boundary clearance, <= 0 means 1/log T");
}

void emit(const avlab::RunManifest& m, const Table& t, const common_opts& c) {
    std::string payload =
        c.format == "json" ? avlab::to_json(m, t) : avlab::to_csv(m, t);
    if (c.out.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + c.out);
        f.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    }
}

std::string describe(const avlab::RunManifest& m) {
    std::string s = "subcommand=" + m.subcommand;
    for (const auto& [k, v] : m.parameters) s += " " + k + "=" + v;
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"a-value laboratory: locate roots of zeta(s) = a and compare "
                 "their statistics with the predicted asymptotics"};
    app.set_version_flag("--version", avlab::version_string);
    app.require_subcommand(1);

    common_opts c;
    config_opts k;

    std::string a_text = "0";
    double T = 100.0;
    double alpha_single = 0.0;
    std::vector<double> alphas;
    std::string s_text = "0.5,14";
    double sigma = 0.5;
    double t_point = 100.0;
    double t_min_curve = 0.0, t_min_grid = 2.0, t_max = 50.0;
    double step_curve = 0.05, step_grid = 1.0;
    double margin_a = 0.0;
    double radius = 0.25;
    std::string weight_name = "one";

    auto* c_eval = app.add_subcommand("eval", "evaluate zeta and zeta' at one point");
    c_eval->add_option("--s", s_text, "point as RE[,IM]")->required();
    add_common(c_eval, c, k);

    auto* c_find = app.add_subcommand("find", "list roots of zeta(s) = a up to height T");
    c_find->add_option("--a", a_text, "target value as RE[,IM]")->required();
    c_find->add_option("--T", T, "height bound")->required();
    add_common(c_find, c, k);

    auto* c_count = app.add_subcommand("count", "root count next to its main term");
    c_count->add_option("--a", a_text, "target value as RE[,IM]")->required();
    c_count->add_option("--T", T, "height bound")->required();
    add_common(c_count, c, k);

    auto* c_m1 = app.add_subcommand("moment1", "sum of zeta'(rho) next to theory and oracle");
    c_m1->add_option("--a", a_text, "target value as RE[,IM]")->required();
    c_m1->add_option("--T", T, "height bound")->required();
    add_common(c_m1, c, k);

    auto* c_m2 = app.add_subcommand("moment2", "shifted sums zeta(rho + i delta) - a");
    c_m2->add_option("--a", a_text, "target value as RE[,IM]")->required();
    c_m2->add_option("--T", T, "height bound")->required();
    c_m2->add_option("--alpha", alphas, "shift parameters (up to 4)")
        ->required()
        ->delimiter(',');
    add_common(c_m2, c, k);

    auto* c_cluster = app.add_subcommand("cluster", "fraction of roots near the critical line");
    c_cluster->add_option("--a", a_text, "target value as RE[,IM]")->required();
    c_cluster->add_option("--T", T, "height bound")->required();
    add_common(c_cluster, c, k);

    auto* c_ident = app.add_subcommand("identity", "critical line identity residual at t");
    c_ident->add_option("--t", t_point, "ordinate, t >= 2")->required();
    add_common(c_ident, c, k);

    auto* c_lower = app.add_subcommand(
        "lowerbound", "left half-plane lower bound, or --margin for the large-|a| scan");
    c_lower->add_option("--sigma", sigma, "abscissa, sigma <= 0");
    c_lower->add_option("--margin", margin_a, "scan min max(|zeta-a|,|zeta'-a|), |a| >= 10");
    c_lower->add_option("--tmin", t_min_grid, "grid start (default 2)");
    c_lower->add_option("--tmax", t_max, "grid end")->required();
    c_lower->add_option("--step", step_grid, "grid step (default 1)");
    add_common(c_lower, c, k);

    auto* c_curve = app.add_subcommand("curve", "sample t -> zeta(sigma + it) for plotting");
    c_curve->add_option("--sigma", sigma, "abscissa")->required();
    c_curve->add_option("--tmin", t_min_curve, "start ordinate (default 0)");
    c_curve->add_option("--tmax", t_max, "end ordinate")->required();
    c_curve->add_option("--step", step_curve, "sample spacing")->required();
    add_common(c_curve, c, k);

    auto* c_stj = app.add_subcommand("stieltjes", "Euler and first Stieltjes constants");
    c_stj->add_option("--radius", radius, "Cauchy circle radius (default 0.25)");
    add_common(c_stj, c, k);

    auto* c_oracle = app.add_subcommand(
        "oracle-check", "boundary contour integral for a weight: one | zp | shifted");
    c_oracle->add_option("--a", a_text, "target value as RE[,IM]")->required();
    c_oracle->add_option("--T", T, "height bound")->required();
    c_oracle->add_option("--weight", weight_name, "integrand weight")
        ->check(CLI::IsMember({"one", "zp", "shifted"}));
    c_oracle->add_option("--alpha", alpha_single, "shift parameter for weight=shifted");
    add_common(c_oracle, c, k);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e); // prints the diagnostic
        std::cerr << app.help();
        return 2;
    }

    avlab::set_thread_cap(c.threads);

    auto fmt = avlab::format_sig;
    avlab::RunManifest manifest; // filled per subcommand before any heavy work

    try {
        cplx a(0.0, 0.0);
        if (c_find->parsed() || c_count->parsed() || c_m1->parsed() || c_m2->parsed() ||
            c_cluster->parsed() || c_oracle->parsed()) {
            auto pa = parse_complex(a_text);
            if (!pa) {
                std::cerr << "avalue-lab: --a expects RE or RE,IM, got '" << a_text
                          << "'\n"
                          << app.help();
                return 2;
            }
            a = *pa;
        }

        Table t;

        if (c_eval->parsed()) {
            auto ps = parse_complex(s_text);
            if (!ps) {
                std::cerr << "avalue-lab: --s expects RE or RE,IM, got '" << s_text
                          << "'\n"
                          << app.help();
                return 2;
            }
            manifest = avlab::make_manifest("eval", {{"s", complex_param(*ps)}},
                                            k.eval, k.finder);
            auto zp = avlab::zeta_pair(*ps, k.eval);
            t.columns = {cc("s"), cc("z"), cc("zp")};
            t.rows = {{std::real(*ps), std::imag(*ps), std::real(zp.z), std::imag(zp.z),
                       std::real(zp.zp), std::imag(zp.zp)}};
        } else if (c_find->parsed()) {
            manifest = avlab::make_manifest(
                "find", {{"a", complex_param(a)}, {"T", fmt(T)}}, k.eval, k.finder);
            auto recs = avlab::find_nontrivial(a, T, k.finder);
            t.columns = {cc("rho"), rc("multiplicity"), rc("residual")};
            for (const auto& r : recs)
                t.rows.push_back({r.beta, r.gamma, double(r.multiplicity), r.residual});
        } else if (c_count->parsed()) {
            manifest = avlab::make_manifest(
                "count", {{"a", complex_param(a)}, {"T", fmt(T)}}, k.eval, k.finder);
            auto cc_ = avlab::count_avalues(a, T, k.finder);
            t.columns = {rc("T"), rc("empirical"), rc("main_term"), rc("deviation"),
                         rc("c_a")};
            t.rows = {{cc_.T, double(cc_.empirical), cc_.main_term, cc_.deviation,
                       cc_.c_a}};
        } else if (c_m1->parsed()) {
            manifest = avlab::make_manifest(
                "moment1", {{"a", complex_param(a)}, {"T", fmt(T)}}, k.eval, k.finder);
            auto m = avlab::sum_zeta_prime(a, T, k.finder);
            const double PI = 3.14159265358979323846;
            double W = T / (2.0 * PI), L = std::log(W);
            cplx leading = (cplx(0.5, 0.0) - a) * W * L * L;
            t.columns = {rc("T"), cc("empirical"), cc("theory_leading"), cc("theory"),
                         cc("oracle"), rc("oracle_budget")};
            t.rows = {{m.T, std::real(m.empirical_sum), std::imag(m.empirical_sum),
                       std::real(leading), std::imag(leading), std::real(m.theory_main),
                       std::imag(m.theory_main), std::real(m.oracle), std::imag(m.oracle),
                       m.oracle_budget}};
        } else if (c_m2->parsed()) {
            std::string alpha_param;
            for (std::size_t i = 0; i < alphas.size(); ++i)
                alpha_param += (i ? "," : "") + fmt(alphas[i]);
            manifest = avlab::make_manifest(
                "moment2",
                {{"a", complex_param(a)}, {"T", fmt(T)}, {"alpha", alpha_param}},
                k.eval, k.finder);
            auto recs = avlab::find_nontrivial(a, T, k.finder);
            auto set = avlab::compute_moments(a, T, alphas, recs, k.finder);
            t.columns = {rc("alpha"), rc("delta"), rc("delta_flagged"), cc("empirical"),
                         cc("theory"), cc("oracle"), rc("oracle_budget")};
            for (const auto& m : set.shifted)
                t.rows.push_back({m.alpha.value(), m.delta.value(),
                                  m.delta_flagged ? 1.0 : 0.0,
                                  std::real(m.empirical_sum), std::imag(m.empirical_sum),
                                  std::real(m.theory_main), std::imag(m.theory_main),
                                  std::real(m.oracle), std::imag(m.oracle),
                                  m.oracle_budget});
        } else if (c_cluster->parsed()) {
            manifest = avlab::make_manifest(
                "cluster", {{"a", complex_param(a)}, {"T", fmt(T)}}, k.eval, k.finder);
            auto rep = avlab::levinson_fraction(a, T, k.finder);
            t.columns = {rc("T"), rc("window"), rc("inside_fraction")};
            t.rows = {{rep.T, rep.window, rep.inside_fraction}};
        } else if (c_ident->parsed()) {
            manifest =
                avlab::make_manifest("identity", {{"t", fmt(t_point)}}, k.eval, k.finder);
            auto r = avlab::critical_line_identity(t_point, k.eval);
            t.columns = {rc("t"), rc("residual")};
            t.rows = {{r.t, r.residual}};
        } else if (c_lower->parsed()) {
            if (c_lower->count("--margin") > 0) {
                manifest = avlab::make_manifest("lowerbound",
                                                {{"margin", fmt(margin_a)},
                                                 {"tmax", fmt(t_max)},
                                                 {"step", fmt(step_grid)}},
                                                k.eval, k.finder);
                double m = avlab::nondensity_margin(margin_a, t_max, step_grid, k.eval);
                t.columns = {rc("a"), rc("margin"), rc("t_max"), rc("step")};
                t.rows = {{margin_a, m, t_max, step_grid}};
            } else {
                if (c_lower->count("--sigma") == 0) {
                    std::cerr << "avalue-lab: lowerbound needs --sigma or --margin\n"
                              << app.help();
                    return 2;
                }
                manifest = avlab::make_manifest("lowerbound",
                                                {{"sigma", fmt(sigma)},
                                                 {"tmin", fmt(t_min_grid)},
                                                 {"tmax", fmt(t_max)},
                                                 {"step", fmt(step_grid)}},
                                                k.eval, k.finder);
                std::vector<double> grid;
                for (double x = t_min_grid; x <= t_max + 1e-12; x += step_grid)
                    grid.push_back(x);
                double cbound = avlab::left_lower_bound(sigma, grid, k.eval);
                t.columns = {rc("sigma"), rc("c"), rc("t_min"), rc("t_max"), rc("step"),
                             rc("n_points")};
                t.rows = {{sigma, cbound, t_min_grid, t_max, step_grid,
                           double(grid.size())}};
            }
        } else if (c_curve->parsed()) {
            manifest = avlab::make_manifest("curve",
                                            {{"sigma", fmt(sigma)},
                                             {"tmin", fmt(t_min_curve)},
                                             {"tmax", fmt(t_max)},
                                             {"step", fmt(step_curve)}},
                                            k.eval, k.finder);
            auto samples =
                avlab::sample_curve(sigma, t_min_curve, t_max, step_curve, k.eval);
            t.columns = {rc("t"), cc("z"), cc("zp")};
            for (const auto& s : samples)
                t.rows.push_back({s.t, std::real(s.z), std::imag(s.z), std::real(s.zp),
                                  std::imag(s.zp)});
        } else if (c_stj->parsed()) {
            manifest = avlab::make_manifest("stieltjes", {{"radius", fmt(radius)}},
                                            k.eval, k.finder);
            auto st = avlab::stieltjes_constants(radius);
            t.columns = {rc("radius"), rc("c0"), rc("c1")};
            t.rows = {{radius, st.c0, st.c1}};
        } else if (c_oracle->parsed()) {
            manifest = avlab::make_manifest("oracle-check",
                                            {{"a", complex_param(a)},
                                             {"T", fmt(T)},
                                             {"weight", weight_name},
                                             {"alpha", fmt(alpha_single)}},
                                            k.eval, k.finder);
            avlab::ContourWeight w = avlab::ContourWeight::one;
            if (weight_name == "zp") w = avlab::ContourWeight::zeta_prime;
            if (weight_name == "shifted") w = avlab::ContourWeight::shifted;
            auto v = avlab::contour_oracle(a, T, w, alpha_single, k.finder);
            t.columns = {rc("T"), cc("value"), rc("budget")};
            t.rows = {{T, std::real(v.value), std::imag(v.value), v.budget}};
        }

        emit(manifest, t, c);
        return 0;
    } catch (const avlab::NumericError& e) {
        // what() already starts with the error name
        std::cerr << "avalue-lab: " << e.what() << " (" << describe(manifest) << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "avalue-lab: error: " << e.what() << " (" << describe(manifest)
                  << ")\n";
        return 3;
    }
}
