#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncsphere/errors.hpp"
#include "ncsphere/flow.hpp"
#include "ncsphere/geometry.hpp"
#include "ncsphere/modes.hpp"
#include "ncsphere/modes_oracle.hpp"
#include "ncsphere/modeset_io.hpp"
#include "ncsphere/parallel.hpp"
#include "ncsphere/starprod.hpp"

namespace ncsphere::cli {

namespace {

using json = nlohmann::json;
using std::numbers::pi;

struct RunConfig {
    std::string command;
    std::optional<double> alpha, h;
    double a0 = 0.05, b0 = 1.0, c0 = 0.1, d0 = 0.2;
    std::vector<int> p{1};
    int grid = 200;
    std::optional<double> tol;
    std::string out_path;
    std::string format = "csv";
    int seed_count = 8;
    std::string modeset_path;
    double t_end = 5.0, dt = 1e-3;
    int stride = 20;
    std::optional<int> N;

    // alpha, with alpha = tanh h when --h was given; default 0.2
    double alpha_value() const
    {
        if (h) return std::tanh(*h);
        return alpha ? *alpha : 0.2;
    }
    Deformation deformation() const
    {
        if (h) return Deformation::real(*h);
        return Deformation::from_alpha(alpha_value());
    }
};

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v); // no "-0"
    return buf;
}

std::string short_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

// '#'-prefixed configuration lines shared by every CSV output
std::string config_header(const RunConfig& c)
{
    std::ostringstream s;
    s << "# command = " << c.command << "\n";
    s << "# alpha = " << num(c.alpha_value()) << "\n";
    if (c.h) s << "# h = " << num(*c.h) << "\n";
    if (c.command == "flow") {
        s << "# a0 = " << num(c.a0) << "\n# b0 = " << num(c.b0) << "\n";
        s << "# seed_count = " << c.seed_count << "\n# t_end = " << num(c.t_end) << "\n# dt = " << num(c.dt)
          << "\n# stride = " << c.stride << "\n";
    }
    if (c.command == "curvature" || c.command == "modes") s << "# grid = " << c.grid << "\n";
    if (c.command == "modes") {
        s << "# modeset = " << c.modeset_path << "\n# p =";
        for (int p : c.p) s << " " << p;
        s << "\n";
    }
    return s.str();
}

json config_json(const RunConfig& c)
{
    json j{{"command", c.command}, {"alpha", c.alpha_value()}, {"grid", c.grid}};
    if (c.h) j["h"] = *c.h;
    if (c.command == "modes") {
        j["modeset"] = c.modeset_path;
        j["p"] = c.p;
    }
    return j;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out)
{
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write '" + c.out_path + "'");
    f << text;
}

// ---------------------------------------------------------------- verify

struct Check {
    std::string name;
    double violation;
    double threshold;
};

// Deterministic N = 3 trigonometric mode set used by the verification suite.
ModeSet demo_modeset()
{
    ModeSet ms = ModeSet::zeros(3);
    auto tp = [](double c0, double c1r, double c1i, double c2r) {
        TrigPoly p = TrigPoly::constant(c0) + TrigPoly::monomial(1, 0, cplx(c1r, c1i)) +
                     TrigPoly::monomial(-1, 0, cplx(c1r, -c1i)) + TrigPoly::monomial(2, 0, c2r) +
                     TrigPoly::monomial(-2, 0, c2r);
        return AnalyticFn1D::from_trig(p);
    };
    ms.v0 = {tp(0.3, 0.2, -0.1, 0.05), tp(-0.2, 0.1, 0.15, -0.04)};
    for (int n = 0; n < 3; ++n) {
        const double s = 1.0 / (n + 1);
        ms.vc[0][n] = tp(0.1 * s, 0.2 * s, 0.05, -0.1 * s);
        ms.vc[1][n] = tp(-0.15 * s, 0.1, -0.2 * s, 0.05 * s);
        ms.vs[0][n] = tp(0.05, -0.1 * s, 0.1 * s, 0.02);
        ms.vs[1][n] = tp(0.2 * s, 0.05 * s, 0.1, -0.03 * s);
    }
    return ms;
}

std::vector<double> midpoint_grid(int n)
{
    std::vector<double> xs(n);
    for (int k = 0; k < n; ++k) xs[k] = pi * (k + 0.5) / n;
    return xs;
}

bool near_singular(double x, double alpha)
{
    for (double s : singularity_locus(alpha))
        if (std::abs(x - s) < 1e-6) return true;
    return false;
}

std::vector<Check> run_checks(const RunConfig& c)
{
    const Deformation d = c.deformation();
    const double alpha = c.alpha_value();
    std::vector<Check> checks;

    std::vector<std::pair<double, double>> samples;
    for (int k = 0; k < 12; ++k) samples.emplace_back(0.3 + 0.5 * k, 1.7 - 0.4 * k);
    for (const auto& ic : verify_identities(d, samples).checks) checks.push_back({"starprod: " + ic.name, ic.violation, 1e-12});

    const Embedding e = build_embedding(d);
    const auto E = tangent_basis(e);
    double emb = 0.0;
    const TrigPoly ll = dot(e.lambda, e.lambda, d) - TrigPoly::constant(1.0);
    const TrigPoly l1 = dot(e.lambda, E[0], d);
    const TrigPoly l2 = dot(e.lambda, E[1], d) + alpha * TrigPoly::sin_x(2);
    for (const auto& [x, y] : samples)
        emb = std::max({emb, std::abs(ll.eval(x, y)), std::abs(l1.eval(x, y)), std::abs(l2.eval(x, y))});
    checks.push_back({"geometry: embedding identities", emb, 1e-13});

    double metric = 0.0, gamma = 0.0, ricci = 0.0, commutative = 0.0;
    for (double x : midpoint_grid(50)) {
        if (near_singular(x, alpha)) continue;
        metric = std::max(metric, (metric_from_basis(e, x, 0.7) - metric_closed(x, alpha)).cwiseAbs().maxCoeff());
        gamma = std::max(gamma, gamma_consistency(x, alpha).max());
        const Curvature a = riemann_ricci(x, alpha), b = ricci_closed(x, alpha);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) ricci = std::max(ricci, std::abs(a.ricci(i, j) - b.ricci(i, j)));
        ricci = std::max(ricci, std::abs(a.scalar_R - b.scalar_R));
        commutative = std::max(commutative, std::abs(b.scalar_R - 2.0));
    }
    checks.push_back({"geometry: metric from basis vs closed form", metric, 1e-12});
    checks.push_back({"geometry: connection consistency", gamma, 1e-12});
    checks.push_back({"geometry: Ricci assembly vs closed form", ricci, 1e-10});
    if (alpha == 0.0) checks.push_back({"geometry: commutative limit R = 2", commutative, 1e-12});

    const YSymField z = zero_order_solution(c.a0, c.b0);
    const auto [lo, hi] = validity_domain(c.a0, c.b0);
    double zr = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double x = lo + (hi - lo) * k / 101.0;
        const auto r = zero_order_residual(z, x);
        zr = std::max({zr, std::abs(r.first), std::abs(r.second)});
    }
    checks.push_back({"flow: zero-order residual", zr, 1e-12});

    const Deviation dv = first_order_deviation(c.a0, c.b0, c.c0, c.d0);
    double dr = 0.0;
    for (int k = 1; k <= 50; ++k) {
        const double x = lo + (hi - lo) * k / 51.0;
        if (dv.near_branch_point(x)) continue;
        const auto r = deviation_system_residual(dv, x);
        dr = std::max({dr, std::abs(r.first), std::abs(r.second)});
    }
    checks.push_back({"flow: deviation closed forms vs linear system", dr, 1e-8});

    const ModeSet ms = demo_modeset();
    const std::vector<double> xs{0.5, 0.9, 1.7, 2.5};
    std::vector<double> per(xs.size() * 4, 0.0);
    parallel_for(per.size(), [&](std::size_t i) {
        const double x = xs[i / 4];
        const int p = int(i % 4) + 1;
        const auto r = p_mode_residuals(ms, d, x, p);
        const auto o = p_mode_oracle(ms, d, x, p);
        double m = 0.0;
        for (int k = 0; k < 6; ++k) m = std::max(m, std::abs(r[k] - o[k]));
        per[i] = m;
    });
    double mo = 0.0;
    for (double v : per) mo = std::max(mo, v);
    checks.push_back({"modes: p-mode residuals vs quadrature", mo, 1e-8});

    if (c.tol)
        for (auto& ch : checks) ch.threshold = *c.tol;
    return checks;
}

int cmd_verify(const RunConfig& c, std::ostream& out)
{
    const auto checks = run_checks(c);
    bool ok = true;
    std::ostringstream s;
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& ch : checks) {
            const bool pass = ch.violation <= ch.threshold;
            ok = ok && pass;
            rows.push_back({{"check", ch.name}, {"violation", ch.violation}, {"threshold", ch.threshold}, {"pass", pass}});
        }
        s << json{{"config", config_json(c)}, {"checks", rows}, {"pass", ok}}.dump(2) << "\n";
    } else {
        s << config_header(c);
        for (const auto& ch : checks) {
            const bool pass = ch.violation <= ch.threshold;
            ok = ok && pass;
            s << (pass ? "PASS " : "FAIL ") << ch.name << ": violation " << short_num(ch.violation) << " threshold "
              << short_num(ch.threshold) << "\n";
        }
        s << (ok ? "all checks passed\n" : "some checks failed\n");
    }
    emit(c, s.str(), out);
    return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- curvature

int cmd_curvature(const RunConfig& c, std::ostream& out)
{
    if (c.grid < 2) throw InvalidArgument("curvature: --grid >= 2 required");
    const double alpha = c.alpha_value();
    if (!(std::abs(alpha) <= 1.0)) throw InvalidArgument("curvature: |alpha| <= 1 required");
    const auto sing = singularity_locus(alpha);
    const SignScan scan = curvature_sign_scan(alpha, c.grid);

    std::vector<std::optional<Curvature>> rows(c.grid);
    parallel_for(rows.size(), [&](std::size_t k) {
        const double x = pi * double(k) / c.grid;
        if (near_singular(x, alpha)) return;
        try {
            rows[k] = ricci_closed(x, alpha);
        } catch (const SingularityError&) {
        }
    });

    const json side{{"alpha", alpha}, {"singularities", sing}, {"sign_changes", scan.sign_changes}};
    std::ostringstream s;
    if (c.format == "json") {
        json r = json::array();
        for (int k = 0; k < c.grid; ++k)
            if (rows[k]) {
                const auto& v = *rows[k];
                r.push_back({pi * k / c.grid, v.ricci(0, 0), v.ricci(0, 1), v.ricci(1, 0), v.ricci(1, 1), v.scalar_R});
            }
        s << json{{"config", config_json(c)}, {"columns", {"x", "R11", "R12", "R21", "R22", "R"}}, {"rows", r},
                  {"singularities", sing}}
                 .dump(2)
          << "\n";
    } else {
        s << config_header(c);
        s << "# singularities =";
        for (double x : sing) s << " " << num(x);
        s << "\nx,R11,R12,R21,R22,R\n";
        for (int k = 0; k < c.grid; ++k)
            if (rows[k]) {
                const auto& v = *rows[k];
                s << num(pi * k / c.grid) << "," << num(v.ricci(0, 0)) << "," << num(v.ricci(0, 1)) << ","
                  << num(v.ricci(1, 0)) << "," << num(v.ricci(1, 1)) << "," << num(v.scalar_R) << "\n";
            }
    }
    emit(c, s.str(), out);
    if (!c.out_path.empty()) {
        std::filesystem::path sp(c.out_path);
        sp.replace_extension(".singularities.json");
        std::ofstream f(sp, std::ios::binary);
        if (!f) throw InvalidArgument("cannot write '" + sp.string() + "'");
        f << side.dump(2) << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- flow

int cmd_flow(const RunConfig& c, std::ostream& out)
{
    if (c.seed_count < 1) throw InvalidArgument("flow: --seed-count >= 1 required");
    if (c.stride < 1) throw InvalidArgument("flow: --stride >= 1 required");
    const auto [lo, hi] = validity_domain(c.a0, c.b0);
    const YSymField f = zero_order_solution(c.a0, c.b0);

    std::vector<Polyline> lines(c.seed_count);
    parallel_for(lines.size(), [&](std::size_t k) {
        const double y = 2.0 * pi * double(k) / c.seed_count;
        lines[k] = trace_flow(f, {lo + 0.01, y}, c.t_end, c.dt);
    });

    std::ostringstream s;
    s << config_header(c);
    s << "# x_min = " << num(lo) << "\n# x_max = " << num(hi) << "\n";
    s << "kind,trace,t,x,y,X,Y,Z,planarity\n";
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const double plan = great_circle_deviation(lines[k]);
        const auto& smp = lines[k].samples;
        for (std::size_t i = 0; i < smp.size(); ++i) {
            if (i % c.stride != 0 && i + 1 != smp.size()) continue;
            const auto& q = smp[i];
            s << "trace," << k << "," << num(q.t) << "," << num(q.x) << "," << num(q.y) << "," << num(q.X) << ","
              << num(q.Y) << "," << num(q.Z) << "," << num(plan) << "\n";
        }
    }
    // forbidden-zone boundary circles x = x_min and x = x_max
    const int ring = 64;
    for (int b = 0; b < 2; ++b) {
        const double x = b == 0 ? lo : hi;
        for (int j = 0; j < ring; ++j) {
            const double y = 2.0 * pi * j / ring;
            s << "boundary," << b << ",0," << num(x) << "," << num(y) << "," << num(std::sin(x) * std::cos(y)) << ","
              << num(std::sin(x) * std::sin(y)) << "," << num(std::cos(x)) << ",0\n";
        }
    }
    emit(c, s.str(), out);
    return kOk;
}

// ---------------------------------------------------------------- modes

int cmd_modes(const RunConfig& c, std::ostream& out)
{
    if (c.modeset_path.empty()) throw InvalidArgument("modes: --modeset FILE is required");
    if (c.grid < 1) throw InvalidArgument("modes: --grid >= 1 required");
    for (int p : c.p)
        if (p < 1) throw InvalidArgument("modes: every --p must be >= 1");
    ModeSet ms = load_modeset(c.modeset_path);
    if (c.N) {
        if (*c.N < 0) throw InvalidArgument("modes: --modes >= 0 required");
        if (*c.N >= ms.N) {
            ms = ms.padded(*c.N);
        } else {
            ms.N = *c.N;
            for (int mu = 0; mu < 2; ++mu) {
                ms.vc[mu].resize(*c.N);
                ms.vs[mu].resize(*c.N);
            }
        }
    }
    const Deformation d = c.deformation();
    const double tol = c.tol.value_or(1e-10);
    const auto xs = midpoint_grid(c.grid);

    struct Row {
        int p;
        double x;
        std::array<cplx, 6> r;
        std::pair<cplx, cplx> con;
        std::optional<std::pair<cplx, cplx>> ysym;
    };
    std::vector<Row> rows(c.p.size() * xs.size());
    parallel_for(rows.size(), [&](std::size_t i) {
        Row& row = rows[i];
        row.p = c.p[i / xs.size()];
        row.x = xs[i % xs.size()];
        row.r = p_mode_residuals(ms, d, row.x, row.p);
        row.con = mode_constraints(ms, d, row.x, row.p);
        if (ms.N == 0) row.ysym = sysfirst_residual(YSymField{ms.v0[0], ms.v0[1], std::nullopt}, row.x, d);
    });

    std::ostringstream s;
    if (c.format == "json") {
        json jr = json::array();
        for (const auto& row : rows) {
            json res = json::array(), mag = json::array();
            for (const auto& v : row.r) {
                res.push_back(cplx_json(v));
                mag.push_back(std::abs(v));
            }
            const bool viol = std::abs(row.con.first) > tol || std::abs(row.con.second) > tol;
            json o{{"p", row.p},
                   {"x", row.x},
                   {"residuals", res},
                   {"magnitudes", mag},
                   {"constraints", {{"c1", cplx_json(row.con.first)}, {"c2", cplx_json(row.con.second)}, {"violated", viol}}}};
            if (row.ysym) o["ysym"] = json::array({cplx_json(row.ysym->first), cplx_json(row.ysym->second)});
            jr.push_back(o);
        }
        json cfg = config_json(c);
        cfg["N"] = ms.N;
        cfg["constraint_tol"] = tol;
        s << json{{"config", cfg}, {"rows", jr}}.dump(2) << "\n";
    } else {
        s << config_header(c) << "# N = " << ms.N << "\n# constraint_tol = " << num(tol) << "\n";
        s << "p,x";
        for (int k = 1; k <= 6; ++k) s << ",R" << k << "_re,R" << k << "_im";
        s << ",c1_re,c1_im,c2_re,c2_im,constraint_violated\n";
        for (const auto& row : rows) {
            s << row.p << "," << num(row.x);
            for (const auto& v : row.r) s << "," << num(v.real()) << "," << num(v.imag());
            s << "," << num(row.con.first.real()) << "," << num(row.con.first.imag()) << ","
              << num(row.con.second.real()) << "," << num(row.con.second.imag()) << ","
              << (std::abs(row.con.first) > tol || std::abs(row.con.second) > tol ? 1 : 0) << "\n";
        }
    }
    emit(c, s.str(), out);
    return kOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"ncsphere: noncommutative sphere geometry, flows and mode systems"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help and exit"); // -h would clash with --h

    auto common = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "print help and exit");
        auto* a = sub->add_option("--alpha", c.alpha, "deformation alpha = tanh h (default 0.2)");
        auto* h = sub->add_option("--h", c.h, "deformation parameter h (real)");
        a->excludes(h);
        h->excludes(a);
        sub->add_option("--out", c.out_path, "output file (default stdout)");
        sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--tol", c.tol, "override every tolerance");
    };
    auto* verify = app.add_subcommand("verify", "run the oracle verification suites");
    common(verify);
    verify->add_option("--a0", c.a0);
    verify->add_option("--b0", c.b0);
    verify->add_option("--c0", c.c0);
    verify->add_option("--d0", c.d0);

    auto* curv = app.add_subcommand("curvature", "Ricci tensor and scalar on an x grid");
    common(curv);
    curv->add_option("--grid", c.grid, "grid points on [0, pi)");

    auto* flow = app.add_subcommand("flow", "field lines of the zero-order flow");
    common(flow);
    flow->add_option("--a0", c.a0);
    flow->add_option("--b0", c.b0);
    flow->add_option("--seed-count", c.seed_count, "seeds evenly spaced in y at x_min + 0.01");
    flow->add_option("--t-end", c.t_end, "integration time per trace");
    flow->add_option("--dt", c.dt, "RK4 step");
    flow->add_option("--stride", c.stride, "emit every stride-th sample");

    auto* modes = app.add_subcommand("modes", "p-mode residual table for a mode set");
    common(modes);
    modes->add_option("--modeset", c.modeset_path, "mode set JSON file")->required();
    modes->add_option("--p", c.p, "mode numbers p")->expected(1, -1);
    modes->add_option("--grid", c.grid, "x midpoints on (0, pi)");
    modes->add_option("--modes", c.N, "truncate or zero-pad the mode set to N modes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }
    if (modes->parsed() && !modes->count("--grid")) c.grid = 10;

    try {
        if (verify->parsed()) {
            c.command = "verify";
            return cmd_verify(c, out);
        }
        if (curv->parsed()) {
            c.command = "curvature";
            return cmd_curvature(c, out);
        }
        if (flow->parsed()) {
            c.command = "flow";
            return cmd_flow(c, out);
        }
        c.command = "modes";
        return cmd_modes(c, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        err << "numerical domain error: " << e.what() << "\n";
        return kDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDomain;
    }
}

} // namespace ncsphere::cli
