// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "closed_products.hpp"
#include "ncsphere/flow.hpp"
#include "ncsphere/geometry.hpp"
#include "ncsphere/modes.hpp"
#include "ncsphere/modes_oracle.hpp"
#include "ncsphere/modeset_io.hpp"
#include "ncsphere/parallel.hpp"
#include "ncsphere/starprod.hpp"
#include "support.hpp"

using namespace ncsphere;
using namespace testsupport;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

std::vector<double> midpoints(int n)
{
    std::vector<double> xs;
    for (int k = 0; k < n; ++k) xs.push_back(pi * (k + 0.5) / n);
    return xs;
}

const cplx I(0.0, 1.0);

Outcome commutative_limit()
{
    double worst = 0.0;
    for (double x : midpoints(200)) {
        worst = std::max(worst, std::abs(riemann_ricci(x, 0.0).scalar_R - 2.0));
        worst = std::max(worst, std::abs(ricci_closed(x, 0.0).scalar_R - 2.0));
    }
    return {worst < 1e-12, fmt("max |R - 2| = %.3g (limit 1e-12)", worst)};
}

Outcome curvature_figure()
{
    const auto s = singularity_locus(0.75);
    const double x0 = 0.5 * std::acos(7.0 / 18.0);
    const bool loc = s.size() == 2 && std::abs(s[0] - x0) < 1e-9 && std::abs(s[1] - (pi - x0)) < 1e-9;
    const double rn = riemann_ricci(0.1, 0.75).scalar_R, rs = riemann_ricci(pi - 0.1, 0.75).scalar_R;
    const double re = riemann_ricci(pi / 2, 0.75).scalar_R;
    return {loc && rn < 0 && rs < 0 && re > 0,
            fmt("R(0.1) = %.4g, R(pi-0.1) = %.4g, R(pi/2) = %.4g", rn, rs, re) +
                (loc ? ", poles at 1/2 arccos(7/18) and its mirror" : ", pole location mismatch")};
}

Outcome flat_extremes()
{
    double worst = 0.0;
    for (double alpha : {-1.0, 1.0})
        for (double x : midpoints(200)) {
            if (std::abs(x - pi / 4) < 0.05 || std::abs(x - 3 * pi / 4) < 0.05) continue;
            worst = std::max(worst, std::abs(ricci_closed(x, alpha).scalar_R));
            worst = std::max(worst, std::abs(riemann_ricci(x, alpha).scalar_R));
        }
    return {worst < 1e-12, fmt("max |R| = %.3g (limit 1e-12)", worst)};
}

Outcome star_closed_forms()
{
    double lat = 0.0, ser = 0.0;
    for (double h : {0.1, 0.3, 0.5}) {
        const auto d = Deformation::real(h);
        for (int n = 1; n <= 4; ++n)
            for (int m = 1; m <= 4; ++m) {
                const auto oracle = closed_basis_product(n, m, h);
                lat = std::max(lat, coeff_dist(star_lattice(basis_f(n), basis_f(m), d), oracle));
                ser = std::max(ser, coeff_dist(star_series(basis_f(n), basis_f(m), d, 25), oracle));
            }
    }
    return {lat < 1e-13 && ser < 1e-10, fmt("lattice %.3g (limit 1e-13), series order 25 %.3g (limit 1e-10)", lat, ser)};
}

Outcome geometry_assembly()
{
    double metric = 0.0, gamma = 0.0, ricci = 0.0;
    for (double alpha : {-0.75, -0.5, -0.2, 0.2, 0.5, 0.75}) {
        const auto e = build_embedding(Deformation::from_alpha(alpha));
        for (double x : midpoints(50)) {
            metric = std::max(metric, (metric_from_basis(e, x, 1.3) - metric_closed(x, alpha)).cwiseAbs().maxCoeff());
            gamma = std::max(gamma, gamma_consistency(x, alpha).max());
            const Curvature a = riemann_ricci(x, alpha), b = ricci_closed(x, alpha);
            ricci = std::max({ricci, (a.ricci - b.ricci).cwiseAbs().maxCoeff(), std::abs(a.scalar_R - b.scalar_R)});
        }
    }
    return {std::max({metric, gamma, ricci}) < 1e-10,
            fmt("metric %.3g, connection %.3g, Ricci %.3g (limit 1e-10)", metric, gamma, ricci)};
}

Outcome embedding_identities()
{
    const double h = 0.3, alpha = std::tanh(h);
    const auto d = Deformation::real(h);
    const auto e = build_embedding(d);
    const auto E = tangent_basis(e);
    const auto ll = dot(e.lambda, e.lambda, d) - TrigPoly::constant(1.0);
    const auto l1 = dot(e.lambda, E[0], d);
    const auto l2 = dot(e.lambda, E[1], d) + alpha * TrigPoly::sin_x(2);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double x = uniform(0.0, pi), y = uniform(0.0, 2 * pi);
        worst = std::max({worst, std::abs(ll.eval(x, y)), std::abs(l1.eval(x, y)), std::abs(l2.eval(x, y))});
    }
    return {worst < 1e-13, fmt("max violation %.3g (limit 1e-13)", worst)};
}

Outcome zero_order_flow()
{
    double res = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double b0 = uniform(0.2, 3.0), a0 = uniform(0.0, 0.9) * b0;
        const auto f = zero_order_solution(a0, b0);
        const auto [lo, hi] = validity_domain(a0, b0);
        for (int j = 1; j <= 200; ++j) {
            const auto r = zero_order_residual(f, lo + (hi - lo) * j / 201.0);
            res = std::max({res, std::abs(r.first), std::abs(r.second)});
        }
    }
    double plan = 0.0;
    for (double a0 : {0.0, 0.05, 0.3}) {
        const auto f = zero_order_solution(a0, 1.0);
        const double lo = validity_domain(a0, 1.0).first;
        for (int k = 0; k < 8; ++k)
            plan = std::max(plan, great_circle_deviation(trace_flow(f, {lo + 0.01, 2 * pi * k / 8}, 5.0)));
    }
    return {res < 1e-12 && plan < 1e-6, fmt("residual %.3g (limit 1e-12), planarity %.3g (limit 1e-6)", res, plan)};
}

Outcome first_order_deviation_check()
{
    const double a0 = 0.05, b0 = 1.0;
    const auto dv = first_order_deviation(a0, b0, 0.1, 0.2);
    const auto [lo, hi] = validity_domain(a0, b0);
    double sys = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double x = lo + (hi - lo) * j / 101.0;
        if (dv.near_branch_point(x) || std::abs(std::cos(x)) < 1e-6) continue;
        const auto r = deviation_system_residual(dv, x);
        sys = std::max({sys, std::abs(r.first), std::abs(r.second)});
    }
    double ode = 0.0;
    for (const auto& s : deviation_ode_solve(a0, b0, 0.1, 0.2, 1.0, 1.5))
        ode = std::max({ode, std::abs(s.omega - dv.omega(s.x)), std::abs(s.delta - dv.delta(s.x))});
    double rmin = 1e300, rmax = 0.0;
    for (double x : {0.7, 1.2, 2.3})
        for (double alpha : {5e-4, 1e-3}) {
            auto res = [&](double a) {
                const auto r = sysfirst_residual(connected_field(dv, a), x, Deformation::from_alpha(a));
                return std::max(std::abs(r.first), std::abs(r.second));
            };
            const double ratio = res(alpha) / res(alpha / 2);
            rmin = std::min(rmin, ratio);
            rmax = std::max(rmax, ratio);
        }
    const bool ok = sys < 1e-8 && ode < 1e-7 && rmin >= 3.2 && rmax <= 4.8;
    return {ok, fmt("system %.3g (limit 1e-8), RK4 %.3g (limit 1e-7), ", sys, ode) +
                    fmt("Richardson ratios in [%.4f, %.4f]", rmin, rmax)};
}

Outcome mode_oracle()
{
    const ModeSet ms = load_modeset(std::string(NCSPHERE_DATA_DIR) + "/modeset_n3.json");
    const auto xs = midpoints(10);
    std::vector<double> worst(2 * 4 * xs.size(), 0.0);
    parallel_for(worst.size(), [&](std::size_t i) {
        const double alpha = i / (4 * xs.size()) == 0 ? 0.1 : 0.2;
        const int p = int(i / xs.size()) % 4 + 1;
        const double x = xs[i % xs.size()];
        const auto d = Deformation::from_alpha(alpha);
        const auto r = p_mode_residuals(ms, d, x, p);
        const auto o = p_mode_oracle(ms, d, x, p);
        for (int k = 0; k < 6; ++k) worst[i] = std::max(worst[i], std::abs(r[k] - o[k]));
    });
    double w = 0.0;
    for (double v : worst) w = std::max(w, v);
    return {w < 1e-8, fmt("max |assembled - quadrature| = %.3g over 80 (alpha, p, x) cases (limit 1e-8)", w)};
}

Outcome p1_reduction()
{
    const ModeSet ms = load_modeset(std::string(NCSPHERE_DATA_DIR) + "/modeset_n0.json");
    const YSymField f{ms.v0[0], ms.v0[1], std::nullopt};
    double dev = 0.0, k_first = 0.0;
    for (double alpha : {0.1, 0.2}) {
        const auto d = Deformation::from_alpha(alpha);
        std::vector<cplx> ks;
        for (double x : midpoints(50)) {
            const auto r = p_mode_residuals(ms, d, x, 1);
            const auto [s1, s2] = sysfirst_residual(f, x, d);
            ks.push_back((r[0] - I * r[1]) / s1);
            ks.push_back((r[0] + I * r[1]) / s2);
        }
        for (cplx k : ks) dev = std::max(dev, std::abs(k - ks.front()) / std::abs(ks.front()));
        k_first = ks.front().real();
    }
    return {dev < 1e-10, fmt("constant %.15g, relative spread %.3g (limit 1e-10)", k_first, dev)};
}

Outcome imaginary_h()
{
    double diff = 0.0, imag = 0.0;
    for (double hbar : {0.1, 0.3})
        for (double x : midpoints(200)) {
            const double R = scalar_R_imaginary(x, hbar);
            const cplx cont = closed::ricci_closed<cplx>(cplx(x), I * std::tan(hbar))[4];
            diff = std::max(diff, std::abs(R - cont));
            imag = std::max(imag, std::abs(cont.imag()));
        }
    return {diff < 1e-12 && imag < 1e-12, fmt("max |R_bar - continuation| = %.3g, max |Im| = %.3g (limit 1e-12)", diff, imag)};
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double budget_s;
    };
    const std::vector<Criterion> all{
        {"commutative limit R = 2", commutative_limit, 1.0},
        {"curvature sign and poles at alpha = 3/4", curvature_figure, 0.0},
        {"flatness at alpha = +-1", flat_extremes, 0.0},
        {"closed-form products of f_n", star_closed_forms, 0.0},
        {"geometry assembly", geometry_assembly, 10.0},
        {"embedding identities", embedding_identities, 0.0},
        {"zero-order flow", zero_order_flow, 0.0},
        {"first-order deviation", first_order_deviation_check, 0.0},
        {"mode system vs quadrature", mode_oracle, 60.0},
        {"p = 1 reduction", p1_reduction, 0.0},
        {"imaginary deformation", imaginary_h, 0.0},
    };
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = all[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (all[i].budget_s > 0 && secs > all[i].budget_s) {
            o.pass = false;
            o.detail += fmt("; runtime %.3f s over budget %.0f s", secs, all[i].budget_s);
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s [%.3f s]\n", o.pass ? "PASS" : "FAIL", i + 1, all[i].name, o.detail.c_str(), secs);
    }
    std::printf("%d of %zu criteria passed\n", int(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
