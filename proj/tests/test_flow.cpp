#include <doctest.h>

#include <cmath>

#include "ncsphere/errors.hpp"
#include "ncsphere/flow.hpp"
#include "ncsphere/geometry.hpp"
#include "support.hpp"

using namespace ncsphere;
using namespace testsupport;

namespace {

const cplx I(0.0, 1.0);

// Psi = p1 + 0.3 cos x, Phi = p2 + 0.2 sin x
YSymField family(cplx p1, cplx p2)
{
    YSymField f;
    f.psi = AnalyticFn1D::from_jet([p1](const CJet& x) { return p1 + cos(x) * cplx(0.3); });
    f.phi = AnalyticFn1D::from_jet([p2](const CJet& x) { return p2 + sin(x) * cplx(0.2); });
    return f;
}

// V^mu (d_mu V^sigma + V^rho Gamma^sigma_{mu rho}) with d_y = 0, summed term by term
SigmaPair sigma_by_sums(const YSymField& f, cplx z, double alpha)
{
    const std::array<cplx, 2> V{f.psi(z), f.phi(z)}, dV{f.psi.deriv(z), f.phi.deriv(z)};
    const auto G = closed::gamma_upper<cplx>(z, cplx(alpha));
    std::array<cplx, 2> s{};
    for (int sg = 0; sg < 2; ++sg) {
        s[sg] = V[0] * dV[sg];
        for (int m = 0; m < 2; ++m)
            for (int r = 0; r < 2; ++r) s[sg] += V[m] * V[r] * G[sg][m][r];
    }
    return {s[0], s[1]};
}

double max_abs(std::pair<cplx, cplx> p) { return std::max(std::abs(p.first), std::abs(p.second)); }

} // namespace

TEST_CASE("Sigma: displayed closed form equals the index sums")
{
    const auto f = family({0.7, 0.1}, {-0.4, 0.2});
    for (double alpha : {0.0, 0.3, -0.6})
        for (cplx z : {cplx(0.8, 0.3), cplx(1.9, -0.2), cplx(0.4, 0.0)}) {
            const auto a = sigma_eval(f, z, alpha), b = sigma_by_sums(f, z, alpha);
            CHECK(std::abs(a.s1 - b.s1) < 1e-13);
            CHECK(std::abs(a.s2 - b.s2) < 1e-13);
        }
    // constant Psi, zero Phi on the round sphere
    YSymField c;
    c.psi = AnalyticFn1D::constant(1.3);
    c.phi = AnalyticFn1D::zero();
    const auto s = sigma_eval(c, 1.0, 0.0);
    CHECK(std::abs(s.s1) + std::abs(s.s2) < 1e-15);
    // the zero-order field is geodesic at alpha = 0
    const auto z = zero_order_solution(0.05, 1.0);
    const auto s0 = sigma_eval(z, 1.0, 0.0);
    CHECK(std::abs(s0.s1) + std::abs(s0.s2) < 1e-12);
}

TEST_CASE("slice equations and the first system")
{
    const auto f = family({0.7, 0.1}, {-0.4, 0.2});
    // h = 0: both lines reduce to Sigma^1 cos x +- i Sigma^2 sin x
    const auto d0 = Deformation::real(0.0);
    const auto s = sigma_eval(f, 0.9, 0.0);
    const auto r0 = ysym_residual(f, 0.9, d0);
    CHECK(std::abs(r0.first - (s.s1 * std::cos(0.9) + I * s.s2 * std::sin(0.9))) < 1e-14);
    CHECK(std::abs(r0.second - (s.s1 * std::cos(0.9) - I * s.s2 * std::sin(0.9))) < 1e-14);
    // cos z + i alpha sin z = cos x / cosh h, so the slice lines are the first system over cosh h
    for (double h : {0.1, 0.4})
        for (double x : {0.5, 1.2, 2.6}) {
            const auto d = Deformation::real(h);
            const auto a = ysym_residual(f, x, d), b = sysfirst_residual(f, x, d);
            CHECK(std::abs(a.first - b.first / std::cosh(h)) < 1e-13);
            CHECK(std::abs(a.second - b.second / std::cosh(h)) < 1e-13);
        }
    CHECK(max_abs(ysym_residual(zero_order_solution(0.05, 1.0), 1.0, d0)) < 1e-12);
}

TEST_CASE("compatibility vanishes where the first system holds")
{
    const auto d = Deformation::real(0.2);
    const double x = 1.0;
    // Newton on the two complex constants, finite-difference Jacobian
    std::array<cplx, 2> p{cplx(1.0), cplx(0.5)};
    auto F = [&](const std::array<cplx, 2>& q) {
        const auto r = sysfirst_residual(family(q[0], q[1]), x, d);
        return std::array<cplx, 2>{r.first, r.second};
    };
    for (int it = 0; it < 50; ++it) {
        const auto r = F(p);
        if (std::abs(r[0]) + std::abs(r[1]) < 1e-14) break;
        const double e = 1e-7;
        std::array<std::array<cplx, 2>, 2> J;
        for (int j = 0; j < 2; ++j) {
            auto q = p;
            q[j] += e;
            const auto rq = F(q);
            J[0][j] = (rq[0] - r[0]) / e;
            J[1][j] = (rq[1] - r[1]) / e;
        }
        const cplx det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        p[0] -= (J[1][1] * r[0] - J[0][1] * r[1]) / det;
        p[1] -= (J[0][0] * r[1] - J[1][0] * r[0]) / det;
    }
    const auto f = family(p[0], p[1]);
    REQUIRE(max_abs(sysfirst_residual(f, x, d)) < 1e-12);
    CHECK(std::abs(compatibility(f, x, d)) < 1e-10);
    // and it is generically nonzero
    CHECK(std::abs(compatibility(family(1.0, 0.5), x, d)) > 1e-3);
}

TEST_CASE("zero-order solution")
{
    const auto f0 = zero_order_solution(0.0, 1.0);
    CHECK(std::abs(f0.psi(0.7) - 1.0) < 1e-15);
    CHECK(std::abs(f0.phi(0.7)) < 1e-15);

    for (int k = 0; k < 20; ++k) {
        const double b0 = uniform(0.2, 3.0), a0 = uniform(0.0, 0.9) * b0;
        const auto f = zero_order_solution(a0, b0);
        const auto [lo, hi] = validity_domain(a0, b0);
        CHECK(std::sin(lo) * std::sin(lo) == doctest::Approx(a0 / b0).epsilon(1e-12));
        for (int j = 1; j <= 100; ++j) {
            const double x = lo + (hi - lo) * j / 101.0;
            CHECK(max_abs(zero_order_residual(f, x)) < 1e-12);
            const double s2 = std::sin(x) * std::sin(x);
            // Psi^2 + a0 / sin^2 x = b0 and Phi sin^2 x = sqrt(a0)
            CHECK(std::abs(f.psi(x) * f.psi(x) + a0 / s2 - b0) < 1e-12);
            CHECK(std::abs(f.phi(x) * s2 - std::sqrt(a0)) < 1e-12);
            // linearization: Phi1 = Psi^2, Phi2 = Phi^2, rho = sin^2 x gives dPhi1/drho = Phi2
            const cplx dphi1 = 2.0 * f.psi(x) * f.psi.deriv(x) / std::sin(2 * x);
            if (std::abs(std::cos(x)) > 1e-2) CHECK(std::abs(dphi1 - f.phi(x) * f.phi(x)) < 1e-10);
        }
    }
    // sign flips and the multiplication by i
    for (auto sg : {std::pair{1, -1}, std::pair{-1, 1}, std::pair{-1, -1}}) {
        const auto f = zero_order_solution(0.05, 1.0, sg);
        CHECK(max_abs(zero_order_residual(f, 1.0)) < 1e-12);
    }
    const auto base = zero_order_solution(0.05, 1.0);
    YSymField fi;
    fi.psi = AnalyticFn1D(
        [&](cplx z) { return I * base.psi(z); }, AnalyticFn1D::Fn([&](cplx z) { return I * base.psi.deriv(z); }),
        std::nullopt, AnalyticFn1D::entire);
    fi.phi = AnalyticFn1D(
        [&](cplx z) { return I * base.phi(z); }, AnalyticFn1D::Fn([&](cplx z) { return I * base.phi.deriv(z); }),
        std::nullopt, AnalyticFn1D::entire);
    CHECK(max_abs(zero_order_residual(fi, 1.0)) < 1e-12);

    CHECK_THROWS_AS(zero_order_solution(-0.1, 1.0), InvalidArgument);
    CHECK_THROWS_AS(zero_order_solution(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(zero_order_solution(0.1, 1.0, {2, 1}), InvalidArgument);
}

TEST_CASE("first-order system")
{
    YSymField c;
    c.psi = AnalyticFn1D::constant(1.0);
    c.phi = AnalyticFn1D::zero();
    const auto r = first_order_residual(c, 0.7, 0.1);
    CHECK(std::abs(r.first) < 1e-15);
    CHECK(std::abs(r.second - 0.2) < 1e-15);
    const auto z = zero_order_solution(0.05, 1.0);
    CHECK(max_abs(first_order_residual(z, 1.0, 0.0)) < 1e-12);
    CHECK_THROWS_AS(first_order_residual(z, pi / 2, 0.1), SingularityError);
}

TEST_CASE("deviation: closed forms solve the linear system")
{
    const auto dv = first_order_deviation(0.05, 1.0, 0.1, 0.2);
    const auto [lo, hi] = validity_domain(0.05, 1.0);
    for (int j = 1; j <= 50; ++j) {
        const double x = lo + (hi - lo) * j / 51.0;
        if (dv.near_branch_point(x) || std::abs(std::cos(x)) < 1e-6) continue;
        CHECK(max_abs(deviation_system_residual(dv, x)) < 1e-8);
        // mirror symmetry about the equator
        CHECK(std::abs(dv.omega(x) - dv.omega(pi - x)) < 1e-10);
        CHECK(std::abs(dv.delta(x) - dv.delta(pi - x)) < 1e-10);
    }
    // sqrt(eta) and psi0 are never real together
    for (int j = 1; j < 400; ++j) {
        const double x = pi * j / 400.0;
        if (dv.near_branch_point(x)) continue;
        const bool eta_real = dv.eta(x).real() > 0.0;
        const bool psi_real = std::abs(dv.psi0(x).imag()) < 1e-14 && std::abs(dv.psi0(x).real()) > 0.0;
        CHECK_FALSE((eta_real && psi_real));
        // beta = eta / b0 = -(2 / b0) sin^2 x psi0^2
        const double s2 = std::sin(x) * std::sin(x);
        CHECK(std::abs(dv.beta(x) + 2.0 * s2 * dv.psi0(x) * dv.psi0(x)) < 1e-12);
    }
    CHECK(dv.near_branch_point(lo));
    CHECK_FALSE(dv.near_branch_point(1.0));
    CHECK_THROWS_AS(first_order_deviation(0.0, 1.0, 0.1, 0.2), InvalidArgument);
}

TEST_CASE("deviation: vanishing Delta at the equator")
{
    const double a0 = 0.05, b0 = 1.0;
    const double psi = std::sqrt(b0 - a0), v = psi / std::sqrt(b0);
    // c0 cancels the bracket; acoth on the principal branch carries i pi/2
    const cplx acoth = std::atanh(v) + I * (pi / 2);
    const cplx c0 = a0 / std::sqrt(b0) * acoth + 2.0 * psi;
    const auto dv = first_order_deviation(a0, b0, c0, 0.2);
    CHECK(std::abs(dv.delta(pi / 2)) < 1e-14);
    // a real c0 leaves the imaginary part of the bracket
    const auto dr = first_order_deviation(a0, b0, c0.real(), 0.2);
    CHECK(std::abs(dr.delta(pi / 2) + I * a0 / std::sqrt(b0) * (pi / 2)) < 1e-14);
}

TEST_CASE("deviation: RK4 integration")
{
    const double a0 = 0.05, b0 = 1.0;
    const auto dv = first_order_deviation(a0, b0, 0.1, 0.2);
    const auto samples = deviation_ode_solve(a0, b0, 0.1, 0.2, 1.0, 1.5);
    REQUIRE(samples.size() > 2);
    CHECK(samples.back().x == doctest::Approx(1.5));
    for (const auto& s : samples) {
        CHECK(std::abs(s.omega - dv.omega(s.x)) < 1e-7);
        CHECK(std::abs(s.delta - dv.delta(s.x)) < 1e-7);
    }
    // fourth-order convergence
    auto err = [&](double step) {
        const auto out = deviation_ode_solve(a0, b0, 0.1, 0.2, 1.0, 1.5, step);
        return std::abs(out.back().omega - dv.omega(1.5)) + std::abs(out.back().delta - dv.delta(1.5));
    };
    const double ratio = err(0.05) / err(0.025);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);

    CHECK_THROWS_AS(deviation_ode_solve(a0, b0, 0.1, 0.2, 0.1, 1.0), DomainError);
    CHECK_THROWS_AS(deviation_ode_solve(a0, b0, 0.1, 0.2, 1.0, 1.5, 0.0), InvalidArgument);
    // the equator is a regular point (1/tan x -> 0); the domain edge is not
    CHECK_NOTHROW(deviation_ode_solve(a0, b0, 0.1, 0.2, 1.0, pi / 2 + 0.1, 1e-3));
    CHECK_THROWS_AS(deviation_ode_solve(a0, b0, 0.1, 0.2, 1.0, validity_domain(a0, b0).second), DomainError);
}

TEST_CASE("RK4 on a frozen-coefficient Delta equation")
{
    // Delta' + 2 cot x Delta = -2 b0 cot x / psi with psi constant:
    // Delta = -b0 / psi + C / sin^2 x
    const double psi = 0.8, b0 = 1.0, x0 = 0.6, x1 = 1.3, D0 = 0.4;
    const double C = (D0 + b0 / psi) * std::sin(x0) * std::sin(x0);
    auto f = [&](double x, const std::array<double, 1>& y) {
        const double cot = std::cos(x) / std::sin(x);
        return std::array<double, 1>{-2.0 * cot * y[0] - 2.0 * b0 * cot / psi};
    };
    const auto y = rk4_integrate<double, 1>(f, x0, {D0}, x1, 2000);
    CHECK(std::abs(y[0] - (-b0 / psi + C / (std::sin(x1) * std::sin(x1)))) < 1e-10);
}

TEST_CASE("connected field: second-order residual")
{
    const auto dv = first_order_deviation(0.05, 1.0, 0.1, 0.2);
    for (double x : {0.7, 1.2, 2.3}) {
        auto res = [&](double alpha) {
            const auto d = Deformation::from_alpha(alpha);
            return max_abs(sysfirst_residual(connected_field(dv, alpha), x, d));
        };
        for (double alpha : {5e-4, 1e-3}) {
            const double ratio = res(alpha) / res(alpha / 2);
            CHECK(ratio > 3.2);
            CHECK(ratio < 4.8);
        }
        auto res1 = [&](double alpha) { return max_abs(first_order_residual(connected_field(dv, alpha), x, alpha)); };
        const double r1 = res1(1e-3) / res1(5e-4);
        CHECK(r1 > 3.2);
        CHECK(r1 < 4.8);
    }
}

TEST_CASE("flow tracing")
{
    // a0 = 0: meridians
    const auto m = trace_flow(zero_order_solution(0.0, 1.0), {0.3, 1.1}, 2.0);
    for (const auto& s : m.samples) CHECK(s.y == doctest::Approx(1.1).epsilon(1e-14));
    CHECK(great_circle_deviation(m) < 1e-12);

    const double a0 = 0.05, b0 = 1.0;
    const auto [lo, hi] = validity_domain(a0, b0);
    const auto f = zero_order_solution(a0, b0);
    for (double y0 : {0.0, 1.0, 4.0}) {
        const auto l = trace_flow(f, {lo + 0.01, y0}, 5.0);
        REQUIRE(l.samples.size() > 10);
        bool crossed = false;
        for (const auto& s : l.samples) crossed = crossed || s.x > pi / 2;
        CHECK(crossed);
        CHECK(great_circle_deviation(l) < 1e-6);
        for (const auto& s : l.samples) {
            CHECK(s.x >= lo - 1e-12);
            CHECK(s.x <= hi + 1e-12);
            CHECK(s.X * s.X + s.Y * s.Y + s.Z * s.Z == doctest::Approx(1.0));
        }
    }
    CHECK_THROWS_AS(trace_flow(f, {lo - 0.05, 0.0}, 1.0), DomainError);
    CHECK_THROWS_AS(trace_flow(f, {1.0, 0.0}, 1.0, 0.0), InvalidArgument);
}
