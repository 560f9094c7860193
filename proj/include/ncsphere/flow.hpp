#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncsphere/analytic_fn.hpp"
#include "ncsphere/deformation.hpp"

namespace ncsphere {

struct FieldParams {
    double a0 = 0.0, b0 = 1.0;
    cplx c0 = 0.0, d0 = 0.0; // integration constants of the deviation; complex in general
    int psi_sign = 1, phi_sign = 1;
};

// V = (Psi(x), Phi(x)), independent of y
struct YSymField {
    AnalyticFn1D psi, phi;
    std::optional<FieldParams> params;
};

struct SigmaPair {
    cplx s1, s2;
};

// Sigma^sigma = V^mu (d_mu V^sigma + V^rho Gamma^sigma_{mu rho}) at a complex point
SigmaPair sigma_eval(const YSymField& f, cplx z, double alpha);

// The two slice equations written at z = x + ih and z = x - ih
std::pair<cplx, cplx> ysym_residual(const YSymField& f, double x, const Deformation& d);
// Sigma^1_+ cos x + i Sigma^2_+ sin x  and  Sigma^1_- cos x - i Sigma^2_- sin x
std::pair<cplx, cplx> sysfirst_residual(const YSymField& f, double x, const Deformation& d);
cplx compatibility(const YSymField& f, double x, const Deformation& d);

YSymField zero_order_solution(double a0, double b0, std::pair<int, int> signs = {1, 1});
// [arcsin sqrt(a0/b0), pi - arcsin sqrt(a0/b0)]
std::pair<double, double> validity_domain(double a0, double b0);
// commutative system: Psi Psi' - sin(2x) Phi^2 / 2,  Psi Phi' + 2 Psi Phi cot x
std::pair<cplx, cplx> zero_order_residual(const YSymField& f, double x);
// the O(alpha) system, evaluated verbatim
std::pair<cplx, cplx> first_order_residual(const YSymField& f, double x, double alpha);

struct Deviation {
    AnalyticFn1D omega, delta, eta, beta;
    AnalyticFn1D psi0, phi0;
    FieldParams params;
    // within 1e-8 of eta = 0 (equivalently psi0 = 0)
    bool near_branch_point(double x) const;
};

// Closed-form deviation (Omega, Delta) of the connected first-order solution.
// Branches: sqrt(eta) = i sqrt(-eta), sqrt(2 beta) = i sqrt(-2 beta),
// atan(sqrt2 sin x / sqrt beta) = pi/2 - i acoth(u) with u = sqrt2 sin x / sqrt(-beta),
// acoth(psi0 / sqrt b0) = atanh(psi0 / sqrt b0) + i pi/2.
Deviation first_order_deviation(double a0, double b0, cplx c0, cplx d0);
// psi0 + alpha Omega, phi0 + alpha Delta
YSymField connected_field(const Deviation& dv, double alpha);
// residuals of the linear system satisfied by (Omega, Delta)
std::pair<cplx, cplx> deviation_system_residual(const Deviation& dv, cplx x);

struct DeviationSample {
    double x;
    cplx omega, delta;
};
std::vector<DeviationSample> deviation_ode_solve(double a0, double b0, cplx c0, cplx d0, double x0, double x1,
                                                 double max_step = 1e-4);

// Classical fixed-step RK4 for y' = f(x, y) on std::array states.
template <class T, std::size_t N, class F>
std::array<T, N> rk4_step(F&& f, double x, const std::array<T, N>& y, double h)
{
    auto axpy = [](const std::array<T, N>& a, double s, const std::array<T, N>& b) {
        std::array<T, N> r;
        for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    const auto k1 = f(x, y);
    const auto k2 = f(x + h / 2, axpy(y, h / 2, k1));
    const auto k3 = f(x + h / 2, axpy(y, h / 2, k2));
    const auto k4 = f(x + h, axpy(y, h, k3));
    std::array<T, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h / 6 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

template <class T, std::size_t N, class F>
std::array<T, N> rk4_integrate(F&& f, double x0, const std::array<T, N>& y0, double x1, int steps)
{
    std::array<T, N> y = y0;
    const double h = (x1 - x0) / steps;
    for (int k = 0; k < steps; ++k) y = rk4_step<T, N>(f, x0 + k * h, y, h);
    return y;
}

struct FlowSample {
    double t, x, y;
    double X, Y, Z; // (sin x cos y, sin x sin y, cos x)
};

struct Polyline {
    std::vector<FlowSample> samples;
    bool exited = false;
    std::string exit_reason;
    double exit_x = 0.0, exit_y = 0.0;
};

// dx/dt = Psi(x), dy/dt = Phi(x); stops where the field stops being real or x leaves (0, pi).
Polyline trace_flow(const YSymField& f, std::pair<double, double> start, double t_end, double dt = 1e-3);
// max distance of the embedded samples from the best-fit plane through the origin
double great_circle_deviation(const Polyline& line);

} // namespace ncsphere
