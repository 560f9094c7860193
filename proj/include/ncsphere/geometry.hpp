#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ncsphere/deformation.hpp"
#include "ncsphere/errors.hpp"
#include "ncsphere/trig_poly.hpp"

namespace ncsphere {

using Vec3TP = std::array<TrigPoly, 3>;

template <class T>
using Gamma3 = std::array<std::array<std::array<T, 2>, 2>, 2>;

struct Embedding {
    Vec3TP lambda;  // components on e1, e2, e3
    double A = 1.0; // 1/cosh h
    double B = 1.0; // A sqrt(cosh 2h)
    Deformation d = Deformation::real(0.0);
};

Embedding build_embedding(const Deformation& d);
// E_mu = d_mu Lambda
std::array<Vec3TP, 2> tangent_basis(const Embedding& e);
// [a,b,c].[a',b',c'] = a*a' + b*b' + c*c'
TrigPoly dot(const Vec3TP& u, const Vec3TP& v, const Deformation& d);

// E_mu . E_nu as trig polynomials (y-independent in exact arithmetic)
std::array<std::array<TrigPoly, 2>, 2> metric_polys(const Embedding& e);
Eigen::Matrix2d metric_from_basis(const Embedding& e, double x, double y = 0.0);
Eigen::Matrix2d metric_closed(double x, double alpha);

struct InverseMetric {
    Eigen::Matrix2d ginv;
    double d_alpha;
};
InverseMetric inverse_metric(double x, double alpha);

struct TorsionSplit {
    Gamma3<double> christoffel; // [mu][nu][sigma]
    Gamma3<double> torsion;     // [mu][nu][sigma]
};

struct Connections {
    Gamma3<double> lower; // Gamma_{mu nu sigma} as [mu][nu][sigma]
    Gamma3<double> upper; // Gamma^sigma_{mu nu} as [sigma][mu][nu]
    TorsionSplit split;
};
Connections connections(double x, double alpha);

struct ConsistencyReport {
    double left_violation;  // Gamma^s_mn vs (cG + U)_{mna} g^{as}
    double dual_violation;  // g^{sa} (cG - U)_{mna} vs Gamma^s_mn at -alpha
    double lower_violation; // lower table vs dE_mu.E_nu assembled on the lattice
    double max() const { return std::max({left_violation, dual_violation, lower_violation}); }
};
ConsistencyReport gamma_consistency(double x, double alpha);

struct Curvature {
    Eigen::Matrix2d ricci;
    double scalar_R;
};
// Assembled from the connection and its exact x-derivative.
Curvature riemann_ricci(double x, double alpha);
// Same contraction with central differences (step, Richardson-extrapolated) for d Gamma.
Curvature riemann_ricci_fd(double x, double alpha, double step = 1e-5);
Curvature ricci_closed(double x, double alpha);

// R at h = i hbar, written with alpha_bar = tan hbar
double scalar_R_imaginary(double x, double hbar);

std::vector<double> singularity_locus(double alpha);

struct SignRow {
    double x;
    double R;
    int sign;
};
struct SignScan {
    std::vector<SignRow> rows;
    std::vector<double> sign_changes; // midpoints of consecutive rows with opposite sign
};
SignScan curvature_sign_scan(double alpha, int grid);

struct GeometryAt {
    double x = 0.0, alpha = 0.0;
    Eigen::Matrix2d g, ginv;
    double d_alpha = 0.0;
    Gamma3<double> gamma_lower, gamma_upper;
    Eigen::Matrix2d ricci;
    double scalar_R = 0.0;
};
GeometryAt geometry_at(double x, double alpha);

namespace closed {

// det g = sin^2 x - alpha^2 cos^2 x + alpha^2 cos^2 2x, evaluated in the
// factored form sin^2 x (1 - alpha^2 - 2 alpha^2 cos 2x), free of cancellation near x = 0, pi
template <class T>
T metric_det(T x, T alpha)
{
    using std::cos; using std::sin;
    const T s = sin(x), a2 = alpha * alpha;
    return s * s * (T(1) - a2 - T(2) * a2 * cos(T(2) * x));
}

template <class T>
T d_alpha(T x, T alpha)
{
    const T det = metric_det(x, alpha);
    if (std::abs(det) <= 1e-14) throw SingularityError("metric determinant vanishes");
    return T(1) / det;
}

template <class T>
Gamma3<T> gamma_lower(T x, T alpha)
{
    using std::sin;
    const T s2 = sin(T(2) * x), q = T(0.5) * (T(1) + alpha * alpha) * s2;
    Gamma3<T> G{};
    G[0][0][1] = G[1][1][1] = alpha * s2;
    G[0][1][0] = G[1][0][0] = -alpha * s2;
    G[0][1][1] = G[1][0][1] = q;
    G[1][1][0] = -q;
    return G;
}

// Gamma^sigma_{mu nu} = P^sigma_{mu nu}(x) d_alpha(x)
template <class T>
Gamma3<T> gamma_numerators(T x, T alpha)
{
    using std::cos; using std::sin;
    const T s2 = sin(T(2) * x), c2 = cos(T(2) * x), s4 = sin(T(4) * x);
    const T a = alpha, a2 = a * a;
    Gamma3<T> P{};
    P[0][0][0] = -a2 / T(2) * s4;
    P[1][0][0] = a * s2;
    P[0][0][1] = P[0][1][0] = T(0.5) * (a2 * a - a) * s2;
    P[1][0][1] = P[1][1][0] = T(0.5) * (T(1) + a2 - T(2) * a2 * c2) * s2;
    // (c2 (a2-1)^2 + a2^2 - 1) / 4 rewritten through S = sin^2 x: no cancellation near x = 0, pi
    const T S = sin(x) * sin(x);
    P[0][1][1] = T(0.5) * (a2 - T(1)) * (a2 + S * (T(1) - a2)) * s2;
    P[1][1][1] = a * (T(1) - T(0.5) * (T(1) + a2) * c2) * s2;
    return P;
}

template <class T>
Gamma3<T> gamma_upper(T x, T alpha)
{
    const T d = d_alpha(x, alpha);
    Gamma3<T> G = gamma_numerators(x, alpha);
    for (auto& a : G)
        for (auto& b : a)
            for (auto& v : b) v *= d;
    return G;
}

// x-derivative of gamma_upper by the product rule on P d
template <class T>
Gamma3<T> gamma_upper_dx(T x, T alpha)
{
    using std::cos; using std::sin;
    const T s2 = sin(T(2) * x), c2 = cos(T(2) * x), s4 = sin(T(4) * x), c4 = cos(T(4) * x);
    const T a = alpha, a2 = a * a;
    const T d = d_alpha(x, alpha);
    const T ddet = (T(1) + a2) * s2 - T(2) * a2 * s4;
    const T dd = -ddet * d * d;
    Gamma3<T> P = gamma_numerators(x, alpha), dP{};
    dP[0][0][0] = T(-2) * a2 * c4;
    dP[1][0][0] = T(2) * a * c2;
    dP[0][0][1] = dP[0][1][0] = (a2 * a - a) * c2;
    dP[1][0][1] = dP[1][1][0] = (T(1) + a2) * c2 - T(2) * a2 * c4;
    // (a2-1)^2 c4 / 2 + (a2^2-1) c2 / 2 in S = sin^2 x
    const T S = sin(x) * sin(x);
    dP[0][1][1] = (a2 - T(1)) * (a2 - S * (T(5) * a2 - T(3)) + T(4) * S * S * (a2 - T(1)));
    dP[1][1][1] = T(2) * a * c2 - a * (T(1) + a2) * c4;
    Gamma3<T> G{};
    for (int s = 0; s < 2; ++s)
        for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n) G[s][m][n] = dP[s][m][n] * d + P[s][m][n] * dd;
    return G;
}

// den = alpha^2 + 2 alpha^2 cos 2x - 1
template <class T>
T curvature_den(T x, T alpha)
{
    using std::cos;
    const T a2 = alpha * alpha;
    const T den = a2 + T(2) * a2 * cos(T(2) * x) - T(1);
    if (std::abs(den) <= 1e-14) throw SingularityError("curvature denominator vanishes");
    return den;
}

template <class T>
std::array<T, 5> ricci_closed(T x, T alpha)
{
    using std::cos;
    const T a = alpha, a2 = a * a, a4 = a2 * a2, c2 = cos(T(2) * x);
    const T den = curvature_den(x, alpha), den2 = den * den;
    return {(T(3) * a4 + T(4) * a2 + T(1)) / den2,
            a * (T(1) - a4) * (c2 + T(2)) / den2,
            a * (T(2) * (a2 + T(1)) * (a2 + T(1)) + (a4 - T(1)) * c2) / den2,
            (T(1) - a4) * (T(3) * a2 + (T(3) * a2 - T(1)) * c2 + T(1)) / (T(2) * den2),
            T(2) * (a4 - T(1)) * (T(3) * a2 + T(2) * a2 * c2 + T(1)) / (den2 * den)};
}

} // namespace closed

} // namespace ncsphere
