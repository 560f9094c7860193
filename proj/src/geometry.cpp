#include "ncsphere/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncsphere/starprod.hpp"

namespace ncsphere {

namespace {

using std::numbers::pi;

// R^l_{kij} = d_i G^l_{jk} - d_j G^l_{ik} + G^p_{jk} G^l_{ip} - G^p_{ik} G^l_{jp}, Ric_ij = R^p_{ipj},
// R = g^{ji} Ric_ij. Terms of size 1/det^2 cancel near the poles, hence the wide type T.
template <class T>
Curvature assemble_curvature(const Gamma3<T>& G, const Gamma3<T>& dG, const std::array<std::array<T, 2>, 2>& ginv)
{
    // only d_1 is nonzero: D(j, l, i, k) = d_j Gamma^l_{ik}
    auto D = [&](int j, int l, int i, int k) { return j == 0 ? dG[l][i][k] : T(0); };
    T R[2][2][2][2];
    for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    T v = -D(j, l, i, k) + D(i, l, j, k);
                    for (int p = 0; p < 2; ++p) v += -G[p][i][k] * G[l][j][p] + G[p][j][k] * G[l][i][p];
                    R[l][k][i][j] = v;
                }
    T ric[2][2];
    T scal = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ric[i][j] = R[0][i][0][j] + R[1][i][1][j];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) scal += ginv[j][i] * ric[i][j];
    Curvature c;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c.ricci(i, j) = double(ric[i][j]);
    c.scalar_R = double(scal);
    return c;
}

template <class T>
std::array<std::array<T, 2>, 2> inverse_metric_t(T x, T alpha)
{
    using std::cos; using std::sin;
    const T d = closed::d_alpha(x, alpha);
    const T s = sin(x), c = cos(x), c2 = cos(T(2) * x);
    return {{{d * (s * s - alpha * alpha * c * c), d * alpha * c2}, {-d * alpha * c2, d}}};
}

Gamma3<double> central_difference(double x, double alpha, double step)
{
    auto up = closed::gamma_upper<double>(x + step, alpha);
    auto um = closed::gamma_upper<double>(x - step, alpha);
    Gamma3<double> out{};
    for (int s = 0; s < 2; ++s)
        for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n) out[s][m][n] = (up[s][m][n] - um[s][m][n]) / (2.0 * step);
    return out;
}

} // namespace

Embedding build_embedding(const Deformation& d)
{
    const double h = d.h_real();
    Embedding e;
    e.d = d;
    e.A = 1.0 / std::cosh(h);
    e.B = e.A * std::sqrt(std::cosh(2.0 * h));
    e.lambda = {e.A * basis_f(2), e.A * basis_f(1), e.B * TrigPoly::cos_x()};
    return e;
}

std::array<Vec3TP, 2> tangent_basis(const Embedding& e)
{
    std::array<Vec3TP, 2> E;
    for (int c = 0; c < 3; ++c) {
        E[0][c] = e.lambda[c].dx();
        E[1][c] = e.lambda[c].dy();
    }
    return E;
}

TrigPoly dot(const Vec3TP& u, const Vec3TP& v, const Deformation& d)
{
    return star_lattice(u[0], v[0], d) + star_lattice(u[1], v[1], d) + star_lattice(u[2], v[2], d);
}

std::array<std::array<TrigPoly, 2>, 2> metric_polys(const Embedding& e)
{
    auto E = tangent_basis(e);
    std::array<std::array<TrigPoly, 2>, 2> g;
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) g[m][n] = dot(E[m], E[n], e.d);
    return g;
}

Eigen::Matrix2d metric_from_basis(const Embedding& e, double x, double y)
{
    auto g = metric_polys(e);
    Eigen::Matrix2d out;
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) out(m, n) = g[m][n].eval(x, y).real();
    return out;
}

Eigen::Matrix2d metric_closed(double x, double alpha)
{
    const double s = std::sin(x), c = std::cos(x), c2 = std::cos(2.0 * x);
    Eigen::Matrix2d g;
    g << 1.0, -alpha * c2, alpha * c2, s * s - alpha * alpha * c * c;
    return g;
}

InverseMetric inverse_metric(double x, double alpha)
{
    const double d = closed::d_alpha(x, alpha);
    const double s = std::sin(x), c = std::cos(x), c2 = std::cos(2.0 * x);
    Eigen::Matrix2d gi;
    gi << s * s - alpha * alpha * c * c, alpha * c2, -alpha * c2, 1.0;
    return {d * gi, d};
}

Connections connections(double x, double alpha)
{
    Connections c;
    c.lower = closed::gamma_lower<double>(x, alpha);
    c.upper = closed::gamma_upper<double>(x, alpha);
    // d_1 g: g12' = 2 alpha sin 2x, g21' = -g12', g22' = (1 + alpha^2) sin 2x
    const double s2 = std::sin(2.0 * x);
    const double dg[2][2] = {{0.0, 2.0 * alpha * s2}, {-2.0 * alpha * s2, (1.0 + alpha * alpha) * s2}};
    auto D = [&](int k, int i, int j) { return k == 0 ? dg[i][j] : 0.0; };
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
            for (int s = 0; s < 2; ++s) {
                const double cg = 0.5 * (D(m, n, s) + D(n, s, m) - D(s, n, m));
                c.split.christoffel[m][n][s] = cg;
                c.split.torsion[m][n][s] = c.lower[m][n][s] - cg;
            }
    return c;
}

ConsistencyReport gamma_consistency(double x, double alpha)
{
    const Connections c = connections(x, alpha);
    const Eigen::Matrix2d gi = inverse_metric(x, alpha).ginv;
    const Gamma3<double> upper_neg = closed::gamma_upper<double>(x, -alpha);
    ConsistencyReport r{0.0, 0.0, 0.0};
    for (int s = 0; s < 2; ++s)
        for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n) {
                double left = 0.0, dual = 0.0;
                for (int a = 0; a < 2; ++a) {
                    const double cg = c.split.christoffel[m][n][a], ups = c.split.torsion[m][n][a];
                    left += (cg + ups) * gi(a, s);
                    dual += gi(s, a) * (cg - ups);
                }
                r.left_violation = std::max(r.left_violation, std::abs(left - c.upper[s][m][n]));
                r.dual_violation = std::max(r.dual_violation, std::abs(dual - upper_neg[s][m][n]));
            }
    if (std::abs(alpha) < 1.0) {
        // d_mu E_nu . E_sigma on the lattice, evaluated at two longitudes
        const Embedding e = build_embedding(Deformation::from_alpha(alpha));
        const auto E = tangent_basis(e);
        for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n) {
                Vec3TP dE;
                for (int k = 0; k < 3; ++k) dE[k] = m == 0 ? E[n][k].dx() : E[n][k].dy();
                for (int s = 0; s < 2; ++s) {
                    const TrigPoly p = dot(dE, E[s], e.d);
                    for (double y : {0.3, 2.1})
                        r.lower_violation =
                            std::max(r.lower_violation, std::abs(p.eval(x, y) - c.lower[m][n][s]));
                }
            }
    }
    return r;
}

Curvature riemann_ricci(double x, double alpha)
{
    using LD = long double;
    closed::curvature_den<double>(x, alpha);
    const LD X = x, A = alpha;
    return assemble_curvature<LD>(closed::gamma_upper<LD>(X, A), closed::gamma_upper_dx<LD>(X, A),
                                  inverse_metric_t<LD>(X, A));
}

Curvature riemann_ricci_fd(double x, double alpha, double step)
{
    closed::curvature_den<double>(x, alpha);
    const auto d1 = central_difference(x, alpha, step);
    const auto d2 = central_difference(x, alpha, step / 2.0);
    Gamma3<double> dG{};
    for (int s = 0; s < 2; ++s)
        for (int m = 0; m < 2; ++m)
            for (int n = 0; n < 2; ++n) dG[s][m][n] = (4.0 * d2[s][m][n] - d1[s][m][n]) / 3.0;
    return assemble_curvature<double>(closed::gamma_upper<double>(x, alpha), dG, inverse_metric_t<double>(x, alpha));
}

Curvature ricci_closed(double x, double alpha)
{
    // long double: den = alpha^2 (1 + 2 cos 2x) - 1 cancels near the poles and enters cubed
    const auto r = closed::ricci_closed<long double>(x, alpha);
    Curvature c;
    c.ricci << double(r[0]), double(r[1]), double(r[2]), double(r[3]);
    c.scalar_R = double(r[4]);
    return c;
}

double scalar_R_imaginary(double x, double hbar)
{
    if (std::abs(std::cos(hbar)) <= 1e-14) throw SingularityError("tan(hbar) has a pole");
    const double ab = std::tan(hbar), ab2 = ab * ab, c2 = std::cos(2.0 * x);
    const double den = ab2 + 2.0 * ab2 * c2 + 1.0;
    if (std::abs(den) <= 1e-14) throw SingularityError("imaginary-h curvature denominator vanishes");
    return 2.0 * (ab2 * ab2 - 1.0) * (3.0 * ab2 + 2.0 * ab2 * c2 - 1.0) / (den * den * den);
}

std::vector<double> singularity_locus(double alpha)
{
    if (!(std::abs(alpha) <= 1.0)) throw InvalidArgument("singularity_locus: |alpha| <= 1 required");
    if (alpha == 0.0) return {};
    const double q = (1.0 - alpha * alpha) / (2.0 * alpha * alpha);
    if (std::abs(q) > 1.0) return {};
    const double x0 = 0.5 * std::acos(q);
    if (x0 == pi / 2) return {x0};
    return {x0, pi - x0};
}

SignScan curvature_sign_scan(double alpha, int grid)
{
    if (grid < 2) throw InvalidArgument("curvature_sign_scan: grid >= 2 required");
    const auto sing = singularity_locus(alpha);
    SignScan scan;
    for (int k = 0; k < grid; ++k) {
        const double x = pi * k / grid;
        if (std::any_of(sing.begin(), sing.end(), [x](double s) { return std::abs(x - s) < 1e-6; })) continue;
        double R;
        try {
            R = closed::ricci_closed<double>(x, alpha)[4];
        } catch (const SingularityError&) {
            continue;
        }
        const int sign = R > 0 ? 1 : (R < 0 ? -1 : 0);
        if (!scan.rows.empty() && scan.rows.back().sign * sign < 0)
            scan.sign_changes.push_back(0.5 * (scan.rows.back().x + x));
        scan.rows.push_back({x, R, sign});
    }
    return scan;
}

GeometryAt geometry_at(double x, double alpha)
{
    GeometryAt g;
    g.x = x;
    g.alpha = alpha;
    g.g = metric_closed(x, alpha);
    const InverseMetric im = inverse_metric(x, alpha);
    g.ginv = im.ginv;
    g.d_alpha = im.d_alpha;
    g.gamma_lower = closed::gamma_lower<double>(x, alpha);
    g.gamma_upper = closed::gamma_upper<double>(x, alpha);
    const Curvature c = ricci_closed(x, alpha);
    g.ricci = c.ricci;
    g.scalar_R = c.scalar_R;
    return g;
}

} // namespace ncsphere
