#pragma once

#include <array>
#include <functional>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "ncsphere/analytic_fn.hpp"
#include "ncsphere/deformation.hpp"
#include "ncsphere/geometry.hpp"
#include "ncsphere/jet.hpp"
#include "ncsphere/trig_poly.hpp"

namespace ncsphere {

// Index conventions: mu, sigma, rho are 0-based here (0 -> x, 1 -> y);
// mode numbers n, m, p are the Fourier frequencies in y (>= 1 for c_n, s_n).

// ---------------------------------------------------------------- harmonics

// P_{l,m}(cos x) written through (c, s) = (cos x, sin x), Condon-Shortley phase,
// so it is entire in x. Negative m: P_{l,-m} = (-1)^m (l-m)!/(l+m)! P_{l,m}.
template <class T>
T assoc_legendre(int l, int m, const T& c, const T& s);

// sqrt((2l+1)/(4 pi) (l-|m|)!/(l+|m|)!)
double harmonic_norm(int l, int m);

// V^mu = sum_{l,m} C Y_l^m + conj, C = (a + i b)/2, Y_l^m = k_{l,m} P_{l,m}(cos x) e^{imy}
struct HarmonicCoeffs {
    // (mu, l, m) -> (a, b); b is ignored for m = 0
    std::map<std::tuple<int, int, int>, std::pair<double, double>> entries;
    void add(int mu, int l, int m, double a, double b = 0.0);
};

// ---------------------------------------------------------------- mode sets

// V^mu(x, y) = v0[mu](x) + sum_{n=1}^N vc[mu][n-1](x) cos ny + vs[mu][n-1](x) sin ny
struct ModeSet {
    int N = 0;
    std::array<AnalyticFn1D, 2> v0;
    std::array<std::vector<AnalyticFn1D>, 2> vc, vs;

    static ModeSet zeros(int N);
    const AnalyticFn1D& c(int mu, int n) const { return vc[mu][n - 1]; }
    const AnalyticFn1D& s(int mu, int n) const { return vs[mu][n - 1]; }
    // true when some vc/vs entry of frequency n is not identically zero
    bool active(int n) const;
    cplx value(int mu, cplx x, cplx y) const;
    // zero-padded to a larger truncation
    ModeSet padded(int new_N) const;
    ModeSet scaled(double lambda) const;
};

ModeSet harmonics_to_modes(const HarmonicCoeffs& hc, int N);

// Gamma^sigma_{mu rho}(z) as [sigma][mu][rho]
using ConnectionFn = std::function<Gamma3<cplx>(cplx)>;
// the sphere's connection (closed form, analytically continued)
ConnectionFn sphere_connection(double alpha);
// x-only trigonometric surrogate connection, exact on the plane-wave lattice
using TrigConnection = std::array<std::array<std::array<TrigPoly, 2>, 2>, 2>;
ConnectionFn trig_connection(const TrigConnection& g);

// ---------------------------------------------------------------- mode functions

using SigmaMu = std::array<std::array<cplx, 2>, 2>; // [sigma][mu]

struct ModeFunctions {
    SigmaMu c0;                 // C^sigma_{0,mu}
    std::vector<SigmaMu> cm, sm; // C^sigma_{m,mu}, S^sigma_{m,mu}, index m-1
};

// C_0 = delta_mu^x d V_0 + V_0^rho Gamma(x);
// C_m, S_m carry m delta_mu^y V_{S/C,m} and the half sums of Gamma at x +- imh.
// An empty connection selects sphere_connection(alpha).
ModeFunctions mode_functions(const ModeSet& ms, const Deformation& d, cplx x, const ConnectionFn& conn = {});

// Fourier coefficients in y of Sigma-hat^sigma at a (complex) point x:
// Sigma-hat(x, y) = sum_{K=-2N}^{2N} coeff[sigma][K + 2N] e^{iKy}.
// Built from the exponential modes V_k e^{iky} with the exact shift rule
// (S e^{iky}) * (G e^{ily}) = S(x + ilh) G(x - ikh) e^{i(k+l)y}.
struct SigmaHatSeries {
    int N = 0;
    std::array<std::vector<cplx>, 2> coeff;
    cplx operator()(int sigma, cplx y) const;
};
SigmaHatSeries sigma_hat_series(const ModeSet& ms, const Deformation& d, cplx x, const ConnectionFn& conn = {});
std::array<cplx, 2> sigma_hat_direct(const ModeSet& ms, const Deformation& d, cplx x, cplx y,
                                     const ConnectionFn& conn = {});

// y-independent part Sigma^sigma(x) = V_0^mu C^sigma_{0,mu}
std::array<cplx, 2> sigma_zero(const ModeSet& ms, const Deformation& d, cplx x, const ConnectionFn& conn = {});

// B_1..B_6 for (n, m), per sigma: result[sigma][j-1]. B_1, B_2 do not depend on n.
// Every B vanishes for m = 0, m > N or inactive modes; B_3..B_6 also for n = 0.
using BArray = std::array<std::array<cplx, 6>, 2>;
BArray b_functions(const ModeSet& ms, const Deformation& d, cplx x, int n, int m, const ConnectionFn& conn = {});

// Sigma-hat rebuilt from the B's:
// Sigma + sum_m (c_m B1 - s_m B2)/2 + sum_{n,m} (c_n c_m B3 + c_n s_m B4 + s_n c_m B5 + s_n s_m B6)
std::array<cplx, 2> sigma_hat_from_b(const ModeSet& ms, const Deformation& d, double x, double y,
                                     const ConnectionFn& conn = {});

// M_1, M_2 at frequency q (q = 0 allowed), per sigma
std::pair<std::array<cplx, 2>, std::array<cplx, 2>> m_functions(const ModeSet& ms, const Deformation& d, cplx x, int q,
                                                                const ConnectionFn& conn = {});

struct BKLMBundle {
    int p = 1;
    // per sigma; K, L at p - 1 (first pair) and p + 1 (second pair)
    std::array<cplx, 2> K1, K2, L1, L2;
    std::array<cplx, 2> K3, K4, L3, L4;
    // at p, unshifted
    std::array<cplx, 2> B1, B2, M1, M2;
    // Sigma(x + ih), Sigma(x - ih)
    std::array<cplx, 2> sigma_plus, sigma_minus;
};

// With M+-_q = (M1 +- i M2)_q and shifted points x +- ih:
//   K1_q = -[M-_q(x+ih) + M+_q(x-ih)],   K2_q = -i M-_q(x+ih) + i M+_q(x-ih)
//   K4_q =  M+_q(x+ih) + M-_q(x-ih),      K3_q = -M+_q(x+ih) + M-_q(x-ih)
//   L1 = (B1+iB2)(x+ih) + (B1-iB2)(x-ih),  L2 = -i(B1+iB2)(x+ih) + i(B1-iB2)(x-ih)
//   L4 = (B1-iB2)(x+ih) + (B1+iB2)(x-ih),  L3 = -(B1-iB2)(x+ih) + (B1+iB2)(x-ih)
BKLMBundle klm_functions(const ModeSet& ms, const Deformation& d, double x, int p, const ConnectionFn& conn = {});

// The six p-mode residuals; each equals its raw y-integral:
//   R1 = int c_p (Sh^1_[p-1] * f4 - Sh^2_[p-1] * f1) dy,  R2 the same with s_p,
//   R3, R4 the same with the [p+1] band,
//   R5 = int c_p Sh^1 * sin x dy,  R6 = int s_p Sh^1 * sin x dy,
// where Sh_[q] keeps the cos qy, sin qy part of Sigma-hat.
std::array<cplx, 6> p_mode_residuals(const BKLMBundle& b, double x, const Deformation& d);
std::array<cplx, 6> p_mode_residuals(const ModeSet& ms, const Deformation& d, double x, int p,
                                     const ConnectionFn& conn = {});

// (M1^1_p + B1^1_p, M2^1_p - B2^1_p)
std::pair<cplx, cplx> mode_constraints(const ModeSet& ms, const Deformation& d, double x, int p,
                                       const ConnectionFn& conn = {});

// ---------------------------------------------------------------- templates

template <class T>
T assoc_legendre(int l, int m, const T& c, const T& s)
{
    if (l < 0 || std::abs(m) > l) return T(0.0);
    if (m < 0) {
        const int k = -m;
        double r = (k % 2 ? -1.0 : 1.0);
        for (int i = l - k + 1; i <= l + k; ++i) r /= i;
        return assoc_legendre(l, k, c, s) * T(r);
    }
    // P_mm = (-1)^m (2m-1)!! s^m
    T pmm(1.0);
    for (int i = 1; i <= m; ++i) pmm = pmm * s * T(-(2.0 * i - 1.0));
    if (l == m) return pmm;
    T pm1 = c * pmm * T(2.0 * m + 1.0);
    if (l == m + 1) return pm1;
    T pl(0.0);
    for (int ll = m + 2; ll <= l; ++ll) {
        pl = (c * pm1 * T(2.0 * ll - 1.0) - pmm * T(double(ll + m - 1))) / T(double(ll - m));
        pmm = pm1;
        pm1 = pl;
    }
    return pl;
}

} // namespace ncsphere
