#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "ncsphere/trig_poly.hpp"

namespace testsupport {

using ncsphere::cplx;
using ncsphere::TrigPoly;
inline constexpr double pi = std::numbers::pi;

// fixed seeds keep every run reproducible
inline std::mt19937_64& rng()
{
    static std::mt19937_64 g(20261017);
    return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

// real trig polynomial with |a| <= kx, |b| <= ky and coefficients of size <= scale
inline TrigPoly random_real_poly(int kx, int ky, double scale = 1.0)
{
    TrigPoly::Terms t;
    for (int a = -kx; a <= kx; ++a)
        for (int b = -ky; b <= ky; ++b) {
            if (t.count({a, b})) continue;
            if (a == 0 && b == 0) {
                t[{0, 0}] = uniform(-scale, scale);
                continue;
            }
            const cplx c(uniform(-scale, scale), uniform(-scale, scale));
            t[{a, b}] = c;
            t[{-a, -b}] = std::conj(c);
        }
    return TrigPoly(t);
}

// max |c_ab| of a - b
inline double coeff_dist(const TrigPoly& a, const TrigPoly& b) { return (a - b).norm(); }

// trapezoid rule on a full period, spectrally accurate for trig polynomials
template <class F>
cplx period_integral(F f, int points = 256)
{
    cplx s = 0.0;
    for (int k = 0; k < points; ++k) s += f(2.0 * pi * k / points);
    return s * (2.0 * pi / points);
}

} // namespace testsupport
