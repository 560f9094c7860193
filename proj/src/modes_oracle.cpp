#include "ncsphere/modes_oracle.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "ncsphere/errors.hpp"

namespace ncsphere {

namespace {

using std::numbers::pi;
const cplx I(0.0, 1.0);

cplx weight_at(TrigMode w, int p, cplx y)
{
    return w == TrigMode::Cos ? std::cos(double(p) * y) : std::sin(double(p) * y);
}

} // namespace

cplx star_fourier_integral(const ModeSet& ms, const Deformation& d, double x, int sigma, int q, const TrigPoly& f,
                           TrigMode weight, int p, int points, const ConnectionFn& conn)
{
    if (points < 8) throw InvalidArgument("star_fourier_integral: need at least 8 quadrature points");
    if (sigma != 0 && sigma != 1) throw InvalidArgument("star_fourier_integral: sigma must be 0 or 1");
    const double h = d.h_real();
    const double dy = 2.0 * pi / points;
    std::vector<double> ys(points);
    for (int k = 0; k < points; ++k) ys[k] = k * dy;

    // samples of the (optionally band-filtered) Sigma-hat at real y for a given x-shift b
    auto samples = [&](int b) {
        const SigmaHatSeries S = sigma_hat_series(ms, d, cplx(x, b * h), conn);
        std::vector<cplx> v(points);
        for (int k = 0; k < points; ++k) v[k] = S(sigma, ys[k]);
        if (q < 0) return v;
        cplx a = 0.0, s = 0.0;
        for (int k = 0; k < points; ++k) {
            a += v[k] * std::cos(q * ys[k]);
            s += v[k] * std::sin(q * ys[k]);
        }
        a *= dy / (q == 0 ? 2.0 * pi : pi);
        s *= dy / pi;
        for (int k = 0; k < points; ++k) v[k] = a * std::cos(q * ys[k]) + (q == 0 ? 0.0 : s * std::sin(q * ys[k]));
        return v;
    };

    std::map<int, std::vector<cplx>> cache;
    cplx total = 0.0;
    for (const auto& [key, c] : f.terms()) {
        const auto [a, b] = key;
        auto it = cache.find(b);
        if (it == cache.end()) it = cache.emplace(b, samples(b)).first;
        const std::vector<cplx>& v = it->second;
        // int w(y) F(x+ibh, y-iah) e^{i(ax+by)} dy, shifted y -> u + iah
        cplx acc = 0.0;
        for (int k = 0; k < points; ++k) {
            const cplx u = cplx(ys[k], a * h);
            acc += weight_at(weight, p, u) * std::exp(I * double(b) * u) * v[k];
        }
        total += c * std::exp(I * double(a) * x) * acc * dy;
    }
    return total;
}

std::array<cplx, 6> p_mode_oracle(const ModeSet& ms, const Deformation& d, double x, int p, int points,
                                  const ConnectionFn& conn)
{
    if (p < 1) throw InvalidArgument("p_mode_oracle: p >= 1 required");
    const TrigPoly f1 = basis_f(1), f4 = basis_f(4), sx = TrigPoly::sin_x();
    auto I_ = [&](int sigma, int q, const TrigPoly& f, TrigMode w) {
        return star_fourier_integral(ms, d, x, sigma, q, f, w, p, points, conn);
    };
    std::array<cplx, 6> r;
    r[0] = I_(0, p - 1, f4, TrigMode::Cos) - I_(1, p - 1, f1, TrigMode::Cos);
    r[1] = I_(0, p - 1, f4, TrigMode::Sin) - I_(1, p - 1, f1, TrigMode::Sin);
    r[2] = I_(0, p + 1, f4, TrigMode::Cos) - I_(1, p + 1, f1, TrigMode::Cos);
    r[3] = I_(0, p + 1, f4, TrigMode::Sin) - I_(1, p + 1, f1, TrigMode::Sin);
    r[4] = I_(0, -1, sx, TrigMode::Cos);
    r[5] = I_(0, -1, sx, TrigMode::Sin);
    return r;
}

} // namespace ncsphere
