#include "ncsphere/starprod.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "ncsphere/errors.hpp"

namespace ncsphere {

namespace {

const cplx I(0.0, 1.0);

double sample_violation(const TrigPoly& lhs, const TrigPoly& rhs,
                        const std::vector<std::pair<double, double>>& samples)
{
    TrigPoly diff = lhs - rhs;
    double v = diff.norm();
    for (const auto& [x, y] : samples) v = std::max(v, std::abs(lhs.eval(x, y) - rhs.eval(x, y)));
    return v;
}

TrigPoly random_trig(std::mt19937_64& rng, int terms, int max_freq)
{
    std::uniform_int_distribution<int> freq(-max_freq, max_freq);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    TrigPoly p;
    for (int k = 0; k < terms; ++k)
        p += TrigPoly::monomial(freq(rng), freq(rng), cplx(coef(rng), coef(rng)));
    return p;
}

TrigPoly random_trig_x(std::mt19937_64& rng, int terms, int max_freq)
{
    std::uniform_int_distribution<int> freq(-max_freq, max_freq);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    TrigPoly p;
    for (int k = 0; k < terms; ++k) p += TrigPoly::monomial(freq(rng), 0, cplx(coef(rng), coef(rng)));
    return p;
}

TrigPoly random_trig_y(std::mt19937_64& rng, int terms, int max_freq)
{
    std::uniform_int_distribution<int> freq(-max_freq, max_freq);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    TrigPoly p;
    for (int k = 0; k < terms; ++k) p += TrigPoly::monomial(0, freq(rng), cplx(coef(rng), coef(rng)));
    return p;
}

void require_shift(const AnalyticFn1D& F, cplx x, double shift, const char* what)
{
    F.require_strip(std::abs(x.imag()) + std::abs(shift), what);
}

} // namespace

TrigPoly star_lattice(const TrigPoly& f, const TrigPoly& g, const Deformation& d)
{
    const cplx h = d.h();
    std::map<TrigPoly::Key, std::vector<cplx>> parts;
    for (const auto& [kf, cf] : f.terms())
        for (const auto& [kg, cg] : g.terms()) {
            const int k = kf.first * kg.second - kf.second * kg.first;
            cplx c = cf * cg;
            if (k != 0) c *= std::exp(-h * double(k));
            parts[{kf.first + kg.first, kf.second + kg.second}].push_back(c);
        }
    return TrigPoly::from_contributions(parts);
}

TrigPoly star_series(const TrigPoly& f, const TrigPoly& g, const Deformation& d, int order)
{
    if (order < 0) throw InvalidArgument("star_series: order must be >= 0");
    const cplx h = d.h();
    // df[i][j] = dx^i dy^j f
    std::vector<std::vector<TrigPoly>> df(order + 1), dg(order + 1);
    for (int i = 0; i <= order; ++i) {
        TrigPoly fx = f.dx(i), gx = g.dx(i);
        for (int j = 0; i + j <= order; ++j) {
            df[i].push_back(fx.dy(j));
            dg[i].push_back(gx.dy(j));
        }
    }
    TrigPoly out;
    cplx hn = 1.0;
    double nfact = 1.0;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) {
            hn *= h;
            nfact *= n;
        }
        double binom = 1.0; // n! / (p! (n-p)!)
        TrigPoly level;
        for (int p = 0; p <= n; ++p) {
            if (p > 0) binom = binom * (n - p + 1) / p;
            const double sign = (p % 2 == 0) ? 1.0 : -1.0;
            level += (sign * binom) * (df[n - p][p] * dg[p][n - p]);
        }
        out += (hn / nfact) * level;
    }
    return out;
}

TrigPoly basis_f(int m)
{
    switch (m) {
    case 1: return TrigPoly::sin_x() * TrigPoly::sin_y();
    case 2: return TrigPoly::sin_x() * TrigPoly::cos_y();
    case 3: return TrigPoly::cos_x() * TrigPoly::sin_y();
    case 4: return TrigPoly::cos_x() * TrigPoly::cos_y();
    default: throw InvalidArgument("basis_f: index must be in 1..4");
    }
}

cplx star_F_basis(const AnalyticFn1D& F, int m, const Deformation& d, double x, double y, Side side)
{
    if (m < 1 || m > 4) throw InvalidArgument("star_F_basis: index must be in 1..4");
    const cplx h = side == Side::Left ? d.h() : -d.h();
    require_shift(F, x, std::abs(h), "star_F_basis");
    const int p = (m % 2 == 0) ? 1 : -1;
    const int m2 = m - p;
    const cplx fm = basis_f(m).eval(x, y), fm2 = basis_f(m2).eval(x, y);
    const cplx Fp = F(x + I * h), Fm = F(x - I * h);
    return 0.5 * Fp * (fm + I * double(p) * fm2) + 0.5 * Fm * (fm - I * double(p) * fm2);
}

std::pair<cplx, cplx> star_F_trigmode(const AnalyticFn1D& F, TrigMode mode, int n, const Deformation& d,
                                      double x, Side side)
{
    if (n < 1) throw InvalidArgument("star_F_trigmode: mode number must be >= 1");
    // c_n * F equals F *_{-h} c_n, so the right side swaps F_+ and F_-.
    const cplx h = side == Side::Left ? d.h() : -d.h();
    require_shift(F, x, std::abs(double(n) * h), "star_F_trigmode");
    const cplx Fp = F(x + I * double(n) * h), Fm = F(x - I * double(n) * h);
    if (mode == TrigMode::Cos) return {0.5 * (Fp + Fm), 0.5 * I * (Fp - Fm)};
    return {0.5 * I * (Fm - Fp), 0.5 * (Fp + Fm)};
}

cplx shift_cos(const AnalyticFn1D& F, int k, cplx h, cplx x)
{
    if (k == 0) return F(x);
    require_shift(F, x, std::abs(double(k) * h), "shift operator");
    const cplx s = I * double(k) * h;
    return 0.5 * (F(x + s) + F(x - s));
}

cplx shift_sin(const AnalyticFn1D& F, int k, cplx h, cplx x)
{
    if (k == 0) return 0.0;
    require_shift(F, x, std::abs(double(k) * h), "shift operator");
    const cplx s = I * double(k) * h;
    return (F(x + s) - F(x - s)) / (2.0 * I);
}

ReducedProducts reduced_products(const AnalyticFn1D& F, const AnalyticFn1D& G, int n, int m,
                                 const Deformation& d, cplx x)
{
    if (n < 0 || m < 0) throw InvalidArgument("reduced_products: mode numbers must be >= 0");
    const cplx h = d.h();
    const cplx cF = shift_cos(F, m, h, x), sF = shift_sin(F, m, h, x);
    const cplx cG = shift_cos(G, n, h, x), sG = shift_sin(G, n, h, x);
    return {cF * cG, -sF * cG, cF * sG, -sF * sG};
}

double IdentityReport::max_violation() const
{
    double v = 0.0;
    for (const auto& c : checks) v = std::max(v, c.violation);
    return v;
}

IdentityReport verify_identities(const Deformation& d, const std::vector<std::pair<double, double>>& samples)
{
    IdentityReport rep;
    const Deformation dm = d.flipped();
    std::array<TrigPoly, 5> f;
    for (int m = 1; m <= 4; ++m) f[m] = basis_f(m);

    // f *_h g = g *_{-h} f
    std::mt19937_64 rng(20240917);
    double flip = 0.0;
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m)
            flip = std::max(flip, sample_violation(star_lattice(f[n], f[m], d), star_lattice(f[m], f[n], dm), samples));
    for (int k = 0; k < 8; ++k) {
        TrigPoly a = random_trig(rng, 5, 3), b = random_trig(rng, 5, 3);
        flip = std::max(flip, sample_violation(star_lattice(a, b, d), star_lattice(b, a, dm), samples));
    }
    rep.checks.push_back({"flip f*_h g = g*_{-h} f", flip});

    // f(x) * [g1(x) g2(y)] = g1(x) [f(x) * g2(y)]
    // (f1(x) f2(y)) * g(y) = (f1(x) * g(y)) f2(y)
    double mixed_left = 0.0, mixed_right = 0.0;
    for (int k = 0; k < 8; ++k) {
        TrigPoly fx = random_trig_x(rng, 4, 3), g1 = random_trig_x(rng, 4, 3), g2 = random_trig_y(rng, 4, 3);
        mixed_left = std::max(mixed_left,
                              sample_violation(star_lattice(fx, g1 * g2, d), g1 * star_lattice(fx, g2, d), samples));
        TrigPoly f1 = random_trig_x(rng, 4, 3), f2 = random_trig_y(rng, 4, 3), gy = random_trig_y(rng, 4, 3);
        mixed_right = std::max(mixed_right,
                               sample_violation(star_lattice(f1 * f2, gy, d), star_lattice(f1, gy, d) * f2, samples));
    }
    rep.checks.push_back({"mixed-variable f(x)*[g1(x)g2(y)]", mixed_left});
    rep.checks.push_back({"mixed-variable [f1(x)f2(y)]*g(y)", mixed_right});

    // f(sX) *_h g(sX) = (f *_{h'} g)(sX), h' = sigma sigmat h
    double rescale = 0.0;
    const int sigmas[][2] = {{2, 3}, {1, 2}, {3, 1}, {-1, 2}};
    for (const auto& s : sigmas) {
        const Deformation dp = Deformation::complex_h(double(s[0] * s[1]) * d.h());
        for (int n = 1; n <= 4; ++n)
            for (int m = 1; m <= 4; ++m)
                rescale = std::max(rescale, sample_violation(star_lattice(f[n].rescaled(s[0], s[1]),
                                                                          f[m].rescaled(s[0], s[1]), d),
                                                             star_lattice(f[n], f[m], dp).rescaled(s[0], s[1]),
                                                             samples));
    }
    rep.checks.push_back({"rescaling", rescale});

    // (x,y) -> (pi/2-x, pi/2-y) permutes f1<->f4, f2<->f3 and commutes with *
    double perm = 0.0;
    for (int n = 1; n <= 4; ++n)
        for (int m = 1; m <= 4; ++m)
            perm = std::max(perm, sample_violation(star_lattice(f[n], f[m], d).shift_reflected(),
                                                   star_lattice(f[5 - n], f[5 - m], d), samples));
    rep.checks.push_back({"shift-permutation covariance", perm});
    return rep;
}

} // namespace ncsphere
