#include "ncsphere/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace ncsphere {

namespace {

// i^k for any integer k, exactly
cplx ipow(int k)
{
    switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

// (i k)^order, exact for the small integers that occur
cplx ik_pow(int k, int order)
{
    double m = 1.0;
    for (int j = 0; j < order; ++j) m *= k;
    return m * ipow(order);
}

} // namespace

TrigPoly::TrigPoly(Terms terms) : terms_(std::move(terms)) { prune(); }

TrigPoly TrigPoly::constant(cplx c) { return monomial(0, 0, c); }

TrigPoly TrigPoly::monomial(int a, int b, cplx c)
{
    Terms t;
    t[{a, b}] = c;
    return TrigPoly(std::move(t));
}

TrigPoly TrigPoly::cos_x(int k) { return monomial(k, 0, 0.5) + monomial(-k, 0, 0.5); }
TrigPoly TrigPoly::sin_x(int k) { return monomial(k, 0, cplx(0, -0.5)) + monomial(-k, 0, cplx(0, 0.5)); }
TrigPoly TrigPoly::cos_y(int k) { return monomial(0, k, 0.5) + monomial(0, -k, 0.5); }
TrigPoly TrigPoly::sin_y(int k) { return monomial(0, k, cplx(0, -0.5)) + monomial(0, -k, cplx(0, 0.5)); }

void TrigPoly::prune()
{
    std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) <= prune_tol; });
}

cplx TrigPoly::coeff(int a, int b) const
{
    auto it = terms_.find({a, b});
    return it == terms_.end() ? cplx(0.0) : it->second;
}

cplx TrigPoly::eval(cplx x, cplx y) const
{
    const cplx I(0.0, 1.0);
    cplx s = 0.0;
    for (const auto& [k, c] : terms_) s += c * std::exp(I * (double(k.first) * x + double(k.second) * y));
    return s;
}

bool TrigPoly::is_real(double tol) const
{
    for (const auto& [k, c] : terms_)
        if (std::abs(coeff(-k.first, -k.second) - std::conj(c)) > tol) return false;
    return true;
}

bool TrigPoly::depends_on_y() const
{
    return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.second != 0; });
}

double TrigPoly::norm() const
{
    double m = 0.0;
    for (const auto& kv : terms_) m = std::max(m, std::abs(kv.second));
    return m;
}

TrigPoly TrigPoly::dx(int order) const
{
    Terms t;
    for (const auto& [k, c] : terms_) t[k] = c * ik_pow(k.first, order);
    return TrigPoly(std::move(t));
}

TrigPoly TrigPoly::dy(int order) const
{
    Terms t;
    for (const auto& [k, c] : terms_) t[k] = c * ik_pow(k.second, order);
    return TrigPoly(std::move(t));
}

TrigPoly TrigPoly::rescaled(int sigma, int sigmat) const
{
    Terms t;
    for (const auto& [k, c] : terms_) t[{sigma * k.first, sigmat * k.second}] += c;
    return TrigPoly(std::move(t));
}

TrigPoly TrigPoly::shift_reflected() const
{
    // e^{i(a(pi/2-x) + b(pi/2-y))} = i^{a+b} e^{-i(ax+by)}
    Terms t;
    for (const auto& [k, c] : terms_) t[{-k.first, -k.second}] += c * ipow(k.first + k.second);
    return TrigPoly(std::move(t));
}

TrigPoly TrigPoly::x_reflected() const
{
    Terms t;
    for (const auto& [k, c] : terms_) t[{-k.first, k.second}] += c * ipow(k.first);
    return TrigPoly(std::move(t));
}

TrigPoly TrigPoly::conj() const
{
    Terms t;
    for (const auto& [k, c] : terms_) t[{-k.first, -k.second}] = std::conj(c);
    return TrigPoly(std::move(t));
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o)
{
    for (const auto& [k, c] : o.terms_) terms_[k] += c;
    prune();
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o)
{
    for (const auto& [k, c] : o.terms_) terms_[k] -= c;
    prune();
    return *this;
}

TrigPoly& TrigPoly::operator*=(cplx s)
{
    for (auto& kv : terms_) kv.second *= s;
    prune();
    return *this;
}

TrigPoly TrigPoly::from_contributions(const std::map<Key, std::vector<cplx>>& parts)
{
    // Sorting makes the sum independent of operand order, so commuting
    // products compare bit-for-bit.
    Terms t;
    for (const auto& [k, v] : parts) {
        std::vector<cplx> s = v;
        std::sort(s.begin(), s.end(), [](cplx u, cplx w) {
            return u.real() != w.real() ? u.real() < w.real() : u.imag() < w.imag();
        });
        cplx acc = 0.0;
        for (cplx c : s) acc += c;
        t[k] = acc;
    }
    return TrigPoly(std::move(t));
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b)
{
    std::map<TrigPoly::Key, std::vector<cplx>> parts;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) parts[{ka.first + kb.first, ka.second + kb.second}].push_back(ca * cb);
    return TrigPoly::from_contributions(parts);
}

} // namespace ncsphere
