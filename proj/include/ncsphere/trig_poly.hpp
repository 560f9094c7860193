#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

namespace ncsphere {

using cplx = std::complex<double>;

// Finite sum  sum c_ab exp(i(a x + b y))  over integer frequencies.
// Normal form: no stored coefficient with |c| <= prune_tol.
class TrigPoly {
public:
    using Key = std::pair<int, int>;
    using Terms = std::map<Key, cplx>;
    static constexpr double prune_tol = 1e-15;

    TrigPoly() = default;
    explicit TrigPoly(Terms terms);

    static TrigPoly constant(cplx c);
    static TrigPoly monomial(int a, int b, cplx c = 1.0);
    static TrigPoly cos_x(int k = 1);
    static TrigPoly sin_x(int k = 1);
    static TrigPoly cos_y(int k = 1);
    static TrigPoly sin_y(int k = 1);
    // sums each key's contributions in a canonical order
    static TrigPoly from_contributions(const std::map<Key, std::vector<cplx>>& parts);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    cplx coeff(int a, int b) const;

    cplx eval(cplx x, cplx y) const;
    // true when c_{-a,-b} = conj(c_ab) to within tol for every term
    bool is_real(double tol = 1e-13) const;
    bool depends_on_y() const;
    // max |c_ab|
    double norm() const;

    TrigPoly dx(int order = 1) const;
    TrigPoly dy(int order = 1) const;
    // f(sigma x, sigmat y)
    TrigPoly rescaled(int sigma, int sigmat) const;
    // f(pi/2 - x, pi/2 - y)
    TrigPoly shift_reflected() const;
    // f(pi/2 - x, y)
    TrigPoly x_reflected() const;
    TrigPoly conj() const;

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    TrigPoly& operator*=(cplx s);

    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator-(TrigPoly a) { return a *= -1.0; }
    friend TrigPoly operator*(TrigPoly a, cplx s) { return a *= s; }
    friend TrigPoly operator*(cplx s, TrigPoly a) { return a *= s; }
    // ordinary pointwise product
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);

    friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.terms_ == b.terms_; }

private:
    void prune();
    Terms terms_;
};

} // namespace ncsphere
