#pragma once

// Second-order forward-mode jets: value, first and second derivative with
// respect to one scalar variable. T is double or std::complex<double>.

#include <cmath>
#include <complex>

namespace ncsphere {

template <class T>
struct Jet {
    T v{}, d1{}, d2{};

    Jet() = default;
    Jet(T value) : v(value) {}
    Jet(T value, T first, T second) : v(value), d1(first), d2(second) {}

    static Jet variable(T x) { return Jet(x, T(1), T(0)); }

    Jet& operator+=(const Jet& o) { v += o.v; d1 += o.d1; d2 += o.d2; return *this; }
    Jet& operator-=(const Jet& o) { v -= o.v; d1 -= o.d1; d2 -= o.d2; return *this; }
    Jet& operator*=(const Jet& o) { *this = *this * o; return *this; }
    Jet& operator/=(const Jet& o) { *this = *this / o; return *this; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(const Jet& a) { return Jet(-a.v, -a.d1, -a.d2); }
    friend Jet operator*(const Jet& a, const Jet& b)
    {
        return Jet(a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + T(2) * a.d1 * b.d1 + a.v * b.d2);
    }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

    friend Jet operator+(Jet a, const T& s) { a.v += s; return a; }
    friend Jet operator+(const T& s, Jet a) { a.v += s; return a; }
    friend Jet operator-(Jet a, const T& s) { a.v -= s; return a; }
    friend Jet operator-(const T& s, const Jet& a) { return Jet(s - a.v, -a.d1, -a.d2); }
    friend Jet operator*(const Jet& a, const T& s) { return Jet(a.v * s, a.d1 * s, a.d2 * s); }
    friend Jet operator*(const T& s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, const T& s) { return Jet(a.v / s, a.d1 / s, a.d2 / s); }
    friend Jet operator/(const T& s, const Jet& a) { return s * reciprocal(a); }

    // chain rule for a scalar function with derivatives f0, f1, f2 at v
    static Jet compose(const Jet& u, T f0, T f1, T f2)
    {
        return Jet(f0, f1 * u.d1, f2 * u.d1 * u.d1 + f1 * u.d2);
    }

    friend Jet reciprocal(const Jet& a)
    {
        T r = T(1) / a.v;
        return compose(a, r, -r * r, T(2) * r * r * r);
    }
    friend Jet sin(const Jet& a)
    {
        using std::sin; using std::cos;
        T s = sin(a.v), c = cos(a.v);
        return compose(a, s, c, -s);
    }
    friend Jet cos(const Jet& a)
    {
        using std::sin; using std::cos;
        T s = sin(a.v), c = cos(a.v);
        return compose(a, c, -s, -c);
    }
    friend Jet tan(const Jet& a)
    {
        using std::tan;
        T t = tan(a.v), sec2 = T(1) + t * t;
        return compose(a, t, sec2, T(2) * t * sec2);
    }
    friend Jet exp(const Jet& a)
    {
        using std::exp;
        T e = exp(a.v);
        return compose(a, e, e, e);
    }
    friend Jet log(const Jet& a)
    {
        using std::log;
        T r = T(1) / a.v;
        return compose(a, log(a.v), r, -r * r);
    }
    friend Jet sqrt(const Jet& a)
    {
        using std::sqrt;
        T s = sqrt(a.v);
        return compose(a, s, T(0.5) / s, T(-0.25) / (s * a.v));
    }
    friend Jet atanh(const Jet& a)
    {
        using std::atanh;
        T q = T(1) / (T(1) - a.v * a.v);
        return compose(a, atanh(a.v), q, T(2) * a.v * q * q);
    }
    friend Jet pow(const Jet& a, int n)
    {
        if (n == 0) return Jet(T(1));
        if (n < 0) return reciprocal(pow(a, -n));
        Jet r = a;
        for (int k = 1; k < n; ++k) r = r * a;
        return r;
    }
};

using cplx = std::complex<double>;
using CJet = Jet<cplx>;

} // namespace ncsphere
