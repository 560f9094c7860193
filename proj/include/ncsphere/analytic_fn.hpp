#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <utility>

#include "ncsphere/jet.hpp"

namespace ncsphere {

class TrigPoly;

// Univariate function holomorphic on the strip |Im z| <= strip().
class AnalyticFn1D {
public:
    using Fn = std::function<cplx(cplx)>;
    static constexpr double entire = std::numeric_limits<double>::infinity();

    AnalyticFn1D() = default;
    AnalyticFn1D(Fn eval, std::optional<Fn> deriv, std::optional<Fn> deriv2, double strip);

    // Wraps a generic callable usable on CJet; derivatives come from the jets.
    template <class F>
    static AnalyticFn1D from_jet(F f, double strip = entire)
    {
        auto g = std::make_shared<F>(std::move(f));
        return AnalyticFn1D(
            [g](cplx z) { return (*g)(CJet(z)).v; },
            Fn([g](cplx z) { return (*g)(CJet::variable(z)).d1; }),
            Fn([g](cplx z) { return (*g)(CJet::variable(z)).d2; }),
            strip);
    }

    static AnalyticFn1D constant(cplx c);
    static AnalyticFn1D zero() { return constant(0.0); }
    // x-only trig polynomial (b = 0 terms); throws if it depends on y
    static AnalyticFn1D from_trig(const TrigPoly& p);
    static AnalyticFn1D cos_k(double k);
    static AnalyticFn1D sin_k(double k);

    cplx operator()(cplx z) const;
    cplx deriv(cplx z) const;
    cplx deriv2(cplx z) const;
    bool has_deriv() const { return static_cast<bool>(d1_); }
    bool has_deriv2() const { return static_cast<bool>(d2_); }
    double strip() const { return strip_; }
    bool is_zero() const { return zero_; }

    // throws DomainError when |im| exceeds the strip
    void require_strip(double im, const char* what) const;

private:
    Fn f_;
    std::optional<Fn> d1_, d2_;
    double strip_ = entire;
    bool zero_ = false;
};

} // namespace ncsphere
