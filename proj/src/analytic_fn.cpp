#include "ncsphere/analytic_fn.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ncsphere/errors.hpp"
#include "ncsphere/trig_poly.hpp"

namespace ncsphere {

AnalyticFn1D::AnalyticFn1D(Fn eval, std::optional<Fn> deriv, std::optional<Fn> deriv2, double strip)
    : f_(std::move(eval)), d1_(std::move(deriv)), d2_(std::move(deriv2)), strip_(strip)
{
    if (!f_) throw InvalidArgument("AnalyticFn1D: empty evaluator");
    if (!(strip >= 0.0)) throw InvalidArgument("AnalyticFn1D: strip half-width must be >= 0");
}

AnalyticFn1D AnalyticFn1D::constant(cplx c)
{
    AnalyticFn1D f([c](cplx) { return c; }, Fn([](cplx) { return cplx(0.0); }),
                   Fn([](cplx) { return cplx(0.0); }), entire);
    f.zero_ = (c == cplx(0.0));
    return f;
}

AnalyticFn1D AnalyticFn1D::from_trig(const TrigPoly& p)
{
    if (p.depends_on_y()) throw InvalidArgument("AnalyticFn1D::from_trig: polynomial depends on y");
    if (p.is_zero()) return zero();
    std::vector<std::pair<double, cplx>> terms;
    for (const auto& [k, c] : p.terms()) terms.emplace_back(double(k.first), c);
    return from_jet([terms](const CJet& z) {
        CJet s(0.0);
        for (const auto& [a, c] : terms) s += c * exp(cplx(0.0, a) * z);
        return s;
    });
}

AnalyticFn1D AnalyticFn1D::cos_k(double k)
{
    return from_jet([k](const CJet& z) { return cos(cplx(k) * z); });
}

AnalyticFn1D AnalyticFn1D::sin_k(double k)
{
    return from_jet([k](const CJet& z) { return sin(cplx(k) * z); });
}

cplx AnalyticFn1D::operator()(cplx z) const { return f_(z); }

cplx AnalyticFn1D::deriv(cplx z) const
{
    if (!d1_) throw InvalidArgument("AnalyticFn1D: no first derivative supplied");
    return (*d1_)(z);
}

cplx AnalyticFn1D::deriv2(cplx z) const
{
    if (!d2_) throw InvalidArgument("AnalyticFn1D: no second derivative supplied");
    return (*d2_)(z);
}

void AnalyticFn1D::require_strip(double im, const char* what) const
{
    if (std::abs(im) > strip_ * (1.0 + 1e-12))
        throw DomainError(std::string(what) + ": shift |Im z| = " + std::to_string(std::abs(im)) +
                          " leaves the analyticity strip " + std::to_string(strip_));
}

} // namespace ncsphere
