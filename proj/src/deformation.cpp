#include "ncsphere/deformation.hpp"

#include <cmath>

#include "ncsphere/errors.hpp"

namespace ncsphere {

Deformation::Deformation(cplx h, DeformationMode mode) : h_(h), alpha_(std::tanh(h)), mode_(mode) {}

Deformation Deformation::real(double h)
{
    if (!std::isfinite(h)) throw InvalidArgument("deformation: h must be finite");
    return Deformation(cplx(h, 0.0), DeformationMode::RealH);
}

Deformation Deformation::imaginary(double hbar)
{
    if (!std::isfinite(hbar)) throw InvalidArgument("deformation: hbar must be finite");
    return Deformation(cplx(0.0, hbar), DeformationMode::ImaginaryH);
}

Deformation Deformation::from_alpha(double alpha)
{
    if (!(std::abs(alpha) < 1.0)) throw DomainError("deformation: |alpha| < 1 required to recover h");
    Deformation d = real(std::atanh(alpha));
    d.alpha_ = alpha;
    return d;
}

Deformation Deformation::complex_h(cplx h)
{
    if (h.imag() == 0.0) return real(h.real());
    if (h.real() == 0.0) return imaginary(h.imag());
    return Deformation(h, DeformationMode::General);
}

double Deformation::h_real() const
{
    if (mode_ != DeformationMode::RealH) throw InvalidArgument("deformation: real h required");
    return h_.real();
}

double Deformation::alpha_real() const
{
    if (mode_ != DeformationMode::RealH) throw InvalidArgument("deformation: real h required");
    return alpha_.real();
}

double Deformation::alpha_bar() const
{
    if (mode_ != DeformationMode::ImaginaryH || h_.real() != 0.0)
        throw InvalidArgument("deformation: purely imaginary h required");
    return std::tan(h_.imag());
}

} // namespace ncsphere
