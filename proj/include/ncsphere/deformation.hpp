#pragma once

#include <complex>

namespace ncsphere {

using cplx = std::complex<double>;

// General: both Re h and Im h nonzero; only the lattice engine accepts it.
enum class DeformationMode { RealH, ImaginaryH, General };

// Quantum parameter h with alpha = tanh h. For h = i*hbar the geometry is
// parameterized instead by alpha_bar = tan hbar (alpha = i alpha_bar).
class Deformation {
public:
    static Deformation real(double h);
    static Deformation imaginary(double hbar);
    // h = atanh(alpha); requires |alpha| < 1
    static Deformation from_alpha(double alpha);
    // general complex h; mode is RealH only when Im h == 0
    static Deformation complex_h(cplx h);

    cplx h() const { return h_; }
    cplx alpha() const { return alpha_; }
    DeformationMode mode() const { return mode_; }

    double h_real() const;       // throws unless RealH
    double alpha_real() const;   // throws unless RealH
    double alpha_bar() const;    // throws unless ImaginaryH

    // The same deformation with h -> -h (left/right duality).
    Deformation flipped() const { return complex_h(-h_); }

private:
    Deformation(cplx h, DeformationMode mode);
    cplx h_;
    cplx alpha_;
    DeformationMode mode_;
};

} // namespace ncsphere
