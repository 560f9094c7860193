#pragma once

#include <array>

#include "ncsphere/modes.hpp"
#include "ncsphere/starprod.hpp"

namespace ncsphere {

// Brute-force y-quadrature of the p-mode integrals, independent of the
// B/K/L/M assembly. Sigma-hat is sampled on a uniform y grid; band filtering
// uses quadrature Fourier coefficients; the star product with a plane wave
// e^{i(ax+by)} is the shift (x + ibh, y - iah), and the imaginary y shift is
// moved onto the weight by a contour shift, so only real-y samples are used.

// int w(y) (Sigma-hat^sigma_[q] * f)(x, y) dy with w = c_p or s_p;
// q < 0 keeps the full Sigma-hat.
cplx star_fourier_integral(const ModeSet& ms, const Deformation& d, double x, int sigma, int q, const TrigPoly& f,
                           TrigMode weight, int p, int points = 512, const ConnectionFn& conn = {});

// The six integrals matched by p_mode_residuals.
std::array<cplx, 6> p_mode_oracle(const ModeSet& ms, const Deformation& d, double x, int p, int points = 512,
                                  const ConnectionFn& conn = {});

} // namespace ncsphere
