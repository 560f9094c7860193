#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ncsphere/analytic_fn.hpp"
#include "ncsphere/deformation.hpp"
#include "ncsphere/trig_poly.hpp"

namespace ncsphere {

enum class Side { Left, Right };
enum class TrigMode { Cos, Sin };

// Exact Moyal product on the plane-wave lattice:
// e^{i(a1 x+b1 y)} * e^{i(a2 x+b2 y)} = exp(-h(a1 b2 - b1 a2)) e^{i((a1+a2)x+(b1+b2)y)}.
TrigPoly star_lattice(const TrigPoly& f, const TrigPoly& g, const Deformation& d);

// exp(V) truncated after the h^order term; derivatives taken exactly on the lattice.
TrigPoly star_series(const TrigPoly& f, const TrigPoly& g, const Deformation& d, int order);

// f1 = sin x sin y, f2 = sin x cos y, f3 = cos x sin y, f4 = cos x cos y
TrigPoly basis_f(int m);

// F(x) * f_m (Left) or f_m * F(x) (Right, the h -> -h dual) at a real point.
cplx star_F_basis(const AnalyticFn1D& F, int m, const Deformation& d, double x, double y, Side side);

// Coefficients (of cos ny, of sin ny) of F(x) * c_n / s_n (Left) or c_n / s_n * F(x) (Right).
std::pair<cplx, cplx> star_F_trigmode(const AnalyticFn1D& F, TrigMode mode, int n, const Deformation& d,
                                      double x, Side side);

struct ReducedProducts {
    cplx A1, A2, A3, A4;
};

// x-only residual products of (c_n F) * (c_m G) and its three siblings.
// cos(k h d) and sin(k h d) act as half sums / differences of F(x +- i k h);
// the mode frequency of the partner factor sets the shift.
ReducedProducts reduced_products(const AnalyticFn1D& F, const AnalyticFn1D& G, int n, int m,
                                 const Deformation& d, cplx x);

// Half sum and half difference of shifted values:
//   shift_cos(F, k, h, x) = [F(x+ikh) + F(x-ikh)] / 2
//   shift_sin(F, k, h, x) = [F(x+ikh) - F(x-ikh)] / (2i)
cplx shift_cos(const AnalyticFn1D& F, int k, cplx h, cplx x);
cplx shift_sin(const AnalyticFn1D& F, int k, cplx h, cplx x);

struct IdentityCheck {
    std::string name;
    double violation;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    double max_violation() const;
};

// Flip, mixed-variable, rescaling and shift-permutation identities on
// TrigPoly samples; violations combine coefficient norms and pointwise
// differences at the given sample points.
IdentityReport verify_identities(const Deformation& d, const std::vector<std::pair<double, double>>& samples);

} // namespace ncsphere
