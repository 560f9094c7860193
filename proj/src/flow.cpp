#include "ncsphere/flow.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "ncsphere/errors.hpp"
#include "ncsphere/geometry.hpp"

namespace ncsphere {

namespace {

using std::numbers::pi;
const cplx I(0.0, 1.0);

// Closed forms of the zero- and first-order fields, generic over jets.
struct DeviationForms {
    double a0, b0;
    cplx c0, d0;

    template <class J>
    J psi0(const J& x) const
    {
        const J s = sin(x);
        return sqrt(cplx(b0) - cplx(a0) / (s * s));
    }
    template <class J>
    J phi0(const J& x) const
    {
        const J s = sin(x);
        return cplx(std::sqrt(a0)) / (s * s);
    }
    template <class J>
    J eta(const J& x) const
    {
        const J s = sin(x);
        return cplx(2.0) * (cplx(a0) - cplx(b0) * s * s);
    }
    template <class J>
    J omega(const J& x) const
    {
        const J s = sin(x), e = eta(x), p = psi0(x);
        const J beta = e / cplx(b0);
        const J sqrt_eta = I * sqrt(-e);
        const J sqrt_2beta = I * sqrt(cplx(-2.0) * beta);
        const J u = cplx(std::sqrt(2.0)) * s / sqrt(-beta);
        const J at = cplx(pi / 2) - I * atanh(cplx(1.0) / u);
        return d0 * s / sqrt_eta +
               cplx(std::sqrt(a0)) * (cplx(2.0) * c0 * p / e + cplx(1.0) -
                                      sqrt_2beta / s * (cplx(1.0) - cplx(a0) / e) * at);
    }
    template <class J>
    J delta(const J& x) const
    {
        const J s = sin(x), p = psi0(x);
        const J acoth = atanh(p / cplx(std::sqrt(b0))) + cplx(0.0, pi / 2);
        return (c0 - cplx(a0 / std::sqrt(b0)) * acoth - (cplx(1.0) + s * s) * p) / (s * s);
    }
};

void require_params(double a0, double b0)
{
    if (!(a0 >= 0.0)) throw InvalidArgument("zero-order field: a0 >= 0 required");
    if (!(b0 > a0)) throw InvalidArgument("zero-order field: b0 > a0 required (empty domain otherwise)");
}

} // namespace

SigmaPair sigma_eval(const YSymField& f, cplx z, double alpha)
{
    const cplx P = f.psi(z), F = f.phi(z);
    const cplx dP = f.psi.deriv(z), dF = f.phi.deriv(z);
    const cplx a = alpha, a2 = a * a;
    const cplx c2 = std::cos(2.0 * z), s2 = std::sin(2.0 * z);
    const cplx ds = closed::d_alpha<cplx>(z, a) * s2;
    const cplx s1 = P * dP - (a2 * c2 * P * P - a * (a2 - 1.0) * P * F -
                              0.25 * (a2 * a2 - 1.0 + (a2 - 1.0) * (a2 - 1.0) * c2) * F * F) * ds;
    const cplx s2v = P * dF + (a * P * P + (1.0 + a2 - 2.0 * a2 * c2) * P * F +
                               a * (1.0 - 0.5 * (a2 + 1.0) * c2) * F * F) * ds;
    return {s1, s2v};
}

std::pair<cplx, cplx> ysym_residual(const YSymField& f, double x, const Deformation& d)
{
    const double h = d.h_real(), alpha = d.alpha_real();
    auto line = [&](cplx z, double sign) {
        const SigmaPair s = sigma_eval(f, z, alpha);
        return (s.s1 + alpha * s.s2) * std::cos(z) + sign * I * (s.s2 + alpha * s.s1) * std::sin(z);
    };
    return {line(cplx(x, h), 1.0), line(cplx(x, -h), -1.0)};
}

std::pair<cplx, cplx> sysfirst_residual(const YSymField& f, double x, const Deformation& d)
{
    const double h = d.h_real(), alpha = d.alpha_real();
    const SigmaPair p = sigma_eval(f, cplx(x, h), alpha), m = sigma_eval(f, cplx(x, -h), alpha);
    return {p.s1 * std::cos(x) + I * p.s2 * std::sin(x), m.s1 * std::cos(x) - I * m.s2 * std::sin(x)};
}

cplx compatibility(const YSymField& f, double x, const Deformation& d)
{
    const double h = d.h_real(), alpha = d.alpha_real();
    const SigmaPair p = sigma_eval(f, cplx(x, h), alpha), m = sigma_eval(f, cplx(x, -h), alpha);
    return p.s1 * m.s2 + p.s2 * m.s1;
}

YSymField zero_order_solution(double a0, double b0, std::pair<int, int> signs)
{
    require_params(a0, b0);
    if (std::abs(signs.first) != 1 || std::abs(signs.second) != 1)
        throw InvalidArgument("zero_order_solution: signs must be +1 or -1");
    const DeviationForms forms{a0, b0, 0.0, 0.0};
    const double sp = signs.first, sf = signs.second;
    YSymField f;
    f.psi = AnalyticFn1D::from_jet([forms, sp](const CJet& x) { return cplx(sp) * forms.psi0(x); });
    f.phi = AnalyticFn1D::from_jet([forms, sf](const CJet& x) { return cplx(sf) * forms.phi0(x); });
    f.params = FieldParams{a0, b0, 0.0, 0.0, signs.first, signs.second};
    return f;
}

std::pair<double, double> validity_domain(double a0, double b0)
{
    require_params(a0, b0);
    const double lo = std::asin(std::sqrt(a0 / b0));
    return {lo, pi - lo};
}

std::pair<cplx, cplx> zero_order_residual(const YSymField& f, double x)
{
    const cplx P = f.psi(x), F = f.phi(x), dP = f.psi.deriv(x), dF = f.phi.deriv(x);
    return {P * dP - 0.5 * std::sin(2.0 * x) * F * F, P * dF + 2.0 * P * F * (std::cos(x) / std::sin(x))};
}

std::pair<cplx, cplx> first_order_residual(const YSymField& f, double x, double alpha)
{
    if (std::abs(std::cos(x)) <= 1e-14) throw SingularityError("first_order_residual: tan x has a pole");
    const cplx P = f.psi(x), F = f.phi(x);
    const cplx dP = f.psi.deriv(x), dF = f.phi.deriv(x);
    const cplx ddP = f.psi.deriv2(x), ddF = f.phi.deriv2(x);
    const double t = std::tan(x), s = std::sin(x), s2 = std::sin(2.0 * x);
    const cplx r1 = P * dP - 0.5 * s2 * F * F - alpha * (2.0 * (dP * F + P * dF) + t * ((dP * dF + P * ddF) - 2.0 * F * P));
    const cplx r2 = t * P * dF + 2.0 * P * F +
                    alpha * (2.0 * P * P + 4.0 * s * s * F * F - s2 * F * dF + dP * dP + P * ddP);
    return {r1, r2};
}

bool Deviation::near_branch_point(double x) const
{
    return std::abs(eta(x)) < 1e-8 || std::abs(psi0(x)) < 1e-8;
}

Deviation first_order_deviation(double a0, double b0, cplx c0, cplx d0)
{
    if (!(a0 > 0.0 && b0 > a0)) throw InvalidArgument("first_order_deviation: b0 > a0 > 0 required");
    const DeviationForms fm{a0, b0, c0, d0};
    Deviation dv;
    dv.params = FieldParams{a0, b0, c0, d0, 1, 1};
    dv.omega = AnalyticFn1D::from_jet([fm](const CJet& x) { return fm.omega(x); });
    dv.delta = AnalyticFn1D::from_jet([fm](const CJet& x) { return fm.delta(x); });
    dv.eta = AnalyticFn1D::from_jet([fm](const CJet& x) { return fm.eta(x); });
    dv.beta = AnalyticFn1D::from_jet([fm](const CJet& x) { return fm.eta(x) / cplx(fm.b0); });
    dv.psi0 = AnalyticFn1D::from_jet([fm](const CJet& x) { return fm.psi0(x); });
    dv.phi0 = AnalyticFn1D::from_jet([fm](const CJet& x) { return fm.phi0(x); });
    return dv;
}

YSymField connected_field(const Deviation& dv, double alpha)
{
    const DeviationForms fm{dv.params.a0, dv.params.b0, dv.params.c0, dv.params.d0};
    const cplx a = alpha;
    YSymField f;
    f.psi = AnalyticFn1D::from_jet([fm, a](const CJet& x) { return fm.psi0(x) + a * fm.omega(x); });
    f.phi = AnalyticFn1D::from_jet([fm, a](const CJet& x) { return fm.phi0(x) + a * fm.delta(x); });
    f.params = dv.params;
    return f;
}

std::pair<cplx, cplx> deviation_system_residual(const Deviation& dv, cplx x)
{
    const cplx p = dv.psi0(x), dp = dv.psi0.deriv(x), f = dv.phi0(x), df = dv.phi0.deriv(x);
    const cplx O = dv.omega(x), dO = dv.omega.deriv(x), D = dv.delta(x), dD = dv.delta.deriv(x);
    const cplx e1 = p * dO + dp * O - std::sin(2.0 * x) * f * D + p * df;
    const cplx e2 = p * (std::tan(x) * dD + 2.0 * D) + f * f + 2.0 * dv.params.b0;
    return {e1, e2};
}

std::vector<DeviationSample> deviation_ode_solve(double a0, double b0, cplx c0, cplx d0, double x0, double x1,
                                                 double max_step)
{
    if (!(max_step > 0.0)) throw InvalidArgument("deviation_ode_solve: step must be positive");
    const Deviation dv = first_order_deviation(a0, b0, c0, d0);
    const auto [lo, hi] = validity_domain(a0, b0);
    if (std::min(x0, x1) <= lo || std::max(x0, x1) >= hi)
        throw DomainError("deviation_ode_solve: interval must lie strictly inside the validity domain");
    const DeviationForms fm{a0, b0, c0, d0};
    auto rhs = [&](double x, const std::array<cplx, 2>& y) {
        const CJet X = CJet::variable(x);
        const CJet p = fm.psi0(X), f = fm.phi0(X);
        const double t = std::tan(x);
        if (std::abs(p.v) < 1e-10 || std::abs(t) < 1e-10)
            throw SingularityError("deviation_ode_solve: step approaches a singular point");
        const cplx dO = (std::sin(2.0 * x) * f.v * y[1] - p.v * f.d1 - p.d1 * y[0]) / p.v;
        const cplx dD = -(2.0 * p.v * y[1] + f.v * f.v + 2.0 * b0) / (p.v * t);
        return std::array<cplx, 2>{dO, dD};
    };
    const int steps = std::max(1, int(std::ceil(std::abs(x1 - x0) / max_step - 1e-9)));
    const double h = (x1 - x0) / steps;
    std::array<cplx, 2> y{dv.omega(x0), dv.delta(x0)};
    std::vector<DeviationSample> out;
    out.reserve(steps + 1);
    out.push_back({x0, y[0], y[1]});
    for (int k = 0; k < steps; ++k) {
        const double x = x0 + k * h;
        y = rk4_step<cplx, 2>(rhs, x, y, h);
        out.push_back({k + 1 == steps ? x1 : x + h, y[0], y[1]});
    }
    return out;
}

Polyline trace_flow(const YSymField& f, std::pair<double, double> start, double t_end, double dt)
{
    if (!(dt > 0.0) || !(t_end >= 0.0)) throw InvalidArgument("trace_flow: dt > 0 and t_end >= 0 required");
    auto real_field = [&](double x, std::array<double, 2>& out) {
        if (!(x > 0.0 && x < pi)) return false;
        const cplx P = f.psi(x), F = f.phi(x);
        if (!std::isfinite(P.real()) || !std::isfinite(P.imag()) || !std::isfinite(F.real()) ||
            !std::isfinite(F.imag()))
            return false;
        if (std::abs(P.imag()) > 1e-12 * (1.0 + std::abs(P)) || std::abs(F.imag()) > 1e-12 * (1.0 + std::abs(F)))
            return false;
        out = {P.real(), F.real()};
        return true;
    };
    std::array<double, 2> probe;
    if (!real_field(start.first, probe)) throw DomainError("trace_flow: start point outside the real domain of the field");

    Polyline line;
    auto emit = [&](double t, double x, double y) {
        line.samples.push_back({t, x, y, std::sin(x) * std::cos(y), std::sin(x) * std::sin(y), std::cos(x)});
    };
    struct Exit {};
    auto rhs = [&](double, const std::array<double, 2>& s) {
        std::array<double, 2> v;
        if (!real_field(s[0], v)) throw Exit{};
        return v;
    };
    std::array<double, 2> s{start.first, start.second};
    emit(0.0, s[0], s[1]);
    const int steps = int(std::ceil(t_end / dt - 1e-9));
    for (int k = 0; k < steps; ++k) {
        try {
            s = rk4_step<double, 2>(rhs, k * dt, s, dt);
        } catch (const Exit&) {
            line.exited = true;
            line.exit_reason = "field leaves its real domain";
            line.exit_x = s[0];
            line.exit_y = s[1];
            return line;
        }
        emit((k + 1) * dt, s[0], s[1]);
    }
    return line;
}

double great_circle_deviation(const Polyline& line)
{
    Eigen::Matrix3d S = Eigen::Matrix3d::Zero();
    for (const auto& p : line.samples) {
        const Eigen::Vector3d v(p.X, p.Y, p.Z);
        S += v * v.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(S);
    const Eigen::Vector3d n = es.eigenvectors().col(0);
    double dev = 0.0;
    for (const auto& p : line.samples) dev = std::max(dev, std::abs(n.dot(Eigen::Vector3d(p.X, p.Y, p.Z))));
    return dev;
}

} // namespace ncsphere
