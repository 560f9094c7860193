#include "ncsphere/modes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ncsphere/errors.hpp"

namespace ncsphere {

namespace {

using std::numbers::pi;
const cplx I(0.0, 1.0);

void require_mu(int mu)
{
    if (mu != 0 && mu != 1) throw InvalidArgument("mode index mu must be 0 or 1");
}

ConnectionFn resolve(const ConnectionFn& conn, const Deformation& d)
{
    return conn ? conn : sphere_connection(d.alpha_real());
}

// Every shifted evaluation stays within |Im z| <= |Im x| + (2N + 1)|h|.
void check_strips(const ModeSet& ms, cplx x, double h)
{
    const double im = std::abs(x.imag()) + (2.0 * ms.N + 1.0) * std::abs(h);
    for (int mu = 0; mu < 2; ++mu) {
        ms.v0[mu].require_strip(im, "mode set");
        for (int n = 1; n <= ms.N; ++n) {
            ms.c(mu, n).require_strip(im, "mode set");
            ms.s(mu, n).require_strip(im, "mode set");
        }
    }
}

// Pointwise building blocks shared by every assembled quantity.
class Engine {
public:
    Engine(const ModeSet& ms, double h, ConnectionFn conn) : ms_(ms), h_(h), conn_(std::move(conn)) {}

    int N() const { return ms_.N; }
    bool live(int m) const { return m >= 1 && m <= ms_.N && ms_.active(m); }

    SigmaMu C0(cplx z) const
    {
        const Gamma3<cplx> G = conn_(z);
        const std::array<cplx, 2> v{ms_.v0[0](z), ms_.v0[1](z)};
        SigmaMu r{};
        for (int s = 0; s < 2; ++s)
            for (int mu = 0; mu < 2; ++mu) {
                cplx t = mu == 0 ? ms_.v0[s].deriv(z) : cplx(0.0);
                for (int rho = 0; rho < 2; ++rho) t += v[rho] * G[s][mu][rho];
                r[s][mu] = t;
            }
        return r;
    }

    // (C_m, S_m) at z; zero for dead modes
    std::pair<SigmaMu, SigmaMu> CS(int m, cplx z) const
    {
        SigmaMu C{}, S{};
        if (!live(m)) return {C, S};
        const cplx sh = I * double(m) * h_;
        const Gamma3<cplx> Gp = conn_(z + sh), Gm = conn_(z - sh);
        std::array<cplx, 2> vc, vs;
        for (int r = 0; r < 2; ++r) {
            vc[r] = ms_.c(r, m)(z);
            vs[r] = ms_.s(r, m)(z);
        }
        for (int s = 0; s < 2; ++s)
            for (int mu = 0; mu < 2; ++mu) {
                cplx c = mu == 0 ? ms_.c(s, m).deriv(z) : double(m) * vs[s];
                cplx t = mu == 0 ? ms_.s(s, m).deriv(z) : -double(m) * vc[s];
                for (int r = 0; r < 2; ++r) {
                    c += 0.5 * ((vc[r] + I * vs[r]) * Gp[s][mu][r] + (vc[r] - I * vs[r]) * Gm[s][mu][r]);
                    t += 0.5 * ((vs[r] - I * vc[r]) * Gp[s][mu][r] + (vs[r] + I * vc[r]) * Gm[s][mu][r]);
                }
                C[s][mu] = c;
                S[s][mu] = t;
            }
        return {C, S};
    }

    std::array<cplx, 2> sigma0(cplx z) const
    {
        const SigmaMu c0 = C0(z);
        const std::array<cplx, 2> v{ms_.v0[0](z), ms_.v0[1](z)};
        return {v[0] * c0[0][0] + v[1] * c0[0][1], v[0] * c0[1][0] + v[1] * c0[1][1]};
    }

    BArray B(int n, int m, cplx z) const
    {
        BArray out{};
        if (!live(m)) return out;
        const cplx shm = I * double(m) * h_;
        const auto [Cm, Sm] = CS(m, z);
        const SigmaMu C0p = C0(z + shm), C0m = C0(z - shm);
        for (int mu = 0; mu < 2; ++mu) {
            const cplx Vp = ms_.v0[mu](z + shm), Vm = ms_.v0[mu](z - shm);
            const cplx vc = ms_.c(mu, m)(z), vs = ms_.s(mu, m)(z);
            for (int s = 0; s < 2; ++s) {
                const cplx cp = C0p[s][mu], cm = C0m[s][mu];
                out[s][0] += (Vm + Vp) * Cm[s][mu] - I * (Vp - Vm) * Sm[s][mu] + (cp + cm) * vc - I * (cm - cp) * vs;
                out[s][1] += I * (Vm - Vp) * Cm[s][mu] - (Vp + Vm) * Sm[s][mu] + I * (cp - cm) * vc - (cm + cp) * vs;
            }
        }
        if (!live(n)) return out;
        // reduced products: F = V_{C/S,n} shifted by m, G = C_m / S_m shifted by n
        const cplx shn = I * double(n) * h_;
        const auto [Cp, Sp] = CS(m, z + shn);
        const auto [Cq, Sq] = CS(m, z - shn);
        for (int mu = 0; mu < 2; ++mu) {
            const cplx cF_p = ms_.c(mu, n)(z + shm), cF_m = ms_.c(mu, n)(z - shm);
            const cplx sF_p = ms_.s(mu, n)(z + shm), sF_m = ms_.s(mu, n)(z - shm);
            // cos(k h d) F and sin(k h d) F
            const cplx cosVC = 0.5 * (cF_p + cF_m), sinVC = (cF_p - cF_m) / (2.0 * I);
            const cplx cosVS = 0.5 * (sF_p + sF_m), sinVS = (sF_p - sF_m) / (2.0 * I);
            for (int s = 0; s < 2; ++s) {
                const cplx cosC = 0.5 * (Cp[s][mu] + Cq[s][mu]), sinC = (Cp[s][mu] - Cq[s][mu]) / (2.0 * I);
                const cplx cosS = 0.5 * (Sp[s][mu] + Sq[s][mu]), sinS = (Sp[s][mu] - Sq[s][mu]) / (2.0 * I);
                auto A = [](cplx cF, cplx sF, cplx cG, cplx sG) {
                    return std::array<cplx, 4>{cF * cG, -sF * cG, cF * sG, -sF * sG};
                };
                const auto CC = A(cosVC, sinVC, cosC, sinC);
                const auto CSv = A(cosVC, sinVC, cosS, sinS);
                const auto SC = A(cosVS, sinVS, cosC, sinC);
                const auto SS = A(cosVS, sinVS, cosS, sinS);
                out[s][2] += CC[0] - CSv[1] - SC[2] + SS[3];
                out[s][3] += CC[1] + CSv[0] - SC[3] - SS[2];
                out[s][4] += CC[2] - CSv[3] + SC[0] - SS[1];
                out[s][5] += CC[3] + CSv[2] + SC[1] + SS[0];
            }
        }
        return out;
    }

    // (M1, M2) at frequency q, per sigma; B_{j,m<=0} = 0
    std::pair<std::array<cplx, 2>, std::array<cplx, 2>> M(int q, cplx z) const
    {
        std::array<cplx, 2> m1{}, m2{};
        for (int n = 1; n <= ms_.N; ++n) {
            if (!live(n)) continue;
            if (q == 0) {
                const BArray b = B(n, n, z);
                for (int s = 0; s < 2; ++s) m1[s] += 2.0 * (b[s][2] + b[s][5]);
                continue;
            }
            const BArray a = B(n, q - n, z), b = B(n, q + n, z), c = B(n, n - q, z);
            for (int s = 0; s < 2; ++s) {
                m1[s] += a[s][2] - a[s][5] + b[s][2] + b[s][5] + c[s][2] + c[s][5];
                m2[s] += b[s][3] - b[s][4] + a[s][3] + a[s][4] - c[s][3] + c[s][4];
            }
        }
        return {m1, m2};
    }

private:
    const ModeSet& ms_;
    double h_;
    ConnectionFn conn_;
};

Engine make_engine(const ModeSet& ms, const Deformation& d, cplx x, const ConnectionFn& conn)
{
    const double h = d.h_real();
    check_strips(ms, x, h);
    return Engine(ms, h, resolve(conn, d));
}

// exponential components V_k e^{iky}: V_0 = v0, V_{+-n} = (vc -+ i vs)/2
struct ExpModes {
    const ModeSet& ms;
    cplx V(int mu, int k, cplx z) const
    {
        if (k == 0) return ms.v0[mu](z);
        const int n = std::abs(k);
        if (n > ms.N) return 0.0;
        const double sg = k > 0 ? 1.0 : -1.0;
        return 0.5 * (ms.c(mu, n)(z) - I * sg * ms.s(mu, n)(z));
    }
    cplx dV(int mu, int k, cplx z) const
    {
        if (k == 0) return ms.v0[mu].deriv(z);
        const int n = std::abs(k);
        if (n > ms.N) return 0.0;
        const double sg = k > 0 ? 1.0 : -1.0;
        return 0.5 * (ms.c(mu, n).deriv(z) - I * sg * ms.s(mu, n).deriv(z));
    }
};

} // namespace

// ---------------------------------------------------------------- harmonics

double harmonic_norm(int l, int m)
{
    const int am = std::abs(m);
    if (l < 0 || am > l) throw InvalidArgument("harmonic_norm: need l >= 0 and |m| <= l");
    double r = (2.0 * l + 1.0) / (4.0 * pi);
    for (int i = l - am + 1; i <= l + am; ++i) r /= i;
    return std::sqrt(r);
}

void HarmonicCoeffs::add(int mu, int l, int m, double a, double b)
{
    require_mu(mu);
    if (l < 0 || std::abs(m) > l) throw InvalidArgument("HarmonicCoeffs: need l >= 0 and |m| <= l");
    auto& e = entries[{mu, l, m}];
    e.first += a;
    e.second += b;
}

ModeSet harmonics_to_modes(const HarmonicCoeffs& hc, int N)
{
    if (N < 0) throw InvalidArgument("harmonics_to_modes: N >= 0 required");
    struct Term {
        int l, m;
        double coeff;
    };
    // [mu][kind][n]: kind 0 = cos (and v0 at n = 0), kind 1 = sin
    std::array<std::array<std::vector<std::vector<Term>>, 2>, 2> terms;
    for (auto& mu : terms)
        for (auto& k : mu) k.assign(N + 1, {});
    for (const auto& [key, ab] : hc.entries) {
        const auto [mu, l, m] = key;
        require_mu(mu);
        const int n = std::abs(m);
        if (n > N) continue;
        const double k = harmonic_norm(l, m);
        const auto [a, b] = ab;
        // 2 Re(C k P e^{imy}) = k P (a cos my - b sin my); for m < 0 the sine flips sign
        if (a != 0.0) terms[mu][0][n].push_back({l, m, k * a});
        if (m != 0 && b != 0.0) terms[mu][1][n].push_back({l, m, m > 0 ? -k * b : k * b});
    }
    auto build = [](std::vector<Term> ts) {
        if (ts.empty()) return AnalyticFn1D::zero();
        return AnalyticFn1D::from_jet([ts = std::move(ts)](const CJet& x) {
            const CJet c = cos(x), s = sin(x);
            CJet r(0.0);
            for (const auto& t : ts) r += cplx(t.coeff) * assoc_legendre(t.l, t.m, c, s);
            return r;
        });
    };
    ModeSet ms = ModeSet::zeros(N);
    for (int mu = 0; mu < 2; ++mu) {
        ms.v0[mu] = build(terms[mu][0][0]);
        for (int n = 1; n <= N; ++n) {
            ms.vc[mu][n - 1] = build(terms[mu][0][n]);
            ms.vs[mu][n - 1] = build(terms[mu][1][n]);
        }
    }
    return ms;
}

// ---------------------------------------------------------------- mode sets

ModeSet ModeSet::zeros(int N)
{
    if (N < 0) throw InvalidArgument("ModeSet: N >= 0 required");
    ModeSet ms;
    ms.N = N;
    for (int mu = 0; mu < 2; ++mu) {
        ms.v0[mu] = AnalyticFn1D::zero();
        ms.vc[mu].assign(N, AnalyticFn1D::zero());
        ms.vs[mu].assign(N, AnalyticFn1D::zero());
    }
    return ms;
}

bool ModeSet::active(int n) const
{
    if (n < 1 || n > N) return false;
    for (int mu = 0; mu < 2; ++mu)
        if (!c(mu, n).is_zero() || !s(mu, n).is_zero()) return true;
    return false;
}

cplx ModeSet::value(int mu, cplx x, cplx y) const
{
    require_mu(mu);
    cplx r = v0[mu](x);
    for (int n = 1; n <= N; ++n) r += c(mu, n)(x) * std::cos(double(n) * y) + s(mu, n)(x) * std::sin(double(n) * y);
    return r;
}

ModeSet ModeSet::padded(int new_N) const
{
    if (new_N < N) throw InvalidArgument("ModeSet::padded: cannot shrink");
    ModeSet r = *this;
    r.N = new_N;
    for (int mu = 0; mu < 2; ++mu) {
        r.vc[mu].resize(new_N, AnalyticFn1D::zero());
        r.vs[mu].resize(new_N, AnalyticFn1D::zero());
    }
    return r;
}

ModeSet ModeSet::scaled(double lambda) const
{
    auto sc = [lambda](const AnalyticFn1D& f) {
        if (f.is_zero()) return f;
        return AnalyticFn1D([f, lambda](cplx z) { return lambda * f(z); },
                            AnalyticFn1D::Fn([f, lambda](cplx z) { return lambda * f.deriv(z); }),
                            AnalyticFn1D::Fn([f, lambda](cplx z) { return lambda * f.deriv2(z); }), f.strip());
    };
    ModeSet r = *this;
    for (int mu = 0; mu < 2; ++mu) {
        r.v0[mu] = sc(v0[mu]);
        for (int n = 0; n < N; ++n) {
            r.vc[mu][n] = sc(vc[mu][n]);
            r.vs[mu][n] = sc(vs[mu][n]);
        }
    }
    return r;
}

ConnectionFn sphere_connection(double alpha)
{
    return [alpha](cplx z) { return closed::gamma_upper<cplx>(z, cplx(alpha)); };
}

ConnectionFn trig_connection(const TrigConnection& g)
{
    for (const auto& a : g)
        for (const auto& b : a)
            for (const auto& p : b)
                if (p.depends_on_y()) throw InvalidArgument("trig_connection: entries must be x-only");
    return [g](cplx z) {
        Gamma3<cplx> G{};
        for (int s = 0; s < 2; ++s)
            for (int m = 0; m < 2; ++m)
                for (int r = 0; r < 2; ++r) G[s][m][r] = g[s][m][r].eval(z, 0.0);
        return G;
    };
}

// ---------------------------------------------------------------- mode functions

ModeFunctions mode_functions(const ModeSet& ms, const Deformation& d, cplx x, const ConnectionFn& conn)
{
    const Engine e = make_engine(ms, d, x, conn);
    ModeFunctions out;
    out.c0 = e.C0(x);
    for (int m = 1; m <= ms.N; ++m) {
        const auto [C, S] = e.CS(m, x);
        out.cm.push_back(C);
        out.sm.push_back(S);
    }
    return out;
}

cplx SigmaHatSeries::operator()(int sigma, cplx y) const
{
    require_mu(sigma);
    cplx r = 0.0;
    for (int K = -2 * N; K <= 2 * N; ++K) r += coeff[sigma][K + 2 * N] * std::exp(I * double(K) * y);
    return r;
}

SigmaHatSeries sigma_hat_series(const ModeSet& ms, const Deformation& d, cplx x, const ConnectionFn& conn_in)
{
    const double h = d.h_real();
    check_strips(ms, x, h);
    const ConnectionFn conn = resolve(conn_in, d);
    const ExpModes E{ms};
    const int N = ms.N;
    // W^sigma_{mu,k}(z) = delta_mu^x V_k' + delta_mu^y ik V_k + V^rho_k(z) Gamma^sigma_{mu rho}(z - ikh)
    auto W = [&](int k, cplx z) {
        const Gamma3<cplx> G = conn(z - I * double(k) * h);
        const std::array<cplx, 2> v{E.V(0, k, z), E.V(1, k, z)};
        SigmaMu w{};
        for (int s = 0; s < 2; ++s)
            for (int mu = 0; mu < 2; ++mu) {
                cplx t = mu == 0 ? E.dV(s, k, z) : I * double(k) * v[s];
                for (int r = 0; r < 2; ++r) t += v[r] * G[s][mu][r];
                w[s][mu] = t;
            }
        return w;
    };
    SigmaHatSeries out;
    out.N = N;
    for (auto& c : out.coeff) c.assign(4 * N + 1, 0.0);
    // (V_j e^{ijy}) * (W_k e^{iky}) = V_j(x + ikh) W_k(x - ijh) e^{i(j+k)y}
    for (int j = -N; j <= N; ++j)
        for (int k = -N; k <= N; ++k) {
            const SigmaMu w = W(k, x - I * double(j) * h);
            const cplx z = x + I * double(k) * h;
            const std::array<cplx, 2> v{E.V(0, j, z), E.V(1, j, z)};
            for (int s = 0; s < 2; ++s) out.coeff[s][j + k + 2 * N] += v[0] * w[s][0] + v[1] * w[s][1];
        }
    return out;
}

std::array<cplx, 2> sigma_hat_direct(const ModeSet& ms, const Deformation& d, cplx x, cplx y,
                                     const ConnectionFn& conn)
{
    const SigmaHatSeries s = sigma_hat_series(ms, d, x, conn);
    return {s(0, y), s(1, y)};
}

std::array<cplx, 2> sigma_zero(const ModeSet& ms, const Deformation& d, cplx x, const ConnectionFn& conn)
{
    return make_engine(ms, d, x, conn).sigma0(x);
}

BArray b_functions(const ModeSet& ms, const Deformation& d, cplx x, int n, int m, const ConnectionFn& conn)
{
    if (n < 0 || m < 0) throw InvalidArgument("b_functions: n, m >= 0 required");
    return make_engine(ms, d, x, conn).B(n, m, x);
}

std::array<cplx, 2> sigma_hat_from_b(const ModeSet& ms, const Deformation& d, double x, double y,
                                     const ConnectionFn& conn)
{
    const Engine e = make_engine(ms, d, x, conn);
    std::array<cplx, 2> r = e.sigma0(x);
    for (int m = 1; m <= ms.N; ++m) {
        const BArray b = e.B(0, m, x);
        for (int s = 0; s < 2; ++s) r[s] += 0.5 * (std::cos(m * y) * b[s][0] - std::sin(m * y) * b[s][1]);
    }
    for (int n = 1; n <= ms.N; ++n)
        for (int m = 1; m <= ms.N; ++m) {
            const BArray b = e.B(n, m, x);
            const double cn = std::cos(n * y), sn = std::sin(n * y), cm = std::cos(m * y), sm = std::sin(m * y);
            for (int s = 0; s < 2; ++s)
                r[s] += cn * cm * b[s][2] + cn * sm * b[s][3] + sn * cm * b[s][4] + sn * sm * b[s][5];
        }
    return r;
}

std::pair<std::array<cplx, 2>, std::array<cplx, 2>> m_functions(const ModeSet& ms, const Deformation& d, cplx x, int q,
                                                                const ConnectionFn& conn)
{
    if (q < 0) throw InvalidArgument("m_functions: q >= 0 required");
    return make_engine(ms, d, x, conn).M(q, x);
}

BKLMBundle klm_functions(const ModeSet& ms, const Deformation& d, double x, int p, const ConnectionFn& conn)
{
    if (p < 1) throw InvalidArgument("klm_functions: p >= 1 required");
    const Engine e = make_engine(ms, d, x, conn);
    const double h = d.h_real();
    const cplx zp(x, h), zm(x, -h);
    BKLMBundle out;
    out.p = p;

    {
        const int q = p - 1;
        const auto [m1p, m2p] = e.M(q, zp);
        const auto [m1m, m2m] = e.M(q, zm);
        const BArray bp = e.B(0, q, zp), bm = e.B(0, q, zm);
        for (int s = 0; s < 2; ++s) {
            const cplx Mminus_p = m1p[s] - I * m2p[s], Mplus_m = m1m[s] + I * m2m[s];
            out.K1[s] = -(Mminus_p + Mplus_m);
            out.K2[s] = -I * Mminus_p + I * Mplus_m;
            const cplx up = bp[s][0] + I * bp[s][1], dn = bm[s][0] - I * bm[s][1];
            out.L1[s] = up + dn;
            out.L2[s] = -I * up + I * dn;
        }
    }
    {
        const int q = p + 1;
        const auto [m1p, m2p] = e.M(q, zp);
        const auto [m1m, m2m] = e.M(q, zm);
        const BArray bp = e.B(0, q, zp), bm = e.B(0, q, zm);
        for (int s = 0; s < 2; ++s) {
            const cplx Mplus_p = m1p[s] + I * m2p[s], Mminus_m = m1m[s] - I * m2m[s];
            out.K4[s] = Mplus_p + Mminus_m;
            out.K3[s] = -Mplus_p + Mminus_m;
            const cplx up = bp[s][0] - I * bp[s][1], dn = bm[s][0] + I * bm[s][1];
            out.L4[s] = up + dn;
            out.L3[s] = -up + dn;
        }
    }
    const BArray b = e.B(0, p, x);
    const auto [m1, m2] = e.M(p, x);
    for (int s = 0; s < 2; ++s) {
        out.B1[s] = b[s][0];
        out.B2[s] = b[s][1];
    }
    out.M1 = m1;
    out.M2 = m2;
    out.sigma_plus = e.sigma0(zp);
    out.sigma_minus = e.sigma0(zm);
    return out;
}

std::array<cplx, 6> p_mode_residuals(const BKLMBundle& b, double x, const Deformation& d)
{
    const double h = d.h_real();
    const int p = b.p;
    const double cx = std::cos(x), sx = std::sin(x);
    const double chq = std::cosh((p - 1) * h), shq = std::sinh((p - 1) * h);
    const double chp = std::cosh(p * h), shp = std::sinh(p * h);
    const double chr = std::cosh((p + 1) * h), shr = std::sinh((p + 1) * h);
    const double dl = p == 1 ? 1.0 : 0.0;

    std::array<cplx, 2> KL1, KL2, L3, L4;
    for (int s = 0; s < 2; ++s) {
        KL1[s] = b.K1[s] - b.L1[s];
        KL2[s] = b.K2[s] + b.L2[s];
        L3[s] = b.L3[s] + b.K3[s];
        L4[s] = b.L4[s] + b.K4[s];
    }
    const auto& Sp = b.sigma_plus;
    const auto& Sm = b.sigma_minus;
    const double c8 = pi / 8, c2 = pi / 2;

    std::array<cplx, 6> r;
    r[0] = c8 * (cx * (-chq * KL1[0] - shq * KL1[1] + 4.0 * dl * (Sp[0] + Sm[0])) +
                 sx * (-chq * KL2[1] - shq * KL2[0] + 4.0 * I * dl * (Sp[1] - Sm[1])));
    r[1] = c8 * (cx * (-chq * KL2[0] - shq * KL2[1] + 4.0 * I * dl * (Sp[0] - Sm[0])) +
                 sx * (chq * KL1[1] + shq * KL1[0] - 4.0 * dl * (Sp[1] + Sm[1])));
    r[2] = c8 * (cx * (chr * L4[0] - shr * L4[1]) - sx * (I * chr * L3[1] - I * shr * L3[0]));
    r[3] = c8 * (cx * (I * chr * L3[0] - I * shr * L3[1]) + sx * (chr * L4[1] - shr * L4[0]));
    const cplx BM1 = b.B1[0] + b.M1[0], BM2 = b.B2[0] - b.M2[0];
    r[4] = c2 * (chp * sx * BM1 + shp * cx * BM2);
    r[5] = c2 * (shp * cx * BM1 - chp * sx * BM2);
    return r;
}

std::array<cplx, 6> p_mode_residuals(const ModeSet& ms, const Deformation& d, double x, int p,
                                     const ConnectionFn& conn)
{
    return p_mode_residuals(klm_functions(ms, d, x, p, conn), x, d);
}

std::pair<cplx, cplx> mode_constraints(const ModeSet& ms, const Deformation& d, double x, int p,
                                       const ConnectionFn& conn)
{
    if (p < 1) throw InvalidArgument("mode_constraints: p >= 1 required");
    const Engine e = make_engine(ms, d, x, conn);
    const BArray b = e.B(0, p, x);
    const auto [m1, m2] = e.M(p, x);
    return {m1[0] + b[0][0], m2[0] - b[0][1]};
}

} // namespace ncsphere
