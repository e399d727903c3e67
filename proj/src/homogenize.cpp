#include "lamwave/homogenize.hpp"

#include "lamwave/errors.hpp"

#include <cmath>
#include <numbers>

namespace lamwave {

namespace {

constexpr double eta_limit = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);

double harmonic_g(const LayerPair& L)
{
    return 1.0 / (L[0].nu / L[0].g + L[1].nu / L[1].g);
}

double mean_rho(const LayerPair& L)
{
    return L[0].nu * L[0].rho + L[1].nu * L[1].rho;
}

double sq(double x) { return x * x; }

} // namespace

LayerPair layer_coefficients(const Laminate& lam, double lambda)
{
    LayerPair out;
    for (int a = 0; a < 2; ++a) {
        const Phase& p = lam.phase(a + 1);
        const ShearCoefficients sc = shear_coefficients(p.model, lambda);
        out[a] = {sc.g, sc.h, p.density, p.volume_fraction};
    }
    return out;
}

DispersionCoeffs optimize_dispersion_coeffs(double eta)
{
    if (!(eta < eta_limit)) {
        throw DispersionTooStrong("eta = " + std::to_string(eta) + " is not below 1/(2 pi^2)");
    }
    return {eta_limit, 0.0, eta_limit - eta};
}

EffectiveModel effective_model(const LayerPair& L, double ell, double stretch)
{
    EffectiveModel e;
    e.g_eff = harmonic_g(L);
    e.rho_eff = mean_rho(L);
    e.c = std::sqrt(e.g_eff / e.rho_eff);
    const double g3 = e.g_eff * e.g_eff * e.g_eff;
    e.zeta = g3 * (L[0].nu * L[0].h / sq(sq(L[0].g)) + L[1].nu * L[1].h / sq(sq(L[1].g)));
    const double gt1 = L[0].g / e.g_eff, gt2 = L[1].g / e.g_eff;
    const double r1 = L[0].rho / e.rho_eff, r2 = L[1].rho / e.rho_eff;
    e.eta = sq(L[0].nu * L[1].nu) / sq(gt1 * gt2) * sq(r1 * gt1 - r2 * gt2) / 12.0;
    e.ell = ell;
    e.stretch = stretch;
    if (e.eta < eta_limit) {
        const DispersionCoeffs d = optimize_dispersion_coeffs(e.eta);
        e.eta_y = d.eta_y;
        e.eta_m = d.eta_m;
        e.eta_t = d.eta_t;
        e.optimized = true;
    } else {
        e.eta_y = e.eta;
    }
    return e;
}

EffectiveModel effective_model(const Laminate& lam, double lambda)
{
    return effective_model(layer_coefficients(lam, lambda), lambda * lam.period(), lambda);
}

double eta_dimensional_form(const LayerPair& L)
{
    const double c2 = harmonic_g(L) / mean_rho(L);
    return c2 * c2 / 12.0 * sq(L[0].nu * L[1].nu) / sq(L[0].g * L[1].g)
           * sq(L[0].rho * L[0].g - L[1].rho * L[1].g);
}

CellCorrectors cell_correctors(const LayerPair& L)
{
    const double G = harmonic_g(L);
    const double g1 = L[0].g / G, g2 = L[1].g / G;
    const double h1 = L[0].h / G, h2 = L[1].h / G;
    const double n1 = L[0].nu, n2 = L[1].nu;
    const double den = n1 * g2 + n2 * g1;
    CellCorrectors cc;
    cc.P = (g2 - g1) / den;
    cc.Q = (h2 * g1 * g1 * g1 - h1 * g2 * g2 * g2) / (3.0 * sq(sq(den)));
    cc.nu1 = n1;
    cc.nu2 = n2;
    return cc;
}

CellCorrectors cell_correctors(const Laminate& lam, double lambda)
{
    return cell_correctors(layer_coefficients(lam, lambda));
}

std::array<double, 2> CellCorrectors::tau_phi(double y) const
{
    if (y < -0.5 * nu2) return {nu2, 0.5};
    if (y <= 0.5 * nu2) return {-nu1, 0.0};
    return {nu2, -0.5};
}

double CellCorrectors::U1(double y, double uy) const
{
    const auto [tau, phi] = tau_phi(y);
    return tau * P * (y + phi) * uy;
}

double CellCorrectors::V1(double y, double uy) const
{
    const auto [tau, phi] = tau_phi(y);
    return tau * Q * (y + phi) * uy * uy * uy;
}

EffectiveEnergyCoeffs effective_energy_coeffs(const Laminate& lam)
{
    EffectiveEnergyCoeffs c;
    double inv = 0.0;
    for (int a = 1; a <= 2; ++a) {
        const Phase& p = lam.phase(a);
        const double G = p.model.shear_modulus;
        const double b = p.model.beta;
        const double nu = p.volume_fraction;
        c.G_bar += nu * G;
        inv += nu / G;
        c.gb1 += nu * G * b;
        c.gbm1 += nu * b / G;
        c.gbm3 += nu * b / (G * G * G);
    }
    c.G_breve = 1.0 / inv;
    return c;
}

double effective_energy(const EffectiveEnergyCoeffs& c, double I1, double K)
{
    const double D = I1 - 3.0 - K;
    const double Gb2 = c.G_breve * c.G_breve;
    return 0.5 * c.G_bar * D + 0.5 * c.G_breve * K + 0.25 * c.gb1 * D * D
           + 0.5 * Gb2 * c.gbm1 * D * K + 0.25 * Gb2 * Gb2 * c.gbm3 * K * K;
}

ShearInvariants shear_kinematics_invariants(double lambda, double s)
{
    return {uniaxial_invariant(lambda) + s * s, s * s};
}

double det(const Mat3& F)
{
    return F[0][0] * (F[1][1] * F[2][2] - F[1][2] * F[2][1])
           - F[0][1] * (F[1][0] * F[2][2] - F[1][2] * F[2][0])
           + F[0][2] * (F[1][0] * F[2][1] - F[1][1] * F[2][0]);
}

Mat3 inverse(const Mat3& F)
{
    const double d = det(F);
    if (d == 0.0) throw SingularDeformation("deformation gradient is singular");
    Mat3 inv{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
            const int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
            inv[i][j] = (F[i1][j1] * F[i2][j2] - F[i1][j2] * F[i2][j1]) / d;
        }
    }
    return inv;
}

namespace {

Vec3 mul(const Mat3& A, const Vec3& x)
{
    Vec3 y{};
    for (int i = 0; i < 3; ++i) y[i] = A[i][0] * x[0] + A[i][1] * x[1] + A[i][2] * x[2];
    return y;
}

Vec3 mul_transpose(const Mat3& A, const Vec3& x)
{
    Vec3 y{};
    for (int i = 0; i < 3; ++i) y[i] = A[0][i] * x[0] + A[1][i] * x[1] + A[2][i] * x[2];
    return y;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double trace_ftf(const Mat3& F)
{
    double s = 0.0;
    for (const auto& row : F) s += dot(row, row);
    return s;
}

Mat3 rank_one_update(const Mat3& F, double tau, const Vec3& theta, const Vec3& n)
{
    Mat3 out = F;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) out[i][j] += tau * theta[i] * n[j];
    }
    return out;
}

} // namespace

double lamination_invariant(const Mat3& F, const Vec3& n)
{
    const Vec3 Fn = mul(F, n);
    const Vec3 m = mul_transpose(inverse(F), n);
    const double mm = dot(m, m);
    if (mm == 0.0) throw SingularDeformation("|F^-T n| vanishes");
    return dot(Fn, Fn) - 1.0 / mm;
}

PerPhaseDeformation per_phase_deformation(const Laminate& lam, const Mat3& F, const Vec3& n)
{
    if (std::abs(det(F) - 1.0) > 1e-10) throw DomainError("macroscopic deformation must be isochoric");
    const Vec3 Fn = mul(F, n);
    const Vec3 m = mul_transpose(inverse(F), n);
    const double mm = dot(m, m);
    if (mm == 0.0) throw SingularDeformation("|F^-T n| vanishes");
    Vec3 dir{};
    for (int i = 0; i < 3; ++i) dir[i] = Fn[i] - m[i] / mm;

    const double n1 = lam.phase1().volume_fraction, n2 = lam.phase2().volume_fraction;
    const double tau1 = -n2, tau2 = n1;
    PerPhaseDeformation out;
    out.F1 = F;
    out.F2 = F;
    double P = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double G1 = generalized_shear_modulus(lam.phase1().model, trace_ftf(out.F1));
        const double G2 = generalized_shear_modulus(lam.phase2().model, trace_ftf(out.F2));
        const double Gb = 1.0 / (n1 / G1 + n2 / G2);
        const double Pn = Gb * (G1 - G2) / (G1 * G2);
        for (int i = 0; i < 3; ++i) out.theta[i] = Pn * dir[i];
        out.F1 = rank_one_update(F, tau1, out.theta, n);
        out.F2 = rank_one_update(F, tau2, out.theta, n);
        const bool done = std::abs(Pn - P) <= 1e-15 * (1.0 + std::abs(Pn));
        P = Pn;
        if (done) break;
    }
    return out;
}

} // namespace lamwave
