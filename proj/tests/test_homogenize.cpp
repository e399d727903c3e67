#include "lamwave/errors.hpp"
#include "lamwave/homogenize.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

using namespace lamwave;

namespace {

constexpr double eta_cap = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);

LayerPair random_layers(oracle::Gen& gen)
{
    const double nu = gen.uniform(0.05, 0.95);
    return {LayerCoefficients{gen.log_uniform(1e5, 1e7), gen.log_uniform(1e3, 1e6), gen.log_uniform(500, 5000), nu},
            LayerCoefficients{gen.log_uniform(1e5, 1e7), gen.log_uniform(1e3, 1e6), gen.log_uniform(500, 5000), 1.0 - nu}};
}

LayerPair swapped(const LayerPair& l) { return {l[1], l[0]}; }

} // namespace

TEST_CASE("reference bilayer at rest")
{
    const EffectiveModel e = effective_model(oracle::table4(), 1.0);
    CHECK(e.g_eff == doctest::Approx(1.5666666666666667e6).epsilon(1e-14));
    CHECK(e.rho_eff == doctest::Approx(930.0));
    CHECK(e.c == doctest::Approx(41.04).epsilon(1e-3));
    CHECK(e.zeta == doctest::Approx(0.0924).epsilon(5e-3));
    CHECK(e.eta == doctest::Approx(0.00926).epsilon(5e-3));
    CHECK(e.eta_y == doctest::Approx(0.0507).epsilon(5e-3));
    CHECK(e.eta_t == doctest::Approx(0.0414).epsilon(5e-3));
    CHECK(e.ell == 0.01);
    CHECK(e.optimized);
}

TEST_CASE("homogeneous and single-phase limits")
{
    const LayerCoefficients a{2e6, 3e5, 1100.0, 0.4};
    LayerCoefficients b = a;
    b.nu = 0.6;
    const EffectiveModel e = effective_model(LayerPair{a, b}, 0.01);
    CHECK(e.g_eff == doctest::Approx(2e6).epsilon(1e-15));
    CHECK(e.rho_eff == doctest::Approx(1100.0).epsilon(1e-15));
    CHECK(e.eta == doctest::Approx(0.0).scale(1.0).epsilon(1e-30));
    CHECK(e.zeta == doctest::Approx(0.15).epsilon(1e-14));

    const LayerCoefficients c{5e6, 1e6, 900.0, 0.0};
    LayerCoefficients a1 = a;
    a1.nu = 1.0;
    const EffectiveModel s = effective_model(LayerPair{a1, c}, 0.01);
    CHECK(s.g_eff == doctest::Approx(a.g));
    CHECK(s.rho_eff == doctest::Approx(a.rho));
    CHECK(s.eta == 0.0);
    CHECK(s.zeta == doctest::Approx(a.h / a.g));
}

TEST_CASE("optimised dispersion coefficients")
{
    const DispersionCoeffs z = optimize_dispersion_coeffs(0.0);
    CHECK(z.eta_y == doctest::Approx(0.050661).epsilon(1e-5));
    CHECK(z.eta_m == 0.0);
    CHECK(z.eta_t == doctest::Approx(0.050661).epsilon(1e-5));
    CHECK(optimize_dispersion_coeffs(0.04).eta_t == doctest::Approx(0.010661).epsilon(1e-4));
    CHECK_THROWS_AS(optimize_dispersion_coeffs(eta_cap), DispersionTooStrong);
}

TEST_CASE("structural invariants on random laminates")
{
    oracle::Gen gen(7);
    for (int trial = 0; trial < 300; ++trial) {
        const LayerPair L = random_layers(gen);
        const EffectiveModel e = effective_model(L, 0.01);
        const EffectiveModel s = effective_model(swapped(L), 0.01);
        // Harmonic mean, computed independently.
        CHECK(e.g_eff == doctest::Approx(1.0 / (L[0].nu / L[0].g + L[1].nu / L[1].g)).epsilon(1e-14));
        CHECK(e.g_eff <= L[0].nu * L[0].g + L[1].nu * L[1].g);
        CHECK(e.g_eff >= std::min(L[0].g, L[1].g));
        CHECK(e.c == doctest::Approx(std::sqrt(e.g_eff / e.rho_eff)).epsilon(1e-15));
        CHECK(e.eta >= 0.0);
        CHECK(e.zeta >= 0.0);
        CHECK(s.eta == doctest::Approx(e.eta).epsilon(1e-13));
        CHECK(s.zeta == doctest::Approx(e.zeta).epsilon(1e-13));
        CHECK(eta_dimensional_form(L) == doctest::Approx(e.eta).epsilon(1e-12));
        if (e.optimized) CHECK(std::abs(e.eta_y - e.eta_m - e.eta_t - e.eta) <= 1e-14);
    }
}

TEST_CASE("eta vanishes exactly for impedance-matched layers")
{
    oracle::Gen gen(8);
    for (int trial = 0; trial < 100; ++trial) {
        LayerPair L = random_layers(gen);
        L[1].rho = L[0].rho * L[0].g / L[1].g;
        CHECK(effective_model(L, 0.01).eta <= 1e-28);
        L[1].rho *= gen.uniform(1.01, 2.0);
        CHECK(effective_model(L, 0.01).eta > 1e-10);
    }
}

TEST_CASE("eta does not depend on the stretch")
{
    const Laminate nh = oracle::table4(930.0, 0.0, ModelKind::NeoHookean);
    const Laminate gent = oracle::table4();
    const double eta_nh = effective_model(nh, 1.0).eta;
    const double eta_gent = effective_model(gent, 1.0).eta;
    for (double lam = 0.5; lam <= 2.0; lam += 0.125) {
        CHECK(effective_model(nh, lam).eta == doctest::Approx(eta_nh).epsilon(1e-13));
        CHECK(effective_model(gent, lam).eta == doctest::Approx(eta_gent).epsilon(1e-13));
        // ell / c scales as lam / lam for neo-Hookean phases.
        const EffectiveModel e = effective_model(nh, lam);
        CHECK(e.ell == doctest::Approx(lam * 0.01));
        CHECK(e.c == doctest::Approx(lam * effective_model(nh, 1.0).c).epsilon(1e-14));
    }
}

TEST_CASE("cell correctors")
{
    const CellCorrectors t4 = cell_correctors(oracle::table4(), 1.0);
    CHECK(t4.P == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
    const LayerCoefficients a{2e6, 3e5, 1100.0, 0.4};
    LayerCoefficients b = a;
    b.nu = 0.6;
    const CellCorrectors same = cell_correctors(LayerPair{a, b});
    CHECK(same.P == 0.0);
    CHECK(same.Q == 0.0);

    oracle::Gen gen(9);
    for (int trial = 0; trial < 50; ++trial) {
        const LayerPair L = random_layers(gen);
        CHECK(cell_correctors(swapped(L)).P == doctest::Approx(-cell_correctors(L).P).epsilon(1e-13));
    }
}

TEST_CASE("cell problem averaged with the correctors reproduces the effective coefficients")
{
    oracle::Gen gen(10);
    for (int trial = 0; trial < 20; ++trial) {
        const LayerPair L = random_layers(gen);
        const CellCorrectors cc = cell_correctors(L);
        const double G = effective_model(L, 0.01).g_eff;
        const double zeta = effective_model(L, 0.01).zeta;
        const double hh = 1e-7;
        auto phase_of = [&](double y) { return std::abs(y) <= 0.5 * cc.nu2 ? 1 : 0; };
        // Local strain (1 + dU1/dy) u + dV1/dy u^3 per unit macroscopic strain u.
        auto lin = [&](double y) {
            const double dU = (cc.U1(y + hh, 1.0) - cc.U1(y - hh, 1.0)) / (2 * hh);
            return L[phase_of(y)].g / G * (1.0 + dU);
        };
        auto cub = [&](double y) {
            const double dU = (cc.U1(y + hh, 1.0) - cc.U1(y - hh, 1.0)) / (2 * hh);
            const double dV = (cc.V1(y + hh, 1.0) - cc.V1(y - hh, 1.0)) / (2 * hh);
            const LayerCoefficients& p = L[phase_of(y)];
            return p.g / G * dV + p.h / G * std::pow(1.0 + dU, 3) / 3.0;
        };
        // Integrate each layer separately so no sample straddles an interface.
        auto average = [&](const std::function<double(double)>& f) {
            const double a = 0.5 * cc.nu2;
            return oracle::midpoint(f, -0.5, -a, 4000) + oracle::midpoint(f, -a, a, 4000) +
                   oracle::midpoint(f, a, 0.5, 4000);
        };
        CHECK(average(lin) == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(average(cub) == doctest::Approx(zeta / 3.0).epsilon(1e-8));
        // Stress is uniform across the cell at both orders.
        CHECK(lin(0.0) == doctest::Approx(lin(0.49)).epsilon(1e-8));
        CHECK(cub(0.0) == doctest::Approx(cub(0.49)).epsilon(1e-7));
    }
}

TEST_CASE("effective energy coefficients")
{
    Phase a{make_model(ModelKind::Yeoh, 4.7e6, 0.0), 930.0, 0.5, mu0, 0.0};
    Phase b{make_model(ModelKind::Yeoh, 0.94e6, 0.0), 930.0, 0.5, mu0, 0.0};
    const EffectiveEnergyCoeffs c = effective_energy_coeffs(Laminate(a, b, 0.01));
    CHECK(c.gb1 == 0.0);
    CHECK(c.gbm1 == 0.0);
    CHECK(c.gbm3 == 0.0);
    CHECK(c.G_breve == doctest::Approx(1.567e6).epsilon(1e-3));
    CHECK(c.G_breve <= c.G_bar);
    CHECK(effective_energy(c, 3.0, 0.0) == 0.0);

    b.model = a.model;
    const EffectiveEnergyCoeffs same = effective_energy_coeffs(Laminate(a, b, 0.01));
    CHECK(same.G_breve == doctest::Approx(same.G_bar).epsilon(1e-15));
}

TEST_CASE("effective energy reduces to the average energy without lamination shear")
{
    Phase a{make_model(ModelKind::Yeoh, 4.7e6, 0.03), 930.0, 0.3, mu0, 0.0};
    Phase b{make_model(ModelKind::Yeoh, 0.94e6, 0.01), 930.0, 0.7, mu0, 0.0};
    const Laminate lam(a, b, 0.01);
    const EffectiveEnergyCoeffs c = effective_energy_coeffs(lam);
    for (double I = 3.0; I < 5.0; I += 0.25) {
        const double avg = 0.3 * strain_energy(a.model, I) + 0.7 * strain_energy(b.model, I);
        CHECK(effective_energy(c, I, 0.0) == doctest::Approx(avg).epsilon(1e-14));
    }
    // Uniaxial stretch along the normal gives K = 0.
    const double l = 1.1;
    const Mat3 F{{{l, 0, 0}, {0, 1 / std::sqrt(l), 0}, {0, 0, 1 / std::sqrt(l)}}};
    const double K = lamination_invariant(F, {1, 0, 0});
    CHECK(std::abs(K) < 1e-14);
    const double I = uniaxial_invariant(l);
    CHECK(effective_energy(c, I, K)
          == doctest::Approx(0.3 * strain_energy(a.model, I) + 0.7 * strain_energy(b.model, I)).epsilon(1e-13));
}

TEST_CASE("small-beta energy matches the wave coefficients to second order")
{
    const double lam = 1.2;
    double err2[2], err4[2];
    int k = 0;
    for (double beta : {1e-2, 1e-3}) {
        Phase a{make_model(ModelKind::Yeoh, 4.7e6, beta), 930.0, 0.5, mu0, 0.0};
        Phase b{make_model(ModelKind::Yeoh, 0.94e6, 2.0 * beta), 930.0, 0.5, mu0, 0.0};
        const Laminate L(a, b, 0.01);
        const EffectiveEnergyCoeffs c = effective_energy_coeffs(L);
        const EffectiveModel e = effective_model(L, lam);
        // Shear amount s = lam * gamma along the layers.
        auto W = [&](double gamma) {
            const ShearInvariants inv = shear_kinematics_invariants(lam, lam * gamma);
            return effective_energy(c, inv.I1, inv.K);
        };
        const double d2 = oracle::fd2(W, 0.0, 0.1);
        const double d4 = oracle::fd4(W, 0.0, 0.1);
        err2[k] = std::abs(d2 / e.g_eff - 1.0);
        err4[k] = std::abs(d4 / (2.0 * e.g_eff * e.zeta) - 1.0);
        ++k;
    }
    CHECK(err2[0] / err2[1] == doctest::Approx(100.0).epsilon(0.5));
    CHECK(err4[0] / err4[1] > 5.0);
    CHECK(err2[0] < 1e-3);
    CHECK(err4[0] < 5e-2);
}

TEST_CASE("per-phase deformation")
{
    Phase a{make_model(ModelKind::NeoHookean, 4.7e6), 930.0, 0.5, mu0, 0.0};
    Phase b{make_model(ModelKind::NeoHookean, 0.94e6), 930.0, 0.5, mu0, 0.0};
    const Vec3 n{0, 1, 0};
    const double s = 0.2;
    const Mat3 F{{{1, s, 0}, {0, 1, 0}, {0, 0, 1}}};

    const PerPhaseDeformation same = per_phase_deformation(Laminate(a, a, 0.01), F, n);
    for (double t : same.theta) CHECK(t == 0.0);

    const PerPhaseDeformation pp = per_phase_deformation(Laminate(a, b, 0.01), F, n);
    // Traction continuity: G1 s1 = G2 s2.
    CHECK(pp.F1[0][1] / pp.F2[0][1] == doctest::Approx(0.94 / 4.7).epsilon(1e-13));
    CHECK(0.5 * pp.F1[0][1] + 0.5 * pp.F2[0][1] == doctest::Approx(s).epsilon(1e-14));

    Phase ya{make_model(ModelKind::Yeoh, 4.7e6, 0.02), 930.0, 0.4, mu0, 0.0};
    Phase yb{make_model(ModelKind::Yeoh, 0.94e6, 0.05), 930.0, 0.6, mu0, 0.0};
    const Laminate lam(ya, yb, 0.01);
    oracle::Gen gen(12);
    for (int trial = 0; trial < 100; ++trial) {
        Mat3 M{};
        for (auto& row : M)
            for (double& x : row) x = gen.uniform(-0.4, 0.4);
        for (int i = 0; i < 3; ++i) M[i][i] += 1.0;
        const double d = det(M);
        if (d <= 0.1) continue;
        const double sc = std::cbrt(1.0 / d);
        for (auto& row : M)
            for (double& x : row) x *= sc;
        Vec3 nn{gen.uniform(-1, 1), gen.uniform(-1, 1), gen.uniform(-1, 1)};
        const double nl = std::sqrt(nn[0] * nn[0] + nn[1] * nn[1] + nn[2] * nn[2]);
        for (double& x : nn) x /= nl;
        const PerPhaseDeformation r = per_phase_deformation(lam, M, nn);
        CHECK(det(r.F1) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(det(r.F2) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("singular deformations are rejected")
{
    const Mat3 Z{};
    CHECK_THROWS_AS(inverse(Z), SingularDeformation);
}
