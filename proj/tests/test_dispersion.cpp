#include "lamwave/dispersion.hpp"
#include "lamwave/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

using namespace lamwave;
using std::numbers::pi;

namespace {

BilayerAcoustics table4_acoustics() { return bilayer_acoustics(oracle::table4(), 1.0); }

/// Bloch wavenumber of the exact relation without the cancellation of acos near one.
double exact_kappa_ell(const BilayerAcoustics& a, double w)
{
    const double omega = w * a.c_eff / a.ell;
    const double p = omega * a.ell1 / a.c1, q = omega * a.ell2 / a.c2;
    const double m = 0.5 * (a.z1 / a.z2 + a.z2 / a.z1);
    const double one_minus = 2.0 * std::pow(std::sin(0.5 * (p + q)), 2) + (m - 1.0) * std::sin(p) * std::sin(q);
    return 2.0 * std::asin(std::sqrt(0.5 * one_minus));
}

/// Acoustic-branch wavenumber of the homogenised quadratic at frequency w.
double homog_kappa_ell(const EffectiveModel& e, double w)
{
    const double chi = w * w;
    const double a = e.eta_y, b = 1.0 + e.eta_m * chi, c = chi - e.eta_t * chi * chi;
    // a k^4 - b k^2 + c = 0, small root.
    const double k2 = 2.0 * c / (b + std::sqrt(b * b - 4.0 * a * c));
    return std::sqrt(k2);
}

} // namespace

TEST_CASE("exact relation basics")
{
    const BilayerAcoustics a = table4_acoustics();
    CHECK(exact_rhs(a, 0.0) == 1.0);
    for (double w = 0.1; w < 10.0; w += 0.37) CHECK(exact_rhs(a, -w) == doctest::Approx(exact_rhs(a, w)).epsilon(1e-15));

    const LayerCoefficients l{1e6, 0.0, 1000.0, 0.3};
    LayerCoefficients m = l;
    m.nu = 0.7;
    const BilayerAcoustics h = bilayer_acoustics(LayerPair{l, m}, 0.02);
    for (double w = 0.0; w < 10.0; w += 0.23) CHECK(exact_rhs(h, w) == doctest::Approx(std::cos(w)).epsilon(1e-13).scale(1e-13));
    CHECK(exact_bandgaps(h, 3.0 * pi, 3000).empty());
}

TEST_CASE("exact relation equals the monodromy half trace")
{
    oracle::Gen gen(101);
    for (int trial = 0; trial < 100; ++trial) {
        const double nu = gen.uniform(0.05, 0.95);
        const LayerPair L{LayerCoefficients{gen.log_uniform(1e5, 1e7), 0.0, gen.log_uniform(500, 5000), nu},
                          LayerCoefficients{gen.log_uniform(1e5, 1e7), 0.0, gen.log_uniform(500, 5000), 1.0 - nu}};
        const double ell = gen.log_uniform(1e-3, 1e-1);
        const BilayerAcoustics a = bilayer_acoustics(L, ell);
        const double w = gen.uniform(0.0, 4.0 * pi);
        const double omega = w * a.c_eff / ell;
        const double ref = oracle::monodromy_half_trace(L[0].rho, L[0].g, nu * ell, L[1].rho, L[1].g, (1.0 - nu) * ell, omega);
        CHECK(std::abs(exact_rhs(a, w) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        // Relabelling the phases.
        const BilayerAcoustics s = bilayer_acoustics(LayerPair{L[1], L[0]}, ell);
        CHECK(std::abs(exact_rhs(s, w) - exact_rhs(a, w)) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("reference bilayer band gaps")
{
    const BilayerAcoustics a = table4_acoustics();
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<BandGap> g = exact_bandgaps(a, 3.0 * pi, 10000);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 1.0);
    REQUIRE(g.size() >= 2);
    CHECK(g[0].lo / pi == doctest::Approx(0.83).epsilon(0.006));
    CHECK(g[0].hi / pi == doctest::Approx(1.27).epsilon(0.004));
    CHECK(g[0].index == 1);
    CHECK(std::abs(std::abs(exact_rhs(a, g[0].lo)) - 1.0) < 1e-10);
    CHECK(std::abs(std::abs(exact_rhs(a, g[0].hi)) - 1.0) < 1e-10);
    for (const BandGap& b : g) {
        CHECK(b.lo > 0.0);
        CHECK(b.lo < b.hi);
        CHECK(std::abs(exact_rhs(a, 0.5 * (b.lo + b.hi))) > 1.0);
    }
    // The homogenised estimate of the first cut-off is within 2%.
    CHECK(homogenized_bandgap(effective_model(oracle::table4(), 1.0)).lo == doctest::Approx(g[0].lo).epsilon(0.02));
}

TEST_CASE("impedance matching closes the gaps")
{
    // rho2 g2 = rho1 g1 with g1 / g2 = 5.
    const BilayerAcoustics a = bilayer_acoustics(oracle::table4(930.0 * 5.0), 1.0);
    const std::vector<BandGap> g = exact_bandgaps(a, 3.0 * pi, 3000);
    for (const BandGap& b : g) CHECK(b.hi - b.lo < 1e-6);
}

TEST_CASE("exact branches")
{
    const BilayerAcoustics a = table4_acoustics();
    const std::vector<DispersionBranch> folded = exact_branches(a, 2.0 * pi, 2000, false);
    const std::vector<DispersionBranch> unfolded = exact_branches(a, 2.0 * pi, 2000, true);
    REQUIRE(folded.size() >= 2);
    for (const auto& b : folded) {
        for (const auto& s : b.samples) {
            CHECK(s.kappa_ell >= 0.0);
            CHECK(s.kappa_ell <= pi);
            CHECK(s.omega_norm >= 0.0);
        }
    }
    for (const auto& s : unfolded[1].samples) {
        CHECK(s.kappa_ell >= pi);
        CHECK(s.kappa_ell <= 2.0 * pi);
    }
    // First band increases monotonically in both views.
    for (std::size_t i = 1; i < unfolded[0].samples.size(); ++i) {
        CHECK(unfolded[0].samples[i].kappa_ell >= unfolded[0].samples[i - 1].kappa_ell);
    }
}

TEST_CASE("homogenised branches")
{
    const EffectiveModel e = effective_model(oracle::table4(), 1.0);
    const std::vector<double> at0 = homogenized_branches(e, 0.0);
    REQUIRE(at0.size() == 2);
    CHECK(at0[0] == 0.0);
    CHECK(at0[1] == doctest::Approx(std::sqrt(1.0 / e.eta_t)));

    EffectiveModel plain = e;
    plain.eta_y = plain.eta;
    plain.eta_m = plain.eta_t = 0.0;
    for (double k : {0.3, 1.0, 2.0}) {
        const std::vector<double> w = homogenized_branches(plain, k);
        REQUIRE(w.size() == 1);
        CHECK(w[0] * w[0] == doctest::Approx(k * k - e.eta * k * k * k * k).epsilon(1e-14));
    }
    const double k = 1e-3;
    CHECK(homogenized_branches(e, k)[0] == doctest::Approx(k).epsilon(1e-8));

    // Zero group velocity at kappa ell = pi on both branches.
    const double h = 1e-5;
    const auto lo = homogenized_branches(e, pi - h), hi = homogenized_branches(e, pi + h);
    REQUIRE(lo.size() == 2);
    REQUIRE(hi.size() == 2);
    CHECK(std::abs(hi[0] - lo[0]) / (2 * h) < 1e-6);
    CHECK(std::abs(hi[1] - lo[1]) / (2 * h) < 1e-6);

    const std::vector<DispersionBranch> cu = homogenized_curves(e, 200, true);
    CHECK(cu[1].samples.front().kappa_ell == doctest::Approx(pi));
    CHECK(cu[1].samples.back().kappa_ell == doctest::Approx(2.0 * pi));
}

TEST_CASE("long-wave agreement is fourth order")
{
    const BilayerAcoustics a = table4_acoustics();
    const EffectiveModel e = effective_model(oracle::table4(), 1.0);
    std::vector<double> lx, ly;
    // Below omega ell / c = 0.01 the difference is at round-off level.
    for (double w = 1e-2; w <= 0.3; w *= std::pow(10.0, 0.25)) {
        const double ke = exact_kappa_ell(a, w), kh = homog_kappa_ell(e, w);
        lx.push_back(std::log(w));
        ly.push_back(std::log(std::abs(ke - kh) / ke));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    CHECK(sxy / sxx == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("homogenised gap")
{
    const EffectiveModel e = effective_model(oracle::table4(), 1.0);
    const BandGap g = homogenized_bandgap(e);
    CHECK(g.lo / pi == doctest::Approx(0.84).epsilon(0.006));
    CHECK(g.hi / pi == doctest::Approx(1.32).epsilon(0.004));
    CHECK((g.hi - g.lo) / pi == doctest::Approx(0.48).epsilon(0.02));

    EffectiveModel tiny = e;
    tiny.eta = 1e-16;
    const DispersionCoeffs d = optimize_dispersion_coeffs(tiny.eta);
    tiny.eta_y = d.eta_y;
    tiny.eta_t = d.eta_t;
    const BandGap t = homogenized_bandgap(tiny);
    CHECK(t.lo == doctest::Approx(pi).epsilon(1e-6));
    CHECK(t.hi == doctest::Approx(pi).epsilon(1e-6));

    EffectiveModel none = e;
    none.eta = 0.0;
    CHECK_THROWS_AS(homogenized_bandgap(none), NoGap);
}

TEST_CASE("mKdV dispersion")
{
    const EffectiveModel e = effective_model(oracle::table4(), 1.0);
    CHECK(mkdv_dispersion(e, 0.0) == 0.0);
    CHECK(mkdv_dispersion(e, pi) == doctest::Approx(pi + 0.00463 * pi * pi * pi).epsilon(1e-4));
    EffectiveModel flat = e;
    flat.eta = 0.0;
    CHECK(mkdv_dispersion(flat, 1.7) == 1.7);
}
