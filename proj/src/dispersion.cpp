#include "lamwave/dispersion.hpp"

#include "lamwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lamwave {

namespace {

constexpr double pi = std::numbers::pi;
// Rounding can push |cos(kappa ell)| a few ulps above one at a closed gap.
constexpr double gap_threshold = 1e-12;

double excess(const BilayerAcoustics& a, double w)
{
    return std::abs(exact_rhs(a, w)) - 1.0;
}

double refine_edge(const BilayerAcoustics& a, double inside_pass, double inside_gap, double tol)
{
    double p = inside_pass, g = inside_gap;
    for (int it = 0; it < 200 && std::abs(g - p) > tol; ++it) {
        const double mid = 0.5 * (p + g);
        if (excess(a, mid) > 0.0) g = mid; else p = mid;
    }
    return 0.5 * (p + g);
}

} // namespace

BilayerAcoustics bilayer_acoustics(const LayerPair& L, double ell)
{
    BilayerAcoustics a;
    a.c1 = std::sqrt(L[0].g / L[0].rho);
    a.c2 = std::sqrt(L[1].g / L[1].rho);
    a.ell1 = L[0].nu * ell;
    a.ell2 = L[1].nu * ell;
    a.z1 = L[0].rho * a.c1;
    a.z2 = L[1].rho * a.c2;
    a.ell = ell;
    a.c_eff = effective_model(L, ell).c;
    return a;
}

BilayerAcoustics bilayer_acoustics(const Laminate& lam, double lambda)
{
    return bilayer_acoustics(layer_coefficients(lam, lambda), lambda * lam.period());
}

double exact_rhs(const BilayerAcoustics& a, double omega_norm)
{
    const double omega = omega_norm * a.c_eff / a.ell;
    const double p = omega * a.ell1 / a.c1;
    const double q = omega * a.ell2 / a.c2;
    const double mix = 0.5 * (a.z1 / a.z2 + a.z2 / a.z1);
    return std::cos(p) * std::cos(q) - mix * std::sin(p) * std::sin(q);
}

std::vector<BandGap> exact_bandgaps(const BilayerAcoustics& a, double omega_max, int n_scan, double tol)
{
    if (!(omega_max > 0.0) || n_scan < 2) throw DomainError("band-gap scan needs omega_max > 0 and n_scan >= 2");
    std::vector<BandGap> gaps;
    const double dw = omega_max / n_scan;
    bool in_gap = false;
    double lo = 0.0;
    for (int k = 1; k <= n_scan; ++k) {
        const double w = k * dw;
        const bool g = excess(a, w) > gap_threshold;
        if (g && !in_gap) {
            lo = refine_edge(a, w - dw, w, tol);
            in_gap = true;
        } else if (!g && in_gap) {
            const double hi = refine_edge(a, w, w - dw, tol);
            gaps.push_back({lo, hi, static_cast<int>(gaps.size()) + 1});
            in_gap = false;
        }
    }
    return gaps;
}

std::vector<DispersionBranch> exact_branches(const BilayerAcoustics& a, double omega_max, int n_scan,
                                             bool unfolded)
{
    const std::vector<BandGap> gaps = exact_bandgaps(a, omega_max, n_scan);
    std::vector<DispersionBranch> out(gaps.size() + 1);
    for (std::size_t b = 0; b < out.size(); ++b) out[b].branch_index = static_cast<int>(b);
    const double dw = omega_max / n_scan;
    for (int k = 0; k <= n_scan; ++k) {
        const double w = k * dw;
        const double r = exact_rhs(a, w);
        if (std::abs(r) > 1.0 + gap_threshold) continue;
        std::size_t band = 0;
        while (band < gaps.size() && w >= gaps[band].hi) ++band;
        if (band < gaps.size() && w > gaps[band].lo) continue;
        const double kap = std::acos(std::clamp(r, -1.0, 1.0));
        double kl = kap;
        if (unfolded) {
            const double b = static_cast<double>(band);
            kl = (band % 2 == 0) ? b * pi + kap : (b + 1.0) * pi - kap;
        }
        out[band].samples.push_back({kl, w});
    }
    return out;
}

std::vector<double> homogenized_branches(const EffectiveModel& e, double kl)
{
    const double k2 = kl * kl;
    const double A = e.eta_t;
    const double B = -(1.0 - e.eta_m * k2);
    const double C = k2 - e.eta_y * k2 * k2;
    std::vector<double> chi;
    if (A == 0.0) {
        if (B != 0.0) chi.push_back(-C / B);
    } else {
        const double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) return {};
        const double s = std::sqrt(disc);
        const double q = -0.5 * (B + std::copysign(s, B));
        chi.push_back(q / A);
        chi.push_back(q != 0.0 ? C / q : 0.0);
    }
    std::vector<double> out;
    for (double x : chi) {
        if (x >= 0.0) out.push_back(std::sqrt(x));
        else if (x > -1e-15) out.push_back(0.0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<DispersionBranch> homogenized_curves(const EffectiveModel& e, int n, bool unfolded)
{
    std::vector<DispersionBranch> out(2);
    out[0].branch_index = 0;
    out[1].branch_index = 1;
    for (int i = 0; i <= n; ++i) {
        const double kl = pi * i / n;
        const std::vector<double> w = homogenized_branches(e, kl);
        if (w.size() == 2) {
            out[0].samples.push_back({kl, w[0]});
            out[1].samples.push_back({unfolded ? 2.0 * pi - kl : kl, w[1]});
        } else if (w.size() == 1) {
            out[0].samples.push_back({kl, w[0]});
        }
    }
    if (unfolded) std::reverse(out[1].samples.begin(), out[1].samples.end());
    return out;
}

BandGap homogenized_bandgap(const EffectiveModel& e)
{
    if (!(e.eta > 0.0)) throw NoGap("homogenised band gap requires eta > 0");
    if (!(e.eta_t > 0.0)) throw NoGap("homogenised band gap requires eta_t > 0");
    const double s = pi * std::sqrt(2.0 * e.eta);
    if (!(s < 1.0)) throw NoGap("eta too large for a homogenised band gap");
    return {std::sqrt((1.0 - s) / (2.0 * e.eta_t)), std::sqrt((1.0 + s) / (2.0 * e.eta_t)), 1};
}

double mkdv_dispersion(const EffectiveModel& e, double w)
{
    return w + 0.5 * e.eta * w * w * w;
}

} // namespace lamwave
