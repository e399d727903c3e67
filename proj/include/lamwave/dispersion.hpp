#pragma once

#include "lamwave/homogenize.hpp"

#include <string_view>
#include <vector>

namespace lamwave {

/// Per-layer acoustics of the deformed bilayer.
struct BilayerAcoustics {
    double c1 = 0.0, c2 = 0.0;     // layer shear speeds (m/s)
    double ell1 = 0.0, ell2 = 0.0; // layer thicknesses (m)
    double z1 = 0.0, z2 = 0.0;     // impedances rho c
    double ell = 0.0;              // period (m)
    double c_eff = 0.0;            // effective speed used to normalise frequency
};

BilayerAcoustics bilayer_acoustics(const LayerPair& layers, double ell);
BilayerAcoustics bilayer_acoustics(const Laminate& laminate, double lambda);

/// cos(kappa ell) at normalised frequency omega ell / c_eff.
double exact_rhs(const BilayerAcoustics& acoustics, double omega_norm);

struct BandGap {
    double lo = 0.0; // omega ell / c
    double hi = 0.0;
    int index = 0;
};

/// Band gaps in (0, omega_max] from a uniform scan refined by bisection.
std::vector<BandGap> exact_bandgaps(const BilayerAcoustics& acoustics, double omega_max,
                                    int n_scan, double tol = 1e-13);

struct DispersionSample {
    double kappa_ell = 0.0;
    double omega_norm = 0.0;
};

struct DispersionBranch {
    int branch_index = 0;
    std::vector<DispersionSample> samples;
};

/// Passbands of the exact relation, folded into [0, pi] or unfolded band by band.
std::vector<DispersionBranch> exact_branches(const BilayerAcoustics& acoustics, double omega_max,
                                             int n_scan, bool unfolded);

/// Non-negative omega_norm roots at a given kappa ell (at most two).
std::vector<double> homogenized_branches(const EffectiveModel& eff, double kappa_ell);

/// Both homogenised branches on [0, pi]; unfolded places the upper one on [pi, 2 pi].
std::vector<DispersionBranch> homogenized_curves(const EffectiveModel& eff, int n, bool unfolded);

BandGap homogenized_bandgap(const EffectiveModel& eff);

/// Linearised one-way relation kappa ell (omega ell / c).
double mkdv_dispersion(const EffectiveModel& eff, double omega_norm);

} // namespace lamwave
