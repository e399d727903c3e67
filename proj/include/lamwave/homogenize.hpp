#pragma once

#include "lamwave/materials.hpp"

#include <array>

namespace lamwave {

/// Wave coefficients of one layer at the current stretch.
struct LayerCoefficients {
    double g = 0.0;   // Pa
    double h = 0.0;   // Pa
    double rho = 0.0; // kg/m^3
    double nu = 0.0;
};

using LayerPair = std::array<LayerCoefficients, 2>;

LayerPair layer_coefficients(const Laminate& laminate, double lambda);

struct DispersionCoeffs {
    double eta_y = 0.0;
    double eta_m = 0.0;
    double eta_t = 0.0;
};

/// Coefficients forcing zero group velocity at kappa ell = pi.
DispersionCoeffs optimize_dispersion_coeffs(double eta);

struct EffectiveModel {
    double g_eff = 0.0;   // Pa
    double rho_eff = 0.0; // kg/m^3
    double c = 0.0;       // m/s
    double zeta = 0.0;
    double eta = 0.0;
    double eta_y = 0.0;
    double eta_m = 0.0;
    double eta_t = 0.0;
    double ell = 0.0;     // deformed period (m)
    double stretch = 1.0;
    bool optimized = false;
};

/// Effective model from per-layer coefficients. Dispersion coefficients are
/// optimised when eta is below the admissible limit, otherwise left as (eta, 0, 0).
EffectiveModel effective_model(const LayerPair& layers, double ell, double stretch = 1.0);
EffectiveModel effective_model(const Laminate& laminate, double lambda);

/// Same eta through the dimensional c^4 / 12 prefactor.
double eta_dimensional_form(const LayerPair& layers);

struct CellCorrectors {
    double P = 0.0;
    double Q = 0.0;
    double nu1 = 0.5;
    double nu2 = 0.5;

    /// Piecewise (tau, phi) at cell coordinate y in [-1/2, 1/2]; phase 2 is centred.
    std::array<double, 2> tau_phi(double y) const;
    /// First-order displacement correctors per unit slow gradient.
    double U1(double y, double uy) const;
    double V1(double y, double uy) const;
};

CellCorrectors cell_correctors(const LayerPair& layers);
CellCorrectors cell_correctors(const Laminate& laminate, double lambda);

struct EffectiveEnergyCoeffs {
    double G_bar = 0.0;
    double G_breve = 0.0;
    double gb1 = 0.0;
    double gbm1 = 0.0;
    double gbm3 = 0.0;
};

EffectiveEnergyCoeffs effective_energy_coeffs(const Laminate& laminate);

double effective_energy(const EffectiveEnergyCoeffs& coeffs, double I1, double K);

struct ShearInvariants {
    double I1 = 3.0;
    double K = 0.0;
};

/// Invariants of the stretch-and-shear kinematics with the shear amount s along the layers.
ShearInvariants shear_kinematics_invariants(double lambda, double s);

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

double det(const Mat3& F);
Mat3 inverse(const Mat3& F);

/// K = |F n|^2 - |F^-T n|^-2.
double lamination_invariant(const Mat3& F, const Vec3& n);

struct PerPhaseDeformation {
    Mat3 F1{};
    Mat3 F2{};
    Vec3 theta{};
};

PerPhaseDeformation per_phase_deformation(const Laminate& laminate, const Mat3& F, const Vec3& n);

} // namespace lamwave
