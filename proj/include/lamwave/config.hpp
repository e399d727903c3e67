#pragma once

#include "lamwave/fv_sim.hpp"
#include "lamwave/materials.hpp"
#include "lamwave/soliton.hpp"
#include "lamwave/sweeps.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lamwave {

/// Boundary impact shared by the finite-volume and spectral runs.
struct ImpactConfig {
    double V_over_c = 2.0;
    double wavelengths_per_period = 16.0; // forcing wavelength 2 pi / kappa in units of ell
    std::vector<double> probes_y_star_multiples{1.0, 2.0};
    std::string figure = "fig5";
};

struct FvConfig {
    int cells_per_layer = 32;
    double t_final_factor = 1.5; // extra forcing durations after the last probe is reached
    Limiter limiter = Limiter::Minmod;
    bool probe_snap = true;
};

struct MkdvConfig {
    int n_points = 2048;
    double window_factor = 8.0; // window length in forcing durations
    double dy_m = 7.81e-5;
    double viscosity = 1e-8;
    int pad = 2;
};

struct DispersionConfig {
    double omega_max_over_pi = 3.0;
    int n_scan = 3000;
    int n_kappa = 400;
};

struct SolitonConfig {
    std::vector<double> speed_ratios{1.026};
    double xi_max = 3.0;
    int n_xi = 401;
    double speed_min = 1.0;
    double speed_max = 1.6;
    int n_speed = 301;
    double validity_rel_err = 0.1;
};

/// Parsed and validated run configuration.
struct RunConfig {
    Phase phase1;
    Phase phase2;
    double period = 0.0;
    std::optional<MagneticLoad> load;
    ImpactConfig impact;
    FvConfig fv;
    MkdvConfig mkdv;
    DispersionConfig dispersion;
    SolitonConfig soliton;
    std::optional<SweepSpec> sweep;
    /// Stable text of every resolved value; the output hash is taken from it.
    std::string canonical;

    Laminate laminate() const { return Laminate(phase1, phase2, period); }
};

/// Throws ValidationError listing every problem with its line and column.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

} // namespace lamwave
