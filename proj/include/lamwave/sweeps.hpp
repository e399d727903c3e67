#pragma once

#include "lamwave/dispersion.hpp"
#include "lamwave/materials.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lamwave {

enum class SweepVariable { MagneticLoadProduct, VolumeFraction2, ModulusContrast };

std::string_view to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(std::string_view name);

struct SweepSpec {
    SweepVariable variable = SweepVariable::MagneticLoadProduct;
    double lo = 0.0;
    double hi = 1.0;
    int n = 201;
    bool bandgaps_exact = true;
    bool bandgaps_homog = true;
    bool soliton_bounds = true;
    bool stretch = true;
    double omega_max_norm = 3.0 * 3.141592653589793; // scan limit in omega ell / c
    int n_scan = 3000;
    int threads = 1;

    void validate() const;
};

struct SweepRow {
    double x = 0.0;
    double lambda = 1.0;
    double eta = 0.0;
    double zeta = 0.0;
    double speed_scale = 1.0; // c / c_ref
    std::vector<BandGap> exact_gaps;
    std::optional<BandGap> homog_gap;
    std::optional<double> max_speed; // in units of c_ref
    std::optional<double> delta_max;
    std::string flag;                // empty unless the row failed (e.g. "locking")
};

struct SweepTable {
    SweepSpec spec;
    double c_ref = 0.0;
    /// Frequencies are omega L / c_ref for magnetic sweeps and omega ell / c otherwise.
    std::string frequency_unit;
    std::vector<SweepRow> rows;
    std::optional<double> argmax_eta;
    std::optional<double> argmax_delta_max;
};

/// Grid of the sweep variable; contrast sweeps are uniform in log10.
std::vector<double> sweep_grid(const SweepSpec& spec);

SweepTable sweep_magnetic(const Laminate& laminate, const SweepSpec& spec);
SweepTable sweep_volume_fraction(const Laminate& laminate, const SweepSpec& spec);
SweepTable sweep_contrast(const Laminate& laminate, const SweepSpec& spec);
SweepTable run_sweep(const Laminate& laminate, const SweepSpec& spec);

/// Laminate with phase-2 volume fraction nu2 (phase 1 takes the rest).
Laminate with_volume_fraction(const Laminate& laminate, double nu2);
/// Laminate with G2 = contrast * G1.
Laminate with_contrast(const Laminate& laminate, double contrast);

/// Maximiser of eta over nu2 in (lo, hi).
double argmax_eta_volume_fraction(const Laminate& laminate, double lo = 0.01, double hi = 0.99);
/// Maximiser of the critical strain amplitude over nu2 in (lo, hi).
double argmax_delta_volume_fraction(const Laminate& laminate, double lo = 0.01, double hi = 0.99);

} // namespace lamwave
