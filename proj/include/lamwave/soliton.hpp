#pragma once

#include "lamwave/homogenize.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lamwave {

enum class WaveModelVariant { FullHomogenized, SlowSpace, SlowTime };

std::string_view to_string(WaveModelVariant v);
WaveModelVariant variant_from_string(std::string_view name);

struct OscillatorCoeffs {
    double c1 = 0.0;
    double c3 = 0.0;
};

/// Coefficients of Phi'' - c1 Phi + c3 Phi^3 = 0 for a wave of speed s (m/s).
/// Does not check signs.
OscillatorCoeffs oscillator_coeffs(const EffectiveModel& eff, WaveModelVariant v, double speed);

struct SolitonSolution {
    double speed = 0.0;        // m/s
    double c1 = 0.0;
    double c3 = 0.0;
    double delta = 0.0;        // strain amplitude
    double length = 0.0;       // m
    double disp_amplitude = 0.0; // m
    int sign = 1;
};

/// Throws NoSoliton when c1 or c3 is not positive.
SolitonSolution solve_soliton(const EffectiveModel& eff, WaveModelVariant v, double speed, int sign = 1);

struct Waveform {
    std::vector<double> strain;
    std::vector<double> displacement;
};

/// Strain u_y and displacement u on the dimensionless coordinate xi = (y - s t) / ell.
Waveform soliton_waveform(const SolitonSolution& sol, double ell, const std::vector<double>& xi);

double gudermannian(double x);

/// Strain amplitude squared; keeps the analytic value even where c1, c3 are both negative.
double delta_squared(const EffectiveModel& eff, WaveModelVariant v, double speed_ratio);

enum class UnboundedCase { None, Degenerate, NegativeRoots, NoRealRoot };

struct SpeedBound {
    /// Empty when solitary waves exist for every speed above c.
    std::optional<double> max_speed_ratio;
    UnboundedCase reason = UnboundedCase::None;
};

SpeedBound existence_bound(const EffectiveModel& eff);

/// Throws NoBound when the speed is unbounded.
double max_strain_amplitude(const EffectiveModel& eff);

struct ValidityCrossing {
    double speed_ratio = 1.0;
    /// The crossing speed is beyond the full-model existence bound.
    bool beyond_existence_bound = false;
};

/// Smallest s/c > 1 where |delta_variant / delta_full - 1| reaches rel_err.
ValidityCrossing mkdv_validity_speed(const EffectiveModel& eff, WaveModelVariant v, double rel_err = 0.1,
                                     double search_max = 10.0);

/// Shock formation distance (m) for the sin^2 impact of amplitude V (m/s) and wavenumber kappa (1/m).
double shock_distance(const EffectiveModel& eff, double V, double kappa);

struct GradientSample {
    double y = 0.0;
    double max_vt = 0.0; // max over time of |v_t| at this position (m/s^2)
};

/// Largest |dv/dt| of a sampled series, by central differences.
double max_abs_time_derivative(std::span<const double> t, std::span<const double> v);

/// Distance where the gradient diverges, from a linear fit of G0 / max|v_t| against y.
/// Uses samples with the ratio in [lo, hi] that precede the first sample below lo.
std::optional<double> extrapolate_blowup(std::span<const GradientSample> samples, double G0, double lo = 0.15,
                                         double hi = 0.4);

} // namespace lamwave
