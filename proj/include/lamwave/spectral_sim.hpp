#pragma once

#include "lamwave/homogenize.hpp"
#include "lamwave/soliton.hpp"

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace lamwave {

struct SpectralConfig {
    int n_points = 2048;
    double window = 0.0;       // periodic time window (s)
    double dy = 7.81e-5;       // marching step (m)
    double viscosity = 1e-8;   // s^2/m
    int pad = 2;               // zero-padding factor for the cubic term
    double edge_tolerance = 1e-6;
    int sample_every = 10;     // steps between gradient samples
    bool stop_on_blowup = false;
    double blowup_tail = 1e-8; // energy fraction above 2/3 of the resolved band

    void validate() const;
};

struct MarchResult {
    std::vector<double> t;                    // retarded sample times
    std::vector<double> y_out;                // output positions actually reached
    std::vector<std::vector<double>> fields;  // v(y_out[k], t)
    std::vector<GradientSample> gradient;
    bool blowup_detected = false;
    double blowup_y = 0.0;
    double y_reached = 0.0;
    long steps = 0;
};

/// Marches v_y = (zeta / 2c^3) v^2 v_t + (eta ell^2 / 2c^3) v_ttt + nu v_tt in retarded time
/// tau = t - y / c. The signal is v(0, t) on t_j = j T / N.
class MkdvMarcher {
public:
    MkdvMarcher(const EffectiveModel& eff, const SpectralConfig& cfg);
    ~MkdvMarcher();
    MkdvMarcher(const MkdvMarcher&) = delete;
    MkdvMarcher& operator=(const MkdvMarcher&) = delete;

    MarchResult march(std::span<const double> signal, std::span<const double> y_out);

private:
    struct Plans;
    EffectiveModel eff_;
    SpectralConfig cfg_;
    std::unique_ptr<Plans> plans_;
};

MarchResult mkdv_march(const EffectiveModel& eff, std::span<const double> signal, const SpectralConfig& cfg,
                       std::span<const double> y_out);

/// Sample times j T / N.
std::vector<double> window_times(const SpectralConfig& cfg);

struct TransportReport {
    double distance = 0.0;        // m
    double amplitude_drift = 0.0; // relative peak change
    double shape_error = 0.0;     // relative L2 error against the translated soliton
};

/// Launches the slow-space soliton as a boundary signal and propagates it 100 soliton lengths.
/// The window spans window_widths soliton durations.
TransportReport soliton_transport_test(const EffectiveModel& eff, double speed, const SpectralConfig& cfg,
                                       double lengths = 100.0, double window_widths = 60.0);

} // namespace lamwave
