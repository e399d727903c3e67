#pragma once

#include "lamwave/homogenize.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace lamwave {

enum class Limiter { Minmod, MC, None };

std::string_view to_string(Limiter l);
Limiter limiter_from_string(std::string_view name);

/// Cell-centred grid with per-cell material data.
struct Grid1D {
    double dy = 0.0;
    int n_cells = 0;
    int cells_per_layer = 0;
    double domain_length = 0.0;
    double ell = 0.0;
    std::vector<std::uint8_t> phase; // 0 for phase 1, 1 for phase 2
    std::vector<double> g, h, rho;
};

/// Layered grid with the origin in the middle of a phase-2 layer. The length is
/// rounded up to whole periods.
Grid1D build_grid(const LayerPair& layers, double ell, int cells_per_layer, double min_length);

/// Uniform medium of n cells.
Grid1D uniform_grid(const LayerCoefficients& layer, double dy, int n_cells);

/// Length keeping right-boundary signals away from the probes.
double required_domain_length(const LayerPair& layers, double V, double t_final, double probe_max,
                              double wavelength);

struct FluxSpeed {
    double sigma = 0.0; // Pa
    double c = 0.0;     // m/s
};

FluxSpeed flux_and_speed(const ShearCoefficients& coeffs, double rho, double gamma);

struct SimState {
    std::vector<double> gamma;
    std::vector<double> v;
    double t = 0.0;

    static SimState zero(int n) { return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0}; }
};

struct Boundary {
    enum class Kind { Extrapolate, Periodic, Velocity };
    Kind kind = Kind::Extrapolate;
    /// Imposed velocity u_t(t) for Kind::Velocity, evaluated at mid-step.
    std::function<double(double)> velocity;

    static Boundary extrapolate() { return {Kind::Extrapolate, {}}; }
    static Boundary periodic() { return {Kind::Periodic, {}}; }
    static Boundary imposed(std::function<double(double)> f) { return {Kind::Velocity, std::move(f)}; }
};

/// Second-order f-wave scheme for (gamma, rho v) with flux (-v, -sigma).
class FvSolver {
public:
    FvSolver(Grid1D grid, Limiter limiter, double cfl = 0.95);

    const Grid1D& grid() const { return grid_; }

    /// Largest stable step for the current state at the configured Courant number.
    double stable_dt(const SimState& s) const;

    /// Advances by the CFL step; returns dt.
    double step(SimState& s, const Boundary& left, const Boundary& right);
    /// Advances by a prescribed dt; throws CFLViolation when a wave crosses a cell.
    void step(SimState& s, double dt, const Boundary& left, const Boundary& right);

    double total_strain(const SimState& s) const;
    double total_momentum(const SimState& s) const;

private:
    void fill_ghosts(const SimState& s, double t_mid, const Boundary& left, const Boundary& right);

    Grid1D grid_;
    Limiter limiter_;
    double cfl_;
    // Extended arrays with two ghost cells on each side.
    std::vector<double> eg_, ev_, eG_, eH_, eR_, eS_, eZ_, eC_;
    std::vector<double> b1_, b2_, f1_, f2_;
};

struct ProbeRecord {
    double y = 0.0;
    std::vector<double> t;
    std::vector<double> v_over_c;
};

/// Nearest layer midpoint; the first-order cell corrector vanishes there.
double snap_to_layer_midpoint(double y, double ell);

struct ImpactResult {
    std::vector<ProbeRecord> probes;
    long steps = 0;
    double dy = 0.0;
    int n_cells = 0;
    double domain_length = 0.0;
};

/// Velocity V sin^2(kappa c t / 2) for kappa c t in [0, 2 pi], zero afterwards.
double impact_velocity(double V, double kappa, double c, double t);

ImpactResult impact_run(const Grid1D& grid, const EffectiveModel& eff, double V, double kappa,
                        std::span<const double> probe_y, double t_final, Limiter limiter);

} // namespace lamwave
