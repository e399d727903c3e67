#include "lamwave/fv_sim.hpp"

#include "lamwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lamwave {

std::string_view to_string(Limiter l)
{
    switch (l) {
    case Limiter::Minmod: return "minmod";
    case Limiter::MC: return "mc";
    case Limiter::None: return "none";
    }
    return "unknown";
}

Limiter limiter_from_string(std::string_view name)
{
    if (name == "minmod") return Limiter::Minmod;
    if (name == "mc") return Limiter::MC;
    if (name == "none") return Limiter::None;
    throw DomainError("unknown limiter '" + std::string(name) + "'");
}

Grid1D build_grid(const LayerPair& layers, double ell, int cpl, double min_length)
{
    if (cpl < 4 || cpl % 2 != 0) throw GeometryError("cells per layer must be even and at least 4");
    if (!(ell > 0.0)) throw GeometryError("period must be positive");
    Grid1D g;
    g.cells_per_layer = cpl;
    g.ell = ell;
    g.dy = layers[1].nu * ell / cpl;
    const double n1_real = layers[0].nu * ell / g.dy;
    const int n1 = static_cast<int>(std::lround(n1_real));
    if (n1 < 1 || std::abs(n1_real - n1) > 1e-6 * n1_real) {
        throw GeometryError("phase-1 layer does not hold an integer number of cells (" + std::to_string(n1_real) + ")");
    }
    const int per = n1 + cpl;
    const int periods = std::max(1, static_cast<int>(std::ceil(min_length / (per * g.dy) - 1e-12)));
    g.n_cells = periods * per;
    g.domain_length = g.n_cells * g.dy;
    g.phase.resize(g.n_cells);
    g.g.resize(g.n_cells);
    g.h.resize(g.n_cells);
    g.rho.resize(g.n_cells);
    for (int i = 0; i < g.n_cells; ++i) {
        const int p = (i + cpl / 2) % per;
        const int a = p < cpl ? 1 : 0;
        g.phase[i] = static_cast<std::uint8_t>(a);
        g.g[i] = layers[a].g;
        g.h[i] = layers[a].h;
        g.rho[i] = layers[a].rho;
    }
    return g;
}

Grid1D uniform_grid(const LayerCoefficients& layer, double dy, int n)
{
    if (n < 4 || !(dy > 0.0)) throw GeometryError("uniform grid needs at least 4 cells and dy > 0");
    Grid1D g;
    g.dy = dy;
    g.n_cells = n;
    g.cells_per_layer = n;
    g.domain_length = n * dy;
    g.ell = g.domain_length;
    g.phase.assign(n, 0);
    g.g.assign(n, layer.g);
    g.h.assign(n, layer.h);
    g.rho.assign(n, layer.rho);
    return g;
}

double required_domain_length(const LayerPair& layers, double V, double t_final, double probe_max,
                              double wavelength)
{
    double cmax = 0.0;
    for (const LayerCoefficients& l : layers) {
        const double c0 = std::sqrt(l.g / l.rho);
        const double gam = V / c0;
        cmax = std::max(cmax, std::sqrt((l.g + l.h * gam * gam) / l.rho));
    }
    return cmax * t_final + probe_max + 2.0 * wavelength;
}

FluxSpeed flux_and_speed(const ShearCoefficients& sc, double rho, double gamma)
{
    return {sc.g * gamma + sc.h / 3.0 * gamma * gamma * gamma, std::sqrt((sc.g + sc.h * gamma * gamma) / rho)};
}

FvSolver::FvSolver(Grid1D grid, Limiter limiter, double cfl)
    : grid_(std::move(grid)), limiter_(limiter), cfl_(cfl)
{
    if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("Courant number must lie in (0, 1]");
    const std::size_t m = grid_.n_cells + 4;
    for (auto* v : {&eg_, &ev_, &eG_, &eH_, &eR_, &eS_, &eZ_, &eC_, &b1_, &b2_, &f1_, &f2_}) v->assign(m, 0.0);
}

double FvSolver::stable_dt(const SimState& s) const
{
    double cmax = 0.0;
    const int n = grid_.n_cells;
    for (int i = 0; i < n; ++i) {
        const double gm = s.gamma[i];
        cmax = std::max(cmax, (grid_.g[i] + grid_.h[i] * gm * gm) / grid_.rho[i]);
    }
    return cfl_ * grid_.dy / std::sqrt(cmax);
}

void FvSolver::fill_ghosts(const SimState& s, double t_mid, const Boundary& left, const Boundary& right)
{
    const int n = grid_.n_cells;
    for (int i = 0; i < n; ++i) {
        eg_[i + 2] = s.gamma[i];
        ev_[i + 2] = s.v[i];
        eG_[i + 2] = grid_.g[i];
        eH_[i + 2] = grid_.h[i];
        eR_[i + 2] = grid_.rho[i];
    }
    auto copy_cell = [&](int dst, int src, double vb, bool mirror) {
        eg_[dst] = eg_[src];
        ev_[dst] = mirror ? 2.0 * vb - ev_[src] : ev_[src];
        eG_[dst] = eG_[src];
        eH_[dst] = eH_[src];
        eR_[dst] = eR_[src];
    };
    switch (left.kind) {
    case Boundary::Kind::Extrapolate:
        copy_cell(1, 2, 0.0, false);
        copy_cell(0, 2, 0.0, false);
        break;
    case Boundary::Kind::Periodic:
        copy_cell(1, n + 1, 0.0, false);
        copy_cell(0, n, 0.0, false);
        break;
    case Boundary::Kind::Velocity: {
        const double vb = left.velocity(t_mid);
        copy_cell(1, 2, vb, true);
        copy_cell(0, 3, vb, true);
        break;
    }
    }
    switch (right.kind) {
    case Boundary::Kind::Extrapolate:
        copy_cell(n + 2, n + 1, 0.0, false);
        copy_cell(n + 3, n + 1, 0.0, false);
        break;
    case Boundary::Kind::Periodic:
        copy_cell(n + 2, 2, 0.0, false);
        copy_cell(n + 3, 3, 0.0, false);
        break;
    case Boundary::Kind::Velocity: {
        const double vb = right.velocity(t_mid);
        copy_cell(n + 2, n + 1, vb, true);
        copy_cell(n + 3, n, vb, true);
        break;
    }
    }
}

double FvSolver::step(SimState& s, const Boundary& left, const Boundary& right)
{
    const double dt = stable_dt(s);
    step(s, dt, left, right);
    return dt;
}

namespace {

inline double limit(Limiter l, double theta)
{
    switch (l) {
    case Limiter::Minmod: return std::max(0.0, std::min(1.0, theta));
    case Limiter::MC: return std::max(0.0, std::min({0.5 * (1.0 + theta), 2.0, 2.0 * theta}));
    case Limiter::None: return 1.0;
    }
    return 0.0;
}

} // namespace

void FvSolver::step(SimState& s, double dt, const Boundary& left, const Boundary& right)
{
    const int n = grid_.n_cells;
    const int m = n + 4;
    fill_ghosts(s, s.t + 0.5 * dt, left, right);
    const double lam = dt / grid_.dy;

    double cmax = 0.0;
    for (int e = 0; e < m; ++e) {
        const double gm = eg_[e];
        const double c = std::sqrt((eG_[e] + eH_[e] * gm * gm) / eR_[e]);
        eC_[e] = c;
        eZ_[e] = eR_[e] * c;
        eS_[e] = eG_[e] * gm + eH_[e] / 3.0 * gm * gm * gm;
        cmax = std::max(cmax, c);
    }
    if (cmax * lam > 1.0 + 1e-12) {
        throw CFLViolation("Courant number " + std::to_string(cmax * lam) + " exceeds one");
    }

    // Wave strengths at interface j between extended cells j-1 and j.
    for (int j = 1; j < m; ++j) {
        const double df1 = -(ev_[j] - ev_[j - 1]);
        const double df2 = -(eS_[j] - eS_[j - 1]);
        const double zl = eZ_[j - 1], zr = eZ_[j];
        const double inv = 1.0 / (zl + zr);
        b1_[j] = (df2 + zr * df1) * inv;
        b2_[j] = (zl * df1 - df2) * inv;
    }

    // Limited second-order fluxes on the interfaces bounding real cells.
    for (int j = 2; j <= n + 2; ++j) {
        const double zl = eZ_[j - 1], zr = eZ_[j];
        double p1 = 0.0, p2 = 0.0;
        if (b1_[j] != 0.0) {
            const double th = b1_[j + 1] * (1.0 + zl * eZ_[j]) / (b1_[j] * (1.0 + zl * zl));
            p1 = limit(limiter_, th) * b1_[j];
        }
        if (b2_[j] != 0.0) {
            const double th = b2_[j - 1] * (1.0 + zr * eZ_[j - 1]) / (b2_[j] * (1.0 + zr * zr));
            p2 = limit(limiter_, th) * b2_[j];
        }
        const double a1 = -0.5 * (1.0 - lam * eC_[j - 1]) * p1;
        const double a2 = 0.5 * (1.0 - lam * eC_[j]) * p2;
        f1_[j] = a1 + a2;
        f2_[j] = a1 * zl - a2 * zr;
    }

    for (int i = 0; i < n; ++i) {
        const int jl = i + 2, jr = i + 3;
        const double dq1 = -lam * (b2_[jl] + b1_[jr]) - lam * (f1_[jr] - f1_[jl]);
        const double dq2 = -lam * (-b2_[jl] * eZ_[jl] + b1_[jr] * eZ_[jr - 1]) - lam * (f2_[jr] - f2_[jl]);
        s.gamma[i] += dq1;
        s.v[i] += dq2 / grid_.rho[i];
    }
    s.t += dt;
}

double FvSolver::total_strain(const SimState& s) const
{
    double sum = 0.0;
    for (double x : s.gamma) sum += x;
    return sum * grid_.dy;
}

double FvSolver::total_momentum(const SimState& s) const
{
    double sum = 0.0;
    for (int i = 0; i < grid_.n_cells; ++i) sum += grid_.rho[i] * s.v[i];
    return sum * grid_.dy;
}

double snap_to_layer_midpoint(double y, double ell)
{
    return std::round(2.0 * y / ell) * 0.5 * ell;
}

double impact_velocity(double V, double kappa, double c, double t)
{
    const double ph = kappa * c * t;
    if (ph < 0.0 || ph > 2.0 * std::numbers::pi) return 0.0;
    const double sn = std::sin(0.5 * ph);
    return V * sn * sn;
}

ImpactResult impact_run(const Grid1D& grid, const EffectiveModel& eff, double V, double kappa,
                        std::span<const double> probe_y, double t_final, Limiter limiter)
{
    if (!(V >= 0.0) || !(kappa > 0.0)) throw DomainError("impact needs V >= 0 and kappa > 0");
    struct Tap {
        int a;
        int b;
    };
    std::vector<Tap> taps;
    ImpactResult out;
    for (double y : probe_y) {
        if (!(y >= 0.0 && y < grid.domain_length)) throw DomainError("probe outside the domain");
        const double x = y / grid.dy;
        const double r = std::round(x);
        Tap t;
        if (std::abs(x - r) < 1e-9 && r >= 1.0) {
            t = {static_cast<int>(r) - 1, static_cast<int>(r)};
        } else {
            const int k = std::min(static_cast<int>(std::floor(x)), grid.n_cells - 1);
            t = {k, k};
        }
        taps.push_back(t);
        out.probes.push_back({y, {}, {}});
    }
    FvSolver solver(grid, limiter);
    SimState s = SimState::zero(grid.n_cells);
    const double c = eff.c;
    const Boundary left = Boundary::imposed([=](double t) { return impact_velocity(V, kappa, c, t); });
    const Boundary right = Boundary::extrapolate();
    while (s.t < t_final) {
        solver.step(s, left, right);
        ++out.steps;
        for (std::size_t k = 0; k < taps.size(); ++k) {
            const double v = 0.5 * (s.v[taps[k].a] + s.v[taps[k].b]);
            out.probes[k].t.push_back(s.t);
            out.probes[k].v_over_c.push_back(v / c);
        }
    }
    out.dy = grid.dy;
    out.n_cells = grid.n_cells;
    out.domain_length = grid.domain_length;
    return out;
}

} // namespace lamwave
