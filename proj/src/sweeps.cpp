#include "lamwave/sweeps.hpp"

#include "lamwave/errors.hpp"
#include "lamwave/homogenize.hpp"
#include "lamwave/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace lamwave {

std::string_view to_string(SweepVariable v)
{
    switch (v) {
    case SweepVariable::MagneticLoadProduct: return "magnetic_load_product";
    case SweepVariable::VolumeFraction2: return "volume_fraction_2";
    case SweepVariable::ModulusContrast: return "modulus_contrast";
    }
    return "unknown";
}

SweepVariable sweep_variable_from_string(std::string_view name)
{
    if (name == "magnetic_load_product") return SweepVariable::MagneticLoadProduct;
    if (name == "volume_fraction_2") return SweepVariable::VolumeFraction2;
    if (name == "modulus_contrast") return SweepVariable::ModulusContrast;
    throw DomainError("unknown sweep variable '" + std::string(name) + "'");
}

void SweepSpec::validate() const
{
    if (!(lo < hi)) throw DomainError("sweep range needs lo < hi");
    if (n < 2) throw DomainError("sweep needs at least two points");
    if (variable == SweepVariable::VolumeFraction2 && !(lo > 0.0 && hi < 1.0)) {
        throw DomainError("volume fraction sweep must stay inside (0, 1)");
    }
    if (variable == SweepVariable::ModulusContrast && !(lo > 0.0)) {
        throw DomainError("modulus contrast must be positive");
    }
    if (!(omega_max_norm > 0.0) || n_scan < 10) throw DomainError("invalid band-gap scan settings");
    if (threads < 1) throw DomainError("threads must be at least one");
}

std::vector<double> sweep_grid(const SweepSpec& spec)
{
    std::vector<double> x(spec.n);
    const bool logx = spec.variable == SweepVariable::ModulusContrast;
    const double a = logx ? std::log10(spec.lo) : spec.lo;
    const double b = logx ? std::log10(spec.hi) : spec.hi;
    for (int i = 0; i < spec.n; ++i) {
        const double u = a + (b - a) * i / (spec.n - 1);
        x[i] = logx ? std::pow(10.0, u) : u;
    }
    return x;
}

Laminate with_volume_fraction(const Laminate& lam, double nu2)
{
    Phase p1 = lam.phase1(), p2 = lam.phase2();
    p2.volume_fraction = nu2;
    p1.volume_fraction = 1.0 - nu2;
    return Laminate(p1, p2, lam.period());
}

Laminate with_contrast(const Laminate& lam, double contrast)
{
    Phase p2 = lam.phase2();
    p2.model.shear_modulus = contrast * lam.phase1().model.shear_modulus;
    return Laminate(lam.phase1(), p2, lam.period());
}

namespace {

// Fills one row from the effective state at stretch lambda. Frequencies and speeds are
// multiplied by the given factors to express them in the table units.
void fill_row(SweepRow& row, const SweepSpec& spec, const Laminate& lam, double lambda, double freq_factor,
              double speed_factor)
{
    const LayerPair layers = layer_coefficients(lam, lambda);
    const double ell = lambda * lam.period();
    const EffectiveModel eff = effective_model(layers, ell, lambda);
    row.lambda = lambda;
    row.eta = eff.eta;
    row.zeta = eff.zeta;
    row.speed_scale = speed_factor;
    if (spec.bandgaps_exact) {
        for (BandGap g : exact_bandgaps(bilayer_acoustics(layers, ell), spec.omega_max_norm, spec.n_scan)) {
            g.lo *= freq_factor;
            g.hi *= freq_factor;
            row.exact_gaps.push_back(g);
        }
    }
    if (spec.bandgaps_homog && eff.eta > 0.0 && eff.optimized) {
        BandGap g = homogenized_bandgap(eff);
        g.lo *= freq_factor;
        g.hi *= freq_factor;
        row.homog_gap = g;
    }
    if (spec.soliton_bounds && eff.eta >= 0.0 && eff.zeta > 0.0) {
        const SpeedBound b = existence_bound(eff);
        if (b.max_speed_ratio) {
            row.max_speed = *b.max_speed_ratio * speed_factor;
            row.delta_max = max_strain_amplitude(eff);
        }
    }
}

void parallel_rows(std::size_t n, int threads, const std::function<void(std::size_t)>& body)
{
    const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(t);
    for (std::size_t k = 0; k < t; ++k) {
        pool.emplace_back([&, k] {
            try {
                for (std::size_t i = k; i < n; i += t) body(i);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

double golden_max(const std::function<double(double)>& f, double a, double b)
{
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-10) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

double grid_then_golden(const std::function<double(double)>& f, double lo, double hi)
{
    const int n = 400;
    int best = 0;
    double fb = -1e300;
    for (int i = 0; i <= n; ++i) {
        const double v = f(lo + (hi - lo) * i / n);
        if (v > fb) {
            fb = v;
            best = i;
        }
    }
    const double a = lo + (hi - lo) * std::max(0, best - 1) / n;
    const double b = lo + (hi - lo) * std::min(n, best + 1) / n;
    return golden_max(f, a, b);
}

} // namespace

double argmax_eta_volume_fraction(const Laminate& lam, double lo, double hi)
{
    return grid_then_golden([&](double nu2) { return effective_model(with_volume_fraction(lam, nu2), 1.0).eta; },
                            lo, hi);
}

double argmax_delta_volume_fraction(const Laminate& lam, double lo, double hi)
{
    return grid_then_golden(
        [&](double nu2) {
            const EffectiveModel e = effective_model(with_volume_fraction(lam, nu2), 1.0);
            if (!(e.eta > 0.0) || !(e.zeta > 0.0) || !e.optimized) return 0.0;
            return max_strain_amplitude(e);
        },
        lo, hi);
}

SweepTable sweep_magnetic(const Laminate& lam, const SweepSpec& spec)
{
    spec.validate();
    SweepTable tab;
    tab.spec = spec;
    tab.c_ref = effective_model(lam, 1.0).c;
    tab.frequency_unit = "omega_L_over_c_ref";
    const std::vector<double> xs = sweep_grid(spec);
    tab.rows.resize(xs.size());
    parallel_rows(xs.size(), spec.threads, [&](std::size_t i) {
        SweepRow& row = tab.rows[i];
        row.x = xs[i];
        try {
            const StretchSolution st = stretch_from_field(lam, MagneticLoad::product(xs[i]));
            const double l = st.lambda;
            const double c = effective_model(lam, l).c;
            fill_row(row, spec, lam, l, c / (l * tab.c_ref), c / tab.c_ref);
            if (st.multiple_roots) row.flag = "multiple_roots";
        } catch (const NoRoot&) {
            row.flag = "locking";
        } catch (const GentLocking&) {
            row.flag = "locking";
        }
    });
    return tab;
}

SweepTable sweep_volume_fraction(const Laminate& lam, const SweepSpec& spec)
{
    spec.validate();
    SweepTable tab;
    tab.spec = spec;
    tab.c_ref = effective_model(lam, 1.0).c;
    tab.frequency_unit = "omega_ell_over_c";
    const std::vector<double> xs = sweep_grid(spec);
    tab.rows.resize(xs.size());
    parallel_rows(xs.size(), spec.threads, [&](std::size_t i) {
        SweepRow& row = tab.rows[i];
        row.x = xs[i];
        fill_row(row, spec, with_volume_fraction(lam, xs[i]), 1.0, 1.0, 1.0);
    });
    tab.argmax_eta = argmax_eta_volume_fraction(lam, spec.lo, spec.hi);
    if (spec.soliton_bounds) tab.argmax_delta_max = argmax_delta_volume_fraction(lam, spec.lo, spec.hi);
    return tab;
}

SweepTable sweep_contrast(const Laminate& lam, const SweepSpec& spec)
{
    spec.validate();
    SweepTable tab;
    tab.spec = spec;
    tab.c_ref = effective_model(lam, 1.0).c;
    tab.frequency_unit = "omega_ell_over_c";
    const std::vector<double> xs = sweep_grid(spec);
    tab.rows.resize(xs.size());
    parallel_rows(xs.size(), spec.threads, [&](std::size_t i) {
        SweepRow& row = tab.rows[i];
        row.x = xs[i];
        fill_row(row, spec, with_contrast(lam, xs[i]), 1.0, 1.0, 1.0);
    });
    return tab;
}

SweepTable run_sweep(const Laminate& lam, const SweepSpec& spec)
{
    switch (spec.variable) {
    case SweepVariable::MagneticLoadProduct: return sweep_magnetic(lam, spec);
    case SweepVariable::VolumeFraction2: return sweep_volume_fraction(lam, spec);
    case SweepVariable::ModulusContrast: return sweep_contrast(lam, spec);
    }
    throw DomainError("unknown sweep variable");
}

} // namespace lamwave
