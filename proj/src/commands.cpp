#include "lamwave/commands.hpp"

#include "lamwave/dispersion.hpp"
#include "lamwave/errors.hpp"
#include "lamwave/fv_sim.hpp"
#include "lamwave/output.hpp"
#include "lamwave/spectral_sim.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace lamwave {

namespace {

using nlohmann::json;
constexpr double pi = std::numbers::pi;

constexpr std::array<std::pair<Command, std::string_view>, 8> command_table{{
    {Command::Effective, "effective"},
    {Command::Dispersion, "dispersion"},
    {Command::Bandgap, "bandgap"},
    {Command::Soliton, "soliton"},
    {Command::Magnetostatic, "magnetostatic"},
    {Command::SimulateFv, "simulate-fv"},
    {Command::SimulateMkdv, "simulate-mkdv"},
    {Command::Sweep, "sweep"},
}};

std::string fmt(double x) { return format_double(x); }

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return out;
}

/// Everything a command needs about the deformed laminate.
struct State {
    Laminate laminate;
    StretchSolution stretch;
    LayerPair layers;
    EffectiveModel eff;
};

State resolve(const RunConfig& cfg)
{
    Laminate lam = cfg.laminate();
    StretchSolution st;
    if (cfg.load) st = stretch_from_field(lam, *cfg.load);
    LayerPair layers = layer_coefficients(lam, st.lambda);
    EffectiveModel eff = effective_model(lam, st.lambda);
    return {std::move(lam), st, layers, eff};
}

json effective_json(const EffectiveModel& e)
{
    return {{"g_eff", e.g_eff}, {"rho_eff", e.rho_eff}, {"c", e.c},         {"zeta", e.zeta},
            {"eta", e.eta},     {"eta_y", e.eta_y},     {"eta_m", e.eta_m}, {"eta_t", e.eta_t},
            {"ell", e.ell},     {"stretch", e.stretch}, {"optimized", e.optimized}};
}

/// Collects files and writes the JSON summary last.
class Emitter {
public:
    Emitter(Command cmd, const RunConfig& cfg, const RunOptions& opt)
        : cmd_(cmd), dir_(opt.out_dir, fnv1a_hex(cfg.canonical))
    {
        summary_["command"] = std::string(to_string(cmd));
        summary_["config_hash"] = dir_.hash();
    }

    json& summary() { return summary_; }

    std::string csv(const std::string& stem, const CsvTable& t)
    {
        files_.push_back(dir_.write_csv(stem, t));
        return files_.back();
    }

    void figure(const std::string& fig, const std::vector<std::string>& files) { figures_.emplace_back(fig, files); }

    CommandOutput finish()
    {
        const std::string stem(to_string(cmd_));
        files_.push_back(stem + "_" + dir_.hash() + ".json");
        summary_["files"] = files_;
        std::string text = summary_.dump(2) + "\n";
        dir_.write_json(stem, text);
        for (const auto& [fig, files] : figures_) dir_.register_figure(fig, files);
        return {std::move(text), files_};
    }

private:
    Command cmd_;
    OutputDir dir_;
    json summary_;
    std::vector<std::string> files_;
    std::vector<std::pair<std::string, std::vector<std::string>>> figures_;
};

json gap_json(const BandGap& g, const char* theory)
{
    return {{"index", g.index}, {"lo_over_pi", g.lo / pi}, {"hi_over_pi", g.hi / pi}, {"theory", theory}};
}

std::vector<json> all_gaps(const State& s, const RunConfig& cfg)
{
    std::vector<json> out;
    const BilayerAcoustics ac = bilayer_acoustics(s.layers, s.eff.ell);
    for (const BandGap& g : exact_bandgaps(ac, cfg.dispersion.omega_max_over_pi * pi, cfg.dispersion.n_scan))
        out.push_back(gap_json(g, "exact"));
    if (s.eff.optimized) {
        try {
            out.push_back(gap_json(homogenized_bandgap(s.eff), "homogenized"));
        } catch (const NoGap&) {
        }
    }
    return out;
}

CommandOutput cmd_effective(const RunConfig& cfg, const RunOptions& opt)
{
    const State s = resolve(cfg);
    Emitter em(Command::Effective, cfg, opt);
    const EffectiveModel& e = s.eff;
    CsvTable t({"g_eff", "rho_eff", "c", "zeta", "eta", "eta_y", "eta_m", "eta_t", "ell", "stretch"});
    t.comment("effective homogenised model, SI units");
    t.row({fmt(e.g_eff), fmt(e.rho_eff), fmt(e.c), fmt(e.zeta), fmt(e.eta), fmt(e.eta_y), fmt(e.eta_m),
           fmt(e.eta_t), fmt(e.ell), fmt(e.stretch)});
    em.csv("effective", t);
    json& j = em.summary();
    j.update(effective_json(e));
    j["multiple_roots"] = s.stretch.multiple_roots;
    const CellCorrectors cc = cell_correctors(s.layers);
    j["corrector_P"] = cc.P;
    j["corrector_Q"] = cc.Q;
    return em.finish();
}

CommandOutput cmd_dispersion(const RunConfig& cfg, const RunOptions& opt)
{
    const State s = resolve(cfg);
    Emitter em(Command::Dispersion, cfg, opt);
    const BilayerAcoustics ac = bilayer_acoustics(s.layers, s.eff.ell);
    const double w_max = cfg.dispersion.omega_max_over_pi * pi;

    auto table = [&](bool unfolded) {
        CsvTable t({"kappa_ell", "omega_norm", "branch", "theory"});
        t.comment(std::string("kappa ell ") + (unfolded ? "unfolded over [0, 2 pi]" : "folded into [0, pi]"));
        t.comment("omega_norm = omega ell / c");
        auto add = [&](const std::vector<DispersionBranch>& branches, const char* theory) {
            for (const auto& b : branches)
                for (const auto& p : b.samples)
                    t.row({fmt(p.kappa_ell), fmt(p.omega_norm), std::to_string(b.branch_index), theory});
        };
        add(exact_branches(ac, w_max, cfg.dispersion.n_scan, unfolded), "exact");
        if (s.eff.optimized) add(homogenized_curves(s.eff, cfg.dispersion.n_kappa, unfolded), "homogenized");
        const double k_max = unfolded ? 2.0 * pi : pi;
        for (double w : linspace(0.0, w_max, cfg.dispersion.n_kappa + 1)) {
            const double k = mkdv_dispersion(s.eff, w);
            if (k > k_max) break;
            t.row({fmt(k), fmt(w), "0", "mkdv"});
        }
        return t;
    };

    const std::string main = em.csv("dispersion", table(true));
    const std::string folded = em.csv("dispersion-folded", table(false));
    em.summary()["gaps"] = all_gaps(s, cfg);
    em.summary()["effective"] = effective_json(s.eff);
    em.figure("fig3", {main, folded});
    return em.finish();
}

CommandOutput cmd_bandgap(const RunConfig& cfg, const RunOptions& opt)
{
    const State s = resolve(cfg);
    Emitter em(Command::Bandgap, cfg, opt);
    const std::vector<json> gaps = all_gaps(s, cfg);
    CsvTable t({"index", "lo_over_pi", "hi_over_pi", "theory"});
    t.comment("gap edges in omega ell / (pi c)");
    for (const json& g : gaps)
        t.row({std::to_string(g["index"].get<int>()), fmt(g["lo_over_pi"].get<double>()),
               fmt(g["hi_over_pi"].get<double>()), g["theory"].get<std::string>()});
    const std::string f = em.csv("bandgap", t);
    em.summary()["gaps"] = gaps;
    em.figure("fig3", {f});
    return em.finish();
}

CommandOutput cmd_soliton(const RunConfig& cfg, const RunOptions& opt)
{
    const State s = resolve(cfg);
    const EffectiveModel& e = s.eff;
    const SolitonConfig& sc = cfg.soliton;
    Emitter em(Command::Soliton, cfg, opt);
    constexpr std::array variants{WaveModelVariant::FullHomogenized, WaveModelVariant::SlowSpace,
                                  WaveModelVariant::SlowTime};

    CsvTable wave({"xi", "strain", "displacement", "variant", "speed_ratio"});
    wave.comment("xi = (y - s t) / ell, displacement in m");
    json sols = json::array();
    const std::vector<double> xi = linspace(-sc.xi_max, sc.xi_max, sc.n_xi);
    for (double S : sc.speed_ratios) {
        for (WaveModelVariant v : variants) {
            try {
                const SolitonSolution sol = solve_soliton(e, v, S * e.c);
                const Waveform w = soliton_waveform(sol, e.ell, xi);
                for (std::size_t i = 0; i < xi.size(); ++i)
                    wave.row({fmt(xi[i]), fmt(w.strain[i]), fmt(w.displacement[i]), std::string(to_string(v)),
                              fmt(S)});
                sols.push_back({{"variant", to_string(v)},
                                {"speed_ratio", S},
                                {"delta", sol.delta},
                                {"L_over_ell", sol.length / e.ell},
                                {"disp_amplitude_over_ell", sol.disp_amplitude / e.ell},
                                {"c1", sol.c1},
                                {"c3", sol.c3}});
            } catch (const NoSoliton&) {
            }
        }
    }

    CsvTable curves({"speed_ratio", "delta", "L_over_ell", "variant"});
    curves.comment("speed_ratio = s / c");
    for (WaveModelVariant v : variants) {
        for (double S : linspace(sc.speed_min, sc.speed_max, sc.n_speed)) {
            try {
                const SolitonSolution sol = solve_soliton(e, v, S * e.c);
                curves.row({fmt(S), fmt(sol.delta), fmt(sol.length / e.ell), std::string(to_string(v))});
            } catch (const NoSoliton&) {
            }
        }
    }

    const std::string fw = em.csv("soliton-waveform", wave);
    const std::string fc = em.csv("soliton-curves", curves);
    json& j = em.summary();
    j["effective"] = effective_json(e);
    j["solutions"] = sols;
    const SpeedBound bound = existence_bound(e);
    if (bound.max_speed_ratio) {
        j["max_speed_ratio"] = *bound.max_speed_ratio;
        const double dmax = max_strain_amplitude(e);
        j["delta_max"] = dmax;
        j["max_particle_velocity_over_c"] = dmax * *bound.max_speed_ratio;
    } else {
        j["max_speed_ratio"] = nullptr;
        static constexpr const char* reasons[] = {"none", "degenerate", "negative_roots", "no_real_root"};
        j["unbounded_reason"] = reasons[static_cast<int>(bound.reason)];
    }
    for (WaveModelVariant v : {WaveModelVariant::SlowSpace, WaveModelVariant::SlowTime}) {
        const std::string key = "validity_" + std::string(to_string(v));
        try {
            const ValidityCrossing vc = mkdv_validity_speed(e, v, sc.validity_rel_err);
            j[key] = {{"speed_ratio", vc.speed_ratio}, {"beyond_existence_bound", vc.beyond_existence_bound}};
        } catch (const NotReached&) {
            j[key] = nullptr;
        }
    }
    j["validity_rel_err"] = sc.validity_rel_err;
    em.figure("fig4a", {fw});
    em.figure("fig4b", {fc});
    return em.finish();
}

CommandOutput cmd_magnetostatic(const RunConfig& cfg, const RunOptions& opt)
{
    const State s = resolve(cfg);
    Emitter em(Command::Magnetostatic, cfg, opt);
    const MagnetoCoefficients mc = magneto_coefficients(s.laminate);
    json& j = em.summary();
    static constexpr const char* forms[] = {"induction", "normalized", "product"};
    j["load_form"] = cfg.load ? json(forms[static_cast<int>(cfg.load->form())]) : json(nullptr);
    j["load_value"] = cfg.load ? json(cfg.load->value()) : json(nullptr);
    j["lambda"] = s.stretch.lambda;
    j["rhs"] = s.stretch.rhs;
    j["multiple_roots"] = s.stretch.multiple_roots;
    j["mu_breve"] = mc.mu_breve;
    j["br_check"] = mc.br_check;
    j["G_bar"] = average_shear_modulus(s.laminate, s.stretch.lambda);
    if (cfg.load && cfg.load->form() == MagneticLoad::Form::Induction) {
        const NormalizedLoad nl = normalize_load(s.laminate, cfg.load->value());
        j["b_n"] = nl.b_n;
        j["br_n"] = nl.br_n;
    }
    const bool gent = s.laminate.phase1().model.kind == ModelKind::Gent ||
                      s.laminate.phase2().model.kind == ModelKind::Gent;
    if (gent) {
        const StretchRange r = admissible_stretch_range(s.laminate);
        j["admissible_stretch"] = {r.lo, r.hi};
    }
    CsvTable t({"load_form", "load_value", "lambda", "rhs", "multiple_roots", "mu_breve", "br_check"});
    t.comment("stretch along the lamination normal; rhs in Pa");
    t.row({cfg.load ? forms[static_cast<int>(cfg.load->form())] : "none", cfg.load ? fmt(cfg.load->value()) : "0",
           fmt(s.stretch.lambda), fmt(s.stretch.rhs), s.stretch.multiple_roots ? "1" : "0", fmt(mc.mu_breve),
           fmt(mc.br_check)});
    em.csv("magnetostatic", t);
    return em.finish();
}

/// Forcing and probe layout shared by both impact solvers.
struct Impact {
    double V = 0.0;
    double kappa = 0.0;
    double T_f = 0.0;
    double y_star = 0.0;
    std::vector<double> probes; // ascending
};

Impact impact_setup(const RunConfig& cfg, const EffectiveModel& e)
{
    Impact im;
    im.V = cfg.impact.V_over_c * e.c;
    im.kappa = 2.0 * pi / (cfg.impact.wavelengths_per_period * e.ell);
    im.T_f = 2.0 * pi / (im.kappa * e.c);
    im.y_star = shock_distance(e, im.V, im.kappa);
    for (double m : cfg.impact.probes_y_star_multiples) {
        double y = m * im.y_star;
        if (cfg.fv.probe_snap) y = snap_to_layer_midpoint(y, e.ell);
        im.probes.push_back(y);
    }
    std::sort(im.probes.begin(), im.probes.end());
    return im;
}

CsvTable probe_table(const char* theory, const Impact& im)
{
    CsvTable t({"t_s", "t_norm", "v_over_c", "probe_y_m", "theory"});
    t.comment(std::string("impact probes, ") + theory);
    t.comment("V = " + fmt(im.V) + " m/s, kappa = " + fmt(im.kappa) + " 1/m, y_star = " + fmt(im.y_star) + " m");
    t.comment("t_norm = kappa c t / (2 pi)");
    return t;
}

json impact_json(const Impact& im, const EffectiveModel& e)
{
    return {{"V", im.V},           {"kappa", im.kappa},   {"forcing_duration", im.T_f},
            {"y_star", im.y_star}, {"effective", effective_json(e)}};
}

CommandOutput cmd_simulate_fv(const RunConfig& cfg, const RunOptions& opt)
{
    const State s = resolve(cfg);
    const EffectiveModel& e = s.eff;
    const Impact im = impact_setup(cfg, e);
    Emitter em(Command::SimulateFv, cfg, opt);

    const double y_max = im.probes.back();
    const double t_final = y_max / e.c + cfg.fv.t_final_factor * im.T_f;
    const double L = required_domain_length(s.layers, im.V, t_final, y_max, 2.0 * pi / im.kappa);
    const Grid1D grid = build_grid(s.layers, e.ell, cfg.fv.cells_per_layer, L);
    const ImpactResult r = impact_run(grid, e, im.V, im.kappa, im.probes, t_final, cfg.fv.limiter);

    CsvTable t = probe_table("fv", im);
    json probes = json::array();
    for (const ProbeRecord& p : r.probes) {
        for (std::size_t i = 0; i < p.t.size(); ++i)
            t.row({fmt(p.t[i]), fmt(im.kappa * e.c * p.t[i] / (2.0 * pi)), fmt(p.v_over_c[i]), fmt(p.y), "fv"});
        const double peak = p.v_over_c.empty() ? 0.0 : *std::max_element(p.v_over_c.begin(), p.v_over_c.end());
        probes.push_back({{"y_m", p.y}, {"y_over_y_star", p.y / im.y_star}, {"peak_v_over_c", peak}});
    }
    const std::string f = em.csv("simulate-fv", t);
    json& j = em.summary();
    j.update(impact_json(im, e));
    j["probes"] = probes;
    j["steps"] = r.steps;
    j["dy"] = r.dy;
    j["n_cells"] = r.n_cells;
    j["domain_length"] = r.domain_length;
    j["t_final"] = t_final;
    j["limiter"] = to_string(cfg.fv.limiter);
    em.figure(cfg.impact.figure, {f});
    return em.finish();
}

CommandOutput cmd_simulate_mkdv(const RunConfig& cfg, const RunOptions& opt)
{
    const State s = resolve(cfg);
    const EffectiveModel& e = s.eff;
    const Impact im = impact_setup(cfg, e);
    Emitter em(Command::SimulateMkdv, cfg, opt);

    SpectralConfig sc;
    sc.n_points = cfg.mkdv.n_points;
    sc.window = cfg.mkdv.window_factor * im.T_f;
    sc.dy = cfg.mkdv.dy_m;
    sc.viscosity = cfg.mkdv.viscosity;
    sc.pad = cfg.mkdv.pad;
    // Past gradient blow-up the one-way solution has no meaning; report where it happened and stop.
    sc.stop_on_blowup = true;
    // The pulse sits in the middle of the periodic window.
    const double off = 0.5 * (sc.window - im.T_f);
    const std::vector<double> tau = window_times(sc);
    std::vector<double> signal(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) signal[i] = impact_velocity(im.V, im.kappa, e.c, tau[i] - off);
    const MarchResult r = mkdv_march(e, signal, sc, im.probes);

    CsvTable t = probe_table("mkdv", im);
    json probes = json::array();
    for (std::size_t k = 0; k < r.fields.size(); ++k) {
        const double y = r.y_out[k];
        double peak = 0.0;
        for (std::size_t i = 0; i < r.t.size(); ++i) {
            const double ts = r.t[i] - off + y / e.c;
            const double v = r.fields[k][i] / e.c;
            peak = std::max(peak, v);
            t.row({fmt(ts), fmt(im.kappa * e.c * ts / (2.0 * pi)), fmt(v), fmt(y), "mkdv"});
        }
        probes.push_back({{"y_m", y}, {"y_over_y_star", y / im.y_star}, {"peak_v_over_c", peak}});
    }
    const std::string f = em.csv("simulate-mkdv", t);
    json& j = em.summary();
    j.update(impact_json(im, e));
    j["probes"] = probes;
    j["steps"] = r.steps;
    j["y_reached"] = r.y_reached;
    j["blowup_detected"] = r.blowup_detected;
    j["blowup_y"] = r.blowup_detected ? json(r.blowup_y) : json(nullptr);
    j["probes_not_reached"] = im.probes.size() - r.fields.size();
    const auto est = extrapolate_blowup(r.gradient, 0.5 * im.V * im.kappa * e.c);
    j["blowup_estimate_m"] = est ? json(*est) : json(nullptr);
    j["blowup_estimate_over_y_star"] = est ? json(*est / im.y_star) : json(nullptr);
    em.figure(cfg.impact.figure, {f});
    return em.finish();
}

std::string_view x_units(SweepVariable v)
{
    switch (v) {
    case SweepVariable::MagneticLoadProduct: return "b_n * br_n, dimensionless";
    case SweepVariable::VolumeFraction2: return "phase-2 volume fraction";
    case SweepVariable::ModulusContrast: return "G2 / G1";
    }
    return "";
}

CommandOutput cmd_sweep(const RunConfig& cfg, const RunOptions& opt)
{
    if (!cfg.sweep) throw ValidationError("invalid configuration:\n  the sweep command needs a 'sweep' section");
    SweepSpec spec = *cfg.sweep;
    if (opt.threads > 0) spec.threads = opt.threads;
    const Laminate lam = cfg.laminate();
    const SweepTable tab = run_sweep(lam, spec);
    Emitter em(Command::Sweep, cfg, opt);

    std::size_t n_gaps = 0;
    for (const SweepRow& r : tab.rows) n_gaps = std::max(n_gaps, r.exact_gaps.size());
    std::vector<std::string> cols{"x",        "lambda",   "eta",         "zeta",      "speed_scale", "homog_lo_over_pi",
                                  "homog_hi_over_pi", "max_speed", "delta_max", "flag"};
    for (std::size_t k = 1; k <= n_gaps; ++k) {
        cols.push_back("gap" + std::to_string(k) + "_lo_over_pi");
        cols.push_back("gap" + std::to_string(k) + "_hi_over_pi");
    }
    CsvTable t(cols);
    t.comment("variable: " + std::string(to_string(spec.variable)) + " (" + std::string(x_units(spec.variable)) + ")");
    t.comment("frequency unit: " + tab.frequency_unit + " divided by pi; c_ref = " + fmt(tab.c_ref) + " m/s");
    t.comment("max_speed in units of c_ref; speed_scale = c / c_ref");
    for (int a : {1, 2}) {
        const Phase& p = lam.phase(a);
        t.comment("phase " + std::to_string(a) + ": " + std::string(to_string(p.model.kind)) +
                  " G = " + fmt(p.model.shear_modulus) + " Pa, beta = " + fmt(p.model.beta) +
                  ", rho = " + fmt(p.density) + " kg/m^3, nu = " + fmt(p.volume_fraction) +
                  ", mu_rel = " + fmt(p.permeability / mu0) + ", br = " + fmt(p.remnant_induction) + " T");
    }
    t.comment("period = " + fmt(lam.period()) + " m");

    auto opt_cell = [](const std::optional<double>& x) { return x ? fmt(*x) : std::string(); };
    json widest_exact = nullptr, widest_homog = nullptr;
    double w_exact = -1.0, w_homog = -1.0;
    int flagged = 0;
    for (const SweepRow& r : tab.rows) {
        std::vector<std::string> c{fmt(r.x),         fmt(r.lambda), fmt(r.eta), fmt(r.zeta), fmt(r.speed_scale),
                                   r.homog_gap ? fmt(r.homog_gap->lo / pi) : "",
                                   r.homog_gap ? fmt(r.homog_gap->hi / pi) : "",
                                   opt_cell(r.max_speed), opt_cell(r.delta_max), r.flag};
        for (std::size_t k = 0; k < n_gaps; ++k) {
            const bool has = k < r.exact_gaps.size();
            c.push_back(has ? fmt(r.exact_gaps[k].lo / pi) : "");
            c.push_back(has ? fmt(r.exact_gaps[k].hi / pi) : "");
        }
        t.row(std::move(c));
        if (!r.flag.empty() && r.flag != "multiple_roots") ++flagged;
        if (!r.exact_gaps.empty() && r.exact_gaps[0].hi - r.exact_gaps[0].lo > w_exact) {
            w_exact = r.exact_gaps[0].hi - r.exact_gaps[0].lo;
            widest_exact = {{"x", r.x}, {"width_over_pi", w_exact / pi}};
        }
        if (r.homog_gap && r.homog_gap->hi - r.homog_gap->lo > w_homog) {
            w_homog = r.homog_gap->hi - r.homog_gap->lo;
            widest_homog = {{"x", r.x}, {"width_over_pi", w_homog / pi}};
        }
    }
    const std::string f = em.csv("sweep", t);
    json& j = em.summary();
    j["variable"] = to_string(spec.variable);
    j["n_rows"] = tab.rows.size();
    j["n_flagged"] = flagged;
    j["c_ref"] = tab.c_ref;
    j["frequency_unit"] = tab.frequency_unit;
    j["argmax_eta"] = tab.argmax_eta ? json(*tab.argmax_eta) : json(nullptr);
    j["argmax_delta_max"] = tab.argmax_delta_max ? json(*tab.argmax_delta_max) : json(nullptr);
    j["widest_first_exact_gap"] = widest_exact;
    j["widest_homogenized_gap"] = widest_homog;
    if (spec.variable == SweepVariable::MagneticLoadProduct) {
        em.figure("fig6a", {f});
        em.figure("fig6b", {f});
    } else if (spec.variable == SweepVariable::VolumeFraction2) {
        em.figure("fig7", {f});
    }
    return em.finish();
}

} // namespace

std::string_view to_string(Command c)
{
    for (const auto& [cmd, name] : command_table)
        if (cmd == c) return name;
    return "unknown";
}

Command command_from_string(std::string_view name)
{
    for (const auto& [cmd, n] : command_table)
        if (n == name) return cmd;
    throw ValidationError("unknown command '" + std::string(name) + "'");
}

const std::vector<Command>& all_commands()
{
    static const std::vector<Command> all = [] {
        std::vector<Command> v;
        for (const auto& entry : command_table) v.push_back(entry.first);
        return v;
    }();
    return all;
}

CommandOutput run_command(Command command, const RunConfig& config, const RunOptions& options)
{
    switch (command) {
    case Command::Effective: return cmd_effective(config, options);
    case Command::Dispersion: return cmd_dispersion(config, options);
    case Command::Bandgap: return cmd_bandgap(config, options);
    case Command::Soliton: return cmd_soliton(config, options);
    case Command::Magnetostatic: return cmd_magnetostatic(config, options);
    case Command::SimulateFv: return cmd_simulate_fv(config, options);
    case Command::SimulateMkdv: return cmd_simulate_mkdv(config, options);
    case Command::Sweep: return cmd_sweep(config, options);
    }
    throw ValidationError("unknown command");
}

} // namespace lamwave
