#include "lamwave/config.hpp"

#include "lamwave/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace lamwave {

namespace {

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Walks the YAML tree and collects every problem instead of stopping at the first.
class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    void error(const YAML::Mark& m, const std::string& msg)
    {
        std::ostringstream os;
        // Missing top-level keys have no mark of their own; anchor them at the start.
        os << source_ << ':' << std::max(m.line, 0) + 1 << ':' << std::max(m.column, 0) + 1 << ": " << msg;
        errors_.push_back(os.str());
    }

    const std::vector<std::string>& errors() const { return errors_; }

    /// False (with an error) unless n is a mapping; unknown keys are reported.
    bool mapping(const YAML::Node& n, const std::string& path, std::initializer_list<const char*> allowed)
    {
        if (!n.IsMap()) {
            error(n.Mark(), "'" + path + "' must be a mapping");
            return false;
        }
        for (const auto& kv : n) {
            const std::string key = kv.first.as<std::string>();
            const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
            if (!known) error(kv.first.Mark(), "unknown key '" + join(path, key) + "'");
        }
        return true;
    }

    YAML::Node child(const YAML::Node& parent, const char* key, const std::string& path, bool required)
    {
        const YAML::Node n = parent[key];
        if (!n && required) error(parent.Mark(), "missing key '" + join(path, key) + "'");
        return n;
    }

    template <class T>
    std::optional<T> scalar(const YAML::Node& parent, const char* key, const std::string& path, bool required,
                            const char* what)
    {
        const YAML::Node n = child(parent, key, path, required);
        if (!n) return std::nullopt;
        if (!n.IsScalar()) {
            error(n.Mark(), "'" + join(path, key) + "' must be " + what);
            return std::nullopt;
        }
        try {
            return n.as<T>();
        } catch (const YAML::BadConversion&) {
            error(n.Mark(), "'" + join(path, key) + "' must be " + what + ", got '" + n.Scalar() + "'");
            return std::nullopt;
        }
    }

    void number(const YAML::Node& p, const char* key, const std::string& path, double& out, bool required = false)
    {
        if (auto v = scalar<double>(p, key, path, required, "a number")) {
            if (!std::isfinite(*v)) error(p[key].Mark(), "'" + join(path, key) + "' must be finite");
            else out = *v;
        }
    }

    void integer(const YAML::Node& p, const char* key, const std::string& path, int& out)
    {
        if (auto v = scalar<int>(p, key, path, false, "an integer")) out = *v;
    }

    void boolean(const YAML::Node& p, const char* key, const std::string& path, bool& out)
    {
        if (auto v = scalar<bool>(p, key, path, false, "true or false")) out = *v;
    }

    void text(const YAML::Node& p, const char* key, const std::string& path, std::string& out, bool required = false)
    {
        if (auto v = scalar<std::string>(p, key, path, required, "a string")) out = *v;
    }

    void numbers(const YAML::Node& p, const char* key, const std::string& path, std::vector<double>& out)
    {
        const YAML::Node n = p[key];
        if (!n) return;
        if (!n.IsSequence()) {
            error(n.Mark(), "'" + join(path, key) + "' must be a list of numbers");
            return;
        }
        std::vector<double> v;
        for (const YAML::Node& e : n) {
            try {
                v.push_back(e.as<double>());
            } catch (const YAML::Exception&) {
                error(e.Mark(), "'" + join(path, key) + "' must be a list of numbers");
                return;
            }
        }
        out = std::move(v);
    }

    void check(bool ok, const YAML::Node& at, const std::string& msg)
    {
        if (!ok) error(at.Mark(), msg);
    }

    static std::string join(const std::string& path, const std::string& key)
    {
        return path.empty() ? key : path + "." + key;
    }

private:
    std::string source_;
    std::vector<std::string> errors_;
};

/// Value of p[key] if present, else p itself, for anchoring messages.
YAML::Node at(const YAML::Node& p, const char* key)
{
    const YAML::Node n = p[key];
    return n ? n : p;
}

void read_phase(Reader& r, const YAML::Node& n, const std::string& path, Phase& out)
{
    if (!r.mapping(n, path, {"model", "rho", "nu", "mu_rel", "br_t"})) return;
    const YAML::Node m = r.child(n, "model", path, true);
    if (m && r.mapping(m, path + ".model", {"kind", "G_pa", "beta"})) {
        std::string kind;
        r.text(m, "kind", path + ".model", kind, true);
        if (!kind.empty()) {
            try {
                out.model.kind = model_kind_from_string(kind);
            } catch (const DomainError& e) {
                r.error(at(m, "kind").Mark(), e.what());
            }
        }
        r.number(m, "G_pa", path + ".model", out.model.shear_modulus, true);
        r.number(m, "beta", path + ".model", out.model.beta);
        r.check(out.model.shear_modulus > 0.0, at(m, "G_pa"), "'" + path + ".model.G_pa' must be positive");
        r.check(out.model.beta >= 0.0, at(m, "beta"), "'" + path + ".model.beta' must be non-negative");
    }
    r.number(n, "rho", path, out.density, true);
    r.number(n, "nu", path, out.volume_fraction, true);
    double mu_rel = 1.0;
    r.number(n, "mu_rel", path, mu_rel);
    r.number(n, "br_t", path, out.remnant_induction);
    out.permeability = mu_rel * mu0;
    r.check(out.density > 0.0, at(n, "rho"), "'" + path + ".rho' must be positive");
    r.check(out.volume_fraction > 0.0 && out.volume_fraction < 1.0, at(n, "nu"), "'" + path + ".nu' must lie in (0, 1)");
    r.check(mu_rel >= 1.0, at(n, "mu_rel"), "'" + path + ".mu_rel' must be at least 1");
}

struct Canonical {
    std::ostringstream os;
    void put(const std::string& k, double v) { os << k << '=' << num(v) << '\n'; }
    void put(const std::string& k, const std::string& v) { os << k << '=' << v << '\n'; }
    void put(const std::string& k, const std::vector<double>& v)
    {
        os << k << '=';
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << num(v[i]);
        os << '\n';
    }
};

} // namespace

RunConfig parse_config(const std::string& text, const std::string& source)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        std::ostringstream os;
        os << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": " << e.msg;
        throw ValidationError(os.str());
    }
    Reader r(source);
    RunConfig cfg;
    if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    if (r.mapping(root, "", {"phases", "period_m", "load", "impact", "fv", "mkdv", "dispersion", "soliton", "sweep"})) {
        const YAML::Node phases = r.child(root, "phases", "", true);
        if (phases) {
            if (!phases.IsSequence() || phases.size() != 2) {
                r.error(phases.Mark(), "'phases' must be a list of exactly two entries");
            } else {
                read_phase(r, phases[0], "phases[0]", cfg.phase1);
                read_phase(r, phases[1], "phases[1]", cfg.phase2);
                const double s = cfg.phase1.volume_fraction + cfg.phase2.volume_fraction;
                r.check(std::abs(s - 1.0) <= 1e-12, phases, "volume fractions must sum to one (got " + num(s) + ")");
            }
        }
        r.number(root, "period_m", "", cfg.period, true);
        r.check(cfg.period > 0.0, at(root, "period_m"), "'period_m' must be positive");

        if (const YAML::Node n = root["load"]; n && r.mapping(n, "load", {"b_t", "bn_br_product"})) {
            const bool has_b = static_cast<bool>(n["b_t"]), has_p = static_cast<bool>(n["bn_br_product"]);
            if (has_b == has_p) {
                r.error(n.Mark(), "'load' needs exactly one of 'b_t' or 'bn_br_product'");
            } else if (has_b) {
                double b = 0.0;
                r.number(n, "b_t", "load", b);
                cfg.load = MagneticLoad::induction(b);
            } else {
                double p = 0.0;
                r.number(n, "bn_br_product", "load", p);
                cfg.load = MagneticLoad::product(p);
                r.check(cfg.phase1.permeability == mu0 && cfg.phase2.permeability == mu0, n,
                        "'load.bn_br_product' requires mu_rel = 1 in both phases");
            }
        }

        if (const YAML::Node n = root["impact"];
            n && r.mapping(n, "impact", {"V_over_c", "wavelengths_per_period", "probes_y_star_multiples", "figure"})) {
            ImpactConfig& c = cfg.impact;
            r.number(n, "V_over_c", "impact", c.V_over_c);
            r.number(n, "wavelengths_per_period", "impact", c.wavelengths_per_period);
            r.numbers(n, "probes_y_star_multiples", "impact", c.probes_y_star_multiples);
            r.text(n, "figure", "impact", c.figure);
            r.check(c.V_over_c > 0.0, at(n, "V_over_c"), "'impact.V_over_c' must be positive");
            r.check(c.wavelengths_per_period > 0.0, at(n, "wavelengths_per_period"),
                    "'impact.wavelengths_per_period' must be positive");
            r.check(!c.probes_y_star_multiples.empty()
                        && std::all_of(c.probes_y_star_multiples.begin(), c.probes_y_star_multiples.end(),
                                       [](double x) { return x > 0.0; }),
                    at(n, "probes_y_star_multiples"), "'impact.probes_y_star_multiples' must be positive numbers");
            r.check(c.figure == "fig5" || c.figure == "fig8", at(n, "figure"), "'impact.figure' must be fig5 or fig8");
        }

        if (const YAML::Node n = root["fv"];
            n && r.mapping(n, "fv", {"cells_per_layer", "t_final_factor", "limiter", "probe_snap"})) {
            FvConfig& c = cfg.fv;
            r.integer(n, "cells_per_layer", "fv", c.cells_per_layer);
            r.number(n, "t_final_factor", "fv", c.t_final_factor);
            std::string lim(to_string(c.limiter));
            r.text(n, "limiter", "fv", lim);
            try {
                c.limiter = limiter_from_string(lim);
            } catch (const DomainError& e) {
                r.error(at(n, "limiter").Mark(), e.what());
            }
            r.boolean(n, "probe_snap", "fv", c.probe_snap);
            r.check(c.cells_per_layer >= 4 && c.cells_per_layer % 2 == 0, at(n, "cells_per_layer"),
                    "'fv.cells_per_layer' must be even and at least 4");
            r.check(c.t_final_factor >= 0.0, at(n, "t_final_factor"), "'fv.t_final_factor' must be non-negative");
        }

        if (const YAML::Node n = root["mkdv"];
            n && r.mapping(n, "mkdv", {"n_points", "window_factor", "dy_m", "viscosity", "pad"})) {
            MkdvConfig& c = cfg.mkdv;
            r.integer(n, "n_points", "mkdv", c.n_points);
            r.number(n, "window_factor", "mkdv", c.window_factor);
            r.number(n, "dy_m", "mkdv", c.dy_m);
            r.number(n, "viscosity", "mkdv", c.viscosity);
            r.integer(n, "pad", "mkdv", c.pad);
            r.check(c.n_points >= 256 && (c.n_points & (c.n_points - 1)) == 0, at(n, "n_points"),
                    "'mkdv.n_points' must be a power of two of at least 256");
            r.check(c.window_factor >= 4.0, at(n, "window_factor"),
                    "'mkdv.window_factor' must be at least 4 (forcing plus a quiet zone of three durations)");
            r.check(c.dy_m > 0.0, at(n, "dy_m"), "'mkdv.dy_m' must be positive");
            r.check(c.viscosity >= 0.0, at(n, "viscosity"), "'mkdv.viscosity' must be non-negative");
            r.check(c.pad >= 2, at(n, "pad"), "'mkdv.pad' must be at least 2");
        }

        if (const YAML::Node n = root["dispersion"];
            n && r.mapping(n, "dispersion", {"omega_max_over_pi", "n_scan", "n_kappa"})) {
            DispersionConfig& c = cfg.dispersion;
            r.number(n, "omega_max_over_pi", "dispersion", c.omega_max_over_pi);
            r.integer(n, "n_scan", "dispersion", c.n_scan);
            r.integer(n, "n_kappa", "dispersion", c.n_kappa);
            r.check(c.omega_max_over_pi > 0.0, at(n, "omega_max_over_pi"), "'dispersion.omega_max_over_pi' must be positive");
            r.check(c.n_scan >= 1000, at(n, "n_scan"), "'dispersion.n_scan' must be at least 1000");
            r.check(c.n_kappa >= 2, at(n, "n_kappa"), "'dispersion.n_kappa' must be at least 2");
        }

        if (const YAML::Node n = root["soliton"];
            n && r.mapping(n, "soliton", {"speed_ratios", "xi_max", "n_xi", "speed_min", "speed_max", "n_speed",
                                          "validity_rel_err"})) {
            SolitonConfig& c = cfg.soliton;
            r.numbers(n, "speed_ratios", "soliton", c.speed_ratios);
            r.number(n, "xi_max", "soliton", c.xi_max);
            r.integer(n, "n_xi", "soliton", c.n_xi);
            r.number(n, "speed_min", "soliton", c.speed_min);
            r.number(n, "speed_max", "soliton", c.speed_max);
            r.integer(n, "n_speed", "soliton", c.n_speed);
            r.number(n, "validity_rel_err", "soliton", c.validity_rel_err);
            r.check(std::all_of(c.speed_ratios.begin(), c.speed_ratios.end(), [](double s) { return s > 1.0; }),
                    at(n, "speed_ratios"), "'soliton.speed_ratios' must all exceed 1");
            r.check(c.xi_max > 0.0 && c.n_xi >= 2, n, "'soliton.xi_max' must be positive and 'soliton.n_xi' at least 2");
            r.check(c.speed_min >= 1.0 && c.speed_min < c.speed_max && c.n_speed >= 2, n,
                    "'soliton' speed range needs 1 <= speed_min < speed_max and n_speed >= 2");
            r.check(c.validity_rel_err > 0.0, at(n, "validity_rel_err"), "'soliton.validity_rel_err' must be positive");
        }

        if (const YAML::Node n = root["sweep"];
            n && r.mapping(n, "sweep", {"variable", "lo", "hi", "n", "outputs", "omega_max_over_pi", "n_scan"})) {
            SweepSpec s;
            std::string var;
            r.text(n, "variable", "sweep", var, true);
            if (!var.empty()) {
                try {
                    s.variable = sweep_variable_from_string(var);
                } catch (const DomainError& e) {
                    r.error(at(n, "variable").Mark(), e.what());
                }
            }
            r.number(n, "lo", "sweep", s.lo, true);
            r.number(n, "hi", "sweep", s.hi, true);
            r.integer(n, "n", "sweep", s.n);
            double wmax = s.omega_max_norm / 3.141592653589793;
            r.number(n, "omega_max_over_pi", "sweep", wmax);
            s.omega_max_norm = wmax * 3.141592653589793;
            r.integer(n, "n_scan", "sweep", s.n_scan);
            if (const YAML::Node o = n["outputs"]) {
                if (!o.IsSequence()) {
                    r.error(o.Mark(), "'sweep.outputs' must be a list");
                } else {
                    s.bandgaps_exact = s.bandgaps_homog = s.soliton_bounds = s.stretch = false;
                    for (const YAML::Node& e : o) {
                        const std::string v = e.IsScalar() ? e.Scalar() : "";
                        if (v == "bandgaps_exact") s.bandgaps_exact = true;
                        else if (v == "bandgaps_homog") s.bandgaps_homog = true;
                        else if (v == "soliton_bounds") s.soliton_bounds = true;
                        else if (v == "stretch") s.stretch = true;
                        else r.error(e.Mark(), "unknown sweep output '" + v + "'");
                    }
                }
            }
            try {
                s.validate();
            } catch (const DomainError& e) {
                r.error(n.Mark(), std::string("'sweep': ") + e.what());
            }
            cfg.sweep = s;
        }
    }

    if (r.errors().empty()) {
        try {
            (void)cfg.laminate();
        } catch (const Error& e) {
            r.error(root["phases"].Mark(), e.what());
        }
    }
    if (!r.errors().empty()) {
        std::string msg = "invalid configuration:";
        for (const std::string& e : r.errors()) msg += "\n  " + e;
        throw ValidationError(msg);
    }

    Canonical c;
    int k = 0;
    for (const Phase* p : {&cfg.phase1, &cfg.phase2}) {
        const std::string pre = "phase" + std::to_string(++k) + ".";
        c.put(pre + "kind", std::string(to_string(p->model.kind)));
        c.put(pre + "G_pa", p->model.shear_modulus);
        c.put(pre + "beta", p->model.beta);
        c.put(pre + "rho", p->density);
        c.put(pre + "nu", p->volume_fraction);
        c.put(pre + "mu", p->permeability);
        c.put(pre + "br_t", p->remnant_induction);
    }
    c.put("period_m", cfg.period);
    if (cfg.load) {
        c.put(cfg.load->form() == MagneticLoad::Form::Induction ? "load.b_t" : "load.bn_br_product", cfg.load->value());
    }
    c.put("impact.V_over_c", cfg.impact.V_over_c);
    c.put("impact.wavelengths_per_period", cfg.impact.wavelengths_per_period);
    c.put("impact.probes", cfg.impact.probes_y_star_multiples);
    c.put("impact.figure", cfg.impact.figure);
    c.put("fv.cells_per_layer", cfg.fv.cells_per_layer);
    c.put("fv.t_final_factor", cfg.fv.t_final_factor);
    c.put("fv.limiter", std::string(to_string(cfg.fv.limiter)));
    c.put("fv.probe_snap", cfg.fv.probe_snap ? "true" : "false");
    c.put("mkdv.n_points", cfg.mkdv.n_points);
    c.put("mkdv.window_factor", cfg.mkdv.window_factor);
    c.put("mkdv.dy_m", cfg.mkdv.dy_m);
    c.put("mkdv.viscosity", cfg.mkdv.viscosity);
    c.put("mkdv.pad", cfg.mkdv.pad);
    c.put("dispersion.omega_max_over_pi", cfg.dispersion.omega_max_over_pi);
    c.put("dispersion.n_scan", cfg.dispersion.n_scan);
    c.put("dispersion.n_kappa", cfg.dispersion.n_kappa);
    c.put("soliton.speed_ratios", cfg.soliton.speed_ratios);
    c.put("soliton.xi", std::vector<double>{cfg.soliton.xi_max, double(cfg.soliton.n_xi)});
    c.put("soliton.speeds", std::vector<double>{cfg.soliton.speed_min, cfg.soliton.speed_max, double(cfg.soliton.n_speed)});
    c.put("soliton.validity_rel_err", cfg.soliton.validity_rel_err);
    if (cfg.sweep) {
        const SweepSpec& s = *cfg.sweep;
        c.put("sweep.variable", std::string(to_string(s.variable)));
        c.put("sweep.range", std::vector<double>{s.lo, s.hi, double(s.n)});
        c.put("sweep.outputs", std::vector<double>{double(s.bandgaps_exact), double(s.bandgaps_homog),
                                                   double(s.soliton_bounds), double(s.stretch)});
        c.put("sweep.scan", std::vector<double>{s.omega_max_norm, double(s.n_scan)});
    }
    cfg.canonical = c.os.str();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str(), path.string());
}

} // namespace lamwave
