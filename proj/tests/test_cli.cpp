#include "lamwave/commands.hpp"
#include "lamwave/config.hpp"
#include "lamwave/errors.hpp"
#include "lamwave/output.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace lamwave;

namespace {

const char* table4_yaml = R"(phases:
  - model: {kind: gent, G_pa: 4.7e6, beta: 0.0132}
    rho: 930
    nu: 0.5
  - model: {kind: gent, G_pa: 0.94e6, beta: 0.0132}
    rho: 930
    nu: 0.5
period_m: 0.01
)";

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Run {
    int status = -1;
    std::string out;
    std::string err;
};

/// Scratch directory removed on scope exit.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
    {
        path = fs::temp_directory_path() / ("lamwave_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Run cli(const TempDir& tmp, const std::string& args)
{
    const char* exe = std::getenv("LAMWAVE_CLI");
    REQUIRE_MESSAGE(exe != nullptr, "LAMWAVE_CLI is not set");
    const fs::path o = tmp.path / "stdout.txt", e = tmp.path / "stderr.txt";
    const std::string cmd = std::string(exe) + " " + args + " > " + o.string() + " 2> " + e.string();
    const int raw = std::system(cmd.c_str());
    Run r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
}

fs::path write_config(const TempDir& tmp, const std::string& name, const std::string& text)
{
    const fs::path p = tmp.path / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("parse_config fills defaults and canonical text")
{
    const RunConfig c = parse_config(table4_yaml);
    CHECK(c.phase1.model.kind == ModelKind::Gent);
    CHECK(c.phase2.model.shear_modulus == 0.94e6);
    CHECK(c.period == 0.01);
    CHECK_FALSE(c.load.has_value());
    CHECK(c.fv.cells_per_layer == 32);
    CHECK(c.mkdv.n_points == 2048);
    CHECK(c.phase1.permeability == mu0);
    CHECK(c.canonical.find("period_m=0.01") != std::string::npos);

    const RunConfig d = parse_config(std::string(table4_yaml) + "fv:\n  cells_per_layer: 16\n");
    CHECK(d.canonical != c.canonical);
    CHECK(parse_config(table4_yaml).canonical == c.canonical);
}

TEST_CASE("parse_config rejects bad input with line anchors")
{
    auto message = [](const std::string& text) {
        try {
            parse_config(text, "cfg.yaml");
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    SUBCASE("empty")
    {
        const std::string m = message("");
        CHECK(m.find("phases") != std::string::npos);
        CHECK(m.find("period_m") != std::string::npos);
    }
    SUBCASE("unknown key")
    {
        const std::string m = message(std::string(table4_yaml) + "perod: 3\n");
        CHECK(m.find("cfg.yaml:9:") != std::string::npos);
        CHECK(m.find("perod") != std::string::npos);
    }
    SUBCASE("permeability below vacuum")
    {
        std::string t = table4_yaml;
        t.replace(t.find("    nu: 0.5\n"), 12, "    nu: 0.5\n    mu_rel: 0.5\n");
        CHECK(message(t).find("mu_rel") != std::string::npos);
    }
    SUBCASE("two load forms")
    {
        CHECK(message(std::string(table4_yaml) + "load: {b_t: 0.1, bn_br_product: 3}\n").find("load") !=
              std::string::npos);
    }
    SUBCASE("product form needs vacuum permeability")
    {
        std::string t = table4_yaml;
        t.replace(t.find("    nu: 0.5\n"), 12, "    nu: 0.5\n    mu_rel: 2\n");
        CHECK_FALSE(message(t + "load: {bn_br_product: 3}\n").empty());
    }
    SUBCASE("fractions must sum to one")
    {
        std::string t = table4_yaml;
        t.replace(t.find("nu: 0.5"), 7, "nu: 0.6");
        CHECK(message(t).find("sum to one") != std::string::npos);
    }
    SUBCASE("unknown limiter") { CHECK(!message(std::string(table4_yaml) + "fv: {limiter: superbee}\n").empty()); }
    SUBCASE("every problem is reported")
    {
        const std::string m = message(std::string(table4_yaml) + "fv: {cells_per_layer: 3}\nmkdv: {pad: 1}\n");
        CHECK(m.find("cells_per_layer") != std::string::npos);
        CHECK(m.find("pad") != std::string::npos);
    }
}

TEST_CASE("effective command reports the reference coefficients")
{
    TempDir tmp("effective");
    const fs::path cfg = write_config(tmp, "t4.yaml", table4_yaml);
    const Run r = cli(tmp, "effective --config " + cfg.string() + " --out " + (tmp.path / "out").string());
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["g_eff"].get<double>() == doctest::Approx(1.57e6).epsilon(0.005));
    CHECK(j["c"].get<double>() == doctest::Approx(41.0).epsilon(0.005));
    CHECK(j["zeta"].get<double>() == doctest::Approx(0.0924).epsilon(0.005));
    CHECK(j["eta"].get<double>() == doctest::Approx(0.00926).epsilon(0.005));
    const std::string hash = fnv1a_hex(parse_config(table4_yaml).canonical);
    CHECK(fs::exists(tmp.path / "out" / ("effective_" + hash + ".csv")));
    CHECK(fs::exists(tmp.path / "out" / ("effective_" + hash + ".json")));
}

TEST_CASE("validation failures exit with status 1")
{
    TempDir tmp("invalid");
    SUBCASE("empty config lists missing keys")
    {
        const fs::path cfg = write_config(tmp, "empty.yaml", "");
        const Run r = cli(tmp, "effective --config " + cfg.string() + " --out " + tmp.path.string());
        CHECK(r.status == 1);
        CHECK(r.err.find("phases") != std::string::npos);
        CHECK(r.err.find("period_m") != std::string::npos);
    }
    SUBCASE("unknown key carries its line")
    {
        const fs::path cfg = write_config(tmp, "typo.yaml", std::string(table4_yaml) + "fv:\n  cell_per_layer: 8\n");
        const Run r = cli(tmp, "effective --config " + cfg.string() + " --out " + tmp.path.string());
        CHECK(r.status == 1);
        CHECK(r.err.find("typo.yaml:10:") != std::string::npos);
    }
    SUBCASE("missing file")
    {
        const Run r = cli(tmp, "effective --config " + (tmp.path / "nope.yaml").string());
        CHECK(r.status == 1);
    }
    SUBCASE("sweep without a sweep section")
    {
        const fs::path cfg = write_config(tmp, "t4.yaml", table4_yaml);
        const Run r = cli(tmp, "sweep --config " + cfg.string() + " --out " + tmp.path.string());
        CHECK(r.status == 1);
    }
    SUBCASE("unknown command")
    {
        const Run r = cli(tmp, "frobnicate --config x.yaml");
        CHECK(r.status == 1);
    }
}

TEST_CASE("numerical failures exit with status 2")
{
    TempDir tmp("numerical");
    const fs::path cfg = write_config(tmp, "lock.yaml", std::string(table4_yaml) + "load: {bn_br_product: 1e13}\n");
    const Run r = cli(tmp, "magnetostatic --config " + cfg.string() + " --out " + tmp.path.string());
    CHECK(r.status == 2);
    CHECK(r.err.find("numerical failure") != std::string::npos);
    CHECK(r.err.find("locking stretch") != std::string::npos);
}

TEST_CASE("reruns are byte identical and the manifest tracks figures")
{
    TempDir tmp("rerun");
    const std::string text = std::string(table4_yaml) + "dispersion: {n_scan: 1000, n_kappa: 50}\n"
                             "soliton: {n_xi: 41, n_speed: 31}\n";
    const fs::path cfg = write_config(tmp, "t4.yaml", text);
    const std::string hash = fnv1a_hex(parse_config(text).canonical);
    for (const char* cmd : {"dispersion", "bandgap", "soliton"}) {
        const fs::path a = tmp.path / "a", b = tmp.path / "b";
        REQUIRE(cli(tmp, std::string(cmd) + " --config " + cfg.string() + " --out " + a.string()).status == 0);
        REQUIRE(cli(tmp, std::string(cmd) + " --config " + cfg.string() + " --out " + b.string()).status == 0);
        for (const auto& entry : fs::directory_iterator(a)) {
            const std::string name = entry.path().filename().string();
            CAPTURE(name);
            CHECK(slurp(entry.path()) == slurp(b / name));
        }
    }
    const auto m = nlohmann::json::parse(slurp(tmp.path / "a" / "manifest.json"));
    for (const char* key : {"fig3", "fig4a", "fig4b", "fig5", "fig6a", "fig6b", "fig7", "fig8"}) CHECK(m.contains(key));
    const auto& fig3 = m["fig3"]["files"];
    CHECK(std::find(fig3.begin(), fig3.end(), "dispersion_" + hash + ".csv") != fig3.end());
    CHECK(std::find(fig3.begin(), fig3.end(), "bandgap_" + hash + ".csv") != fig3.end());
    CHECK(m["fig4a"]["files"].size() == 1);

    const std::string csv = slurp(tmp.path / "a" / ("dispersion_" + hash + ".csv"));
    CHECK(csv.rfind("# ", 0) == 0);
    CHECK(csv.find("kappa_ell,omega_norm,branch,theory\n") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.find(",mkdv\n") != std::string::npos);
    CHECK(csv.find(",homogenized\n") != std::string::npos);
}

TEST_CASE("LAMWAVE_OUT overrides the default output directory")
{
    TempDir tmp("envout");
    const fs::path cfg = write_config(tmp, "t4.yaml", table4_yaml);
    const fs::path dir = tmp.path / "env";
    const std::string exe = std::getenv("LAMWAVE_CLI");
    const std::string cmd = "LAMWAVE_OUT=" + dir.string() + " " + exe + " magnetostatic --config " + cfg.string() +
                            " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "manifest.json") == false);
    CHECK(fs::exists(dir / ("magnetostatic_" + fnv1a_hex(parse_config(table4_yaml).canonical) + ".json")));
}

TEST_CASE("run_command in process")
{
    TempDir tmp("inproc");
    RunOptions opt;
    opt.out_dir = tmp.path;
    std::string text = std::string(table4_yaml) + "load: {bn_br_product: 150}\n";
    const CommandOutput out = run_command(Command::Magnetostatic, parse_config(text), opt);
    const auto j = nlohmann::json::parse(out.summary_json);
    CHECK(j["lambda"].get<double>() == doctest::Approx(7.2).epsilon(0.05));
    CHECK(out.files.size() == 2);
    CHECK(command_from_string("simulate-fv") == Command::SimulateFv);
    CHECK_THROWS_AS(command_from_string("nope"), ValidationError);
    CHECK(all_commands().size() == 8);
}
