#include "lamwave/output.hpp"

#include "lamwave/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace lamwave {

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fnv1a_hex(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void CsvTable::row(std::vector<std::string> cells)
{
    if (cells.size() != columns_.size()) throw DomainError("CSV row width does not match the header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const
{
    std::string out;
    for (const std::string& c : comments_) out += "# " + c + "\n";
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(columns_);
    for (const auto& r : rows_) line(r);
    return out;
}

OutputDir::OutputDir(std::filesystem::path dir, std::string hash) : dir_(std::move(dir)), hash_(std::move(hash))
{
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw Error("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

std::string OutputDir::write(const std::string& name, const std::string& content)
{
    const std::filesystem::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw Error("cannot write '" + p.string() + "'");
    return name;
}

std::string OutputDir::write_csv(const std::string& stem, const CsvTable& table)
{
    return write(stem + "_" + hash_ + ".csv", table.str());
}

std::string OutputDir::write_json(const std::string& stem, const std::string& json_text)
{
    return write(stem + "_" + hash_ + ".json", json_text);
}

void OutputDir::register_figure(const std::string& figure, const std::vector<std::string>& files)
{
    static const std::map<std::string, std::string> known = {
        {"fig3", "exact and homogenised dispersion curves, band gaps"},
        {"fig4a", "solitary strain and displacement profiles"},
        {"fig4b", "solitary amplitude and width against speed"},
        {"fig5", "impact probes, finite volume and mKdV"},
        {"fig6a", "band gaps against magnetic load"},
        {"fig6b", "soliton bounds against magnetic load"},
        {"fig7", "band gaps and soliton bounds against volume fraction"},
        {"fig8", "low-dispersion impact probes, finite volume and mKdV"},
    };
    const std::filesystem::path p = dir_ / "manifest.json";
    nlohmann::json m = nlohmann::json::object();
    if (std::ifstream in(p); in) {
        try {
            in >> m;
        } catch (const nlohmann::json::exception&) {
            m = nlohmann::json::object();
        }
        if (!m.is_object()) m = nlohmann::json::object();
    }
    for (const auto& [key, what] : known) {
        if (!m.contains(key) || !m[key].is_object()) m[key] = {{"description", what}, {"files", nlohmann::json::array()}};
    }
    auto& list = m[figure]["files"];
    for (const std::string& f : files) {
        bool seen = false;
        for (const auto& e : list) seen = seen || e == f;
        if (!seen) list.push_back(f);
    }
    write("manifest.json", m.dump(2) + "\n");
}

} // namespace lamwave
