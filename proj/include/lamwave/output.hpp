#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lamwave {

/// 17 significant digits, the CSV float format.
std::string format_double(double x);

/// 64-bit FNV-1a as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// Comma-separated table with '#' comment lines above the column header.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void comment(std::string line) { comments_.push_back(std::move(line)); }

    /// Cells are pre-formatted; see format_double.
    void row(std::vector<std::string> cells);

    std::size_t size() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
};

/// Output directory of one command; files are named <stem>_<hash>.<ext>.
class OutputDir {
public:
    OutputDir(std::filesystem::path dir, std::string hash);

    const std::string& hash() const { return hash_; }
    const std::filesystem::path& path() const { return dir_; }

    /// Returns the file name written.
    std::string write_csv(const std::string& stem, const CsvTable& table);
    std::string write_json(const std::string& stem, const std::string& json_text);

    /// Adds files to manifest.json under a figure key, keeping entries from earlier runs.
    void register_figure(const std::string& figure, const std::vector<std::string>& files);

private:
    std::string write(const std::string& name, const std::string& content);
    std::filesystem::path dir_;
    std::string hash_;
};

} // namespace lamwave
