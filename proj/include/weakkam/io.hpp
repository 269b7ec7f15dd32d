#pragma once

/// @file io.hpp
/// @brief Deterministic text output: shortest round-trip numbers, CSV tables
/// and JSON files.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace weakkam::io {

/// Shortest decimal string that parses back to the same double; "nan", "inf"
/// and "-inf" for non-finite values.
std::string format_number(double x);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    CsvTable& cell(double x);
    CsvTable& cell(bool b);
    CsvTable& cell(const std::string& s);
    /// Closes the current row; throws if its width differs from the header.
    void end_row();

    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::string> current_;
};

void write_text(const std::filesystem::path& path, const std::string& text);
void write_csv(const std::filesystem::path& path, const CsvTable& table);
/// Pretty-printed with two-space indent; NaN is written as null.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace weakkam::io
