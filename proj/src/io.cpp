#include "weakkam/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace weakkam::io {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::cell(double x) {
    current_.push_back(format_number(x));
    return *this;
}

CsvTable& CsvTable::cell(bool b) {
    current_.push_back(b ? "true" : "false");
    return *this;
}

CsvTable& CsvTable::cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        current_.push_back(s);
        return *this;
    }
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    current_.push_back(q + "\"");
    return *this;
}

void CsvTable::end_row() {
    if (current_.size() != header_.size())
        throw std::logic_error("csv row has " + std::to_string(current_.size()) + " cells, header has " +
                               std::to_string(header_.size()));
    rows_.push_back(std::move(current_));
    current_.clear();
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << text;
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) { write_text(path, table.str()); }

void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace weakkam::io
