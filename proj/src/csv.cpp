#include "netrewire/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "netrewire/error.hpp"

namespace netrewire {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void CsvRow::sep() {
    if (fields_++ > 0) text_ += ',';
}

CsvRow& CsvRow::operator<<(std::string_view s) {
    sep();
    text_ += s;
    return *this;
}

CsvRow& CsvRow::operator<<(double x) {
    sep();
    text_ += format_double(x);
    return *this;
}

CsvRow& CsvRow::operator<<(std::size_t x) {
    sep();
    text_ += std::to_string(x);
    return *this;
}

CsvRow& CsvRow::operator<<(int x) {
    sep();
    text_ += std::to_string(x);
    return *this;
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    return std::nullopt;
}

namespace {
std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}
} // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            table.header = split_commas(line);
            first = false;
        } else {
            table.rows.push_back(split_commas(line));
        }
    }
    return table;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw DataError("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace netrewire
