#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace netrewire {

// Shortest round-trip-stable text for a double ("nan" for NaN).
std::string format_double(double x);

class CsvRow {
public:
    CsvRow& operator<<(std::string_view s);
    CsvRow& operator<<(const std::string& s) { return *this << std::string_view(s); }
    CsvRow& operator<<(const char* s) { return *this << std::string_view(s); }
    CsvRow& operator<<(double x);
    CsvRow& operator<<(std::size_t x);
    CsvRow& operator<<(int x);

    const std::string& str() const noexcept { return text_; }

private:
    void sep();
    std::string text_;
    std::size_t fields_ = 0;
};

// Simple comma-separated table (no quoting; fields never contain commas).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::optional<std::size_t> column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

// Writes `content` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace netrewire
