#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace cli {

/// 17 significant digits, enough to round-trip a double.
[[nodiscard]] std::string format_number(double x);

/// '#'-prefixed `key = value` metadata, one header row, then comma-separated rows.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    void meta(std::string key, std::string value);
    void meta(std::string key, double value);
    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& cells);

    void write(std::ostream& out) const;

private:
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> columns_;
    std::vector<std::string> rows_;
};

struct ReferenceData {
    std::vector<double> rho;
    std::vector<double> e;
    std::optional<std::vector<double>> eta;
};

/// Header naming rho, e (or e_tilde) and optionally eta after optional '#' lines; other columns are ignored.
/// rho strictly increasing.
/// Throws sa::ParseError naming the line.
[[nodiscard]] ReferenceData parse_reference(std::istream& in);
[[nodiscard]] ReferenceData read_reference(const std::filesystem::path& path);

}  // namespace cli
