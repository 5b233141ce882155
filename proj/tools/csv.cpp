#include "csv.hpp"

#include "run_config.hpp"

#include "sa/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_real(const std::string& s, std::size_t line, const std::string& column)
{
    double x = 0.0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, x);
    if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(x))
        throw sa::ParseError("line " + std::to_string(line) + ": column " + column + ": '" + s + "' is not a decimal real", line);
    return x;
}

}  // namespace

std::string format_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::meta(std::string key, std::string value) { meta_.emplace_back(std::move(key), std::move(value)); }

void CsvTable::meta(std::string key, double value) { meta(std::move(key), format_number(value)); }

void CsvTable::row(const std::vector<std::string>& cells)
{
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) line += (i ? "," : "") + cells[i];
    rows_.push_back(std::move(line));
}

void CsvTable::row(const std::vector<double>& cells)
{
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double x : cells) s.push_back(format_number(x));
    row(s);
}

void CsvTable::write(std::ostream& out) const
{
    for (const auto& [k, v] : meta_) out << "# " << k << " = " << v << '\n';
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& r : rows_) out << r << '\n';
}

ReferenceData parse_reference(std::istream& in)
{
    ReferenceData d;
    std::string line;
    std::size_t lineno = 0, width = 0;
    std::optional<std::size_t> col_rho, col_e, col_eta;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto cells = split(t);
        if (!header) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                std::optional<std::size_t>* slot = cells[i] == "rho"                          ? &col_rho
                                                   : cells[i] == "e" || cells[i] == "e_tilde" ? &col_e
                                                   : cells[i] == "eta"                        ? &col_eta
                                                                                              : nullptr;
                if (!slot) continue;
                if (*slot) throw sa::ParseError("line " + std::to_string(lineno) + ": duplicate column " + cells[i], lineno);
                *slot = i;
            }
            if (!col_rho || !col_e)
                throw sa::ParseError("line " + std::to_string(lineno) + ": expected header rho,e[,eta]", lineno);
            header = true;
            width = cells.size();
            if (col_eta) d.eta.emplace();
            continue;
        }
        if (cells.size() != width)
            throw sa::ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(width) + " columns, found " +
                                     std::to_string(cells.size()),
                                 lineno);
        const double rho = parse_real(cells[*col_rho], lineno, "rho");
        if (!(rho > 0.0)) throw sa::ParseError("line " + std::to_string(lineno) + ": rho must be positive", lineno);
        if (!d.rho.empty() && !(rho > d.rho.back()))
            throw sa::ParseError("line " + std::to_string(lineno) + ": rho must increase", lineno);
        d.rho.push_back(rho);
        d.e.push_back(parse_real(cells[*col_e], lineno, "e"));
        if (col_eta) d.eta->push_back(parse_real(cells[*col_eta], lineno, "eta"));
    }
    if (!header) throw sa::ParseError("line " + std::to_string(lineno + 1) + ": missing header rho,e[,eta]", lineno + 1);
    if (d.rho.empty()) throw sa::ParseError("line " + std::to_string(lineno + 1) + ": no data rows", lineno + 1);
    return d;
}

ReferenceData read_reference(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot open reference file " + path.string());
    return parse_reference(in);
}

}  // namespace cli
