#include "pcrkit/csv.hpp"

#include "pcrkit/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

namespace pcrkit {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

template <typename T>
bool parse_number(const std::string& cell, T& value) {
    if (cell.empty()) return false;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc() && ptr == end;
}

} // namespace

const std::vector<std::string>& standard_columns() {
    static const std::vector<std::string> cols = {"IY", "REI", "PDS", "PDC", "IR",
                                                  "GVA", "CPI", "PD", "GDHI"};
    return cols;
}

TimeSeriesTable parse_table(std::istream& in, const LoadOptions& options) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split(line);
            break;
        }
    }
    if (header.empty()) throw ValidationError("input has no header row");
    if (header.front() != "year")
        throw ParseError(line_no, header.front(), "first column must be named 'year'");

    std::vector<std::string> names(header.begin() + 1, header.end());
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (n.empty()) throw ParseError(line_no, n, "empty column name in header");
        if (!seen.insert(n).second) throw ParseError(line_no, n, "duplicate column name");
    }
    for (const auto& req : options.required_columns)
        if (!seen.contains(req)) throw ValidationError("missing column '" + req + "'");
    if (!seen.contains(options.response))
        throw ValidationError("missing response column '" + options.response + "'");

    std::vector<int> years;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != header.size())
            throw ParseError(line_no, cells.size() < header.size() ? header[cells.size()] : "year",
                             "expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(cells.size()));
        int year = 0;
        if (!parse_number(cells[0], year))
            throw ParseError(line_no, "year", "invalid year '" + cells[0] + "'");
        if (!years.empty()) {
            if (year == years.back())
                throw ValidationError("line " + std::to_string(line_no) + ": duplicate year " +
                                      std::to_string(year));
            if (year < years.back())
                throw ValidationError("line " + std::to_string(line_no) +
                                      ": years not increasing at " + std::to_string(year));
            if (year != years.back() + 1)
                throw ValidationError("line " + std::to_string(line_no) + ": gap in years: " +
                                      std::to_string(years.back() + 1) + " missing");
        }
        years.push_back(year);
        for (std::size_t c = 1; c < cells.size(); ++c) {
            double v = 0.0;
            if (!parse_number(cells[c], v) || !std::isfinite(v))
                throw ParseError(line_no, header[c], "non-numeric value '" + cells[c] + "'");
            values.push_back(v);
        }
    }
    if (years.empty()) throw ValidationError("input has no data rows");
    const std::size_t n = years.size();
    return TimeSeriesTable(std::move(years), std::move(names),
                           Matrix(n, header.size() - 1, std::move(values)), options.response);
}

TimeSeriesTable load_table(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string(), "cannot open for reading");
    return parse_table(in, options);
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_table(std::ostream& out, const TimeSeriesTable& table) {
    out << "year";
    for (const auto& n : table.names()) out << ',' << n;
    out << '\n';
    for (std::size_t r = 0; r < table.n_years(); ++r) {
        out << table.years()[r];
        for (double v : table.values().row(r)) out << ',' << format_number(v);
        out << '\n';
    }
}

} // namespace pcrkit
