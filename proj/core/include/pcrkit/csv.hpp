#pragma once

#include "pcrkit/table.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace pcrkit {

/// Indicator columns every input file must carry unless told otherwise.
const std::vector<std::string>& standard_columns();

struct LoadOptions {
    std::vector<std::string> required_columns = standard_columns(); ///< empty: accept any
    std::string response = "IY";
};

/// Reads comma-delimited text whose header starts with `year`. Errors carry
/// the 1-based line number and the column header of the offending cell.
TimeSeriesTable parse_table(std::istream& in, const LoadOptions& options = {});
TimeSeriesTable load_table(const std::filesystem::path& path, const LoadOptions& options = {});

/// Writes the table in the same layout with 17 significant digits.
void write_table(std::ostream& out, const TimeSeriesTable& table);

/// "%.17g", with "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

} // namespace pcrkit
