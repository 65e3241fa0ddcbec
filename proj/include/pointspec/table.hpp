#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pointspec {

inline constexpr const char* kToolName = "pointspec";
inline constexpr const char* kToolVersion = "0.1.0";

using Cell = std::variant<double, long long, std::string>;

// One experiment's worth of rows plus ordered metadata and an optional plot
// designation consumed by the SVG writer.
struct ResultTable {
    std::string title;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::string plot_x;
    std::vector<std::string> plot_y;
    bool log_x = false;
    bool log_y = false;
};

// Doubles print with 17 significant digits and always carry a decimal point
// or exponent so the CSV reader can restore the cell type.
std::string format_cell(const Cell& cell);

std::string to_csv(const ResultTable& t);
std::string to_json(const ResultTable& t);
std::string to_svg(const ResultTable& t);

// Writes <out_dir>/<title>.<ext> for each requested format (csv, json, svg).
void write_table(const ResultTable& t, const std::vector<std::string>& formats,
                 const std::string& out_dir);

// Inverse of to_csv up to cell typing: unquoted integer-shaped fields load as
// integers, fields with a point or exponent as doubles, the rest as strings.
ResultTable read_csv_table(const std::string& path);

}  // namespace pointspec
