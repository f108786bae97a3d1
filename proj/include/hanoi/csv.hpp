#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace hanoi {

// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

double parse_number(std::string_view text, std::size_t line);
long long parse_integer(std::string_view text, std::size_t line);

/// A small header-plus-rows CSV table. No quoting: every field in the
/// formats written here is numeric or a bare identifier.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> row_lines;  // 1-based source line of each row

    // Index of a header column, or throws ParseError naming the column.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);

}  // namespace hanoi
