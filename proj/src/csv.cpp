#include "hanoi/csv.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <system_error>

#include "hanoi/errors.hpp"

namespace hanoi {

std::string format_number(double value)
{
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw Error("cannot format number");
    return std::string(buf.data(), end);
}

double parse_number(std::string_view text, std::size_t line)
{
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw ParseError("not a number: '" + std::string(text) + "'", line);
    }
    return value;
}

long long parse_integer(std::string_view text, std::size_t line)
{
    long long value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw ParseError("not an integer: '" + std::string(text) + "'", line);
    }
    return value;
}

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ParseError("missing column '" + std::string(name) + "'", 1);
}

bool CsvTable::has_column(std::string_view name) const
{
    for (const auto& h : header) {
        if (h == name) return true;
    }
    return false;
}

namespace {

std::vector<std::string> split_fields(std::string_view line)
{
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

}  // namespace

CsvTable read_csv(std::istream& in)
{
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.find('"') != std::string::npos) throw ParseError("quoted fields are not supported", line_no);
        auto fields = split_fields(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ParseError("expected " + std::to_string(table.header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        table.rows.push_back(std::move(fields));
        table.row_lines.push_back(line_no);
    }
    if (!have_header) throw ParseError("empty CSV input", line_no == 0 ? 1 : line_no);
    return table;
}

}  // namespace hanoi
