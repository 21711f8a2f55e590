#pragma once

#include <string>
#include <vector>

namespace qednp {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
    std::vector<std::string> comments;  // lines starting with '#', without the '#'
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

// Comma-separated, header row required, '#' lines are comments. Throws
// DomainError on malformed numeric fields or ragged rows.
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text, const std::string& source = "<text>");

// Shortest round-trip decimal representation, so output is byte-stable.
std::string format_number(double v);

std::string to_csv_text(const CsvTable& t);

// Writes to a sibling temp file and renames it into place.
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace qednp
