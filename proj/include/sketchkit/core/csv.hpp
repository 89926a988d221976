#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace sketchkit {

using CsvValue = std::variant<std::string, double, std::int64_t>;
using CsvRecord = std::vector<CsvValue>;

struct CsvTable {
    std::vector<std::string> schema;
    std::vector<CsvRecord> rows;

    void add(CsvRecord r);
};

// Floating point fields use 17 significant digits; fields containing commas,
// quotes or newlines are quoted.
void write_csv(std::ostream& out, const CsvTable& table);
void write_csv(const std::string& path, const CsvTable& table);
std::string format_csv_value(const CsvValue& v);

struct ParsedCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

ParsedCsv read_csv(std::istream& in);
ParsedCsv read_csv(const std::string& path);

}  // namespace sketchkit
