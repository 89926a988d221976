#include "sketchkit/core/csv.hpp"

#include "sketchkit/core/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sketchkit {

void CsvTable::add(CsvRecord r) {
    if (r.size() != schema.size())
        throw DimensionError("CSV record has " + std::to_string(r.size()) + " fields, schema has " +
                             std::to_string(schema.size()));
    rows.push_back(std::move(r));
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string format_csv_value(const CsvValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return quote(*s);
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    const double x = std::get<double>(v);
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& out, const CsvTable& table) {
    for (std::size_t j = 0; j < table.schema.size(); ++j) out << (j ? "," : "") << quote(table.schema[j]);
    out << '\n';
    for (const auto& r : table.rows) {
        for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << format_csv_value(r[j]);
        out << '\n';
    }
    if (!out) throw Error("CSV write failed");
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    write_csv(f, table);
}

ParsedCsv read_csv(std::istream& in) {
    ParsedCsv out;
    std::vector<std::string> rec;
    std::string field;
    bool in_quotes = false, any = false;
    long line = 1;
    auto end_record = [&] {
        rec.push_back(field);
        field.clear();
        if (out.header.empty() && out.rows.empty())
            out.header = std::move(rec);
        else
            out.rows.push_back(std::move(rec));
        rec.clear();
        any = false;
    };
    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        any = true;
        if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            rec.push_back(field);
            field.clear();
        } else if (c == '\n') {
            end_record();
            ++line;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (in_quotes) throw ParseError("unterminated quoted field", line);
    if (any) end_record();
    return out;
}

ParsedCsv read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    return read_csv(f);
}

}  // namespace sketchkit
