#include "shapecorr/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace shapecorr {

namespace {

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

std::optional<double> parse_field(std::string_view field) {
    // Strict full-field parse; leading/trailing blanks tolerated.
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    if (field.empty()) return std::nullopt;
    double value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
    return value;
}

bool is_index_selector(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Sample ingest_csv_text(std::string_view text, const std::string& x_col, const std::string& y_col) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;  // (line number, fields)
    std::size_t line_no = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string_view line = text.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            ++line_no;
            if (!line.empty()) rows.emplace_back(line_no, split_fields(line));
            start = i + 1;
        }
    }
    if (rows.empty()) throw CsvError("empty input");

    const bool x_by_index = is_index_selector(x_col);
    const bool y_by_index = is_index_selector(y_col);
    std::size_t xi = 0, yi = 0;
    std::size_t first_data = 0;

    auto resolve_name = [&](const std::string& name) {
        const auto& header = rows[0].second;
        std::size_t hits = 0, at = 0;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == name) {
                ++hits;
                at = c;
            }
        }
        if (hits != 1) throw CsvError("column '" + name + "' does not resolve uniquely");
        return at;
    };

    if (x_by_index && y_by_index) {
        xi = std::stoul(x_col);
        yi = std::stoul(y_col);
        // Header detection: a first row whose selected fields fail
        // numeric parse is a header.
        const auto& first = rows[0].second;
        bool parses = xi < first.size() && yi < first.size() && parse_field(first[xi]) &&
                      parse_field(first[yi]);
        first_data = parses ? 0 : 1;
    } else {
        xi = x_by_index ? std::stoul(x_col) : resolve_name(x_col);
        yi = y_by_index ? std::stoul(y_col) : resolve_name(y_col);
        first_data = 1;  // name selection implies a header row
    }

    std::vector<double> x, y;
    for (std::size_t r = first_data; r < rows.size(); ++r) {
        const auto& [line, fields] = rows[r];
        if (xi >= fields.size() || yi >= fields.size())
            throw CsvError("row " + std::to_string(line) + ": missing selected field");
        auto px = parse_field(fields[xi]);
        auto py = parse_field(fields[yi]);
        if (!px || !py) throw CsvError("row " + std::to_string(line) + ": non-numeric or missing value");
        if (!std::isfinite(*px) || !std::isfinite(*py))
            throw CsvError("row " + std::to_string(line) + ": NaN or infinite value");
        x.push_back(*px);
        y.push_back(*py);
    }
    if (x.size() < 2) throw CsvError("fewer than 2 valid rows");
    return Sample(std::move(x), std::move(y));
}

Sample ingest_csv(const std::string& path, const std::string& x_col, const std::string& y_col) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return ingest_csv_text(buffer.str(), x_col, y_col);
}

}  // namespace shapecorr
