#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "shapecorr/sample.hpp"

namespace shapecorr {

/// Data-level failure while reading a CSV input (maps to exit code 2 in
/// the CLI).
struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads two columns of a comma-separated file as a paired sample.
/// Columns are selected by header name or by 0-based index (an
/// all-digit selector). A header row is auto-detected: if the first
/// row's selected fields fail to parse as numbers it is treated as a
/// header. Rows with missing or non-numeric selected fields abort the
/// parse with their 1-based line number; NaN/inf literals are rejected;
/// fewer than 2 valid rows is an error. UTF-8, decimal point, no locale.
Sample ingest_csv(const std::string& path, const std::string& x_col, const std::string& y_col);

/// Same parser over an in-memory buffer.
Sample ingest_csv_text(std::string_view text, const std::string& x_col, const std::string& y_col);

}  // namespace shapecorr
