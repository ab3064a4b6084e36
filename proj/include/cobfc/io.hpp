#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cobfc/dataset.hpp"

namespace cobfc {

enum class Format { Arff, Csv };

/// Parse/validation failure; `line` is the 1-based input line of the offence.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// Parse an ARFF or CSV byte stream. The class column is selected by name,
/// or defaults to the last column. CSV schema inference: a column is numeric
/// iff every non-missing cell parses fully as a finite number, else nominal
/// with values in order of first appearance. The class column is always
/// nominal.
Dataset parse_dataset(std::string_view text, Format format,
                      const std::optional<std::string>& class_column = std::nullopt);

/// Reads the file and dispatches on extension (.arff/.csv) unless `format`
/// is given.
Dataset parse_dataset_file(const std::string& path,
                           std::optional<Format> format = std::nullopt,
                           const std::optional<std::string>& class_column = std::nullopt);

/// Serialize. Numeric cells use the shortest decimal that reparses to the
/// same double, so write -> parse round-trips values exactly. The class
/// attribute is emitted as the last column.
std::string write_dataset(const Dataset& data, Format format);

/// Shortest round-trip decimal for a finite double.
std::string format_double(double v);

}  // namespace cobfc
