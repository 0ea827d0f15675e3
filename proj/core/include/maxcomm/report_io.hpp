#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "maxcomm/grid.hpp"
#include "maxcomm/scan.hpp"

namespace maxcomm {

/// Parse failure with the 1-based line it was detected on.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line)
        : std::runtime_error(message + " (line " + std::to_string(line) + ")"), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Grid-function text format: a header line "n N h" followed by N^n
/// whitespace-separated decimal values in row-major order (last axis
/// fastest). Values are written with 17 significant digits, so a
/// write/read round trip is bit exact.
GridFunction read_grid_function(std::istream& in);
GridFunction read_grid_function_file(const std::string& path);
void write_grid_function(std::ostream& out, const GridFunction& f);
void write_grid_function_file(const std::string& path, const GridFunction& f);

/// Scan configuration as JSON. Parsing canonicalizes family parameter
/// order; writing is deterministic, so parse-write round trips are stable.
ScanConfig parse_scan_config(const std::string& json_text);
ScanConfig read_scan_config_file(const std::string& path);
std::string write_scan_config(const ScanConfig& config);

/// Reports. JSON carries top-level keys config, results, provenance;
/// numbers are serialized with 17 significant digits and stable field
/// order, so identical runs produce identical bytes. CSV emits one row per
/// (grid size, functional) pair.
std::string write_report_json(const ScanReport& report);
std::string write_report_csv(const ScanReport& report);

}  // namespace maxcomm
