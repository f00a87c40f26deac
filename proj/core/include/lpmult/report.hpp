#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lpmult/experiment.hpp"

namespace lpmult {

/// Fixed CSV header. Columns not used by a cell kind are left empty.
inline constexpr const char* kCsvHeader =
    "kind,p,N,lower,upper,lower_method,upper_method,iterations,seed,"
    "sup_product,bound,margin,grid,trials,ratio_min,ratio_max";

json report_to_json(const Report& r);
Report report_from_json(const json& j);

/// One row per cell, RFC 4180 quoting, "\r\n" line ends, shortest
/// round-trip decimal form for reals.
std::string to_csv(const Report& r);
/// Pretty-printed JSON of report_to_json.
std::string to_json_text(const Report& r);
/// Lower and upper bound curves against N (log scale), one polyline pair
/// per p. Reports without norm cells give an empty plot with a note.
std::string to_svg(const Report& r);

enum class OutputFormat { csv, json, svg };
OutputFormat parse_format(const std::string& s);
std::string extension(OutputFormat f);

/// Writes `stem.<ext>` into `dir`, creating it if needed. Throws
/// std::runtime_error naming the path when it cannot be written.
std::filesystem::path emit(const Report& r, OutputFormat f, const std::filesystem::path& dir,
                           const std::string& stem);

/// Wall-time sidecar, kept out of the csv/json so those stay reproducible.
std::filesystem::path emit_timings(const std::vector<CellTiming>& timings,
                                   const std::filesystem::path& dir, const std::string& stem);

/// Writes `contents` to `path`, throwing std::runtime_error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace lpmult
