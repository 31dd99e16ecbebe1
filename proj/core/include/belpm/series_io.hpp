#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "belpm/series.hpp"

namespace belpm {

enum class GapPolicy { Error, LinearInterpolate };

std::string_view to_string(GapPolicy policy);
GapPolicy parse_gap_policy(std::string_view name);

struct SeriesFile {
  std::filesystem::path path;
  std::optional<double> missing_sentinel;
  GapPolicy gap_policy = GapPolicy::Error;
};

/// Parses `value` or `time,value` lines. '#' comments, blank lines and a
/// `time,value` header are skipped. Times, when present, must be evenly
/// spaced. Sentinel values are gaps: GapError under GapPolicy::Error,
/// otherwise filled by linear interpolation (edges take the nearest value).
TimeSeries parse_series_csv(std::string_view text, std::optional<double> missing_sentinel = {},
                            GapPolicy gap_policy = GapPolicy::Error);

TimeSeries load_series_csv(const SeriesFile& file);

/// `time,value` header then one line per observation at 17 significant digits.
std::string format_series_csv(const TimeSeries& series);
void save_series_csv(const TimeSeries& series, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace belpm
