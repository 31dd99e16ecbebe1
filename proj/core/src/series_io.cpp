#include "belpm/series_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "belpm/error.hpp"
#include "belpm/kv_text.hpp"

namespace belpm {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool is_header(std::string_view line) {
  const auto comma = line.find(',');
  if (comma == std::string_view::npos) return iequals(trim(line), "value");
  return iequals(trim(line.substr(0, comma)), "time") &&
         iequals(trim(line.substr(comma + 1)), "value");
}

void fill_gaps(std::vector<double>& values, const std::vector<bool>& gap) {
  const std::size_t n = values.size();
  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < n; ++i) {
    if (gap[i]) continue;
    if (prev && i - *prev > 1) {
      const double a = values[*prev];
      const double b = values[i];
      const double span = static_cast<double>(i - *prev);
      for (std::size_t j = *prev + 1; j < i; ++j) {
        values[j] = a + (b - a) * static_cast<double>(j - *prev) / span;
      }
    } else if (!prev) {
      for (std::size_t j = 0; j < i; ++j) values[j] = values[i];
    }
    prev = i;
  }
  for (std::size_t j = *prev + 1; j < n; ++j) values[j] = values[*prev];
}

}  // namespace

std::string_view to_string(GapPolicy policy) {
  return policy == GapPolicy::Error ? "error" : "linear_interpolate";
}

GapPolicy parse_gap_policy(std::string_view name) {
  if (name == "error") return GapPolicy::Error;
  if (name == "linear_interpolate") return GapPolicy::LinearInterpolate;
  throw Error(ErrorCode::InvalidParameter, "unknown gap policy '" + std::string(name) + "'");
}

TimeSeries parse_series_csv(std::string_view text, std::optional<double> missing_sentinel,
                            GapPolicy gap_policy) {
  std::vector<double> values;
  std::vector<bool> gap;
  std::vector<std::int64_t> times;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_data = false;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!seen_data && is_header(line)) {
      seen_data = true;
      continue;
    }
    seen_data = true;

    std::string_view value_text = line;
    const auto comma = line.find(',');
    try {
      if (comma != std::string_view::npos) {
        if (line.find(',', comma + 1) != std::string_view::npos) {
          throw ParseError(line_no, "expected 'value' or 'time,value'");
        }
        times.push_back(parse_int(line.substr(0, comma)));
        value_text = line.substr(comma + 1);
      } else if (!times.empty()) {
        throw ParseError(line_no, "mixed 'value' and 'time,value' lines");
      }
      const double v = parse_double(value_text);
      if (!std::isfinite(v)) throw ParseError(line_no, "non-finite value");
      const bool missing = missing_sentinel && v == *missing_sentinel;
      if (missing && gap_policy == GapPolicy::Error) {
        throw Error(ErrorCode::GapError, "missing value at line " + std::to_string(line_no));
      }
      values.push_back(v);
      gap.push_back(missing);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ParseError) throw;
      throw ParseError(line_no, e.what());
    }
    if (!times.empty() && times.size() != values.size()) {
      throw ParseError(line_no, "mixed 'value' and 'time,value' lines");
    }
  }
  if (values.empty()) throw Error(ErrorCode::EmptyFile, "no observations found");

  TimeSeries series;
  if (!times.empty()) {
    series.start_time = times.front();
    if (times.size() > 1) series.step = times[1] - times[0];
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (times[i] - times[i - 1] != series.step || series.step <= 0) {
        throw Error(ErrorCode::ParseError, "times must increase with a constant step (index " +
                                               std::to_string(i) + ")");
      }
    }
  }
  if (std::find(gap.begin(), gap.end(), true) != gap.end()) {
    if (std::find(gap.begin(), gap.end(), false) == gap.end()) {
      throw Error(ErrorCode::GapError, "every observation is missing");
    }
    fill_gaps(values, gap);
  }
  series.values = std::move(values);
  validate(series);
  return series;
}

TimeSeries load_series_csv(const SeriesFile& file) {
  return parse_series_csv(read_text_file(file.path), file.missing_sentinel, file.gap_policy);
}

std::string format_series_csv(const TimeSeries& series) {
  std::string out = "time,value\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out += std::to_string(series.time_at(i));
    out += ',';
    out += format_double(series.values[i]);
    out += '\n';
  }
  return out;
}

void save_series_csv(const TimeSeries& series, const std::filesystem::path& path) {
  write_text_file(path, format_series_csv(series));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

}  // namespace belpm
