#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "belpm/belpm_model.hpp"
#include "belpm/classic_bel.hpp"
#include "belpm/evaluation.hpp"
#include "belpm/kv_text.hpp"
#include "belpm/model_io.hpp"
#include "belpm/series_io.hpp"

namespace belpm {

enum class DataSource { File, MackeyGlass, Logistic };

std::string_view to_string(DataSource source);
DataSource parse_data_source(std::string_view name);

struct GeneratorParams {
  std::size_t n = 600;
  std::size_t tau = 17;
  std::optional<double> x0;  // 1.2 for Mackey-Glass, 0.3 for logistic
  std::size_t warmup = 100;
  double logistic_r = 3.9;
};

struct ClassicBelParams {
  double alpha = 0.5;
  double beta = 0.5;
  std::size_t epochs = 10;
  OrbitofrontalSignal signal = OrbitofrontalSignal::OrbitofrontalSum;
};

/// Everything a run needs. Defaults follow the 8-node BL/MO setting with a
/// three-dimensional embedding. There is no randomness anywhere.
struct ExperimentConfig {
  DataSource source = DataSource::MackeyGlass;
  SeriesFile file;
  GeneratorParams generator;

  EmbeddingConfig embedding;
  std::optional<std::size_t> n_train;  // default: 80% of the embedded pairs

  ModelKind model = ModelKind::Belpm;
  BelpmConfig belpm;
  std::size_t k = 2;  // WkNN neighbors
  ClassicBelParams bel;

  PeakSettings peaks;

  std::optional<std::filesystem::path> predictions_out;
  std::optional<std::filesystem::path> report_out;
  std::optional<std::filesystem::path> peaks_out;
  std::optional<std::filesystem::path> model_out;
};

/// Reads `key = value` lines. Keys match the CLI flag names with '_' for '-'.
/// Unknown keys and malformed values raise ConfigError.
ExperimentConfig parse_experiment_config(const KvDocument& doc,
                                         ExperimentConfig base = ExperimentConfig{});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Applies one `key = value` setting.
void apply_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Throws ConfigError for inconsistent fields or a missing data file.
void validate(const ExperimentConfig& config);

TimeSeries load_source_series(const ExperimentConfig& config);

ForecastModel train_model(const ExperimentConfig& config, const EmbeddedDataset& train_set);

struct ExperimentResult {
  EvaluationReport report;
  TimeSeries observed;   // test targets at their target times
  TimeSeries predicted;  // aligned with `observed`
  ForecastModel model;
};

/// series -> embed -> split -> train -> predict test inputs -> evaluate, and
/// writes whichever output paths are set.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string format_report(const EvaluationReport& report);

/// `time,observed,predicted` lines.
std::string format_predictions_csv(const TimeSeries& observed, const TimeSeries& predicted);

/// Inverse of format_predictions_csv; returns {observed, predicted}.
std::pair<TimeSeries, TimeSeries> parse_predictions_csv(std::string_view text);

/// One line per observed peak: observed time, matched predicted time, offset, status.
std::string format_peaks_csv(const PeakReport& report, const TimeSeries& observed);

}  // namespace belpm
