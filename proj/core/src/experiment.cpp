#include "belpm/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <string>

#include "belpm/error.hpp"

namespace belpm {

namespace {

std::optional<std::filesystem::path> path_or_none(std::string_view value) {
  if (value.empty()) return std::nullopt;
  return std::filesystem::path(std::string(value));
}


}  // namespace

std::string_view to_string(DataSource source) {
  switch (source) {
    case DataSource::File: return "file";
    case DataSource::MackeyGlass: return "mackey_glass";
    case DataSource::Logistic: return "logistic";
  }
  return "unknown";
}

DataSource parse_data_source(std::string_view name) {
  if (name == "file") return DataSource::File;
  if (name == "mackey_glass") return DataSource::MackeyGlass;
  if (name == "logistic") return DataSource::Logistic;
  throw Error(ErrorCode::ConfigError, "unknown source '" + std::string(name) + "'");
}

void apply_config_value(ExperimentConfig& c, std::string_view key, std::string_view value) {
  try {
    if (key == "source") c.source = parse_data_source(value);
    else if (key == "data_file") c.file.path = std::string(value);
    else if (key == "missing_sentinel") {
      if (value.empty() || value == "none") c.file.missing_sentinel.reset();
      else c.file.missing_sentinel = parse_double(value);
    }
    else if (key == "gap_policy") c.file.gap_policy = parse_gap_policy(value);
    else if (key == "n") c.generator.n = parse_size(value);
    else if (key == "tau") c.generator.tau = parse_size(value);
    else if (key == "x0") c.generator.x0 = parse_double(value);
    else if (key == "warmup") c.generator.warmup = parse_size(value);
    else if (key == "logistic_r") c.generator.logistic_r = parse_double(value);
    else if (key == "embedding_dim") c.embedding.dim = parse_size(value);
    else if (key == "horizon") c.embedding.horizon = parse_size(value);
    else if (key == "n_train") c.n_train = parse_size(value);
    else if (key == "model") c.model = parse_model_kind(value);
    else if (key == "k_a") c.belpm.k_a = parse_size(value);
    else if (key == "k_o") c.belpm.k_o = parse_size(value);
    else if (key == "kernel") c.belpm.kernel_a = c.belpm.kernel_o = parse_kernel(value);
    else if (key == "kernel_a") c.belpm.kernel_a = parse_kernel(value);
    else if (key == "kernel_o") c.belpm.kernel_o = parse_kernel(value);
    else if (key == "lr") c.belpm.lr = parse_double(value);
    else if (key == "epochs") c.belpm.epochs = parse_size(value);
    else if (key == "lambda") c.belpm.lambda = parse_double(value);
    else if (key == "k") c.k = parse_size(value);
    else if (key == "alpha") c.bel.alpha = parse_double(value);
    else if (key == "beta") c.bel.beta = parse_double(value);
    else if (key == "bel_epochs") c.bel.epochs = parse_size(value);
    else if (key == "bel_signal") c.bel.signal = parse_orbitofrontal_signal(value);
    else if (key == "peak_window") c.peaks.window = parse_size(value);
    else if (key == "top_m") {
      if (value.empty() || value == "all") c.peaks.top_m.reset();
      else c.peaks.top_m = parse_size(value);
    }
    else if (key == "predictions_out") c.predictions_out = path_or_none(value);
    else if (key == "report_out") c.report_out = path_or_none(value);
    else if (key == "peaks_out") c.peaks_out = path_or_none(value);
    else if (key == "model_out") c.model_out = path_or_none(value);
    else throw Error(ErrorCode::ConfigError, "unknown key '" + std::string(key) + "'");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    throw Error(ErrorCode::ConfigError, "key '" + std::string(key) + "': " + e.what());
  }
}

ExperimentConfig parse_experiment_config(const KvDocument& doc, ExperimentConfig base) {
  for (const auto& [key, value] : doc.entries()) apply_config_value(base, key, value);
  return base;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error&) {
    throw Error(ErrorCode::ConfigError, "cannot read config '" + path.string() + "'");
  }
  try {
    return parse_experiment_config(KvDocument::parse(text));
  } catch (const ParseError& e) {
    throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
}

void validate(const ExperimentConfig& c) {
  if (c.source == DataSource::File) {
    if (c.file.path.empty()) throw Error(ErrorCode::ConfigError, "source = file needs data_file");
    if (!std::filesystem::exists(c.file.path)) {
      throw Error(ErrorCode::ConfigError, "data file not found: " + c.file.path.string());
    }
  }
  if (c.embedding.dim == 0 || c.embedding.horizon == 0) {
    throw Error(ErrorCode::ConfigError, "embedding_dim and horizon must be >= 1");
  }
  if (c.model == ModelKind::Belpm) {
    if (c.belpm.k_a == 0 || c.belpm.k_o == 0) throw Error(ErrorCode::ConfigError, "k_a and k_o must be >= 1");
    if (!(c.belpm.lr > 0.0)) throw Error(ErrorCode::ConfigError, "lr must be positive");
    if (!(c.belpm.lambda >= 0.0)) throw Error(ErrorCode::ConfigError, "lambda must be non-negative");
  }
  if (c.model == ModelKind::Wknn && c.k == 0) throw Error(ErrorCode::ConfigError, "k must be >= 1");
  if (c.model == ModelKind::ClassicBel &&
      (!(c.bel.alpha > 0.0 && c.bel.alpha <= 1.0) || !(c.bel.beta > 0.0 && c.bel.beta <= 1.0))) {
    throw Error(ErrorCode::ConfigError, "alpha and beta must lie in (0, 1]");
  }
  if (c.peaks.top_m && *c.peaks.top_m == 0) throw Error(ErrorCode::ConfigError, "top_m must be >= 1");
}

TimeSeries load_source_series(const ExperimentConfig& c) {
  switch (c.source) {
    case DataSource::File:
      return load_series_csv(c.file);
    case DataSource::MackeyGlass:
      return gen_mackey_glass(c.generator.n, c.generator.tau, c.generator.x0.value_or(1.2),
                              c.generator.warmup);
    case DataSource::Logistic:
      return gen_logistic(c.generator.n, c.generator.logistic_r, c.generator.x0.value_or(0.3));
  }
  throw Error(ErrorCode::ConfigError, "unknown source");
}

ForecastModel train_model(const ExperimentConfig& c, const EmbeddedDataset& train_set) {
  if (train_set.empty()) throw Error(ErrorCode::TooFewSamples, "training set is empty");
  switch (c.model) {
    case ModelKind::Belpm:
      return {c.embedding, train(train_set, c.belpm)};
    case ModelKind::Wknn:
      return {c.embedding, WknnModel(train_set, c.k)};
    case ModelKind::ClassicBel:
      return {c.embedding,
              bel_train(ClassicBelModel(train_set.dim(), c.bel.alpha, c.bel.beta, c.bel.signal),
                        train_set, c.bel.epochs)};
  }
  throw Error(ErrorCode::ConfigError, "unknown model");
}

ExperimentResult run_experiment(const ExperimentConfig& c) {
  validate(c);
  const auto series = load_source_series(c);
  const auto dataset = embed(series, c.embedding.dim, c.embedding.horizon);
  const std::size_t n_train = c.n_train.value_or(dataset.size() * 4 / 5);
  if (n_train >= dataset.size()) {
    throw Error(ErrorCode::ConfigError, "n_train " + std::to_string(n_train) +
                                            " leaves no test pairs out of " +
                                            std::to_string(dataset.size()));
  }
  auto [train_set, test_set] = split(dataset, n_train);
  auto model = train_model(c, train_set);

  TimeSeries observed;
  observed.step = series.step;
  observed.start_time = series.time_at(n_train + c.embedding.dim - 1 + c.embedding.horizon);
  observed.values.assign(test_set.targets().begin(), test_set.targets().end());
  TimeSeries predicted = observed;
  for (std::size_t j = 0; j < test_set.size(); ++j) {
    const double y = predict(model, test_set.input(j));
    if (!std::isfinite(y)) {
      throw Error(ErrorCode::NumericFailure, "non-finite prediction for test pair " + std::to_string(j));
    }
    predicted.values[j] = y;
  }

  auto report = evaluate(observed.values, predicted.values, c.peaks);

  if (c.predictions_out) write_text_file(*c.predictions_out, format_predictions_csv(observed, predicted));
  if (c.report_out) write_text_file(*c.report_out, format_report(report));
  if (c.peaks_out && report.peaks) write_text_file(*c.peaks_out, format_peaks_csv(*report.peaks, observed));
  if (c.model_out) save_model(model, *c.model_out);

  return {std::move(report), std::move(observed), std::move(predicted), std::move(model)};
}

std::string format_report(const EvaluationReport& r) {
  KvDocument doc;
  doc.set("n", r.n);
  doc.set("mse", r.mse);
  doc.set("nmse", r.nmse ? format_double(*r.nmse) : std::string("undefined"));
  doc.set("correlation", r.correlation ? format_double(*r.correlation) : std::string("undefined"));
  if (r.peaks) {
    const auto& p = *r.peaks;
    doc.set("peaks.window", p.window);
    doc.set("peaks.total", p.total());
    doc.set("peaks.identified_exact", p.identified_exact);
    doc.set("peaks.identified_delayed", p.identified_delayed);
    doc.set("peaks.missed", p.missed);
    std::string offsets;
    for (std::size_t i = 0; i < p.matches.size(); ++i) {
      if (i) offsets += ',';
      offsets += p.matches[i].offset ? std::to_string(*p.matches[i].offset) : std::string("missed");
    }
    doc.set("peaks.offsets", offsets);
  }
  return doc.str();
}

std::string format_predictions_csv(const TimeSeries& observed, const TimeSeries& predicted) {
  if (observed.size() != predicted.size()) {
    throw Error(ErrorCode::LengthMismatch, "observed and predicted lengths differ");
  }
  std::string out = "time,observed,predicted\n";
  for (std::size_t i = 0; i < observed.size(); ++i) {
    out += std::to_string(observed.time_at(i));
    out += ',';
    out += format_double(observed.values[i]);
    out += ',';
    out += format_double(predicted.values[i]);
    out += '\n';
  }
  return out;
}

std::pair<TimeSeries, TimeSeries> parse_predictions_csv(std::string_view text) {
  TimeSeries observed;
  TimeSeries predicted;
  std::vector<std::int64_t> times;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line =
        trim(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#' || line.starts_with("time,")) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected 'time,observed,predicted'");
    }
    try {
      times.push_back(parse_int(line.substr(0, c1)));
      observed.values.push_back(parse_double(line.substr(c1 + 1, c2 - c1 - 1)));
      predicted.values.push_back(parse_double(line.substr(c2 + 1)));
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (times.empty()) throw Error(ErrorCode::EmptyFile, "no predictions found");
  observed.start_time = times.front();
  if (times.size() > 1) observed.step = times[1] - times[0];
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] - times[i - 1] != observed.step || observed.step <= 0) {
      throw Error(ErrorCode::ParseError, "prediction times must be evenly spaced");
    }
  }
  predicted.start_time = observed.start_time;
  predicted.step = observed.step;
  return {std::move(observed), std::move(predicted)};
}

std::string format_peaks_csv(const PeakReport& report, const TimeSeries& observed) {
  std::string out = "# window = " + std::to_string(report.window) + "\n";
  out += "observed_time,predicted_time,offset,status\n";
  for (const auto& m : report.matches) {
    out += std::to_string(observed.time_at(m.observed));
    out += ',';
    if (m.predicted) {
      out += std::to_string(observed.time_at(*m.predicted));
      out += ',';
      out += std::to_string(*m.offset);
      out += *m.offset == 0 ? ",exact" : ",delayed";
    } else {
      out += ",,missed";
    }
    out += '\n';
  }
  return out;
}

}  // namespace belpm
