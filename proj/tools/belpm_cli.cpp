// belpm command-line tool: one subcommand per pipeline stage plus `bench`,
// which runs complete experiments.
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numeric failure.

#include <CLI11.hpp>

#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "belpm/error.hpp"
#include "belpm/experiment.hpp"

namespace {

using namespace belpm;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidParameter:
      return kExitUsage;
    case ErrorCode::SingularSystem:
    case ErrorCode::ZeroVariance:
    case ErrorCode::DegenerateStats:
    case ErrorCode::NumericFailure:
      return kExitNumeric;
    default:
      return kExitData;
  }
}

// Experiment flags mirror the config-file keys ('-' on the command line, '_' in files).
const std::vector<std::pair<std::string, std::string>> kExperimentKeys = {
    {"source", "file | mackey_glass | logistic"},
    {"data_file", "series CSV (source = file)"},
    {"missing_sentinel", "value marking a missing observation"},
    {"gap_policy", "error | linear_interpolate"},
    {"n", "generated series length"},
    {"tau", "Mackey-Glass delay"},
    {"x0", "generator initial value"},
    {"warmup", "Mackey-Glass samples discarded before output"},
    {"logistic_r", "logistic map rate"},
    {"embedding_dim", "embedding dimension R"},
    {"horizon", "prediction horizon in steps"},
    {"n_train", "number of training pairs"},
    {"model", "belpm | wknn | classic_bel"},
    {"k_a", "BL neighbor count"},
    {"k_o", "MO neighbor count"},
    {"kernel", "kernel for BL and MO"},
    {"kernel_a", "BL kernel: exponential | inverse_quadratic | linear_rescale"},
    {"kernel_o", "MO kernel"},
    {"lr", "steepest-descent learning rate"},
    {"epochs", "steepest-descent epochs"},
    {"lambda", "ridge term of the fusion fit"},
    {"k", "WkNN neighbor count"},
    {"alpha", "classic BEL amygdala rate"},
    {"beta", "classic BEL orbitofrontal rate"},
    {"bel_epochs", "classic BEL epochs"},
    {"bel_signal", "orbitofrontal_sum | model_output"},
    {"peak_window", "peak matching window in steps"},
    {"top_m", "number of largest peaks to evaluate"},
    {"predictions_out", "write time,observed,predicted CSV"},
    {"report_out", "write the evaluation report"},
    {"peaks_out", "write the per-peak match table"},
    {"model_out", "write the trained model"},
};

std::string flag_name(std::string key) {
  for (auto& ch : key) {
    if (ch == '_') ch = '-';
  }
  return "--" + key;
}

struct ExperimentFlags {
  std::map<std::string, std::string> values;
  std::vector<std::string> configs;

  void attach(CLI::App* cmd, bool allow_many_configs) {
    if (allow_many_configs) {
      cmd->add_option("--config", configs, "experiment config file(s), run concurrently");
    } else {
      cmd->add_option("--config", configs, "experiment config file")->expected(0, 1);
    }
    for (const auto& [key, help] : kExperimentKeys) {
      cmd->add_option(flag_name(key), values[key], help);
    }
  }

  // Config file first, then explicit flags on top.
  ExperimentConfig build(CLI::App* cmd, const std::string& config_path) const {
    ExperimentConfig c = config_path.empty() ? ExperimentConfig{} : load_experiment_config(config_path);
    for (const auto& [key, help] : kExperimentKeys) {
      if (cmd->count(flag_name(key)) > 0) apply_config_value(c, key, values.at(key));
    }
    return c;
  }
};

struct SeriesFlags {
  std::string data;
  std::optional<double> sentinel;
  std::string gap_policy = "error";

  void attach(CLI::App* cmd) {
    cmd->add_option("--data", data, "series CSV")->required();
    cmd->add_option("--missing-sentinel", sentinel, "value marking a missing observation");
    cmd->add_option("--gap-policy", gap_policy, "error | linear_interpolate");
  }

  TimeSeries load() const {
    return load_series_csv({data, sentinel, parse_gap_policy(gap_policy)});
  }
};

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brain-emotional-learning forecaster: generate, train, predict, evaluate"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic series");
  std::string gen_kind = "mackey_glass";
  GeneratorParams gp;
  std::string gen_out;
  gen->add_option("--generator", gen_kind, "mackey_glass | logistic");
  gen->add_option("--n", gp.n, "number of samples");
  gen->add_option("--tau", gp.tau, "Mackey-Glass delay");
  gen->add_option("--x0", gp.x0, "initial value");
  gen->add_option("--warmup", gp.warmup, "Mackey-Glass samples discarded");
  gen->add_option("--logistic-r", gp.logistic_r, "logistic map rate");
  gen->add_option("--out", gen_out, "output CSV (default stdout)");

  // embed
  auto* emb = app.add_subcommand("embed", "write time-delay embedded pairs");
  SeriesFlags emb_series;
  emb_series.attach(emb);
  std::size_t emb_dim = 3;
  std::size_t emb_horizon = 1;
  std::string emb_out;
  emb->add_option("--embedding-dim", emb_dim, "embedding dimension R");
  emb->add_option("--horizon", emb_horizon, "prediction horizon");
  emb->add_option("--out", emb_out, "output CSV (default stdout)");

  // train
  auto* trn = app.add_subcommand("train", "train a model on the first n_train pairs");
  ExperimentFlags trn_flags;
  trn_flags.attach(trn, false);
  std::string trn_out;
  trn->add_option("--out", trn_out, "model file")->required();

  // predict
  auto* prd = app.add_subcommand("predict", "predict every embeddable window of a series");
  SeriesFlags prd_series;
  prd_series.attach(prd);
  std::string prd_model;
  std::string prd_out;
  prd->add_option("--model", prd_model, "model file")->required();
  prd->add_option("--out", prd_out, "time,observed,predicted CSV (default stdout)");

  // eval
  auto* evl = app.add_subcommand("eval", "score a time,observed,predicted CSV");
  std::string evl_pred;
  PeakSettings evl_peaks;
  std::string evl_out;
  evl->add_option("--predictions", evl_pred, "predictions CSV")->required();
  evl->add_option("--peak-window", evl_peaks.window, "peak matching window");
  evl->add_option("--top-m", evl_peaks.top_m, "number of largest peaks");
  evl->add_option("--out", evl_out, "report file (default stdout)");

  // peaks
  auto* pks = app.add_subcommand("peaks", "list the local maxima of a series");
  SeriesFlags pks_series;
  pks_series.attach(pks);
  std::optional<std::size_t> pks_top;
  pks->add_option("--top-m", pks_top, "keep only the m largest");

  // bench
  auto* bch = app.add_subcommand("bench", "run complete experiments");
  ExperimentFlags bch_flags;
  bch_flags.attach(bch, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      TimeSeries s = gen_kind == "mackey_glass"
                         ? gen_mackey_glass(gp.n, gp.tau, gp.x0.value_or(1.2), gp.warmup)
                     : gen_kind == "logistic"
                         ? gen_logistic(gp.n, gp.logistic_r, gp.x0.value_or(0.3))
                         : throw Error(ErrorCode::ConfigError, "unknown generator '" + gen_kind + "'");
      emit(gen_out, format_series_csv(s));
    } else if (*emb) {
      const auto d = embed(emb_series.load(), emb_dim, emb_horizon);
      std::string out;
      for (std::size_t i = 0; i < emb_dim; ++i) out += "x" + std::to_string(i + 1) + ",";
      out += "target\n";
      for (std::size_t j = 0; j < d.size(); ++j) {
        for (double v : d.input(j)) out += format_double(v) + ",";
        out += format_double(d.target(j)) + "\n";
      }
      emit(emb_out, out);
    } else if (*trn) {
      auto c = trn_flags.build(trn, trn_flags.configs.empty() ? "" : trn_flags.configs.front());
      validate(c);
      const auto d = embed(load_source_series(c), c.embedding.dim, c.embedding.horizon);
      const auto [train_set, rest] = split(d, c.n_train.value_or(d.size()));
      const auto model = train_model(c, train_set);
      save_model(model, trn_out);
      std::cout << "model = " << to_string(model.kind()) << "\n"
                << "train_pairs = " << train_set.size() << "\n";
      if (const auto* m = std::get_if<BelpmModel>(&model.model)) {
        std::cout << "bl.loo_loss = " << format_double(m->bl_loss_trace.front()) << " -> "
                  << format_double(m->bl_loss_trace.back()) << "\n"
                  << "mo.loo_loss = " << format_double(m->mo_loss_trace.front()) << " -> "
                  << format_double(m->mo_loss_trace.back()) << "\n"
                  << "cm = " << format_doubles({m->cm.w1, m->cm.w2, m->cm.w3}) << "\n";
      }
    } else if (*prd) {
      const auto model = load_model(prd_model);
      const auto series = prd_series.load();
      const auto predicted = predict_series(model, series);
      TimeSeries observed = predicted;
      const std::size_t offset = model.embedding.dim - 1 + model.embedding.horizon;
      for (std::size_t i = 0; i < observed.size(); ++i) observed.values[i] = series.values[offset + i];
      emit(prd_out, format_predictions_csv(observed, predicted));
    } else if (*evl) {
      const auto [observed, predicted] = parse_predictions_csv(read_text_file(evl_pred));
      emit(evl_out, format_report(evaluate(observed.values, predicted.values, evl_peaks)));
    } else if (*pks) {
      const auto s = pks_series.load();
      std::string out = "index,time,value\n";
      for (auto i : find_peaks(s, pks_top)) {
        out += std::to_string(i) + "," + std::to_string(s.time_at(i)) + "," +
               format_double(s.values[i]) + "\n";
      }
      std::cout << out;
    } else if (*bch) {
      std::vector<std::string> paths = bch_flags.configs;
      if (paths.empty()) paths.emplace_back();
      std::vector<ExperimentConfig> configs;
      for (const auto& p : paths) configs.push_back(bch_flags.build(bch, p));
      std::vector<std::future<ExperimentResult>> runs;
      for (const auto& c : configs) {
        runs.push_back(std::async(std::launch::async, [c] { return run_experiment(c); }));
      }
      for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto result = runs[i].get();
        if (runs.size() > 1) std::cout << "# " << paths[i] << "\n";
        std::cout << format_report(result.report);
      }
    }
  } catch (const Error& e) {
    std::cerr << "belpm: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "belpm: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
