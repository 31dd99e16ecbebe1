#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "belpm/belpm_model.hpp"
#include "belpm/classic_bel.hpp"
#include "belpm/wknn.hpp"

namespace belpm {

enum class ModelKind { Belpm, Wknn, ClassicBel };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

/// Any trained forecaster together with the embedding it was trained on.
struct ForecastModel {
  EmbeddingConfig embedding;
  std::variant<BelpmModel, WknnModel, ClassicBelModel> model;

  ModelKind kind() const noexcept { return static_cast<ModelKind>(model.index()); }
};

double predict(const ForecastModel& model, std::span<const double> stimulus);

/// Direct-strategy predictions for every embeddable window of `series`.
TimeSeries predict_series(const ForecastModel& model, const TimeSeries& series);

inline constexpr std::string_view kModelMagic = "belpm-model";
inline constexpr std::string_view kModelVersion = "v1";

/// `belpm-model v1` header, `key = value` lines and a trailing
/// `checksum = <crc32 hex>` over every preceding byte.
std::string serialize_model(const ForecastModel& model);

/// Throws VersionMismatch for a foreign version tag and CorruptFile for a
/// missing header, missing or wrong checksum, or inconsistent contents.
ForecastModel deserialize_model(std::string_view text);

void save_model(const ForecastModel& model, const std::filesystem::path& path);
ForecastModel load_model(const std::filesystem::path& path);

std::uint32_t crc32_of(std::string_view bytes);

}  // namespace belpm
