#include "belpm/model_io.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <system_error>
#include <string>

#include "belpm/error.hpp"
#include "belpm/kv_text.hpp"
#include "belpm/series_io.hpp"

namespace belpm {

namespace {

constexpr std::string_view kChecksumKey = "checksum = ";

void put_dataset(KvDocument& doc, const std::string& prefix, const EmbeddedDataset& data) {
  doc.set(prefix + ".dim", data.dim());
  doc.set(prefix + ".horizon", data.horizon());
  doc.set(prefix + ".samples", data.size());
  doc.set(prefix + ".inputs",
          std::vector<double>(data.inputs().begin(), data.inputs().end()));
  doc.set(prefix + ".targets",
          std::vector<double>(data.targets().begin(), data.targets().end()));
}

EmbeddedDataset get_dataset(const KvDocument& doc, const std::string& prefix) {
  const auto dim = doc.get_size(prefix + ".dim");
  const auto samples = doc.get_size(prefix + ".samples");
  auto inputs = doc.get_doubles(prefix + ".inputs");
  auto targets = doc.get_doubles(prefix + ".targets");
  if (targets.size() != samples || inputs.size() != samples * dim) {
    throw Error(ErrorCode::CorruptFile, prefix + ": stored sample counts are inconsistent");
  }
  return {dim, doc.get_size(prefix + ".horizon"), std::move(inputs), std::move(targets)};
}

void put_network(KvDocument& doc, const std::string& prefix, const AdaptiveNetwork& net) {
  doc.set(prefix + ".kernel", std::string(to_string(net.kernel())));
  doc.set(prefix + ".k", net.k());
  doc.set(prefix + ".bandwidths",
          std::vector<double>(net.bandwidths().begin(), net.bandwidths().end()));
  put_dataset(doc, prefix, net.data());
}

AdaptiveNetwork get_network(const KvDocument& doc, const std::string& prefix) {
  return {get_dataset(doc, prefix), doc.get_size(prefix + ".k"),
          parse_kernel(doc.get(prefix + ".kernel")), doc.get_doubles(prefix + ".bandwidths")};
}

void put_model(KvDocument& doc, const BelpmModel& m) {
  const auto& c = m.config;
  doc.set("config.k_a", c.k_a);
  doc.set("config.k_o", c.k_o);
  doc.set("config.kernel_a", std::string(to_string(c.kernel_a)));
  doc.set("config.kernel_o", std::string(to_string(c.kernel_o)));
  doc.set("config.lr", c.lr);
  doc.set("config.epochs", c.epochs);
  doc.set("config.lambda", c.lambda);
  doc.set("cm.w1", m.cm.w1);
  doc.set("cm.w2", m.cm.w2);
  doc.set("cm.w3", m.cm.w3);
  doc.set("cm.wa1", m.cm.wa1);
  doc.set("cm.wa2", m.cm.wa2);
  doc.set("cm.wa3", m.cm.wa3);
  doc.set("lo.wo1", m.lo.wo1);
  doc.set("lo.wo2", m.lo.wo2);
  put_network(doc, "bl", m.bl);
  doc.set("bl.loss_trace", m.bl_loss_trace);
  put_network(doc, "mo", m.mo);
  doc.set("mo.loss_trace", m.mo_loss_trace);
}

BelpmModel get_belpm(const KvDocument& doc, const EmbeddingConfig& embedding) {
  BelpmConfig c;
  c.k_a = doc.get_size("config.k_a");
  c.k_o = doc.get_size("config.k_o");
  c.kernel_a = parse_kernel(doc.get("config.kernel_a"));
  c.kernel_o = parse_kernel(doc.get("config.kernel_o"));
  c.lr = doc.get_double("config.lr");
  c.epochs = doc.get_size("config.epochs");
  c.lambda = doc.get_double("config.lambda");
  CmWeights cm;
  cm.w1 = doc.get_double("cm.w1");
  cm.w2 = doc.get_double("cm.w2");
  cm.w3 = doc.get_double("cm.w3");
  cm.wa1 = doc.get_double("cm.wa1");
  cm.wa2 = doc.get_double("cm.wa2");
  cm.wa3 = doc.get_double("cm.wa3");
  LoWeights lo{doc.get_double("lo.wo1"), doc.get_double("lo.wo2")};
  auto bl = get_network(doc, "bl");
  auto mo = get_network(doc, "mo");
  if (bl.dim() != embedding.dim + 2 || mo.dim() != embedding.dim ||
      bl.sample_count() != mo.sample_count()) {
    throw Error(ErrorCode::CorruptFile, "BL/MO networks do not match the embedding");
  }
  return BelpmModel{embedding,
                    std::move(bl),
                    std::move(mo),
                    cm,
                    lo,
                    c,
                    doc.get_doubles("bl.loss_trace"),
                    doc.get_doubles("mo.loss_trace")};
}

void put_model(KvDocument& doc, const WknnModel& m) {
  doc.set("wknn.k", m.k);
  put_dataset(doc, "wknn", m.data);
}

void put_model(KvDocument& doc, const ClassicBelModel& m) {
  doc.set("bel.alpha", m.alpha);
  doc.set("bel.beta", m.beta);
  doc.set("bel.signal", std::string(to_string(m.signal)));
  doc.set("bel.v", m.v);
  doc.set("bel.w", m.w);
}

ClassicBelModel get_classic(const KvDocument& doc) {
  ClassicBelModel m;
  m.alpha = doc.get_double("bel.alpha");
  m.beta = doc.get_double("bel.beta");
  m.signal = parse_orbitofrontal_signal(doc.get("bel.signal"));
  m.v = doc.get_doubles("bel.v");
  m.w = doc.get_doubles("bel.w");
  if (m.v.size() != m.w.size()) throw Error(ErrorCode::CorruptFile, "V and W lengths differ");
  return m;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Belpm: return "belpm";
    case ModelKind::Wknn: return "wknn";
    case ModelKind::ClassicBel: return "classic_bel";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "belpm") return ModelKind::Belpm;
  if (name == "wknn") return ModelKind::Wknn;
  if (name == "classic_bel") return ModelKind::ClassicBel;
  throw Error(ErrorCode::InvalidParameter, "unknown model kind '" + std::string(name) + "'");
}

double predict(const ForecastModel& model, std::span<const double> stimulus) {
  if (stimulus.size() != model.embedding.dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected stimulus of dimension " + std::to_string(model.embedding.dim));
  }
  struct Visitor {
    std::span<const double> s;
    double operator()(const BelpmModel& m) const { return belpm::predict(m, s); }
    double operator()(const WknnModel& m) const { return wknn_predict(m, s); }
    double operator()(const ClassicBelModel& m) const { return bel_predict(m, s); }
  };
  return std::visit(Visitor{stimulus}, model.model);
}

TimeSeries predict_series(const ForecastModel& model, const TimeSeries& series) {
  const auto windows = embed(series, model.embedding.dim, model.embedding.horizon);
  TimeSeries out;
  out.step = series.step;
  out.start_time = series.time_at(model.embedding.dim - 1 + model.embedding.horizon);
  out.values.reserve(windows.size());
  for (std::size_t j = 0; j < windows.size(); ++j) {
    out.values.push_back(predict(model, windows.input(j)));
  }
  return out;
}

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

std::string serialize_model(const ForecastModel& model) {
  KvDocument doc;
  doc.set("kind", std::string(to_string(model.kind())));
  doc.set("embedding.dim", model.embedding.dim);
  doc.set("embedding.horizon", model.embedding.horizon);
  std::visit([&](const auto& m) { put_model(doc, m); }, model.model);

  std::string out = std::string(kModelMagic) + " " + std::string(kModelVersion) + "\n";
  out += doc.str();
  char hex[16];
  std::snprintf(hex, sizeof(hex), "%08x", crc32_of(out));
  out += kChecksumKey;
  out += hex;
  out += '\n';
  return out;
}

ForecastModel deserialize_model(std::string_view text) {
  const auto first_nl = text.find('\n');
  const auto header = trim(text.substr(0, first_nl));
  const auto space = header.find(' ');
  if (header.substr(0, space) != kModelMagic || space == std::string_view::npos) {
    throw Error(ErrorCode::CorruptFile, "missing 'belpm-model' header");
  }
  const auto version = trim(header.substr(space + 1));
  if (version != kModelVersion) {
    throw Error(ErrorCode::VersionMismatch, "unsupported model version '" + std::string(version) +
                                                "', expected " + std::string(kModelVersion));
  }

  // The checksum line must be the final line.
  auto body_end = text.rfind(kChecksumKey);
  if (body_end == std::string_view::npos || (body_end > 0 && text[body_end - 1] != '\n')) {
    throw Error(ErrorCode::CorruptFile, "missing checksum line");
  }
  auto tail = text.substr(body_end + kChecksumKey.size());
  if (!tail.empty() && tail.back() == '\n') tail.remove_suffix(1);
  std::uint32_t stated = 0;
  const auto res = std::from_chars(tail.data(), tail.data() + tail.size(), stated, 16);
  if (tail.size() != 8 || res.ec != std::errc{} || res.ptr != tail.data() + tail.size()) {
    throw Error(ErrorCode::CorruptFile, "malformed checksum line");
  }
  const auto body = text.substr(0, body_end);
  if (crc32_of(body) != stated) throw Error(ErrorCode::CorruptFile, "checksum mismatch");

  try {
    const auto doc = KvDocument::parse(body.substr(first_nl + 1));
    EmbeddingConfig embedding{doc.get_size("embedding.dim"), doc.get_size("embedding.horizon")};
    switch (parse_model_kind(doc.get("kind"))) {
      case ModelKind::Belpm:
        return {embedding, get_belpm(doc, embedding)};
      case ModelKind::Wknn: {
        WknnModel m(get_dataset(doc, "wknn"), doc.get_size("wknn.k"));
        if (m.data.dim() != embedding.dim) {
          throw Error(ErrorCode::CorruptFile, "WkNN data does not match the embedding");
        }
        return {embedding, std::move(m)};
      }
      case ModelKind::ClassicBel: {
        auto m = get_classic(doc);
        if (m.dim() != embedding.dim) {
          throw Error(ErrorCode::CorruptFile, "BEL weights do not match the embedding");
        }
        return {embedding, std::move(m)};
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptFile) throw;
    throw Error(ErrorCode::CorruptFile, e.what());
  }
  throw Error(ErrorCode::CorruptFile, "unknown model kind");
}

void save_model(const ForecastModel& model, const std::filesystem::path& path) {
  write_text_file(path, serialize_model(model));
}

ForecastModel load_model(const std::filesystem::path& path) {
  return deserialize_model(read_text_file(path));
}

}  // namespace belpm
