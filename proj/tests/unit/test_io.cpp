#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>

#include "belpm/error.hpp"
#include "belpm/kv_text.hpp"
#include "belpm/model_io.hpp"
#include "belpm/series_io.hpp"
#include "oracles.hpp"

using namespace belpm;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::NumericFailure;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("belpm_test_io_" + name);
}

}  // namespace

TEST_CASE("kv documents") {
  const auto doc = KvDocument::parse("# comment\n\na = 1\r\nb=2.5, 3\n  c =   \n");
  CHECK(doc.get("a") == "1");
  CHECK(doc.get_doubles("b") == std::vector<double>{2.5, 3});
  CHECK(doc.get("c").empty());
  CHECK(doc.get_doubles("c").empty());
  CHECK(code_of([&] { doc.get("missing"); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { doc.get_size("b"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { KvDocument::parse("a = 1\na = 2\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { KvDocument::parse("no equals sign\n"); }) == ErrorCode::ParseError);
}

TEST_CASE("17 significant digits round-trip every double") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::uint64_t> bits;
  for (int i = 0; i < 2000; ++i) {
    double v;
    const auto b = bits(rng);
    std::memcpy(&v, &b, sizeof(v));
    if (!std::isfinite(v)) continue;
    CHECK(parse_double(format_double(v)) == v);
  }
}

TEST_CASE("series CSV parsing") {
  CHECK(parse_series_csv("1.0\n2.0\n3.0").values == std::vector<double>{1, 2, 3});
  CHECK(parse_series_csv("1\n99999\n3", 99999.0, GapPolicy::LinearInterpolate).values ==
        std::vector<double>{1, 2, 3});
  try {
    parse_series_csv("1\nabc\n3");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  const auto timed = parse_series_csv("# AE index\r\ntime,value\r\n10,1.5\r\n\r\n15,2.5\r\n20,-3\r\n");
  CHECK(timed.values == std::vector<double>{1.5, 2.5, -3});
  CHECK(timed.start_time == 10);
  CHECK(timed.step == 5);

  CHECK(code_of([] { parse_series_csv("1\n-1\n3", -1.0); }) == ErrorCode::GapError);
  CHECK(code_of([] { parse_series_csv("# nothing\n\n"); }) == ErrorCode::EmptyFile);
  CHECK(code_of([] { parse_series_csv("1,2\n2,3\n4,4\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_series_csv("1,2\n3\n"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_series_csv("-1\n-1\n", -1.0, GapPolicy::LinearInterpolate); }) ==
        ErrorCode::GapError);
  CHECK(parse_series_csv("-1\n4\n-1\n-1\n10\n-1", -1.0, GapPolicy::LinearInterpolate).values ==
        std::vector<double>{4, 4, 6, 8, 10, 10});
}

TEST_CASE("series CSV round-trip") {
  std::mt19937_64 rng(78);
  TimeSeries s;
  s.start_time = -30;
  s.step = 3;
  s.values = oracle::random_vector(rng, 200, -1e6, 1e6);
  s.values.push_back(1e-300);
  s.values.push_back(-0.1);
  CHECK(parse_series_csv(format_series_csv(s)) == s);

  const auto path = temp_path("series.csv");
  save_series_csv(s, path);
  CHECK(load_series_csv({path, std::nullopt, GapPolicy::Error}) == s);
  std::filesystem::remove(path);
  CHECK(code_of([] { load_series_csv({"/nonexistent/x.csv", std::nullopt, GapPolicy::Error}); }) ==
        ErrorCode::IoError);
}

namespace {

std::vector<ForecastModel> sample_models() {
  const auto d = embed(gen_mackey_glass(160, 17, 1.2, 50), 3, 2);
  BelpmConfig c;
  c.k_a = 6;
  c.k_o = 4;
  c.kernel_o = KernelKind::InverseQuadratic;
  c.epochs = 10;
  c.lr = 5.0;
  std::vector<ForecastModel> out;
  out.push_back({{3, 2}, train(d, c)});
  out.push_back({{3, 2}, WknnModel(d, 2)});
  out.push_back({{3, 2}, bel_train(ClassicBelModel(3, 0.2, 0.1, OrbitofrontalSignal::ModelOutput), d, 2)});
  return out;
}

}  // namespace

TEST_CASE("model files round-trip with bit-identical predictions") {
  std::mt19937_64 rng(79);
  for (const auto& model : sample_models()) {
    const auto text = serialize_model(model);
    CHECK(text.starts_with("belpm-model v1\n"));
    const auto path = temp_path("model.txt");
    save_model(model, path);
    const auto loaded = load_model(path);
    std::filesystem::remove(path);
    CHECK(loaded.kind() == model.kind());
    CHECK(loaded.embedding == model.embedding);
    CHECK(serialize_model(loaded) == text);
    for (int q = 0; q < 100; ++q) {
      const auto x = oracle::random_vector(rng, 3, 1.0, 1.5);
      CHECK(predict(loaded, x) == predict(model, x));
    }
  }
}

TEST_CASE("belpm model file carries every fusion symbol") {
  const auto model = sample_models().front();
  const auto text = serialize_model(model);
  for (const char* key : {"cm.w1 = ", "cm.w2 = ", "cm.w3 = ", "cm.wa1 = ", "cm.wa2 = ", "cm.wa3 = ",
                          "lo.wo1 = ", "lo.wo2 = ", "bl.bandwidths = ", "mo.bandwidths = ",
                          "bl.targets = ", "mo.targets = ", "checksum = "}) {
    CHECK(text.find(key) != std::string::npos);
  }
  const auto& m = std::get<BelpmModel>(model.model);
  const auto loaded = deserialize_model(text);
  const auto& back = std::get<BelpmModel>(loaded.model);
  CHECK(back.cm == m.cm);
  CHECK(back.lo == m.lo);
  CHECK(back.config == m.config);
  CHECK(back.bl_loss_trace == m.bl_loss_trace);
  CHECK(back.mo.data() == m.mo.data());
}

TEST_CASE("model file corruption is detected") {
  const auto text = serialize_model(sample_models()[1]);

  auto v2 = text;
  v2.replace(v2.find("v1"), 2, "v2");
  CHECK(code_of([&] { deserialize_model(v2); }) == ErrorCode::VersionMismatch);

  CHECK(code_of([&] { deserialize_model(text.substr(0, text.size() / 2)); }) == ErrorCode::CorruptFile);
  CHECK(code_of([&] { deserialize_model(text.substr(0, text.size() - 3)); }) == ErrorCode::CorruptFile);

  auto tampered = text;
  tampered.replace(tampered.find("wknn.k = 2"), 10, "wknn.k = 3");
  CHECK(code_of([&] { deserialize_model(tampered); }) == ErrorCode::CorruptFile);

  CHECK(code_of([] { deserialize_model("something else\n"); }) == ErrorCode::CorruptFile);
  CHECK(code_of([] { deserialize_model(""); }) == ErrorCode::CorruptFile);
}
