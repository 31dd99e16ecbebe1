#include <doctest.h>

#include <cmath>
#include <random>

#include "belpm/error.hpp"
#include "belpm/series.hpp"

using namespace belpm;

namespace {
TimeSeries series_of(std::vector<double> v) {
  TimeSeries s;
  s.values = std::move(v);
  return s;
}
}  // namespace

TEST_CASE("embed unrolls contiguous windows") {
  const auto d = embed(series_of({1, 2, 3, 4, 5}), 3, 1);
  REQUIRE(d.size() == 2);
  CHECK(std::vector<double>(d.input(0).begin(), d.input(0).end()) == std::vector<double>{1, 2, 3});
  CHECK(d.target(0) == 4);
  CHECK(std::vector<double>(d.input(1).begin(), d.input(1).end()) == std::vector<double>{2, 3, 4});
  CHECK(d.target(1) == 5);

  const auto minimal = embed(series_of({7, 8}), 1, 1);
  REQUIRE(minimal.size() == 1);
  CHECK(minimal.input(0)[0] == 7);
  CHECK(minimal.target(0) == 8);

  const auto h2 = embed(series_of({1, 2, 3, 4, 5, 6}), 3, 2);
  REQUIRE(h2.size() == 2);
  CHECK(h2.target(0) == 5);
  CHECK(h2.target(1) == 6);
  CHECK(h2.input(1)[0] == 2);
}

TEST_CASE("embed rejects short series") {
  try {
    embed(series_of({1, 2, 3}), 3, 1);
    FAIL("expected SeriesTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SeriesTooShort);
  }
}

TEST_CASE("embed positions match the source series") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(30 + trial);
    for (auto& x : v) x = u(rng);
    const std::size_t dim = 1 + trial % 4;
    const std::size_t h = 1 + trial % 3;
    const auto d = embed(series_of(v), dim, h);
    CHECK(d.size() == v.size() - dim - h + 1);
    for (std::size_t j = 0; j < d.size(); ++j) {
      CHECK(d.input(j)[dim - 1] == v[j + dim - 1]);
      CHECK(d.target(j) == v[j + dim - 1 + h]);
    }
  }
}

TEST_CASE("split is chronological and lossless") {
  const auto d = embed(series_of({1, 2, 3, 4, 5, 6}), 2, 1);  // 4 pairs
  {
    const auto [tr, te] = split(d, 4);
    CHECK(tr.size() == 4);
    CHECK(te.empty());
  }
  {
    const auto [tr, te] = split(d, 0);
    CHECK(tr.empty());
    CHECK(te.size() == 4);
  }
  const auto [tr, te] = split(d, 2);
  CHECK(tr.target(0) == 3);
  CHECK(tr.target(1) == 4);
  CHECK(te.target(0) == 5);
  CHECK(te.target(1) == 6);

  for (std::size_t cut = 0; cut <= d.size(); ++cut) {
    const auto [a, b] = split(d, cut);
    EmbeddedDataset joined = a;
    for (std::size_t j = 0; j < b.size(); ++j) joined.push_back(b.input(j), b.target(j));
    CHECK(joined == d);
  }
  CHECK_THROWS_AS(split(d, 5), Error);
}

TEST_CASE("Mackey-Glass single step and determinism") {
  const auto one = gen_mackey_glass(1, 17, 1.2, 0);
  REQUIRE(one.size() == 1);
  CHECK(one.values[0] == 1.2 + 0.1 * 1.2 / (1 + std::pow(1.2, 10)) - 0.012);

  const auto a = gen_mackey_glass(500, 17, 1.2, 100);
  const auto b = gen_mackey_glass(500, 17, 1.2, 100);
  CHECK(a == b);

  double mean = 0.0;
  for (double v : a.values) mean += v;
  mean /= static_cast<double>(a.size());
  double var = 0.0;
  for (double v : a.values) var += (v - mean) * (v - mean);
  CHECK(var > 0.0);

  CHECK_THROWS_AS(gen_mackey_glass(0, 17, 1.2, 0), Error);
  CHECK_THROWS_AS(gen_mackey_glass(10, 0, 1.2, 0), Error);
  CHECK_THROWS_AS(gen_mackey_glass(10, 17, 2.0, 0), Error);
}

TEST_CASE("logistic map") {
  CHECK(gen_logistic(3, 4.0, 0.5).values == std::vector<double>{0.5, 1.0, 0.0});
  CHECK(gen_logistic(2, 2.0, 0.5).values == std::vector<double>{0.5, 0.5});

  const auto s = gen_logistic(100, 3.9, 0.3);
  double x = 0.3;
  for (std::size_t t = 0; t < 100; ++t) {
    CHECK(s.values[t] == x);
    x = 3.9 * x * (1.0 - x);
  }
  CHECK(gen_logistic(100, 3.9, 0.3) == s);
  CHECK_THROWS_AS(gen_logistic(5, 4.5, 0.3), Error);
  CHECK_THROWS_AS(gen_logistic(5, 3.9, 1.0), Error);
}
