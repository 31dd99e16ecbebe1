#include <doctest.h>

#include <cmath>
#include <random>

#include "belpm/error.hpp"
#include "belpm/evaluation.hpp"
#include "oracles.hpp"

using namespace belpm;

namespace {
using V = std::vector<double>;
using I = std::vector<std::size_t>;

V scaled(const V& y, double a, double b) {
  V out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = a * y[i] + b;
  return out;
}
}  // namespace

TEST_CASE("nmse") {
  CHECK(nmse(V{1, 2, 3}, V{1, 2, 3}) == 0.0);
  CHECK(nmse(V{1, 2, 3}, V{2, 2, 2}) == 1.0);
  CHECK(nmse(V{1, 2, 3}, V{1, 2, 4}) == 0.5);
  CHECK_THROWS_AS(nmse(V{2, 2}, V{1, 2}), Error);
  CHECK_THROWS_AS(nmse(V{1, 2}, V{1}), Error);
}

TEST_CASE("mse") {
  CHECK(mse(V{1, 2, 3}, V{1, 2, 3}) == 0.0);
  CHECK(mse(V{1, 2, 3}, V{1, 2, 4}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(mse(V{0, 0}, V{3, 3}) == 9.0);
  CHECK_THROWS_AS(mse(V{}, V{}), Error);
}

TEST_CASE("correlation") {
  const V y{1, 4, 2, 8, 5};
  CHECK(correlation(y, y) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(correlation(y, scaled(y, -1, 0)) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(correlation(y, scaled(y, 2.5, -7)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(correlation(y, V{1, 1, 1, 1, 1}), Error);
  CHECK_THROWS_AS(correlation(V{1}, V{1}), Error);
}

TEST_CASE("metric identities on random sequences") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const auto y = oracle::random_vector(rng, 20, -3, 3);
    const auto yhat = oracle::random_vector(rng, 20, -3, 3);
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= 20.0;
    CHECK(std::abs(nmse(y, yhat) - mse(y, yhat) / mse(y, V(20, mean))) < 1e-12);
    const double rho = correlation(y, yhat);
    CHECK(rho >= -1.0);
    CHECK(rho <= 1.0);
    CHECK(std::abs(correlation(scaled(y, 3, 1), yhat) - rho) < 1e-12);
    CHECK(std::abs(correlation(y, scaled(yhat, -0.5, 2)) + rho) < 1e-12);
  }
}

TEST_CASE("find_peaks") {
  CHECK(find_peaks(V{0, 1, 0, 2, 0}) == I{1, 3});
  CHECK(find_peaks(V{0, 1, 0, 2, 0}, 1) == I{3});
  CHECK(find_peaks(V{0, 1, 1, 0}) == I{1});
  CHECK(find_peaks(V{1, 2, 3, 4, 5}).empty());
  CHECK(find_peaks(V{5, 4, 3}).empty());
  // Equal heights: the earlier peak survives truncation.
  CHECK(find_peaks(V{0, 3, 0, 3, 0, 1, 0}, 1) == I{1});
  CHECK(find_peaks(V{0, 3, 0, 3, 0, 1, 0}, 2) == I{1, 3});
  CHECK_THROWS_AS(find_peaks(V{1, 2}), Error);
}

TEST_CASE("match_peaks") {
  V pred(20, 0.0);
  SUBCASE("delayed within the window") {
    pred[11] = 1;
    const auto r = match_peaks(I{10}, pred, 2);
    CHECK(r.identified_delayed == 1);
    CHECK(r.total() == 1);
    CHECK(*r.matches[0].offset == 1);
  }
  SUBCASE("outside the window") {
    pred[13] = 1;
    const auto r = match_peaks(I{10}, pred, 2);
    CHECK(r.missed == 1);
    CHECK(!r.matches[0].offset);
  }
  SUBCASE("advance counts too") {
    pred[8] = 1;
    CHECK(*match_peaks(I{10}, pred, 2).matches[0].offset == -2);
  }
  SUBCASE("closest pair wins, each predicted peak used once") {
    pred[11] = 1;
    const auto r = match_peaks(I{10, 12}, pred, 2);
    CHECK(r.identified_delayed == 1);
    CHECK(r.missed == 1);
    CHECK(r.matches[0].predicted == std::size_t{11});
  }
  SUBCASE("tie between advance and delay goes to the earlier prediction") {
    pred[9] = 1;
    pred[11] = 1;
    CHECK(match_peaks(I{10}, pred, 2).matches[0].predicted == std::size_t{9});
  }
  CHECK_THROWS_AS(match_peaks(I{25}, pred, 2), Error);
}

TEST_CASE("identical series identify every peak exactly") {
  std::mt19937_64 rng(40);
  const auto y = oracle::random_vector(rng, 100, 0, 1);
  const auto peaks = find_peaks(y);
  const auto r = match_peaks(peaks, y, 2);
  CHECK(r.identified_exact == peaks.size());
  CHECK(r.missed == 0);
}

TEST_CASE("peak counts partition the observed set") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const auto y = oracle::random_vector(rng, 60, 0, 1);
    const auto yhat = oracle::random_vector(rng, 60, 0, 1);
    const std::optional<std::size_t> top = trial % 2 ? std::optional<std::size_t>(5) : std::nullopt;
    const auto obs = find_peaks(y, top);
    const auto r = match_peaks(obs, yhat, trial % 4, top);
    CHECK(r.total() == obs.size());
    CHECK(r.matches.size() == obs.size());
  }
}

TEST_CASE("matching is invariant to a common time shift") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    auto y = oracle::random_vector(rng, 40, 0, 1);
    auto yhat = oracle::random_vector(rng, 40, 0, 1);
    // Anchor both ends at the global minimum so padding cannot create peaks.
    y.front() = y.back() = yhat.front() = yhat.back() = -1.0;
    const auto base = match_peaks(find_peaks(y), yhat, 2);
    V py(7, -1.0);
    V pyhat(7, -1.0);
    py.insert(py.end(), y.begin(), y.end());
    pyhat.insert(pyhat.end(), yhat.begin(), yhat.end());
    const auto shifted = match_peaks(find_peaks(py), pyhat, 2);
    CHECK(shifted.identified_exact == base.identified_exact);
    CHECK(shifted.identified_delayed == base.identified_delayed);
    CHECK(shifted.missed == base.missed);
    for (std::size_t i = 0; i < base.matches.size(); ++i) {
      CHECK(shifted.matches[i].offset == base.matches[i].offset);
    }
  }
}

TEST_CASE("evaluate bundles the metrics") {
  const V y{0, 2, 0, 3, 0, 1, 0};
  const V yhat{0, 1.5, 0.2, 2.5, 0.3, 0.8, 0};
  const auto r = evaluate(y, yhat, PeakSettings{2, std::nullopt});
  CHECK(r.n == 7);
  CHECK(r.mse == mse(y, yhat));
  CHECK(*r.nmse == nmse(y, yhat));
  CHECK(*r.correlation == correlation(y, yhat));
  REQUIRE(r.peaks);
  CHECK(r.peaks->identified_exact == 3);

  const auto flat = evaluate(V{1, 1, 1}, V{1, 1, 1});
  CHECK(!flat.nmse);
  CHECK(!flat.correlation);
  CHECK(flat.mse == 0.0);
}
