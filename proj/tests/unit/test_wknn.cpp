#include <doctest.h>

#include <algorithm>
#include <random>

#include "belpm/adaptive_network.hpp"
#include "belpm/error.hpp"
#include "belpm/wknn.hpp"
#include "oracles.hpp"

using namespace belpm;

TEST_CASE("wknn basics") {
  EmbeddedDataset d(1, 1, {0, 1, 5}, {10, 20, 30});
  CHECK(wknn_predict(WknnModel(d, 1), std::vector<double>{4.0}) == 30);
  EmbeddedDataset sym(1, 1, {-1, 1, 9}, {4, 8, 100});
  CHECK(wknn_predict(WknnModel(sym, 2), std::vector<double>{0}) == doctest::Approx(6.0).epsilon(1e-15));
  // An exact match dominates through the epsilon guard.
  CHECK(wknn_predict(WknnModel(d, 3), std::vector<double>{1}) == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(WknnModel(d, 10).k == 3);
  CHECK_THROWS_AS(wknn_predict(WknnModel(d, 1), std::vector<double>{1, 2}), Error);
}

TEST_CASE("wknn matches an independent weighted mean") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = oracle::random_instance(rng, 25, 3);
    WknnModel m(EmbeddedDataset(3, 1, inst.flat(), inst.targets), 3);
    const auto q = oracle::random_vector(rng, 3, -1, 1);
    const double got = wknn_predict(m, q);
    CHECK(got == doctest::Approx(oracle::wknn(inst, q, 3)).epsilon(1e-12));
    const auto nb = oracle::nearest(inst, q, 3, std::nullopt);
    double lo = 1e300, hi = -1e300;
    for (auto j : nb) {
      lo = std::min(lo, inst.targets[j]);
      hi = std::max(hi, inst.targets[j]);
    }
    CHECK(got >= lo - 1e-12);
    CHECK(got <= hi + 1e-12);
  }
}

TEST_CASE("k = 1 wknn equals k = 1 adaptive network") {
  std::mt19937_64 rng(26);
  for (auto kind : {KernelKind::Exponential, KernelKind::InverseQuadratic, KernelKind::LinearRescale}) {
    const auto inst = oracle::random_instance(rng, 30, 2);
    EmbeddedDataset d(2, 1, inst.flat(), inst.targets);
    WknnModel w(d, 1);
    AdaptiveNetwork net(d, 1, kind);
    for (int trial = 0; trial < 10; ++trial) {
      const auto q = oracle::random_vector(rng, 2, -1, 1);
      CHECK(wknn_predict(w, q) == net.predict(q));
    }
  }
}

TEST_CASE("training order only matters for exact ties") {
  std::mt19937_64 rng(27);
  const auto inst = oracle::random_instance(rng, 20, 2);
  std::vector<std::size_t> perm(20);
  for (std::size_t i = 0; i < 20; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> in;
  std::vector<double> tg;
  for (auto p : perm) {
    in.insert(in.end(), inst.inputs[p].begin(), inst.inputs[p].end());
    tg.push_back(inst.targets[p]);
  }
  WknnModel a(EmbeddedDataset(2, 1, inst.flat(), inst.targets), 4);
  WknnModel b(EmbeddedDataset(2, 1, in, tg), 4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto q = oracle::random_vector(rng, 2, -1, 1);
    CHECK(wknn_predict(a, q) == doctest::Approx(wknn_predict(b, q)).epsilon(1e-12));
  }
}
