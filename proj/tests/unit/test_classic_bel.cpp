#include <doctest.h>

#include <numeric>
#include <random>

#include "belpm/classic_bel.hpp"
#include "belpm/error.hpp"
#include "oracles.hpp"

using namespace belpm;

TEST_CASE("bel_forward") {
  ClassicBelModel zero(3, 0.5, 0.5);
  CHECK(bel_forward(zero, std::vector<double>{1, 2, 3}).e == 0.0);

  ClassicBelModel m(1, 0.5, 0.5);
  m.v = {1};
  m.w = {0};
  CHECK(bel_forward(m, std::vector<double>{2}).e == 2.0);

  ClassicBelModel same(3, 0.5, 0.5);
  same.v = same.w = {0.7, -1.3, 2.0};
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    CHECK(bel_forward(same, oracle::random_vector(rng, 3, -5, 5)).e == 0.0);
  }
  CHECK_THROWS_AS(bel_forward(m, std::vector<double>{1, 2}), Error);
}

TEST_CASE("bel_update") {
  ClassicBelModel m(1, 0.5, 0.5);
  const auto u = bel_update(m, std::vector<double>{1}, 1.0);
  CHECK(u.v == std::vector<double>{0.5});
  CHECK(u.w == std::vector<double>{-0.5});

  // Amygdala output already at or above the reward: V is frozen.
  ClassicBelModel sat(1, 0.5, 0.5);
  sat.v = {2};
  CHECK(bel_update(sat, std::vector<double>{1}, 1.0).v == sat.v);

  // sum O == REW: W is frozen.
  ClassicBelModel eq(1, 0.5, 0.5);
  eq.w = {1};
  CHECK(bel_update(eq, std::vector<double>{1}, 1.0).w == eq.w);

  CHECK_THROWS_AS(ClassicBelModel(1, 0.0, 0.5), Error);
  CHECK_THROWS_AS(ClassicBelModel(1, 0.5, 1.5), Error);
}

TEST_CASE("amygdala output never decreases for non-negative stimuli") {
  std::mt19937_64 rng(12);
  ClassicBelModel m(4, 0.3, 0.2);
  for (int step = 0; step < 200; ++step) {
    const auto s = oracle::random_vector(rng, 4, 0, 1);
    const double reward = oracle::random_vector(rng, 1, -2, 2)[0];
    const auto before = bel_forward(m, s).a;
    m = bel_update(m, s, reward);
    const auto after = bel_forward(m, s).a;
    CHECK(std::accumulate(after.begin(), after.end(), 0.0) >=
          std::accumulate(before.begin(), before.end(), 0.0));
  }
}

TEST_CASE("bel_train replays step by step") {
  std::mt19937_64 rng(9);
  std::vector<double> inputs = oracle::random_vector(rng, 12, -1, 1);
  std::vector<double> targets = oracle::random_vector(rng, 6, -1, 1);
  EmbeddedDataset d(2, 1, inputs, targets);

  ClassicBelModel start(2, 0.1, 0.05);
  CHECK(bel_train(start, d, 0) == start);

  const auto trained = bel_train(start, d, 3);
  std::vector<double> v(2, 0.0);
  std::vector<double> w(2, 0.0);
  for (int epoch = 0; epoch < 3; ++epoch) {
    for (std::size_t j = 0; j < 6; ++j) {
      const double s0 = inputs[2 * j];
      const double s1 = inputs[2 * j + 1];
      const double sa = v[0] * s0 + v[1] * s1;
      const double so = w[0] * s0 + w[1] * s1;
      const double da = std::max(0.0, targets[j] - sa);
      const double dw = so - targets[j];
      v[0] += 0.1 * s0 * da;
      v[1] += 0.1 * s1 * da;
      w[0] += 0.05 * s0 * dw;
      w[1] += 0.05 * s1 * dw;
    }
  }
  CHECK(trained.v == v);
  CHECK(trained.w == w);
}

TEST_CASE("single-stimulus task under both orbitofrontal signals") {
  const std::vector<double> s{1};
  ClassicBelModel sum_rule(1, 0.5, 0.5, OrbitofrontalSignal::OrbitofrontalSum);
  ClassicBelModel output_rule(1, 0.5, 0.5, OrbitofrontalSignal::ModelOutput);
  for (int epoch = 0; epoch < 200; ++epoch) {
    sum_rule = bel_update(sum_rule, s, 1.0);
    output_rule = bel_update(output_rule, s, 1.0);
  }
  // V converges to the reward either way.
  CHECK(sum_rule.v[0] == doctest::Approx(1.0));
  CHECK(output_rule.v[0] == doctest::Approx(1.0));
  // W = 1 is a repelling fixed point of the sum rule (W <- 1.5 W - 0.5), so
  // starting from 0 it runs away; the output rule settles at W = 0.
  CHECK(sum_rule.w[0] < -1e30);
  CHECK(std::abs(bel_predict(output_rule, s) - 1.0) < 1e-12);
}
