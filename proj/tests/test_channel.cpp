#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <string>

#include "antijam/channel.hpp"
#include "antijam/rng.hpp"

using namespace antijam;

namespace {

ChannelParams urban_params() {
  ChannelParams p;
  p.alpha = 2.3;
  p.beta_los = 1.0;
  p.beta_nlos = 0.2;
  p.phi = 9.61;
  p.psi = 0.16;
  p.sigma2 = 1e-9;
  return p;
}

const std::vector<double> kLevels{0.0, 5.0, 10.0, 15.0};

}  // namespace

TEST_CASE("run-seed derivation is injective and seeds distinct streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t run = 0; run < 10000; ++run) {
    seen.insert(derive_run_seed(42, run));
  }
  CHECK(seen.size() == 10000);
  CHECK(derive_run_seed(1, 5) != derive_run_seed(2, 5));

  Rng a(derive_run_seed(42, 0));
  Rng b(derive_run_seed(42, 0));
  Rng c(derive_run_seed(42, 1));
  bool diverged = false;
  for (int i = 0; i < 16; ++i) {
    const std::uint64_t va = a.next_u64();
    CHECK(va == b.next_u64());
    if (va != c.next_u64()) diverged = true;
  }
  CHECK(diverged);
}

TEST_CASE("rng primitives respect their ranges") {
  Rng rng(7);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 0.005);

  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.below(7);
    REQUIRE(v < 7);
    counts[v] += 1;
  }
  for (int c : counts) CHECK(std::abs(c - 10000) < 500);

  CHECK(rng.range(2.0, 2.0) == 2.0);
  const double r = rng.range(-3.0, 5.0);
  CHECK(r >= -3.0);
  CHECK(r < 5.0);
}

TEST_CASE("path loss follows beta * d^-alpha") {
  const ChannelParams p = urban_params();
  CHECK(path_loss(1.0, true, p) == doctest::Approx(1.0));
  CHECK(path_loss(2.0, true, p) == doctest::Approx(std::pow(2.0, -2.3)));
  CHECK(path_loss(10.0, false, p) ==
        doctest::Approx(0.2 * std::pow(10.0, -2.3)));
  CHECK(path_loss(10.0, true, p) > path_loss(20.0, true, p));
  CHECK(path_loss(10.0, true, p) > path_loss(10.0, false, p));
  CHECK_THROWS_AS(path_loss(0.0, true, p), std::domain_error);
  CHECK_THROWS_AS(path_loss(-1.0, false, p), std::domain_error);
}

TEST_CASE("LoS probability is a rising sigmoid pinned at theta = phi") {
  const ChannelParams p = urban_params();
  // At theta == phi the exponent vanishes.
  CHECK(p_los(9.61, p) == doctest::Approx(1.0 / (1.0 + 9.61)).epsilon(1e-12));
  double prev = -1.0;
  for (double theta = 0.0; theta <= 90.0; theta += 5.0) {
    const double v = p_los(theta, p);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(p_los(90.0, p) > 0.999);
  CHECK_THROWS_AS(p_los(-0.1, p), std::domain_error);
  CHECK_THROWS_AS(p_los(90.1, p), std::domain_error);
}

TEST_CASE("sinr is signal over jamming plus noise") {
  CHECK(sinr(2.0, 3.0, 1.0) == doctest::Approx(0.5));
  CHECK(sinr(1.0, 0.0, 1e-9) == doctest::Approx(1e9));
  CHECK_THROWS_AS(sinr(-1.0, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(sinr(1.0, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(sinr(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("validate_channel rejects non-positive fields and only warns on odd betas") {
  ChannelParams p = urban_params();
  CHECK(validate_channel(p).empty());

  p.beta_nlos = 2.0;  // stronger than LoS: suspicious but legal
  CHECK_FALSE(validate_channel(p).empty());

  auto zeroed = [](auto setter) {
    ChannelParams q = urban_params();
    setter(q);
    return q;
  };
  CHECK_THROWS_AS(validate_channel(zeroed([](auto& q) { q.alpha = 0.0; })),
                  std::domain_error);
  CHECK_THROWS_AS(validate_channel(zeroed([](auto& q) { q.beta_los = -1.0; })),
                  std::domain_error);
  CHECK_THROWS_AS(validate_channel(zeroed([](auto& q) { q.beta_nlos = 0.0; })),
                  std::domain_error);
  CHECK_THROWS_AS(validate_channel(zeroed([](auto& q) { q.phi = 0.0; })),
                  std::domain_error);
  CHECK_THROWS_AS(validate_channel(zeroed([](auto& q) { q.psi = 0.0; })),
                  std::domain_error);
  CHECK_THROWS_AS(validate_channel(zeroed([](auto& q) { q.sigma2 = 0.0; })),
                  std::domain_error);
}

TEST_CASE("symmetric target mean yields the uniform tilt") {
  // Conditional target 7 / 0.7 = 10 is the midpoint of {5, 10, 15}, so the
  // three active weights must come out equal.
  const auto w = weights_for_mean(kLevels, 0.3, 7.0);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == doctest::Approx(0.3).epsilon(1e-12));
  for (int k = 1; k <= 3; ++k) {
    CHECK(w[k] == doctest::Approx(0.7 / 3.0).epsilon(1e-9));
  }
}

TEST_CASE("weights_for_mean hits the target and keeps a proper distribution") {
  for (double target : {4.0, 5.5, 7.0, 9.0, 10.0}) {
    const auto w = weights_for_mean(kLevels, 0.3, target);
    double sum = 0.0, mean = 0.0;
    for (size_t k = 0; k < w.size(); ++k) {
      CHECK(w[k] >= 0.0);
      sum += w[k];
      mean += w[k] * kLevels[k];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean == doctest::Approx(target).epsilon(1e-9));
  }
  // Low targets tilt the mass down, high targets tilt it up.
  const auto low = weights_for_mean(kLevels, 0.3, 4.0);
  CHECK(low[1] > low[2]);
  CHECK(low[2] > low[3]);
  const auto high = weights_for_mean(kLevels, 0.3, 10.0);
  CHECK(high[1] < high[2]);
  CHECK(high[2] < high[3]);
}

TEST_CASE("infeasible target means report the feasible interval") {
  // With p_off = 0.3 the reachable band is (0.7*5, 0.7*15) = (3.5, 10.5).
  CHECK_THROWS_AS(weights_for_mean(kLevels, 0.3, 3.5), std::range_error);
  CHECK_THROWS_AS(weights_for_mean(kLevels, 0.3, 10.5), std::range_error);
  CHECK_THROWS_AS(weights_for_mean(kLevels, 0.3, 0.0), std::range_error);
  try {
    weights_for_mean(kLevels, 0.3, 12.0);
    FAIL("expected range_error");
  } catch (const std::range_error& err) {
    const std::string msg = err.what();
    CHECK(msg.find("3.5") != std::string::npos);
    CHECK(msg.find("10.5") != std::string::npos);
  }
  CHECK_THROWS_AS(weights_for_mean(kLevels, 1.0, 7.0), std::domain_error);
  CHECK_THROWS_AS(weights_for_mean(kLevels, -0.1, 7.0), std::domain_error);
}

TEST_CASE("jammer process validates its construction and exposes the mean") {
  const JammerProcess proc(kLevels, {0.3, 0.7 / 3, 0.7 / 3, 0.7 / 3});
  CHECK(proc.num_levels() == 4);
  CHECK(proc.p_avg() == doctest::Approx(7.0).epsilon(1e-9));

  CHECK_THROWS_AS(JammerProcess(kLevels, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(JammerProcess(kLevels, {0.5, 0.6, -0.1, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(JammerProcess(kLevels, {0.5, 0.5, 0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(JammerProcess({5.0, 10.0}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(JammerProcess({0.0, 10.0, 10.0}, {0.4, 0.3, 0.3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(JammerProcess({0.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("sampled levels match the process weights") {
  const JammerProcess proc(kLevels, {0.3, 0.1, 0.2, 0.4});
  Rng rng(99);
  const int n = 200000;
  std::vector<int> counts(4, 0);
  for (int i = 0; i < n; ++i) {
    const int lvl = sample_level(proc, rng);
    REQUIRE(lvl >= 0);
    REQUIRE(lvl < 4);
    counts[lvl] += 1;
  }
  for (int k = 0; k < 4; ++k) {
    const double p = proc.weights()[k];
    const double sigma = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(static_cast<double>(counts[k]) / n - p) < 4.0 * sigma);
  }
}

TEST_CASE("power quantization picks the nearest level, lower index on ties") {
  CHECK(quantize_power(0.0, kLevels) == 0);
  CHECK(quantize_power(2.49, kLevels) == 0);
  CHECK(quantize_power(2.5, kLevels) == 0);  // tie with level 5
  CHECK(quantize_power(2.51, kLevels) == 1);
  CHECK(quantize_power(7.49, kLevels) == 1);
  CHECK(quantize_power(7.51, kLevels) == 2);
  CHECK(quantize_power(100.0, kLevels) == 3);
}

TEST_CASE("geometry scenarios collapse onto quantized level weights") {
  const ChannelParams p = urban_params();
  // Overhead at 1 m: gain ~ 1, expected power ~ 5 W -> level 1.
  // Far and low: expected power ~ 1e-6 W -> level 0.
  const std::vector<JammerGeometry> geos{
      {1.0, 90.0, 0.25},
      {1000.0, 1.0, 0.75},
  };
  const JammerProcess proc = scenario_to_process(geos, 5.0, p, kLevels);
  CHECK(proc.weights()[0] == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(proc.weights()[1] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(proc.weights()[2] == 0.0);
  CHECK(proc.weights()[3] == 0.0);
  CHECK(proc.p_avg() == doctest::Approx(1.25).epsilon(1e-9));

  CHECK_THROWS_AS(scenario_to_process({}, 5.0, p, kLevels), std::domain_error);
  CHECK_THROWS_AS(scenario_to_process(geos, -5.0, p, kLevels), std::domain_error);
  const std::vector<JammerGeometry> bad{{1.0, 90.0, 0.5}, {2.0, 45.0, 0.6}};
  CHECK_THROWS_AS(scenario_to_process(bad, 5.0, p, kLevels), std::domain_error);
}
