#include <random>
#include <vector>

#include "doctest.h"
#include "eaas/errors.hpp"
#include "eaas/incentive.hpp"
#include "support.hpp"

using namespace eaas;
using eaas::testing::hm;
using eaas::testing::make_request;
using eaas::testing::make_service;

TEST_CASE("battery level reward uses strict thresholds") {
  const ModelConstants c;
  CHECK(reward_battery_level(10, c) == 1.0);
  CHECK(reward_battery_level(50, c) == 0.5);
  CHECK(reward_battery_level(20, c) == 0.5);
  CHECK(reward_battery_level(80, c) == 0.5);
  CHECK(reward_battery_level(80.5, c) == 1.0);
  CHECK(reward_battery_level(0, c) == 1.0);
  CHECK(reward_battery_level(100, c) == 1.0);
  CHECK_THROWS_AS(reward_battery_level(-0.1, c), DomainError);
  CHECK_THROWS_AS(reward_battery_level(100.1, c), DomainError);
}

TEST_CASE("requested energy reward is the share of capacity") {
  CHECK(reward_requested_energy(50, 100) == 0.5);
  CHECK(reward_requested_energy(100, 100) == 1.0);
  CHECK(reward_requested_energy(30, 120) == 0.25);
  CHECK_THROWS_AS(reward_requested_energy(101, 100), DomainError);
  CHECK_THROWS_AS(reward_requested_energy(1, 0), DomainError);
}

TEST_CASE("stay time reward") {
  const TimeWindow provider{hm(9, 0), hm(11, 0)};
  CHECK(reward_stay_time({hm(9, 30), hm(10, 0)}, provider) == 0.75);
  CHECK(reward_stay_time(provider, provider) == 0.0);
  CHECK(reward_stay_time({hm(10, 0), hm(10, 5)}, {hm(9, 0), hm(12, 20)}) == doctest::Approx(0.975).epsilon(1e-15));
  CHECK_THROWS_AS(reward_stay_time({hm(8, 50), hm(9, 20)}, provider), DomainError);
  CHECK_THROWS_AS(reward_stay_time({hm(10, 50), hm(11, 1)}, provider), DomainError);
}

TEST_CASE("time of provision keys on the start time with half-open periods") {
  const ModelConstants c;
  auto tp = [&](int h, int m) { return reward_time_of_provision({hm(h, m), hm(h, m) + 1}, c); };
  CHECK(tp(9, 30) == 0.18);
  CHECK(tp(13, 0) == 0.26);
  CHECK(tp(16, 59) == 0.21);
  CHECK(tp(11, 0) == 0.23);
  CHECK(tp(10, 59) == 0.18);
  CHECK(tp(15, 0) == 0.21);
  // Clamping outside 09:00-17:00.
  CHECK(tp(7, 0) == 0.18);
  CHECK(tp(17, 0) == 0.21);
  CHECK(tp(22, 0) == 0.21);
  // A request spanning a boundary takes the period it starts in.
  CHECK(reward_time_of_provision({hm(10, 50), hm(11, 20)}, c) == 0.18);

  for (Minutes m = 0; m + 1 < kMinutesPerDay; ++m) {
    const int p = provision_period(m, c);
    REQUIRE(p >= 0);
    REQUIRE(p <= 3);
  }
}

TEST_CASE("request reward: worked example") {
  const ModelConstants c;
  const auto service = make_service(100, {hm(9, 0), hm(11, 0)});
  const auto request = make_request("a", {hm(9, 0), hm(9, 30)}, 50, 10);
  const auto b = reward_request(request, service, c);
  CHECK(b.reward_bl == 1.0);
  CHECK(b.reward_re == 0.5);
  CHECK(b.reward_st == 0.75);
  CHECK(b.reward_tp == 0.18);
  // 0.27*1 + 0.28*0.5 + 0.23*0.75 + 0.22*0.18 in exact ten-thousandths.
  const double oracle = eaas::testing::spreadsheet_total(10000, 5000, 7500, 1800);
  CHECK(oracle == doctest::Approx(0.6221).epsilon(1e-15));
  CHECK(std::abs(b.total - oracle) <= 1e-12);
  CHECK(std::abs(b.total - 0.6221) <= 1e-9);
}

TEST_CASE("weighted total is linear in the components") {
  const ModelConstants c;
  CHECK(weighted_total(RewardBreakdown{}, c) == 0.0);
  const RewardBreakdown maxed{1.0, 1.0, 1.0, 0.26, 0.0};
  CHECK(weighted_total(maxed, c) == doctest::Approx(0.8372).epsilon(1e-14));
  CHECK(std::abs(weighted_total(maxed, c) - eaas::testing::spreadsheet_total(10000, 10000, 10000, 2600)) <= 1e-12);
}

TEST_CASE("provider reward sums request totals") {
  CHECK(provider_reward({}) == 0.0);
  std::vector<RewardBreakdown> one{{0, 0, 0, 0, 0.6221}};
  CHECK(provider_reward(one) == 0.6221);
  std::vector<RewardBreakdown> two{{0, 0, 0, 0, 0.6221}, {0, 0, 0, 0, 0.40}};
  CHECK(provider_reward(two) == doctest::Approx(1.0221).epsilon(1e-15));
}

TEST_CASE("reward properties over random feasible requests") {
  const ModelConstants c;
  std::mt19937_64 rng(20240601);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  for (int iter = 0; iter < 2000; ++iter) {
    const int pdur = uni(10, 200);
    const int pstart = uni(hm(9, 0), hm(17, 0) - pdur);
    const auto service = make_service(uni(50, 100), {pstart, pstart + pdur});
    const int cdur = uni(1, std::min(30, pdur));
    const int cstart = uni(pstart, pstart + pdur - cdur);
    const auto request =
        make_request("r", {cstart, cstart + cdur}, uni(1, static_cast<int>(service.capacity)), uni(0, 100));

    const auto b = reward_request(request, service, c);
    REQUIRE(b.total > 0.0);
    REQUIRE(b.total <= 0.8372 + 1e-12);
    REQUIRE((b.reward_bl == c.bl_reward_mid || b.reward_bl == c.bl_reward_extreme));
    REQUIRE(b.reward_re > 0.0);
    REQUIRE(b.reward_re <= 1.0);
    REQUIRE(b.reward_st >= 0.0);
    REQUIRE(b.reward_st < 1.0);
    REQUIRE(std::find(c.tp_rewards.begin(), c.tp_rewards.end(), b.reward_tp) != c.tp_rewards.end());
    REQUIRE(std::abs(weighted_total(b, c) - b.total) <= 1e-12);
    REQUIRE(reward_request(request, service, c) == b);

    // More energy, all else fixed, earns strictly more.
    if (request.requested_energy < service.capacity) {
      auto bigger = request;
      bigger.requested_energy += 1;
      REQUIRE(reward_request(bigger, service, c).total > b.total);
    }
    // A shorter stay with the same start earns strictly more.
    if (cdur > 1) {
      auto shorter = request;
      shorter.window.end -= 1;
      REQUIRE(reward_request(shorter, service, c).total > b.total);
    }
  }
}
