#pragma once

// Builders, random instances and independent oracles shared by the unit and
// acceptance suites. The oracles deliberately avoid the library's own
// composition code.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "eaas/composition.hpp"
#include "eaas/model.hpp"
#include "eaas/selection.hpp"

namespace eaas::testing {

inline Minutes hm(int h, int m) { return h * 60 + m; }

inline EnergyService make_service(double capacity = 100, TimeWindow window = {hm(9, 0), hm(17, 0)},
                                  Location location = {0, 0}, std::string id = "es-1") {
  return EnergyService{std::move(id), "p-1", capacity, location, window};
}

inline EnergyRequest make_request(std::string id, TimeWindow window, double requested_energy = 10,
                                  double battery_level = 50, Location location = {1, 0}) {
  return EnergyRequest{std::move(id), "c-" + id, battery_level, requested_energy, window, location};
}

/// Scored request with a hand-set reward total (components left zero).
inline ScoredRequest with_reward(EnergyRequest request, double total) {
  RewardBreakdown b;
  b.total = total;
  return ScoredRequest{std::move(request), b};
}

struct Instance {
  EnergyService service;
  std::vector<EnergyRequest> requests;
};

/// Small contended instance: every request sits inside the provider stay, and
/// most are within range. Energies are whole percents.
inline Instance random_instance(std::mt19937_64& rng, int max_requests) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

  const int duration = uni(10, 200);
  const int start = uni(hm(9, 0), hm(17, 0) - duration);
  Instance inst;
  inst.service = make_service(uni(50, 100), {start, start + duration}, {real(-2, 2), real(-2, 2)}, "es-r");

  const int n = uni(0, max_requests);
  for (int i = 0; i < n; ++i) {
    const int len = std::min(uni(5, 30), duration);
    const int s = uni(start, start + duration - len);
    char id[16];
    std::snprintf(id, sizeof id, "er-%03d", i);
    inst.requests.push_back(make_request(id, {s, s + len}, uni(1, 100), uni(1, 100), {real(-3, 3), real(-3, 3)}));
  }
  return inst;
}

/// Windows of the accepted subset never overlap (touching allowed).
inline bool pairwise_disjoint(const std::vector<const ScoredRequest*>& chosen) {
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    for (std::size_t j = i + 1; j < chosen.size(); ++j) {
      const auto& a = chosen[i]->request.window;
      const auto& b = chosen[j]->request.window;
      if (a.start < b.end && b.start < a.end) return false;
    }
  }
  return true;
}

/// Recursive include/exclude enumeration in input order with an all-pairs
/// overlap test. Returns the maximum achievable reward.
inline double oracle_best_reward(const EnergyService& service, const std::vector<ScoredRequest>& scored) {
  double best = 0.0;
  std::vector<const ScoredRequest*> chosen;
  auto recurse = [&](auto&& self, std::size_t i, double energy, double reward) -> void {
    if (i == scored.size()) {
      best = std::max(best, reward);
      return;
    }
    self(self, i + 1, energy, reward);
    const auto& s = scored[i];
    if (energy + s.request.requested_energy > service.capacity) return;
    chosen.push_back(&s);
    if (pairwise_disjoint(chosen)) self(self, i + 1, energy + s.request.requested_energy, reward + s.reward.total);
    chosen.pop_back();
  };
  recurse(recurse, 0, 0.0, 0.0);
  return best;
}

/// Weighted reward evaluated in exact integer ten-thousandths from the
/// published weights and component values given in ten-thousandths.
inline double spreadsheet_total(long bl_e4, long re_e4, long st_e4, long tp_e4) {
  const long sum = 27 * bl_e4 + 28 * re_e4 + 23 * st_e4 + 22 * tp_e4;  // weights in hundredths
  return static_cast<double>(sum) / 1'000'000.0;
}

}  // namespace eaas::testing
