#include "eaas/incentive.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "eaas/errors.hpp"

namespace eaas {

double reward_battery_level(double battery_level, const ModelConstants& constants) {
  if (!(battery_level >= 0 && battery_level <= 100)) {
    throw DomainError("battery level " + std::to_string(battery_level) + " outside [0, 100]");
  }
  if (battery_level < constants.bl_low_threshold || battery_level > constants.bl_high_threshold) {
    return constants.bl_reward_extreme;
  }
  return constants.bl_reward_mid;
}

double reward_requested_energy(double requested, double capacity) {
  if (!(capacity > 0)) throw DomainError("provider capacity must be > 0");
  if (requested > capacity) {
    throw DomainError("reward undefined; request must be pre-filtered (requested " + std::to_string(requested) +
                      " > capacity " + std::to_string(capacity) + ")");
  }
  return requested / capacity;
}

double reward_stay_time(const TimeWindow& consumer_window, const TimeWindow& provider_window) {
  if (provider_window.duration() <= 0) throw DomainError("provider window has no duration");
  if (!provider_window.contains(consumer_window)) {
    throw DomainError("consumer window " + consumer_window.to_string() + " not inside provider window " +
                      provider_window.to_string());
  }
  const double consumer = consumer_window.duration();
  const double provider = provider_window.duration();
  return std::abs(consumer - provider) / provider;
}

int provision_period(Minutes start, const ModelConstants& constants) {
  const auto& periods = constants.tp_boundaries;
  const int last = static_cast<int>(periods.size()) - 1;
  if (start < periods.front().start) return 0;
  for (int i = 0; i <= last; ++i) {
    if (start >= periods[i].start && start < periods[i].end) return i;
  }
  return last;
}

double reward_time_of_provision(const TimeWindow& consumer_window, const ModelConstants& constants) {
  return constants.tp_rewards[provision_period(consumer_window.start, constants)];
}

double weighted_total(const RewardBreakdown& c, const ModelConstants& constants) {
  return constants.weight(Attribute::BatteryLevel) * c.reward_bl +
         constants.weight(Attribute::RequestedEnergy) * c.reward_re +
         constants.weight(Attribute::StayTime) * c.reward_st +
         constants.weight(Attribute::TimeOfProvision) * c.reward_tp;
}

RewardBreakdown reward_request(const EnergyRequest& request, const EnergyService& service,
                               const ModelConstants& constants) {
  RewardBreakdown b;
  b.reward_bl = reward_battery_level(request.battery_level, constants);
  b.reward_re = reward_requested_energy(request.requested_energy, service.capacity);
  b.reward_st = reward_stay_time(request.window, service.window);
  b.reward_tp = reward_time_of_provision(request.window, constants);
  b.total = weighted_total(b, constants);
  return b;
}

double provider_reward(std::span<const RewardBreakdown> breakdowns) {
  double sum = 0.0;
  for (const auto& b : breakdowns) sum += b.total;
  return sum;
}

}  // namespace eaas
