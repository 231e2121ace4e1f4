#include "eaas/selection.hpp"

#include <cmath>

namespace eaas {

double distance(const Location& a, const Location& b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool is_temporally_composable(const EnergyRequest& request, const EnergyService& service) {
  return request.window.start >= service.window.start && request.window.end <= service.window.end;
}

bool is_within_range(const EnergyRequest& request, const EnergyService& service, const ModelConstants& constants) {
  return distance(request.location, service.location) <= constants.max_energy_distance;
}

bool is_affordable(const EnergyRequest& request, const EnergyService& service) {
  return request.requested_energy <= service.capacity;
}

bool passes_selection(const EnergyRequest& request, const EnergyService& service, const ModelConstants& constants) {
  return is_temporally_composable(request, service) && is_within_range(request, service, constants) &&
         is_affordable(request, service);
}

std::vector<ScoredRequest> select_nearby(const EnergyService& service, const std::vector<EnergyRequest>& requests,
                                         const ModelConstants& constants) {
  std::vector<ScoredRequest> nearby;
  for (const auto& request : requests) {
    if (!passes_selection(request, service, constants)) continue;
    nearby.push_back({request, reward_request(request, service, constants)});
  }
  return nearby;
}

}  // namespace eaas
