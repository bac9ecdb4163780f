#include "heursynth/eval/difficulty.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heursynth/common/error.hpp"

namespace heursynth {

double nearest_rank_percentile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorKind::EmptyList, "percentile of an empty sample");
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(values.size())));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

double difficulty_aircraft(const AircraftLandingInstance& in) {
  const auto P = static_cast<std::size_t>(in.num_planes());
  double width = 0.0;
  for (const Plane& p : in.planes) width += p.latest - p.earliest;
  double mean_width = P ? width / static_cast<double>(P) : 0.0;
  if (mean_width <= 0.0) throw Error(ErrorKind::DegenerateWindows, "mean landing window width is zero");
  std::vector<double> off;
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = 0; j < P; ++j) {
      if (i != j) off.push_back(in.separation[i][j]);
    }
  }
  double sep90 = off.empty() ? 0.0 : nearest_rank_percentile(off, 90.0);
  return (static_cast<double>(P) / in.num_runways) * (sep90 / mean_width);
}

namespace {

double peak_ratio(const std::vector<double>& load, const std::vector<double>& capacity) {
  double peak = 0.0;
  for (std::size_t d = 0; d < load.size(); ++d) {
    if (load[d] > 0.0) peak = std::max(peak, load[d] / capacity[d]);
  }
  return peak;
}

}  // namespace

double difficulty_pvrp(const PvrpInstance& in) {
  const auto D = static_cast<std::size_t>(in.period_length);
  std::vector<double> capacity(D);
  for (std::size_t d = 0; d < D; ++d) capacity[d] = in.vehicles_per_day[d] * in.vehicle_capacity;

  // A day only matters when some selection can place demand on it.
  for (std::size_t d = 0; d < D; ++d) {
    if (capacity[d] > 0.0) continue;
    for (const PvrpCustomer& c : in.customers) {
      if (c.demand <= 0.0) continue;
      for (const auto& s : c.schedules) {
        if (s[d] == 1) {
          throw Error(ErrorKind::ZeroCapacityDay, "day " + std::to_string(d + 1) + " has no capacity");
        }
      }
    }
  }

  double selections = 1.0;
  for (const PvrpCustomer& c : in.customers) selections *= static_cast<double>(c.schedules.size());

  if (selections <= kMaxExactPvrpSelections) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> choice(in.customers.size(), 0);
    while (true) {
      std::vector<double> load(D, 0.0);
      for (std::size_t i = 0; i < choice.size(); ++i) {
        const auto& s = in.customers[i].schedules[choice[i]];
        for (std::size_t d = 0; d < D; ++d) load[d] += s[d] * in.customers[i].demand;
      }
      best = std::min(best, peak_ratio(load, capacity));
      std::size_t i = 0;
      while (i < choice.size() && ++choice[i] == in.customers[i].schedules.size()) choice[i++] = 0;
      if (i == choice.size()) break;
    }
    return best;
  }

  std::vector<std::size_t> order(in.customers.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return in.customers[a].demand > in.customers[b].demand;
  });
  std::vector<double> load(D, 0.0);
  for (std::size_t i : order) {
    const PvrpCustomer& c = in.customers[i];
    std::size_t pick = 0;
    double pick_peak = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < c.schedules.size(); ++k) {
      std::vector<double> trial = load;
      for (std::size_t d = 0; d < D; ++d) trial[d] += c.schedules[k][d] * c.demand;
      double peak = peak_ratio(trial, capacity);
      if (peak < pick_peak) {
        pick_peak = peak;
        pick = k;
      }
    }
    for (std::size_t d = 0; d < D; ++d) load[d] += c.schedules[pick][d] * c.demand;
  }
  return peak_ratio(load, capacity);
}

}  // namespace heursynth
