#include "heursynth/problem/bounds.hpp"

#include <cmath>
#include <limits>

namespace heursynth {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) {
  return a > kSaturated - b ? kSaturated : a + b;
}

// C(n + k - 1, k): multisets of size k drawn from n options.
std::uint64_t multisets(std::uint64_t n, int k) {
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    result = mul_sat(result, n + static_cast<std::uint64_t>(i) - 1);
    if (result == kSaturated) return kSaturated;
    result /= static_cast<std::uint64_t>(i);
  }
  return result;
}

bool integral(double x) { return std::floor(x) == x; }

std::uint64_t placement_options(const ContainerInstance& c, const BoxType& box, bool weighted) {
  std::uint64_t options = 1;  // left unplaced
  auto add_shape = [&](const std::array<std::int64_t, 3>& d) {
    std::uint64_t inside = 1;
    for (std::size_t k = 0; k < 3; ++k) {
      std::int64_t free = c.container[k] - d[k] + 1;
      inside = free > 0 ? mul_sat(inside, static_cast<std::uint64_t>(free)) : 0;
    }
    options = add_sat(options, add_sat(inside, 1));  // plus one out-of-bounds probe
  };
  if (weighted) {
    for (std::int64_t o = 1; o <= 3; ++o) add_shape(oriented_dims_weight(box, o));
  } else {
    for (std::int64_t v = 0; v < 3; ++v) {
      for (int swap = 0; swap < 2; ++swap) add_shape(oriented_dims(box, v, swap != 0));
    }
  }
  return options;
}

std::uint64_t pvrp_space(const PvrpInstance& p) {
  std::uint64_t total = 0;
  std::vector<std::size_t> choice(p.customers.size(), 0);
  while (true) {
    std::uint64_t product = 1;
    for (int d = 0; d < p.period_length; ++d) {
      int visited = 0;
      for (std::size_t i = 0; i < p.customers.size(); ++i) {
        visited += p.customers[i].schedules[choice[i]][static_cast<std::size_t>(d)];
      }
      product = mul_sat(product, ordered_list_partitions(visited));
    }
    total = add_sat(total, product);
    if (total == kSaturated) return total;
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == p.customers[i].schedules.size()) choice[i++] = 0;
    if (i == choice.size()) break;
  }
  return total;
}

}  // namespace

std::uint64_t ordered_list_partitions(int k) {
  // a(k) = (2k - 1) a(k-1) - (k-1)(k-2) a(k-2)
  if (k <= 1) return 1;
  std::uint64_t prev2 = 1, prev1 = 1;
  for (int i = 2; i <= k; ++i) {
    auto ui = static_cast<std::uint64_t>(i);
    std::uint64_t plus = mul_sat(2 * ui - 1, prev1);
    std::uint64_t minus = mul_sat((ui - 1) * (ui - 2), prev2);
    if (plus == kSaturated) return kSaturated;
    std::uint64_t next = plus - minus;
    prev2 = prev1;
    prev1 = next;
  }
  return prev1;
}

std::uint64_t oracle_space_size(const ProblemInstance& instance) {
  return std::visit(
      [&](const auto& p) -> std::uint64_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, AircraftLandingInstance>) {
          std::uint64_t total = 1;
          for (const Plane& plane : p.planes) {
            double slots = std::floor(plane.latest) - std::ceil(plane.earliest) + 1;
            if (slots < 1) return 0;
            if (slots > 1e9) return kSaturated;
            total = mul_sat(total, mul_sat(static_cast<std::uint64_t>(slots),
                                           static_cast<std::uint64_t>(p.num_runways)));
          }
          return total;
        } else if constexpr (std::is_same_v<T, PvrpInstance>) {
          return pvrp_space(p);
        } else if constexpr (std::is_same_v<T, ContainerInstance>) {
          bool weighted = instance.domain == DomainId::ContainerLoadingWeight;
          std::uint64_t total = 1;
          for (const BoxType& box : p.box_types) {
            total = mul_sat(total, multisets(placement_options(p, box, weighted), box.count));
          }
          return total;
        } else if constexpr (std::is_same_v<T, RcspInstance>) {
          if (p.n >= 63) return kSaturated;
          return (std::uint64_t{1} << p.n) - 1;
        } else if constexpr (std::is_same_v<T, CrewInstance>) {
          return ordered_list_partitions(p.N());
        } else if constexpr (std::is_same_v<T, SteinerInstance>) {
          auto t = static_cast<std::uint64_t>(p.points.size());
          std::uint64_t triples = t >= 3 ? t * (t - 1) * (t - 2) / 6 : 0;
          return 2 + kSteinerGrid * kSteinerGrid + triples;
        }
      },
      instance.payload);
}

bool within_small_bounds(const ProblemInstance& instance) {
  namespace sb = small_bounds;
  bool shape_ok = std::visit(
      [&](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, AircraftLandingInstance>) {
          if (p.num_planes() > sb::kMaxPlanes || p.num_runways > sb::kMaxRunways) return false;
          for (const Plane& plane : p.planes) {
            if (!integral(plane.earliest) || !integral(plane.latest) || !integral(plane.target)) {
              return false;
            }
          }
          for (const auto& row : p.separation) {
            for (double s : row) {
              if (!integral(s)) return false;
            }
          }
          return true;
        } else if constexpr (std::is_same_v<T, PvrpInstance>) {
          return static_cast<int>(p.customers.size()) <= sb::kMaxCustomers &&
                 p.period_length <= sb::kMaxPeriod;
        } else if constexpr (std::is_same_v<T, ContainerInstance>) {
          if (static_cast<int>(p.box_types.size()) > sb::kMaxBoxTypes) return false;
          int boxes = 0;
          for (const BoxType& b : p.box_types) boxes += b.count;
          for (auto side : p.container) {
            if (side > sb::kMaxContainerSide) return false;
          }
          return boxes <= sb::kMaxBoxes;
        } else if constexpr (std::is_same_v<T, RcspInstance>) {
          return p.n <= sb::kMaxVertices && p.K <= sb::kMaxResources;
        } else if constexpr (std::is_same_v<T, CrewInstance>) {
          return p.N() <= sb::kMaxTasks;
        } else if constexpr (std::is_same_v<T, SteinerInstance>) {
          return static_cast<int>(p.points.size()) <= sb::kMaxTerminals;
        }
      },
      instance.payload);
  return shape_ok && oracle_space_size(instance) <= sb::kMaxOracleCandidates;
}

}  // namespace heursynth
