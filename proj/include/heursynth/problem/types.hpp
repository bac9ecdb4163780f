#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace heursynth {

enum class DomainId {
  AircraftLanding,
  PeriodicVehicleRouting,
  ContainerLoading,
  ContainerLoadingWeight,
  Rcsp,
  CrewScheduling,
  EuclideanSteiner,
};

inline constexpr std::array<DomainId, 7> kAllDomains = {
    DomainId::AircraftLanding, DomainId::PeriodicVehicleRouting, DomainId::ContainerLoading,
    DomainId::ContainerLoadingWeight, DomainId::Rcsp, DomainId::CrewScheduling,
    DomainId::EuclideanSteiner,
};

std::string_view domain_name(DomainId domain);
std::optional<DomainId> parse_domain(std::string_view name);

/// True for the domains whose objective is maximized (utilization, Steiner gain).
bool is_maximization(DomainId domain);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// ---------------------------------------------------------------------------
// Instances

struct Plane {
  double earliest = 0.0;
  double target = 0.0;
  double latest = 0.0;
  double penalty_early = 0.0;
  double penalty_late = 0.0;
  friend bool operator==(const Plane&, const Plane&) = default;
};

struct AircraftLandingInstance {
  int num_runways = 1;
  std::vector<Plane> planes;
  /// separation[i][j]: minimum gap when plane i lands no later than plane j on one runway.
  std::vector<std::vector<double>> separation;

  int num_planes() const { return static_cast<int>(planes.size()); }
  friend bool operator==(const AircraftLandingInstance&, const AircraftLandingInstance&) = default;
};

struct PvrpCustomer {
  Point2 coords;
  double demand = 0.0;
  std::vector<std::vector<int>> schedules;
  friend bool operator==(const PvrpCustomer&, const PvrpCustomer&) = default;
};

/// Customers are addressed by 1-based ids; id 0 is the depot.
struct PvrpInstance {
  Point2 depot;
  std::vector<PvrpCustomer> customers;
  int period_length = 1;
  std::vector<int> vehicles_per_day;
  double vehicle_capacity = 1.0;
  friend bool operator==(const PvrpInstance&, const PvrpInstance&) = default;
};

struct BoxType {
  std::array<std::int64_t, 3> dims{};
  std::array<int, 3> flags{};
  int count = 1;
  /// Present only for the weight-restricted variant.
  std::optional<double> weight;
  /// lb1, lb2, lb3: load-bearing limit when dimension 1, 2, 3 is vertical.
  std::optional<std::array<double, 3>> load_bearing;
  friend bool operator==(const BoxType&, const BoxType&) = default;
};

struct ContainerInstance {
  std::array<std::int64_t, 3> container{};  // length, width, height
  std::vector<BoxType> box_types;

  std::int64_t volume() const { return container[0] * container[1] * container[2]; }
  friend bool operator==(const ContainerInstance&, const ContainerInstance&) = default;
};

struct RcspArc {
  int end_vertex = 0;
  double cost = 0.0;
  std::vector<double> arc_resources;
  friend bool operator==(const RcspArc&, const RcspArc&) = default;
};

/// Vertices are 1-based; graph[v - 1] lists the arcs leaving v.
struct RcspInstance {
  int n = 0;
  int K = 0;
  std::vector<double> lower_bounds;
  std::vector<double> upper_bounds;
  std::vector<std::vector<double>> vertex_resources;
  std::vector<std::vector<RcspArc>> graph;

  int arc_count() const;
  const RcspArc* find_arc(int from, int to) const;
  friend bool operator==(const RcspInstance&, const RcspInstance&) = default;
};

struct CrewTask {
  double start_time = 0.0;
  double finish_time = 0.0;
  friend bool operator==(const CrewTask&, const CrewTask&) = default;
};

/// Tasks are 1-based: tasks[i - 1] is task i.
struct CrewInstance {
  int K = 1;
  double time_limit = 0.0;
  std::vector<CrewTask> tasks;
  std::map<std::pair<int, int>, double> arcs;

  int N() const { return static_cast<int>(tasks.size()); }
  friend bool operator==(const CrewInstance&, const CrewInstance&) = default;
};

struct SteinerInstance {
  std::vector<Point2> points;
  friend bool operator==(const SteinerInstance&, const SteinerInstance&) = default;
};

/// Axis-aligned (x, y, z) extents for the 7-integer placement format: dims[v]
/// is vertical, the other two keep index order unless hswap swaps them.
std::array<std::int64_t, 3> oriented_dims(const BoxType& box, std::int64_t v, bool hswap);

/// Extents for the weight-restricted format: orientation o in {1,2,3} puts
/// dimension o-1 vertical; the horizontal pair keeps index order.
std::array<std::int64_t, 3> oriented_dims_weight(const BoxType& box, std::int64_t orientation);

using InstancePayload = std::variant<AircraftLandingInstance, PvrpInstance, ContainerInstance,
                                     RcspInstance, CrewInstance, SteinerInstance>;

struct ProblemInstance {
  std::string instance_id;
  DomainId domain = DomainId::AircraftLanding;
  InstancePayload payload;
  std::optional<double> reference_objective;

  template <class T>
  const T& as() const {
    return std::get<T>(payload);
  }
  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

// ---------------------------------------------------------------------------
// Solutions

struct Landing {
  double landing_time = 0.0;
  double runway = 0.0;
  friend bool operator==(const Landing&, const Landing&) = default;
};

struct AircraftSolution {
  std::map<int, Landing> schedule;  // plane id (1-based) -> landing
  friend bool operator==(const AircraftSolution&, const AircraftSolution&) = default;
};

struct PvrpSolution {
  std::map<int, std::vector<int>> selected_schedules;      // customer id -> schedule
  std::map<int, std::vector<std::vector<int>>> tours;      // day (1-based) -> tours
  friend bool operator==(const PvrpSolution&, const PvrpSolution&) = default;
};

/// box_type, container_id, x, y, z, v, hswap; box_type and container_id are 0-based.
struct ContainerPlacement {
  std::int64_t box_type = 0;
  std::int64_t container_id = 0;
  std::int64_t x = 0, y = 0, z = 0;
  std::int64_t v = 0;
  std::int64_t hswap = 0;
  friend bool operator==(const ContainerPlacement&, const ContainerPlacement&) = default;
};

struct ContainerSolution {
  std::vector<ContainerPlacement> placements;
  friend bool operator==(const ContainerSolution&, const ContainerSolution&) = default;
};

/// box_type is 1-based, orientation in {1, 2, 3} names the vertical dimension.
struct WeightPlacement {
  std::int64_t box_type = 1;
  std::int64_t orientation = 1;
  std::int64_t x = 0, y = 0, z = 0;
  friend bool operator==(const WeightPlacement&, const WeightPlacement&) = default;
};

struct ContainerWeightSolution {
  std::vector<WeightPlacement> placements;
  friend bool operator==(const ContainerWeightSolution&, const ContainerWeightSolution&) = default;
};

struct RcspSolution {
  std::vector<int> path;
  friend bool operator==(const RcspSolution&, const RcspSolution&) = default;
};

struct CrewSolution {
  std::vector<std::vector<int>> crews;
  friend bool operator==(const CrewSolution&, const CrewSolution&) = default;
};

struct SteinerSolution {
  std::vector<Point2> steiner_points;
  friend bool operator==(const SteinerSolution&, const SteinerSolution&) = default;
};

using SolutionPayload =
    std::variant<AircraftSolution, PvrpSolution, ContainerSolution, ContainerWeightSolution,
                 RcspSolution, CrewSolution, SteinerSolution>;

struct CandidateSolution {
  DomainId domain = DomainId::AircraftLanding;
  SolutionPayload payload;
  friend bool operator==(const CandidateSolution&, const CandidateSolution&) = default;
};

}  // namespace heursynth
