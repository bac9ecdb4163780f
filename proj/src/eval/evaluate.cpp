#include "heursynth/eval/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "heursynth/problem/geometry.hpp"
#include "heursynth/problem/serialize.hpp"

namespace heursynth {
namespace {

using I64 = std::int64_t;

RawOutcome fail(std::string constraint, std::vector<std::string> entities, std::string detail = {}) {
  return RawOutcome::fail(Violation{std::move(constraint), std::move(entities), std::move(detail)});
}

std::string num(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

std::string plane(int id) { return "plane " + std::to_string(id); }
std::string customer(int id) { return "customer " + std::to_string(id); }
std::string day(int d) { return "day " + std::to_string(d); }
std::string placement(std::size_t i) { return "placement[" + std::to_string(i) + "]"; }
std::string task(int id) { return "task " + std::to_string(id); }
std::string crew(std::size_t i) { return "crew[" + std::to_string(i) + "]"; }

struct Cuboid {
  std::array<I64, 3> lo;
  std::array<I64, 3> size;
  I64 hi(std::size_t k) const { return lo[k] + size[k]; }
};

bool interiors_intersect(const Cuboid& a, const Cuboid& b) {
  for (std::size_t k = 0; k < 3; ++k) {
    if (!(a.lo[k] < b.hi(k) && b.lo[k] < a.hi(k))) return false;
  }
  return true;
}

bool inside(const Cuboid& c, const std::array<I64, 3>& container) {
  for (std::size_t k = 0; k < 3; ++k) {
    if (c.lo[k] < 0 || c.hi(k) > container[k]) return false;
  }
  return true;
}

std::optional<RawOutcome> first_overlap(const std::vector<Cuboid>& boxes) {
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      if (interiors_intersect(boxes[i], boxes[j])) return fail("overlap", {placement(i), placement(j)});
    }
  }
  return std::nullopt;
}

}  // namespace

std::string Violation::describe() const {
  std::string out = constraint;
  if (!entities.empty()) {
    out += " (";
    for (std::size_t i = 0; i < entities.size(); ++i) out += (i ? ", " : "") + entities[i];
    out += ")";
  }
  if (!detail.empty()) out += ": " + detail;
  return out;
}

RawOutcome evaluate_aircraft(const AircraftLandingInstance& in, const AircraftSolution& sol) {
  const int P = in.num_planes();
  for (const auto& [id, landing] : sol.schedule) {
    if (id < 1 || id > P) return fail("malformed", {plane(id)}, "unknown plane id");
  }
  for (int id = 1; id <= P; ++id) {
    if (!sol.schedule.count(id)) return fail("malformed", {plane(id)}, "no schedule entry");
  }
  for (int id = 1; id <= P; ++id) {
    const Plane& p = in.planes[static_cast<std::size_t>(id - 1)];
    const Landing& l = sol.schedule.at(id);
    if (l.landing_time < p.earliest || l.landing_time > p.latest) {
      return fail("time-window", {plane(id)},
                  num(l.landing_time) + " outside [" + num(p.earliest) + ", " + num(p.latest) + "]");
    }
    if (std::floor(l.runway) != l.runway || l.runway < 1 || l.runway > in.num_runways) {
      return fail("runway", {plane(id)}, "runway " + num(l.runway));
    }
  }
  for (int i = 1; i <= P; ++i) {
    for (int j = i + 1; j <= P; ++j) {
      const Landing& a = sol.schedule.at(i);
      const Landing& b = sol.schedule.at(j);
      if (a.runway != b.runway) continue;
      double gap = std::abs(b.landing_time - a.landing_time);
      auto si = static_cast<std::size_t>(i - 1), sj = static_cast<std::size_t>(j - 1);
      // i no later than j requires sep[i][j]; j no later than i requires sep[j][i].
      if (a.landing_time <= b.landing_time && gap < in.separation[si][sj]) {
        return fail("separation", {plane(i), plane(j)},
                    "gap " + num(gap) + " < " + num(in.separation[si][sj]));
      }
      if (b.landing_time <= a.landing_time && gap < in.separation[sj][si]) {
        return fail("separation", {plane(j), plane(i)},
                    "gap " + num(gap) + " < " + num(in.separation[sj][si]));
      }
    }
  }
  double total = 0.0;
  for (int id = 1; id <= P; ++id) {
    const Plane& p = in.planes[static_cast<std::size_t>(id - 1)];
    double t = sol.schedule.at(id).landing_time;
    total += p.penalty_early * std::max(0.0, p.target - t) + p.penalty_late * std::max(0.0, t - p.target);
  }
  return RawOutcome::ok(total);
}

RawOutcome evaluate_pvrp(const PvrpInstance& in, const PvrpSolution& sol) {
  const int N = static_cast<int>(in.customers.size());
  const int D = in.period_length;
  for (const auto& [id, s] : sol.selected_schedules) {
    if (id < 1 || id > N) return fail("malformed", {customer(id)}, "unknown customer in selected_schedules");
  }
  for (int id = 1; id <= N; ++id) {
    if (!sol.selected_schedules.count(id)) return fail("malformed", {customer(id)}, "no selected schedule");
  }
  for (const auto& [d, tours] : sol.tours) {
    if (d < 1 || d > D) return fail("malformed", {day(d)}, "day outside 1..period_length");
  }

  for (int id = 1; id <= N; ++id) {
    const auto& chosen = sol.selected_schedules.at(id);
    const auto& options = in.customers[static_cast<std::size_t>(id - 1)].schedules;
    if (static_cast<int>(chosen.size()) != D ||
        std::find(options.begin(), options.end(), chosen) == options.end()) {
      return fail("schedule", {customer(id)}, "not one of the candidate schedules");
    }
  }
  for (const auto& [d, tours] : sol.tours) {
    for (std::size_t t = 0; t < tours.size(); ++t) {
      const auto& tour = tours[t];
      std::string who = day(d) + " tour " + std::to_string(t);
      for (int v : tour) {
        if (v < 0 || v > N) return fail("customer-id", {who}, "vertex " + std::to_string(v));
      }
      if (tour.size() < 2 || tour.front() != 0 || tour.back() != 0) {
        return fail("depot", {who}, "tour must start and end at depot 0");
      }
      for (std::size_t k = 1; k + 1 < tour.size(); ++k) {
        if (tour[k] == 0) return fail("depot", {who}, "depot visited mid-tour");
      }
    }
  }
  for (const auto& [d, tours] : sol.tours) {
    for (std::size_t t = 0; t < tours.size(); ++t) {
      std::set<int> seen;
      for (std::size_t k = 1; k + 1 < tours[t].size(); ++k) {
        if (!seen.insert(tours[t][k]).second) {
          return fail("repeat", {day(d) + " tour " + std::to_string(t), customer(tours[t][k])});
        }
      }
    }
  }
  for (int d = 1; d <= D; ++d) {
    std::map<int, int> visits;
    if (auto it = sol.tours.find(d); it != sol.tours.end()) {
      for (const auto& tour : it->second) {
        for (std::size_t k = 1; k + 1 < tour.size(); ++k) ++visits[tour[k]];
      }
    }
    for (int id = 1; id <= N; ++id) {
      int required = sol.selected_schedules.at(id)[static_cast<std::size_t>(d - 1)];
      int got = visits.count(id) ? visits[id] : 0;
      if (got != required) {
        return fail("coverage", {day(d), customer(id)},
                    "visited " + std::to_string(got) + " times, required " + std::to_string(required));
      }
    }
  }
  for (const auto& [d, tours] : sol.tours) {
    for (std::size_t t = 0; t < tours.size(); ++t) {
      double load = 0.0;
      for (std::size_t k = 1; k + 1 < tours[t].size(); ++k) {
        load += in.customers[static_cast<std::size_t>(tours[t][k] - 1)].demand;
      }
      if (load > in.vehicle_capacity) {
        return fail("capacity", {day(d) + " tour " + std::to_string(t)},
                    "load " + num(load) + " > " + num(in.vehicle_capacity));
      }
    }
  }
  for (const auto& [d, tours] : sol.tours) {
    int allowed = in.vehicles_per_day[static_cast<std::size_t>(d - 1)];
    if (static_cast<int>(tours.size()) > allowed) {
      return fail("vehicles", {day(d)},
                  std::to_string(tours.size()) + " tours > " + std::to_string(allowed) + " vehicles");
    }
  }

  auto where = [&](int v) { return v == 0 ? in.depot : in.customers[static_cast<std::size_t>(v - 1)].coords; };
  double total = 0.0;
  for (const auto& [d, tours] : sol.tours) {
    for (const auto& tour : tours) {
      for (std::size_t k = 0; k + 1 < tour.size(); ++k) total += distance(where(tour[k]), where(tour[k + 1]));
    }
  }
  return RawOutcome::ok(total);
}

RawOutcome evaluate_container(const ContainerInstance& in, const ContainerSolution& sol) {
  const auto types = static_cast<I64>(in.box_types.size());
  std::vector<Cuboid> boxes;
  boxes.reserve(sol.placements.size());
  for (std::size_t i = 0; i < sol.placements.size(); ++i) {
    const ContainerPlacement& p = sol.placements[i];
    if (p.box_type < 0 || p.box_type >= types) {
      return fail("box-type", {placement(i)}, "box_type " + std::to_string(p.box_type));
    }
    if (p.container_id != 0) {
      return fail("container-id", {placement(i)}, "container_id " + std::to_string(p.container_id));
    }
    const BoxType& box = in.box_types[static_cast<std::size_t>(p.box_type)];
    if (p.v < 0 || p.v > 2 || (p.hswap != 0 && p.hswap != 1) ||
        box.flags[static_cast<std::size_t>(p.v)] != 1) {
      return fail("orientation", {placement(i)},
                  "v=" + std::to_string(p.v) + " hswap=" + std::to_string(p.hswap));
    }
    Cuboid c{{p.x, p.y, p.z}, oriented_dims(box, p.v, p.hswap == 1)};
    if (!inside(c, in.container)) return fail("bounds", {placement(i)});
    boxes.push_back(c);
  }
  if (auto overlap = first_overlap(boxes)) return *overlap;
  std::vector<int> used(in.box_types.size(), 0);
  I64 volume = 0;
  for (const ContainerPlacement& p : sol.placements) {
    const BoxType& box = in.box_types[static_cast<std::size_t>(p.box_type)];
    if (++used[static_cast<std::size_t>(p.box_type)] > box.count) {
      return fail("count", {"box type " + std::to_string(p.box_type)},
                  "more than " + std::to_string(box.count) + " placed");
    }
    volume += box.dims[0] * box.dims[1] * box.dims[2];
  }
  return RawOutcome::ok(static_cast<double>(volume) / static_cast<double>(in.volume()));
}

RawOutcome evaluate_container_weight(const ContainerInstance& in, const ContainerWeightSolution& sol) {
  const auto types = static_cast<I64>(in.box_types.size());
  std::vector<Cuboid> boxes;
  boxes.reserve(sol.placements.size());
  for (std::size_t i = 0; i < sol.placements.size(); ++i) {
    const WeightPlacement& p = sol.placements[i];
    if (p.box_type < 1 || p.box_type > types) {
      return fail("box-type", {placement(i)}, "box_type " + std::to_string(p.box_type));
    }
    const BoxType& box = in.box_types[static_cast<std::size_t>(p.box_type - 1)];
    if (p.orientation < 1 || p.orientation > 3 ||
        box.flags[static_cast<std::size_t>(p.orientation - 1)] != 1) {
      return fail("orientation", {placement(i)}, "orientation " + std::to_string(p.orientation));
    }
    Cuboid c{{p.x, p.y, p.z}, oriented_dims_weight(box, p.orientation)};
    if (!inside(c, in.container)) return fail("bounds", {placement(i)});
    boxes.push_back(c);
  }
  if (auto overlap = first_overlap(boxes)) return *overlap;

  std::vector<int> used(in.box_types.size(), 0);
  for (const WeightPlacement& p : sol.placements) {
    const BoxType& box = in.box_types[static_cast<std::size_t>(p.box_type - 1)];
    if (++used[static_cast<std::size_t>(p.box_type - 1)] > box.count) {
      return fail("count", {"box type " + std::to_string(p.box_type)},
                  "more than " + std::to_string(box.count) + " placed");
    }
  }

  const std::size_t n = boxes.size();
  std::vector<std::ptrdiff_t> supporter(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const Cuboid& top = boxes[i];
    if (top.lo[2] == 0) continue;
    for (std::size_t j = 0; j < n && supporter[i] < 0; ++j) {
      const Cuboid& below = boxes[j];
      if (j == i || below.hi(2) != top.lo[2]) continue;
      bool contained = below.lo[0] <= top.lo[0] && top.hi(0) <= below.hi(0) &&
                       below.lo[1] <= top.lo[1] && top.hi(1) <= below.hi(1);
      if (contained) supporter[i] = static_cast<std::ptrdiff_t>(j);
    }
    if (supporter[i] < 0) return fail("unsupported", {placement(i)}, "no single box beneath");
  }

  // Supporters sit strictly lower, so a sweep from the highest box down
  // accumulates every indirect load before it is passed on.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return boxes[a].lo[2] > boxes[b].lo[2]; });
  std::vector<double> load(n, 0.0);
  for (std::size_t i : order) {
    if (supporter[i] < 0) continue;
    const WeightPlacement& p = sol.placements[i];
    double weight = *in.box_types[static_cast<std::size_t>(p.box_type - 1)].weight;
    load[static_cast<std::size_t>(supporter[i])] += weight + load[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const WeightPlacement& p = sol.placements[i];
    const BoxType& box = in.box_types[static_cast<std::size_t>(p.box_type - 1)];
    double limit = (*box.load_bearing)[static_cast<std::size_t>(p.orientation - 1)];
    if (load[i] > limit) {
      return fail("load-bearing", {placement(i)}, "carries " + num(load[i]) + " > limit " + num(limit));
    }
  }

  I64 volume = 0;
  for (const WeightPlacement& p : sol.placements) {
    const BoxType& box = in.box_types[static_cast<std::size_t>(p.box_type - 1)];
    volume += box.dims[0] * box.dims[1] * box.dims[2];
  }
  return RawOutcome::ok(static_cast<double>(volume) / static_cast<double>(in.volume()));
}

RawOutcome evaluate_rcsp(const RcspInstance& in, const RcspSolution& sol) {
  const auto& path = sol.path;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] < 1 || path[i] > in.n) {
      return fail("vertex", {"path[" + std::to_string(i) + "]"}, "vertex " + std::to_string(path[i]));
    }
  }
  if (path.empty() || path.front() != 1 || path.back() != in.n) {
    return fail("endpoints", {}, "path must start at 1 and end at " + std::to_string(in.n));
  }
  const auto K = static_cast<std::size_t>(in.K);
  std::vector<double> used(K, 0.0);
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const RcspArc* arc = in.find_arc(path[i], path[i + 1]);
    if (!arc) {
      return fail("missing-arc", {std::to_string(path[i]) + "->" + std::to_string(path[i + 1])});
    }
    cost += arc->cost;
    for (std::size_t k = 0; k < K; ++k) used[k] += arc->arc_resources[k];
  }
  for (int v : path) {
    for (std::size_t k = 0; k < K; ++k) used[k] += in.vertex_resources[static_cast<std::size_t>(v - 1)][k];
  }
  for (std::size_t k = 0; k < K; ++k) {
    if (used[k] < in.lower_bounds[k] || used[k] > in.upper_bounds[k]) {
      return fail("resource(" + std::to_string(k + 1) + ")", {},
                  num(used[k]) + " outside [" + num(in.lower_bounds[k]) + ", " + num(in.upper_bounds[k]) + "]");
    }
  }
  return RawOutcome::ok(cost);
}

RawOutcome evaluate_crew(const CrewInstance& in, const CrewSolution& sol) {
  const int N = in.N();
  for (std::size_t c = 0; c < sol.crews.size(); ++c) {
    if (sol.crews[c].empty()) return fail("empty-crew", {crew(c)});
    for (int id : sol.crews[c]) {
      if (id < 1 || id > N) return fail("unknown-task", {crew(c), task(id)});
    }
  }
  auto info = [&](int id) -> const CrewTask& { return in.tasks[static_cast<std::size_t>(id - 1)]; };
  for (std::size_t c = 0; c < sol.crews.size(); ++c) {
    const auto& list = sol.crews[c];
    for (std::size_t k = 0; k + 1 < list.size(); ++k) {
      if (info(list[k]).finish_time > info(list[k + 1]).start_time) {
        return fail("overlap", {crew(c), task(list[k]), task(list[k + 1])});
      }
      if (!in.arcs.count({list[k], list[k + 1]})) {
        return fail("missing-arc", {crew(c), task(list[k]), task(list[k + 1])});
      }
    }
  }
  for (std::size_t c = 0; c < sol.crews.size(); ++c) {
    const auto& list = sol.crews[c];
    double duty = info(list.back()).finish_time - info(list.front()).start_time;
    if (duty > in.time_limit) {
      return fail("duty-time", {crew(c)}, num(duty) + " > " + num(in.time_limit));
    }
  }
  std::vector<int> seen(static_cast<std::size_t>(N), 0);
  for (const auto& list : sol.crews) {
    for (int id : list) ++seen[static_cast<std::size_t>(id - 1)];
  }
  for (int id = 1; id <= N; ++id) {
    int count = seen[static_cast<std::size_t>(id - 1)];
    if (count != 1) return fail("coverage", {task(id)}, "assigned " + std::to_string(count) + " times");
  }
  if (static_cast<int>(sol.crews.size()) > in.K) {
    return fail("crew-limit", {}, std::to_string(sol.crews.size()) + " crews > K=" + std::to_string(in.K));
  }
  double cost = 0.0;
  for (const auto& list : sol.crews) {
    for (std::size_t k = 0; k + 1 < list.size(); ++k) cost += in.arcs.at({list[k], list[k + 1]});
  }
  return RawOutcome::ok(cost);
}

RawOutcome evaluate_steiner(const SteinerInstance& in, const SteinerSolution& sol) {
  for (const Point2& p : sol.steiner_points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) return fail("malformed", {}, "non-finite Steiner point");
  }
  double original = mst_length(in.points);
  std::vector<Point2> all = in.points;
  all.insert(all.end(), sol.steiner_points.begin(), sol.steiner_points.end());
  double candidate = mst_length(all);
  if (candidate > original + kSteinerTolerance) {
    return fail("mst-longer", {}, num(candidate) + " > " + num(original));
  }
  return RawOutcome::ok(1.0 - candidate / original);
}

RawOutcome evaluate(const ProblemInstance& instance, const CandidateSolution& solution) {
  if (solution.domain != instance.domain) {
    return fail("malformed", {}, "solution domain does not match instance");
  }
  switch (instance.domain) {
    case DomainId::AircraftLanding:
      return evaluate_aircraft(instance.as<AircraftLandingInstance>(), std::get<AircraftSolution>(solution.payload));
    case DomainId::PeriodicVehicleRouting:
      return evaluate_pvrp(instance.as<PvrpInstance>(), std::get<PvrpSolution>(solution.payload));
    case DomainId::ContainerLoading:
      return evaluate_container(instance.as<ContainerInstance>(), std::get<ContainerSolution>(solution.payload));
    case DomainId::ContainerLoadingWeight:
      return evaluate_container_weight(instance.as<ContainerInstance>(),
                                       std::get<ContainerWeightSolution>(solution.payload));
    case DomainId::Rcsp:
      return evaluate_rcsp(instance.as<RcspInstance>(), std::get<RcspSolution>(solution.payload));
    case DomainId::CrewScheduling:
      return evaluate_crew(instance.as<CrewInstance>(), std::get<CrewSolution>(solution.payload));
    case DomainId::EuclideanSteiner:
      return evaluate_steiner(instance.as<SteinerInstance>(), std::get<SteinerSolution>(solution.payload));
  }
  return fail("malformed", {}, "unknown domain");
}

RawOutcome evaluate_json(const ProblemInstance& instance, const Json& solution) {
  SolutionParse parsed = parse_solution(instance.domain, solution);
  if (!parsed.solution) return fail("malformed", {}, parsed.error);
  return evaluate(instance, *parsed.solution);
}

}  // namespace heursynth
