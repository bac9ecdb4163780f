#include "heursynth/problem/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "heursynth/common/rng.hpp"
#include "heursynth/problem/bounds.hpp"
#include "heursynth/problem/geometry.hpp"

namespace heursynth {
namespace {

using I64 = std::int64_t;

struct SizeRange {
  I64 lo, hi;
};

SizeRange pick(SizeClass size, SizeRange small, SizeRange medium, SizeRange large) {
  switch (size) {
    case SizeClass::Small: return small;
    case SizeClass::Medium: return medium;
    case SizeClass::Large: return large;
  }
  return small;
}

I64 draw(Rng& rng, SizeRange r) { return rng.uniform_int(r.lo, r.hi); }

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[static_cast<std::size_t>(rng.uniform_int(0, static_cast<I64>(i) - 1))]);
  }
}

// --- aircraft ------------------------------------------------------------------

GeneratedInstance gen_aircraft(SizeClass size, Rng& rng) {
  bool small = size == SizeClass::Small;
  int planes = static_cast<int>(draw(rng, pick(size, {1, 5}, {10, 20}, {30, 60})));
  int runways = static_cast<int>(draw(rng, pick(size, {1, 2}, {1, 3}, {2, 4})));
  I64 max_sep = small ? 3 : 8;
  I64 early_slack = small ? 2 : 15;
  I64 late_slack = small ? 1 : 40;

  AircraftLandingInstance in;
  in.num_runways = runways;
  in.separation.assign(static_cast<std::size_t>(planes), std::vector<double>(planes, 0.0));
  for (int i = 0; i < planes; ++i) {
    for (int j = 0; j < planes; ++j) {
      if (i != j) in.separation[i][j] = static_cast<double>(rng.uniform_int(1, max_sep));
    }
  }

  std::vector<int> order(static_cast<std::size_t>(planes));
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  std::vector<I64> cursor(static_cast<std::size_t>(runways));
  for (auto& c : cursor) c = 10 + rng.uniform_int(0, 5);

  in.planes.resize(static_cast<std::size_t>(planes));
  AircraftSolution witness;
  for (std::size_t k = 0; k < order.size(); ++k) {
    int plane = order[k];
    int runway = static_cast<int>(k % static_cast<std::size_t>(runways));
    I64 when = cursor[static_cast<std::size_t>(runway)];
    cursor[static_cast<std::size_t>(runway)] += max_sep + rng.uniform_int(0, small ? 1 : 6);
    Plane& p = in.planes[static_cast<std::size_t>(plane)];
    p.earliest = static_cast<double>(when - rng.uniform_int(0, early_slack));
    p.latest = static_cast<double>(when + rng.uniform_int(0, late_slack));
    p.target = static_cast<double>(
        rng.uniform_int(static_cast<I64>(p.earliest), static_cast<I64>(p.latest)));
    p.penalty_early = static_cast<double>(rng.uniform_int(1, small ? 5 : 10));
    p.penalty_late = static_cast<double>(rng.uniform_int(1, small ? 5 : 10));
    witness.schedule[plane + 1] = Landing{static_cast<double>(when), static_cast<double>(runway + 1)};
  }
  GeneratedInstance out;
  out.instance.payload = std::move(in);
  out.witness.payload = std::move(witness);
  return out;
}

// --- periodic vehicle routing --------------------------------------------------

GeneratedInstance gen_pvrp(SizeClass size, Rng& rng) {
  bool small = size == SizeClass::Small;
  int period = static_cast<int>(draw(rng, pick(size, {1, 3}, {2, 5}, {3, 7})));
  SizeRange customer_range = pick(size, {1, period <= 2 ? 4 : 3}, {8, 15}, {20, 40});
  int customers = static_cast<int>(draw(rng, customer_range));
  int max_schedules = small ? 2 : 3;

  PvrpInstance in;
  in.period_length = period;
  in.depot = {static_cast<double>(rng.uniform_int(0, 50)), static_cast<double>(rng.uniform_int(0, 50))};
  double max_demand = 0;
  for (int i = 0; i < customers; ++i) {
    PvrpCustomer c;
    c.coords = {static_cast<double>(rng.uniform_int(0, 50)), static_cast<double>(rng.uniform_int(0, 50))};
    c.demand = static_cast<double>(rng.uniform_int(1, 9));
    max_demand = std::max(max_demand, c.demand);
    int wanted = static_cast<int>(rng.uniform_int(1, max_schedules));
    std::set<std::vector<int>> distinct;
    for (int attempt = 0; attempt < 8 && static_cast<int>(distinct.size()) < wanted; ++attempt) {
      std::vector<int> s(static_cast<std::size_t>(period));
      for (int& bit : s) bit = rng.chance(0.5) ? 1 : 0;
      if (std::find(s.begin(), s.end(), 1) == s.end()) {
        s[static_cast<std::size_t>(rng.uniform_int(0, period - 1))] = 1;
      }
      if (distinct.insert(s).second) c.schedules.push_back(s);
    }
    in.customers.push_back(std::move(c));
  }
  in.vehicle_capacity = std::max(max_demand, static_cast<double>(rng.uniform_int(8, 20)));

  // Witness: first candidate schedule, first-fit tours in id order.
  PvrpSolution witness;
  in.vehicles_per_day.assign(static_cast<std::size_t>(period), 1);
  for (int i = 0; i < customers; ++i) {
    witness.selected_schedules[i + 1] = in.customers[static_cast<std::size_t>(i)].schedules.front();
  }
  for (int d = 0; d < period; ++d) {
    std::vector<std::vector<int>> tours;
    std::vector<double> loads;
    for (int i = 0; i < customers; ++i) {
      const PvrpCustomer& c = in.customers[static_cast<std::size_t>(i)];
      if (c.schedules.front()[static_cast<std::size_t>(d)] == 0) continue;
      std::size_t t = 0;
      while (t < tours.size() && loads[t] + c.demand > in.vehicle_capacity) ++t;
      if (t == tours.size()) {
        tours.push_back({0});
        loads.push_back(0);
      }
      tours[t].push_back(i + 1);
      loads[t] += c.demand;
    }
    for (auto& tour : tours) tour.push_back(0);
    in.vehicles_per_day[static_cast<std::size_t>(d)] =
        std::max<int>(1, static_cast<int>(tours.size()) + static_cast<int>(rng.uniform_int(0, 1)));
    witness.tours[d + 1] = std::move(tours);
  }

  GeneratedInstance out;
  out.instance.payload = std::move(in);
  out.witness.payload = std::move(witness);
  return out;
}

void shrink_pvrp(GeneratedInstance& g) {
  auto& in = std::get<PvrpInstance>(g.instance.payload);
  auto& witness = std::get<PvrpSolution>(g.witness.payload);
  while (in.customers.size() > 1 && oracle_space_size(g.instance) > small_bounds::kMaxOracleCandidates) {
    int dropped = static_cast<int>(in.customers.size());
    in.customers.pop_back();
    witness.selected_schedules.erase(dropped);
    for (auto& [day, tours] : witness.tours) {
      std::vector<std::vector<int>> kept;
      for (auto& tour : tours) {
        std::erase(tour, dropped);
        if (tour.size() > 2) kept.push_back(tour);
      }
      tours = std::move(kept);
    }
  }
}

// --- container loading -----------------------------------------------------------

struct Box3 {
  std::array<I64, 3> lo, size;
};

bool overlaps(const Box3& a, const Box3& b) {
  for (std::size_t k = 0; k < 3; ++k) {
    if (a.lo[k] + a.size[k] <= b.lo[k] || b.lo[k] + b.size[k] <= a.lo[k]) return false;
  }
  return true;
}

// Extreme-point greedy used to build non-trivial witnesses. Floor-only when
// floor_only is set, which keeps the weight variant's support rules trivially met.
template <class Emit>
void greedy_pack(const ContainerInstance& in, bool weighted, bool floor_only, Emit emit) {
  std::vector<Box3> placed;
  std::vector<std::array<I64, 3>> points = {{0, 0, 0}};
  for (std::size_t t = 0; t < in.box_types.size(); ++t) {
    const BoxType& box = in.box_types[t];
    for (int unit = 0; unit < box.count; ++unit) {
      std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return std::tie(a[2], a[1], a[0]) < std::tie(b[2], b[1], b[0]);
      });
      bool done = false;
      for (const std::array<I64, 3> pt : points) {
        if (floor_only && pt[2] != 0) continue;
        for (I64 o = 0; o < 3 && !done; ++o) {
          if (box.flags[static_cast<std::size_t>(o)] == 0) continue;
          auto size = weighted ? oriented_dims_weight(box, o + 1) : oriented_dims(box, o, false);
          Box3 cand{pt, size};
          bool fits = true;
          for (std::size_t k = 0; k < 3; ++k) fits = fits && pt[k] + size[k] <= in.container[k];
          for (const Box3& other : placed) fits = fits && !overlaps(cand, other);
          if (!fits) continue;
          placed.push_back(cand);
          emit(t, o, pt);
          points.push_back({pt[0] + size[0], pt[1], pt[2]});
          points.push_back({pt[0], pt[1] + size[1], pt[2]});
          points.push_back({pt[0], pt[1], pt[2] + size[2]});
          done = true;
        }
        if (done) break;
      }
    }
  }
}

GeneratedInstance gen_container(SizeClass size, Rng& rng, bool weighted) {
  bool small = size == SizeClass::Small;
  ContainerInstance in;
  for (auto& side : in.container) side = draw(rng, pick(size, {1, 3}, {10, 30}, {20, 60}));
  I64 min_side = *std::min_element(in.container.begin(), in.container.end());
  int types = static_cast<int>(draw(rng, pick(size, {1, 2}, {3, 6}, {5, 10})));
  int remaining = small_bounds::kMaxBoxes;
  for (int t = 0; t < types; ++t) {
    BoxType box;
    for (auto& d : box.dims) {
      d = small ? rng.uniform_int(1, std::min<I64>(2, min_side))
                : draw(rng, pick(size, {1, 1}, {2, 10}, {3, 15}));
    }
    for (int& f : box.flags) f = rng.chance(0.6) ? 1 : 0;
    if (std::find(box.flags.begin(), box.flags.end(), 1) == box.flags.end()) {
      box.flags[static_cast<std::size_t>(rng.uniform_int(0, 2))] = 1;
    }
    if (small) {
      box.count = static_cast<int>(rng.uniform_int(1, std::max(1, std::min(2, remaining - (types - t - 1)))));
      remaining -= box.count;
    } else {
      box.count = static_cast<int>(draw(rng, pick(size, {1, 1}, {1, 10}, {5, 20})));
    }
    if (weighted) {
      box.weight = static_cast<double>(rng.uniform_int(1, 20));
      box.load_bearing = std::array<double, 3>{static_cast<double>(rng.uniform_int(0, 40)),
                                               static_cast<double>(rng.uniform_int(0, 40)),
                                               static_cast<double>(rng.uniform_int(0, 40))};
    }
    in.box_types.push_back(box);
  }

  GeneratedInstance out;
  if (weighted) {
    ContainerWeightSolution witness;
    greedy_pack(in, true, true, [&](std::size_t t, I64 o, const std::array<I64, 3>& pt) {
      witness.placements.push_back({static_cast<I64>(t) + 1, o + 1, pt[0], pt[1], pt[2]});
    });
    out.witness.payload = std::move(witness);
  } else {
    ContainerSolution witness;
    greedy_pack(in, false, false, [&](std::size_t t, I64 o, const std::array<I64, 3>& pt) {
      witness.placements.push_back({static_cast<I64>(t), 0, pt[0], pt[1], pt[2], o, 0});
    });
    out.witness.payload = std::move(witness);
  }
  out.instance.payload = std::move(in);
  return out;
}

void shrink_container(GeneratedInstance& g) {
  auto& in = std::get<ContainerInstance>(g.instance.payload);
  while (oracle_space_size(g.instance) > small_bounds::kMaxOracleCandidates) {
    auto it = std::find_if(in.box_types.rbegin(), in.box_types.rend(),
                           [](const BoxType& b) { return b.count > 1; });
    if (it != in.box_types.rend()) {
      --it->count;
    } else if (in.box_types.size() > 1) {
      in.box_types.pop_back();
    } else {
      break;
    }
  }
  // The witness may reference boxes that were removed; rebuild it against the final instance.
  auto rebuild = [&](auto& placements, auto type_of) {
    std::vector<int> used(in.box_types.size(), 0);
    std::erase_if(placements, [&](const auto& p) {
      I64 t = type_of(p);
      if (t < 0 || t >= static_cast<I64>(in.box_types.size())) return true;
      return ++used[static_cast<std::size_t>(t)] > in.box_types[static_cast<std::size_t>(t)].count;
    });
  };
  if (auto* s = std::get_if<ContainerSolution>(&g.witness.payload)) {
    rebuild(s->placements, [](const ContainerPlacement& p) { return p.box_type; });
  } else if (auto* w = std::get_if<ContainerWeightSolution>(&g.witness.payload)) {
    rebuild(w->placements, [](const WeightPlacement& p) { return p.box_type - 1; });
  }
}

// --- resource constrained shortest path ------------------------------------------

GeneratedInstance gen_rcsp(SizeClass size, Rng& rng) {
  bool small = size == SizeClass::Small;
  RcspInstance in;
  in.n = static_cast<int>(draw(rng, pick(size, {2, 8}, {15, 30}, {50, 100})));
  in.K = static_cast<int>(draw(rng, pick(size, {1, 2}, {1, 3}, {2, 4})));
  auto K = static_cast<std::size_t>(in.K);
  double density = small ? 0.45 : (size == SizeClass::Medium ? 0.2 : 0.08);
  int reach = small ? in.n : 12;

  in.vertex_resources.assign(static_cast<std::size_t>(in.n), std::vector<double>(K));
  for (auto& row : in.vertex_resources) {
    for (double& x : row) x = static_cast<double>(rng.uniform_int(0, 3));
  }

  // Witness chain 1 = a0 < a1 < ... < n.
  std::vector<int> chain = {1};
  for (int v = 2; v < in.n; ++v) {
    if (rng.chance(small ? 0.4 : 0.15)) chain.push_back(v);
  }
  if (in.n > 1) chain.push_back(in.n);
  std::set<std::pair<int, int>> chain_arcs;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) chain_arcs.insert({chain[i], chain[i + 1]});

  auto make_arc = [&](int to) {
    RcspArc arc;
    arc.end_vertex = to;
    arc.cost = static_cast<double>(rng.uniform_int(1, 20));
    arc.arc_resources.resize(K);
    for (double& x : arc.arc_resources) x = static_cast<double>(rng.uniform_int(0, 5));
    return arc;
  };
  in.graph.assign(static_cast<std::size_t>(in.n), {});
  for (int u = 1; u <= in.n; ++u) {
    for (int v = u + 1; v <= in.n; ++v) {
      bool near = v <= u + reach && rng.chance(density);
      if (chain_arcs.count({u, v}) || near) {
        in.graph[static_cast<std::size_t>(u - 1)].push_back(make_arc(v));
      }
    }
  }

  std::vector<double> used(K, 0.0);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (std::size_t k = 0; k < K; ++k) used[k] += in.vertex_resources[chain[i] - 1][k];
    if (i + 1 < chain.size()) {
      const RcspArc* arc = in.find_arc(chain[i], chain[i + 1]);
      for (std::size_t k = 0; k < K; ++k) used[k] += arc->arc_resources[k];
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    in.lower_bounds.push_back(used[k] - static_cast<double>(rng.uniform_int(0, static_cast<I64>(used[k] / 2))));
    in.upper_bounds.push_back(used[k] + static_cast<double>(rng.uniform_int(0, small ? 3 : 10)));
  }

  GeneratedInstance out;
  out.instance.payload = std::move(in);
  out.witness.payload = RcspSolution{chain};
  return out;
}

// --- crew scheduling ---------------------------------------------------------------

GeneratedInstance gen_crew(SizeClass size, Rng& rng) {
  bool small = size == SizeClass::Small;
  int tasks = static_cast<int>(draw(rng, pick(size, {1, 6}, {15, 30}, {50, 100})));
  int crews_allowed = static_cast<int>(draw(rng, pick(size, {1, 3}, {3, 8}, {8, 20})));
  int crews_used = std::min(crews_allowed, tasks);

  std::vector<int> ids(static_cast<std::size_t>(tasks));
  std::iota(ids.begin(), ids.end(), 1);
  shuffle(ids, rng);

  CrewInstance in;
  in.K = crews_allowed;
  in.tasks.resize(static_cast<std::size_t>(tasks));
  std::vector<std::vector<int>> witness(static_cast<std::size_t>(crews_used));
  for (std::size_t k = 0; k < ids.size(); ++k) witness[k % witness.size()].push_back(ids[k]);

  double max_duty = 0;
  for (auto& crew : witness) {
    I64 cursor = rng.uniform_int(0, 10);
    for (int id : crew) {
      I64 start = cursor + rng.uniform_int(0, 5);
      I64 finish = start + rng.uniform_int(1, 10);
      in.tasks[static_cast<std::size_t>(id - 1)] = {static_cast<double>(start), static_cast<double>(finish)};
      cursor = finish;
    }
    for (std::size_t i = 0; i + 1 < crew.size(); ++i) {
      in.arcs[{crew[i], crew[i + 1]}] = static_cast<double>(rng.uniform_int(1, 20));
    }
    max_duty = std::max(max_duty, in.tasks[crew.back() - 1].finish_time - in.tasks[crew.front() - 1].start_time);
  }
  double extra = small ? 0.35 : 0.1;
  for (int a = 1; a <= tasks; ++a) {
    for (int b = 1; b <= tasks; ++b) {
      if (a == b || in.arcs.count({a, b})) continue;
      const CrewTask& ta = in.tasks[static_cast<std::size_t>(a - 1)];
      const CrewTask& tb = in.tasks[static_cast<std::size_t>(b - 1)];
      bool compatible = ta.finish_time <= tb.start_time;
      if (rng.chance(compatible ? extra : extra / 4)) {
        in.arcs[{a, b}] = static_cast<double>(rng.uniform_int(1, 20));
      }
    }
  }
  in.time_limit = std::max(1.0, max_duty + static_cast<double>(rng.uniform_int(0, small ? 5 : 20)));

  GeneratedInstance out;
  out.instance.payload = std::move(in);
  out.witness.payload = CrewSolution{witness};
  return out;
}

// --- euclidean steiner ---------------------------------------------------------------

// Greedy Fermat-point insertion over triangles of the current MST neighbourhood.
std::vector<Point2> greedy_steiner(const std::vector<Point2>& terminals) {
  std::vector<Point2> extra;
  std::vector<Point2> all = terminals;
  double current = mst_length(all);
  for (int round = 0; round < 3; ++round) {
    bool improved = false;
    const std::size_t n = terminals.size();
    for (std::size_t i = 0; i < n; ++i) {
      // Two nearest terminals of i form a candidate triangle.
      std::size_t a = n, b = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        double d = distance(terminals[i], terminals[j]);
        if (a == n || d < distance(terminals[i], terminals[a])) {
          b = a;
          a = j;
        } else if (b == n || d < distance(terminals[i], terminals[b])) {
          b = j;
        }
      }
      if (b == n) continue;
      Point2 f = fermat_point(terminals[i], terminals[a], terminals[b]);
      all.push_back(f);
      double with = mst_length(all);
      if (with < current - 1e-9) {
        current = with;
        extra.push_back(f);
        improved = true;
      } else {
        all.pop_back();
      }
    }
    if (!improved) break;
  }
  return extra;
}

GeneratedInstance gen_steiner(SizeClass size, Rng& rng) {
  int count = static_cast<int>(draw(rng, pick(size, {2, 6}, {10, 30}, {50, 100})));
  SteinerInstance in;
  std::set<std::pair<I64, I64>> used;
  while (static_cast<int>(in.points.size()) < count) {
    I64 x = rng.uniform_int(0, 1000), y = rng.uniform_int(0, 1000);
    if (!used.insert({x, y}).second) continue;
    in.points.push_back({static_cast<double>(x) / 10.0, static_cast<double>(y) / 10.0});
  }
  GeneratedInstance out;
  SteinerSolution witness;
  if (size != SizeClass::Small) witness.steiner_points = greedy_steiner(in.points);
  out.instance.payload = std::move(in);
  out.witness.payload = std::move(witness);
  return out;
}

}  // namespace

std::string_view size_class_name(SizeClass size) {
  switch (size) {
    case SizeClass::Small: return "small";
    case SizeClass::Medium: return "medium";
    case SizeClass::Large: return "large";
  }
  return "small";
}

std::optional<SizeClass> parse_size_class(std::string_view name) {
  for (SizeClass s : {SizeClass::Small, SizeClass::Medium, SizeClass::Large}) {
    if (size_class_name(s) == name) return s;
  }
  return std::nullopt;
}

GeneratedInstance generate_with_witness(DomainId domain, SizeClass size, std::uint64_t seed) {
  // Mix the domain and size into the stream so equal seeds differ across domains.
  Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(domain) * 131 +
          static_cast<std::uint64_t>(size) * 7 + 1);
  GeneratedInstance g;
  switch (domain) {
    case DomainId::AircraftLanding: g = gen_aircraft(size, rng); break;
    case DomainId::PeriodicVehicleRouting: g = gen_pvrp(size, rng); break;
    case DomainId::ContainerLoading: g = gen_container(size, rng, false); break;
    case DomainId::ContainerLoadingWeight: g = gen_container(size, rng, true); break;
    case DomainId::Rcsp: g = gen_rcsp(size, rng); break;
    case DomainId::CrewScheduling: g = gen_crew(size, rng); break;
    case DomainId::EuclideanSteiner: g = gen_steiner(size, rng); break;
  }
  g.instance.domain = domain;
  g.witness.domain = domain;
  g.instance.instance_id = std::string(domain_name(domain)) + "-" +
                           std::string(size_class_name(size)) + "-" + std::to_string(seed);
  if (size == SizeClass::Small) {
    if (domain == DomainId::PeriodicVehicleRouting) shrink_pvrp(g);
    if (domain == DomainId::ContainerLoading || domain == DomainId::ContainerLoadingWeight) {
      shrink_container(g);
    }
  }
  return g;
}

ProblemInstance generate_instance(DomainId domain, SizeClass size, std::uint64_t seed) {
  return generate_with_witness(domain, size, seed).instance;
}

std::string_view problem_description(DomainId domain) {
  switch (domain) {
    case DomainId::AircraftLanding:
      return R"(Aircraft landing scheduling. Assign every plane a landing time and a runway.
solve(**kwargs) receives: num_planes (int), num_runways (int), planes (list of dicts with
earliest, target, latest, penalty_early, penalty_late), separation (num_planes x num_planes
list; separation[i][j] is the minimum gap when plane i+1 lands no later than plane j+1 on the
same runway).
Feasibility: each landing time lies in [earliest, latest]; runway is an integer in
1..num_runways; for two planes on the same runway where plane i lands no later than plane j,
time_j - time_i >= separation[i][j].
Objective (minimize): sum over planes of penalty_early * max(0, target - t) +
penalty_late * max(0, t - target).
Yield dicts of the form {"schedule": {"1": {"landing_time": t, "runway": r}, ...}} keyed by
1-based plane id.)";
    case DomainId::PeriodicVehicleRouting:
      return R"(Periodic vehicle routing over a planning period of several days.
solve(**kwargs) receives: depot ([x, y], vertex id 0), customers (list of dicts with coords,
demand, schedules; customer ids are 1-based list positions), period_length (int),
vehicles_per_day (list of int, one per day), vehicle_capacity (number).
Choose exactly one candidate schedule (binary vector over days) per customer. On each day
visit exactly the customers whose chosen schedule has a 1, each exactly once. Every tour
starts and ends at the depot 0 with no depot visit in between, never repeats a customer, and
carries total demand at most vehicle_capacity. Use at most vehicles_per_day[d] tours on day d.
Objective (minimize): total Euclidean length of all tours over all days.
Yield {"selected_schedules": {"<customer id>": [0/1, ...]}, "tours": {"<day, 1-based>":
[[0, c1, c2, 0], ...]}}.)";
    case DomainId::ContainerLoading:
      return R"(Three-dimensional container loading without weights.
solve(**kwargs) receives: container ([length, width, height], integers) and box_types (list of
dicts with dims [d1, d2, d3], flags [f1, f2, f3] where flag k = 1 lets dimension k be vertical,
and count).
Each placement is seven integers [box_type, container_id, x, y, z, v, hswap]: box_type is the
0-based type index, container_id is 0 (a single container), (x, y, z) the lower corner, v the
0-based index of the vertical dimension (requires flags[v] = 1), and hswap = 1 swaps the two
remaining horizontal sides. Boxes must lie inside the container, must not overlap (touching is
fine), and each type may be used at most count times.
Objective (maximize): total placed box volume divided by container volume.
Yield {"placements": [[...7 integers...], ...]}.)";
    case DomainId::ContainerLoadingWeight:
      return R"(Three-dimensional container loading with weights and load-bearing limits.
solve(**kwargs) receives: container ([length, width, height], integers) and box_types (list of
dicts with dims, flags, count, weight, lb1, lb2, lb3).
Each placement is {"box_type": 1-based type, "orientation": o in {1, 2, 3}, "x", "y", "z"};
orientation o makes dimension o vertical (requires flag o = 1) and keeps the other two in
order along x then y. Boxes lie inside the container, do not overlap, and respect counts. A box
not on the floor must rest entirely on the top face of exactly one other box (footprint
contained in the supporter's top face). Each box carries the total weight stacked on it,
directly or indirectly, which must not exceed its load-bearing limit lb<o> for its orientation.
Objective (maximize): total placed volume divided by container volume.
Yield {"placements": [{...}, ...]}.)";
    case DomainId::Rcsp:
      return R"(Resource constrained shortest path in a directed graph.
solve(**kwargs) receives: n, m, K (ints), lower_bounds and upper_bounds (length-K lists),
vertex_resources (n rows of K values; row i is vertex i+1), graph (dict mapping vertex id as a
string to a list of [end_vertex, cost, arc_resources]).
The path starts at vertex 1, ends at vertex n, and uses only listed arcs. Summing the
resources of every visited vertex and every traversed arc, each resource total must lie in
[lower_bounds[k], upper_bounds[k]].
Objective (minimize): total arc cost along the path.
Yield {"path": [1, ..., n]} (an optional "total_cost" is ignored).)";
    case DomainId::CrewScheduling:
      return R"(Crew scheduling.
solve(**kwargs) receives: N (tasks), K (crew limit), time_limit, tasks (dict mapping task id
as a string to [start_time, finish_time]), arcs (list of [from_task, to_task, cost]).
Every task is assigned to exactly one crew; at most K non-empty crews. Within a crew, tasks
are in order with finish_time <= next start_time, every consecutive pair has an arc, and the
duty time (last finish minus first start) is at most time_limit.
Objective (minimize): sum of arc costs over consecutive task pairs in all crews.
Yield {"crews": [[task ids...], ...]}.)";
    case DomainId::EuclideanSteiner:
      return R"(Euclidean Steiner tree.
solve(**kwargs) receives: points (list of [x, y] terminals).
Return additional Steiner points. The candidate tree is the minimum spanning tree over the
terminals plus the returned points; it must not be longer than the terminal-only MST.
Objective (maximize): 1 - candidate_length / terminal_mst_length.
Yield {"steiner_points": [[x, y], ...]}.)";
  }
  return "";
}

}  // namespace heursynth
