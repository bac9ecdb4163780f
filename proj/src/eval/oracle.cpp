#include "heursynth/eval/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "heursynth/common/error.hpp"
#include "heursynth/problem/bounds.hpp"
#include "heursynth/problem/geometry.hpp"

namespace heursynth {
namespace {

using I64 = std::int64_t;
using Lists = std::vector<std::vector<int>>;

constexpr OracleVerdict kInfeasible{false, 0.0};

// Every way to arrange `items` into a set of non-empty ordered lists. Each
// arrangement is reached once: item k either opens a new list or is inserted
// at one position of an existing list.
void ordered_list_arrangements(const std::vector<int>& items, const std::function<void(const Lists&)>& emit) {
  Lists lists;
  std::function<void(std::size_t)> place = [&](std::size_t k) {
    if (k == items.size()) {
      emit(lists);
      return;
    }
    lists.push_back({items[k]});
    place(k + 1);
    lists.pop_back();
    for (std::size_t l = 0; l < lists.size(); ++l) {
      for (std::size_t pos = 0; pos <= lists[l].size(); ++pos) {
        lists[l].insert(lists[l].begin() + static_cast<std::ptrdiff_t>(pos), items[k]);
        place(k + 1);
        lists[l].erase(lists[l].begin() + static_cast<std::ptrdiff_t>(pos));
      }
    }
  };
  place(0);
}

std::vector<Lists> all_arrangements(const std::vector<int>& items) {
  std::vector<Lists> out;
  ordered_list_arrangements(items, [&](const Lists& l) { out.push_back(l); });
  return out;
}

// Advances a mixed-radix counter; false once it wraps around.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

// Non-decreasing index vectors of length k over [0, n): multisets.
std::vector<std::vector<std::size_t>> multisets(std::size_t n, int k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// --- aircraft ----------------------------------------------------------------------

OracleVerdict judge_aircraft(const AircraftLandingInstance& in, const AircraftSolution& sol) {
  const int P = in.num_planes();
  if (static_cast<int>(sol.schedule.size()) != P) return kInfeasible;
  std::vector<double> time(static_cast<std::size_t>(P)), runway(static_cast<std::size_t>(P));
  for (const auto& [id, l] : sol.schedule) {
    if (id < 1 || id > P) return kInfeasible;
    time[static_cast<std::size_t>(id - 1)] = l.landing_time;
    runway[static_cast<std::size_t>(id - 1)] = l.runway;
  }
  double cost = 0.0;
  for (std::size_t i = 0; i < time.size(); ++i) {
    const Plane& p = in.planes[i];
    if (time[i] < p.earliest || time[i] > p.latest) return kInfeasible;
    if (runway[i] != std::round(runway[i]) || runway[i] < 1 || runway[i] > in.num_runways) return kInfeasible;
    cost += time[i] < p.target ? p.penalty_early * (p.target - time[i]) : p.penalty_late * (time[i] - p.target);
  }
  for (std::size_t i = 0; i < time.size(); ++i) {
    for (std::size_t j = 0; j < time.size(); ++j) {
      if (i == j || runway[i] != runway[j] || time[i] > time[j]) continue;
      if (time[j] - time[i] < in.separation[i][j]) return kInfeasible;
    }
  }
  return {true, cost};
}

void enumerate_aircraft(const AircraftLandingInstance& in, const OracleVisitor& visit) {
  const std::size_t P = in.planes.size();
  std::vector<std::size_t> radix(P), digits(P, 0);
  for (std::size_t i = 0; i < P; ++i) {
    auto slots = static_cast<std::size_t>(std::floor(in.planes[i].latest) - std::ceil(in.planes[i].earliest) + 1);
    radix[i] = slots * static_cast<std::size_t>(in.num_runways);
  }
  auto landing = [&](std::size_t i, std::size_t digit) {
    auto R = static_cast<std::size_t>(in.num_runways);
    return Landing{std::ceil(in.planes[i].earliest) + static_cast<double>(digit / R),
                   static_cast<double>(digit % R + 1)};
  };
  CandidateSolution cand{DomainId::AircraftLanding, AircraftSolution{}};
  auto& sol = std::get<AircraftSolution>(cand.payload);
  do {
    sol.schedule.clear();
    for (std::size_t i = 0; i < P; ++i) sol.schedule[static_cast<int>(i + 1)] = landing(i, digits[i]);
    visit(cand, judge_aircraft(in, sol));
  } while (advance(digits, radix));

  // Probes: window, runway, missing and unknown entries.
  std::fill(digits.begin(), digits.end(), 0);
  AircraftSolution base;
  for (std::size_t i = 0; i < P; ++i) base.schedule[static_cast<int>(i + 1)] = landing(i, 0);
  std::vector<AircraftSolution> probes(4, base);
  probes[0].schedule[1].landing_time = in.planes[0].earliest - 1;
  probes[1].schedule[1].runway = in.num_runways + 1;
  probes[2].schedule.erase(1);
  probes[3].schedule[static_cast<int>(P + 1)] = Landing{0, 1};
  for (auto& p : probes) {
    sol = p;
    visit(cand, judge_aircraft(in, sol));
  }
}

// --- periodic vehicle routing -------------------------------------------------------

OracleVerdict judge_pvrp(const PvrpInstance& in, const PvrpSolution& sol) {
  const auto N = static_cast<int>(in.customers.size());
  const int D = in.period_length;
  if (static_cast<int>(sol.selected_schedules.size()) != N) return kInfeasible;
  for (const auto& [id, s] : sol.selected_schedules) {
    if (id < 1 || id > N) return kInfeasible;
    const auto& options = in.customers[static_cast<std::size_t>(id - 1)].schedules;
    if (std::count(options.begin(), options.end(), s) == 0) return kInfeasible;
  }
  // visits[d][c] for c in 0..N (0 unused)
  std::vector<std::vector<int>> visits(static_cast<std::size_t>(D), std::vector<int>(static_cast<std::size_t>(N + 1), 0));
  std::vector<std::vector<double>> dist(static_cast<std::size_t>(N + 1), std::vector<double>(static_cast<std::size_t>(N + 1)));
  for (int a = 0; a <= N; ++a) {
    for (int b = 0; b <= N; ++b) {
      Point2 pa = a ? in.customers[static_cast<std::size_t>(a - 1)].coords : in.depot;
      Point2 pb = b ? in.customers[static_cast<std::size_t>(b - 1)].coords : in.depot;
      dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = distance(pa, pb);
    }
  }
  double length = 0.0;
  for (const auto& [d, tours] : sol.tours) {
    if (d < 1 || d > D) return kInfeasible;
    if (static_cast<int>(tours.size()) > in.vehicles_per_day[static_cast<std::size_t>(d - 1)]) return kInfeasible;
    for (const auto& tour : tours) {
      if (tour.size() < 2 || tour.front() != 0 || tour.back() != 0) return kInfeasible;
      double load = 0.0;
      for (std::size_t k = 1; k + 1 < tour.size(); ++k) {
        int c = tour[k];
        if (c < 1 || c > N) return kInfeasible;
        ++visits[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(c)];
        load += in.customers[static_cast<std::size_t>(c - 1)].demand;
      }
      if (load > in.vehicle_capacity) return kInfeasible;
      for (std::size_t k = 0; k + 1 < tour.size(); ++k) {
        length += dist[static_cast<std::size_t>(tour[k])][static_cast<std::size_t>(tour[k + 1])];
      }
    }
  }
  for (int d = 0; d < D; ++d) {
    for (int c = 1; c <= N; ++c) {
      if (visits[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)] !=
          sol.selected_schedules.at(c)[static_cast<std::size_t>(d)]) {
        return kInfeasible;
      }
    }
  }
  return {true, length};
}

void enumerate_pvrp(const PvrpInstance& in, const OracleVisitor& visit) {
  const std::size_t N = in.customers.size();
  const auto D = static_cast<std::size_t>(in.period_length);
  std::vector<std::size_t> choice_radix(N), choice(N, 0);
  for (std::size_t i = 0; i < N; ++i) choice_radix[i] = in.customers[i].schedules.size();

  CandidateSolution cand{DomainId::PeriodicVehicleRouting, PvrpSolution{}};
  auto& sol = std::get<PvrpSolution>(cand.payload);
  do {
    std::vector<std::vector<Lists>> per_day(D);
    std::vector<std::size_t> radix(D), digits(D, 0);
    for (std::size_t d = 0; d < D; ++d) {
      std::vector<int> visited;
      for (std::size_t i = 0; i < N; ++i) {
        if (in.customers[i].schedules[choice[i]][d] == 1) visited.push_back(static_cast<int>(i + 1));
      }
      per_day[d] = all_arrangements(visited);
      radix[d] = per_day[d].size();
    }
    do {
      sol.selected_schedules.clear();
      sol.tours.clear();
      for (std::size_t i = 0; i < N; ++i) {
        sol.selected_schedules[static_cast<int>(i + 1)] = in.customers[i].schedules[choice[i]];
      }
      for (std::size_t d = 0; d < D; ++d) {
        const Lists& lists = per_day[d][digits[d]];
        if (lists.empty()) continue;
        auto& tours = sol.tours[static_cast<int>(d + 1)];
        for (const auto& l : lists) {
          std::vector<int> tour{0};
          tour.insert(tour.end(), l.begin(), l.end());
          tour.push_back(0);
          tours.push_back(std::move(tour));
        }
      }
      visit(cand, judge_pvrp(in, sol));
    } while (advance(digits, radix));
  } while (advance(choice, choice_radix));

  // Probes built from the last candidate visited.
  PvrpSolution base = sol;
  std::vector<PvrpSolution> probes(5, base);
  probes[0].selected_schedules[1].push_back(1);  // not a candidate schedule
  probes[1].tours[1].push_back({0, 1, 1, 0});
  probes[2].tours[1].push_back({0, static_cast<int>(N) + 1, 0});
  probes[3].tours[1].push_back({0, 0});
  probes[4].tours.clear();
  for (auto& p : probes) {
    sol = p;
    visit(cand, judge_pvrp(in, sol));
  }
}

// --- container loading -----------------------------------------------------------

struct Voxels {
  std::array<I64, 3> side;
  std::vector<int> owner;  // -1 free
  explicit Voxels(const std::array<I64, 3>& s) : side(s), owner(static_cast<std::size_t>(s[0] * s[1] * s[2]), -1) {}
  int& at(I64 x, I64 y, I64 z) { return owner[static_cast<std::size_t>((z * side[1] + y) * side[0] + x)]; }
  // Marks a cuboid; false if any cell is taken or outside.
  bool fill(const std::array<I64, 3>& lo, const std::array<I64, 3>& size, int id) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (lo[k] < 0 || lo[k] + size[k] > side[k]) return false;
    }
    for (I64 z = lo[2]; z < lo[2] + size[2]; ++z)
      for (I64 y = lo[1]; y < lo[1] + size[1]; ++y)
        for (I64 x = lo[0]; x < lo[0] + size[0]; ++x) {
          int& cell = at(x, y, z);
          if (cell != -1) return false;
          cell = id;
        }
    return true;
  }
};

// Extents with vertical dimension `v`; the remaining two in index order, swapped on request.
std::array<I64, 3> extents(const BoxType& box, I64 v, bool swap) {
  static constexpr int kOthers[3][2] = {{1, 2}, {0, 2}, {0, 1}};
  I64 a = box.dims[static_cast<std::size_t>(kOthers[v][0])];
  I64 b = box.dims[static_cast<std::size_t>(kOthers[v][1])];
  if (swap) std::swap(a, b);
  return {a, b, box.dims[static_cast<std::size_t>(v)]};
}

OracleVerdict judge_container(const ContainerInstance& in, const ContainerSolution& sol) {
  Voxels grid(in.container);
  std::vector<int> used(in.box_types.size(), 0);
  I64 volume = 0;
  for (std::size_t i = 0; i < sol.placements.size(); ++i) {
    const ContainerPlacement& p = sol.placements[i];
    if (p.box_type < 0 || p.box_type >= static_cast<I64>(in.box_types.size())) return kInfeasible;
    if (p.container_id != 0 || p.v < 0 || p.v > 2 || p.hswap < 0 || p.hswap > 1) return kInfeasible;
    const BoxType& box = in.box_types[static_cast<std::size_t>(p.box_type)];
    if (!box.flags[static_cast<std::size_t>(p.v)]) return kInfeasible;
    if (!grid.fill({p.x, p.y, p.z}, extents(box, p.v, p.hswap == 1), static_cast<int>(i))) return kInfeasible;
    if (++used[static_cast<std::size_t>(p.box_type)] > box.count) return kInfeasible;
    volume += box.dims[0] * box.dims[1] * box.dims[2];
  }
  return {true, static_cast<double>(volume) / static_cast<double>(in.container[0] * in.container[1] * in.container[2])};
}

OracleVerdict judge_container_weight(const ContainerInstance& in, const ContainerWeightSolution& sol) {
  Voxels grid(in.container);
  const std::size_t n = sol.placements.size();
  std::vector<int> used(in.box_types.size(), 0);
  std::vector<std::array<I64, 3>> size(n);
  for (std::size_t i = 0; i < n; ++i) {
    const WeightPlacement& p = sol.placements[i];
    if (p.box_type < 1 || p.box_type > static_cast<I64>(in.box_types.size())) return kInfeasible;
    if (p.orientation < 1 || p.orientation > 3) return kInfeasible;
    const BoxType& box = in.box_types[static_cast<std::size_t>(p.box_type - 1)];
    if (!box.flags[static_cast<std::size_t>(p.orientation - 1)]) return kInfeasible;
    size[i] = extents(box, p.orientation - 1, false);
    if (!grid.fill({p.x, p.y, p.z}, size[i], static_cast<int>(i))) return kInfeasible;
    if (++used[static_cast<std::size_t>(p.box_type - 1)] > box.count) return kInfeasible;
  }
  // The layer under a lifted box must belong entirely to one box whose top is flush.
  std::vector<int> below(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const WeightPlacement& p = sol.placements[i];
    if (p.z == 0) continue;
    int owner = grid.at(p.x, p.y, p.z - 1);
    if (owner < 0) return kInfeasible;
    const WeightPlacement& q = sol.placements[static_cast<std::size_t>(owner)];
    if (q.z + size[static_cast<std::size_t>(owner)][2] != p.z) return kInfeasible;
    for (I64 y = p.y; y < p.y + size[i][1]; ++y)
      for (I64 x = p.x; x < p.x + size[i][0]; ++x)
        if (grid.at(x, y, p.z - 1) != owner) return kInfeasible;
    below[i] = owner;
  }
  std::vector<double> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    weight[i] = *in.box_types[static_cast<std::size_t>(sol.placements[i].box_type - 1)].weight;
  }
  // carried[j] = weight of everything whose support chain passes through j.
  std::vector<double> carried(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int j = below[i]; j >= 0; j = below[static_cast<std::size_t>(j)]) carried[static_cast<std::size_t>(j)] += weight[i];
  }
  I64 volume = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const WeightPlacement& p = sol.placements[i];
    const BoxType& box = in.box_types[static_cast<std::size_t>(p.box_type - 1)];
    if (carried[i] > (*box.load_bearing)[static_cast<std::size_t>(p.orientation - 1)]) return kInfeasible;
    volume += box.dims[0] * box.dims[1] * box.dims[2];
  }
  return {true, static_cast<double>(volume) / static_cast<double>(in.container[0] * in.container[1] * in.container[2])};
}

// One option per box: unplaced (nullopt), each in-bounds position per shape,
// plus one position per shape that pokes out of the container.
struct Option {
  bool placed = false;
  I64 x = 0, y = 0, z = 0, v = 0, swap = 0;
};

std::vector<Option> box_options(const ContainerInstance& in, const BoxType& box, bool weighted) {
  std::vector<Option> out{Option{}};
  auto add = [&](I64 v, I64 swap, const std::array<I64, 3>& d) {
    for (I64 z = 0; z + d[2] <= in.container[2]; ++z)
      for (I64 y = 0; y + d[1] <= in.container[1]; ++y)
        for (I64 x = 0; x + d[0] <= in.container[0]; ++x) out.push_back({true, x, y, z, v, swap});
    out.push_back({true, in.container[0] - d[0] + 1, 0, 0, v, swap});
  };
  if (weighted) {
    for (I64 v = 0; v < 3; ++v) add(v, 0, extents(box, v, false));
  } else {
    for (I64 v = 0; v < 3; ++v)
      for (I64 s = 0; s < 2; ++s) add(v, s, extents(box, v, s == 1));
  }
  return out;
}

void enumerate_container(const ProblemInstance& instance, const OracleVisitor& visit) {
  const auto& in = instance.as<ContainerInstance>();
  const bool weighted = instance.domain == DomainId::ContainerLoadingWeight;
  const std::size_t T = in.box_types.size();
  std::vector<std::vector<Option>> options(T);
  std::vector<std::vector<std::vector<std::size_t>>> choices(T);
  std::vector<std::size_t> radix(T), digits(T, 0);
  for (std::size_t t = 0; t < T; ++t) {
    options[t] = box_options(in, in.box_types[t], weighted);
    choices[t] = multisets(options[t].size(), in.box_types[t].count);
    radix[t] = choices[t].size();
  }

  CandidateSolution cand;
  cand.domain = instance.domain;
  auto emit = [&](const std::vector<std::pair<std::size_t, Option>>& picks) {
    if (weighted) {
      ContainerWeightSolution sol;
      for (const auto& [t, o] : picks) {
        sol.placements.push_back({static_cast<I64>(t) + 1, o.v + 1, o.x, o.y, o.z});
      }
      OracleVerdict verdict = judge_container_weight(in, sol);
      cand.payload = std::move(sol);
      visit(cand, verdict);
    } else {
      ContainerSolution sol;
      for (const auto& [t, o] : picks) {
        sol.placements.push_back({static_cast<I64>(t), 0, o.x, o.y, o.z, o.v, o.swap});
      }
      OracleVerdict verdict = judge_container(in, sol);
      cand.payload = std::move(sol);
      visit(cand, verdict);
    }
  };

  std::vector<std::pair<std::size_t, Option>> picks;
  do {
    picks.clear();
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t idx : choices[t][digits[t]]) {
        if (options[t][idx].placed) picks.push_back({t, options[t][idx]});
      }
    }
    emit(picks);
  } while (advance(digits, radix));

  // Probes: one box too many of type 0 (spread out so the count rule is what
  // fails when space allows), an unknown box type and a second container.
  Option corner{true, 0, 0, 0, 0, 0};
  for (I64 v = 0; v < 3; ++v) {
    if (in.box_types[0].flags[static_cast<std::size_t>(v)]) {
      corner.v = v;
      break;
    }
  }
  std::vector<std::pair<std::size_t, Option>> extra;
  Voxels taken(in.container);
  for (const Option& o : options[0]) {
    if (static_cast<int>(extra.size()) > in.box_types[0].count) break;
    if (!o.placed || !in.box_types[0].flags[static_cast<std::size_t>(o.v)]) continue;
    Voxels trial = taken;
    if (!trial.fill({o.x, o.y, o.z}, extents(in.box_types[0], o.v, o.swap == 1), 0)) continue;
    taken = std::move(trial);
    extra.push_back({0, o});
  }
  while (static_cast<int>(extra.size()) <= in.box_types[0].count) extra.push_back({0, corner});
  emit(extra);
  emit({{T, corner}});
  if (!weighted) {
    ContainerSolution sol;
    sol.placements.push_back({0, 1, 0, 0, 0, corner.v, 0});
    OracleVerdict verdict = judge_container(in, sol);
    cand.payload = std::move(sol);
    visit(cand, verdict);
  }
}

// --- rcsp ----------------------------------------------------------------------------

OracleVerdict judge_rcsp(const RcspInstance& in, const RcspSolution& sol) {
  const auto n = static_cast<std::size_t>(in.n);
  const auto K = static_cast<std::size_t>(in.K);
  // Dense table of the first listed arc for each ordered pair.
  std::vector<const RcspArc*> table(n * n, nullptr);
  for (std::size_t u = 0; u < n; ++u) {
    for (const RcspArc& a : in.graph[u]) {
      auto v = static_cast<std::size_t>(a.end_vertex - 1);
      if (!table[u * n + v]) table[u * n + v] = &a;
    }
  }
  const auto& path = sol.path;
  if (path.empty()) return kInfeasible;
  for (int v : path) {
    if (v < 1 || v > in.n) return kInfeasible;
  }
  if (path.front() != 1 || path.back() != in.n) return kInfeasible;
  std::vector<double> total(K, 0.0);
  double cost = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    auto u = static_cast<std::size_t>(path[i] - 1);
    for (std::size_t k = 0; k < K; ++k) total[k] += in.vertex_resources[u][k];
    if (i + 1 == path.size()) break;
    const RcspArc* a = table[u * n + static_cast<std::size_t>(path[i + 1] - 1)];
    if (!a) return kInfeasible;
    cost += a->cost;
    for (std::size_t k = 0; k < K; ++k) total[k] += a->arc_resources[k];
  }
  for (std::size_t k = 0; k < K; ++k) {
    if (total[k] < in.lower_bounds[k] || total[k] > in.upper_bounds[k]) return kInfeasible;
  }
  return {true, cost};
}

void enumerate_rcsp(const RcspInstance& in, const OracleVisitor& visit) {
  CandidateSolution cand{DomainId::Rcsp, RcspSolution{}};
  auto& sol = std::get<RcspSolution>(cand.payload);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << in.n); ++mask) {
    sol.path.clear();
    for (int v = 1; v <= in.n; ++v) {
      if (mask >> (v - 1) & 1) sol.path.push_back(v);
    }
    visit(cand, judge_rcsp(in, sol));
  }
  for (std::vector<int> probe : {std::vector<int>{}, std::vector<int>{1, in.n + 1}, std::vector<int>{1, in.n, 1}}) {
    sol.path = probe;
    visit(cand, judge_rcsp(in, sol));
  }
}

// --- crew scheduling -----------------------------------------------------------------

OracleVerdict judge_crew(const CrewInstance& in, const CrewSolution& sol) {
  const auto N = static_cast<std::size_t>(in.N());
  std::vector<double> arc(N * N, std::numeric_limits<double>::quiet_NaN());
  for (const auto& [key, c] : in.arcs) {
    if (key.first >= 1 && key.second >= 1 && static_cast<std::size_t>(key.first) <= N &&
        static_cast<std::size_t>(key.second) <= N) {
      arc[static_cast<std::size_t>(key.first - 1) * N + static_cast<std::size_t>(key.second - 1)] = c;
    }
  }
  if (static_cast<int>(sol.crews.size()) > in.K) return kInfeasible;
  std::vector<int> seen(N, 0);
  double cost = 0.0;
  for (const auto& list : sol.crews) {
    if (list.empty()) return kInfeasible;
    for (int t : list) {
      if (t < 1 || static_cast<std::size_t>(t) > N) return kInfeasible;
      ++seen[static_cast<std::size_t>(t - 1)];
    }
    const CrewTask& first = in.tasks[static_cast<std::size_t>(list.front() - 1)];
    const CrewTask& last = in.tasks[static_cast<std::size_t>(list.back() - 1)];
    if (last.finish_time - first.start_time > in.time_limit) return kInfeasible;
    for (std::size_t k = 1; k < list.size(); ++k) {
      auto a = static_cast<std::size_t>(list[k - 1] - 1), b = static_cast<std::size_t>(list[k] - 1);
      if (in.tasks[a].finish_time > in.tasks[b].start_time) return kInfeasible;
      double c = arc[a * N + b];
      if (std::isnan(c)) return kInfeasible;
      cost += c;
    }
  }
  for (int s : seen) {
    if (s != 1) return kInfeasible;
  }
  return {true, cost};
}

void enumerate_crew(const CrewInstance& in, const OracleVisitor& visit) {
  std::vector<int> tasks(static_cast<std::size_t>(in.N()));
  std::iota(tasks.begin(), tasks.end(), 1);
  CandidateSolution cand{DomainId::CrewScheduling, CrewSolution{}};
  auto& sol = std::get<CrewSolution>(cand.payload);
  ordered_list_arrangements(tasks, [&](const Lists& lists) {
    sol.crews = lists;
    visit(cand, judge_crew(in, sol));
  });
  Lists singles;
  for (int t : tasks) singles.push_back({t});
  std::vector<Lists> probes(3, singles);
  probes[0].push_back({});
  probes[1].push_back({in.N() + 1});
  probes[2].push_back({1});
  for (auto& p : probes) {
    sol.crews = p;
    visit(cand, judge_crew(in, sol));
  }
}

// --- euclidean steiner --------------------------------------------------------------

double kruskal_length(const std::vector<Point2>& pts) {
  struct Edge {
    double w;
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      edges.push_back({std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y), i, j});
  std::sort(edges.begin(), edges.end(), [](const Edge& l, const Edge& r) { return l.w < r.w; });
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  double total = 0.0;
  for (const Edge& e : edges) {
    std::size_t ra = root(e.a), rb = root(e.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    total += e.w;
  }
  return total;
}

OracleVerdict judge_steiner(const SteinerInstance& in, const SteinerSolution& sol) {
  double base = kruskal_length(in.points);
  std::vector<Point2> all = in.points;
  all.insert(all.end(), sol.steiner_points.begin(), sol.steiner_points.end());
  double with = kruskal_length(all);
  if (with > base + 1e-9) return kInfeasible;
  return {true, 1.0 - with / base};
}

void enumerate_steiner(const SteinerInstance& in, const OracleVisitor& visit) {
  CandidateSolution cand{DomainId::EuclideanSteiner, SteinerSolution{}};
  auto& sol = std::get<SteinerSolution>(cand.payload);
  auto run = [&](std::vector<Point2> pts) {
    sol.steiner_points = std::move(pts);
    visit(cand, judge_steiner(in, sol));
  };
  run({});
  double lo_x = in.points[0].x, hi_x = lo_x, lo_y = in.points[0].y, hi_y = lo_y;
  for (const Point2& p : in.points) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  for (int i = 0; i < kSteinerGrid; ++i) {
    for (int j = 0; j < kSteinerGrid; ++j) {
      run({{lo_x + (hi_x - lo_x) * (i + 0.5) / kSteinerGrid, lo_y + (hi_y - lo_y) * (j + 0.5) / kSteinerGrid}});
    }
  }
  const std::size_t t = in.points.size();
  for (std::size_t a = 0; a < t; ++a)
    for (std::size_t b = a + 1; b < t; ++b)
      for (std::size_t c = b + 1; c < t; ++c) run({fermat_point(in.points[a], in.points[b], in.points[c])});
  double span = std::max(hi_x - lo_x, hi_y - lo_y) + 1.0;
  run({{hi_x + 100.0 * span, hi_y + 100.0 * span}});
}

}  // namespace

void enumerate_oracle_candidates(const ProblemInstance& instance, const OracleVisitor& visit) {
  if (!within_small_bounds(instance)) {
    throw Error(ErrorKind::TooLarge, "instance " + instance.instance_id + " exceeds the small class");
  }
  switch (instance.domain) {
    case DomainId::AircraftLanding: enumerate_aircraft(instance.as<AircraftLandingInstance>(), visit); break;
    case DomainId::PeriodicVehicleRouting: enumerate_pvrp(instance.as<PvrpInstance>(), visit); break;
    case DomainId::ContainerLoading:
    case DomainId::ContainerLoadingWeight: enumerate_container(instance, visit); break;
    case DomainId::Rcsp: enumerate_rcsp(instance.as<RcspInstance>(), visit); break;
    case DomainId::CrewScheduling: enumerate_crew(instance.as<CrewInstance>(), visit); break;
    case DomainId::EuclideanSteiner: enumerate_steiner(instance.as<SteinerInstance>(), visit); break;
  }
}

RawOutcome oracle_solve(const ProblemInstance& instance) {
  const bool maximize = is_maximization(instance.domain);
  std::optional<double> best;
  enumerate_oracle_candidates(instance, [&](const CandidateSolution&, const OracleVerdict& v) {
    if (!v.feasible) return;
    if (!best || (maximize ? v.objective > *best : v.objective < *best)) best = v.objective;
  });
  if (!best) return RawOutcome::fail(Violation{"infeasible", {instance.instance_id}, "no feasible candidate"});
  return RawOutcome::ok(*best);
}

}  // namespace heursynth
