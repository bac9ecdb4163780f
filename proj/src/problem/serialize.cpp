#include "heursynth/problem/serialize.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "heursynth/common/error.hpp"

namespace heursynth {
namespace {

// Reads typed values out of a JSON tree, reporting the offending path.
class Reader {
 public:
  explicit Reader(std::string context) : context_(std::move(context)) {}

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw Error(ErrorKind::MalformedSchema, context_ + ": field '" + path + "': " + what);
  }

  const Json& field(const Json& obj, const char* name, const std::string& path) const {
    if (!obj.is_object()) fail(path, "expected object");
    auto it = obj.find(name);
    if (it == obj.end()) fail(join(path, name), "missing");
    return *it;
  }

  const Json& array(const Json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected array");
    return j;
  }

  double number(const Json& j, const std::string& path) const {
    if (!j.is_number()) fail(path, "expected number");
    double value = j.get<double>();
    if (!std::isfinite(value)) fail(path, "expected finite number");
    return value;
  }

  std::int64_t integer(const Json& j, const std::string& path) const {
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) {
      double value = j.get<double>();
      if (std::isfinite(value) && std::floor(value) == value &&
          std::abs(value) < 9.0e15) {
        return static_cast<std::int64_t>(value);
      }
    }
    fail(path, "expected integer");
  }

  int small_int(const Json& j, const std::string& path) const {
    std::int64_t value = integer(j, path);
    if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
      fail(path, "integer out of range");
    }
    return static_cast<int>(value);
  }

  std::vector<double> numbers(const Json& j, const std::string& path) const {
    array(j, path);
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], index(path, i)));
    return out;
  }

  std::vector<int> ints(const Json& j, const std::string& path) const {
    array(j, path);
    std::vector<int> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(small_int(j[i], index(path, i)));
    return out;
  }

  Point2 point(const Json& j, const std::string& path) const {
    array(j, path);
    if (j.size() != 2) fail(path, "expected [x, y]");
    return {number(j[0], index(path, 0)), number(j[1], index(path, 1))};
  }

  int key_int(const std::string& key, const std::string& path) const {
    try {
      std::size_t used = 0;
      int value = std::stoi(key, &used);
      if (used == key.size()) return value;
    } catch (const std::exception&) {
    }
    fail(join(path, key), "expected integer key");
  }

  static std::string join(const std::string& path, const std::string& name) {
    return path.empty() ? name : path + "." + name;
  }
  static std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
  }

 private:
  std::string context_;
};

[[noreturn]] void violation(const ProblemInstance& instance, const std::string& what) {
  throw Error(ErrorKind::InvariantViolation, "instance '" + instance.instance_id + "': " + what);
}

// --- instance payload readers ------------------------------------------------

AircraftLandingInstance read_aircraft(const Reader& r, const Json& p) {
  AircraftLandingInstance out;
  int num_planes = r.small_int(r.field(p, "num_planes", ""), "num_planes");
  out.num_runways = r.small_int(r.field(p, "num_runways", ""), "num_runways");
  const Json& planes = r.array(r.field(p, "planes", ""), "planes");
  for (std::size_t i = 0; i < planes.size(); ++i) {
    std::string path = Reader::index("planes", i);
    const Json& e = planes[i];
    Plane plane;
    plane.earliest = r.number(r.field(e, "earliest", path), path + ".earliest");
    plane.target = r.number(r.field(e, "target", path), path + ".target");
    plane.latest = r.number(r.field(e, "latest", path), path + ".latest");
    plane.penalty_early = r.number(r.field(e, "penalty_early", path), path + ".penalty_early");
    plane.penalty_late = r.number(r.field(e, "penalty_late", path), path + ".penalty_late");
    out.planes.push_back(plane);
  }
  if (static_cast<int>(out.planes.size()) != num_planes) {
    r.fail("num_planes", "does not match length of planes");
  }
  const Json& sep = r.array(r.field(p, "separation", ""), "separation");
  for (std::size_t i = 0; i < sep.size(); ++i) {
    out.separation.push_back(r.numbers(sep[i], Reader::index("separation", i)));
  }
  return out;
}

PvrpInstance read_pvrp(const Reader& r, const Json& p) {
  PvrpInstance out;
  out.depot = r.point(r.field(p, "depot", ""), "depot");
  const Json& customers = r.array(r.field(p, "customers", ""), "customers");
  for (std::size_t i = 0; i < customers.size(); ++i) {
    std::string path = Reader::index("customers", i);
    const Json& c = customers[i];
    PvrpCustomer customer;
    customer.coords = r.point(r.field(c, "coords", path), path + ".coords");
    customer.demand = r.number(r.field(c, "demand", path), path + ".demand");
    const Json& schedules = r.array(r.field(c, "schedules", path), path + ".schedules");
    for (std::size_t s = 0; s < schedules.size(); ++s) {
      customer.schedules.push_back(r.ints(schedules[s], Reader::index(path + ".schedules", s)));
    }
    out.customers.push_back(std::move(customer));
  }
  out.period_length = r.small_int(r.field(p, "period_length", ""), "period_length");
  out.vehicles_per_day = r.ints(r.field(p, "vehicles_per_day", ""), "vehicles_per_day");
  out.vehicle_capacity = r.number(r.field(p, "vehicle_capacity", ""), "vehicle_capacity");
  return out;
}

ContainerInstance read_container(const Reader& r, const Json& p, bool weighted) {
  ContainerInstance out;
  const Json& c = r.array(r.field(p, "container", ""), "container");
  if (c.size() != 3) r.fail("container", "expected [length, width, height]");
  for (std::size_t k = 0; k < 3; ++k) out.container[k] = r.integer(c[k], Reader::index("container", k));
  const Json& types = r.array(r.field(p, "box_types", ""), "box_types");
  for (std::size_t i = 0; i < types.size(); ++i) {
    std::string path = Reader::index("box_types", i);
    const Json& t = types[i];
    BoxType box;
    const Json& dims = r.array(r.field(t, "dims", path), path + ".dims");
    const Json& flags = r.array(r.field(t, "flags", path), path + ".flags");
    if (dims.size() != 3) r.fail(path + ".dims", "expected 3 side lengths");
    if (flags.size() != 3) r.fail(path + ".flags", "expected 3 flags");
    for (std::size_t k = 0; k < 3; ++k) {
      box.dims[k] = r.integer(dims[k], Reader::index(path + ".dims", k));
      box.flags[k] = r.small_int(flags[k], Reader::index(path + ".flags", k));
    }
    box.count = r.small_int(r.field(t, "count", path), path + ".count");
    bool has_weight = t.contains("weight");
    bool has_lb = t.contains("lb1") || t.contains("lb2") || t.contains("lb3");
    if (weighted) {
      box.weight = r.number(r.field(t, "weight", path), path + ".weight");
      std::array<double, 3> lb{};
      lb[0] = r.number(r.field(t, "lb1", path), path + ".lb1");
      lb[1] = r.number(r.field(t, "lb2", path), path + ".lb2");
      lb[2] = r.number(r.field(t, "lb3", path), path + ".lb3");
      box.load_bearing = lb;
    } else if (has_weight || has_lb) {
      r.fail(path, "weight/load-bearing fields are only allowed for container-loading-weight");
    }
    out.box_types.push_back(box);
  }
  return out;
}

RcspInstance read_rcsp(const Reader& r, const Json& p) {
  RcspInstance out;
  out.n = r.small_int(r.field(p, "n", ""), "n");
  int m = r.small_int(r.field(p, "m", ""), "m");
  out.K = r.small_int(r.field(p, "K", ""), "K");
  out.lower_bounds = r.numbers(r.field(p, "lower_bounds", ""), "lower_bounds");
  out.upper_bounds = r.numbers(r.field(p, "upper_bounds", ""), "upper_bounds");
  const Json& vr = r.array(r.field(p, "vertex_resources", ""), "vertex_resources");
  for (std::size_t i = 0; i < vr.size(); ++i) {
    out.vertex_resources.push_back(r.numbers(vr[i], Reader::index("vertex_resources", i)));
  }
  const Json& graph = r.field(p, "graph", "");
  if (!graph.is_object()) r.fail("graph", "expected object keyed by vertex");
  if (out.n < 0) r.fail("n", "expected non-negative vertex count");
  out.graph.assign(static_cast<std::size_t>(out.n), {});
  for (auto it = graph.begin(); it != graph.end(); ++it) {
    std::string path = Reader::join("graph", it.key());
    int from = r.key_int(it.key(), "graph");
    if (from < 1 || from > out.n) {
      throw Error(ErrorKind::InvariantViolation, "graph vertex " + it.key() + " outside 1..n");
    }
    const Json& arcs = r.array(it.value(), path);
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      std::string apath = Reader::index(path, a);
      const Json& arc = r.array(arcs[a], apath);
      if (arc.size() != 3) r.fail(apath, "expected [end_vertex, cost, arc_resources]");
      RcspArc parsed;
      parsed.end_vertex = r.small_int(arc[0], apath + "[0]");
      parsed.cost = r.number(arc[1], apath + "[1]");
      parsed.arc_resources = r.numbers(arc[2], apath + "[2]");
      out.graph[static_cast<std::size_t>(from - 1)].push_back(std::move(parsed));
    }
  }
  if (out.arc_count() != m) {
    throw Error(ErrorKind::InvariantViolation,
                "m = " + std::to_string(m) + " but graph lists " + std::to_string(out.arc_count()) +
                    " arcs");
  }
  return out;
}

CrewInstance read_crew(const Reader& r, const Json& p) {
  CrewInstance out;
  int N = r.small_int(r.field(p, "N", ""), "N");
  out.K = r.small_int(r.field(p, "K", ""), "K");
  out.time_limit = r.number(r.field(p, "time_limit", ""), "time_limit");
  const Json& tasks = r.field(p, "tasks", "");
  if (!tasks.is_object()) r.fail("tasks", "expected object keyed by task id");
  if (N < 0) r.fail("N", "expected non-negative task count");
  std::vector<std::optional<CrewTask>> slots(static_cast<std::size_t>(N));
  for (auto it = tasks.begin(); it != tasks.end(); ++it) {
    std::string path = Reader::join("tasks", it.key());
    int id = r.key_int(it.key(), "tasks");
    if (id < 1 || id > N) r.fail(path, "task id outside 1..N");
    const Json& t = r.array(it.value(), path);
    if (t.size() != 2) r.fail(path, "expected [start_time, finish_time]");
    slots[static_cast<std::size_t>(id - 1)] =
        CrewTask{r.number(t[0], path + "[0]"), r.number(t[1], path + "[1]")};
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) r.fail("tasks." + std::to_string(i + 1), "missing");
    out.tasks.push_back(*slots[i]);
  }
  const Json& arcs = r.array(r.field(p, "arcs", ""), "arcs");
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    std::string path = Reader::index("arcs", a);
    const Json& arc = r.array(arcs[a], path);
    if (arc.size() != 3) r.fail(path, "expected [from_task, to_task, cost]");
    int from = r.small_int(arc[0], path + "[0]");
    int to = r.small_int(arc[1], path + "[1]");
    double cost = r.number(arc[2], path + "[2]");
    if (!out.arcs.emplace(std::make_pair(from, to), cost).second) r.fail(path, "duplicate arc");
  }
  return out;
}

SteinerInstance read_steiner(const Reader& r, const Json& p) {
  SteinerInstance out;
  const Json& points = r.array(r.field(p, "points", ""), "points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.points.push_back(r.point(points[i], Reader::index("points", i)));
  }
  return out;
}

// --- writers -----------------------------------------------------------------

Json point_json(const Point2& p) { return Json::array({p.x, p.y}); }

Json aircraft_json(const AircraftLandingInstance& in) {
  Json planes = Json::array();
  for (const Plane& p : in.planes) {
    planes.push_back({{"earliest", p.earliest},
                      {"target", p.target},
                      {"latest", p.latest},
                      {"penalty_early", p.penalty_early},
                      {"penalty_late", p.penalty_late}});
  }
  return {{"num_planes", in.num_planes()},
          {"num_runways", in.num_runways},
          {"planes", planes},
          {"separation", in.separation}};
}

Json pvrp_json(const PvrpInstance& in) {
  Json customers = Json::array();
  for (const PvrpCustomer& c : in.customers) {
    customers.push_back(
        {{"coords", point_json(c.coords)}, {"demand", c.demand}, {"schedules", c.schedules}});
  }
  return {{"depot", point_json(in.depot)},
          {"customers", customers},
          {"period_length", in.period_length},
          {"vehicles_per_day", in.vehicles_per_day},
          {"vehicle_capacity", in.vehicle_capacity}};
}

Json container_json(const ContainerInstance& in) {
  Json types = Json::array();
  for (const BoxType& b : in.box_types) {
    Json t = {{"dims", b.dims}, {"flags", b.flags}, {"count", b.count}};
    if (b.weight) t["weight"] = *b.weight;
    if (b.load_bearing) {
      t["lb1"] = (*b.load_bearing)[0];
      t["lb2"] = (*b.load_bearing)[1];
      t["lb3"] = (*b.load_bearing)[2];
    }
    types.push_back(std::move(t));
  }
  return {{"container", in.container}, {"box_types", types}};
}

Json rcsp_json(const RcspInstance& in) {
  Json graph = Json::object();
  for (int v = 1; v <= in.n; ++v) {
    Json arcs = Json::array();
    for (const RcspArc& a : in.graph[static_cast<std::size_t>(v - 1)]) {
      arcs.push_back(Json::array({a.end_vertex, a.cost, a.arc_resources}));
    }
    graph[std::to_string(v)] = std::move(arcs);
  }
  return {{"n", in.n},
          {"m", in.arc_count()},
          {"K", in.K},
          {"lower_bounds", in.lower_bounds},
          {"upper_bounds", in.upper_bounds},
          {"vertex_resources", in.vertex_resources},
          {"graph", graph}};
}

Json crew_json(const CrewInstance& in) {
  Json tasks = Json::object();
  for (int i = 1; i <= in.N(); ++i) {
    const CrewTask& t = in.tasks[static_cast<std::size_t>(i - 1)];
    tasks[std::to_string(i)] = Json::array({t.start_time, t.finish_time});
  }
  Json arcs = Json::array();
  for (const auto& [key, cost] : in.arcs) arcs.push_back(Json::array({key.first, key.second, cost}));
  return {{"N", in.N()},
          {"K", in.K},
          {"time_limit", in.time_limit},
          {"tasks", tasks},
          {"arcs", arcs}};
}

Json steiner_json(const SteinerInstance& in) {
  Json points = Json::array();
  for (const Point2& p : in.points) points.push_back(point_json(p));
  return {{"points", points}};
}

bool payload_matches_domain(DomainId domain, const InstancePayload& payload) {
  switch (domain) {
    case DomainId::AircraftLanding: return std::holds_alternative<AircraftLandingInstance>(payload);
    case DomainId::PeriodicVehicleRouting: return std::holds_alternative<PvrpInstance>(payload);
    case DomainId::ContainerLoading:
    case DomainId::ContainerLoadingWeight: return std::holds_alternative<ContainerInstance>(payload);
    case DomainId::Rcsp: return std::holds_alternative<RcspInstance>(payload);
    case DomainId::CrewScheduling: return std::holds_alternative<CrewInstance>(payload);
    case DomainId::EuclideanSteiner: return std::holds_alternative<SteinerInstance>(payload);
  }
  return false;
}

}  // namespace

Json payload_to_json(const ProblemInstance& instance) {
  return std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, AircraftLandingInstance>) return aircraft_json(p);
        if constexpr (std::is_same_v<T, PvrpInstance>) return pvrp_json(p);
        if constexpr (std::is_same_v<T, ContainerInstance>) return container_json(p);
        if constexpr (std::is_same_v<T, RcspInstance>) return rcsp_json(p);
        if constexpr (std::is_same_v<T, CrewInstance>) return crew_json(p);
        if constexpr (std::is_same_v<T, SteinerInstance>) return steiner_json(p);
      },
      instance.payload);
}

Json instance_to_json(const ProblemInstance& instance) {
  Json out = {{"instance_id", instance.instance_id}, {"payload", payload_to_json(instance)}};
  out["reference_objective"] =
      instance.reference_objective ? Json(*instance.reference_objective) : Json(nullptr);
  return out;
}

ProblemInstance instance_from_json(DomainId domain, const Json& entry) {
  Reader top("dataset entry");
  if (!entry.is_object()) top.fail("instances[]", "expected object");
  const Json& id = top.field(entry, "instance_id", "");
  if (!id.is_string()) top.fail("instance_id", "expected string");

  ProblemInstance instance;
  instance.instance_id = id.get<std::string>();
  instance.domain = domain;
  Reader r("instance '" + instance.instance_id + "'");
  const Json& payload = r.field(entry, "payload", "");
  if (!payload.is_object()) r.fail("payload", "expected object");

  switch (domain) {
    case DomainId::AircraftLanding: instance.payload = read_aircraft(r, payload); break;
    case DomainId::PeriodicVehicleRouting: instance.payload = read_pvrp(r, payload); break;
    case DomainId::ContainerLoading: instance.payload = read_container(r, payload, false); break;
    case DomainId::ContainerLoadingWeight: instance.payload = read_container(r, payload, true); break;
    case DomainId::Rcsp:
      try {
        instance.payload = read_rcsp(r, payload);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvariantViolation) throw;
        throw Error(ErrorKind::InvariantViolation,
                    "instance '" + instance.instance_id + "': " + e.what());
      }
      break;
    case DomainId::CrewScheduling: instance.payload = read_crew(r, payload); break;
    case DomainId::EuclideanSteiner: instance.payload = read_steiner(r, payload); break;
  }

  if (auto it = entry.find("reference_objective"); it != entry.end() && !it->is_null()) {
    instance.reference_objective = r.number(*it, "reference_objective");
  }
  validate_instance(instance);
  return instance;
}

void validate_instance(const ProblemInstance& instance) {
  if (!payload_matches_domain(instance.domain, instance.payload)) {
    violation(instance, "payload type does not match domain " +
                            std::string(domain_name(instance.domain)));
  }
  if (instance.reference_objective && !std::isfinite(*instance.reference_objective)) {
    violation(instance, "reference_objective must be finite");
  }
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, AircraftLandingInstance>) {
          if (p.planes.empty()) violation(instance, "num_planes must be positive");
          if (p.num_runways < 1) violation(instance, "num_runways must be positive");
          for (std::size_t i = 0; i < p.planes.size(); ++i) {
            const Plane& pl = p.planes[i];
            std::string who = "plane " + std::to_string(i + 1);
            if (!(pl.earliest <= pl.target && pl.target <= pl.latest)) {
              violation(instance, who + ": requires earliest <= target <= latest");
            }
            if (pl.penalty_early < 0 || pl.penalty_late < 0) {
              violation(instance, who + ": penalties must be non-negative");
            }
          }
          if (p.separation.size() != p.planes.size()) {
            violation(instance, "separation must be num_planes x num_planes");
          }
          for (const auto& row : p.separation) {
            if (row.size() != p.planes.size()) {
              violation(instance, "separation must be num_planes x num_planes");
            }
            for (double s : row) {
              if (s < 0) violation(instance, "separation entries must be non-negative");
            }
          }
        } else if constexpr (std::is_same_v<T, PvrpInstance>) {
          if (p.period_length < 1) violation(instance, "period_length must be positive");
          if (static_cast<int>(p.vehicles_per_day.size()) != p.period_length) {
            violation(instance, "vehicles_per_day must have period_length entries");
          }
          for (int v : p.vehicles_per_day) {
            if (v < 1) violation(instance, "vehicles_per_day entries must be positive");
          }
          if (!(p.vehicle_capacity > 0)) violation(instance, "vehicle_capacity must be positive");
          for (std::size_t i = 0; i < p.customers.size(); ++i) {
            const PvrpCustomer& c = p.customers[i];
            std::string who = "customer " + std::to_string(i + 1);
            if (c.demand < 0) violation(instance, who + ": demand must be non-negative");
            if (c.schedules.empty()) violation(instance, who + ": needs at least one schedule");
            for (const auto& s : c.schedules) {
              if (static_cast<int>(s.size()) != p.period_length) {
                violation(instance, who + ": schedule length must equal period_length");
              }
              for (int bit : s) {
                if (bit != 0 && bit != 1) violation(instance, who + ": schedules must be binary");
              }
            }
          }
        } else if constexpr (std::is_same_v<T, ContainerInstance>) {
          for (auto side : p.container) {
            if (side < 1) violation(instance, "container sides must be positive");
          }
          bool weighted = instance.domain == DomainId::ContainerLoadingWeight;
          for (std::size_t i = 0; i < p.box_types.size(); ++i) {
            const BoxType& b = p.box_types[i];
            std::string who = "box type " + std::to_string(i + 1);
            for (auto d : b.dims) {
              if (d < 1) violation(instance, who + ": dims must be positive");
            }
            int allowed = 0;
            for (int f : b.flags) {
              if (f != 0 && f != 1) violation(instance, who + ": flags must be binary");
              allowed += f;
            }
            if (allowed == 0) violation(instance, who + ": at least one flag must be 1");
            if (b.count < 1) violation(instance, who + ": count must be positive");
            if (weighted != (b.weight.has_value() && b.load_bearing.has_value())) {
              violation(instance, who + ": weight/load-bearing presence does not match domain");
            }
            if (b.weight && *b.weight < 0) violation(instance, who + ": weight must be non-negative");
            if (b.load_bearing) {
              for (double lb : *b.load_bearing) {
                if (lb < 0) violation(instance, who + ": load-bearing limits must be non-negative");
              }
            }
          }
        } else if constexpr (std::is_same_v<T, RcspInstance>) {
          if (p.n < 1) violation(instance, "n must be positive");
          if (p.K < 0) violation(instance, "K must be non-negative");
          auto K = static_cast<std::size_t>(p.K);
          if (p.lower_bounds.size() != K || p.upper_bounds.size() != K) {
            violation(instance, "bounds must have K entries");
          }
          for (std::size_t k = 0; k < K; ++k) {
            if (p.lower_bounds[k] > p.upper_bounds[k]) {
              violation(instance, "lower_bounds[" + std::to_string(k) + "] > upper_bounds");
            }
          }
          if (p.vertex_resources.size() != static_cast<std::size_t>(p.n)) {
            violation(instance, "vertex_resources must have n rows");
          }
          for (const auto& row : p.vertex_resources) {
            if (row.size() != K) violation(instance, "vertex_resources rows must have K entries");
            for (double x : row) {
              if (x < 0) violation(instance, "vertex_resources must be non-negative");
            }
          }
          if (p.graph.size() != static_cast<std::size_t>(p.n)) {
            violation(instance, "graph must cover vertices 1..n");
          }
          for (const auto& arcs : p.graph) {
            for (const RcspArc& a : arcs) {
              if (a.end_vertex < 1 || a.end_vertex > p.n) {
                violation(instance, "arc end_vertex outside 1..n");
              }
              if (a.arc_resources.size() != K) violation(instance, "arc_resources must have K entries");
            }
          }
        } else if constexpr (std::is_same_v<T, CrewInstance>) {
          if (p.K < 1) violation(instance, "K must be positive");
          if (!(p.time_limit > 0)) violation(instance, "time_limit must be positive");
          for (std::size_t i = 0; i < p.tasks.size(); ++i) {
            if (p.tasks[i].start_time > p.tasks[i].finish_time) {
              violation(instance, "task " + std::to_string(i + 1) + ": start_time > finish_time");
            }
          }
          for (const auto& [key, cost] : p.arcs) {
            if (key.first < 1 || key.first > p.N() || key.second < 1 || key.second > p.N()) {
              violation(instance, "arc endpoints must be task ids");
            }
            (void)cost;
          }
        } else if constexpr (std::is_same_v<T, SteinerInstance>) {
          if (p.points.size() < 2) violation(instance, "at least two terminals required");
          for (std::size_t i = 0; i < p.points.size(); ++i) {
            for (std::size_t j = i + 1; j < p.points.size(); ++j) {
              if (std::abs(p.points[i].x - p.points[j].x) <= 1e-12 &&
                  std::abs(p.points[i].y - p.points[j].y) <= 1e-12) {
                violation(instance, "duplicate terminal " + std::to_string(j + 1));
              }
            }
          }
        }
      },
      instance.payload);
}

// --- solutions ---------------------------------------------------------------

Json solution_to_json(const CandidateSolution& solution) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AircraftSolution>) {
          Json schedule = Json::object();
          for (const auto& [id, landing] : s.schedule) {
            schedule[std::to_string(id)] = {{"landing_time", landing.landing_time},
                                            {"runway", landing.runway}};
          }
          return {{"schedule", schedule}};
        } else if constexpr (std::is_same_v<T, PvrpSolution>) {
          Json selected = Json::object();
          for (const auto& [id, sched] : s.selected_schedules) selected[std::to_string(id)] = sched;
          Json tours = Json::object();
          for (const auto& [day, list] : s.tours) tours[std::to_string(day)] = list;
          return {{"selected_schedules", selected}, {"tours", tours}};
        } else if constexpr (std::is_same_v<T, ContainerSolution>) {
          Json placements = Json::array();
          for (const ContainerPlacement& p : s.placements) {
            placements.push_back(
                Json::array({p.box_type, p.container_id, p.x, p.y, p.z, p.v, p.hswap}));
          }
          return {{"placements", placements}};
        } else if constexpr (std::is_same_v<T, ContainerWeightSolution>) {
          Json placements = Json::array();
          for (const WeightPlacement& p : s.placements) {
            placements.push_back({{"box_type", p.box_type},
                                  {"orientation", p.orientation},
                                  {"x", p.x},
                                  {"y", p.y},
                                  {"z", p.z}});
          }
          return {{"placements", placements}};
        } else if constexpr (std::is_same_v<T, RcspSolution>) {
          return {{"path", s.path}};
        } else if constexpr (std::is_same_v<T, CrewSolution>) {
          return {{"crews", s.crews}};
        } else if constexpr (std::is_same_v<T, SteinerSolution>) {
          Json points = Json::array();
          for (const Point2& p : s.steiner_points) points.push_back(point_json(p));
          return {{"steiner_points", points}};
        }
      },
      solution.payload);
}

SolutionParse parse_solution(DomainId domain, const Json& payload) {
  Reader r("solution");
  SolutionParse out;
  try {
    if (!payload.is_object()) r.fail("", "expected object");
    CandidateSolution sol;
    sol.domain = domain;
    switch (domain) {
      case DomainId::AircraftLanding: {
        AircraftSolution s;
        const Json& schedule = r.field(payload, "schedule", "");
        if (!schedule.is_object()) r.fail("schedule", "expected object keyed by plane id");
        for (auto it = schedule.begin(); it != schedule.end(); ++it) {
          std::string path = "schedule." + it.key();
          int id = r.key_int(it.key(), "schedule");
          Landing landing;
          landing.landing_time = r.number(r.field(it.value(), "landing_time", path), path + ".landing_time");
          landing.runway = r.number(r.field(it.value(), "runway", path), path + ".runway");
          s.schedule[id] = landing;
        }
        sol.payload = std::move(s);
        break;
      }
      case DomainId::PeriodicVehicleRouting: {
        PvrpSolution s;
        const Json& selected = r.field(payload, "selected_schedules", "");
        if (!selected.is_object()) r.fail("selected_schedules", "expected object keyed by customer id");
        for (auto it = selected.begin(); it != selected.end(); ++it) {
          s.selected_schedules[r.key_int(it.key(), "selected_schedules")] =
              r.ints(it.value(), "selected_schedules." + it.key());
        }
        const Json& tours = r.field(payload, "tours", "");
        if (!tours.is_object()) r.fail("tours", "expected object keyed by day");
        for (auto it = tours.begin(); it != tours.end(); ++it) {
          std::string path = "tours." + it.key();
          int day = r.key_int(it.key(), "tours");
          const Json& list = r.array(it.value(), path);
          std::vector<std::vector<int>> day_tours;
          for (std::size_t t = 0; t < list.size(); ++t) {
            day_tours.push_back(r.ints(list[t], Reader::index(path, t)));
          }
          s.tours[day] = std::move(day_tours);
        }
        sol.payload = std::move(s);
        break;
      }
      case DomainId::ContainerLoading: {
        ContainerSolution s;
        const Json& list = r.array(r.field(payload, "placements", ""), "placements");
        for (std::size_t i = 0; i < list.size(); ++i) {
          std::string path = Reader::index("placements", i);
          const Json& p = r.array(list[i], path);
          if (p.size() != 7) r.fail(path, "expected 7 integers");
          std::array<std::int64_t, 7> v{};
          for (std::size_t k = 0; k < 7; ++k) v[k] = r.integer(p[k], Reader::index(path, k));
          s.placements.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
        }
        sol.payload = std::move(s);
        break;
      }
      case DomainId::ContainerLoadingWeight: {
        ContainerWeightSolution s;
        const Json& list = r.array(r.field(payload, "placements", ""), "placements");
        for (std::size_t i = 0; i < list.size(); ++i) {
          std::string path = Reader::index("placements", i);
          const Json& p = list[i];
          WeightPlacement wp;
          wp.box_type = r.integer(r.field(p, "box_type", path), path + ".box_type");
          wp.orientation = r.integer(r.field(p, "orientation", path), path + ".orientation");
          wp.x = r.integer(r.field(p, "x", path), path + ".x");
          wp.y = r.integer(r.field(p, "y", path), path + ".y");
          wp.z = r.integer(r.field(p, "z", path), path + ".z");
          s.placements.push_back(wp);
        }
        sol.payload = std::move(s);
        break;
      }
      case DomainId::Rcsp: {
        RcspSolution s;
        s.path = r.ints(r.field(payload, "path", ""), "path");
        sol.payload = std::move(s);
        break;
      }
      case DomainId::CrewScheduling: {
        CrewSolution s;
        const Json& crews = r.array(r.field(payload, "crews", ""), "crews");
        for (std::size_t i = 0; i < crews.size(); ++i) {
          s.crews.push_back(r.ints(crews[i], Reader::index("crews", i)));
        }
        sol.payload = std::move(s);
        break;
      }
      case DomainId::EuclideanSteiner: {
        SteinerSolution s;
        const Json& pts = r.array(r.field(payload, "steiner_points", ""), "steiner_points");
        for (std::size_t i = 0; i < pts.size(); ++i) {
          s.steiner_points.push_back(r.point(pts[i], Reader::index("steiner_points", i)));
        }
        sol.payload = std::move(s);
        break;
      }
    }
    out.solution = std::move(sol);
  } catch (const Error& e) {
    out.error = e.what();
  } catch (const std::exception& e) {
    out.error = std::string("solution: ") + e.what();
  }
  return out;
}

}  // namespace heursynth
