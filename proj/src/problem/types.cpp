#include "heursynth/problem/types.hpp"

namespace heursynth {

std::string_view domain_name(DomainId domain) {
  switch (domain) {
    case DomainId::AircraftLanding: return "aircraft-landing";
    case DomainId::PeriodicVehicleRouting: return "periodic-vehicle-routing";
    case DomainId::ContainerLoading: return "container-loading";
    case DomainId::ContainerLoadingWeight: return "container-loading-weight";
    case DomainId::Rcsp: return "rcsp";
    case DomainId::CrewScheduling: return "crew-scheduling";
    case DomainId::EuclideanSteiner: return "euclidean-steiner";
  }
  return "unknown";
}

std::optional<DomainId> parse_domain(std::string_view name) {
  for (DomainId d : kAllDomains) {
    if (domain_name(d) == name) return d;
  }
  return std::nullopt;
}

bool is_maximization(DomainId domain) {
  return domain == DomainId::ContainerLoading || domain == DomainId::ContainerLoadingWeight ||
         domain == DomainId::EuclideanSteiner;
}

std::array<std::int64_t, 3> oriented_dims(const BoxType& box, std::int64_t v, bool hswap) {
  std::array<std::int64_t, 2> horizontal{};
  std::size_t k = 0;
  for (std::int64_t i = 0; i < 3; ++i) {
    if (i != v) horizontal[k++] = box.dims[static_cast<std::size_t>(i)];
  }
  if (hswap) std::swap(horizontal[0], horizontal[1]);
  return {horizontal[0], horizontal[1], box.dims[static_cast<std::size_t>(v)]};
}

std::array<std::int64_t, 3> oriented_dims_weight(const BoxType& box, std::int64_t orientation) {
  return oriented_dims(box, orientation - 1, false);
}

int RcspInstance::arc_count() const {
  int total = 0;
  for (const auto& arcs : graph) total += static_cast<int>(arcs.size());
  return total;
}

const RcspArc* RcspInstance::find_arc(int from, int to) const {
  if (from < 1 || from > static_cast<int>(graph.size())) return nullptr;
  for (const RcspArc& a : graph[static_cast<std::size_t>(from - 1)]) {
    if (a.end_vertex == to) return &a;
  }
  return nullptr;
}

}  // namespace heursynth
