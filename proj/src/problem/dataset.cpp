#include "heursynth/problem/dataset.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "heursynth/common/error.hpp"
#include "heursynth/problem/serialize.hpp"

namespace heursynth {

std::string_view split_name(Split split) { return split == Split::Dev ? "dev" : "test"; }

Dataset parse_dataset(const Json& doc, Split split) {
  auto malformed = [](const std::string& what) { return Error(ErrorKind::MalformedSchema, what); };
  if (!doc.is_object()) throw malformed("dataset: expected JSON object");
  auto domain_it = doc.find("domain");
  if (domain_it == doc.end() || !domain_it->is_string()) {
    throw malformed("dataset: field 'domain' missing or not a string");
  }
  auto domain = parse_domain(domain_it->get<std::string>());
  if (!domain) throw malformed("dataset: unknown domain '" + domain_it->get<std::string>() + "'");
  auto split_it = doc.find("split");
  if (split_it == doc.end() || !split_it->is_string()) {
    throw malformed("dataset: field 'split' missing or not a string");
  }
  if (split_it->get<std::string>() != split_name(split)) {
    throw malformed("dataset: split is '" + split_it->get<std::string>() + "', expected '" +
                    std::string(split_name(split)) + "'");
  }
  auto inst_it = doc.find("instances");
  if (inst_it == doc.end() || !inst_it->is_array()) {
    throw malformed("dataset: field 'instances' missing or not an array");
  }
  if (inst_it->empty()) throw malformed("dataset: instance list must be non-empty");

  Dataset out;
  out.domain = *domain;
  out.split = split;
  std::set<std::string> seen;
  for (const Json& entry : *inst_it) {
    ProblemInstance instance = instance_from_json(*domain, entry);
    if (!seen.insert(instance.instance_id).second) {
      throw malformed("dataset: duplicate instance_id '" + instance.instance_id + "'");
    }
    out.instances.push_back(std::move(instance));
  }
  return out;
}

Dataset load_dataset(const std::filesystem::path& path, Split split) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open dataset " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::MalformedSchema, path.string() + ": " + e.what());
  }
  return parse_dataset(doc, split);
}

Json dataset_to_json(const Dataset& dataset) {
  Json instances = Json::array();
  for (const ProblemInstance& instance : dataset.instances) {
    instances.push_back(instance_to_json(instance));
  }
  return {{"domain", domain_name(dataset.domain)},
          {"split", split_name(dataset.split)},
          {"instances", instances}};
}

std::string serialize_dataset(const Dataset& dataset) {
  return dataset_to_json(dataset).dump(2) + "\n";
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write dataset " + path.string());
  out << serialize_dataset(dataset);
}

ProblemInstance attach_reference_objective(ProblemInstance instance, double oracle_value) {
  if (!std::isfinite(oracle_value)) {
    throw Error(ErrorKind::InvariantViolation, "reference objective must be finite");
  }
  if (instance.reference_objective && *instance.reference_objective != oracle_value) {
    std::ostringstream msg;
    msg << "instance '" << instance.instance_id << "' already has reference "
        << *instance.reference_objective << ", refusing " << oracle_value;
    throw Error(ErrorKind::ConflictingReference, msg.str());
  }
  instance.reference_objective = oracle_value;
  return instance;
}

}  // namespace heursynth
