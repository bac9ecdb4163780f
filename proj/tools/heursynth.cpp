// heursynth: synthesize, report, grade, generate, stability.

#include <CLI11.hpp>

#include <iostream>

#include "heursynth/common/error.hpp"
#include "heursynth/report/commands.hpp"

using namespace heursynth;

namespace {

void add_run_options(CLI::App* cmd, SynthesizeOptions& o, std::string& domain) {
  cmd->add_option("--config", o.config, "Config JSON with search, roles, sandbox and rates sections");
  cmd->add_option("--dev", o.dev, "Development dataset");
  cmd->add_option("--test", o.test, "Test dataset");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--domain", domain, "Expected domain of the datasets");
  cmd->add_option("--budget", o.budget, "Execution budget B");
  cmd->add_option("--depth-cap", o.depth_cap, "Per-branch depth cap n");
  cmd->add_option("--timeout", o.timeout, "Per-instance timeout T in seconds");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--templates", o.templates, "Directory overriding the built-in prompt templates");
  cmd->add_flag("--no-global", o.no_global, "Ablation: no global memory or reflection");
  cmd->add_flag("--no-branch-local", o.no_branch_local, "Ablation: refinement sees only the parent");
  cmd->add_flag("--no-failed-nodes", o.no_failed_nodes, "Ablation: hide invalid records from histories");
  cmd->add_flag("--flat-memory", o.flat_memory, "Variant: one shared run-wide history");
}

std::optional<DomainId> domain_or_throw(const std::string& name) {
  if (name.empty()) return std::nullopt;
  auto d = parse_domain(name);
  if (!d) throw CLI::ValidationError("--domain", "unknown domain " + name);
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memory-guided solver synthesis for combinatorial optimization"};
  app.require_subcommand(1);

  SynthesizeOptions synth;
  std::string synth_domain;
  auto* synthesize = app.add_subcommand("synthesize", "Run a search and evaluate the selected solver on test");
  add_run_options(synthesize, synth, synth_domain);
  synthesize->add_option("--run-id", synth.run_id, "Run id (default: output directory name)");

  SynthesizeOptions stab;
  std::string stab_domain;
  int runs = 3;
  auto* stability = app.add_subcommand("stability", "Repeat synthesis with consecutive seeds; report mean and stdev");
  add_run_options(stability, stab, stab_domain);
  stability->add_option("--runs", runs, "Number of runs (at least 2)");

  std::filesystem::path artifact;
  std::optional<std::filesystem::path> report_out;
  auto* report = app.add_subcommand("report", "Write CSV and JSON reports for a run directory");
  report->add_option("artifact", artifact, "Run directory")->required();
  report->add_option("--out", report_out, "Report directory (default: <artifact>/report)");

  std::string grade_domain;
  std::filesystem::path instance, solution;
  auto* grade = app.add_subcommand("grade", "Evaluate one solution against one instance");
  grade->add_option("--domain", grade_domain, "Problem domain")->required();
  grade->add_option("instance", instance, "Instance JSON")->required();
  grade->add_option("solution", solution, "Solution JSON")->required();

  GenerateOptions gen;
  std::string gen_domain, gen_size = "small", gen_split = "dev";
  auto* generate = app.add_subcommand("generate", "Generate a dataset with reference objectives");
  generate->add_option("--domain", gen_domain, "Problem domain")->required();
  generate->add_option("--size", gen_size, "small, medium or large");
  generate->add_option("--count", gen.count, "Number of instances");
  generate->add_option("--seed", gen.seed, "First seed");
  generate->add_option("--split", gen_split, "dev or test");
  generate->add_option("--out", gen.out, "Output file")->required();

  try {
    app.parse(argc, argv);
    if (*synthesize) {
      synth.domain = domain_or_throw(synth_domain);
      return cmd_synthesize(synth, std::cout, std::cerr);
    }
    if (*stability) {
      stab.domain = domain_or_throw(stab_domain);
      return cmd_stability(stab, runs, std::cout, std::cerr);
    }
    if (*report) return cmd_report(artifact, report_out, std::cout, std::cerr);
    if (*grade) {
      auto d = domain_or_throw(grade_domain);
      return cmd_grade(*d, instance, solution, std::cout, std::cerr);
    }
    if (*generate) {
      gen.domain = *domain_or_throw(gen_domain);
      auto size = parse_size_class(gen_size);
      if (!size) throw CLI::ValidationError("--size", "unknown size class " + gen_size);
      gen.size = *size;
      if (gen_split != "dev" && gen_split != "test") throw CLI::ValidationError("--split", "expected dev or test");
      gen.split = gen_split == "dev" ? Split::Dev : Split::Test;
      return cmd_generate(gen, std::cout, std::cerr);
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
