// Command-line entry points for the slicing simulator: validate scenario
// files, run them into structured reports, browse the blueprint catalog and
// explain a single slice from a finished report.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nsim/engine.hpp"
#include "nsim/error.hpp"
#include "nsim/report.hpp"
#include "nsim/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitViolations = 2;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_validate(const std::string& path) {
  nsim::scenario::ParseResult parsed =
      nsim::scenario::parse_validate(read_file(path));
  if (parsed.ok()) {
    std::cout << "valid: " << parsed.doc->name << "\n";
    return kExitOk;
  }
  for (const std::string& err : parsed.errors) {
    std::cout << "error: " << err << "\n";
  }
  return kExitValidation;
}

int cmd_catalog(const std::string& path) {
  nsim::scenario::ParseResult parsed =
      nsim::scenario::parse_validate(read_file(path));
  if (!parsed.ok()) {
    for (const std::string& err : parsed.errors) {
      std::cout << "error: " << err << "\n";
    }
    return kExitValidation;
  }
  for (const auto& bp : parsed.doc->blueprints) {
    const auto* d = nsim::scenario::find_descriptor(*parsed.doc, bp.descriptor);
    std::cout << bp.id << " descriptor=" << bp.descriptor << " vnfs="
              << (d ? d->vnfs.size() : 0) << " sla_floor="
              << nsim::to_string(bp.throughput_floor);
    if (bp.latency_ceiling) {
      std::cout << " latency_ceiling=" << nsim::to_string(*bp.latency_ceiling);
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_run(const std::string& path, std::uint64_t seed, bool seed_set,
            const std::string& out, bool strict) {
  nsim::scenario::ParseResult parsed =
      nsim::scenario::parse_validate(read_file(path));
  if (!parsed.ok()) {
    for (const std::string& err : parsed.errors) {
      std::cout << "error: " << err << "\n";
    }
    return kExitValidation;
  }
  const nsim::scenario::Document& doc = *parsed.doc;
  auto rr = nsim::engine::run(doc, seed_set ? seed : doc.seed);
  auto report = nsim::report::emit(doc, rr);
  if (!out.empty()) {
    std::ofstream os(out);
    os << report.dump(2) << "\n";
  }
  std::cout << "scenario " << doc.name << " seed " << rr.seed
            << " trace_digest " << report.at("trace_digest").get<std::string>()
            << "\n";
  const std::size_t violations = nsim::report::violation_count(report);
  std::cout << "isolation violations: " << violations << "\n";
  if (strict && violations > 0) {
    return kExitViolations;
  }
  return kExitOk;
}

int cmd_explain(const std::string& path, const std::string& slice) {
  nlohmann::json report =
      nlohmann::json::parse(read_file(path), nullptr, false);
  if (report.is_discarded() || !report.contains("slices")) {
    std::cout << "error: not a run report\n";
    return kExitValidation;
  }
  if (!report.at("slices").contains(slice)) {
    std::cout << "error: unknown slice " << slice << "\n";
    return kExitUsage;
  }
  std::cout << "slice " << slice << " (scenario "
            << report.value("scenario", "?") << ")\n";
  std::cout << "lifecycle:\n";
  for (const std::string& line :
       nsim::report::slice_transcript(report, slice)) {
    std::cout << "  " << line << "\n";
  }
  std::cout << "kpi series (tick: offered achieved latency state):\n";
  std::size_t tick = 0;
  for (const auto& point : report.at("slices").at(slice).at("series")) {
    std::cout << "  " << tick++ << ": " << point.at("offered").get<std::string>()
              << " " << point.at("achieved").get<std::string>() << " "
              << point.at("latency").get<std::string>() << " "
              << point.at("state").get<std::string>() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"network slicing orchestration simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string report_path;
  std::string out_path;
  std::string slice_id;
  std::uint64_t seed = 0;
  bool strict = false;

  auto* validate = app.add_subcommand("validate", "validate a scenario file");
  validate->add_option("scenario", scenario_path)->required();

  auto* run = app.add_subcommand("run", "run a scenario into a report");
  run->add_option("scenario", scenario_path)->required();
  auto* seed_opt = run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--out", out_path, "report output path");
  run->add_flag("--strict", strict, "exit 2 on any isolation violation");

  auto* catalog = app.add_subcommand("catalog", "list slice blueprints");
  catalog->add_option("scenario", scenario_path)->required();

  auto* explain = app.add_subcommand("explain", "print one slice from a report");
  explain->add_option("report", report_path)->required();
  explain->add_option("--slice", slice_id)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError&) {
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(scenario_path);
    if (run->parsed())
      return cmd_run(scenario_path, seed, seed_opt->count() > 0, out_path,
                     strict);
    if (catalog->parsed()) return cmd_catalog(scenario_path);
    if (explain->parsed()) return cmd_explain(report_path, slice_id);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
