// genlimit: play scenarios and check mistake bounds.
//
//   genlimit run --scenario s.json [--seed K] [--out report.csv] [--transcripts dir]
//   genlimit sweep --template s.json --range key=a..b [--range ...] [--out report.csv]
//   genlimit oracle --class c.json --depth D
//
// Exit status: 0 all bounds hold, 1 a bound is violated (or the game itself
// failed), 2 bad configuration.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "genlimit/bounds.hpp"
#include "genlimit/classes.hpp"
#include "genlimit/errors.hpp"
#include "genlimit/oracle.hpp"
#include "genlimit/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kConfig = 2;

int emit(const std::vector<genlimit::BoundReport>& reports, const std::string& out_path) {
  if (out_path.empty()) {
    genlimit::write_report_csv(std::cout, reports);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw genlimit::ConfigError("--out", "cannot open '" + out_path + "' for writing");
    genlimit::write_report_csv(out, reports);
  }
  int status = kOk;
  for (const auto& r : reports) {
    for (const auto& note : r.notes) std::cerr << r.scenario << " [" << r.params << "] " << note << '\n';
    for (const auto& b : r.bounds) {
      if (b.satisfied) continue;
      std::cerr << "VIOLATED " << r.scenario << " [" << r.params << "] " << b.name << ": observed " << b.observed
                << " vs " << b.value << '\n';
      status = kViolation;
    }
  }
  return status;
}

int run(const std::string& scenario_path, std::optional<std::uint64_t> seed, const std::string& out_path,
        const std::string& transcript_dir) {
  const genlimit::Scenario scenario = genlimit::load_scenario(scenario_path);
  std::vector<genlimit::BoundReport> reports;
  if (transcript_dir.empty()) {
    reports = genlimit::verify_all(scenario, seed, genlimit::default_thread_count());
  } else {
    std::filesystem::create_directories(transcript_dir);
    const auto seeds = seed ? std::vector<std::uint64_t>{*seed} : scenario.seeds;
    for (auto s : seeds) {
      genlimit::GameResult game;
      reports.push_back(genlimit::verify(scenario, s, {}, &game));
      const auto path = std::filesystem::path(transcript_dir) / (scenario.name + "_seed" + std::to_string(s) + ".csv");
      std::ofstream out(path, std::ios::binary);
      if (!out) throw genlimit::ConfigError("--transcripts", "cannot write '" + path.string() + "'");
      genlimit::write_transcript_csv(out, game.transcript);
    }
  }
  return emit(reports, out_path);
}

int sweep(const std::string& template_path, const std::vector<std::string>& range_args,
          std::optional<std::uint64_t> seed, const std::string& out_path) {
  nlohmann::json config = genlimit::read_json_file(template_path);
  if (config.is_object() && !config.contains("name")) {
    config["name"] = std::filesystem::path(template_path).stem().string();
  }
  std::vector<genlimit::SweepRange> ranges;
  for (const auto& r : range_args) ranges.push_back(genlimit::parse_range(r));
  return emit(genlimit::sweep(config, ranges, seed, genlimit::default_thread_count()), out_path);
}

int oracle(const std::string& class_path, std::size_t depth) {
  const nlohmann::json file = genlimit::read_json_file(class_path);
  const bool wrapped = file.is_object() && file.contains("class");
  const auto cls = genlimit::class_from_json(wrapped ? file.at("class") : file, "class");
  std::cout << genlimit::minimax_oracle(cls, depth) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mistake-bounded language generation: play games, check bounds"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, transcript_dir, template_path, class_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> ranges;
  std::size_t depth = 0;

  auto* run_cmd = app.add_subcommand("run", "Play a scenario for each seed and report its bounds");
  run_cmd->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  run_cmd->add_option("--seed", seed, "Play only this seed");
  run_cmd->add_option("--out", out_path, "Write the CSV report here instead of stdout");
  run_cmd->add_option("--transcripts", transcript_dir, "Directory for per-seed transcript CSVs");

  auto* sweep_cmd = app.add_subcommand("sweep", "Play a scenario template over parameter ranges");
  sweep_cmd->add_option("--template", template_path, "Scenario JSON template")->required();
  sweep_cmd->add_option("--range", ranges, "key=a..b or key=v1,v2 (dotted JSON path; repeatable)")->required();
  sweep_cmd->add_option("--seed", seed, "Play only this seed");
  sweep_cmd->add_option("--out", out_path, "Write the CSV report here instead of stdout");

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact minimax mistakes on a tiny finite class");
  oracle_cmd->add_option("--class", class_path, "Class JSON file")->required();
  oracle_cmd->add_option("--depth", depth, "Number of steps")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run_cmd) return run(scenario_path, seed, out_path, transcript_dir);
    if (*sweep_cmd) return sweep(template_path, ranges, seed, out_path);
    return oracle(class_path, depth);
  } catch (const genlimit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const genlimit::GameError& e) {
    std::cerr << "game error: " << e.what() << '\n';
    return kViolation;
  } catch (const genlimit::SearchBudgetExceeded& e) {
    std::cerr << "search budget exceeded: " << e.what() << '\n';
    return kViolation;
  } catch (const genlimit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kViolation;
  }
}
