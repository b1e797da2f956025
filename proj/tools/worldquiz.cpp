#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "worldquiz/bench.hpp"
#include "worldquiz/config.hpp"
#include "worldquiz/io.hpp"

namespace {

using namespace worldquiz;

constexpr int kOk = 0;
constexpr int kPartial = 1;
constexpr int kInvalid = 2;

struct GenArgs {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  std::string difficulty;
};

struct RunArgs {
  std::string bench;
  std::string agent = "builtin:oracle+omniscient";
  std::string out;
  std::uint64_t seed = 0;
  std::string difficulty;
  int parallel = 1;
  int timeout_ms = 30000;
};

struct GradeArgs {
  std::string record;
  std::string out;
};

struct ReportArgs {
  std::string record;
  std::string flat;
  bool json = false;
};

int cmd_gen(const GenArgs& a, bool seed_given) {
  BenchConfig config = a.config.empty() ? default_bench_config() : load_config(a.config);
  if (seed_given) config.seed = a.seed;
  if (!a.difficulty.empty()) config = restrict_to(config, parse_difficulty_list(a.difficulty));
  BenchFile bench;
  try {
    bench = generate_bench(config);
  } catch (const GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << "\n";
    return kPartial;
  } catch (const SearchBudgetError& e) {
    std::cerr << "planning failed: " << e.what() << "\n";
    return kPartial;
  }
  write_file_atomic(a.out, bench_to_text(bench));
  std::size_t tasks = 0;
  std::size_t questions = 0;
  for (const auto& e : bench.environments) {
    tasks += e.tasks.size();
    questions += e.quiz.size();
  }
  std::cout << "wrote " << a.out << ": " << bench.environments.size() << " environments, " << tasks << " tasks, "
            << questions << " questions, checksum " << bench.checksum << "\n";
  return kOk;
}

int cmd_run(const RunArgs& a) {
  BenchFile bench = bench_from_text(read_file(a.bench));
  RunOptions options;
  options.agent = a.agent;
  options.agent_options.seed = a.seed;
  options.agent_options.timeout_ms = a.timeout_ms;
  options.parallel = a.parallel;
  if (!a.difficulty.empty()) options.difficulties = parse_difficulty_list(a.difficulty);
  if (!valid_agent_spec(a.agent)) {
    std::cerr << "invalid agent spec: " << a.agent << "\n";
    return kInvalid;
  }

  std::optional<RunRecord> resume;
  if (std::filesystem::exists(a.out)) {
    resume = record_from_text(read_file(a.out));
    if (resume->complete) std::cerr << "record already complete; rerunning nothing\n";
    else std::cerr << "resuming after " << resume->environments.size() << " environments\n";
  }
  std::size_t total = 0;
  for (const auto& e : bench.environments) {
    for (Difficulty d : options.difficulties) total += e.env.difficulty == d;
  }
  options.checkpoint = [&](const RunRecord& partial) {
    write_file_atomic(a.out, record_to_text(partial));
    const EnvRun& last = partial.environments.back();
    std::cerr << "[" << partial.environments.size() << "/" << total << "] env " << last.env << " ("
              << to_string(last.difficulty) << "): tasks " << last.report.tasks.correct << "/"
              << last.report.tasks.total << ", questions " << last.report.questions.correct << "/"
              << last.report.questions.total << (last.failed() ? ", failed" : "") << "\n";
  };
  RunRecord record = run_bench(bench, options, resume ? &*resume : nullptr);
  write_file_atomic(a.out, record_to_text(record));
  std::cout << render_report(record);
  for (const auto& e : record.environments) {
    if (!e.error.empty()) std::cerr << "env " << e.env << ": " << e.error << "\n";
  }
  return record.failed() ? kPartial : kOk;
}

int cmd_grade(const GradeArgs& a) {
  RunRecord record = record_from_text(read_file(a.record));
  regrade(record);
  write_file_atomic(a.out.empty() ? a.record : a.out, record_to_text(record));
  std::cout << render_report(record);
  return kOk;
}

int cmd_report(const ReportArgs& a) {
  RunRecord record = record_from_text(read_file(a.record));
  if (!a.flat.empty()) write_file_atomic(a.flat, flat_table(record));
  std::cout << (a.json ? report_to_text(record.report) : render_report(record));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate text-world benches, run agents on them, and grade the runs."};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a bench file");
  gen_cmd->add_option("--config", gen.config, "key = value config file")->envname("WORLDQUIZ_CONFIG");
  auto* gen_seed = gen_cmd->add_option("--seed", gen.seed, "Base seed (overrides the config)")->envname("WORLDQUIZ_SEED");
  gen_cmd->add_option("--out", gen.out, "Bench file to write")->required();
  gen_cmd->add_option("--difficulty", gen.difficulty, "Comma-separated difficulties to generate")
      ->envname("WORLDQUIZ_DIFFICULTY");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an agent over a bench; resumes an unfinished record");
  run_cmd->add_option("bench", run.bench, "Bench file")->required();
  run_cmd->add_option("--agent", run.agent, "builtin:<a>[+<b>], exec:<command line> or tcp:<host>:<port>")
      ->envname("WORLDQUIZ_AGENT");
  run_cmd->add_option("--out", run.out, "Run record to write")->required();
  run_cmd->add_option("--seed", run.seed, "Agent seed")->envname("WORLDQUIZ_SEED");
  run_cmd->add_option("--difficulty", run.difficulty, "Comma-separated difficulties to run")
      ->envname("WORLDQUIZ_DIFFICULTY");
  run_cmd->add_option("--parallel", run.parallel, "Environments run concurrently")
      ->envname("WORLDQUIZ_PARALLEL")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--timeout-ms", run.timeout_ms, "Per-reply deadline for external agents")
      ->envname("WORLDQUIZ_TIMEOUT_MS")
      ->check(CLI::PositiveNumber);

  GradeArgs grade;
  auto* grade_cmd = app.add_subcommand("grade", "Regrade a run record");
  grade_cmd->add_option("record", grade.record, "Run record")->required();
  grade_cmd->add_option("--out", grade.out, "Where to write the regraded record (default: in place)");

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Print score tables for a run record");
  report_cmd->add_option("record", report.record, "Run record")->required();
  report_cmd->add_option("--flat", report.flat, "Also write a per-question tab-separated table here");
  report_cmd->add_flag("--json", report.json, "Print the grade report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, gen_seed->count() > 0 || std::getenv("WORLDQUIZ_SEED"));
    if (*run_cmd) return cmd_run(run);
    if (*grade_cmd) return cmd_grade(grade);
    if (*report_cmd) return cmd_report(report);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const FormatError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPartial;
  }
  return kInvalid;
}
