#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "worldquiz/config.hpp"
#include "worldquiz/harness.hpp"
#include "worldquiz/planner.hpp"
#include "worldquiz/quiz.hpp"
#include "worldquiz/verifier.hpp"

namespace worldquiz {

inline constexpr std::string_view kBenchVersion = "worldquiz-bench/1";
inline constexpr std::string_view kRecordVersion = "worldquiz-record/1";

struct BenchEnv {
  EnvSpec env;
  std::vector<TaskSpec> tasks;
  std::vector<Question> quiz;

  bool operator==(const BenchEnv&) const = default;
};

struct BenchFile {
  std::string version{kBenchVersion};
  BenchConfig config;
  std::vector<BenchEnv> environments;  // difficulty-major, in config order
  std::string checksum;

  bool operator==(const BenchFile&) const = default;
};

// Seed of environment `index` of difficulty `d`.
std::uint64_t env_seed(std::uint64_t base, Difficulty d, int index);

// Throws GenerationError (or SearchBudgetError) carrying the failing seed.
BenchEnv generate_env(const DifficultyConfig& cfg, const BenchConfig& config);
// Fills in the checksum.
BenchFile generate_bench(const BenchConfig& config);

struct EnvRun {
  int env = 0;  // index into BenchFile::environments
  Difficulty difficulty = Difficulty::easy;
  std::uint64_t seed = 0;
  std::vector<Question> quiz;
  std::vector<Trajectory> trajectories;
  std::vector<std::string> answers;
  std::string error;  // set when the agent could not be started
  GradeReport report;

  bool operator==(const EnvRun&) const = default;
  bool failed() const;
};

// Everything needed to regrade without the bench file.
struct RunRecord {
  std::string version{kRecordVersion};
  std::string bench_checksum;
  std::string agent;
  std::uint64_t seed = 0;
  std::vector<Difficulty> difficulties;  // environments outside these are skipped
  bool complete = false;
  std::vector<EnvRun> environments;  // ascending env index
  GradeReport report;
  std::string checksum;

  bool operator==(const RunRecord&) const = default;
  bool failed() const;
};

// Grades one environment from its quiz, trajectories and answers.
GradeReport grade_env(const EnvRun& run);
// Regrades every environment and the total.
void regrade(RunRecord& record);

struct RunOptions {
  std::string agent = "builtin:oracle+omniscient";
  AgentOptions agent_options;
  std::vector<Difficulty> difficulties{std::begin(kAllDifficulties), std::end(kAllDifficulties)};
  int parallel = 1;
  // Called after every finished environment with the record so far.
  std::function<void(const RunRecord&)> checkpoint;
};

// Stage 1 then stage 2 per environment. Environments already in `resume`
// are kept as they are. Agent start-up failures are recorded per
// environment and do not stop the run.
RunRecord run_bench(const BenchFile& bench, const RunOptions& options, const RunRecord* resume = nullptr);

// Runs one environment; never throws for agent failures.
EnvRun run_env(const BenchFile& bench, int index, const AgentFactory& factory);

// Table with Task Score, Loc., Conn., Dir., Match., Prop., Tot. per
// difficulty and overall, followed by the answerable split.
std::string render_report(const RunRecord& record);
// Tab-separated, one row per question, with a header.
std::string flat_table(const RunRecord& record);

}  // namespace worldquiz
