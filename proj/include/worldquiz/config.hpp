#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "worldquiz/env_gen.hpp"
#include "worldquiz/planner.hpp"

namespace worldquiz {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Everything that determines a bench file.
struct BenchConfig {
  std::uint64_t seed = 0;
  int envs_per_difficulty = 10;
  std::vector<DifficultyConfig> difficulties;  // in kAllDifficulties order
  GainWeights weights;
  std::size_t node_cap = kDefaultNodeCap;

  bool operator==(const BenchConfig&) const = default;

  const DifficultyConfig* find(Difficulty d) const;
};

// The three presets, 10 environments each.
BenchConfig default_bench_config();

// Flat `key = value` lines; `[easy]`, `[medium]` and `[hard]` open
// difficulty sections. `#` starts a comment. Ranges are written `lo-hi` or
// as a single integer. Starts from `base` and overrides only what is given.
// Throws ConfigError naming the offending line.
BenchConfig parse_config(std::string_view text, BenchConfig base = default_bench_config());
BenchConfig load_config(const std::string& path, BenchConfig base = default_bench_config());

// Comma-separated difficulty names; throws ConfigError on unknown names.
std::vector<Difficulty> parse_difficulty_list(std::string_view text);
// Drops difficulties not in `keep`.
BenchConfig restrict_to(BenchConfig config, const std::vector<Difficulty>& keep);

}  // namespace worldquiz
