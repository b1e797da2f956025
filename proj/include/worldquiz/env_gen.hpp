#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "worldquiz/rng.hpp"
#include "worldquiz/types.hpp"

namespace worldquiz {

struct IntRange {
  int lo = 0;
  int hi = 0;

  bool contains(int v) const { return v >= lo && v <= hi; }
  bool operator==(const IntRange&) const = default;
};

// Per-category question caps, in QuestionCategory order.
struct QuizCaps {
  int location = 0;
  int connectivity = 0;
  int direction = 0;
  int match = 0;
  int property = 0;

  bool operator==(const QuizCaps&) const = default;
};

struct DifficultyConfig {
  Difficulty difficulty = Difficulty::easy;
  IntRange rooms;
  // Interactive objects: containers, supporters, portables and keys,
  // distractors included.
  IntRange objects;
  double lock_fraction = 0.4;
  IntRange distractor_count;
  // Non-distractor portable objects and food placed before locks.
  IntRange portables;
  double door_fraction = 0.5;
  double open_door_fraction = 0.0;
  double open_container_fraction = 0.25;
  // Layout growth: probability of branching from a random room instead of
  // extending the most recent one.
  double branch_probability = 0.5;
  QuizCaps quiz_caps;
  std::uint64_t seed = 0;

  bool operator==(const DifficultyConfig&) const = default;

  static DifficultyConfig preset(Difficulty d);
};

class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, std::uint64_t seed)
      : std::runtime_error(what + " (seed " + std::to_string(seed) + ")"), seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

inline constexpr int kMaxRetries = 32;

// Rooms on an integer grid grown by a self-avoiding walk with branching.
// The result holds rooms, edges and doors only. Throws GenerationError if
// every retry self-traps.
EnvSpec gen_layout(const DifficultyConfig& cfg, Rng& rng);

// Furniture and portable objects. Leaves room in the object budget for the
// keys and distractors added by the later stages.
EnvSpec place_entities(EnvSpec layout, const DifficultyConfig& cfg, Rng& rng);

// Locks floor(lock_fraction * |doors + containers|) of them and places one
// matching key per lock where it can be fetched without passing that lock or
// any lock placed after it. Throws GenerationError when no key region exists.
EnvSpec inject_locks(EnvSpec spec, double lock_fraction, Rng& rng);

// Objects and keys that no task needs. Distractor keys match nothing.
EnvSpec place_distractors(EnvSpec spec, const DifficultyConfig& cfg, Rng& rng);

// Full pipeline; a pure function of cfg.
EnvSpec generate(const DifficultyConfig& cfg);

// Number of distractors the pipeline will add for cfg (fixed by the seed).
int distractor_count(const DifficultyConfig& cfg);

// Doors and containers, in id order.
std::vector<EntityId> lockables(const EnvSpec& spec);
int locked_count(const EnvSpec& spec);
// Containers, supporters and portables.
int object_count(const EnvSpec& spec);
// Keys without any match fact.
std::vector<EntityId> distractor_keys(const EnvSpec& spec);

struct KeyAwareReach {
  std::set<EntityId> rooms;
  std::set<EntityId> entities;  // every entity the player can touch eventually
};

// Fixpoint of "reach rooms, collect keys, unlock what they open".
KeyAwareReach key_aware_reach(const EnvSpec& spec);
bool solvable(const EnvSpec& spec);

// Structural validation: edge symmetry, grid consistency, fact references,
// unique names, one access state per lockable. Returns the first problem.
std::optional<std::string> validate(const EnvSpec& spec);

}  // namespace worldquiz
