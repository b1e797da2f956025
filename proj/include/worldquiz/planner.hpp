#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "worldquiz/types.hpp"

namespace worldquiz {

enum class TargetKind { room, object, interaction };
enum class Interaction { none, open, unlock };

struct Target {
  TargetKind kind = TargetKind::room;
  EntityId entity;
  Interaction action = Interaction::none;

  auto operator<=>(const Target&) const = default;

  static Target room(EntityId r) { return {TargetKind::room, r, Interaction::none}; }
  static Target object(EntityId o) { return {TargetKind::object, o, Interaction::none}; }
  static Target interaction(Interaction a, EntityId x) { return {TargetKind::interaction, x, a}; }
};

std::string_view to_string(TargetKind k);
std::string_view to_string(Interaction a);
std::optional<TargetKind> target_kind_from(std::string_view s);
std::optional<Interaction> interaction_from(std::string_view s);

struct GainWeights {
  double room = 1.0;
  double object = 2.0;
  double interaction = 3.0;

  bool operator==(const GainWeights&) const = default;
};

struct TaskSpec {
  std::string id;
  Goal goal;
  std::string description;
  std::vector<std::string> walkthrough;
  std::set<Target> signature;

  bool operator==(const TaskSpec&) const = default;
};

class SearchBudgetError : public std::runtime_error {
 public:
  explicit SearchBudgetError(std::size_t cap)
      : std::runtime_error("search budget of " + std::to_string(cap) + " nodes exceeded") {}
};

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultNodeCap = 1'000'000;

// Reachable rooms (locks respected only through their keys), portable
// entities, and open/unlock on every door or container not initially open.
std::set<Target> extract_targets(const EnvSpec& spec);

// Shortest command sequence from the initial state that satisfies `goal`.
// Among shortest sequences, the lexicographically smallest by command text.
// Returns nullopt when the goal is unreachable; throws SearchBudgetError once
// more than `node_cap` states are discovered.
std::optional<std::vector<Command>> plan_walkthrough(const EnvSpec& spec, const Goal& goal,
                                                     std::size_t node_cap = kDefaultNodeCap);

// Rooms entered (start included), entities taken, and doors or containers
// opened or unlocked while replaying `walkthrough`. Throws ReplayError on an
// unparsable command or an invalid event.
std::set<Target> coverage_signature(const EnvSpec& spec, const std::vector<std::string>& walkthrough);

double gain(const std::set<Target>& delta, const GainWeights& w);

// Greedy weighted set cover. Picks the candidate with the largest gain over
// what is still uncovered, first candidate winning ties, until nothing is
// left or no candidate adds anything. Returns indices into `candidates`.
std::vector<std::size_t> greedy_select(const std::vector<std::set<Target>>& candidates,
                                       std::set<Target> universe, const GainWeights& w);

// One planned candidate per target whose goal is not already satisfied at
// the start. Candidate ids follow target order.
std::vector<TaskSpec> build_candidates(const EnvSpec& spec, const std::set<Target>& universe,
                                       std::size_t node_cap = kDefaultNodeCap);

// extract_targets, build_candidates and greedy_select, in pick order.
std::vector<TaskSpec> plan_tasks(const EnvSpec& spec, const GainWeights& w = {},
                                 std::size_t node_cap = kDefaultNodeCap);

Goal goal_for(const Target& t);
std::string describe_task(const EnvSpec& spec, const Goal& goal);

}  // namespace worldquiz
