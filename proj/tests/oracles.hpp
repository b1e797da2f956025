#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "worldquiz/planner.hpp"
#include "worldquiz/world.hpp"

namespace worldquiz::testing {

// Smallest number of candidates whose union covers `universe`, by trying
// every subset. Returns -1 if no subset covers it.
inline int brute_force_cover(const std::vector<std::set<Target>>& sets, const std::set<Target>& universe) {
  int best = -1;
  const std::size_t n = sets.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (best >= 0 && size >= best) continue;
    std::set<Target> u;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) u.insert(sets[i].begin(), sets[i].end());
    }
    if (std::includes(u.begin(), u.end(), universe.begin(), universe.end())) best = size;
  }
  return best;
}

// Length of the shortest command sequence reaching `goal`, searching every
// admissible command (no pruning). Gives up past `max_depth`.
inline std::optional<std::size_t> exhaustive_min(const EnvSpec& spec, const Goal& goal, std::size_t max_depth) {
  WorldState s0 = initial_state(spec);
  if (satisfied(goal, s0)) return 0;
  std::unordered_map<WorldState, std::size_t, WorldStateHash> depth{{s0, 0}};
  std::deque<WorldState> queue{s0};
  while (!queue.empty()) {
    WorldState s = queue.front();
    queue.pop_front();
    std::size_t d = depth.at(s);
    if (d >= max_depth) continue;
    for (const auto& cmd : admissible_commands(s, spec)) {
      Transition t = apply_command(s, spec, cmd);
      if (t.state == s) continue;
      if (satisfied(goal, t.state)) return d + 1;
      if (depth.emplace(t.state, d + 1).second) queue.push_back(std::move(t.state));
    }
  }
  return std::nullopt;
}

}  // namespace worldquiz::testing
