#include "worldquiz/planner.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>

#include "worldquiz/env_gen.hpp"
#include "worldquiz/world.hpp"

namespace worldquiz {

namespace {

// Entities worth touching on the way to a goal. Closing, putting, inserting
// and eating never shorten a route, and neither does opening or taking
// anything outside this set, so the search may ignore them.
struct Relevance {
  std::vector<bool> portable;
  std::vector<bool> container;
};

Relevance relevance_for(const EnvSpec& spec, const Goal& goal, const WorldState& s0) {
  const std::size_t n = spec.entities.size();
  Relevance r{std::vector<bool>(n, false), std::vector<bool>(n, false)};
  EntityKind gk = spec.kind(goal.target);
  if (goal.kind == GoalKind::holding) r.portable[goal.target.index()] = true;
  if ((goal.kind == GoalKind::is_open || goal.kind == GoalKind::is_unlocked) &&
      gk == EntityKind::container)
    r.container[goal.target.index()] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!r.portable[i]) continue;
      for (EntityId h = s0.holder[i]; h.is_entity() && spec.kind(h) != EntityKind::room;
           h = s0.holder[h.index()]) {
        if (spec.kind(h) == EntityKind::container && !r.container[h.index()]) {
          r.container[h.index()] = true;
          changed = true;
        }
      }
    }
    for (const auto& f : spec.initial_facts) {
      if (f.predicate != Predicate::match || r.portable[f.subject.index()]) continue;
      if (spec.kind(f.object) == EntityKind::door || r.container[f.object.index()]) {
        r.portable[f.subject.index()] = true;
        changed = true;
      }
    }
  }
  return r;
}

Command make(Verb v, std::vector<std::string> args, std::optional<Direction> d = std::nullopt) {
  return Command{v, d, std::move(args)};
}

std::vector<Command> successors(const WorldState& s, const EnvSpec& spec, const Relevance& rel) {
  std::vector<Command> out;
  auto unlocks = [&](EntityId lock) {
    for (EntityId k : spec.keys_for(lock)) {
      if (s.holder[k.index()].is_inventory())
        out.push_back(make(Verb::unlock, {spec.name(lock), spec.name(k)}));
    }
  };
  for (const auto& e : spec.exits(s.player_room)) {
    Access a = e.door ? s.access[e.door->index()] : Access::open;
    if (a == Access::open) out.push_back(make(Verb::go, {}, e.dir));
    if (a == Access::closed) out.push_back(make(Verb::open, {spec.name(*e.door)}));
    if (a == Access::locked) unlocks(*e.door);
  }
  for (std::size_t i = 0; i < spec.entities.size(); ++i) {
    if (!rel.portable[i] && !rel.container[i]) continue;
    EntityId id = spec.entities[i].id;
    if (!in_scope(id, s, spec)) continue;
    if (rel.container[i]) {
      if (s.access[i] == Access::closed) out.push_back(make(Verb::open, {spec.name(id)}));
      if (s.access[i] == Access::locked) unlocks(id);
    }
    if (rel.portable[i] && !s.holder[i].is_inventory()) out.push_back(make(Verb::take, {spec.name(id)}));
  }
  std::vector<std::pair<std::string, Command>> keyed;
  for (auto& c : out) keyed.emplace_back(c.text(), std::move(c));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());
  out.clear();
  for (auto& [_, c] : keyed) out.push_back(std::move(c));
  return out;
}

std::string location_phrase(const EnvSpec& spec, EntityId x) {
  WorldState s0 = initial_state(spec);
  EntityId h = s0.holder[x.index()];
  EntityId room = room_of(x, s0, spec);
  if (h == room) return "the floor of the " + spec.name(room);
  return "the " + spec.name(h) + " in the " + spec.name(room);
}

constexpr std::string_view kFraming =
    "You wake up in an unfamiliar house full of rooms, doors and things to handle. ";

}  // namespace

std::string_view to_string(TargetKind k) {
  switch (k) {
    case TargetKind::room: return "room";
    case TargetKind::object: return "object";
    case TargetKind::interaction: return "interaction";
  }
  return "room";
}

std::string_view to_string(Interaction a) {
  switch (a) {
    case Interaction::none: return "none";
    case Interaction::open: return "open";
    case Interaction::unlock: return "unlock";
  }
  return "none";
}

std::optional<TargetKind> target_kind_from(std::string_view s) {
  for (TargetKind k : {TargetKind::room, TargetKind::object, TargetKind::interaction}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<Interaction> interaction_from(std::string_view s) {
  for (Interaction a : {Interaction::none, Interaction::open, Interaction::unlock}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

std::set<Target> extract_targets(const EnvSpec& spec) {
  KeyAwareReach reach = key_aware_reach(spec);
  WorldState s0 = initial_state(spec);
  std::set<Target> out;
  for (EntityId r : reach.rooms) out.insert(Target::room(r));
  for (const auto& e : spec.entities) {
    if (!reach.entities.count(e.id)) continue;
    if (is_portable(e.kind)) out.insert(Target::object(e.id));
    if (is_lockable(e.kind)) {
      Access a = s0.access[e.id.index()];
      if (a != Access::open) out.insert(Target::interaction(Interaction::open, e.id));
      if (a == Access::locked) out.insert(Target::interaction(Interaction::unlock, e.id));
    }
  }
  return out;
}

std::optional<std::vector<Command>> plan_walkthrough(const EnvSpec& spec, const Goal& goal,
                                                     std::size_t node_cap) {
  const WorldState s0 = initial_state(spec);
  if (satisfied(goal, s0)) return std::vector<Command>{};
  const Relevance rel = relevance_for(spec, goal, s0);

  struct Node {
    const WorldState* state;
    std::size_t parent;
    Command cmd;
  };
  std::unordered_map<WorldState, std::size_t, WorldStateHash> seen;
  std::vector<Node> nodes;
  nodes.push_back({&seen.emplace(s0, 0).first->first, 0, {}});

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const WorldState& s = *nodes[i].state;
    for (auto& cmd : successors(s, spec, rel)) {
      Transition t = apply_command(s, spec, cmd);
      if (t.event.outcome != Outcome::ok) continue;
      auto [it, fresh] = seen.emplace(std::move(t.state), nodes.size());
      if (!fresh) continue;
      if (nodes.size() >= node_cap) throw SearchBudgetError(node_cap);
      nodes.push_back({&it->first, i, std::move(cmd)});
      if (satisfied(goal, it->first)) {
        std::vector<Command> path;
        for (std::size_t k = nodes.size() - 1; k != 0; k = nodes[k].parent) path.push_back(nodes[k].cmd);
        std::reverse(path.begin(), path.end());
        return path;
      }
    }
  }
  return std::nullopt;
}

std::set<Target> coverage_signature(const EnvSpec& spec, const std::vector<std::string>& walkthrough) {
  WorldState s = initial_state(spec);
  std::set<Target> out{Target::room(s.player_room)};
  for (const auto& text : walkthrough) {
    Command cmd;
    try {
      cmd = parse_command(text, spec);
    } catch (const ParseError& e) {
      throw ReplayError("unparsable walkthrough command: " + text);
    }
    Transition t = apply_command(s, spec, cmd);
    if (t.event.outcome == Outcome::invalid) throw ReplayError("invalid walkthrough command: " + text);
    s = std::move(t.state);
    if (t.event.outcome != Outcome::ok) continue;
    switch (cmd.verb) {
      case Verb::go: out.insert(Target::room(s.player_room)); break;
      case Verb::take: out.insert(Target::object(*spec.find(cmd.args[0]))); break;
      case Verb::open: out.insert(Target::interaction(Interaction::open, *spec.find(cmd.args[0]))); break;
      case Verb::unlock:
        out.insert(Target::interaction(Interaction::unlock, *spec.find(cmd.args[0])));
        break;
      default: break;
    }
  }
  return out;
}

double gain(const std::set<Target>& delta, const GainWeights& w) {
  double g = 0;
  for (const auto& t : delta) {
    switch (t.kind) {
      case TargetKind::room: g += w.room; break;
      case TargetKind::object: g += w.object; break;
      case TargetKind::interaction: g += w.interaction; break;
    }
  }
  return g;
}

std::vector<std::size_t> greedy_select(const std::vector<std::set<Target>>& candidates,
                                       std::set<Target> universe, const GainWeights& w) {
  std::vector<std::size_t> picked;
  std::vector<bool> used(candidates.size(), false);
  while (!universe.empty()) {
    std::optional<std::size_t> best;
    double best_gain = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (used[i]) continue;
      std::set<Target> delta;
      std::set_intersection(candidates[i].begin(), candidates[i].end(), universe.begin(),
                            universe.end(), std::inserter(delta, delta.end()));
      double g = gain(delta, w);
      if (g > best_gain) {
        best_gain = g;
        best = i;
      }
    }
    if (!best) break;
    used[*best] = true;
    picked.push_back(*best);
    for (const auto& t : candidates[*best]) universe.erase(t);
  }
  return picked;
}

Goal goal_for(const Target& t) {
  switch (t.kind) {
    case TargetKind::room: return {GoalKind::player_at, t.entity};
    case TargetKind::object: return {GoalKind::holding, t.entity};
    case TargetKind::interaction:
      return {t.action == Interaction::unlock ? GoalKind::is_unlocked : GoalKind::is_open, t.entity};
  }
  return {};
}

std::string describe_task(const EnvSpec& spec, const Goal& goal) {
  const std::string& x = spec.name(goal.target);
  // Containers are named with their room; doors span two rooms.
  std::string where;
  if (spec.kind(goal.target) == EntityKind::container)
    where = " in the " + spec.name(room_of(goal.target, initial_state(spec), spec));
  std::string body;
  switch (goal.kind) {
    case GoalKind::player_at: body = "Find your way to the " + x + "."; break;
    case GoalKind::holding: body = "Recover the " + x + " from " + location_phrase(spec, goal.target) + "."; break;
    case GoalKind::is_open: body = "Open the " + x + where + "."; break;
    case GoalKind::is_unlocked: body = "Unlock the " + x + where + "."; break;
  }
  return std::string(kFraming) + body;
}

std::vector<TaskSpec> build_candidates(const EnvSpec& spec, const std::set<Target>& universe,
                                       std::size_t node_cap) {
  std::vector<TaskSpec> out;
  for (const auto& target : universe) {
    Goal goal = goal_for(target);
    auto plan = plan_walkthrough(spec, goal, node_cap);
    if (!plan || plan->empty()) continue;
    TaskSpec task;
    char id[16];
    std::snprintf(id, sizeof id, "task-%03zu", out.size());
    task.id = id;
    task.goal = goal;
    task.description = describe_task(spec, goal);
    for (const auto& c : *plan) task.walkthrough.push_back(c.text());
    task.signature = coverage_signature(spec, task.walkthrough);
    out.push_back(std::move(task));
  }
  return out;
}

std::vector<TaskSpec> plan_tasks(const EnvSpec& spec, const GainWeights& w, std::size_t node_cap) {
  std::set<Target> universe = extract_targets(spec);
  std::vector<TaskSpec> candidates = build_candidates(spec, universe, node_cap);
  std::vector<std::set<Target>> covers;
  for (const auto& c : candidates) covers.push_back(c.signature);
  std::vector<TaskSpec> out;
  for (std::size_t i : greedy_select(covers, universe, w)) out.push_back(candidates[i]);
  return out;
}

}  // namespace worldquiz
