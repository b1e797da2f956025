#include "worldquiz/types.hpp"

#include <algorithm>
#include <array>

namespace worldquiz {

namespace {

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::string_view, N>& table, E e) {
  return table.at(static_cast<std::size_t>(e));
}

template <typename E, std::size_t N>
std::optional<E> parse_of(const std::array<std::string_view, N>& table, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (table[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

constexpr std::array<std::string_view, 7> kKindNames = {
    "room", "door", "container", "supporter", "object", "key", "food"};
constexpr std::array<std::string_view, 4> kDirectionNames = {"north", "south", "east", "west"};
constexpr std::array<std::string_view, 4> kAccessNames = {"none", "open", "closed", "locked"};
constexpr std::array<std::string_view, 8> kPredicateNames = {
    "in", "on", "at", "open", "closed", "locked", "match", "edible"};
constexpr std::array<std::string_view, 3> kDifficultyNames = {"easy", "medium", "hard"};
constexpr std::array<std::string_view, 11> kVerbNames = {
    "go", "open", "close", "unlock", "take", "put", "insert", "examine", "eat", "look", "inventory"};
constexpr std::array<std::string_view, 5> kOutcomeNames = {
    "ok", "blocked_locked", "blocked_closed", "no_effect", "invalid"};
constexpr std::array<std::string_view, 4> kGoalNames = {"player_at", "holding", "is_open",
                                                        "is_unlocked"};

}  // namespace

std::string_view to_string(EntityKind k) { return name_of(kKindNames, k); }
std::string_view to_string(Direction d) { return name_of(kDirectionNames, d); }
std::string_view to_string(Access a) { return name_of(kAccessNames, a); }
std::string_view to_string(Predicate p) { return name_of(kPredicateNames, p); }
std::string_view to_string(Difficulty d) { return name_of(kDifficultyNames, d); }
std::string_view to_string(Verb v) { return name_of(kVerbNames, v); }
std::string_view to_string(Outcome o) { return name_of(kOutcomeNames, o); }
std::string_view to_string(GoalKind g) { return name_of(kGoalNames, g); }

std::optional<EntityKind> entity_kind_from(std::string_view s) {
  return parse_of<EntityKind>(kKindNames, s);
}
std::optional<Direction> direction_from(std::string_view s) {
  return parse_of<Direction>(kDirectionNames, s);
}
std::optional<Access> access_from(std::string_view s) { return parse_of<Access>(kAccessNames, s); }
std::optional<Predicate> predicate_from(std::string_view s) {
  return parse_of<Predicate>(kPredicateNames, s);
}
std::optional<Difficulty> difficulty_from(std::string_view s) {
  return parse_of<Difficulty>(kDifficultyNames, s);
}
std::optional<Verb> verb_from(std::string_view s) { return parse_of<Verb>(kVerbNames, s); }
std::optional<Outcome> outcome_from(std::string_view s) {
  return parse_of<Outcome>(kOutcomeNames, s);
}
std::optional<GoalKind> goal_kind_from(std::string_view s) {
  return parse_of<GoalKind>(kGoalNames, s);
}

// EnvSpec lookups. Environments hold at most a few dozen entities, so linear
// scans are used throughout.

std::optional<EntityId> EnvSpec::find(std::string_view n) const {
  for (const auto& e : entities) {
    if (e.name == n) return e.id;
  }
  return std::nullopt;
}

const Room* EnvSpec::room(EntityId id) const {
  for (const auto& r : rooms) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

std::optional<Edge> EnvSpec::exit(EntityId from, Direction d) const {
  for (const auto& e : edges) {
    if (e.from == from && e.dir == d) return e;
  }
  return std::nullopt;
}

std::vector<Edge> EnvSpec::exits(EntityId from) const {
  std::vector<Edge> out;
  for (Direction d : kAllDirections) {
    if (auto e = exit(from, d)) out.push_back(*e);
  }
  return out;
}

bool EnvSpec::has_fact(const Fact& f) const {
  return std::find(initial_facts.begin(), initial_facts.end(), f) != initial_facts.end();
}

std::vector<EntityId> EnvSpec::keys_for(EntityId lock) const {
  std::vector<EntityId> out;
  for (const auto& f : initial_facts) {
    if (f.predicate == Predicate::match && f.object == lock) out.push_back(f.subject);
  }
  return out;
}

std::vector<EntityId> EnvSpec::locks_for(EntityId key) const {
  std::vector<EntityId> out;
  for (const auto& f : initial_facts) {
    if (f.predicate == Predicate::match && f.subject == key) out.push_back(f.object);
  }
  return out;
}

bool EnvSpec::edible(EntityId id) const {
  return has_fact(Fact{Predicate::edible, id, EntityId::none()});
}

std::vector<EntityId> EnvSpec::ids_of(EntityKind k) const {
  std::vector<EntityId> out;
  for (const auto& e : entities) {
    if (e.kind == k) out.push_back(e.id);
  }
  return out;
}

std::vector<std::string> EnvSpec::names() const {
  std::vector<std::string> out;
  out.reserve(entities.size());
  for (const auto& e : entities) out.push_back(e.name);
  return out;
}

std::size_t WorldStateHash::operator()(const WorldState& s) const noexcept {
  // FNV-1a over the packed fields.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (i * 8)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (EntityId id : s.holder) mix(id.value);
  for (Access a : s.access) mix(static_cast<std::uint64_t>(a));
  mix(s.player_room.value);
  return static_cast<std::size_t>(h);
}

std::string Command::text() const {
  std::string out(to_string(verb));
  switch (verb) {
    case Verb::go:
      if (direction) out += " " + std::string(to_string(*direction));
      return out;
    case Verb::unlock:
      if (args.size() == 2) return out + " " + args[0] + " with " + args[1];
      break;
    case Verb::put:
      if (args.size() == 2) return out + " " + args[0] + " on " + args[1];
      break;
    case Verb::insert:
      if (args.size() == 2) return out + " " + args[0] + " into " + args[1];
      break;
    case Verb::take:
      if (args.size() == 2) return out + " " + args[0] + " from " + args[1];
      break;
    default:
      break;
  }
  for (const auto& a : args) out += " " + a;
  return out;
}

std::string describe(const Fact& f, const EnvSpec& spec) {
  auto name = [&spec](EntityId id) -> std::string {
    if (id.is_inventory()) return "inventory";
    if (id.is_player()) return "player";
    if (id.is_none()) return "?";
    return spec.name(id);
  };
  std::string out(to_string(f.predicate));
  out += "(" + name(f.subject);
  if (!f.object.is_none()) out += ", " + name(f.object);
  return out + ")";
}

}  // namespace worldquiz
