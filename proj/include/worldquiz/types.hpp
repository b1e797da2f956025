#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace worldquiz {

// Index into EnvSpec::entities, or one of the reserved sentinels.
struct EntityId {
  static constexpr std::uint32_t kNone = 0xffffffffu;
  static constexpr std::uint32_t kInventory = 0xfffffffeu;
  static constexpr std::uint32_t kPlayer = 0xfffffffdu;

  std::uint32_t value = kNone;

  constexpr EntityId() = default;
  constexpr explicit EntityId(std::uint32_t v) : value(v) {}
  constexpr explicit EntityId(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit EntityId(int v) : value(static_cast<std::uint32_t>(v)) {}

  static constexpr EntityId none() { return EntityId{}; }
  static constexpr EntityId inventory() { return EntityId{kInventory}; }
  static constexpr EntityId player() { return EntityId{kPlayer}; }

  constexpr bool is_none() const { return value == kNone; }
  constexpr bool is_inventory() const { return value == kInventory; }
  constexpr bool is_player() const { return value == kPlayer; }
  constexpr bool is_entity() const { return value < kPlayer; }
  constexpr std::size_t index() const { return value; }

  auto operator<=>(const EntityId&) const = default;
};

enum class EntityKind { room, door, container, supporter, object, key, food };

constexpr bool is_portable(EntityKind k) {
  return k == EntityKind::object || k == EntityKind::key || k == EntityKind::food;
}
constexpr bool is_lockable(EntityKind k) {
  return k == EntityKind::door || k == EntityKind::container;
}
constexpr bool is_furniture(EntityKind k) {
  return k == EntityKind::container || k == EntityKind::supporter;
}

enum class Direction { north, south, east, west };

inline constexpr Direction kAllDirections[] = {Direction::north, Direction::south,
                                               Direction::east, Direction::west};

constexpr Direction opposite(Direction d) {
  switch (d) {
    case Direction::north: return Direction::south;
    case Direction::south: return Direction::north;
    case Direction::east: return Direction::west;
    case Direction::west: return Direction::east;
  }
  return d;
}

struct GridPos {
  int x = 0;
  int y = 0;
  auto operator<=>(const GridPos&) const = default;
};

// north = +y, east = +x.
constexpr GridPos step(GridPos p, Direction d) {
  switch (d) {
    case Direction::north: return {p.x, p.y + 1};
    case Direction::south: return {p.x, p.y - 1};
    case Direction::east: return {p.x + 1, p.y};
    case Direction::west: return {p.x - 1, p.y};
  }
  return p;
}

enum class Access { none, open, closed, locked };

enum class Predicate { in, on, at, open, closed, locked, match, edible };

struct Fact {
  Predicate predicate = Predicate::at;
  EntityId subject;
  EntityId object;  // none for unary predicates

  auto operator<=>(const Fact&) const = default;
};

enum class Difficulty { easy, medium, hard };

inline constexpr Difficulty kAllDifficulties[] = {Difficulty::easy, Difficulty::medium,
                                                  Difficulty::hard};

struct Entity {
  EntityId id;
  EntityKind kind = EntityKind::object;
  std::string name;
  std::string description;

  bool operator==(const Entity&) const = default;
};

struct Room {
  EntityId id;
  GridPos pos;

  bool operator==(const Room&) const = default;
};

struct Edge {
  EntityId from;
  Direction dir = Direction::north;
  EntityId to;
  std::optional<EntityId> door;

  bool operator==(const Edge&) const = default;
};

// Immutable environment description. Rooms and doors are entities too; the
// rooms list adds grid coordinates and the edges list the connectivity.
struct EnvSpec {
  std::vector<Entity> entities;
  std::vector<Room> rooms;
  std::vector<Edge> edges;
  std::vector<Fact> initial_facts;
  EntityId start_room;
  std::uint64_t seed = 0;
  Difficulty difficulty = Difficulty::easy;

  bool operator==(const EnvSpec&) const = default;

  const Entity& entity(EntityId id) const { return entities.at(id.index()); }
  EntityKind kind(EntityId id) const { return entity(id).kind; }
  const std::string& name(EntityId id) const { return entity(id).name; }

  std::optional<EntityId> find(std::string_view name) const;
  const Room* room(EntityId id) const;
  std::optional<Edge> exit(EntityId room, Direction d) const;
  std::vector<Edge> exits(EntityId room) const;
  bool has_fact(const Fact& f) const;
  // Keys k with match(k, lock).
  std::vector<EntityId> keys_for(EntityId lock) const;
  // Locks x with match(key, x).
  std::vector<EntityId> locks_for(EntityId key) const;
  bool edible(EntityId id) const;
  std::vector<EntityId> ids_of(EntityKind k) const;
  std::vector<std::string> names() const;
};

// Dynamic part of the world. `holder` and `access` are indexed by entity.
struct WorldState {
  std::vector<EntityId> holder;
  std::vector<Access> access;
  EntityId player_room;
  int score = 0;

  bool operator==(const WorldState&) const = default;
};

struct WorldStateHash {
  std::size_t operator()(const WorldState& s) const noexcept;
};

enum class Verb { go, open, close, unlock, take, put, insert, examine, eat, look, inventory };

struct Command {
  Verb verb = Verb::look;
  std::optional<Direction> direction;
  std::vector<std::string> args;

  bool operator==(const Command&) const = default;

  // Canonical surface form, e.g. "unlock door with old key".
  std::string text() const;
};

enum class Outcome { ok, blocked_locked, blocked_closed, no_effect, invalid };

struct Event {
  int step = 0;
  std::string input;
  std::optional<Command> command;
  std::vector<EntityId> targets;  // command arguments, resolved; empty if any name is unknown
  Outcome outcome = Outcome::invalid;
  std::vector<Fact> revealed;
  EntityId room;  // player room after the command

  bool operator==(const Event&) const = default;
};

struct Trajectory {
  int task_id = 0;
  std::vector<Event> events;
  bool won = false;
  int oracle_length = 0;
  std::string error;  // "", "protocol", "timeout", "disconnect", or an exception message

  bool operator==(const Trajectory&) const = default;

  // Number of agent commands; the step-0 look is not counted.
  int actions() const { return events.empty() ? 0 : static_cast<int>(events.size()) - 1; }
};

enum class GoalKind { player_at, holding, is_open, is_unlocked };

struct Goal {
  GoalKind kind = GoalKind::player_at;
  EntityId target;

  auto operator<=>(const Goal&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::string token)
      : std::runtime_error("cannot parse command near \"" + token + "\""),
        token_(std::move(token)) {}
  const std::string& token() const { return token_; }

 private:
  std::string token_;
};

// Name tables ---------------------------------------------------------------

std::string_view to_string(EntityKind k);
std::string_view to_string(Direction d);
std::string_view to_string(Access a);
std::string_view to_string(Predicate p);
std::string_view to_string(Difficulty d);
std::string_view to_string(Verb v);
std::string_view to_string(Outcome o);
std::string_view to_string(GoalKind g);

std::optional<EntityKind> entity_kind_from(std::string_view s);
std::optional<Direction> direction_from(std::string_view s);
std::optional<Access> access_from(std::string_view s);
std::optional<Predicate> predicate_from(std::string_view s);
std::optional<Difficulty> difficulty_from(std::string_view s);
std::optional<Verb> verb_from(std::string_view s);
std::optional<Outcome> outcome_from(std::string_view s);
std::optional<GoalKind> goal_kind_from(std::string_view s);

// Human-readable fact with entity names, e.g. "in(apple, kitchen)".
std::string describe(const Fact& f, const EnvSpec& spec);

}  // namespace worldquiz

template <>
struct std::hash<worldquiz::EntityId> {
  std::size_t operator()(worldquiz::EntityId id) const noexcept { return id.value; }
};
