#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "worldquiz/types.hpp"

namespace worldquiz {

// Builds the initial WorldState from the placement and access facts of `spec`.
WorldState initial_state(const EnvSpec& spec);

// Parses a player command. Case-insensitive; "the", "a" and "an" are ignored.
// Entity names are matched greedily (longest first) against `names`.
// Throws ParseError carrying the first token that could not be consumed.
Command parse_command(std::string_view text, std::span<const std::string> names);
Command parse_command(std::string_view text, const EnvSpec& spec);

struct Transition {
  WorldState state;
  Event event;
};

// Applies one command. Never throws for ill-targeted commands: those yield an
// `invalid` event and leave the state unchanged. The returned event has step 0;
// callers number it.
Transition apply_command(const WorldState& state, const EnvSpec& spec, const Command& cmd);

// Step-0 event: a look in the start room.
Event initial_look(const WorldState& state, const EnvSpec& spec);

std::string render_observation(const WorldState& state, const EnvSpec& spec);
std::string render_inventory(const WorldState& state, const EnvSpec& spec);
// One-line feedback for an event ("The wooden door is locked.").
std::string render_feedback(const Event& event, const EnvSpec& spec);

// Rooms reachable from the player's room. Closed doors never block; locked
// doors block unless `ignore_locks`.
std::set<EntityId> reachable_rooms(const WorldState& state, const EnvSpec& spec,
                                   bool ignore_locks);

// Room an entity currently sits in, following supporter/container holders.
// Returns the player's room for inventory items and none for consumed items.
EntityId room_of(EntityId id, const WorldState& state, const EnvSpec& spec);

// True if the player can see and address `id` from the current room.
bool in_scope(EntityId id, const WorldState& state, const EnvSpec& spec);

// Truth of a fact in `state` (static facts match/edible come from `spec`).
bool holds(const Fact& fact, const WorldState& state, const EnvSpec& spec);

// Every syntactically meaningful command over entities in scope. Used by the
// random agent and by exhaustive-search test oracles.
std::vector<Command> admissible_commands(const WorldState& state, const EnvSpec& spec);

// Checks the WorldState invariants (holder forest, access trichotomy, door and
// room placement rules). Returns a description of the first violation.
std::optional<std::string> check_state(const WorldState& state, const EnvSpec& spec);

bool satisfied(const Goal& goal, const WorldState& state);

}  // namespace worldquiz
