#pragma once

#include "worldquiz/builder.hpp"
#include "worldquiz/world.hpp"

namespace worldquiz::testing {

// Room A --east/west-- Room B through a locked "door". A table in Room A holds
// the matching "old key"; a closed fridge in Room B holds an apple.
struct TwoRoomWorld {
  EnvSpec spec;
  EntityId room_a, room_b, door, table, key, fridge, apple;
};

inline TwoRoomWorld two_room_world(Access door_access = Access::locked) {
  SpecBuilder b;
  TwoRoomWorld w;
  w.room_a = b.room("room a", {0, 0});
  w.room_b = b.room("room b", {1, 0});
  w.door = *b.connect(w.room_a, Direction::east, w.room_b, "door", door_access);
  w.table = b.add(EntityKind::supporter, "table", w.room_a);
  w.key = b.add(EntityKind::key, "old key", w.table);
  b.fact(Predicate::match, w.key, w.door);
  w.fridge = b.add(EntityKind::container, "fridge", w.room_b, Access::closed);
  w.apple = b.add(EntityKind::food, "apple", w.fridge);
  b.start(w.room_a);
  w.spec = b.build();
  return w;
}

// Five rooms in an east-going chain, a door on every edge. The door between
// rooms 2 and 3 is locked and its key lies in room 4.
struct ChainWorld {
  EnvSpec spec;
  std::vector<EntityId> rooms;
  std::vector<EntityId> doors;
  EntityId key;
};

inline ChainWorld chain_world() {
  SpecBuilder b;
  ChainWorld w;
  for (int i = 0; i < 5; ++i) w.rooms.push_back(b.room("room " + std::to_string(i), {i, 0}));
  for (int i = 0; i < 4; ++i) {
    Access a = i == 2 ? Access::locked : Access::closed;
    w.doors.push_back(*b.connect(w.rooms[i], Direction::east, w.rooms[i + 1],
                                 "door " + std::to_string(i), a));
  }
  w.key = b.add(EntityKind::key, "iron key", w.rooms[4]);
  b.fact(Predicate::match, w.key, w.doors[2]);
  w.spec = b.build();
  return w;
}

inline Transition run(const WorldState& s, const EnvSpec& spec, const std::string& text) {
  return apply_command(s, spec, parse_command(text, spec));
}

}  // namespace worldquiz::testing
