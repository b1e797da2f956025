#include "worldquiz/builder.hpp"

#include <algorithm>

namespace worldquiz {

EntityId SpecBuilder::new_entity(EntityKind kind, std::string name, std::string description) {
  EntityId id(spec_.entities.size());
  spec_.entities.push_back(Entity{id, kind, std::move(name), std::move(description)});
  return id;
}

EntityId SpecBuilder::room(std::string name, GridPos pos) {
  EntityId id = new_entity(EntityKind::room, std::move(name), {});
  spec_.rooms.push_back(Room{id, pos});
  if (spec_.start_room.is_none()) spec_.start_room = id;
  return id;
}

std::optional<EntityId> SpecBuilder::connect(EntityId from, Direction dir, EntityId to,
                                             std::optional<std::string> door_name,
                                             Access door_access) {
  std::optional<EntityId> door;
  if (door_name) {
    door = new_entity(EntityKind::door, std::move(*door_name), {});
    set_access(*door, door_access);
  }
  spec_.edges.push_back(Edge{from, dir, to, door});
  spec_.edges.push_back(Edge{to, opposite(dir), from, door});
  return door;
}

EntityId SpecBuilder::add(EntityKind kind, std::string name, EntityId holder, Access access,
                          std::string description) {
  EntityId id = new_entity(kind, std::move(name), std::move(description));
  Predicate p = Predicate::in;
  if (is_furniture(kind)) {
    p = Predicate::at;
  } else if (holder.is_entity() && spec_.kind(holder) == EntityKind::supporter) {
    p = Predicate::on;
  }
  spec_.initial_facts.push_back(Fact{p, id, holder});
  if (is_lockable(kind)) set_access(id, access);
  if (kind == EntityKind::food) fact(Predicate::edible, id);
  return id;
}

void SpecBuilder::fact(Predicate p, EntityId subject, EntityId object) {
  spec_.initial_facts.push_back(Fact{p, subject, object});
}

void SpecBuilder::set_access(EntityId x, Access a) {
  auto& facts = spec_.initial_facts;
  facts.erase(std::remove_if(facts.begin(), facts.end(),
                             [x](const Fact& f) {
                               return f.subject == x && (f.predicate == Predicate::open ||
                                                         f.predicate == Predicate::closed ||
                                                         f.predicate == Predicate::locked);
                             }),
              facts.end());
  Predicate p = a == Access::open ? Predicate::open
                : a == Access::locked ? Predicate::locked
                                      : Predicate::closed;
  facts.push_back(Fact{p, x, EntityId::none()});
}

void SpecBuilder::start(EntityId room) { spec_.start_room = room; }

}  // namespace worldquiz
