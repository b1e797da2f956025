#pragma once

#include <optional>
#include <string>

#include "worldquiz/types.hpp"

namespace worldquiz {

// Incremental EnvSpec construction in the style of a game maker: create
// rooms, connect them, add entities to holders and attach facts.
class SpecBuilder {
 public:
  SpecBuilder() = default;
  explicit SpecBuilder(EnvSpec base) : spec_(std::move(base)) {}

  EntityId room(std::string name, GridPos pos);
  // Connects `from` to `to` in direction `dir` and the reverse edge. The
  // optional door starts with the given access state.
  std::optional<EntityId> connect(EntityId from, Direction dir, EntityId to,
                                  std::optional<std::string> door_name = std::nullopt,
                                  Access door_access = Access::closed);
  // Adds an entity placed in/on/at `holder` (a room, supporter, container or
  // the inventory). Lockable kinds get `access` as their initial state.
  EntityId add(EntityKind kind, std::string name, EntityId holder,
               Access access = Access::closed, std::string description = {});
  void fact(Predicate p, EntityId subject, EntityId object = EntityId::none());
  void set_access(EntityId x, Access a);
  void start(EntityId room);

  const EnvSpec& spec() const { return spec_; }
  EnvSpec build() const { return spec_; }

 private:
  EntityId new_entity(EntityKind kind, std::string name, std::string description);

  EnvSpec spec_;
};

}  // namespace worldquiz
