#include "worldquiz/world.hpp"

#include <algorithm>
#include <deque>

namespace worldquiz {

namespace {

Fact unary(Predicate p, EntityId x) { return Fact{p, x, EntityId::none()}; }

std::optional<Fact> access_fact(EntityId x, Access a) {
  switch (a) {
    case Access::open: return unary(Predicate::open, x);
    case Access::closed: return unary(Predicate::closed, x);
    // A locked door or container looks closed; locked is revealed only by trying it.
    default: return std::nullopt;
  }
}

// Placement fact of an entity relative to its immediate holder.
std::optional<Fact> placement_fact(EntityId x, const WorldState& s, const EnvSpec& spec) {
  EntityId h = s.holder[x.index()];
  if (h.is_none()) return std::nullopt;
  if (h.is_inventory()) return Fact{Predicate::in, x, h};
  switch (spec.kind(h)) {
    case EntityKind::room:
      return Fact{is_furniture(spec.kind(x)) ? Predicate::at : Predicate::in, x, h};
    case EntityKind::supporter: return Fact{Predicate::on, x, h};
    case EntityKind::container: return Fact{Predicate::in, x, h};
    default: return std::nullopt;
  }
}

void normalize(std::vector<Fact>& facts) {
  std::sort(facts.begin(), facts.end());
  facts.erase(std::unique(facts.begin(), facts.end()), facts.end());
}

// Facts about one visible entity: where it is, its visible access state,
// edibility, and for open containers and supporters what they hold.
void entity_facts(EntityId x, const WorldState& s, const EnvSpec& spec, std::vector<Fact>& out) {
  if (auto f = placement_fact(x, s, spec)) out.push_back(*f);
  EntityKind k = spec.kind(x);
  if (is_lockable(k)) {
    if (auto f = access_fact(x, s.access[x.index()])) out.push_back(*f);
  }
  if (spec.edible(x)) out.push_back(unary(Predicate::edible, x));
  bool shows_contents =
      k == EntityKind::supporter || (k == EntityKind::container && s.access[x.index()] == Access::open);
  if (shows_contents) {
    for (const auto& e : spec.entities) {
      if (s.holder[e.id.index()] != x) continue;
      if (auto f = placement_fact(e.id, s, spec)) out.push_back(*f);
      if (spec.edible(e.id)) out.push_back(unary(Predicate::edible, e.id));
    }
  }
}

std::vector<Fact> room_facts(const WorldState& s, const EnvSpec& spec) {
  std::vector<Fact> out;
  out.push_back(Fact{Predicate::at, EntityId::player(), s.player_room});
  for (const auto& edge : spec.exits(s.player_room)) {
    if (!edge.door) continue;
    if (auto f = access_fact(*edge.door, s.access[edge.door->index()])) out.push_back(*f);
  }
  for (const auto& e : spec.entities) {
    if (e.kind == EntityKind::room || e.kind == EntityKind::door) continue;
    if (s.holder[e.id.index()].is_inventory()) continue;
    if (!in_scope(e.id, s, spec)) continue;
    if (auto f = placement_fact(e.id, s, spec)) out.push_back(*f);
    if (is_lockable(e.kind)) {
      if (auto f = access_fact(e.id, s.access[e.id.index()])) out.push_back(*f);
    }
    if (spec.edible(e.id)) out.push_back(unary(Predicate::edible, e.id));
  }
  normalize(out);
  return out;
}

bool is_door_of_room(EntityId door, EntityId room, const EnvSpec& spec) {
  for (const auto& e : spec.edges) {
    if (e.from == room && e.door == door) return true;
  }
  return false;
}

}  // namespace

WorldState initial_state(const EnvSpec& spec) {
  WorldState s;
  s.holder.assign(spec.entities.size(), EntityId::none());
  s.access.assign(spec.entities.size(), Access::none);
  for (const auto& e : spec.entities) {
    if (is_lockable(e.kind)) s.access[e.id.index()] = Access::closed;
  }
  for (const auto& f : spec.initial_facts) {
    if (!f.subject.is_entity()) continue;
    switch (f.predicate) {
      case Predicate::in:
      case Predicate::on:
      case Predicate::at: s.holder[f.subject.index()] = f.object; break;
      case Predicate::open: s.access[f.subject.index()] = Access::open; break;
      case Predicate::closed: s.access[f.subject.index()] = Access::closed; break;
      case Predicate::locked: s.access[f.subject.index()] = Access::locked; break;
      default: break;
    }
  }
  s.player_room = spec.start_room;
  return s;
}

EntityId room_of(EntityId id, const WorldState& s, const EnvSpec& spec) {
  if (!id.is_entity()) return EntityId::none();
  if (spec.kind(id) == EntityKind::room) return id;
  EntityId h = id;
  for (std::size_t guard = 0; guard <= spec.entities.size(); ++guard) {
    if (h.is_inventory()) return s.player_room;
    if (h.is_none()) return EntityId::none();
    if (h != id && spec.kind(h) == EntityKind::room) return h;
    h = s.holder[h.index()];
  }
  return EntityId::none();
}

bool in_scope(EntityId id, const WorldState& s, const EnvSpec& spec) {
  if (!id.is_entity() || id.index() >= spec.entities.size()) return false;
  switch (spec.kind(id)) {
    case EntityKind::room: return id == s.player_room;
    case EntityKind::door: return is_door_of_room(id, s.player_room, spec);
    case EntityKind::container:
    case EntityKind::supporter: return s.holder[id.index()] == s.player_room;
    default: break;
  }
  EntityId h = s.holder[id.index()];
  for (std::size_t guard = 0; guard <= spec.entities.size(); ++guard) {
    if (h.is_inventory()) return true;
    if (h.is_none()) return false;
    switch (spec.kind(h)) {
      case EntityKind::room: return h == s.player_room;
      case EntityKind::container:
        if (s.access[h.index()] != Access::open) return false;
        break;
      case EntityKind::supporter: break;
      default: return false;
    }
    h = s.holder[h.index()];
  }
  return false;
}

bool holds(const Fact& f, const WorldState& s, const EnvSpec& spec) {
  auto valid = [&spec](EntityId id) { return id.is_entity() && id.index() < spec.entities.size(); };
  switch (f.predicate) {
    case Predicate::at:
      if (f.subject.is_player()) return s.player_room == f.object;
      return valid(f.subject) && s.holder[f.subject.index()] == f.object;
    case Predicate::in:
    case Predicate::on: return valid(f.subject) && s.holder[f.subject.index()] == f.object;
    case Predicate::open: return valid(f.subject) && s.access[f.subject.index()] == Access::open;
    case Predicate::closed: return valid(f.subject) && s.access[f.subject.index()] == Access::closed;
    case Predicate::locked: return valid(f.subject) && s.access[f.subject.index()] == Access::locked;
    case Predicate::match:
    case Predicate::edible: return spec.has_fact(f);
  }
  return false;
}

bool satisfied(const Goal& goal, const WorldState& s) {
  switch (goal.kind) {
    case GoalKind::player_at: return s.player_room == goal.target;
    case GoalKind::holding: return s.holder[goal.target.index()].is_inventory();
    case GoalKind::is_open: return s.access[goal.target.index()] == Access::open;
    case GoalKind::is_unlocked: return s.access[goal.target.index()] != Access::locked;
  }
  return false;
}

Event initial_look(const WorldState& state, const EnvSpec& spec) {
  Event ev;
  ev.step = 0;
  ev.command = Command{Verb::look, std::nullopt, {}};
  ev.input = "look";
  ev.outcome = Outcome::ok;
  ev.revealed = room_facts(state, spec);
  ev.room = state.player_room;
  return ev;
}

Transition apply_command(const WorldState& state, const EnvSpec& spec, const Command& cmd) {
  Transition t{state, Event{}};
  Event& ev = t.event;
  ev.input = cmd.text();
  ev.command = cmd;
  ev.room = state.player_room;
  WorldState& s = t.state;

  std::vector<EntityId> ids;
  for (const auto& a : cmd.args) {
    auto id = spec.find(a);
    if (!id) {
      ev.outcome = Outcome::invalid;
      return t;
    }
    ids.push_back(*id);
  }
  ev.targets = ids;
  auto fail = [&](Outcome o) -> Transition& {
    t.state = state;
    ev.outcome = o;
    ev.revealed.clear();
    return t;
  };
  auto arity = [&](std::size_t lo, std::size_t hi) { return ids.size() >= lo && ids.size() <= hi; };
  auto held = [&](EntityId id) { return s.holder[id.index()].is_inventory(); };

  switch (cmd.verb) {
    case Verb::go: {
      if (!cmd.direction || !ids.empty()) return fail(Outcome::invalid);
      auto edge = spec.exit(s.player_room, *cmd.direction);
      if (!edge) return fail(Outcome::invalid);
      if (edge->door) {
        Access a = s.access[edge->door->index()];
        if (a == Access::locked) return fail(Outcome::blocked_locked);
        if (a == Access::closed) return fail(Outcome::blocked_closed);
      }
      s.player_room = edge->to;
      ev.revealed = room_facts(s, spec);
      break;
    }
    case Verb::look:
      if (!ids.empty()) return fail(Outcome::invalid);
      ev.revealed = room_facts(s, spec);
      break;
    case Verb::inventory:
      if (!ids.empty()) return fail(Outcome::invalid);
      for (const auto& e : spec.entities) {
        if (held(e.id)) ev.revealed.push_back(Fact{Predicate::in, e.id, EntityId::inventory()});
      }
      break;
    case Verb::open: {
      if (!arity(1, 1)) return fail(Outcome::invalid);
      EntityId x = ids[0];
      if (!is_lockable(spec.kind(x)) || !in_scope(x, s, spec)) return fail(Outcome::invalid);
      Access& a = s.access[x.index()];
      if (a == Access::open) return fail(Outcome::no_effect);
      if (a == Access::locked) {
        fail(Outcome::blocked_locked);
        ev.revealed.push_back(unary(Predicate::locked, x));
        return t;
      }
      a = Access::open;
      entity_facts(x, s, spec, ev.revealed);
      break;
    }
    case Verb::close: {
      if (!arity(1, 1)) return fail(Outcome::invalid);
      EntityId x = ids[0];
      if (!is_lockable(spec.kind(x)) || !in_scope(x, s, spec)) return fail(Outcome::invalid);
      Access& a = s.access[x.index()];
      if (a != Access::open) return fail(Outcome::no_effect);
      a = Access::closed;
      ev.revealed.push_back(unary(Predicate::closed, x));
      break;
    }
    case Verb::unlock: {
      if (!arity(2, 2)) return fail(Outcome::invalid);
      EntityId x = ids[0];
      EntityId k = ids[1];
      if (!is_lockable(spec.kind(x)) || !in_scope(x, s, spec)) return fail(Outcome::invalid);
      if (spec.kind(k) != EntityKind::key || !held(k)) return fail(Outcome::invalid);
      Fact m{Predicate::match, k, x};
      // A wrong key reveals nothing.
      if (s.access[x.index()] != Access::locked || !spec.has_fact(m)) return fail(Outcome::no_effect);
      s.access[x.index()] = Access::closed;
      ev.revealed = {m, unary(Predicate::closed, x)};
      break;
    }
    case Verb::take: {
      if (!arity(1, 2)) return fail(Outcome::invalid);
      EntityId x = ids[0];
      if (!is_portable(spec.kind(x)) || !in_scope(x, s, spec)) return fail(Outcome::invalid);
      if (ids.size() == 2 && s.holder[x.index()] != ids[1]) return fail(Outcome::invalid);
      if (held(x)) return fail(Outcome::no_effect);
      s.holder[x.index()] = EntityId::inventory();
      ev.revealed.push_back(Fact{Predicate::in, x, EntityId::inventory()});
      break;
    }
    case Verb::put: {
      if (!arity(2, 2)) return fail(Outcome::invalid);
      EntityId x = ids[0];
      EntityId target = ids[1];
      if (!is_portable(spec.kind(x)) || !held(x)) return fail(Outcome::invalid);
      if (spec.kind(target) != EntityKind::supporter || !in_scope(target, s, spec))
        return fail(Outcome::invalid);
      s.holder[x.index()] = target;
      ev.revealed.push_back(Fact{Predicate::on, x, target});
      break;
    }
    case Verb::insert: {
      if (!arity(2, 2)) return fail(Outcome::invalid);
      EntityId x = ids[0];
      EntityId target = ids[1];
      if (!is_portable(spec.kind(x)) || !held(x)) return fail(Outcome::invalid);
      if (spec.kind(target) != EntityKind::container || !in_scope(target, s, spec))
        return fail(Outcome::invalid);
      if (s.access[target.index()] != Access::open) return fail(Outcome::blocked_closed);
      s.holder[x.index()] = target;
      ev.revealed.push_back(Fact{Predicate::in, x, target});
      break;
    }
    case Verb::examine: {
      if (!arity(1, 1)) return fail(Outcome::invalid);
      EntityId x = ids[0];
      if (!in_scope(x, s, spec)) return fail(Outcome::invalid);
      if (spec.kind(x) == EntityKind::room) {
        ev.revealed = room_facts(s, spec);
      } else {
        entity_facts(x, s, spec, ev.revealed);
      }
      break;
    }
    case Verb::eat: {
      if (!arity(1, 1)) return fail(Outcome::invalid);
      EntityId x = ids[0];
      if (!held(x) || !spec.edible(x)) return fail(Outcome::invalid);
      s.holder[x.index()] = EntityId::none();
      break;
    }
  }
  ev.outcome = Outcome::ok;
  ev.room = s.player_room;
  normalize(ev.revealed);
  return t;
}

std::set<EntityId> reachable_rooms(const WorldState& s, const EnvSpec& spec, bool ignore_locks) {
  std::set<EntityId> seen{s.player_room};
  std::deque<EntityId> queue{s.player_room};
  while (!queue.empty()) {
    EntityId r = queue.front();
    queue.pop_front();
    for (const auto& e : spec.exits(r)) {
      if (e.door && !ignore_locks && s.access[e.door->index()] == Access::locked) continue;
      if (seen.insert(e.to).second) queue.push_back(e.to);
    }
  }
  return seen;
}

std::vector<Command> admissible_commands(const WorldState& s, const EnvSpec& spec) {
  std::vector<Command> out;
  out.push_back(Command{Verb::look, std::nullopt, {}});
  out.push_back(Command{Verb::inventory, std::nullopt, {}});
  for (const auto& e : spec.exits(s.player_room)) out.push_back(Command{Verb::go, e.dir, {}});

  std::vector<EntityId> visible;
  for (const auto& e : spec.entities) {
    if (e.kind != EntityKind::room && in_scope(e.id, s, spec)) visible.push_back(e.id);
  }
  auto one = [](Verb v, const std::string& a) { return Command{v, std::nullopt, {a}}; };
  auto two = [](Verb v, const std::string& a, const std::string& b) {
    return Command{v, std::nullopt, {a, b}};
  };
  for (EntityId x : visible) {
    const std::string& name = spec.name(x);
    EntityKind k = spec.kind(x);
    out.push_back(one(Verb::examine, name));
    if (is_lockable(k)) {
      out.push_back(one(Verb::open, name));
      out.push_back(one(Verb::close, name));
      for (EntityId key : visible) {
        if (spec.kind(key) == EntityKind::key && s.holder[key.index()].is_inventory())
          out.push_back(two(Verb::unlock, name, spec.name(key)));
      }
    }
    if (!is_portable(k)) continue;
    if (!s.holder[x.index()].is_inventory()) {
      out.push_back(one(Verb::take, name));
      continue;
    }
    if (spec.edible(x)) out.push_back(one(Verb::eat, name));
    for (EntityId target : visible) {
      if (spec.kind(target) == EntityKind::supporter)
        out.push_back(two(Verb::put, name, spec.name(target)));
      if (spec.kind(target) == EntityKind::container)
        out.push_back(two(Verb::insert, name, spec.name(target)));
    }
  }
  return out;
}

std::optional<std::string> check_state(const WorldState& s, const EnvSpec& spec) {
  const std::size_t n = spec.entities.size();
  if (s.holder.size() != n || s.access.size() != n) return "state size mismatch";
  if (!s.player_room.is_entity() || s.player_room.index() >= n ||
      spec.kind(s.player_room) != EntityKind::room)
    return "player is not in a room";
  for (const auto& e : spec.entities) {
    const EntityId h = s.holder[e.id.index()];
    const Access a = s.access[e.id.index()];
    const std::string who = e.name;
    if (is_lockable(e.kind)) {
      if (a != Access::open && a != Access::closed && a != Access::locked)
        return who + ": lockable without access state";
    } else if (a != Access::none) {
      return who + ": access state on a non-lockable";
    }
    switch (e.kind) {
      case EntityKind::room:
      case EntityKind::door:
        if (!h.is_none()) return who + ": rooms and doors are never placed";
        continue;
      case EntityKind::container:
      case EntityKind::supporter:
        if (!h.is_entity() || h.index() >= n || spec.kind(h) != EntityKind::room)
          return who + ": furniture must stand in a room";
        continue;
      default: break;
    }
    if (h.is_none()) {
      if (!spec.edible(e.id)) return who + ": only food can disappear";
      continue;
    }
    // Walk to a root; a cycle or a bad holder kind is a violation.
    EntityId cur = h;
    std::size_t guard = 0;
    while (!cur.is_inventory()) {
      if (!cur.is_entity() || cur.index() >= n) return who + ": bad holder";
      EntityKind hk = spec.kind(cur);
      if (hk == EntityKind::room) break;
      if (hk != EntityKind::container && hk != EntityKind::supporter)
        return who + ": held by a " + std::string(to_string(hk));
      if (++guard > n) return who + ": containment cycle";
      cur = s.holder[cur.index()];
    }
  }
  return std::nullopt;
}

}  // namespace worldquiz
