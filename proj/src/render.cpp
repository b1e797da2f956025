#include "worldquiz/world.hpp"

namespace worldquiz {

namespace {

std::string with_article(const std::string& name) {
  if (name.empty()) return name;
  char c = name.front();
  bool vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  return (vowel ? "an " : "a ") + name;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += i + 1 == items.size() ? " and " : ", ";
    out += items[i];
  }
  return out;
}

std::vector<std::string> held_by(EntityId holder, const WorldState& s, const EnvSpec& spec) {
  std::vector<std::string> out;
  for (const auto& e : spec.entities) {
    if (s.holder[e.id.index()] == holder) out.push_back(with_article(e.name));
  }
  return out;
}

// Locked things are shown as closed.
std::string_view shown_state(Access a) { return a == Access::open ? "open" : "closed"; }

}  // namespace

std::string render_observation(const WorldState& s, const EnvSpec& spec) {
  std::string out = "-= " + spec.name(s.player_room) + " =-\n";
  std::vector<std::string> floor;
  for (const auto& e : spec.entities) {
    if (s.holder[e.id.index()] != s.player_room) continue;
    if (e.kind == EntityKind::container) {
      Access a = s.access[e.id.index()];
      out += "There is " + with_article(std::string(shown_state(a)) + " " + e.name) + " here.";
      if (a == Access::open) {
        auto inside = held_by(e.id, s, spec);
        out += inside.empty() ? " The " + e.name + " is empty."
                              : " In the " + e.name + " you see " + join(inside) + ".";
      }
      out += "\n";
    } else if (e.kind == EntityKind::supporter) {
      auto top = held_by(e.id, s, spec);
      out += "There is " + with_article(e.name) + " here.";
      out += top.empty() ? " The " + e.name + " is bare."
                         : " On the " + e.name + " you see " + join(top) + ".";
      out += "\n";
    } else if (is_portable(e.kind)) {
      floor.push_back(with_article(e.name));
    }
  }
  if (!floor.empty()) out += "On the floor you see " + join(floor) + ".\n";

  auto exits = spec.exits(s.player_room);
  if (exits.empty()) {
    out += "There are no exits.";
    return out;
  }
  std::vector<std::string> parts;
  for (const auto& e : exits) {
    std::string part(to_string(e.dir));
    if (e.door) {
      part += " (" + std::string(shown_state(s.access[e.door->index()])) + " " +
              spec.name(*e.door) + ")";
    }
    parts.push_back(part);
  }
  out += "Exits: " + join(parts) + ".";
  return out;
}

std::string render_inventory(const WorldState& s, const EnvSpec& spec) {
  auto items = held_by(EntityId::inventory(), s, spec);
  if (items.empty()) return "You are carrying nothing.";
  return "You are carrying " + join(items) + ".";
}

std::string render_feedback(const Event& ev, const EnvSpec& spec) {
  if (!ev.command) return "I don't understand that.";
  const Command& c = *ev.command;
  auto arg = [&c](std::size_t i) { return i < c.args.size() ? c.args[i] : std::string(); };
  switch (ev.outcome) {
    case Outcome::invalid: return "You can't do that.";
    case Outcome::no_effect: return "Nothing happens.";
    case Outcome::blocked_closed:
      if (c.verb == Verb::insert) return "The " + arg(1) + " is closed.";
      break;
    case Outcome::blocked_locked:
      if (c.verb == Verb::open) return "The " + arg(0) + " is locked.";
      break;
    case Outcome::ok: break;
  }
  if (c.verb == Verb::go && c.direction) {
    if (ev.outcome == Outcome::ok) return "You go " + std::string(to_string(*c.direction)) + ".";
    // Closed and locked doors look the same from the corridor.
    auto door = spec.exit(ev.room, *c.direction);
    std::string door_name = door && door->door ? spec.name(*door->door) : std::string("door");
    return "You have to open the " + door_name + " first.";
  }
  switch (c.verb) {
    case Verb::open: return "You open the " + arg(0) + ".";
    case Verb::close: return "You close the " + arg(0) + ".";
    case Verb::unlock: return "You unlock the " + arg(0) + " with the " + arg(1) + ".";
    case Verb::take: return "You take the " + arg(0) + ".";
    case Verb::put: return "You put the " + arg(0) + " on the " + arg(1) + ".";
    case Verb::insert: return "You put the " + arg(0) + " into the " + arg(1) + ".";
    case Verb::eat: return "You eat the " + arg(0) + ". Delicious.";
    case Verb::examine: {
      auto id = spec.find(arg(0));
      if (id && !spec.entity(*id).description.empty()) return spec.entity(*id).description;
      return "You see nothing special about the " + arg(0) + ".";
    }
    default: return "";
  }
}

}  // namespace worldquiz
