#include "worldquiz/env_gen.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string_view>

#include "worldquiz/builder.hpp"
#include "worldquiz/world.hpp"

namespace worldquiz {

namespace {

using Pool = std::vector<std::string_view>;

const Pool kRoomNames = {
    "kitchen", "bedroom", "living room", "bathroom", "canteen", "cellar", "attic",
    "study", "library", "pantry", "garage", "hallway", "office", "workshop",
    "laundry", "nursery", "gallery", "chapel", "armory", "vault", "scullery",
    "storeroom", "parlor", "foyer", "conservatory", "ballroom", "den", "greenhouse",
    "observatory", "billiard room"};
const Pool kAdjectives = {
    "old", "brass", "silver", "golden", "iron", "rusty", "small", "large", "copper",
    "bronze", "steel", "wooden", "oak", "red", "blue", "green", "white", "black",
    "painted", "carved", "heavy", "dusty", "shiny", "cracked", "plain", "ornate"};
const Pool kDoorNouns = {"door", "gate", "hatch"};
const Pool kContainerNouns = {"chest", "fridge", "box", "cabinet", "crate", "safe",
                              "locker", "trunk", "wardrobe", "cupboard", "toolbox",
                              "suitcase", "coffer", "hamper"};
const Pool kSupporterNouns = {"table", "shelf", "counter", "desk", "bench", "stand",
                              "workbench", "nightstand", "sofa", "pedestal", "dresser",
                              "rack", "bed", "stool"};
const Pool kObjectNouns = {"book", "lamp", "coin", "candle", "map", "ring", "hat",
                           "scarf", "cup", "plate", "spoon", "pen", "notebook", "mirror",
                           "clock", "vase", "brush", "comb", "glove", "compass", "bell",
                           "statuette", "flute", "rope"};
const Pool kFoodNouns = {"apple", "bread", "cheese", "carrot", "banana", "pie", "cookie",
                         "orange", "potato", "sandwich", "cake", "egg"};
const Pool kKeyNouns = {"key"};

// Hands out names unique within one environment.
class NameBank {
 public:
  explicit NameBank(const EnvSpec& spec) {
    for (const auto& e : spec.entities) used_.push_back(e.name);
  }

  std::string take(const Pool& nouns, Rng& rng, bool adjective_first = false) {
    if (!adjective_first) {
      Pool order = nouns;
      rng.shuffle(order);
      for (auto n : order) {
        if (claim(std::string(n))) return std::string(n);
      }
    }
    std::vector<std::string> combos;
    for (auto a : kAdjectives) {
      for (auto n : nouns) combos.push_back(std::string(a) + " " + std::string(n));
    }
    rng.shuffle(combos);
    for (auto& c : combos) {
      if (claim(c)) return c;
    }
    throw GenerationError("name pool exhausted", 0);
  }

 private:
  bool claim(const std::string& n) {
    if (std::find(used_.begin(), used_.end(), n) != used_.end()) return false;
    used_.push_back(n);
    return true;
  }

  std::vector<std::string> used_;
};

std::string describe_kind(EntityKind k, const std::string& name) {
  switch (k) {
    case EntityKind::container: return "The " + name + " can be opened and closed.";
    case EntityKind::supporter: return "The " + name + " is sturdy enough to hold things.";
    case EntityKind::key: return "The " + name + " might open something.";
    case EntityKind::food: return "The " + name + " looks edible.";
    case EntityKind::door: return "The " + name + " connects two rooms.";
    default: return "The " + name + " is unremarkable.";
  }
}

std::map<EntityId, int> room_distances(const EnvSpec& spec, EntityId from) {
  std::map<EntityId, int> dist{{from, 0}};
  std::deque<EntityId> queue{from};
  while (!queue.empty()) {
    EntityId r = queue.front();
    queue.pop_front();
    for (const auto& e : spec.exits(r)) {
      if (dist.emplace(e.to, dist[r] + 1).second) queue.push_back(e.to);
    }
  }
  return dist;
}

// Room with the smallest eccentricity, then smallest total distance.
EntityId central_room(const EnvSpec& spec) {
  std::pair<int, int> best{INT32_MAX, INT32_MAX};
  EntityId out = spec.rooms.front().id;
  for (const auto& r : spec.rooms) {
    int ecc = 0;
    int total = 0;
    for (const auto& [_, d] : room_distances(spec, r.id)) {
      ecc = std::max(ecc, d);
      total += d;
    }
    if (std::pair(ecc, total) < best) {
      best = {ecc, total};
      out = r.id;
    }
  }
  return out;
}

// Rooms reachable from the start without crossing any door in `blocked`.
std::set<EntityId> region_avoiding(const EnvSpec& spec, const std::set<EntityId>& blocked) {
  std::set<EntityId> seen{spec.start_room};
  std::deque<EntityId> queue{spec.start_room};
  while (!queue.empty()) {
    EntityId r = queue.front();
    queue.pop_front();
    for (const auto& e : spec.exits(r)) {
      if (e.door && blocked.count(*e.door)) continue;
      if (seen.insert(e.to).second) queue.push_back(e.to);
    }
  }
  return seen;
}

// Picks holders so that items spread over leaf rooms and empty containers,
// which keeps every room and container on some task path.
class Placer {
 public:
  Placer(const EnvSpec& spec, Rng& rng) : spec_(spec), rng_(rng) {}

  EntityId choose(const std::set<EntityId>& rooms, const std::set<EntityId>& forbidden) {
    WorldState s = initial_state(spec_);
    std::vector<EntityId> empty_containers;
    std::vector<EntityId> bare_leaves;
    for (const auto& e : spec_.entities) {
      if (e.kind == EntityKind::container && !forbidden.count(e.id) &&
          rooms.count(s.holder[e.id.index()]) && !holds_anything(e.id, s)) {
        empty_containers.push_back(e.id);
      }
      if (e.kind == EntityKind::room && rooms.count(e.id) && e.id != spec_.start_room &&
          spec_.exits(e.id).size() == 1 && !room_has_item(e.id, s)) {
        bare_leaves.push_back(e.id);
      }
    }
    if (!empty_containers.empty() && (bare_leaves.empty() || rng_.chance(0.5))) {
      return rng_.pick(empty_containers);
    }
    std::vector<EntityId> room_list(rooms.begin(), rooms.end());
    EntityId room = bare_leaves.empty() ? rng_.pick(room_list) : rng_.pick(bare_leaves);
    std::vector<EntityId> options{room};
    for (const auto& e : spec_.entities) {
      if (is_furniture(e.kind) && s.holder[e.id.index()] == room && !forbidden.count(e.id))
        options.push_back(e.id);
    }
    return rng_.pick(options);
  }

 private:
  bool holds_anything(EntityId c, const WorldState& s) const {
    return std::find(s.holder.begin(), s.holder.end(), c) != s.holder.end();
  }
  bool room_has_item(EntityId room, const WorldState& s) const {
    for (const auto& e : spec_.entities) {
      if (is_portable(e.kind) && room_of(e.id, s, spec_) == room) return true;
    }
    return false;
  }

  const EnvSpec& spec_;
  Rng& rng_;
};

std::set<EntityId> all_rooms(const EnvSpec& spec) {
  std::set<EntityId> out;
  for (const auto& r : spec.rooms) out.insert(r.id);
  return out;
}

int lock_total(double fraction, int lockable) {
  return static_cast<int>(std::floor(fraction * lockable + 1e-9));
}

}  // namespace

DifficultyConfig DifficultyConfig::preset(Difficulty d) {
  DifficultyConfig c;
  c.difficulty = d;
  switch (d) {
    case Difficulty::easy:
      c.rooms = {3, 5};
      c.objects = {6, 10};
      c.distractor_count = {1, 1};
      c.portables = {1, 1};
      c.door_fraction = 0.5;
      c.branch_probability = 0.0;
      c.quiz_caps = {14, 6, 4, 3, 12};
      break;
    case Difficulty::medium:
      c.rooms = {6, 10};
      c.objects = {14, 18};
      c.distractor_count = {2, 3};
      c.portables = {2, 4};
      c.door_fraction = 0.3;
      c.branch_probability = 0.5;
      c.quiz_caps = {23, 12, 10, 5, 19};
      break;
    case Difficulty::hard:
      c.rooms = {16, 20};
      c.objects = {28, 32};
      c.distractor_count = {3, 4};
      c.portables = {7, 9};
      c.door_fraction = 0.2;
      c.branch_probability = 0.8;
      c.quiz_caps = {32, 18, 14, 8, 27};
      break;
  }
  return c;
}

int distractor_count(const DifficultyConfig& cfg) {
  Rng r(mix_seed(cfg.seed, "distractors"));
  return r.uniform(cfg.distractor_count.lo, cfg.distractor_count.hi);
}

EnvSpec gen_layout(const DifficultyConfig& cfg, Rng& rng) {
  if (cfg.rooms.lo < 1 || cfg.rooms.hi < cfg.rooms.lo)
    throw GenerationError("empty room range", cfg.seed);
  const int n = rng.uniform(cfg.rooms.lo, cfg.rooms.hi);
  const int half = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) / 2.0));
  auto inside = [half](GridPos p) { return std::abs(p.x) <= half && std::abs(p.y) <= half; };

  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<GridPos> cells{{0, 0}};
    std::vector<std::pair<int, std::pair<Direction, int>>> links;  // from, dir, to
    auto taken = [&cells](GridPos p) { return std::find(cells.begin(), cells.end(), p) != cells.end(); };
    auto free_dirs = [&](int i) {
      std::vector<Direction> out;
      for (Direction d : kAllDirections) {
        GridPos p = step(cells[i], d);
        if (inside(p) && !taken(p)) out.push_back(d);
      }
      return out;
    };
    int last = 0;
    bool trapped = false;
    for (int i = 1; i < n; ++i) {
      int from = rng.chance(cfg.branch_probability) ? static_cast<int>(rng.index(cells.size())) : last;
      auto dirs = free_dirs(from);
      if (dirs.empty()) {
        std::vector<int> open;
        for (int j = 0; j < static_cast<int>(cells.size()); ++j) {
          if (!free_dirs(j).empty()) open.push_back(j);
        }
        if (open.empty()) {
          trapped = true;
          break;
        }
        from = rng.pick(open);
        dirs = free_dirs(from);
      }
      Direction d = rng.pick(dirs);
      cells.push_back(step(cells[from], d));
      links.push_back({from, {d, i}});
      last = i;
    }
    if (trapped) continue;

    EnvSpec base;
    base.seed = cfg.seed;
    base.difficulty = cfg.difficulty;
    NameBank names(base);
    SpecBuilder b(base);
    std::vector<EntityId> ids;
    for (const auto& c : cells) ids.push_back(b.room(names.take(kRoomNames, rng), c));
    for (const auto& [from, link] : links) {
      std::optional<std::string> door;
      Access access = Access::closed;
      if (rng.chance(cfg.door_fraction)) {
        door = names.take(kDoorNouns, rng, true);
        if (rng.chance(cfg.open_door_fraction)) access = Access::open;
      }
      b.connect(ids[from], link.first, ids[link.second], door, access);
    }
    EnvSpec out = b.build();
    out.start_room = central_room(out);
    for (auto& e : out.entities) {
      if (e.kind == EntityKind::door) e.description = describe_kind(e.kind, e.name);
    }
    return out;
  }
  throw GenerationError("layout walk self-trapped", cfg.seed);
}

EnvSpec place_entities(EnvSpec layout, const DifficultyConfig& cfg, Rng& rng) {
  const int total = rng.uniform(cfg.objects.lo, cfg.objects.hi);
  const int distractors = distractor_count(cfg);
  const int doors = static_cast<int>(layout.ids_of(EntityKind::door).size());

  // Split the budget: portables + distractors + containers + supporters +
  // keys (one per lock) == total, with containers and supporters balanced.
  int portables = rng.uniform(cfg.portables.lo, cfg.portables.hi);
  int containers = -1;
  int supporters = -1;
  for (; portables >= 0 && containers < 0; --portables) {
    const int rest = total - portables - distractors;
    int best = -1;
    for (int c = 0; c <= rest; ++c) {
      int s = rest - c - lock_total(cfg.lock_fraction, doors + c);
      if (s < 0) continue;
      if (best < 0 || std::abs(c - s) < best) {
        best = std::abs(c - s);
        containers = c;
        supporters = s;
      }
    }
    if (containers >= 0) break;
  }
  if (containers < 0) throw GenerationError("object budget too small", cfg.seed);

  NameBank names(layout);
  SpecBuilder b(std::move(layout));
  std::vector<EntityId> rooms;
  for (const auto& r : b.spec().rooms) rooms.push_back(r.id);
  for (int i = 0; i < containers; ++i) {
    std::string n = names.take(kContainerNouns, rng);
    Access a = rng.chance(cfg.open_container_fraction) ? Access::open : Access::closed;
    b.add(EntityKind::container, n, rng.pick(rooms), a, describe_kind(EntityKind::container, n));
  }
  for (int i = 0; i < supporters; ++i) {
    std::string n = names.take(kSupporterNouns, rng);
    b.add(EntityKind::supporter, n, rng.pick(rooms), Access::none,
          describe_kind(EntityKind::supporter, n));
  }
  const auto everywhere = all_rooms(b.spec());
  for (int i = 0; i < portables; ++i) {
    EntityKind k = rng.chance(0.3) ? EntityKind::food : EntityKind::object;
    std::string n = names.take(k == EntityKind::food ? kFoodNouns : kObjectNouns, rng);
    EntityId holder = Placer(b.spec(), rng).choose(everywhere, {});
    b.add(k, n, holder, Access::none, describe_kind(k, n));
  }
  return b.build();
}

EnvSpec inject_locks(EnvSpec spec, double lock_fraction, Rng& rng) {
  const auto candidates = lockables(spec);
  const int count = lock_total(lock_fraction, static_cast<int>(candidates.size()));
  const auto dist = room_distances(spec, spec.start_room);
  const WorldState s0 = initial_state(spec);
  // Room on the start side of a lock.
  auto anchor_of = [&](EntityId x) {
    if (spec.kind(x) == EntityKind::container) return s0.holder[x.index()];
    EntityId best;
    for (const auto& e : spec.edges) {
      if (e.door == x && (best.is_none() || dist.at(e.from) < dist.at(best))) best = e.from;
    }
    return best;
  };
  auto distance_of = [&](EntityId x) { return dist.at(anchor_of(x)); };

  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::vector<EntityId> chosen = candidates;
    rng.shuffle(chosen);
    chosen.resize(static_cast<std::size_t>(count));
    std::stable_sort(chosen.begin(), chosen.end(), [&](EntityId a, EntityId b) {
      return std::pair(distance_of(a), a) < std::pair(distance_of(b), b);
    });

    NameBank names(spec);
    SpecBuilder b(spec);
    bool placed_all = true;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      // Locks from i on are still shut when the player looks for key i.
      std::set<EntityId> blocked(chosen.begin() + static_cast<std::ptrdiff_t>(i), chosen.end());
      std::set<EntityId> region = region_avoiding(b.spec(), blocked);
      if (region.empty()) {
        placed_all = false;
        break;
      }
      // Keys stay within one room of their lock when the region allows it.
      std::set<EntityId> near;
      for (const auto& [room, d] : room_distances(spec, anchor_of(chosen[i]))) {
        if (d <= 1 && region.count(room)) near.insert(room);
      }
      EntityId holder = Placer(b.spec(), rng).choose(near.empty() ? region : near, blocked);
      std::string n = names.take(kKeyNouns, rng, true);
      EntityId key = b.add(EntityKind::key, n, holder, Access::none, describe_kind(EntityKind::key, n));
      b.fact(Predicate::match, key, chosen[i]);
    }
    if (!placed_all) continue;
    for (EntityId x : chosen) b.set_access(x, Access::locked);
    return b.build();
  }
  throw GenerationError("no valid key region", spec.seed);
}

EnvSpec place_distractors(EnvSpec spec, const DifficultyConfig& cfg, Rng& rng) {
  const int count = distractor_count(cfg);
  bool any_match = false;
  for (const auto& f : spec.initial_facts) any_match |= f.predicate == Predicate::match;

  NameBank names(spec);
  SpecBuilder b(std::move(spec));
  const auto everywhere = all_rooms(b.spec());
  bool have_key = false;
  for (int i = 0; i < count; ++i) {
    // With any lock present, at least one wrong key makes matching nontrivial.
    bool key = (any_match && !have_key) ? true : rng.chance(0.5);
    have_key |= key;
    EntityKind k = key ? EntityKind::key : EntityKind::object;
    std::string n = key ? names.take(kKeyNouns, rng, true) : names.take(kObjectNouns, rng);
    EntityId holder = Placer(b.spec(), rng).choose(everywhere, {});
    b.add(k, n, holder, Access::none, describe_kind(k, n));
  }
  return b.build();
}

EnvSpec generate(const DifficultyConfig& cfg) {
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(attempt)));
    try {
      EnvSpec spec = gen_layout(cfg, rng);
      spec = place_entities(std::move(spec), cfg, rng);
      spec = inject_locks(std::move(spec), cfg.lock_fraction, rng);
      spec = place_distractors(std::move(spec), cfg, rng);
      spec.seed = cfg.seed;
      spec.difficulty = cfg.difficulty;
      if (validate(spec) || !solvable(spec)) continue;
      if (!cfg.objects.contains(object_count(spec))) continue;
      return spec;
    } catch (const GenerationError&) {
      continue;
    }
  }
  throw GenerationError("environment generation failed", cfg.seed);
}

std::vector<EntityId> lockables(const EnvSpec& spec) {
  std::vector<EntityId> out;
  for (const auto& e : spec.entities) {
    if (is_lockable(e.kind)) out.push_back(e.id);
  }
  return out;
}

int locked_count(const EnvSpec& spec) {
  int n = 0;
  for (const auto& f : spec.initial_facts) n += f.predicate == Predicate::locked;
  return n;
}

int object_count(const EnvSpec& spec) {
  int n = 0;
  for (const auto& e : spec.entities) n += is_furniture(e.kind) || is_portable(e.kind);
  return n;
}

std::vector<EntityId> distractor_keys(const EnvSpec& spec) {
  std::vector<EntityId> out;
  for (EntityId k : spec.ids_of(EntityKind::key)) {
    if (spec.locks_for(k).empty()) out.push_back(k);
  }
  return out;
}

KeyAwareReach key_aware_reach(const EnvSpec& spec) {
  WorldState s = initial_state(spec);
  std::set<EntityId> keys;
  KeyAwareReach out;
  for (bool changed = true; changed;) {
    changed = false;
    // Unlock everything a collected key matches; all else is openable.
    for (const auto& f : spec.initial_facts) {
      if (f.predicate == Predicate::match && keys.count(f.subject) &&
          s.access[f.object.index()] == Access::locked) {
        bool reachable = false;
        if (spec.kind(f.object) == EntityKind::door) {
          for (const auto& e : spec.edges) reachable |= e.door == f.object && out.rooms.count(e.from);
        } else {
          reachable = out.rooms.count(s.holder[f.object.index()]) > 0;
        }
        if (reachable) {
          s.access[f.object.index()] = Access::closed;
          changed = true;
        }
      }
    }
    out.rooms = reachable_rooms(s, spec, false);
    for (const auto& e : spec.entities) {
      if (e.kind == EntityKind::room) {
        if (out.rooms.count(e.id)) out.entities.insert(e.id);
        continue;
      }
      bool touchable = false;
      if (e.kind == EntityKind::door) {
        for (const auto& edge : spec.edges) touchable |= edge.door == e.id && out.rooms.count(edge.from);
      } else {
        // Climb the holder chain through unlocked containers.
        EntityId h = s.holder[e.id.index()];
        touchable = true;
        while (touchable && !h.is_none() && !h.is_inventory() && spec.kind(h) != EntityKind::room) {
          if (spec.kind(h) == EntityKind::container && s.access[h.index()] == Access::locked)
            touchable = false;
          h = s.holder[h.index()];
        }
        touchable = touchable && (h.is_inventory() || (!h.is_none() && out.rooms.count(h)));
      }
      if (touchable && out.entities.insert(e.id).second) changed = true;
      if (touchable && e.kind == EntityKind::key && keys.insert(e.id).second) changed = true;
    }
  }
  return out;
}

bool solvable(const EnvSpec& spec) {
  auto reach = key_aware_reach(spec);
  if (reach.rooms.size() != spec.rooms.size()) return false;
  if (reach.entities.size() != spec.entities.size()) return false;
  // Every lock must be openable by some reachable key.
  for (const auto& f : spec.initial_facts) {
    if (f.predicate != Predicate::locked) continue;
    bool ok = false;
    for (EntityId k : spec.keys_for(f.subject)) ok |= reach.entities.count(k) > 0;
    if (!ok) return false;
  }
  return true;
}

std::optional<std::string> validate(const EnvSpec& spec) {
  const std::size_t n = spec.entities.size();
  auto valid = [n](EntityId id) { return id.is_entity() && id.index() < n; };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& e = spec.entities[i];
    if (e.id.index() != i) return "entity id out of order: " + e.name;
    if (e.name.empty()) return "unnamed entity";
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.entities[j].name == e.name) return "duplicate name: " + e.name;
    }
  }
  if (!valid(spec.start_room) || spec.kind(spec.start_room) != EntityKind::room) return "bad start room";
  std::size_t room_entities = spec.ids_of(EntityKind::room).size();
  if (room_entities != spec.rooms.size()) return "rooms list does not match room entities";
  for (const auto& r : spec.rooms) {
    if (!valid(r.id) || spec.kind(r.id) != EntityKind::room) return "rooms list names a non-room";
  }
  std::map<EntityId, int> door_edges;
  for (const auto& e : spec.edges) {
    if (!valid(e.from) || !valid(e.to) || !spec.room(e.from) || !spec.room(e.to))
      return "edge between non-rooms";
    if (e.from == e.to) return "self loop";
    if (step(spec.room(e.from)->pos, e.dir) != spec.room(e.to)->pos)
      return "edge inconsistent with grid: " + spec.name(e.from) + " " + std::string(to_string(e.dir));
    auto back = spec.exit(e.to, opposite(e.dir));
    if (!back || back->to != e.from || back->door != e.door) return "asymmetric edge at " + spec.name(e.from);
    int same = 0;
    for (const auto& o : spec.edges) same += o.from == e.from && o.dir == e.dir;
    if (same != 1) return "two exits share a direction";
    if (e.door) {
      if (!valid(*e.door) || spec.kind(*e.door) != EntityKind::door) return "edge door is not a door";
      ++door_edges[*e.door];
    }
  }
  for (EntityId d : spec.ids_of(EntityKind::door)) {
    if (door_edges[d] != 2) return "door " + spec.name(d) + " does not join exactly two rooms";
  }
  std::vector<int> placements(n, 0), access(n, 0);
  for (const auto& f : spec.initial_facts) {
    if (!valid(f.subject)) return "fact with undeclared subject";
    EntityKind k = spec.kind(f.subject);
    switch (f.predicate) {
      case Predicate::in:
      case Predicate::on:
      case Predicate::at: {
        if (!valid(f.object) && !f.object.is_inventory()) return "placement into undeclared holder";
        ++placements[f.subject.index()];
        if (f.object.is_inventory()) {
          if (!is_portable(k)) return "non-portable in inventory";
          break;
        }
        EntityKind hk = spec.kind(f.object);
        if (f.predicate == Predicate::at && (!is_furniture(k) || hk != EntityKind::room))
          return "at() must place furniture in a room";
        if (f.predicate == Predicate::on && (!is_portable(k) || hk != EntityKind::supporter))
          return "on() requires a portable on a supporter";
        if (f.predicate == Predicate::in &&
            (!is_portable(k) || (hk != EntityKind::container && hk != EntityKind::room)))
          return "in() requires a portable in a container or room";
        break;
      }
      case Predicate::open:
      case Predicate::closed:
      case Predicate::locked:
        if (!is_lockable(k)) return "access state on " + spec.name(f.subject);
        ++access[f.subject.index()];
        break;
      case Predicate::match:
        if (k != EntityKind::key || !valid(f.object) || !is_lockable(spec.kind(f.object)))
          return "match() must pair a key with a door or container";
        break;
      case Predicate::edible:
        if (k != EntityKind::food) return "edible() on non-food";
        break;
    }
  }
  for (const auto& e : spec.entities) {
    bool placed = is_furniture(e.kind) || is_portable(e.kind);
    if (placed && placements[e.id.index()] != 1) return e.name + " needs exactly one placement";
    if (!placed && placements[e.id.index()] != 0) return e.name + " cannot be placed";
    if (is_lockable(e.kind) && access[e.id.index()] != 1) return e.name + " needs exactly one access state";
  }
  if (auto bad = check_state(initial_state(spec), spec)) return *bad;
  return std::nullopt;
}

}  // namespace worldquiz
