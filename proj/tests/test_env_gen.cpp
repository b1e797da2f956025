#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "worldquiz/env_gen.hpp"
#include "worldquiz/world.hpp"

using namespace worldquiz;

namespace {

constexpr Difficulty kAll[] = {Difficulty::easy, Difficulty::medium, Difficulty::hard};

DifficultyConfig config(Difficulty d, std::uint64_t seed) {
  DifficultyConfig c = DifficultyConfig::preset(d);
  c.seed = seed;
  return c;
}

// Independent solvability oracle: repeatedly walk through every door that is
// not locked, pick up every key whose holder chain reaches a visited room
// without a locked container, and unlock whatever those keys match.
bool oracle_solvable(const EnvSpec& spec) {
  std::set<EntityId> locked;
  std::map<EntityId, EntityId> holder;
  for (const auto& f : spec.initial_facts) {
    if (f.predicate == Predicate::locked) locked.insert(f.subject);
    if (f.predicate == Predicate::in || f.predicate == Predicate::on || f.predicate == Predicate::at)
      holder[f.subject] = f.object;
  }
  std::set<EntityId> rooms{spec.start_room};
  std::set<EntityId> keys;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& e : spec.edges) {
      if (!rooms.count(e.from) || (e.door && locked.count(*e.door))) continue;
      grew |= rooms.insert(e.to).second;
    }
    for (EntityId k : spec.ids_of(EntityKind::key)) {
      EntityId h = holder.at(k);
      bool blocked = false;
      while (spec.kind(h) != EntityKind::room) {
        blocked |= locked.count(h) > 0;
        h = holder.at(h);
      }
      if (!blocked && rooms.count(h)) grew |= keys.insert(k).second;
    }
    for (const auto& f : spec.initial_facts) {
      if (f.predicate == Predicate::match && keys.count(f.subject)) grew |= locked.erase(f.object) > 0;
    }
  }
  return rooms.size() == spec.rooms.size() && locked.empty();
}

}  // namespace

TEST(Generate, IsAPureFunctionOfConfig) {
  for (Difficulty d : kAll) {
    for (std::uint64_t seed : {1ull, 42ull, 9001ull}) {
      EXPECT_EQ(generate(config(d, seed)), generate(config(d, seed)));
    }
  }
  EXPECT_NE(generate(config(Difficulty::medium, 1)), generate(config(Difficulty::medium, 2)));
}

TEST(Generate, CountsStayInsideRanges) {
  for (Difficulty d : kAll) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      DifficultyConfig cfg = config(d, seed);
      EnvSpec spec = generate(cfg);
      SCOPED_TRACE(std::string(to_string(d)) + " seed " + std::to_string(seed));
      EXPECT_FALSE(validate(spec).has_value()) << *validate(spec);
      EXPECT_TRUE(cfg.rooms.contains(static_cast<int>(spec.rooms.size())));
      EXPECT_TRUE(cfg.objects.contains(object_count(spec))) << object_count(spec);
      int lockable = static_cast<int>(lockables(spec).size());
      EXPECT_EQ(locked_count(spec), static_cast<int>(std::floor(0.4 * lockable)));
      EXPECT_TRUE(oracle_solvable(spec));
      EXPECT_TRUE(solvable(spec));
    }
  }
}

TEST(Generate, DistractorKeysMatchNothing) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    EnvSpec spec = generate(config(Difficulty::hard, seed));
    auto spare = distractor_keys(spec);
    for (EntityId k : spare) EXPECT_TRUE(spec.locks_for(k).empty());
    if (locked_count(spec) > 0) {
      EXPECT_GE(spare.size(), 1u);
      EXPECT_GE(spec.ids_of(EntityKind::key).size(), 2u);
    }
    // One matching key per lock.
    for (const auto& f : spec.initial_facts) {
      if (f.predicate == Predicate::locked) EXPECT_EQ(spec.keys_for(f.subject).size(), 1u);
    }
  }
}

TEST(GenLayout, GridTreeWithUniqueCells) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    DifficultyConfig cfg = config(Difficulty::hard, seed);
    Rng rng(seed);
    EnvSpec spec = gen_layout(cfg, rng);
    std::set<std::pair<int, int>> cells;
    for (const auto& r : spec.rooms) cells.insert({r.pos.x, r.pos.y});
    EXPECT_EQ(cells.size(), spec.rooms.size());
    EXPECT_EQ(spec.edges.size(), 2 * (spec.rooms.size() - 1));
    EXPECT_EQ(reachable_rooms(initial_state(spec), spec, true).size(), spec.rooms.size());
    EXPECT_FALSE(validate(spec).has_value());
  }
}

TEST(InjectLocks, KeysNeverSitBehindTheirOwnLock) {
  // Lock every lockable and check the generated specs with the oracle.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    DifficultyConfig cfg = config(Difficulty::medium, seed);
    Rng rng(seed);
    EnvSpec spec = place_entities(gen_layout(cfg, rng), cfg, rng);
    spec = inject_locks(std::move(spec), 1.0, rng);
    EXPECT_EQ(locked_count(spec), static_cast<int>(lockables(spec).size()));
    EXPECT_TRUE(oracle_solvable(spec)) << "seed " << seed;
    EXPECT_FALSE(validate(spec).has_value());
  }
}

TEST(Generate, ImpossibleBudgetThrows) {
  DifficultyConfig cfg = config(Difficulty::hard, 3);
  cfg.objects = {1, 2};
  EXPECT_THROW(generate(cfg), GenerationError);
}

TEST(Validate, RejectsBrokenSpecs) {
  EnvSpec spec = generate(config(Difficulty::easy, 5));
  EnvSpec dup = spec;
  dup.entities.back().name = dup.entities.front().name;
  EXPECT_TRUE(validate(dup).has_value());
  EnvSpec oneway = spec;
  oneway.edges.pop_back();
  EXPECT_TRUE(validate(oneway).has_value());
  EnvSpec dangling = spec;
  dangling.initial_facts.push_back({Predicate::edible, EntityId(9999), EntityId::none()});
  EXPECT_TRUE(validate(dangling).has_value());
}
