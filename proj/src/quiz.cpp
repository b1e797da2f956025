#include "worldquiz/quiz.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include "worldquiz/rng.hpp"
#include "worldquiz/world.hpp"

namespace worldquiz {

namespace {

constexpr std::array<std::string_view, 5> kCategoryNames = {"location", "connectivity", "direction",
                                                            "match", "property"};
constexpr std::array<std::string_view, 5> kFormatNames = {"yes_no", "which", "where", "what",
                                                          "description"};
constexpr std::array<std::string_view, 6> kCheckpointNames = {
    "visited_room", "opened", "attempted_open", "unlocked", "took", "observed_entity"};

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::string_view, N>& table, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (table[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

Fact player_at(EntityId room) { return {Predicate::at, EntityId::player(), room}; }
Fact unary(Predicate p, EntityId x) { return {p, x, EntityId::none()}; }

class QuizBuilder {
 public:
  explicit QuizBuilder(const EnvSpec& spec) : spec_(spec), s0_(initial_state(spec)) {
    for (const auto& f : spec.initial_facts) {
      if (f.predicate == Predicate::in || f.predicate == Predicate::on || f.predicate == Predicate::at)
        placement_.emplace_back(f);
    }
  }

  std::vector<Question> location(Rng& rng) const {
    std::vector<Question> out;
    for (const Fact& p : placement_) {
      EntityId x = p.subject;
      EntityId holder = p.object;
      EntityId room = room_of(x, s0_, spec_);
      std::vector<Checkpoint> cps{{CheckpointKind::visited_room, room}};
      if (spec_.kind(holder) == EntityKind::container && s0_.access[holder.index()] != Access::open)
        cps.push_back({CheckpointKind::opened, holder});
      const std::string& name = spec_.name(x);
      std::string prep = p.predicate == Predicate::on ? "on" : "in";

      out.push_back(make(QuestionCategory::location, AnswerFormat::where, "Where is the " + name + "?",
                         spec_.name(holder), cps, {{p}}));
      out.push_back(make(QuestionCategory::location, AnswerFormat::yes_no,
                         "Is the " + name + " " + prep + " the " + spec_.name(holder) + "?", "yes", cps,
                         {{p}}));
      std::vector<EntityId> elsewhere;
      for (const auto& r : spec_.rooms) {
        if (r.id != room) elsewhere.push_back(r.id);
      }
      if (elsewhere.empty()) continue;
      std::vector<Fact> chain{p};
      if (holder != room) chain.push_back(*initial_placement(holder));
      out.push_back(make(QuestionCategory::location, AnswerFormat::yes_no,
                         "Is the " + name + " in the " + spec_.name(rng.pick(elsewhere)) + "?", "no", cps,
                         {chain}));
    }
    return out;
  }

  std::vector<Question> connectivity(Rng& rng) const {
    std::vector<Question> yes, no;
    for (std::size_t i = 0; i < spec_.rooms.size(); ++i) {
      for (std::size_t j = i + 1; j < spec_.rooms.size(); ++j) {
        EntityId a = spec_.rooms[i].id;
        EntityId b = spec_.rooms[j].id;
        bool adjacent = false;
        for (const auto& e : spec_.exits(a)) adjacent |= e.to == b;
        Question q = make(QuestionCategory::connectivity, AnswerFormat::yes_no,
                          "Is there a passage between the " + spec_.name(a) + " and the " + spec_.name(b) + "?",
                          adjacent ? "yes" : "no", both_visited(a, b), {{player_at(a), player_at(b)}});
        (adjacent ? yes : no).push_back(std::move(q));
      }
    }
    // Alternate answers so that any cap keeps the mix balanced.
    rng.shuffle(yes);
    rng.shuffle(no);
    std::vector<Question> out;
    for (std::size_t i = 0; i < std::max(yes.size(), no.size()); ++i) {
      if (i < yes.size()) out.push_back(yes[i]);
      if (i < no.size()) out.push_back(no[i]);
    }
    return out;
  }

  std::vector<Question> direction(Rng& rng) const {
    std::vector<Question> out;
    for (std::size_t i = 0; i < spec_.rooms.size(); ++i) {
      for (std::size_t j = i + 1; j < spec_.rooms.size(); ++j) {
        const Room* x = &spec_.rooms[i];
        const Room* y = &spec_.rooms[j];
        if (rng.chance(0.5)) std::swap(x, y);
        int dx = x->pos.x - y->pos.x;
        int dy = x->pos.y - y->pos.y;
        if ((dx == 0) == (dy == 0)) continue;
        Direction d = dx > 0 ? Direction::east : dx < 0 ? Direction::west : dy > 0 ? Direction::north
                                                                                   : Direction::south;
        Question q = make(QuestionCategory::direction, AnswerFormat::which,
                          "Which direction is the " + spec_.name(x->id) + " from the " + spec_.name(y->id) + "?",
                          std::string(to_string(d)), both_visited(x->id, y->id),
                          {{player_at(x->id), player_at(y->id)}});
        for (Direction c : kAllDirections) q.choices.emplace_back(to_string(c));
        rng.shuffle(q.choices);
        out.push_back(std::move(q));
      }
    }
    return out;
  }

  std::vector<Question> match(Rng& rng) const {
    std::vector<Question> out;
    const std::vector<EntityId> keys = spec_.ids_of(EntityKind::key);
    if (keys.size() < 2) return out;
    for (const auto& f : spec_.initial_facts) {
      if (f.predicate != Predicate::match) continue;
      Question q = make(QuestionCategory::match, AnswerFormat::which,
                        "Which key unlocks the " + spec_.name(f.object) + "?", spec_.name(f.subject),
                        {{CheckpointKind::unlocked, f.object}}, {{f}});
      std::vector<EntityId> others;
      for (EntityId k : keys) {
        if (k != f.subject) others.push_back(k);
      }
      rng.shuffle(others);
      others.resize(std::min<std::size_t>(others.size(), 4));
      q.choices.push_back(spec_.name(f.subject));
      for (EntityId k : others) q.choices.push_back(spec_.name(k));
      rng.shuffle(q.choices);
      out.push_back(std::move(q));
    }
    return out;
  }

  std::vector<Question> property(Rng&) const {
    std::vector<Question> out;
    for (const auto& e : spec_.entities) {
      if (!is_lockable(e.kind)) continue;
      const Access a = s0_.access[e.id.index()];
      const std::string& name = e.name;
      // Open and closed show on sight; telling closed from locked takes an
      // open attempt, whose success (open) or failure (locked) settles it.
      // A successful unlock (match) also proves the lock.
      const std::vector<Checkpoint> sight = visible(e.id);
      const std::vector<Checkpoint> tried{{CheckpointKind::attempted_open, e.id}};
      std::vector<std::vector<Fact>> seen_state{{unary(a == Access::open ? Predicate::open : Predicate::closed, e.id)}};
      std::vector<std::vector<Fact>> opened{{unary(Predicate::open, e.id)}};
      std::vector<std::vector<Fact>> lock_proof{{unary(Predicate::locked, e.id)}};
      for (EntityId k : spec_.keys_for(e.id)) lock_proof.push_back({Fact{Predicate::match, k, e.id}});

      const bool locked = a == Access::locked;
      out.push_back(make(QuestionCategory::property, AnswerFormat::yes_no, "Is the " + name + " open?",
                         a == Access::open ? "yes" : "no", locked ? tried : sight,
                         locked ? lock_proof : seen_state));
      out.push_back(make(QuestionCategory::property, AnswerFormat::yes_no, "Is the " + name + " locked?",
                         locked ? "yes" : "no", a == Access::open ? sight : tried,
                         locked ? lock_proof : a == Access::open ? seen_state : opened));
      Question state = make(QuestionCategory::property, AnswerFormat::which,
                            "What is the state of the " + name + "?", std::string(to_string(a)),
                            a == Access::open ? sight : tried,
                            locked ? lock_proof : a == Access::open ? seen_state : opened);
      state.choices = {"open", "closed", "locked"};
      out.push_back(std::move(state));
    }
    for (const Fact& p : placement_) {
      EntityId x = p.subject;
      out.push_back(make(QuestionCategory::property, AnswerFormat::description,
                         "What kind of thing is the " + spec_.name(x) + "?",
                         std::string(to_string(spec_.kind(x))), {{CheckpointKind::observed_entity, x}}, {{p}}));
    }
    return out;
  }

 private:
  static Question make(QuestionCategory c, AnswerFormat f, std::string text, std::string answer,
                       std::vector<Checkpoint> cps, std::vector<std::vector<Fact>> evidence) {
    Question q;
    q.category = c;
    q.format = f;
    q.text = std::move(text);
    q.static_answer = std::move(answer);
    q.checkpoints = std::move(cps);
    q.evidence = std::move(evidence);
    return q;
  }

  std::optional<Fact> initial_placement(EntityId x) const {
    for (const Fact& p : placement_) {
      if (p.subject == x) return p;
    }
    return std::nullopt;
  }

  static std::vector<Checkpoint> both_visited(EntityId a, EntityId b) {
    return {{CheckpointKind::visited_room, a}, {CheckpointKind::visited_room, b}};
  }

  // Doors face two rooms, so any sighting counts; containers show their
  // state to anyone in their room.
  std::vector<Checkpoint> visible(EntityId x) const {
    if (spec_.kind(x) == EntityKind::door) return {{CheckpointKind::observed_entity, x}};
    return {{CheckpointKind::visited_room, room_of(x, s0_, spec_)}};
  }

  const EnvSpec& spec_;
  const WorldState s0_;
  std::vector<Fact> placement_;
};

}  // namespace

std::string_view to_string(QuestionCategory c) { return kCategoryNames.at(static_cast<std::size_t>(c)); }
std::string_view to_string(AnswerFormat f) { return kFormatNames.at(static_cast<std::size_t>(f)); }
std::string_view to_string(CheckpointKind k) { return kCheckpointNames.at(static_cast<std::size_t>(k)); }
std::optional<QuestionCategory> category_from(std::string_view s) {
  return lookup<QuestionCategory>(kCategoryNames, s);
}
std::optional<AnswerFormat> format_from(std::string_view s) { return lookup<AnswerFormat>(kFormatNames, s); }
std::optional<CheckpointKind> checkpoint_kind_from(std::string_view s) {
  return lookup<CheckpointKind>(kCheckpointNames, s);
}

std::vector<Question> generate_quiz(const EnvSpec& spec, const QuizCaps& caps, std::uint64_t seed) {
  QuizBuilder b(spec);
  std::vector<Question> out;
  for (QuestionCategory c : kAllCategories) {
    Rng rng(mix_seed(seed, "quiz/" + std::string(to_string(c))));
    std::vector<Question> pool;
    int cap = 0;
    switch (c) {
      case QuestionCategory::location: pool = b.location(rng); cap = caps.location; break;
      case QuestionCategory::connectivity: pool = b.connectivity(rng); cap = caps.connectivity; break;
      case QuestionCategory::direction: pool = b.direction(rng); cap = caps.direction; break;
      case QuestionCategory::match: pool = b.match(rng); cap = caps.match; break;
      case QuestionCategory::property: pool = b.property(rng); cap = caps.property; break;
    }
    // Connectivity pools arrive interleaved; the rest are sampled uniformly.
    std::vector<std::size_t> order(pool.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (c != QuestionCategory::connectivity) rng.shuffle(order);
    order.resize(std::min(order.size(), static_cast<std::size_t>(std::max(cap, 0))));
    std::sort(order.begin(), order.end());
    for (std::size_t i : order) out.push_back(std::move(pool[i]));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "q%03zu", i);
    out[i].id = id;
  }
  return out;
}

}  // namespace worldquiz
