#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "worldquiz/harness.hpp"
#include "worldquiz/verifier.hpp"

using namespace worldquiz;
using namespace worldquiz::testing;

namespace {

Question yes_no(std::string id, std::vector<Checkpoint> cps, QuestionCategory c = QuestionCategory::property) {
  Question q;
  q.id = std::move(id);
  q.category = c;
  q.format = AnswerFormat::yes_no;
  q.static_answer = "yes";
  q.checkpoints = std::move(cps);
  return q;
}

}  // namespace

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize_answer("  The Kitchen. ", AnswerFormat::where), "kitchen");
  EXPECT_EQ(normalize_answer("YES!", AnswerFormat::yes_no), "yes");
  EXPECT_EQ(normalize_answer("y", AnswerFormat::yes_no), "yes");
  EXPECT_EQ(normalize_answer("False", AnswerFormat::yes_no), "no");
  EXPECT_EQ(normalize_answer("y", AnswerFormat::which), "y");
  EXPECT_EQ(normalize_answer("\"a rusty key\"", AnswerFormat::which), "rusty key");
  EXPECT_EQ(normalize_answer("'the  the north'", AnswerFormat::which), "north");
  EXPECT_EQ(normalize_answer("Non answerable", AnswerFormat::yes_no), "non-answerable");
  EXPECT_EQ(normalize_answer("NON-ANSWERABLE.", AnswerFormat::where), "non-answerable");
  EXPECT_EQ(normalize_answer("an", AnswerFormat::what), "an");
  EXPECT_EQ(normalize_answer("", AnswerFormat::what), "");
}

TEST(Normalize, IsIdempotent) {
  const std::vector<std::string> parts = {"the ", "a ", "an ", "The ", " ", "\"", "'", ".", "!", "?", ",",
                                          "Yes", "no", "key", "non answerable", "T", "y", ";", ":"};
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    for (int k = static_cast<int>(rng() % 7); k > 0; --k) s += parts[rng() % parts.size()];
    for (AnswerFormat f : {AnswerFormat::yes_no, AnswerFormat::which, AnswerFormat::where}) {
      std::string once = normalize_answer(s, f);
      EXPECT_EQ(normalize_answer(once, f), once) << "[" << s << "]";
    }
  }
}

TEST(Grade, ExactMatchAfterNormalization) {
  EXPECT_TRUE(grade_answer("The fridge.", "fridge", AnswerFormat::where));
  EXPECT_FALSE(grade_answer("fridge door", "fridge", AnswerFormat::where));
  EXPECT_TRUE(grade_answer("non answerable", "non-answerable", AnswerFormat::yes_no));
  EXPECT_FALSE(grade_answer("", "yes", AnswerFormat::yes_no));
  EXPECT_FALSE(grade_answer("  ", "", AnswerFormat::yes_no));
}

TEST(CheckpointSatisfied, EachKind) {
  auto w = two_room_world();
  Trajectory t = replay(w.spec, {"take old key", "open door", "unlock door with old key", "open door",
                                 "go east", "open fridge", "take apple"});
  std::vector<Trajectory> z{t};
  EXPECT_TRUE(checkpoint_satisfied({CheckpointKind::visited_room, w.room_a}, z));
  EXPECT_TRUE(checkpoint_satisfied({CheckpointKind::visited_room, w.room_b}, z));
  EXPECT_TRUE(checkpoint_satisfied({CheckpointKind::took, w.key}, z));
  EXPECT_TRUE(checkpoint_satisfied({CheckpointKind::took, w.apple}, z));
  EXPECT_TRUE(checkpoint_satisfied({CheckpointKind::unlocked, w.door}, z));
  EXPECT_TRUE(checkpoint_satisfied({CheckpointKind::opened, w.fridge}, z));
  EXPECT_TRUE(checkpoint_satisfied({CheckpointKind::attempted_open, w.door}, z));
  EXPECT_TRUE(checkpoint_satisfied({CheckpointKind::observed_entity, w.fridge}, z));

  std::vector<Trajectory> look{replay(w.spec, {})};
  EXPECT_TRUE(checkpoint_satisfied({CheckpointKind::visited_room, w.room_a}, look));
  EXPECT_FALSE(checkpoint_satisfied({CheckpointKind::visited_room, w.room_b}, look));
  EXPECT_FALSE(checkpoint_satisfied({CheckpointKind::observed_entity, w.fridge}, look));
  EXPECT_FALSE(checkpoint_satisfied({CheckpointKind::attempted_open, w.door}, look));
  EXPECT_FALSE(checkpoint_satisfied({CheckpointKind::took, w.key}, {}));

  // A failed open still counts as an attempt; an unparsable one does not.
  std::vector<Trajectory> blocked{replay(w.spec, {"open door"})};
  EXPECT_TRUE(checkpoint_satisfied({CheckpointKind::attempted_open, w.door}, blocked));
  EXPECT_FALSE(checkpoint_satisfied({CheckpointKind::opened, w.door}, blocked));
  std::vector<Trajectory> garbled{replay(w.spec, {"open the the"})};
  EXPECT_FALSE(checkpoint_satisfied({CheckpointKind::attempted_open, w.door}, garbled));
}

TEST(DynamicAnswer, UnmetCheckpointGivesSentinel) {
  auto w = two_room_world();
  std::vector<Trajectory> look{replay(w.spec, {})};
  Question near = yes_no("q0", {{CheckpointKind::visited_room, w.room_a}});
  Question far = yes_no("q1", {{CheckpointKind::visited_room, w.room_a}, {CheckpointKind::visited_room, w.room_b}});
  EXPECT_EQ(dynamic_answer(near, look), (DynamicAnswer{"q0", true, "yes"}));
  EXPECT_EQ(dynamic_answer(far, look), (DynamicAnswer{"q1", false, "non-answerable"}));
}

TEST(Report, CountsPartitionAndRatios) {
  auto w = two_room_world();
  std::vector<Trajectory> look{replay(w.spec, {})};
  std::vector<Question> quiz = {
      yes_no("q0", {{CheckpointKind::visited_room, w.room_a}}, QuestionCategory::location),
      yes_no("q1", {{CheckpointKind::visited_room, w.room_b}}, QuestionCategory::location),
      yes_no("q2", {{CheckpointKind::visited_room, w.room_b}}, QuestionCategory::connectivity),
      yes_no("q3", {{CheckpointKind::visited_room, w.room_a}}, QuestionCategory::match),
  };
  auto expected = dynamic_answers(quiz, look);
  GradeReport r = compute_report(quiz, expected, {"Yes.", "non answerable", "yes", "no"}, {true, true, false}, 4);
  EXPECT_NEAR(r.tsr(), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(r.questions, (Tally{2, 4}));
  EXPECT_DOUBLE_EQ(r.eus_total(), 0.5);
  EXPECT_EQ(r.answerable, (Tally{1, 2}));
  EXPECT_EQ(r.non_answerable, (Tally{1, 2}));
  EXPECT_EQ(r.by_category.at(QuestionCategory::location), (Tally{2, 2}));
  EXPECT_EQ(r.by_category.at(QuestionCategory::connectivity), (Tally{0, 1}));
  EXPECT_EQ(r.by_category.at(QuestionCategory::match), (Tally{0, 1}));
  EXPECT_EQ(r.by_category.at(QuestionCategory::direction), (Tally{0, 0}));
  EXPECT_DOUBLE_EQ(r.eus(QuestionCategory::direction), 0.0);
  ASSERT_EQ(r.per_question.size(), 4u);
  EXPECT_EQ(r.per_question[1].expected, "non-answerable");
  EXPECT_EQ(r.per_question[1].env, 4);

  // Missing answers grade false.
  GradeReport short_answers = compute_report(quiz, expected, {"yes"}, {}, 0);
  EXPECT_EQ(short_answers.questions, (Tally{1, 4}));
  EXPECT_DOUBLE_EQ(short_answers.tsr(), 0.0);

  GradeReport merged = merge_reports({r, short_answers});
  EXPECT_EQ(merged.questions, (Tally{3, 8}));
  EXPECT_EQ(merged.tasks, (Tally{2, 3}));
  EXPECT_EQ(merged.per_question.size(), 8u);
  Tally sum;
  for (const auto& [c, t] : merged.by_category) sum += t;
  EXPECT_EQ(sum, merged.questions);
  Tally split = merged.answerable;
  split += merged.non_answerable;
  EXPECT_EQ(split, merged.questions);
}
