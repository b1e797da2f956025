#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "worldquiz/quiz.hpp"
#include "worldquiz/types.hpp"

namespace worldquiz {

inline constexpr std::string_view kNormalizationVersion = "norm-v1";

// Scans every event of every trajectory. visited_room: post-event room;
// opened/unlocked/took: an ok event of that verb on ref; attempted_open: any
// open on ref that was not rejected as invalid; observed_entity: a revealed
// fact with subject ref.
bool checkpoint_satisfied(const Checkpoint& cp, const std::vector<Trajectory>& trajectories);

struct DynamicAnswer {
  std::string question_id;
  bool answerable = true;
  std::string expected;

  bool operator==(const DynamicAnswer&) const = default;
};

DynamicAnswer dynamic_answer(const Question& q, const std::vector<Trajectory>& trajectories);
std::vector<DynamicAnswer> dynamic_answers(const std::vector<Question>& quiz,
                                           const std::vector<Trajectory>& trajectories);

// Lowercase, trim, drop leading articles and trailing punctuation until
// stable; yes_no folds y/true and n/false; "non answerable" folds to the
// sentinel. Idempotent.
std::string normalize_answer(std::string_view text, AnswerFormat fmt);
bool grade_answer(std::string_view given, std::string_view expected, AnswerFormat fmt);

struct Tally {
  int correct = 0;
  int total = 0;

  bool operator==(const Tally&) const = default;
  double fraction() const { return total == 0 ? 0.0 : static_cast<double>(correct) / total; }
  Tally& operator+=(const Tally& o) {
    correct += o.correct;
    total += o.total;
    return *this;
  }
};

struct GradedQuestion {
  int env = 0;
  std::string question_id;
  QuestionCategory category = QuestionCategory::location;
  bool answerable = true;
  std::string expected;
  std::string given;
  bool correct = false;

  bool operator==(const GradedQuestion&) const = default;
};

// Counts rather than ratios so that reports over several environments sum
// exactly; every ratio is derived.
struct GradeReport {
  std::string normalization{kNormalizationVersion};
  Tally tasks;
  Tally questions;
  Tally answerable;
  Tally non_answerable;
  std::map<QuestionCategory, Tally> by_category;
  std::vector<GradedQuestion> per_question;

  bool operator==(const GradeReport&) const = default;

  double tsr() const { return tasks.fraction(); }
  double eus_total() const { return questions.fraction(); }
  double eus(QuestionCategory c) const;
  double answerable_accuracy() const { return answerable.fraction(); }
  double non_answerable_accuracy() const { return non_answerable.fraction(); }
};

// Missing answers (given shorter than quiz) grade false.
GradeReport compute_report(const std::vector<Question>& quiz, const std::vector<DynamicAnswer>& expected,
                           const std::vector<std::string>& given, const std::vector<bool>& wins,
                           int env = 0);

// Sums counts and concatenates per-question rows.
GradeReport merge_reports(const std::vector<GradeReport>& reports);

}  // namespace worldquiz
