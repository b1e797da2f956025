#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "worldquiz/env_gen.hpp"
#include "worldquiz/types.hpp"

namespace worldquiz {

enum class QuestionCategory { location, connectivity, direction, match, property };
enum class AnswerFormat { yes_no, which, where, what, description };
enum class CheckpointKind { visited_room, opened, attempted_open, unlocked, took, observed_entity };

inline constexpr QuestionCategory kAllCategories[] = {
    QuestionCategory::location, QuestionCategory::connectivity, QuestionCategory::direction,
    QuestionCategory::match, QuestionCategory::property};

inline constexpr std::string_view kNonAnswerable = "non-answerable";

std::string_view to_string(QuestionCategory c);
std::string_view to_string(AnswerFormat f);
std::string_view to_string(CheckpointKind k);
std::optional<QuestionCategory> category_from(std::string_view s);
std::optional<AnswerFormat> format_from(std::string_view s);
std::optional<CheckpointKind> checkpoint_kind_from(std::string_view s);

struct Checkpoint {
  CheckpointKind kind = CheckpointKind::visited_room;
  EntityId ref;

  auto operator<=>(const Checkpoint&) const = default;
};

struct Question {
  std::string id;
  QuestionCategory category = QuestionCategory::location;
  AnswerFormat format = AnswerFormat::yes_no;
  std::string text;
  std::vector<std::string> choices;
  std::string static_answer;
  std::vector<Checkpoint> checkpoints;  // conjunction
  // Alternative fact sets; revealing every fact of any one set determines
  // static_answer.
  std::vector<std::vector<Fact>> evidence;

  bool operator==(const Question&) const = default;
};

// Template expansion over the initial facts of `spec`, capped per category.
// A pure function of (spec, caps, seed).
std::vector<Question> generate_quiz(const EnvSpec& spec, const QuizCaps& caps, std::uint64_t seed);

}  // namespace worldquiz
