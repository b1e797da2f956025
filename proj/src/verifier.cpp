#include "worldquiz/verifier.hpp"

#include <algorithm>
#include <cctype>

namespace worldquiz {

namespace {

bool acts_on(const Event& e, Verb v, EntityId ref) {
  return e.command && e.command->verb == v && !e.targets.empty() && e.targets.front() == ref;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_terminal_punct(char c) { return c == '.' || c == '!' || c == '?' || c == ',' || c == ';' || c == ':'; }

bool strip_prefix(std::string& s, std::string_view p) {
  if (s.size() > p.size() && s.compare(0, p.size(), p) == 0) {
    s.erase(0, p.size());
    return true;
  }
  return false;
}

}  // namespace

bool checkpoint_satisfied(const Checkpoint& cp, const std::vector<Trajectory>& trajectories) {
  for (const auto& t : trajectories) {
    for (const auto& e : t.events) {
      bool ok = e.outcome == Outcome::ok;
      switch (cp.kind) {
        case CheckpointKind::visited_room:
          if (e.room == cp.ref) return true;
          break;
        case CheckpointKind::opened:
          if (ok && acts_on(e, Verb::open, cp.ref)) return true;
          break;
        case CheckpointKind::attempted_open:
          if (e.outcome != Outcome::invalid && acts_on(e, Verb::open, cp.ref)) return true;
          break;
        case CheckpointKind::unlocked:
          if (ok && acts_on(e, Verb::unlock, cp.ref)) return true;
          break;
        case CheckpointKind::took:
          if (ok && acts_on(e, Verb::take, cp.ref)) return true;
          break;
        case CheckpointKind::observed_entity:
          for (const auto& f : e.revealed) {
            if (f.subject == cp.ref) return true;
          }
          break;
      }
    }
  }
  return false;
}

DynamicAnswer dynamic_answer(const Question& q, const std::vector<Trajectory>& trajectories) {
  DynamicAnswer a{q.id, true, q.static_answer};
  for (const auto& cp : q.checkpoints) {
    if (!checkpoint_satisfied(cp, trajectories)) {
      a.answerable = false;
      a.expected = std::string(kNonAnswerable);
      break;
    }
  }
  return a;
}

std::vector<DynamicAnswer> dynamic_answers(const std::vector<Question>& quiz,
                                           const std::vector<Trajectory>& trajectories) {
  std::vector<DynamicAnswer> out;
  out.reserve(quiz.size());
  for (const auto& q : quiz) out.push_back(dynamic_answer(q, trajectories));
  return out;
}

std::string normalize_answer(std::string_view text, AnswerFormat fmt) {
  std::string s(text);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (bool changed = true; changed;) {
    std::string before = s;
    std::size_t a = 0;
    while (a < s.size() && (is_space(s[a]) || s[a] == '"' || s[a] == '\'')) ++a;
    std::size_t b = s.size();
    while (b > a && (is_space(s[b - 1]) || is_terminal_punct(s[b - 1]) || s[b - 1] == '"' || s[b - 1] == '\'')) --b;
    s = s.substr(a, b - a);
    if (!strip_prefix(s, "the ") && !strip_prefix(s, "an ")) strip_prefix(s, "a ");
    changed = s != before;
  }
  if (s == "non answerable") s = std::string(kNonAnswerable);
  if (fmt == AnswerFormat::yes_no) {
    if (s == "y" || s == "true") s = "yes";
    if (s == "n" || s == "false") s = "no";
  }
  return s;
}

bool grade_answer(std::string_view given, std::string_view expected, AnswerFormat fmt) {
  std::string g = normalize_answer(given, fmt);
  if (g.empty()) return false;
  return g == normalize_answer(expected, fmt);
}

double GradeReport::eus(QuestionCategory c) const {
  auto it = by_category.find(c);
  return it == by_category.end() ? 0.0 : it->second.fraction();
}

GradeReport compute_report(const std::vector<Question>& quiz, const std::vector<DynamicAnswer>& expected,
                           const std::vector<std::string>& given, const std::vector<bool>& wins, int env) {
  GradeReport r;
  r.tasks.total = static_cast<int>(wins.size());
  r.tasks.correct = static_cast<int>(std::count(wins.begin(), wins.end(), true));
  for (QuestionCategory c : kAllCategories) r.by_category[c];
  for (std::size_t i = 0; i < quiz.size(); ++i) {
    const Question& q = quiz[i];
    const DynamicAnswer& d = expected.at(i);
    GradedQuestion row{env, q.id, q.category, d.answerable, d.expected, i < given.size() ? given[i] : "", false};
    row.correct = grade_answer(row.given, row.expected, q.format);
    Tally one{row.correct ? 1 : 0, 1};
    r.questions += one;
    r.by_category[q.category] += one;
    (d.answerable ? r.answerable : r.non_answerable) += one;
    r.per_question.push_back(std::move(row));
  }
  return r;
}

GradeReport merge_reports(const std::vector<GradeReport>& reports) {
  GradeReport out;
  for (QuestionCategory c : kAllCategories) out.by_category[c];
  for (const auto& r : reports) {
    out.tasks += r.tasks;
    out.questions += r.questions;
    out.answerable += r.answerable;
    out.non_answerable += r.non_answerable;
    for (const auto& [c, t] : r.by_category) out.by_category[c] += t;
    out.per_question.insert(out.per_question.end(), r.per_question.begin(), r.per_question.end());
  }
  return out;
}

}  // namespace worldquiz
