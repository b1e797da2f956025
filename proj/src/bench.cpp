#include "worldquiz/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "worldquiz/io.hpp"
#include "worldquiz/rng.hpp"
#include "worldquiz/world.hpp"

namespace worldquiz {

namespace {

std::string percent(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * f);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) line += pad(row[i], widths[i] + 2);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

RunRecord assemble(RunRecord header, const std::map<int, EnvRun>& done, bool complete) {
  header.environments.clear();
  std::vector<GradeReport> reports;
  for (const auto& [i, run] : done) {
    header.environments.push_back(run);
    reports.push_back(run.report);
  }
  header.report = merge_reports(reports);
  header.complete = complete;
  header.checksum = record_checksum(header);
  return header;
}

}  // namespace

std::uint64_t env_seed(std::uint64_t base, Difficulty d, int index) {
  return mix_seed(base, std::string(to_string(d)) + "/" + std::to_string(index));
}

BenchEnv generate_env(const DifficultyConfig& cfg, const BenchConfig& config) {
  BenchEnv out;
  out.env = generate(cfg);
  out.tasks = plan_tasks(out.env, config.weights, config.node_cap);
  out.quiz = generate_quiz(out.env, cfg.quiz_caps, mix_seed(cfg.seed, "quiz"));
  return out;
}

BenchFile generate_bench(const BenchConfig& config) {
  BenchFile b;
  b.config = config;
  for (const auto& base : config.difficulties) {
    for (int i = 0; i < config.envs_per_difficulty; ++i) {
      DifficultyConfig cfg = base;
      cfg.seed = env_seed(config.seed, base.difficulty, i);
      b.environments.push_back(generate_env(cfg, config));
    }
  }
  b.checksum = bench_checksum(b);
  return b;
}

bool EnvRun::failed() const {
  if (!error.empty()) return true;
  return std::any_of(trajectories.begin(), trajectories.end(), [](const Trajectory& t) { return !t.error.empty(); });
}

bool RunRecord::failed() const {
  return std::any_of(environments.begin(), environments.end(), [](const EnvRun& e) { return e.failed(); });
}

GradeReport grade_env(const EnvRun& run) {
  std::vector<bool> wins;
  for (const auto& t : run.trajectories) wins.push_back(t.won);
  return compute_report(run.quiz, dynamic_answers(run.quiz, run.trajectories), run.answers, wins, run.env);
}

void regrade(RunRecord& record) {
  std::vector<GradeReport> reports;
  for (auto& e : record.environments) {
    e.report = grade_env(e);
    reports.push_back(e.report);
  }
  record.report = merge_reports(reports);
  record.checksum = record_checksum(record);
}

EnvRun run_env(const BenchFile& bench, int index, const AgentFactory& factory) {
  const BenchEnv& be = bench.environments.at(static_cast<std::size_t>(index));
  EnvRun r;
  r.env = index;
  r.difficulty = be.env.difficulty;
  r.seed = be.env.seed;
  r.quiz = be.quiz;
  try {
    AgentPair agents = factory(be.env.seed);
    Stage1Result s1 = run_stage1(be.env, be.tasks, *agents.stage1);
    r.trajectories = std::move(s1.trajectories);
    r.answers = run_stage2(be.env, be.quiz, *agents.stage2, r.trajectories, s1.transcript);
  } catch (const std::exception& e) {
    r.error = e.what();
    r.trajectories.clear();
    for (std::size_t i = 0; i < be.tasks.size(); ++i) {
      Trajectory t = replay(be.env, {}, static_cast<int>(i));
      t.oracle_length = static_cast<int>(be.tasks[i].walkthrough.size());
      t.error = "agent unavailable";
      r.trajectories.push_back(std::move(t));
    }
    r.answers.assign(be.quiz.size(), "");
  }
  r.report = grade_env(r);
  return r;
}

RunRecord run_bench(const BenchFile& bench, const RunOptions& options, const RunRecord* resume) {
  RunRecord header;
  header.bench_checksum = bench.checksum;
  header.agent = options.agent;
  header.seed = options.agent_options.seed;
  header.difficulties = options.difficulties;

  std::map<int, EnvRun> done;
  if (resume) {
    if (resume->bench_checksum != header.bench_checksum || resume->agent != header.agent ||
        resume->seed != header.seed || resume->difficulties != header.difficulties)
      throw std::invalid_argument("existing record belongs to a different run");
    for (const auto& e : resume->environments) done.emplace(e.env, e);
  }

  auto factory = make_agent_factory(options.agent, options.agent_options);
  std::vector<int> todo;
  for (std::size_t i = 0; i < bench.environments.size(); ++i) {
    Difficulty d = bench.environments[i].env.difficulty;
    bool wanted = std::find(options.difficulties.begin(), options.difficulties.end(), d) != options.difficulties.end();
    if (wanted && !done.count(static_cast<int>(i))) todo.push_back(static_cast<int>(i));
  }

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < todo.size();) {
      EnvRun r = run_env(bench, todo[k], factory);
      std::lock_guard lock(mu);
      done.emplace(r.env, std::move(r));
      if (options.checkpoint) options.checkpoint(assemble(header, done, false));
    }
  };
  std::size_t n = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(options.parallel, 1)), 1,
                                          std::max<std::size_t>(todo.size(), 1));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return assemble(header, done, true);
}

std::string render_report(const RunRecord& record) {
  std::vector<std::pair<std::string, GradeReport>> rows;
  for (Difficulty d : kAllDifficulties) {
    std::vector<GradeReport> parts;
    for (const auto& e : record.environments) {
      if (e.difficulty == d) parts.push_back(e.report);
    }
    if (!parts.empty()) rows.emplace_back(std::string(to_string(d)), merge_reports(parts));
  }
  rows.emplace_back("all", record.report);

  std::vector<std::vector<std::string>> scores{
      {"Difficulty", "Task Score", "Loc.", "Conn.", "Dir.", "Match.", "Prop.", "Tot."}};
  std::vector<std::vector<std::string>> split{
      {"Difficulty", "Answerable", "Non-answerable", "#Answerable", "#Non-answerable", "#Tasks", "#Questions"}};
  for (const auto& [name, r] : rows) {
    scores.push_back({name, percent(r.tsr()), percent(r.eus(QuestionCategory::location)),
                      percent(r.eus(QuestionCategory::connectivity)), percent(r.eus(QuestionCategory::direction)),
                      percent(r.eus(QuestionCategory::match)), percent(r.eus(QuestionCategory::property)),
                      percent(r.eus_total())});
    split.push_back({name, percent(r.answerable_accuracy()), percent(r.non_answerable_accuracy()),
                     std::to_string(r.answerable.total), std::to_string(r.non_answerable.total),
                     std::to_string(r.tasks.total), std::to_string(r.questions.total)});
  }
  std::string out = "agent: " + record.agent + "\nbench: " + record.bench_checksum +
                    "\nnormalization: " + record.report.normalization + "\n";
  if (!record.complete) out += "status: incomplete\n";
  out += "\n" + table(scores) + "\n" + table(split);
  return out;
}

std::string flat_table(const RunRecord& record) {
  std::map<int, Difficulty> difficulty;
  for (const auto& e : record.environments) difficulty[e.env] = e.difficulty;
  std::string out = "env\tdifficulty\tquestion\tcategory\tanswerable\texpected\tgiven\tcorrect\n";
  for (const auto& q : record.report.per_question) {
    out += std::to_string(q.env) + "\t" + std::string(to_string(difficulty[q.env])) + "\t" + q.question_id + "\t" +
           std::string(to_string(q.category)) + "\t" + (q.answerable ? "1" : "0") + "\t" + one_line(q.expected) +
           "\t" + one_line(q.given) + "\t" + (q.correct ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace worldquiz
