// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "property_suite.hpp"
#include "worldquiz/bench.hpp"
#include "worldquiz/io.hpp"
#include "worldquiz/rng.hpp"

using namespace worldquiz;
using namespace worldquiz::testing;

namespace {

constexpr double kRuntimeLimitSeconds = 120.0;
constexpr double kTable1Tolerance = 0.30;
constexpr int kSetCoverInstances = 50;
constexpr int kSetCoverMaxUniverse = 12;
constexpr int kPropertyCases = 10'000;
constexpr std::uint64_t kBenchSeeds[] = {0, 1, 2};

struct Table1Row {
  Difficulty difficulty;
  IntRange rooms;
  IntRange objects;
  double tasks;
  double walkthrough;
  double questions;
};

constexpr Table1Row kTable1[] = {
    {Difficulty::easy, {3, 5}, {6, 10}, 2.4, 4.17, 34.6},
    {Difficulty::medium, {6, 10}, {14, 18}, 5.7, 5.25, 65.6},
    {Difficulty::hard, {16, 20}, {28, 32}, 12.3, 5.78, 94.7},
};

int failures = 0;

void verdict(bool ok, const std::string& name, const std::string& detail) {
  std::cout << (ok ? "PASS  " : "FAIL  ") << name << ": " << detail << std::endl;
  failures += !ok;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

RunRecord run(const BenchFile& bench, const std::string& agent, std::uint64_t seed = 0) {
  RunOptions o;
  o.agent = agent;
  o.agent_options.seed = seed;
  return run_bench(bench, o);
}

BenchFile bench_for(std::uint64_t seed) {
  BenchConfig c = default_bench_config();
  c.seed = seed;
  return generate_bench(c);
}

void solvability(const BenchFile& bench, double gen_seconds) {
  auto start = std::chrono::steady_clock::now();
  RunRecord r = run(bench, "builtin:oracle");
  double seconds = gen_seconds + std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool ok = bench.environments.size() == 30 && r.report.tasks.total > 0 &&
            r.report.tasks.correct == r.report.tasks.total && seconds < kRuntimeLimitSeconds;
  verdict(ok, "solvability",
          "oracle TSR " + fixed(r.report.tsr(), 3) + " over " + std::to_string(bench.environments.size()) +
              " environments (" + std::to_string(r.report.tasks.total) + " tasks), generate+run " + fixed(seconds, 1) +
              " s (limit " + fixed(kRuntimeLimitSeconds, 0) + " s)");
}

void self_consistency(const std::vector<BenchFile>& benches) {
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < benches.size(); ++i) {
    RunRecord r = run(benches[i], "builtin:oracle+omniscient");
    ok &= r.report.questions.total > 0 && r.report.questions.correct == r.report.questions.total;
    detail += (i ? ", " : "") + std::string("seed ") + std::to_string(kBenchSeeds[i]) + " EUS " +
              fixed(r.report.eus_total(), 3) + " (" + std::to_string(r.report.questions.total) + " q)";
  }
  verdict(ok, "verifier self-consistency", "oracle + omniscient: " + detail);
}

void gating_floor(const BenchFile& bench) {
  RunRecord r = run(bench, "builtin:noop+omniscient");
  long answerable = 0, gated = 0, bad = 0;
  std::string first_bad;
  for (const auto& e : r.environments) {
    const BenchEnv& be = bench.environments[static_cast<std::size_t>(e.env)];
    std::set<Fact> look;
    for (const auto& t : e.trajectories) {
      if (t.events.size() != 1) ++bad;
      look.insert(t.events.front().revealed.begin(), t.events.front().revealed.end());
    }
    for (std::size_t i = 0; i < be.quiz.size(); ++i) {
      const Question& q = be.quiz[i];
      const GradedQuestion& g = e.report.per_question[i];
      bool ok = g.correct;
      if (g.answerable) {
        ++answerable;
        ok &= std::any_of(q.evidence.begin(), q.evidence.end(), [&](const std::vector<Fact>& set) {
          return std::all_of(set.begin(), set.end(), [&](const Fact& f) { return look.count(f) > 0; });
        });
      } else {
        ++gated;
        // Only the sentinel earns credit on a gated question.
        ok &= g.expected == kNonAnswerable && !grade_answer(q.static_answer, g.expected, q.format) &&
              grade_answer(std::string(kNonAnswerable), g.expected, q.format);
      }
      if (!ok && first_bad.empty()) first_bad = "env " + std::to_string(e.env) + " " + q.id + " " + q.text;
      bad += !ok;
    }
  }
  verdict(bad == 0 && gated > 0, "gating floor",
          "noop + omniscient: " + std::to_string(answerable) + " answerable, all grounded in the step-0 look; " +
              std::to_string(gated) + " gated, credited only for non-answerable" +
              (first_bad.empty() ? "" : "; first violation: " + first_bad));
}

void table1(const BenchFile& bench) {
  bool ok = true;
  std::ostringstream detail;
  for (const Table1Row& row : kTable1) {
    int envs = 0;
    bool ranges = true;
    double tasks = 0, walk_total = 0, questions = 0;
    int walk_count = 0;
    for (const auto& e : bench.environments) {
      if (e.env.difficulty != row.difficulty) continue;
      ++envs;
      ranges &= row.rooms.contains(static_cast<int>(e.env.rooms.size())) && row.objects.contains(object_count(e.env));
      tasks += static_cast<double>(e.tasks.size());
      questions += static_cast<double>(e.quiz.size());
      for (const auto& t : e.tasks) {
        walk_total += static_cast<double>(t.walkthrough.size());
        ++walk_count;
      }
    }
    double avg_tasks = tasks / envs, avg_walk = walk_total / walk_count, avg_q = questions / envs;
    auto near = [](double got, double want) { return std::abs(got - want) <= kTable1Tolerance * want; };
    bool row_ok = envs == 10 && ranges && near(avg_tasks, row.tasks) && near(avg_walk, row.walkthrough) &&
                  near(avg_q, row.questions);
    ok &= row_ok;
    detail << to_string(row.difficulty) << " [ranges " << (ranges ? "ok" : "VIOLATED") << ", tasks "
           << fixed(avg_tasks, 2) << "/" << row.tasks << ", walkthrough " << fixed(avg_walk, 2) << "/"
           << row.walkthrough << ", questions " << fixed(avg_q, 1) << "/" << row.questions << "] ";
  }
  verdict(ok, "Table 1 structure", detail.str() + "(averages within +-" + fixed(100 * kTable1Tolerance, 0) + "%)");
}

void lock_fraction(const std::vector<BenchFile>& benches) {
  long checked = 0, bad = 0;
  auto check = [&](const EnvSpec& spec) {
    ++checked;
    auto n = static_cast<double>(lockables(spec).size());
    bad += locked_count(spec) != static_cast<int>(std::floor(0.4 * n + 1e-9));
  };
  for (const auto& b : benches) {
    for (const auto& e : b.environments) check(e.env);
  }
  for (Difficulty d : kAllDifficulties) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      DifficultyConfig cfg = DifficultyConfig::preset(d);
      cfg.seed = mix_seed(s, "lock-fraction");
      check(generate(cfg));
    }
  }
  verdict(bad == 0, "lock fraction",
          std::to_string(checked - bad) + "/" + std::to_string(checked) + " environments lock floor(0.4 x lockables)");
}

void set_cover() {
  Rng rng(2024);
  GainWeights unit{1, 1, 1};
  auto letter = [](int i) { return Target::room(EntityId(static_cast<std::uint32_t>(i))); };
  int bad = 0;
  double worst = 0;
  for (int instance = 0; instance < kSetCoverInstances; ++instance) {
    const int u = rng.uniform(1, kSetCoverMaxUniverse);
    std::set<Target> universe;
    for (int i = 0; i < u; ++i) universe.insert(letter(i));
    std::vector<std::set<Target>> sets(static_cast<std::size_t>(rng.uniform(2, 11)));
    for (auto& s : sets) {
      for (int i = 0; i < u; ++i) {
        if (rng.chance(1.0 / 3)) s.insert(letter(i));
      }
    }
    for (int i = 0; i < u; ++i) sets[rng.index(sets.size())].insert(letter(i));
    auto picked = greedy_select(sets, universe, unit);
    std::set<Target> covered;
    for (std::size_t i : picked) covered.insert(sets[i].begin(), sets[i].end());
    int optimum = brute_force_cover(sets, universe);
    double bound = (std::log(static_cast<double>(u)) + 1.0) * optimum;
    worst = std::max(worst, static_cast<double>(picked.size()) / optimum);
    bad += !(covered == universe && optimum > 0 && static_cast<double>(picked.size()) <= bound);
  }
  Target a = letter(0), b = letter(1), c = letter(2), d = letter(3);
  bool hand = greedy_select({{a, b}, {b, c, d}, {a}}, {a, b, c, d}, unit) == std::vector<std::size_t>{1, 0};
  verdict(bad == 0 && hand, "set-cover oracle equivalence",
          std::to_string(kSetCoverInstances - bad) + "/" + std::to_string(kSetCoverInstances) +
              " instances complete and within (ln|U|+1) x optimum (worst ratio " + fixed(worst, 2) +
              "); hand example picks s2 then s1: " + (hand ? "yes" : "no"));
}

void walkthrough_optimality(const std::vector<BenchFile>& benches) {
  std::vector<EnvSpec> specs = {two_room_world().spec, two_room_world(Access::closed).spec,
                                two_room_world(Access::open).spec};
  for (const auto& b : benches) {
    for (const auto& e : b.environments) {
      if (e.env.rooms.size() <= 4) specs.push_back(e.env);
    }
  }
  for (std::uint64_t s = 0; s < 200 && specs.size() < 60; ++s) {
    DifficultyConfig cfg = DifficultyConfig::preset(Difficulty::easy);
    cfg.seed = mix_seed(s, "small");
    EnvSpec spec = generate(cfg);
    if (spec.rooms.size() <= 4) specs.push_back(std::move(spec));
  }
  long goals = 0, bad = 0;
  for (const auto& spec : specs) {
    for (const auto& target : extract_targets(spec)) {
      Goal goal = goal_for(target);
      auto plan = plan_walkthrough(spec, goal);
      ++goals;
      bad += !plan || exhaustive_min(spec, goal, plan->size()) != plan->size();
    }
  }
  verdict(bad == 0, "walkthrough optimality",
          std::to_string(goals - bad) + "/" + std::to_string(goals) + " goals over " + std::to_string(specs.size()) +
              " specs with <= 4 rooms match the exhaustive minimum");
}

void determinism(const BenchFile& bench) {
  bool bench_same = bench_to_text(bench) == bench_to_text(bench_for(kBenchSeeds[0]));
  bool reports_same = true;
  for (const char* agent : {"builtin:oracle+omniscient", "builtin:random", "builtin:noop+random"}) {
    reports_same &= report_to_text(run(bench, agent, 17).report) == report_to_text(run(bench, agent, 17).report);
  }
  auto props = run_property_suite(kPropertyCases, 99);
  bool props_ok = true;
  std::string prop_detail;
  for (const auto& p : props) {
    props_ok &= p.failures == 0 && p.cases == kPropertyCases;
    prop_detail += "; " + p.name + " " + std::to_string(p.cases - p.failures) + "/" + std::to_string(p.cases);
    if (p.failures) prop_detail += " (" + p.first_failure + ")";
  }
  verdict(bench_same && reports_same && props_ok, "determinism",
          std::string("bench bytes ") + (bench_same ? "identical" : "DIFFER") + ", grade reports " +
              (reports_same ? "identical" : "DIFFER") + prop_detail);
}

}  // namespace

int main() {
  auto start = std::chrono::steady_clock::now();
  BenchFile first = bench_for(kBenchSeeds[0]);
  double gen_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::vector<BenchFile> benches{first};
  for (std::size_t i = 1; i < std::size(kBenchSeeds); ++i) benches.push_back(bench_for(kBenchSeeds[i]));

  solvability(first, gen_seconds);
  self_consistency(benches);
  gating_floor(first);
  table1(first);
  lock_fraction(benches);
  set_cover();
  walkthrough_optimality(benches);
  determinism(first);

  std::cout << (failures == 0 ? "all acceptance criteria pass" : std::to_string(failures) + " criteria fail")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
