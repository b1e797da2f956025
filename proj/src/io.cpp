#include "worldquiz/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace worldquiz {

namespace {

std::string dump(const json& j, int indent) {
  return j.dump(indent, ' ', false, json::error_handler_t::replace);
}

template <typename E, typename From>
E enum_from(const json& j, From from, const char* what) {
  auto s = j.get<std::string>();
  auto v = from(s);
  if (!v) throw FormatError(std::string("unknown ") + what + ": " + s);
  return *v;
}

json range_json(const IntRange& r) { return json::array({r.lo, r.hi}); }
IntRange range_from(const json& j) { return {j.at(0).get<int>(), j.at(1).get<int>()}; }

json tally_json(const Tally& t) { return {{"correct", t.correct}, {"total", t.total}}; }
Tally tally_from(const json& j) { return {j.at("correct").get<int>(), j.at("total").get<int>()}; }

json target_json(const Target& t) {
  json j = {{"kind", to_string(t.kind)}, {"entity", t.entity}};
  if (t.action != Interaction::none) j["action"] = to_string(t.action);
  return j;
}

Target target_from(const json& j) {
  Target t;
  t.kind = enum_from<TargetKind>(j.at("kind"), target_kind_from, "target kind");
  t.entity = j.at("entity").get<EntityId>();
  if (j.contains("action")) t.action = enum_from<Interaction>(j.at("action"), interaction_from, "interaction");
  return t;
}

json difficulty_json(const DifficultyConfig& c) {
  return {{"difficulty", to_string(c.difficulty)},
          {"rooms", range_json(c.rooms)},
          {"objects", range_json(c.objects)},
          {"lock_fraction", c.lock_fraction},
          {"distractors", range_json(c.distractor_count)},
          {"portables", range_json(c.portables)},
          {"door_fraction", c.door_fraction},
          {"open_door_fraction", c.open_door_fraction},
          {"open_container_fraction", c.open_container_fraction},
          {"branch_probability", c.branch_probability},
          {"quiz_caps",
           {{"location", c.quiz_caps.location},
            {"connectivity", c.quiz_caps.connectivity},
            {"direction", c.quiz_caps.direction},
            {"match", c.quiz_caps.match},
            {"property", c.quiz_caps.property}}},
          {"seed", c.seed}};
}

DifficultyConfig difficulty_from_json(const json& j) {
  DifficultyConfig c;
  c.difficulty = enum_from<Difficulty>(j.at("difficulty"), difficulty_from, "difficulty");
  c.rooms = range_from(j.at("rooms"));
  c.objects = range_from(j.at("objects"));
  c.lock_fraction = j.at("lock_fraction").get<double>();
  c.distractor_count = range_from(j.at("distractors"));
  c.portables = range_from(j.at("portables"));
  c.door_fraction = j.at("door_fraction").get<double>();
  c.open_door_fraction = j.at("open_door_fraction").get<double>();
  c.open_container_fraction = j.at("open_container_fraction").get<double>();
  c.branch_probability = j.at("branch_probability").get<double>();
  const json& q = j.at("quiz_caps");
  c.quiz_caps = {q.at("location").get<int>(), q.at("connectivity").get<int>(), q.at("direction").get<int>(),
                 q.at("match").get<int>(), q.at("property").get<int>()};
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

json graded_json(const GradedQuestion& g) {
  return {{"env", g.env},
          {"question", g.question_id},
          {"category", to_string(g.category)},
          {"answerable", g.answerable},
          {"expected", g.expected},
          {"given", g.given},
          {"correct", g.correct}};
}

GradedQuestion graded_from(const json& j) {
  GradedQuestion g;
  g.env = j.at("env").get<int>();
  g.question_id = j.at("question").get<std::string>();
  g.category = enum_from<QuestionCategory>(j.at("category"), category_from, "category");
  g.answerable = j.at("answerable").get<bool>();
  g.expected = j.at("expected").get<std::string>();
  g.given = j.at("given").get<std::string>();
  g.correct = j.at("correct").get<bool>();
  return g;
}

json bench_json(const BenchFile& b) {
  json envs = json::array();
  for (const auto& e : b.environments) envs.push_back({{"env", e.env}, {"tasks", e.tasks}, {"quiz", e.quiz}});
  return {{"version", b.version}, {"generation_config", b.config}, {"environments", envs}};
}

json env_run_json(const EnvRun& r) {
  return {{"env", r.env},
          {"difficulty", to_string(r.difficulty)},
          {"seed", r.seed},
          {"quiz", r.quiz},
          {"trajectories", r.trajectories},
          {"answers", r.answers},
          {"error", r.error},
          {"report", r.report}};
}

EnvRun env_run_from(const json& j) {
  EnvRun r;
  r.env = j.at("env").get<int>();
  r.difficulty = enum_from<Difficulty>(j.at("difficulty"), difficulty_from, "difficulty");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.quiz = j.at("quiz").get<std::vector<Question>>();
  r.trajectories = j.at("trajectories").get<std::vector<Trajectory>>();
  r.answers = j.at("answers").get<std::vector<std::string>>();
  r.error = j.at("error").get<std::string>();
  r.report = j.at("report").get<GradeReport>();
  return r;
}

json record_json(const RunRecord& r) {
  json envs = json::array();
  for (const auto& e : r.environments) envs.push_back(env_run_json(e));
  json diffs = json::array();
  for (Difficulty d : r.difficulties) diffs.push_back(to_string(d));
  return {{"version", r.version}, {"bench_checksum", r.bench_checksum}, {"agent", r.agent},
          {"seed", r.seed},       {"difficulties", diffs},              {"complete", r.complete},
          {"environments", envs}, {"report", r.report}};
}

json parse_versioned(std::string_view text, std::string_view version, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw FormatError(std::string(what) + " is not a JSON object");
  auto v = j.find("version");
  if (v == j.end() || !v->is_string()) throw FormatError(std::string(what) + " has no version");
  if (v->get<std::string>() != version)
    throw FormatError(std::string(what) + " version " + v->get<std::string>() + " is not " + std::string(version));
  return j;
}

// nlohmann errors become FormatError.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

void to_json(json& j, const EntityId& id) {
  if (id.is_none()) j = nullptr;
  else if (id.is_player()) j = "player";
  else if (id.is_inventory()) j = "inventory";
  else j = id.value;
}

void from_json(const json& j, EntityId& id) {
  if (j.is_null()) id = EntityId::none();
  else if (j == "player") id = EntityId::player();
  else if (j == "inventory") id = EntityId::inventory();
  else if (j.is_number_unsigned() && j.get<std::uint64_t>() < EntityId::kPlayer) id = EntityId{j.get<std::uint32_t>()};
  else throw FormatError("bad entity id: " + j.dump());
}

void to_json(json& j, const Fact& f) { j = json::array({to_string(f.predicate), f.subject, f.object}); }

void from_json(const json& j, Fact& f) {
  f.predicate = enum_from<Predicate>(j.at(0), predicate_from, "predicate");
  f.subject = j.at(1).get<EntityId>();
  f.object = j.at(2).get<EntityId>();
}

void to_json(json& j, const EnvSpec& s) {
  json entities = json::array();
  for (const auto& e : s.entities)
    entities.push_back({{"id", e.id}, {"kind", to_string(e.kind)}, {"name", e.name}, {"description", e.description}});
  json rooms = json::array();
  for (const auto& r : s.rooms) rooms.push_back({{"id", r.id}, {"x", r.pos.x}, {"y", r.pos.y}});
  json edges = json::array();
  for (const auto& e : s.edges) {
    edges.push_back({{"from", e.from},
                     {"dir", to_string(e.dir)},
                     {"to", e.to},
                     {"door", e.door ? json(*e.door) : json(nullptr)}});
  }
  j = {{"entities", entities},
       {"rooms", rooms},
       {"edges", edges},
       {"initial_facts", s.initial_facts},
       {"start_room", s.start_room},
       {"seed", s.seed},
       {"difficulty", to_string(s.difficulty)}};
}

void from_json(const json& j, EnvSpec& s) {
  s = {};
  for (const auto& e : j.at("entities")) {
    s.entities.push_back({e.at("id").get<EntityId>(),
                          enum_from<EntityKind>(e.at("kind"), entity_kind_from, "entity kind"),
                          e.at("name").get<std::string>(), e.at("description").get<std::string>()});
  }
  for (const auto& r : j.at("rooms"))
    s.rooms.push_back({r.at("id").get<EntityId>(), {r.at("x").get<int>(), r.at("y").get<int>()}});
  for (const auto& e : j.at("edges")) {
    Edge edge;
    edge.from = e.at("from").get<EntityId>();
    edge.dir = enum_from<Direction>(e.at("dir"), direction_from, "direction");
    edge.to = e.at("to").get<EntityId>();
    if (!e.at("door").is_null()) edge.door = e.at("door").get<EntityId>();
    s.edges.push_back(edge);
  }
  s.initial_facts = j.at("initial_facts").get<std::vector<Fact>>();
  s.start_room = j.at("start_room").get<EntityId>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.difficulty = enum_from<Difficulty>(j.at("difficulty"), difficulty_from, "difficulty");
}

void to_json(json& j, const TaskSpec& t) {
  json sig = json::array();
  for (const auto& target : t.signature) sig.push_back(target_json(target));
  j = {{"id", t.id},
       {"goal", {{"kind", to_string(t.goal.kind)}, {"target", t.goal.target}}},
       {"description", t.description},
       {"walkthrough", t.walkthrough},
       {"signature", sig}};
}

void from_json(const json& j, TaskSpec& t) {
  t = {};
  t.id = j.at("id").get<std::string>();
  t.goal.kind = enum_from<GoalKind>(j.at("goal").at("kind"), goal_kind_from, "goal kind");
  t.goal.target = j.at("goal").at("target").get<EntityId>();
  t.description = j.at("description").get<std::string>();
  t.walkthrough = j.at("walkthrough").get<std::vector<std::string>>();
  for (const auto& target : j.at("signature")) t.signature.insert(target_from(target));
}

void to_json(json& j, const Question& q) {
  json cps = json::array();
  for (const auto& c : q.checkpoints) cps.push_back({{"kind", to_string(c.kind)}, {"ref", c.ref}});
  j = {{"id", q.id},
       {"category", to_string(q.category)},
       {"format", to_string(q.format)},
       {"text", q.text},
       {"choices", q.choices},
       {"static_answer", q.static_answer},
       {"checkpoints", cps},
       {"evidence", q.evidence}};
}

void from_json(const json& j, Question& q) {
  q = {};
  q.id = j.at("id").get<std::string>();
  q.category = enum_from<QuestionCategory>(j.at("category"), category_from, "category");
  q.format = enum_from<AnswerFormat>(j.at("format"), format_from, "answer format");
  q.text = j.at("text").get<std::string>();
  q.choices = j.at("choices").get<std::vector<std::string>>();
  q.static_answer = j.at("static_answer").get<std::string>();
  for (const auto& c : j.at("checkpoints")) {
    q.checkpoints.push_back({enum_from<CheckpointKind>(c.at("kind"), checkpoint_kind_from, "checkpoint kind"),
                             c.at("ref").get<EntityId>()});
  }
  q.evidence = j.at("evidence").get<std::vector<std::vector<Fact>>>();
}

void to_json(json& j, const Event& e) {
  json cmd = nullptr;
  if (e.command) {
    cmd = {{"verb", to_string(e.command->verb)},
           {"direction", e.command->direction ? json(to_string(*e.command->direction)) : json(nullptr)},
           {"args", e.command->args}};
  }
  j = {{"step", e.step},       {"input", e.input},         {"command", cmd}, {"targets", e.targets},
       {"outcome", to_string(e.outcome)}, {"revealed", e.revealed}, {"room", e.room}};
}

void from_json(const json& j, Event& e) {
  e = {};
  e.step = j.at("step").get<int>();
  e.input = j.at("input").get<std::string>();
  if (const json& c = j.at("command"); !c.is_null()) {
    Command cmd;
    cmd.verb = enum_from<Verb>(c.at("verb"), verb_from, "verb");
    if (!c.at("direction").is_null()) cmd.direction = enum_from<Direction>(c.at("direction"), direction_from, "direction");
    cmd.args = c.at("args").get<std::vector<std::string>>();
    e.command = cmd;
  }
  e.targets = j.at("targets").get<std::vector<EntityId>>();
  e.outcome = enum_from<Outcome>(j.at("outcome"), outcome_from, "outcome");
  e.revealed = j.at("revealed").get<std::vector<Fact>>();
  e.room = j.at("room").get<EntityId>();
}

void to_json(json& j, const Trajectory& t) {
  j = {{"task_id", t.task_id},
       {"events", t.events},
       {"won", t.won},
       {"actions", t.actions()},
       {"oracle_length", t.oracle_length},
       {"error", t.error}};
}

void from_json(const json& j, Trajectory& t) {
  t = {};
  t.task_id = j.at("task_id").get<int>();
  t.events = j.at("events").get<std::vector<Event>>();
  t.won = j.at("won").get<bool>();
  t.oracle_length = j.at("oracle_length").get<int>();
  t.error = j.at("error").get<std::string>();
}

void to_json(json& j, const GradeReport& r) {
  json cats = json::object();
  for (const auto& [c, t] : r.by_category) cats[std::string(to_string(c))] = tally_json(t);
  json rows = json::array();
  for (const auto& g : r.per_question) rows.push_back(graded_json(g));
  j = {{"normalization", r.normalization},
       {"tasks", tally_json(r.tasks)},
       {"questions", tally_json(r.questions)},
       {"answerable", tally_json(r.answerable)},
       {"non_answerable", tally_json(r.non_answerable)},
       {"by_category", cats},
       {"per_question", rows}};
}

void from_json(const json& j, GradeReport& r) {
  r = {};
  r.normalization = j.at("normalization").get<std::string>();
  r.tasks = tally_from(j.at("tasks"));
  r.questions = tally_from(j.at("questions"));
  r.answerable = tally_from(j.at("answerable"));
  r.non_answerable = tally_from(j.at("non_answerable"));
  for (const auto& [name, t] : j.at("by_category").items()) {
    auto c = category_from(name);
    if (!c) throw FormatError("unknown category: " + name);
    r.by_category[*c] = tally_from(t);
  }
  for (const auto& g : j.at("per_question")) r.per_question.push_back(graded_from(g));
}

void to_json(json& j, const BenchConfig& c) {
  json diffs = json::array();
  for (const auto& d : c.difficulties) diffs.push_back(difficulty_json(d));
  j = {{"seed", c.seed},
       {"envs_per_difficulty", c.envs_per_difficulty},
       {"difficulties", diffs},
       {"weights", {{"room", c.weights.room}, {"object", c.weights.object}, {"interaction", c.weights.interaction}}},
       {"node_cap", c.node_cap}};
}

void from_json(const json& j, BenchConfig& c) {
  c = {};
  c.seed = j.at("seed").get<std::uint64_t>();
  c.envs_per_difficulty = j.at("envs_per_difficulty").get<int>();
  for (const auto& d : j.at("difficulties")) c.difficulties.push_back(difficulty_from_json(d));
  const json& w = j.at("weights");
  c.weights = {w.at("room").get<double>(), w.at("object").get<double>(), w.at("interaction").get<double>()};
  c.node_cap = j.at("node_cap").get<std::size_t>();
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string bench_checksum(const BenchFile& bench) { return fnv1a_hex(dump(bench_json(bench), -1)); }
std::string record_checksum(const RunRecord& record) { return fnv1a_hex(dump(record_json(record), -1)); }

std::string bench_to_text(const BenchFile& bench) {
  json j = bench_json(bench);
  j["checksum"] = bench.checksum;
  return dump(j, 1) + "\n";
}

std::string record_to_text(const RunRecord& record) {
  json j = record_json(record);
  j["checksum"] = record.checksum;
  return dump(j, 1) + "\n";
}

std::string report_to_text(const GradeReport& report) { return dump(json(report), 1) + "\n"; }

BenchFile bench_from_text(std::string_view text) {
  json j = parse_versioned(text, kBenchVersion, "bench file");
  BenchFile b = guarded("bench file", [&] {
    BenchFile out;
    out.version = j.at("version").get<std::string>();
    out.config = j.at("generation_config").get<BenchConfig>();
    for (const auto& e : j.at("environments")) {
      out.environments.push_back({e.at("env").get<EnvSpec>(), e.at("tasks").get<std::vector<TaskSpec>>(),
                                  e.at("quiz").get<std::vector<Question>>()});
    }
    out.checksum = j.at("checksum").get<std::string>();
    return out;
  });
  if (bench_checksum(b) != b.checksum) throw CorruptError("bench file checksum mismatch");
  return b;
}

RunRecord record_from_text(std::string_view text) {
  json j = parse_versioned(text, kRecordVersion, "run record");
  RunRecord r = guarded("run record", [&] {
    RunRecord out;
    out.version = j.at("version").get<std::string>();
    out.bench_checksum = j.at("bench_checksum").get<std::string>();
    out.agent = j.at("agent").get<std::string>();
    out.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& d : j.at("difficulties")) out.difficulties.push_back(enum_from<Difficulty>(d, difficulty_from, "difficulty"));
    out.complete = j.at("complete").get<bool>();
    for (const auto& e : j.at("environments")) out.environments.push_back(env_run_from(e));
    out.report = j.at("report").get<GradeReport>();
    out.checksum = j.at("checksum").get<std::string>();
    return out;
  });
  if (record_checksum(r) != r.checksum) throw CorruptError("run record checksum mismatch");
  return r;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("cannot replace " + path);
}

}  // namespace worldquiz
