#include "worldquiz/harness.hpp"

#include <stdexcept>

#include "worldquiz/channel.hpp"
#include "worldquiz/rng.hpp"
#include "worldquiz/verifier.hpp"
#include "worldquiz/world.hpp"

namespace worldquiz {

namespace {

using nlohmann::json;

AgentReply reply_line(const json& j) { return {j.dump(), ""}; }

AgentReply act_reply(std::string command, std::string reason) {
  return reply_line(json{{"reason", std::move(reason)}, {"command", std::move(command)}});
}

AgentReply answer_reply(std::string answer, std::string reason) {
  return reply_line(json{{"answer", std::move(answer)}, {"reason", std::move(reason)}});
}

// Field `key` of a one-line JSON object reply, if it is a string.
std::optional<std::string> string_field(const std::string& line, const char* key) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

class OracleAgent : public Agent {
 public:
  void begin_task(const EnvSpec&, const TaskSpec& task) override {
    walkthrough_ = task.walkthrough;
    next_ = 0;
  }
  AgentReply act(const json&) override {
    if (next_ >= walkthrough_.size()) return act_reply("", "walkthrough finished");
    return act_reply(walkthrough_[next_++], "walkthrough");
  }
  AgentReply answer(const json&, const Question& q) override {
    return answer_reply(q.static_answer, "initial state");
  }

 private:
  std::vector<std::string> walkthrough_;
  std::size_t next_ = 0;
};

class NoopAgent : public Agent {
 public:
  AgentReply act(const json&) override { return act_reply("", "noop"); }
  AgentReply answer(const json&, const Question&) override { return answer_reply("", "noop"); }
};

class OmniscientAgent : public Agent {
 public:
  AgentReply act(const json&) override { return act_reply("", "quiz only"); }
  void begin_quiz(const EnvSpec&, const std::vector<Trajectory>& trajectories) override {
    trajectories_ = trajectories;
  }
  AgentReply answer(const json&, const Question& q) override {
    return answer_reply(dynamic_answer(q, trajectories_).expected, "checkpoints");
  }

 private:
  std::vector<Trajectory> trajectories_;
};

// Uniform over admissible commands, tracking its own copy of the world.
class RandomAgent : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}

  void begin_task(const EnvSpec& spec, const TaskSpec&) override {
    spec_ = &spec;
    state_ = initial_state(spec);
  }
  AgentReply act(const json&) override {
    auto cmds = admissible_commands(state_, *spec_);
    const Command& c = rng_.pick(cmds);
    state_ = apply_command(state_, *spec_, c).state;
    return act_reply(c.text(), "random");
  }
  void begin_quiz(const EnvSpec& spec, const std::vector<Trajectory>&) override { spec_ = &spec; }
  AgentReply answer(const json&, const Question& q) override {
    std::vector<std::string> options{std::string(kNonAnswerable)};
    switch (q.format) {
      case AnswerFormat::yes_no: options.insert(options.end(), {"yes", "no"}); break;
      case AnswerFormat::which: options.insert(options.end(), q.choices.begin(), q.choices.end()); break;
      case AnswerFormat::description:
        options.insert(options.end(), {"object", "container", "supporter", "food", "key"});
        break;
      default:
        for (const auto& e : spec_->entities) {
          if (e.kind == EntityKind::room || is_furniture(e.kind)) options.push_back(e.name);
        }
    }
    return answer_reply(rng_.pick(options), "random");
  }

 private:
  Rng rng_;
  const EnvSpec* spec_ = nullptr;
  WorldState state_;
};

std::shared_ptr<Agent> make_builtin(const std::string& kind, std::uint64_t seed) {
  if (kind == "oracle") return std::make_shared<OracleAgent>();
  if (kind == "noop") return std::make_shared<NoopAgent>();
  if (kind == "omniscient") return std::make_shared<OmniscientAgent>();
  if (kind == "random") return std::make_shared<RandomAgent>(seed);
  throw std::invalid_argument("unknown built-in agent: " + kind);
}

Event unreadable(int step, std::string input, EntityId room) {
  Event ev;
  ev.step = step;
  ev.input = std::move(input);
  ev.outcome = Outcome::invalid;
  ev.room = room;
  return ev;
}

void log_turn(std::string& transcript, const json& message, const std::string& reply) {
  transcript += "Observation:\n" + message["observation"].get<std::string>() + "\n";
  transcript += "Inventory:\n" + message["inventory"].get<std::string>() + "\n";
  transcript += "Score: " + std::to_string(message["score"].get<int>()) + "\n";
  transcript += "> " + reply + "\n\n";
}

}  // namespace

bool valid_agent_spec(const std::string& spec) {
  try {
    make_agent_factory(spec, {});
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

AgentFactory make_agent_factory(const std::string& spec, const AgentOptions& options) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("agent spec needs a kind prefix: " + spec);
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (kind == "builtin") {
    auto plus = rest.find('+');
    std::string first = rest.substr(0, plus);
    std::string second = plus == std::string::npos ? first : rest.substr(plus + 1);
    // Validate eagerly so that bad specs fail before any run starts.
    make_builtin(first, 0);
    make_builtin(second, 0);
    return [first, second, options](std::uint64_t env_seed) {
      std::uint64_t seed = mix_seed(options.seed, env_seed);
      auto a = make_builtin(first, seed);
      auto b = first == second ? a : make_builtin(second, mix_seed(seed, "stage2"));
      return AgentPair{a, b};
    };
  }
  if (kind == "exec") {
    if (rest.empty()) throw std::invalid_argument("exec agent needs a command line");
    return [rest, options](std::uint64_t) {
      auto agent = std::make_shared<ExternalAgent>(spawn_process(rest), options.timeout_ms);
      return AgentPair{agent, agent};
    };
  }
  if (kind == "tcp") {
    auto at = rest.rfind(':');
    if (at == std::string::npos || at == 0 || at + 1 == rest.size())
      throw std::invalid_argument("tcp agent needs host:port");
    std::string host = rest.substr(0, at);
    int port = 0;
    try {
      std::size_t used = 0;
      port = std::stoi(rest.substr(at + 1), &used);
      if (used != rest.size() - at - 1 || port <= 0 || port > 65535) throw std::invalid_argument("port");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad tcp port in " + spec);
    }
    return [host, port, options](std::uint64_t) {
      auto agent = std::make_shared<ExternalAgent>(connect_tcp(host, port), options.timeout_ms);
      return AgentPair{agent, agent};
    };
  }
  throw std::invalid_argument("unknown agent kind: " + kind);
}

int step_limit_for(const TaskSpec& task) { return 4 * static_cast<int>(task.walkthrough.size()) + 8; }

std::string observation_after(const Event& event, const WorldState& state, const EnvSpec& spec) {
  if (!event.command) return "I don't understand that.";
  if (event.outcome == Outcome::ok) {
    switch (event.command->verb) {
      case Verb::go:
      case Verb::look: return render_observation(state, spec);
      case Verb::inventory: return render_inventory(state, spec);
      default: break;
    }
  }
  return render_feedback(event, spec);
}

Trajectory run_task(const EnvSpec& spec, const TaskSpec& task, int task_id, Agent& agent,
                    std::string& transcript) {
  Trajectory traj;
  traj.task_id = task_id;
  traj.oracle_length = static_cast<int>(task.walkthrough.size());
  WorldState s = initial_state(spec);
  traj.events.push_back(initial_look(s, spec));
  std::string observation = task.description + "\n\n" + render_observation(s, spec);
  agent.begin_task(spec, task);
  const int limit = step_limit_for(task);
  int malformed = 0;
  traj.won = satisfied(task.goal, s);
  while (!traj.won && traj.actions() < limit) {
    json message = {{"type", "act"},
                    {"observation", observation},
                    {"inventory", render_inventory(s, spec)},
                    {"score", satisfied(task.goal, s) ? 1 : 0}};
    AgentReply reply = agent.act(message);
    if (!reply.line) {
      traj.error = reply.error;
      break;
    }
    const int step = static_cast<int>(traj.events.size());
    auto command = string_field(*reply.line, "command");
    if (!command) {
      log_turn(transcript, message, *reply.line);
      traj.events.push_back(unreadable(step, *reply.line, s.player_room));
      observation = R"(Reply with one JSON object: {"reason": "...", "command": "..."}.)";
      if (++malformed >= kMaxMalformedReplies) {
        traj.error = "protocol";
        break;
      }
      continue;
    }
    malformed = 0;
    log_turn(transcript, message, *command);
    if (command->empty()) break;
    Event ev;
    try {
      Transition t = apply_command(s, spec, parse_command(*command, spec));
      s = std::move(t.state);
      ev = std::move(t.event);
      ev.input = *command;
    } catch (const ParseError&) {
      ev = unreadable(step, *command, s.player_room);
    }
    ev.step = step;
    observation = observation_after(ev, s, spec);
    traj.events.push_back(std::move(ev));
    traj.won = satisfied(task.goal, s);
  }
  return traj;
}

Stage1Result run_stage1(const EnvSpec& spec, const std::vector<TaskSpec>& tasks, Agent& agent) {
  Stage1Result r;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    r.trajectories.push_back(run_task(spec, tasks[i], static_cast<int>(i), agent, r.transcript));
  }
  return r;
}

std::vector<std::string> run_stage2(const EnvSpec& spec, const std::vector<Question>& quiz, Agent& agent,
                                    const std::vector<Trajectory>& trajectories, const std::string& context) {
  agent.begin_quiz(spec, trajectories);
  std::vector<std::string> answers;
  bool gone = false;
  for (const auto& q : quiz) {
    json message = {{"type", "quiz"},
                    {"question", q.text},
                    {"choices", q.choices},
                    {"guideline", std::string(to_string(q.format))},
                    {"context", context}};
    std::string given;
    for (int attempt = 0; !gone && attempt < kMaxMalformedReplies; ++attempt) {
      AgentReply reply = agent.answer(message, q);
      if (!reply.line) {
        gone = true;
        break;
      }
      if (auto a = string_field(*reply.line, "answer")) {
        given = *a;
        break;
      }
    }
    answers.push_back(std::move(given));
  }
  return answers;
}

Trajectory replay(const EnvSpec& spec, const std::vector<std::string>& commands, int task_id) {
  Trajectory traj;
  traj.task_id = task_id;
  WorldState s = initial_state(spec);
  traj.events.push_back(initial_look(s, spec));
  for (const auto& text : commands) {
    const int step = static_cast<int>(traj.events.size());
    Event ev;
    try {
      Transition t = apply_command(s, spec, parse_command(text, spec));
      s = std::move(t.state);
      ev = std::move(t.event);
      ev.input = text;
    } catch (const ParseError&) {
      ev = unreadable(step, text, s.player_room);
    }
    ev.step = step;
    traj.events.push_back(std::move(ev));
  }
  return traj;
}

}  // namespace worldquiz
