#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "worldquiz/planner.hpp"
#include "worldquiz/quiz.hpp"
#include "worldquiz/types.hpp"

namespace worldquiz {

// One reply line from an agent, or the reason there is none
// ("timeout", "disconnect").
struct AgentReply {
  std::optional<std::string> line;
  std::string error;
};

// Wire messages are single-line JSON objects. Stage 1 sends
// {"type":"act","observation","inventory","score"} and expects
// {"reason","command"}; an empty command gives up the task. Stage 2 sends
// {"type":"quiz","question","choices","guideline","context"} and expects
// {"answer","reason"}. `guideline` carries the answer-format key.
class Agent {
 public:
  virtual ~Agent() = default;

  // Built-in agents may look at the task; external agents are told nothing.
  virtual void begin_task(const EnvSpec&, const TaskSpec&) {}
  virtual AgentReply act(const nlohmann::json& message) = 0;
  virtual void begin_quiz(const EnvSpec&, const std::vector<Trajectory>&) {}
  virtual AgentReply answer(const nlohmann::json& message, const Question& q) = 0;
};

// Stage-1 and stage-2 agents for one environment; external agents play
// both stages over one connection.
struct AgentPair {
  std::shared_ptr<Agent> stage1;
  std::shared_ptr<Agent> stage2;
};

struct AgentOptions {
  std::uint64_t seed = 0;
  int timeout_ms = 30000;
};

// "builtin:<a>[+<b>]" with a, b in {oracle, noop, random, omniscient};
// "exec:<command line>"; "tcp:<host>:<port>". A lone built-in plays both
// stages. The factory is called once per environment with that
// environment's seed. Throws std::invalid_argument for malformed specs.
using AgentFactory = std::function<AgentPair(std::uint64_t env_seed)>;
AgentFactory make_agent_factory(const std::string& spec, const AgentOptions& options);
bool valid_agent_spec(const std::string& spec);

inline constexpr int kMaxMalformedReplies = 3;

// 4 * walkthrough length + 8.
int step_limit_for(const TaskSpec& task);

struct Stage1Result {
  std::vector<Trajectory> trajectories;
  std::string transcript;
};

Trajectory run_task(const EnvSpec& spec, const TaskSpec& task, int task_id, Agent& agent,
                    std::string& transcript);
Stage1Result run_stage1(const EnvSpec& spec, const std::vector<TaskSpec>& tasks, Agent& agent);
std::vector<std::string> run_stage2(const EnvSpec& spec, const std::vector<Question>& quiz, Agent& agent,
                                    const std::vector<Trajectory>& trajectories, const std::string& context);

// Step-0 look followed by `commands`, without an agent.
Trajectory replay(const EnvSpec& spec, const std::vector<std::string>& commands, int task_id = 0);

// Builds the stage-1 observation text for an event.
std::string observation_after(const Event& event, const WorldState& state, const EnvSpec& spec);

}  // namespace worldquiz
