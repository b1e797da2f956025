#include "worldquiz/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace worldquiz {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

template <typename T>
T parse_number(std::string_view v, int line) {
  T out{};
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size()) fail(line, "not a number: " + std::string(v));
  return out;
}

double parse_fraction(std::string_view v, int line) {
  // from_chars for double is missing from older standard libraries.
  std::string s(v);
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(line, "not a number: " + s);
  }
  if (used != s.size()) fail(line, "not a number: " + s);
  return d;
}

double parse_unit(std::string_view v, int line) {
  double d = parse_fraction(v, line);
  if (d < 0.0 || d > 1.0) fail(line, "fraction outside [0, 1]: " + std::string(v));
  return d;
}

IntRange parse_range(std::string_view v, int line) {
  auto dash = v.find('-');
  IntRange r;
  if (dash == std::string_view::npos) {
    r.lo = r.hi = parse_number<int>(v, line);
  } else {
    r.lo = parse_number<int>(trim(v.substr(0, dash)), line);
    r.hi = parse_number<int>(trim(v.substr(dash + 1)), line);
  }
  if (r.lo < 0 || r.hi < r.lo) fail(line, "bad range: " + std::string(v));
  return r;
}

void set_difficulty_key(DifficultyConfig& c, std::string_view key, std::string_view v, int line) {
  if (key == "rooms") c.rooms = parse_range(v, line);
  else if (key == "objects") c.objects = parse_range(v, line);
  else if (key == "distractors") c.distractor_count = parse_range(v, line);
  else if (key == "portables") c.portables = parse_range(v, line);
  else if (key == "lock_fraction") c.lock_fraction = parse_unit(v, line);
  else if (key == "door_fraction") c.door_fraction = parse_unit(v, line);
  else if (key == "open_door_fraction") c.open_door_fraction = parse_unit(v, line);
  else if (key == "open_container_fraction") c.open_container_fraction = parse_unit(v, line);
  else if (key == "branch_probability") c.branch_probability = parse_unit(v, line);
  else if (key == "quiz.location") c.quiz_caps.location = parse_number<int>(v, line);
  else if (key == "quiz.connectivity") c.quiz_caps.connectivity = parse_number<int>(v, line);
  else if (key == "quiz.direction") c.quiz_caps.direction = parse_number<int>(v, line);
  else if (key == "quiz.match") c.quiz_caps.match = parse_number<int>(v, line);
  else if (key == "quiz.property") c.quiz_caps.property = parse_number<int>(v, line);
  else fail(line, "unknown key in difficulty section: " + std::string(key));
}

void set_global_key(BenchConfig& c, std::string_view key, std::string_view v, int line) {
  if (key == "seed") c.seed = parse_number<std::uint64_t>(v, line);
  else if (key == "envs_per_difficulty") {
    c.envs_per_difficulty = parse_number<int>(v, line);
    if (c.envs_per_difficulty < 1) fail(line, "envs_per_difficulty must be positive");
  } else if (key == "weight.room") c.weights.room = parse_fraction(v, line);
  else if (key == "weight.object") c.weights.object = parse_fraction(v, line);
  else if (key == "weight.interaction") c.weights.interaction = parse_fraction(v, line);
  else if (key == "node_cap") c.node_cap = parse_number<std::size_t>(v, line);
  else fail(line, "unknown key: " + std::string(key));
}

}  // namespace

const DifficultyConfig* BenchConfig::find(Difficulty d) const {
  for (const auto& c : difficulties) {
    if (c.difficulty == d) return &c;
  }
  return nullptr;
}

BenchConfig default_bench_config() {
  BenchConfig c;
  for (Difficulty d : kAllDifficulties) c.difficulties.push_back(DifficultyConfig::preset(d));
  return c;
}

BenchConfig parse_config(std::string_view text, BenchConfig base) {
  DifficultyConfig* section = nullptr;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      auto name = trim(line.substr(1, line.size() - 2));
      auto d = difficulty_from(name);
      if (!d) fail(line_no, "unknown section: " + std::string(name));
      auto it = std::find_if(base.difficulties.begin(), base.difficulties.end(),
                             [&](const DifficultyConfig& c) { return c.difficulty == *d; });
      if (it == base.difficulties.end()) fail(line_no, "difficulty not configured: " + std::string(name));
      section = &*it;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail(line_no, "expected key = value");
    if (section) set_difficulty_key(*section, key, value, line_no);
    else set_global_key(base, key, value, line_no);
  }
  for (const auto& c : base.difficulties) {
    if (c.rooms.lo < 1) throw ConfigError(std::string(to_string(c.difficulty)) + ": at least one room is needed");
  }
  return base;
}

BenchConfig load_config(const std::string& path, BenchConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

std::vector<Difficulty> parse_difficulty_list(std::string_view text) {
  std::vector<Difficulty> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto name = trim(text.substr(0, comma));
    auto d = difficulty_from(name);
    if (!d) throw ConfigError("unknown difficulty: " + std::string(name));
    if (std::find(out.begin(), out.end(), *d) == out.end()) out.push_back(*d);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("empty difficulty list");
  return out;
}

BenchConfig restrict_to(BenchConfig config, const std::vector<Difficulty>& keep) {
  std::erase_if(config.difficulties, [&](const DifficultyConfig& c) {
    return std::find(keep.begin(), keep.end(), c.difficulty) == keep.end();
  });
  return config;
}

}  // namespace worldquiz
