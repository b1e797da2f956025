#include <algorithm>
#include <cctype>
#include <sstream>

#include "worldquiz/world.hpp"

namespace worldquiz {

namespace {

using Tokens = std::vector<std::string>;

bool is_article(const std::string& w) { return w == "the" || w == "a" || w == "an"; }

Tokens tokenize(std::string_view text) {
  std::string lowered;
  lowered.reserve(text.size());
  for (char c : text) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '-' || c == '\'') {
      lowered.push_back(static_cast<char>(std::tolower(u)));
    } else {
      lowered.push_back(' ');
    }
  }
  Tokens out;
  std::istringstream in(lowered);
  for (std::string w; in >> w;) {
    if (!is_article(w)) out.push_back(w);
  }
  return out;
}

// Matches the whole token range against a single entity name, longest
// candidate first. Returns the name or throws with the first stray token.
std::string match_name(const Tokens& words, std::size_t begin, std::size_t end,
                       const std::vector<Tokens>& names, std::span<const std::string> raw) {
  if (begin >= end) throw ParseError("");
  std::size_t best_len = 0;
  std::size_t best = raw.size();
  for (std::size_t i = 0; i < names.size(); ++i) {
    const Tokens& n = names[i];
    if (n.empty() || n.size() > end - begin || n.size() <= best_len) continue;
    if (std::equal(n.begin(), n.end(), words.begin() + static_cast<std::ptrdiff_t>(begin))) {
      best_len = n.size();
      best = i;
    }
  }
  if (best == raw.size()) throw ParseError(words[begin]);
  if (begin + best_len != end) throw ParseError(words[begin + best_len]);
  return raw[best];
}

}  // namespace

Command parse_command(std::string_view text, std::span<const std::string> names) {
  Tokens words = tokenize(text);
  if (words.empty()) throw ParseError(std::string(text));
  auto verb = verb_from(words[0]);
  if (!verb) throw ParseError(words[0]);

  std::vector<Tokens> name_tokens;
  name_tokens.reserve(names.size());
  for (const auto& n : names) name_tokens.push_back(tokenize(n));

  Command cmd;
  cmd.verb = *verb;
  const std::size_t n = words.size();
  auto one_arg = [&] { cmd.args = {match_name(words, 1, n, name_tokens, names)}; };
  // Splits at the first separator where both sides resolve to names.
  auto two_args = [&](std::initializer_list<std::string_view> seps, bool optional_second) {
    ParseError last(words.size() > 1 ? words[1] : words[0]);
    for (std::size_t i = 2; i + 1 < n; ++i) {
      if (std::find(seps.begin(), seps.end(), words[i]) == seps.end()) continue;
      try {
        cmd.args = {match_name(words, 1, i, name_tokens, names),
                    match_name(words, i + 1, n, name_tokens, names)};
        return;
      } catch (const ParseError& e) {
        last = e;
      }
    }
    if (optional_second) {
      one_arg();
      return;
    }
    // Missing separator: report the most useful token.
    if (n <= 1) throw ParseError(words[0]);
    throw last;
  };

  switch (cmd.verb) {
    case Verb::go: {
      if (n != 2) throw ParseError(n < 2 ? words[0] : words[2]);
      auto d = direction_from(words[1]);
      if (!d) throw ParseError(words[1]);
      cmd.direction = d;
      break;
    }
    case Verb::look:
    case Verb::inventory:
      if (n != 1) throw ParseError(words[1]);
      break;
    case Verb::unlock: two_args({"with"}, false); break;
    case Verb::put: two_args({"on", "onto"}, false); break;
    case Verb::insert: two_args({"into", "in"}, false); break;
    case Verb::take: two_args({"from"}, true); break;
    case Verb::open:
    case Verb::close:
    case Verb::examine:
    case Verb::eat:
      if (n < 2) throw ParseError(words[0]);
      one_arg();
      break;
  }
  return cmd;
}

Command parse_command(std::string_view text, const EnvSpec& spec) {
  const auto names = spec.names();
  return parse_command(text, std::span<const std::string>(names));
}

}  // namespace worldquiz
