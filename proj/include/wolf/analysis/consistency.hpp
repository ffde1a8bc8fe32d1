#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wolf/match/event_log.hpp"

namespace wolf::analysis {

using game::AgentId;

enum class ViolationKind { VoteMismatch, DeadSpeaker, DuplicateTurnSpeech, MissingSeerReport };

std::string_view to_string(ViolationKind k);  // "vote_mismatch", ...

struct Violation {
  ViolationKind kind = ViolationKind::VoteMismatch;
  int day = 0;
  AgentId agent;
  std::string detail;
  std::vector<int> evidence_lines;  // 1-based JSONL line numbers
  bool operator==(const Violation&) const = default;
};

struct ConsistencyReport {
  std::vector<Violation> violations;
  int declarations = 0;          // final-turn utterances that name a vote target
  int declarations_matched = 0;  // ... and equal the vote actually cast
  int utterances = 0;            // non-control talk entries
  double distinct_1 = 0.0;       // informational
  double distinct_2 = 0.0;

  int count(ViolationKind k) const;
};

ConsistencyReport analyze(const match::EventLog& log);

/// Unique n-grams over total n-grams, lower-cased whitespace tokens.
double distinct_n(const std::vector<std::string>& utterances, int n);

nlohmann::json to_json(const Violation& v);
nlohmann::json to_json(const ConsistencyReport& r);

}  // namespace wolf::analysis
