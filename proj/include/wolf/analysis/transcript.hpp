#pragma once

#include <string>

#include "wolf/match/event_log.hpp"

namespace wolf::analysis {

struct TranscriptOptions {
  bool show_over = false;   // include "Over" lines
  bool show_roles = true;   // tag speakers with their hidden role
};

/// Human-readable dialogue: one block per day, then votes and the night.
std::string render_transcript(const match::EventLog& log, const TranscriptOptions& options = {});

}  // namespace wolf::analysis
