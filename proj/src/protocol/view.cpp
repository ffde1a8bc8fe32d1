#include "wolf/protocol/message.hpp"

namespace wolf::protocol {

GameView filter_view(const game::GameState& state, AgentId viewer, std::size_t talk_cursor) {
  GameView v;
  v.viewer = viewer;
  v.day = state.day;
  v.phase = state.phase;
  v.alive = state.alive.members();
  v.viewer_role = state.role(viewer);
  if (talk_cursor < state.talks.size()) {
    v.talk_delta.assign(state.talks.begin() + static_cast<std::ptrdiff_t>(talk_cursor), state.talks.end());
  }
  if (!state.executions.empty()) v.executed = state.executions.back().target;
  if (!state.attacks.empty()) v.attacked = state.attacks.back().target;
  if (v.viewer_role == game::Role::Seer) {
    for (auto it = state.divinations.rbegin(); it != state.divinations.rend(); ++it) {
      if (it->seer == viewer) {
        v.divine_result = *it;
        break;
      }
    }
  }
  v.vote_history = state.votes;
  return v;
}

}  // namespace wolf::protocol
