#include "kplan/gridworld.hpp"

#include <algorithm>

#include "json.hpp"
#include "kplan/errors.hpp"

namespace kplan {

namespace {

using nlohmann::json;

std::string show(Coord c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace

GridCodec::GridCodec(int n) : n_(n) {
  if (n < 1) throw ValidationError("room side must be positive");
}

StateId GridCodec::encode(Coord c) const {
  if (!contains(c)) {
    throw ContractViolation("coordinate " + show(c) + " outside [1," + std::to_string(n_) + "]^2");
  }
  return static_cast<StateId>((c.x - 1) * n_ + (c.y - 1));
}

Coord GridCodec::decode(StateId s) const {
  if (s >= num_states()) {
    throw ContractViolation("state " + std::to_string(s) + " outside room of " +
                            std::to_string(num_states()) + " cells");
  }
  const int i = static_cast<int>(s);
  return {i / n_ + 1, i % n_ + 1};
}

std::size_t RoomSpec::horizon() const {
  if (horizon_override) return *horizon_override;
  if (n < 2) throw ValidationError("room side must be at least 2");
  return static_cast<std::size_t>(2 * (n - 1) - 1);
}

Coord RoomSpec::goal_coord() const {
  switch (goal) {
    case GoalPlacement::Corner:
      return {n, n};
    case GoalPlacement::Middle:
      return n % 2 == 0 ? Coord{n / 2, n / 2} : Coord{(n + 1) / 2, (n + 1) / 2};
    case GoalPlacement::Explicit:
      return explicit_goal;
  }
  return {n, n};
}

Room build_room(const RoomSpec& spec) {
  if (spec.n < 2) throw ValidationError("room side must be at least 2, got " + std::to_string(spec.n));
  GridCodec codec(spec.n);
  const Coord goal = spec.goal_coord();
  if (!codec.contains(goal)) throw ValidationError("goal " + show(goal) + " outside the room");
  if (!codec.contains(spec.start)) {
    throw ValidationError("start " + show(spec.start) + " outside the room");
  }

  const std::size_t S = codec.num_states();
  std::vector<StateId> transition(S * kGridActions);
  std::vector<double> reward(S * kGridActions, 0.0);
  for (StateId s = 0; s < S; ++s) {
    const Coord c = codec.decode(s);
    for (ActionId a = 0; a < kGridActions; ++a) {
      Coord next{c.x + kGridMoves[a].x, c.y + kGridMoves[a].y};
      if (!codec.contains(next)) next = c;
      transition[s * kGridActions + a] = codec.encode(next);
      reward[s * kGridActions + a] = next == goal ? 1.0 : 0.0;
    }
  }
  return Room{TimedDfa::time_invariant(S, kGridActions, spec.horizon(), std::move(transition),
                                       std::move(reward)),
              codec, goal, codec.encode(spec.start)};
}

std::string room_to_json(const Room& room) {
  json doc = json::parse(dfa_to_json(room.dfa));
  const Coord start = room.codec.decode(room.start);
  doc["grid"] = {{"n", room.codec.side()},
                 {"goal", {room.goal.x, room.goal.y}},
                 {"start", {start.x, start.y}}};
  return doc.dump() + "\n";
}

std::optional<GridInfo> grid_info_from_json(std::string_view text) {
  try {
    const json doc = json::parse(text);
    if (!doc.contains("grid")) return std::nullopt;
    const auto& g = doc.at("grid");
    GridInfo info{g.at("n").get<int>(), {g.at("goal").at(0).get<int>(), g.at("goal").at(1).get<int>()},
                  {1, 1}};
    if (g.contains("start")) info.start = {g.at("start").at(0).get<int>(), g.at("start").at(1).get<int>()};
    return info;
  } catch (const json::exception& e) {
    throw ParseError(std::string("grid metadata: ") + e.what());
  }
}

std::vector<Coord> trajectory_coords(const Room& room, SymbolView seq) {
  const Trajectory traj = rollout(room.dfa, room.start, seq);
  std::vector<Coord> out;
  out.reserve(traj.states.size());
  std::transform(traj.states.begin(), traj.states.end(), std::back_inserter(out),
                 [&](StateId s) { return room.codec.decode(s); });
  return out;
}

}  // namespace kplan
