#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kplan/automaton.hpp"

namespace kplan {

struct Coord {
  int x = 1;
  int y = 1;
  friend bool operator==(const Coord&, const Coord&) = default;
};

/// Fixed action order; digit i in a sequence string is action i.
enum GridAction : ActionId { kRight = 0, kLeft = 1, kDown = 2, kUp = 3, kStay = 4 };
inline constexpr std::size_t kGridActions = 5;
inline constexpr std::array<Coord, kGridActions> kGridMoves{
    {{+1, 0}, {-1, 0}, {0, +1}, {0, -1}, {0, 0}}};

/// Row-major (x-1)*n + (y-1) codec for an n x n room with coordinates in [1, n].
class GridCodec {
 public:
  explicit GridCodec(int n);

  int side() const noexcept { return n_; }
  std::size_t num_states() const noexcept { return static_cast<std::size_t>(n_) * n_; }
  bool contains(Coord c) const noexcept { return c.x >= 1 && c.x <= n_ && c.y >= 1 && c.y <= n_; }

  /// Throws ContractViolation when out of range.
  StateId encode(Coord c) const;
  Coord decode(StateId s) const;

 private:
  int n_;
};

enum class GoalPlacement { Corner, Middle, Explicit };

struct RoomSpec {
  int n = 10;
  GoalPlacement goal = GoalPlacement::Corner;
  Coord explicit_goal{};
  std::optional<std::size_t> horizon_override;
  Coord start{1, 1};

  /// 2(n-1)-1 unless overridden.
  std::size_t horizon() const;
  Coord goal_coord() const;
};

struct Room {
  TimedDfa dfa;
  GridCodec codec;
  Coord goal;
  StateId start;
};

/// Clipped moves, reward 1 on every transition whose successor is the goal
/// (including staying on it), 0 otherwise. Time-invariant tables.
/// Throws ValidationError on n < 2 or a goal/start outside the room.
Room build_room(const RoomSpec& spec);

/// dfa_to_json() plus a "grid": {"n", "goal": [x, y], "start": [x, y]} member
/// that plain automaton importers ignore.
std::string room_to_json(const Room& room);

struct GridInfo {
  int n;
  Coord goal;
  Coord start;
};

/// Reads the "grid" member written by room_to_json, if any.
std::optional<GridInfo> grid_info_from_json(std::string_view text);

/// Coordinates s_0..s_{T+1} visited by `seq` from the room start.
std::vector<Coord> trajectory_coords(const Room& room, SymbolView seq);

}  // namespace kplan
