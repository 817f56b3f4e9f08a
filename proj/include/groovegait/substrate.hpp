#pragma once

#include <cmath>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "groovegait/angles.hpp"
#include "groovegait/errors.hpp"

namespace groovegait {

/// Returned by WorldMap::locate when no tile covers the point.
inline constexpr int kBackground = -1;

/// Ridge pattern of a printed substrate. `angle_deg` uses the external
/// convention: positive angles steer the robot to the right.
template <typename Scalar>
struct GrooveSpec {
  Scalar angle_deg = 0;
  Scalar pitch_mm = Scalar(0.45);
  Scalar ridge_height_mm = Scalar(0.15);

  void validate(const std::string& where = "groove") const {
    if (!(pitch_mm > 0)) throw InvariantError(where + ".pitch_mm must be > 0");
    if (!(ridge_height_mm >= 0)) throw InvariantError(where + ".ridge_height_mm must be >= 0");
    if (!(angle_deg >= -90 && angle_deg <= 90))
      throw InvariantError(where + ".groove_angle_deg must lie in [-90, 90]");
  }

  /// Groove-normal direction, internal degrees. Ridge lines run perpendicular to it.
  Scalar normal_deg() const { return paper_angle_to_internal(angle_deg); }

  GrooveSpec mirrored() const { return {-angle_deg, pitch_mm, ridge_height_mm}; }
};

template <typename Scalar>
struct SubstrateTile {
  int id = 0;
  Scalar x_min_mm = 0;
  Scalar x_max_mm = 0;
  Scalar y_min_mm = 0;
  Scalar y_max_mm = 0;
  GrooveSpec<Scalar> groove;

  bool contains(const Vec2<Scalar>& p) const {
    return p.x() >= x_min_mm && p.x() <= x_max_mm && p.y() >= y_min_mm && p.y() <= y_max_mm;
  }

  Vec2<Scalar> corner() const { return {x_min_mm, y_min_mm}; }
  Scalar width() const { return x_max_mm - x_min_mm; }
  Scalar height() const { return y_max_mm - y_min_mm; }

  void validate() const {
    const std::string where = "tile " + std::to_string(id);
    if (id < 0) throw InvariantError(where + ": id must be >= 0");
    if (!(x_min_mm < x_max_mm)) throw InvariantError(where + ": x_min_mm must be < x_max_mm");
    if (!(y_min_mm < y_max_mm)) throw InvariantError(where + ": y_min_mm must be < y_max_mm");
    groove.validate(where);
  }
};

/// Terrain as an ordered list of axis-aligned tiles over a background groove.
/// Later tiles take priority where tiles overlap. Immutable once built.
template <typename Scalar>
class WorldMap {
 public:
  using Tile = SubstrateTile<Scalar>;
  using Groove = GrooveSpec<Scalar>;

  WorldMap() = default;

  explicit WorldMap(std::vector<Tile> tiles, Groove background = {})
      : tiles_(std::move(tiles)), background_(background) {
    background_.validate("background");
    std::unordered_set<int> ids;
    for (const auto& t : tiles_) {
      t.validate();
      if (!ids.insert(t.id).second)
        throw InvariantError("duplicate tile id " + std::to_string(t.id));
    }
  }

  const std::vector<Tile>& tiles() const { return tiles_; }
  const Groove& background() const { return background_; }

  /// Index into tiles() of the winning tile, or -1.
  int locate_index(const Vec2<Scalar>& p) const {
    for (int i = static_cast<int>(tiles_.size()) - 1; i >= 0; --i)
      if (tiles_[i].contains(p)) return i;
    return -1;
  }

  /// Id of the highest-priority tile whose closed rectangle holds `p`, else kBackground.
  int locate(const Vec2<Scalar>& p) const {
    const int i = locate_index(p);
    return i < 0 ? kBackground : tiles_[i].id;
  }

  const Groove& groove_at(const Vec2<Scalar>& p) const {
    const int i = locate_index(p);
    return i < 0 ? background_ : tiles_[i].groove;
  }

 private:
  std::vector<Tile> tiles_;
  Groove background_;
};

/// Signed angle (internal degrees) from `heading_deg` to the groove-normal
/// axis, folded to (-90, 90]. The normal is an axis, so its sign is irrelevant.
template <typename Scalar>
Scalar groove_relative_angle(const GrooveSpec<Scalar>& groove, Scalar heading_deg) {
  Scalar delta = wrap_deg(groove.normal_deg() - heading_deg);
  if (delta > Scalar(90))
    delta -= Scalar(180);
  else if (delta <= Scalar(-90))
    delta += Scalar(180);
  return delta;
}

/// Moves `p` along the groove normal onto the nearest ridge-boundary line
/// (normal distance from `origin` an integer multiple of the pitch). Half-pitch
/// ties go to the lower-index line.
template <typename Scalar>
Vec2<Scalar> snap_to_ridge_lines(const GrooveSpec<Scalar>& groove, const Vec2<Scalar>& origin,
                                 const Vec2<Scalar>& p) {
  using std::ceil;
  const Vec2<Scalar> n = unit_deg(groove.normal_deg());
  const Scalar s = n.dot(p - origin);
  const Scalar index = ceil(s / groove.pitch_mm - Scalar(0.5));
  return p - (s - index * groove.pitch_mm) * n;
}

template <typename Scalar>
Vec2<Scalar> snap_to_ridge(const SubstrateTile<Scalar>& tile, const Vec2<Scalar>& p) {
  if (!tile.contains(p))
    throw InvalidQuery("snap_to_ridge: point outside tile " + std::to_string(tile.id));
  return snap_to_ridge_lines(tile.groove, tile.corner(), p);
}

using Groove = GrooveSpec<double>;
using Tile = SubstrateTile<double>;
using World = WorldMap<double>;

}  // namespace groovegait
