#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>

#include "notesketch/config.hpp"
#include "notesketch/geometry.hpp"

namespace notesketch {

struct StaffLineCandidate {
  int strokeId = 0;
  double meanY = 0.0;
  double straightness = 0.0;
  double widthCoverage = 0.0;
  double slope = 0.0;
  double minX = 0.0;
  double maxX = 0.0;

  friend bool operator==(const StaffLineCandidate&, const StaffLineCandidate&) = default;
};

// Position indices count half-steps upward from the bottom line: lines are
// even (0..8), spaces odd, ledger territory beyond either end.
struct StaffModel {
  std::array<double, 5> lineYs{};   // top to bottom, evenly spaced
  double step = 0.0;
  double left = 0.0;
  double right = 0.0;

  double top() const { return lineYs.front(); }
  double bottom() const { return lineYs.back(); }
  double middle() const { return lineYs[2]; }
  double position_y(int position) const { return bottom() - position * step / 2.0; }
  std::map<int, double> positions(int below = 8, int above = 16) const;

  friend bool operator==(const StaffModel&, const StaffModel&) = default;
};

inline constexpr int kTopLinePosition = 8;

std::optional<StaffLineCandidate> classify_staff_line(const Stroke& stroke, double canvasWidth,
                                                      const RecognitionConfig& config = {});

// Keeps the outer lines, spaces the inner three evenly. Throws WrongLineCount
// unless given exactly five candidates, OverlappingLines when two means are
// within the configured separation.
StaffModel assemble_staff(std::span<const StaffLineCandidate> lines,
                          const RecognitionConfig& config = {});

// round((bottom - y) / (step / 2)), halves resolved toward the even (line)
// position.
int snap_position(double y, const StaffModel& staff);

}  // namespace notesketch
