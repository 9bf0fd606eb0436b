#include "notesketch/staff.hpp"

#include <algorithm>
#include <cfenv>
#include <cmath>
#include <limits>
#include <vector>

#include "notesketch/error.hpp"

namespace notesketch {

std::map<int, double> StaffModel::positions(int below, int above) const {
  std::map<int, double> out;
  for (int p = -below; p <= above; ++p) out.emplace(p, position_y(p));
  return out;
}

std::optional<StaffLineCandidate> classify_staff_line(const Stroke& stroke, double canvasWidth,
                                                      const RecognitionConfig& config) {
  if (stroke.points.size() < 2 || canvasWidth <= 0.0) return std::nullopt;
  const double length = path_length(stroke);
  if (length <= 0.0) return std::nullopt;

  const Point& a = stroke.points.front();
  const Point& b = stroke.points.back();
  const BoundingBox box = bounding_box(stroke.points);

  StaffLineCandidate c;
  c.strokeId = stroke.id;
  c.straightness = straightness(stroke.points);
  c.widthCoverage = box.width() / canvasWidth;
  const double dx = std::abs(b.x - a.x);
  c.slope = dx > 0.0 ? std::abs(b.y - a.y) / dx : std::numeric_limits<double>::infinity();
  c.minX = box.minX;
  c.maxX = box.maxX;

  // Arc-length weighted mean so dense sampling in one part does not bias it.
  const PointSet even = resample(stroke, 64);
  double sum = 0.0;
  for (const Point& p : even) sum += p.y;
  c.meanY = sum / static_cast<double>(even.size());

  if (c.straightness < config.staffStraightness) return std::nullopt;
  if (c.widthCoverage < config.staffWidthCoverage) return std::nullopt;
  if (!(c.slope < config.staffMaxSlope)) return std::nullopt;
  return c;
}

StaffModel assemble_staff(std::span<const StaffLineCandidate> lines,
                          const RecognitionConfig& config) {
  if (lines.size() != 5) {
    throw Error(ErrorCode::WrongLineCount,
                "a staff needs 5 lines, got " + std::to_string(lines.size()));
  }
  std::vector<StaffLineCandidate> sorted(lines.begin(), lines.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& l, const auto& r) { return l.meanY < r.meanY; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].meanY - sorted[i - 1].meanY <= config.staffMinSeparation) {
      throw Error(ErrorCode::OverlappingLines, "staff lines " + std::to_string(sorted[i - 1].strokeId) +
                                                   " and " + std::to_string(sorted[i].strokeId) +
                                                   " overlap");
    }
  }

  StaffModel staff;
  const double top = sorted.front().meanY;
  const double bottom = sorted.back().meanY;
  staff.step = (bottom - top) / 4.0;
  for (int i = 0; i < 5; ++i) staff.lineYs[i] = top + staff.step * i;
  staff.lineYs[4] = bottom;
  staff.left = std::numeric_limits<double>::infinity();
  staff.right = -std::numeric_limits<double>::infinity();
  for (const auto& l : sorted) {
    staff.left = std::min(staff.left, l.minX);
    staff.right = std::max(staff.right, l.maxX);
  }
  return staff;
}

int snap_position(double y, const StaffModel& staff) {
  const double halfSteps = (staff.bottom() - y) / (staff.step / 2.0);
  // nearbyint honours the current rounding mode; force ties-to-even.
  const int previous = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double r = std::nearbyint(halfSteps);
  std::fesetround(previous);
  return static_cast<int>(r);
}

}  // namespace notesketch
