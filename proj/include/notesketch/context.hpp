#pragma once

#include <optional>
#include <vector>

#include "notesketch/geometry.hpp"
#include "notesketch/staff.hpp"
#include "notesketch/symbols.hpp"

namespace notesketch {

struct HeadInfo {
  int id = 0;
  BoundingBox bbox;
  int position = 0;
  bool filled = false;
  bool hasStem = false;
};

struct StemInfo {
  int id = 0;
  int headId = 0;
  Point base;      // end touching the head
  Point freeEnd;
  int flags = 0;
  int beams = 0;
};

// Read-only view of what the scene already holds, consulted by definition
// checks and attachment rules. Built fresh by the pipeline for every
// classification round.
struct RecognitionContext {
  StaffModel staff;
  std::optional<Glyph> clef;
  std::vector<Glyph> keyAccidentals;
  std::vector<Glyph> pendingDigits;   // digits not yet fused
  std::vector<Glyph> digits;          // every digit glyph, fused or not
  bool hasTimeSignature = false;
  std::vector<Glyph> bars;
  std::vector<Glyph> rests;
  std::vector<HeadInfo> heads;
  std::vector<StemInfo> stems;
  std::vector<NoteComponent> components;

  // Leftmost x of anything that must follow the clef/key/time block.
  std::optional<double> first_body_x() const;
  const HeadInfo* head(int id) const;
};

}  // namespace notesketch
