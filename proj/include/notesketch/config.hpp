#pragma once

#include <filesystem>
#include <string>

namespace notesketch {

// Every recognition threshold in one place. Lengths marked "steps" are
// multiples of the staff step value; ratios are unitless.
struct RecognitionConfig {
  // Matching check.
  double scoreThreshold = 0.85;      // similarity score must exceed this
  double maxMatchDistance = 35.0;    // normalized Hausdorff ceiling (250-px box)

  // Staff lines.
  double staffStraightness = 0.95;
  double staffWidthCoverage = 0.95;
  double staffMaxSlope = 0.05;
  double staffMinSeparation = 2.0;   // pixels between line means

  // Clefs.
  double bassMaxHeight = 4.0;        // steps
  double trebleMinHeight = 4.0;
  double trebleMaxHeight = 8.0;

  // Key-signature accidentals and note accidentals.
  double accidentalMinHeight = 1.0;
  double accidentalMaxHeight = 3.0;
  double keyMaxGap = 3.0;            // steps from the clef or previous key accidental
  double flatAnchor = 0.7;           // fraction of a flat's height where its bowl sits

  // Time-signature digits.
  double digitMinHeight = 1.5;
  double digitMaxHeight = 2.5;
  double digitAlignment = 0.5;       // horizontal centre tolerance for fusion
  double timeSignatureMinSpan = 3.0;
  double digitHalfTolerance = 1.0;   // centre distance from a staff half's middle

  // Rests.
  double restMinHeight = 1.2;
  double restMaxHeight = 4.0;
  double restCenterTolerance = 1.0;
  double blockRestMinWidth = 0.8;
  double blockRestMaxWidth = 2.0;
  double blockRestMaxHeight = 0.9;
  double fillContainment = 0.8;
  double containmentMargin = 0.15;   // steps added around an outline
  int strawWindow = 3;
  double strawThreshold = 0.95;
  double segmentStraightness = 0.9;

  // Note heads.
  double circumferenceTolerance = 0.25;
  double headMinAspect = 0.7;
  double headClosure = 0.2;          // endpoint gap as a fraction of path length
  double headMinHeight = 0.6;
  double headMaxHeight = 1.4;
  double blobMinInk = 1.6;           // path length over circumference for a filled blob
  double blobMinAspect = 0.6;        // a scribbled blob is rounded less evenly

  // Measure bars.
  double barStraightness = 0.95;
  double barMaxSlant = 0.05;
  double barSpanSlack = 0.5;
  double doubleBarGap = 0.5;

  // Note components.
  double attachDistance = 0.5;
  double componentStraightness = 0.95;
  double stemMaxSlant = 0.1;
  double stemMinLength = 2.5;
  double stemMaxLength = 4.5;
  double ledgerMaxSlope = 0.2;
  double ledgerStraightness = 0.9;
  double ledgerMinLength = 1.0;
  double ledgerMaxLength = 2.5;
  double ledgerSnap = 0.25;
  double beamEndDistance = 0.5;
  int dotMaxPoints = 2;
  double dotMaxDiagonal = 0.25;
  double flagSlack = 0.05;
  double flagMinSlope = 0.1;
  double flagMaxSlope = 10.0;
  double flagMinHeight = 1.0;
  double flagMaxHeight = 3.0;
  double accidentalMaxGap = 1.5;

  // Pipeline.
  int maxCombination = 3;
  int pendingCap = 12;
  double cascadeRadius = 3.0;        // steps around a new symbol to re-examine pendings

  friend bool operator==(const RecognitionConfig&, const RecognitionConfig&) = default;
};

// Reads a JSON object whose keys are field names above; missing keys keep
// their defaults, unknown keys are rejected (MalformedConfig).
RecognitionConfig load_config(const std::filesystem::path& path);
RecognitionConfig config_from_json_text(const std::string& text);

// Defaults, overridden by the file named in NOTESKETCH_CONFIG when set.
RecognitionConfig config_from_environment();

}  // namespace notesketch
