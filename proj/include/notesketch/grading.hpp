#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "notesketch/symbolic.hpp"

namespace notesketch {

enum class Criterion { Staff, Clef, KeySignature, TimeSignature, Duration, Measure };

inline constexpr std::array<Criterion, 6> kCriteria = {
    Criterion::Staff,         Criterion::Clef,     Criterion::KeySignature,
    Criterion::TimeSignature, Criterion::Duration, Criterion::Measure};

// "staff", "clef", "keySignature", "timeSignature", "duration", "measure".
std::string_view to_string(Criterion criterion);
std::optional<Criterion> parse_criterion(std::string_view text);

struct CriteriaFlags {
  bool staff = true;
  bool clef = true;
  bool keySignature = true;
  bool timeSignature = true;
  bool duration = true;
  bool measure = true;

  bool enabled(Criterion c) const;
  void set(Criterion c, bool on);
  bool any() const;
  // Bit i is criterion kCriteria[i].
  unsigned mask() const;
  static CriteriaFlags from_mask(unsigned mask);

  friend bool operator==(const CriteriaFlags&, const CriteriaFlags&) = default;
};

struct CriterionResult {
  Criterion criterion = Criterion::Staff;
  bool passed = false;
  std::string detail;   // empty when passed

  friend bool operator==(const CriterionResult&, const CriterionResult&) = default;
};

struct Progress {
  int correct = 0;
  int incorrect = 0;
  int inProgress = 0;

  friend bool operator==(const Progress&, const Progress&) = default;
};

struct Feedback {
  bool correct = false;
  std::vector<CriterionResult> results;   // enabled criteria, in kCriteria order
  Progress progress;

  friend bool operator==(const Feedback&, const Feedback&) = default;
};

// Compares the drawn scene with the answer key on one criterion. Throws
// MissingAnswerData when the answer lacks what the criterion compares.
CriterionResult check_criterion(const SymbolicScene& scene, const SymbolicScene& answer,
                                Criterion criterion);

// All enabled criteria; progress is left zero. Throws AllFlagsDisabled when
// nothing is enabled.
Feedback evaluate(const SymbolicScene& scene, const SymbolicScene& answer,
                  const CriteriaFlags& flags);

enum class Mode { Practice, Quiz };
std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

enum class QuestionStatus { InProgress, Correct, Incorrect };
std::string_view to_string(QuestionStatus status);

// Per-question status of one sitting. Every question starts in progress.
class ProgressTracker {
 public:
  ProgressTracker(Mode mode, std::vector<int> questionNumbers);

  Mode mode() const { return mode_; }
  QuestionStatus status(int number) const;
  bool checked(int number) const;
  bool all_checked() const;
  Progress counts() const;
  // Throws QuizLocked for a second check of a quiz question, UnknownQuestion
  // for a number outside the sitting.
  void record(int number, bool correct);

 private:
  std::size_t index_of(int number) const;

  Mode mode_;
  std::vector<int> numbers_;
  std::vector<QuestionStatus> status_;
};

// Grades and records the outcome; the returned progress includes it.
Feedback grade(const SymbolicScene& scene, const SymbolicScene& answer, const CriteriaFlags& flags,
               int questionNumber, ProgressTracker& progress);

struct ReportEntry {
  int questionNumber = 0;
  std::string text;
  bool correct = false;
  std::string solutionImageRef;

  friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

struct QuizReport {
  int scorePercent = 0;
  std::vector<ReportEntry> perQuestion;   // question-number order

  friend bool operator==(const QuizReport&, const QuizReport&) = default;
};

// 100 * correct / total, rounded half up.
int score_percent(int correct, int total);

struct QuestionInfo {
  int number = 0;
  std::string text;
  std::string imageRef;
};

// Throws NotApplicable outside quiz mode and QuizIncomplete while any
// question is unchecked.
QuizReport build_report(const ProgressTracker& progress, const std::vector<QuestionInfo>& questions);

}  // namespace notesketch
