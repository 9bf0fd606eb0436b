#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace notesketch {

enum class ErrorCode {
  DegenerateStroke,
  EmptySet,
  EmptyLibrary,
  MalformedSketch,
  DuplicateStroke,
  WrongLineCount,
  OverlappingLines,
  NothingToUndo,
  MalformedDocument,
  MissingAnswerData,
  QuizIncomplete,
  NotApplicable,
  MalformedLesson,
  MissingAnswer,
  MissingImage,
  DuplicateNumber,
  UnknownQuestion,
  OutOfRange,
  AllFlagsDisabled,
  UnknownSession,
  UnknownLesson,
  IllegalNavigation,
  QuizLocked,
  EmptyCorpus,
  MalformedConfig,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure the engine reports carries one of the codes above; the
// message holds the specifics (field path, question number, line, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace notesketch
