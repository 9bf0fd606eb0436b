#include "notesketch/error.hpp"

namespace notesketch {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateStroke: return "DegenerateStroke";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::EmptyLibrary: return "EmptyLibrary";
    case ErrorCode::MalformedSketch: return "MalformedSketch";
    case ErrorCode::DuplicateStroke: return "DuplicateStroke";
    case ErrorCode::WrongLineCount: return "WrongLineCount";
    case ErrorCode::OverlappingLines: return "OverlappingLines";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::MissingAnswerData: return "MissingAnswerData";
    case ErrorCode::QuizIncomplete: return "QuizIncomplete";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::MalformedLesson: return "MalformedLesson";
    case ErrorCode::MissingAnswer: return "MissingAnswer";
    case ErrorCode::MissingImage: return "MissingImage";
    case ErrorCode::DuplicateNumber: return "DuplicateNumber";
    case ErrorCode::UnknownQuestion: return "UnknownQuestion";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AllFlagsDisabled: return "AllFlagsDisabled";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::UnknownLesson: return "UnknownLesson";
    case ErrorCode::IllegalNavigation: return "IllegalNavigation";
    case ErrorCode::QuizLocked: return "QuizLocked";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::MalformedConfig: return "MalformedConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace notesketch
