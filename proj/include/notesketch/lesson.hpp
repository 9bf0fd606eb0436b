#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "notesketch/error.hpp"
#include "notesketch/grading.hpp"
#include "notesketch/symbolic.hpp"

namespace notesketch {

struct Question {
  int number = 0;
  std::string text;
  std::optional<std::string> hint;
  std::string answerRef;                 // relative to the lesson file
  std::optional<std::string> imageRef;   // relative to the lesson file
  CriteriaFlags flags;
  SymbolicScene answer;                  // loaded from answerRef

  friend bool operator==(const Question&, const Question&) = default;
};

struct Lesson {
  std::string title;
  bool practice = true;
  bool quiz = true;
  std::vector<Question> questions;       // numbered 1..N in order
  std::filesystem::path baseDir;         // where refs resolve; not part of equality

  const Question& question(int number) const;   // throws UnknownQuestion
  friend bool operator==(const Lesson& a, const Lesson& b) {
    return a.title == b.title && a.practice == b.practice && a.quiz == b.quiz &&
           a.questions == b.questions;
  }
};

// Parses and validates a lesson document. Questions are sorted by number and
// renumbered 1..N; answer documents are loaded and images must exist.
// Throws MalformedLesson (with the field path), MissingAnswer, MissingImage,
// DuplicateNumber, AllFlagsDisabled.
Lesson load_lesson(const std::filesystem::path& path);
Lesson parse_lesson(const std::string& text, const std::filesystem::path& baseDir);
std::string lesson_to_json(const Lesson& lesson);
void save_lesson(const Lesson& lesson, const std::filesystem::path& path);

// Moves question `from` to slot `to`; the others shift to keep 1..N.
// Throws UnknownQuestion and OutOfRange.
Lesson renumber(const Lesson& lesson, int from, int to);
// Throws UnknownQuestion and AllFlagsDisabled.
Lesson set_criteria(const Lesson& lesson, int number, const CriteriaFlags& flags);

struct Finding {
  ErrorCode code;
  std::string message;
};

// Loads the lesson and reports what is wrong with it: the load failure if
// any, otherwise enabled criteria the answer keys cannot support.
std::vector<Finding> validate_lesson(const std::filesystem::path& path);

struct CatalogEntry {
  std::string id;     // file stem
  Lesson lesson;
};

// Every *.json lesson in a directory, sorted by id. A lesson that fails to
// load is an error naming its file.
std::vector<CatalogEntry> load_catalog(const std::filesystem::path& dir);

}  // namespace notesketch
