#include "notesketch/lesson.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "notesketch/error.hpp"
#include "notesketch/sketch_io.hpp"

namespace notesketch {

namespace fs = std::filesystem;
using nlohmann::json;

const Question& Lesson::question(int number) const {
  for (const Question& q : questions) {
    if (q.number == number) return q;
  }
  throw Error(ErrorCode::UnknownQuestion, "no question " + std::to_string(number));
}

namespace {

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::MalformedLesson, path + ": " + what);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; })) {
      malformed(path + "." + it.key(), "unknown field");
    }
  }
}

const json& field(const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(path + "." + key, "missing");
  return *it;
}

std::string string_field(const json& obj, const std::string& path, const char* key) {
  const json& v = field(obj, path, key);
  if (!v.is_string()) malformed(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const std::string& path,
                                           const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) malformed(path + "." + key, "expected a string");
  return it->get<std::string>();
}

CriteriaFlags parse_flags(const json& v, const std::string& path) {
  if (!v.is_object()) malformed(path, "expected an object of criterion flags");
  CriteriaFlags f = CriteriaFlags::from_mask(0);
  for (auto it = v.begin(); it != v.end(); ++it) {
    auto c = parse_criterion(it.key());
    if (!c) malformed(path + "." + it.key(), "unknown criterion");
    if (!it->is_boolean()) malformed(path + "." + it.key(), "expected true or false");
    f.set(*c, it->get<bool>());
  }
  return f;
}

Question parse_question(const json& v, const std::string& path, const fs::path& baseDir) {
  if (!v.is_object()) malformed(path, "expected an object");
  only_keys(v, path, {"number", "text", "hint", "answer", "image", "criteria"});
  Question q;
  const json& number = field(v, path, "number");
  if (!number.is_number_integer() || number.get<long long>() < 1) {
    malformed(path + ".number", "expected a positive integer");
  }
  q.number = number.get<int>();
  q.text = string_field(v, path, "text");
  q.hint = optional_string(v, path, "hint");
  q.answerRef = string_field(v, path, "answer");
  q.imageRef = optional_string(v, path, "image");
  q.flags = parse_flags(field(v, path, "criteria"), path + ".criteria");
  if (!q.flags.any()) {
    throw Error(ErrorCode::AllFlagsDisabled, path + ".criteria: no criteria enabled");
  }

  const fs::path answer = baseDir / q.answerRef;
  if (!fs::is_regular_file(answer)) {
    throw Error(ErrorCode::MissingAnswer, "question " + std::to_string(q.number) +
                                              ": answer file not found: " + answer.string());
  }
  try {
    q.answer = load_scene_document(answer);
  } catch (const Error& e) {
    malformed(path + ".answer", e.what());
  }
  if (q.imageRef && !fs::is_regular_file(baseDir / *q.imageRef)) {
    throw Error(ErrorCode::MissingImage, "question " + std::to_string(q.number) +
                                             ": image file not found: " +
                                             (baseDir / *q.imageRef).string());
  }
  return q;
}

void renumber_in_order(std::vector<Question>& questions) {
  for (std::size_t i = 0; i < questions.size(); ++i) questions[i].number = static_cast<int>(i) + 1;
}

}  // namespace

Lesson parse_lesson(const std::string& text, const fs::path& baseDir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    malformed("lesson", e.what());
  }
  if (!doc.is_object()) malformed("lesson", "expected an object");
  only_keys(doc, "lesson", {"format", "version", "title", "modes", "questions"});
  if (string_field(doc, "lesson", "format") != "notesketch-lesson") {
    malformed("lesson.format", "expected \"notesketch-lesson\"");
  }
  const json& version = field(doc, "lesson", "version");
  if (!version.is_number_integer() || version.get<int>() != 1) {
    malformed("lesson.version", "unsupported version");
  }

  Lesson lesson;
  lesson.baseDir = baseDir;
  lesson.title = string_field(doc, "lesson", "title");
  if (auto it = doc.find("modes"); it != doc.end()) {
    if (!it->is_object()) malformed("lesson.modes", "expected an object");
    only_keys(*it, "lesson.modes", {"practice", "quiz"});
    for (const char* key : {"practice", "quiz"}) {
      if (!it->contains(key)) continue;
      if (!(*it)[key].is_boolean()) malformed(std::string("lesson.modes.") + key, "expected true or false");
    }
    lesson.practice = it->value("practice", true);
    lesson.quiz = it->value("quiz", true);
  }
  if (!lesson.practice && !lesson.quiz) malformed("lesson.modes", "no mode enabled");

  const json& questions = field(doc, "lesson", "questions");
  if (!questions.is_array() || questions.empty()) {
    malformed("lesson.questions", "expected a nonempty array");
  }
  std::set<int> seen;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    Question q = parse_question(questions[i], "lesson.questions[" + std::to_string(i) + "]", baseDir);
    if (!seen.insert(q.number).second) {
      throw Error(ErrorCode::DuplicateNumber,
                  "question number " + std::to_string(q.number) + " appears more than once");
    }
    lesson.questions.push_back(std::move(q));
  }
  std::stable_sort(lesson.questions.begin(), lesson.questions.end(),
                   [](const Question& a, const Question& b) { return a.number < b.number; });
  renumber_in_order(lesson.questions);
  return lesson;
}

Lesson load_lesson(const fs::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const Error& e) {
    throw Error(ErrorCode::MalformedLesson, e.what());
  }
  return parse_lesson(text, path.parent_path());
}

std::string lesson_to_json(const Lesson& lesson) {
  json doc;
  doc["format"] = "notesketch-lesson";
  doc["version"] = 1;
  doc["title"] = lesson.title;
  doc["modes"] = {{"practice", lesson.practice}, {"quiz", lesson.quiz}};
  json questions = json::array();
  for (const Question& q : lesson.questions) {
    json jq;
    jq["number"] = q.number;
    jq["text"] = q.text;
    if (q.hint) jq["hint"] = *q.hint;
    jq["answer"] = q.answerRef;
    if (q.imageRef) jq["image"] = *q.imageRef;
    json flags = json::object();
    for (Criterion c : kCriteria) flags[std::string(to_string(c))] = q.flags.enabled(c);
    jq["criteria"] = flags;
    questions.push_back(jq);
  }
  doc["questions"] = questions;
  return doc.dump(2) + "\n";
}

void save_lesson(const Lesson& lesson, const fs::path& path) {
  write_text_file(path, lesson_to_json(lesson));
}

Lesson renumber(const Lesson& lesson, int from, int to) {
  auto it = std::find_if(lesson.questions.begin(), lesson.questions.end(),
                         [from](const Question& q) { return q.number == from; });
  if (it == lesson.questions.end()) {
    throw Error(ErrorCode::UnknownQuestion, "no question " + std::to_string(from));
  }
  const int n = static_cast<int>(lesson.questions.size());
  if (to < 1 || to > n) {
    throw Error(ErrorCode::OutOfRange,
                "target " + std::to_string(to) + " outside 1.." + std::to_string(n));
  }
  Lesson out = lesson;
  const std::size_t src = static_cast<std::size_t>(it - lesson.questions.begin());
  Question moved = out.questions[src];
  out.questions.erase(out.questions.begin() + static_cast<long>(src));
  out.questions.insert(out.questions.begin() + (to - 1), std::move(moved));
  renumber_in_order(out.questions);
  return out;
}

Lesson set_criteria(const Lesson& lesson, int number, const CriteriaFlags& flags) {
  lesson.question(number);
  if (!flags.any()) {
    throw Error(ErrorCode::AllFlagsDisabled,
                "question " + std::to_string(number) + ": no criteria enabled");
  }
  Lesson out = lesson;
  for (Question& q : out.questions) {
    if (q.number == number) q.flags = flags;
  }
  return out;
}

std::vector<Finding> validate_lesson(const fs::path& path) {
  Lesson lesson;
  try {
    lesson = load_lesson(path);
  } catch (const Error& e) {
    return {{e.code(), e.what()}};
  }
  std::vector<Finding> findings;
  for (const Question& q : lesson.questions) {
    for (Criterion c : kCriteria) {
      if (!q.flags.enabled(c)) continue;
      try {
        check_criterion(q.answer, q.answer, c);
      } catch (const Error& e) {
        findings.push_back({e.code(), "question " + std::to_string(q.number) + ": " + e.what()});
      }
    }
  }
  return findings;
}

std::vector<CatalogEntry> load_catalog(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::IoError, "lesson directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> out;
  for (const fs::path& f : files) {
    try {
      out.push_back({f.stem().string(), load_lesson(f)});
    } catch (const Error& e) {
      throw Error(e.code(), f.filename().string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace notesketch
