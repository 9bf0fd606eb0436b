#include "notesketch/grading.hpp"

#include <algorithm>
#include <cmath>

#include "notesketch/error.hpp"

namespace notesketch {

std::string_view to_string(Criterion criterion) {
  switch (criterion) {
    case Criterion::Staff: return "staff";
    case Criterion::Clef: return "clef";
    case Criterion::KeySignature: return "keySignature";
    case Criterion::TimeSignature: return "timeSignature";
    case Criterion::Duration: return "duration";
    case Criterion::Measure: return "measure";
  }
  return "?";
}

std::optional<Criterion> parse_criterion(std::string_view text) {
  for (Criterion c : kCriteria) {
    if (to_string(c) == text) return c;
  }
  return std::nullopt;
}

bool CriteriaFlags::enabled(Criterion c) const {
  switch (c) {
    case Criterion::Staff: return staff;
    case Criterion::Clef: return clef;
    case Criterion::KeySignature: return keySignature;
    case Criterion::TimeSignature: return timeSignature;
    case Criterion::Duration: return duration;
    case Criterion::Measure: return measure;
  }
  return false;
}

void CriteriaFlags::set(Criterion c, bool on) {
  switch (c) {
    case Criterion::Staff: staff = on; break;
    case Criterion::Clef: clef = on; break;
    case Criterion::KeySignature: keySignature = on; break;
    case Criterion::TimeSignature: timeSignature = on; break;
    case Criterion::Duration: duration = on; break;
    case Criterion::Measure: measure = on; break;
  }
}

bool CriteriaFlags::any() const { return mask() != 0; }

unsigned CriteriaFlags::mask() const {
  unsigned m = 0;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    if (enabled(kCriteria[i])) m |= 1u << i;
  }
  return m;
}

CriteriaFlags CriteriaFlags::from_mask(unsigned mask) {
  CriteriaFlags f;
  for (std::size_t i = 0; i < kCriteria.size(); ++i) f.set(kCriteria[i], (mask >> i) & 1u);
  return f;
}

namespace {

std::string beats_text(double beats) {
  return format_number(beats) + (beats == 1.0 ? " beat" : " beats");
}

std::string pitch_text(const Element& note) {
  std::string p = note.pitch.empty() ? "position " + std::to_string(note.position) : note.pitch;
  if (note.accidental && !note.pitch.empty()) {
    p.insert(1, *note.accidental == Accidental::Sharp ? "#" : "b");
  } else if (note.accidental) {
    p += *note.accidental == Accidental::Sharp ? " sharp" : " flat";
  }
  return p;
}

std::string element_text(const Element& e) {
  switch (e.kind) {
    case ElementKind::Note:
      return pitch_text(e) + " (" +
             (e.durationBeats ? beats_text(*e.durationBeats) : "no valid duration") + ")";
    case ElementKind::Rest: return std::string(to_string(e.rest)) + " rest";
    case ElementKind::Bar: return std::string(to_string(e.bar)) + " bar";
  }
  return "?";
}

std::string clef_text(const std::optional<Clef>& clef) {
  return clef ? std::string(to_string(*clef)) + " clef" : "no clef";
}

std::string key_text(const KeyAccidental& k) {
  return std::string(to_string(k.accidental)) + " at position " + std::to_string(k.position);
}

std::string time_text(const std::optional<SymbolicTime>& t) {
  return t ? std::to_string(t->numerator) + "/" + std::to_string(t->denominator) + " time"
           : "no time signature";
}

std::vector<const Element*> body(const SymbolicScene& s) {
  std::vector<const Element*> out;
  for (const Element& e : s.elements) {
    if (e.kind != ElementKind::Bar) out.push_back(&e);
  }
  return out;
}

std::vector<const Element*> bars(const SymbolicScene& s) {
  std::vector<const Element*> out;
  for (const Element& e : s.elements) {
    if (e.kind == ElementKind::Bar) out.push_back(&e);
  }
  return out;
}

bool same_element(const Element& a, const Element& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == ElementKind::Rest) return a.rest == b.rest;
  return a.pitch == b.pitch && a.position == b.position && a.accidental == b.accidental &&
         a.durationBeats == b.durationBeats;
}

CriterionResult pass(Criterion c) { return {c, true, ""}; }
CriterionResult fail(Criterion c, std::string detail) { return {c, false, std::move(detail)}; }

void require(bool present, Criterion c, std::string_view what) {
  if (!present) {
    throw Error(ErrorCode::MissingAnswerData,
                std::string(to_string(c)) + " check needs " + std::string(what) + " in the answer");
  }
}

CriterionResult check_key(const SymbolicScene& scene, const SymbolicScene& answer) {
  const auto& want = answer.key;
  const auto& got = scene.key;
  const std::size_t n = std::max(want.size(), got.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i < want.size() && i < got.size() && want[i] == got[i]) continue;
    std::string d = "key accidental " + std::to_string(i + 1) + ": expected ";
    d += i < want.size() ? key_text(want[i]) : "nothing";
    d += ", found ";
    d += i < got.size() ? key_text(got[i]) : "nothing";
    return fail(Criterion::KeySignature, d);
  }
  return pass(Criterion::KeySignature);
}

CriterionResult check_duration(const SymbolicScene& scene, const SymbolicScene& answer) {
  const auto want = body(answer);
  const auto got = body(scene);
  const std::size_t n = std::max(want.size(), got.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i < want.size() && i < got.size() && same_element(*want[i], *got[i])) continue;
    const Element* ref = i < want.size() ? want[i] : got[i];
    std::string d = ref->kind == ElementKind::Rest ? "rest " : "note ";
    d += std::to_string(i + 1) + ": expected ";
    d += i < want.size() ? element_text(*want[i]) : "nothing";
    d += ", found ";
    d += i < got.size() ? element_text(*got[i]) : "nothing";
    return fail(Criterion::Duration, d);
  }
  return pass(Criterion::Duration);
}

// Without a meter in the answer only the bar lines are compared.
CriterionResult check_measure(const SymbolicScene& scene, const SymbolicScene& answer) {
  const SymbolicTime time = answer.time.value_or(SymbolicTime{});
  // Beat totals are kept in quarter notes; feedback counts the meter's unit.
  const double unit = 4.0 / time.denominator;
  for (const SymbolicMeasure& m : answer.time ? measures_of(scene) : std::vector<SymbolicMeasure>{}) {
    for (std::size_t idx : m.elements) {
      const Element& e = scene.elements[idx];
      if (e.kind == ElementKind::Note && !e.durationBeats) {
        return fail(Criterion::Measure, "measure " + std::to_string(m.index) +
                                            " has a note with no valid duration");
      }
    }
    const double counted = m.beats / unit;
    if (std::abs(counted - time.numerator) > 1e-9) {
      return fail(Criterion::Measure, "measure " + std::to_string(m.index) + " has " +
                                          format_number(counted) + " beats, expected " +
                                          std::to_string(time.numerator));
    }
  }
  const auto want = bars(answer);
  const auto got = bars(scene);
  if (want.size() != got.size()) {
    return fail(Criterion::Measure, "expected " + std::to_string(want.size()) + " bar lines, found " +
                                        std::to_string(got.size()));
  }
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (want[i]->bar != got[i]->bar) {
      return fail(Criterion::Measure, "bar line " + std::to_string(i + 1) + ": expected " +
                                          element_text(*want[i]) + ", found " + element_text(*got[i]));
    }
  }
  return pass(Criterion::Measure);
}

}  // namespace

CriterionResult check_criterion(const SymbolicScene& scene, const SymbolicScene& answer,
                                Criterion criterion) {
  switch (criterion) {
    case Criterion::Staff:
      require(answer.staff.has_value(), criterion, "a staff");
      return scene.staff ? pass(criterion) : fail(criterion, "no staff was drawn");
    case Criterion::Clef:
      require(answer.clef.has_value(), criterion, "a clef");
      if (scene.clef == answer.clef) return pass(criterion);
      return fail(criterion, "expected " + clef_text(answer.clef) + ", found " + clef_text(scene.clef));
    case Criterion::KeySignature:
      return check_key(scene, answer);
    case Criterion::TimeSignature:
      require(answer.time.has_value(), criterion, "a time signature");
      if (scene.time == answer.time) return pass(criterion);
      return fail(criterion, "expected " + time_text(answer.time) + ", found " + time_text(scene.time));
    case Criterion::Duration:
      for (const Element* e : body(answer)) {
        require(e->kind != ElementKind::Note || (!e->pitch.empty() && e->durationBeats), criterion,
                "pitched notes with durations");
      }
      return check_duration(scene, answer);
    case Criterion::Measure:
      return check_measure(scene, answer);
  }
  return fail(criterion, "unknown criterion");
}

Feedback evaluate(const SymbolicScene& scene, const SymbolicScene& answer,
                  const CriteriaFlags& flags) {
  if (!flags.any()) throw Error(ErrorCode::AllFlagsDisabled, "no criteria enabled");
  Feedback f;
  f.correct = true;
  for (Criterion c : kCriteria) {
    if (!flags.enabled(c)) continue;
    f.results.push_back(check_criterion(scene, answer, c));
    f.correct = f.correct && f.results.back().passed;
  }
  return f;
}

std::string_view to_string(Mode mode) { return mode == Mode::Quiz ? "quiz" : "practice"; }

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "practice") return Mode::Practice;
  if (text == "quiz") return Mode::Quiz;
  return std::nullopt;
}

std::string_view to_string(QuestionStatus status) {
  switch (status) {
    case QuestionStatus::InProgress: return "inProgress";
    case QuestionStatus::Correct: return "correct";
    case QuestionStatus::Incorrect: return "incorrect";
  }
  return "?";
}

ProgressTracker::ProgressTracker(Mode mode, std::vector<int> questionNumbers)
    : mode_(mode), numbers_(std::move(questionNumbers)),
      status_(numbers_.size(), QuestionStatus::InProgress) {}

std::size_t ProgressTracker::index_of(int number) const {
  auto it = std::find(numbers_.begin(), numbers_.end(), number);
  if (it == numbers_.end()) {
    throw Error(ErrorCode::UnknownQuestion, "no question " + std::to_string(number));
  }
  return static_cast<std::size_t>(it - numbers_.begin());
}

QuestionStatus ProgressTracker::status(int number) const { return status_[index_of(number)]; }

bool ProgressTracker::checked(int number) const {
  return status(number) != QuestionStatus::InProgress;
}

bool ProgressTracker::all_checked() const {
  return std::none_of(status_.begin(), status_.end(),
                      [](QuestionStatus s) { return s == QuestionStatus::InProgress; });
}

Progress ProgressTracker::counts() const {
  Progress p;
  for (QuestionStatus s : status_) {
    if (s == QuestionStatus::Correct) ++p.correct;
    else if (s == QuestionStatus::Incorrect) ++p.incorrect;
    else ++p.inProgress;
  }
  return p;
}

void ProgressTracker::record(int number, bool correct) {
  const std::size_t i = index_of(number);
  if (mode_ == Mode::Quiz && status_[i] != QuestionStatus::InProgress) {
    throw Error(ErrorCode::QuizLocked, "question " + std::to_string(number) + " was already checked");
  }
  status_[i] = correct ? QuestionStatus::Correct : QuestionStatus::Incorrect;
}

Feedback grade(const SymbolicScene& scene, const SymbolicScene& answer, const CriteriaFlags& flags,
               int questionNumber, ProgressTracker& progress) {
  if (progress.mode() == Mode::Quiz && progress.checked(questionNumber)) {
    throw Error(ErrorCode::QuizLocked,
                "question " + std::to_string(questionNumber) + " was already checked");
  }
  Feedback f = evaluate(scene, answer, flags);
  progress.record(questionNumber, f.correct);
  f.progress = progress.counts();
  return f;
}

int score_percent(int correct, int total) {
  if (total <= 0) return 0;
  return (200 * correct + total) / (2 * total);
}

QuizReport build_report(const ProgressTracker& progress, const std::vector<QuestionInfo>& questions) {
  if (progress.mode() != Mode::Quiz) {
    throw Error(ErrorCode::NotApplicable, "reports are only built in quiz mode");
  }
  if (!progress.all_checked()) {
    const Progress p = progress.counts();
    throw Error(ErrorCode::QuizIncomplete,
                std::to_string(p.inProgress) + " question(s) not yet checked");
  }
  QuizReport r;
  std::vector<QuestionInfo> ordered = questions;
  std::sort(ordered.begin(), ordered.end(),
            [](const QuestionInfo& a, const QuestionInfo& b) { return a.number < b.number; });
  int correct = 0;
  for (const QuestionInfo& q : ordered) {
    const bool ok = progress.status(q.number) == QuestionStatus::Correct;
    correct += ok;
    r.perQuestion.push_back({q.number, q.text, ok, q.imageRef});
  }
  r.scorePercent = score_percent(correct, static_cast<int>(ordered.size()));
  return r;
}

}  // namespace notesketch
