#include <functional>
#include <sstream>

#include "json.hpp"
#include "notesketch/error.hpp"
#include "notesketch/lesson.hpp"
#include "notesketch/notes.hpp"
#include "notesketch/scene.hpp"
#include "notesketch/sketch_io.hpp"
#include "notesketch/synth.hpp"

namespace notesketch::synth {

namespace fs = std::filesystem;

namespace {

NoteSpec shape(bool filled, bool stem, bool flag = false, bool dot = false) {
  NoteSpec s;
  s.filled = filled;
  s.stem = stem;
  s.flag = flag;
  s.dot = dot;
  return s;
}

NoteSpec with_accidental(Accidental a) {
  NoteSpec s;
  s.accidental = a;
  return s;
}

// Left-to-right writer over one staff; records the tokens it expects the
// recognizer to report.
class Line {
 public:
  Line(Composer& c, Clef clef) : c_(c), clef_(clef), u_(c.layout().step) {
    head_.push_back("staff");
    const BoundingBox b = clef == Clef::Treble ? c_.treble_clef(40.0) : c_.bass_clef(40.0);
    head_.push_back("clef:" + std::string(to_string(clef)));
    x_ = b.maxX + 0.5 * u_;
  }

  Line& key(Accidental kind, std::initializer_list<int> positions) {
    for (int p : positions) {
      const BoundingBox b = c_.key_accidental(kind, p, x_);
      x_ = b.maxX + 0.35 * u_;
      head_.push_back("key:" + std::string(to_string(kind)) + "@" + std::to_string(p));
    }
    x_ += 0.4 * u_;
    return *this;
  }

  Line& time(int numerator, int denominator) {
    const double cx = x_ + 0.9 * u_;
    c_.digit(numerator, cx, 6);
    c_.digit(denominator, cx, 2);
    head_.push_back("time:" + std::to_string(numerator) + "/" + std::to_string(denominator));
    x_ = cx + 1.6 * u_;
    return *this;
  }

  Line& note(int position, NoteSpec spec = {}) {
    const double cx = x_ + (spec.accidental ? 2.4 : 1.3) * u_;
    c_.note(cx, position, spec);
    body_.push_back(token(position, spec));
    x_ = cx + ((spec.flag || spec.dot) ? 2.6 : 1.9) * u_;
    return *this;
  }

  Line& quarter(int position) { return note(position); }
  Line& half(int position) { return note(position, shape(false, true)); }
  Line& whole(int position) { return note(position, shape(false, false)); }
  Line& sharp(int position) { return note(position, with_accidental(Accidental::Sharp)); }
  Line& flat(int position) { return note(position, with_accidental(Accidental::Flat)); }

  Line& beamed(int first, int second) {
    const double cx = x_ + 1.3 * u_;
    const DrawnNote a = c_.note(cx, first, {});
    const DrawnNote b = c_.note(cx + 2.6 * u_, second, {});
    c_.beam(a, b);
    body_.push_back(token(first, shape(true, true, true)));
    body_.push_back(token(second, shape(true, true, true)));
    x_ = cx + 4.5 * u_;
    return *this;
  }

  Line& rest(RestKind kind) {
    const double cx = x_ + 1.2 * u_;
    c_.rest(kind, cx);
    body_.push_back("rest:" + std::string(to_string(kind)));
    x_ = cx + 1.9 * u_;
    return *this;
  }

  Line& bar(BarKind kind = BarKind::Single) {
    const double bx = x_ + 0.6 * u_;
    c_.bar(bx, kind);
    body_.push_back("bar:" + std::string(to_string(kind)));
    x_ = bx + (kind == BarKind::Double ? 1.3 : 1.0) * u_;
    return *this;
  }

  Line& at(double x) {
    x_ = x;
    return *this;
  }

  std::vector<std::string> tokens() const {
    std::vector<std::string> out = head_;
    out.insert(out.end(), body_.begin(), body_.end());
    return out;
  }
  double x() const { return x_; }

 private:
  std::string token(int position, const NoteSpec& spec) const {
    const std::optional<double> beats =
        duration_beats({.filled = spec.filled, .stems = spec.stem ? 1 : 0,
                        .flags = spec.flag ? 1 : 0, .dots = spec.dot ? 1 : 0});
    std::string t = "note:" + pitch_name(clef_, position) + ":" + format_number(beats.value());
    if (spec.accidental) t += ":" + std::string(to_string(*spec.accidental));
    return t;
  }

  Composer& c_;
  Clef clef_;
  double u_;
  double x_ = 0.0;
  std::vector<std::string> head_;
  std::vector<std::string> body_;
};

using Draw = std::function<std::vector<std::string>(Composer&)>;

struct QuestionSpec {
  std::string text;
  std::string hint;
  std::vector<Criterion> criteria;
  Draw draw;
};

struct LessonSpec {
  std::string id;
  std::string title;
  std::vector<QuestionSpec> questions;
};

const std::vector<Criterion> kStaffClef = {Criterion::Staff, Criterion::Clef};
const std::vector<Criterion> kAll = {kCriteria.begin(), kCriteria.end()};
const std::vector<Criterion> kNoKey = {Criterion::Staff, Criterion::Clef, Criterion::TimeSignature,
                                       Criterion::Duration, Criterion::Measure};

std::vector<LessonSpec> lesson_specs() {
  using enum Criterion;
  return {
      {"lesson1",
       "Staffs and clefs",
       {
           {"Draw a five-line staff across the page.",
            "Draw five long horizontal lines, evenly spaced.",
            {Staff},
            [](Composer& c) {
              c.staff();
              return std::vector<std::string>{"staff"};
            }},
           {"Draw a staff with a treble clef at the start.",
            "The treble clef curls around the second line from the bottom, the G line.",
            kStaffClef,
            [](Composer& c) {
              c.staff();
              return Line(c, Clef::Treble).tokens();
            }},
           {"Draw a staff with a bass clef at the start.",
            "The bass clef begins on the fourth line, the F line; its two dots sit on either side "
            "of that line.",
            kStaffClef,
            [](Composer& c) {
              c.staff();
              return Line(c, Clef::Bass).tokens();
            }},
           {"Draw a treble clef staff and close it with a double bar line.",
            "A double bar line is two thin vertical lines spanning the staff, drawn close together.",
            {Staff, Clef, Measure},
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.at(1080.0).bar(BarKind::Double);
              return l.tokens();
            }},
           {"Draw a bass clef staff split into two measures by a bar line, ending with a double "
            "bar line.",
            "Bar lines run from the top line to the bottom line of the staff.",
            {Staff, Clef, Measure},
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Bass);
              l.at(560.0).bar().at(1080.0).bar(BarKind::Double);
              return l.tokens();
            }},
       }},
      {"lesson2",
       "Key and time signatures",
       {
           {"Write the key signature of G major after a treble clef.",
            "G major has one sharp: F sharp, written on the top line.",
            {Staff, Clef, KeySignature},
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.key(Accidental::Sharp, {8});
              return l.tokens();
            }},
           {"Write the key signature of F major after a treble clef.",
            "F major has one flat: B flat, written on the middle line.",
            {Staff, Clef, KeySignature},
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.key(Accidental::Flat, {4});
              return l.tokens();
            }},
           {"Write a 3/4 time signature after a treble clef.",
            "Stack the two numbers: beats per measure on top, the beat unit below.",
            {Staff, Clef, TimeSignature},
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(3, 4);
              return l.tokens();
            }},
           {"Write the key signature of D major followed by 4/4 time.",
            "D major has two sharps, F sharp then C sharp; the time signature comes after the key.",
            {Staff, Clef, KeySignature, TimeSignature},
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.key(Accidental::Sharp, {8, 5}).time(4, 4);
              return l.tokens();
            }},
           {"Write the key signature of B flat major followed by 6/8 time.",
            "B flat major has two flats, B flat then E flat.",
            {Staff, Clef, KeySignature, TimeSignature},
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.key(Accidental::Flat, {4, 7}).time(6, 8);
              return l.tokens();
            }},
       }},
      {"lesson3",
       "Basic notation",
       {
           {"In 4/4 time, write four quarter notes climbing from G4 to C5, then a bar line.",
            "Quarter notes have filled heads and a stem; the bar line closes the measure.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(4, 4).quarter(2).quarter(3).quarter(4).quarter(5).bar();
              return l.tokens();
            }},
           {"In 4/4 time, write two half notes, E4 then G4, then a bar line.",
            "Half notes have hollow heads with a stem and last two beats each.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(4, 4).half(0).half(2).bar();
              return l.tokens();
            }},
           {"In 3/4 time, fill one measure with a dotted half note on D5.",
            "A dot after a note adds half its value: a dotted half lasts three beats.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(3, 4).note(6, shape(false, true, false, true)).bar();
              return l.tokens();
            }},
           {"In 4/4 time, fill one measure with a whole note on F4.",
            "A whole note is a hollow head with no stem.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(4, 4).whole(1).bar();
              return l.tokens();
            }},
           {"In 2/4 time, write two beamed eighth notes, G4 and B4, then a quarter note A4.",
            "Two eighth notes can share a beam instead of separate flags.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(2, 4).beamed(2, 4).quarter(3).bar();
              return l.tokens();
            }},
       }},
      {"lesson4",
       "Scales and accidentals",
       {
           {"In 4/4 time, write the first four notes of the C major scale from middle C as "
            "quarter notes.",
            "Middle C sits on a ledger line below the staff.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(4, 4).quarter(-2).quarter(-1).quarter(0).quarter(1).bar();
              return l.tokens();
            }},
           {"In 4/4 time, write F sharp 4 and G4 as quarter notes, then A4 as a half note.",
            "Write the sharp just to the left of the note head, on the same line or space.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(4, 4).sharp(1).quarter(2).half(3).bar();
              return l.tokens();
            }},
           {"In 4/4 time, write B flat 4 and A4 as quarter notes, then G4 as a half note.",
            "The flat sits to the left of the head with its loop on the note's line.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(4, 4).flat(4).quarter(3).half(2).bar();
              return l.tokens();
            }},
           {"With the G major key signature and 4/4 time, write G4, A4, B4 and C5 as quarter "
            "notes.",
            "The key signature already sharpens every F, so no accidentals are needed here.",
            kAll,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.key(Accidental::Sharp, {8}).time(4, 4).quarter(2).quarter(3).quarter(4).quarter(5).bar();
              return l.tokens();
            }},
           {"In the bass clef and 4/4 time, write C3, D3, E3 and F3 as quarter notes.",
            "In the bass clef the bottom line is G2; C3 is in the second space.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Bass);
              l.time(4, 4).quarter(3).quarter(4).quarter(5).quarter(6).bar();
              return l.tokens();
            }},
       }},
      {"lesson5",
       "Simple transcription",
       {
           {"Transcribe: in 4/4, quarter notes C5 and B4, then a half note A4.",
            "Count the beats: 1 + 1 + 2 fills the measure.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(4, 4).quarter(5).quarter(4).half(3).bar();
              return l.tokens();
            }},
           {"Transcribe: in 3/4, a quarter rest followed by two quarter notes on G4.",
            "A quarter rest takes one beat, just like a quarter note.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(3, 4).rest(RestKind::Quarter).quarter(2).quarter(2).bar();
              return l.tokens();
            }},
           {"Transcribe two measures of 2/4: quarter notes E4 and G4, then a half note C5, ending "
            "with a double bar line.",
            "Each 2/4 measure holds two beats.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(2, 4).quarter(0).quarter(2).bar().half(5).bar(BarKind::Double);
              return l.tokens();
            }},
           {"Transcribe: in 4/4, two beamed eighth notes G4 and A4, a quarter note B4 and a half "
            "note G4.",
            "Two beamed eighths together last one beat.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(4, 4).beamed(2, 3).quarter(4).half(2).bar();
              return l.tokens();
            }},
           {"Transcribe two measures of 4/4: a whole rest, then a whole note C5, ending with a "
            "double bar line.",
            "The whole rest hangs from the fourth line and fills a whole measure.",
            kNoKey,
            [](Composer& c) {
              c.staff();
              Line l(c, Clef::Treble);
              l.time(4, 4).rest(RestKind::Whole).bar().whole(5).bar(BarKind::Double);
              return l.tokens();
            }},
       }},
  };
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const std::string& s : v) out += (out.empty() ? "" : " ") + s;
  return out;
}

// A few pen seeds per question; the first drawing recognized as intended is
// kept.
constexpr int kAttempts = 8;

}  // namespace

void write_lessons(const fs::path& dir, std::shared_ptr<const TemplateLibrary> library) {
  fs::create_directories(dir / "answers");
  fs::create_directories(dir / "images");
  fs::create_directories(dir / "sketches");
  std::uint64_t seed = 0x1E550ULL;
  for (const LessonSpec& spec : lesson_specs()) {
    Lesson lesson;
    lesson.title = spec.title;
    lesson.baseDir = dir;
    int number = 0;
    for (const QuestionSpec& qs : spec.questions) {
      ++number;
      const std::string stem = spec.id + "-q" + std::to_string(number);
      std::optional<Sketch> chosen;
      std::optional<Scene> scene;
      std::vector<std::string> expect, found;
      for (int attempt = 0; attempt < kAttempts && !chosen; ++attempt) {
        Composer c(++seed);
        expect = qs.draw(c);
        Sketch s = c.sketch();
        Scene recognized = recognize_strokes(library, s.strokes, {}, s.width, s.height);
        found = scene_tokens(to_symbolic(recognized));
        if (found == expect && recognized.pending.empty() && recognized.unrecognized.empty()) {
          s.label = stem;
          s.expect = expect;
          chosen = std::move(s);
          scene = std::move(recognized);
        }
      }
      if (!chosen) {
        throw Error(ErrorCode::IoError, stem + ": drawing not recognized as intended; expected [" +
                                            join(expect) + "], found [" + join(found) + "]");
      }
      const SymbolicScene answer = to_symbolic(*scene);
      write_text_file(dir / "answers" / (stem + ".xml"), serialize_scene(answer));
      write_text_file(dir / "images" / (stem + ".svg"), render_svg(answer));
      save_sketch(*chosen, dir / "sketches" / (stem + ".json"));

      Question q;
      q.number = number;
      q.text = qs.text;
      q.hint = qs.hint;
      q.answerRef = "answers/" + stem + ".xml";
      q.imageRef = "images/" + stem + ".svg";
      q.flags = CriteriaFlags::from_mask(0);
      for (Criterion c : qs.criteria) q.flags.set(c, true);
      q.answer = answer;
      lesson.questions.push_back(std::move(q));
    }
    save_lesson(lesson, dir / (spec.id + ".json"));
  }
}

}  // namespace notesketch::synth
