#include <functional>
#include <map>

#include "notesketch/error.hpp"
#include "notesketch/notes.hpp"
#include "notesketch/synth.hpp"

namespace notesketch::synth {

namespace {

std::uint64_t seed_for(const std::string& name, int index, std::uint64_t salt) {
  // FNV-1a keeps seeds stable across standard libraries.
  std::uint64_t h = 1469598103934665603ULL ^ salt;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h + static_cast<std::uint64_t>(index) * 7919ULL;
}

std::string beats_text(double beats) {
  if (beats == 4.0) return "4";
  if (beats == 3.0) return "3";
  if (beats == 2.0) return "2";
  if (beats == 1.5) return "1.5";
  if (beats == 1.0) return "1";
  if (beats == 0.75) return "0.75";
  return "0.5";
}

std::string note_expect(int position, double beats, std::optional<Accidental> acc = std::nullopt) {
  std::string t = "note:" + pitch_name(Clef::Treble, position) + ":" + beats_text(beats);
  if (acc) t += acc == Accidental::Sharp ? ":sharp" : ":flat";
  return t;
}

int pick(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double pickx(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

const std::vector<std::string>& corpus_classes() {
  static const std::vector<std::string> classes = {
      "staff",        "bar_single",   "bar_double",   "treble_clef",  "bass_clef",
      "key_sharp",    "key_flat",     "time_signature", "whole_rest", "half_rest",
      "quarter_rest", "eighth_rest",  "note_whole",   "note_half",    "note_quarter",
      "note_eighth",  "note_dotted",  "note_ledger",  "note_sharp",   "note_flat",
      "beamed_pair"};
  return classes;
}

Sketch corpus_sample(const std::string& cls, int index, PenOptions options) {
  Composer c(seed_for(cls, index, 0xC0FFEEULL), options);
  auto& rng = c.rng();
  std::vector<std::string> expect{"staff"};
  c.staff(pickx(rng, 0.9, 1.1));
  const double u = c.layout().step;

  if (cls == "staff") {
    // Nothing else drawn.
  } else if (cls == "bass_clef") {
    c.bass_clef(pickx(rng, 30, 70));
    expect.push_back("clef:bass");
  } else {
    const BoundingBox clef = c.treble_clef(pickx(rng, 30, 70));
    expect.push_back("clef:treble");
    const double body = pickx(rng, 420, 900);
    if (cls == "treble_clef") {
    } else if (cls == "bar_single" || cls == "bar_double") {
      const bool dbl = cls == "bar_double";
      c.bar(body, dbl ? BarKind::Double : BarKind::Single);
      expect.push_back(dbl ? "bar:double" : "bar:single");
    } else if (cls == "key_sharp" || cls == "key_flat") {
      const bool sharp = cls == "key_sharp";
      static const int sharps[] = {8, 5, 9};
      static const int flats[] = {4, 7, 3};
      const int count = pick(rng, 1, 3);
      double x = clef.maxX + 0.4 * u;
      for (int k = 0; k < count; ++k) {
        const int pos = sharp ? sharps[k] : flats[k];
        const BoundingBox b = c.key_accidental(sharp ? Accidental::Sharp : Accidental::Flat, pos, x);
        x = b.maxX + 0.35 * u;
        expect.push_back(std::string("key:") + (sharp ? "sharp@" : "flat@") + std::to_string(pos));
      }
    } else if (cls == "time_signature") {
      static const std::pair<int, int> kinds[] = {{2, 4}, {3, 4}, {4, 4}, {6, 8}, {3, 8},
                                                  {2, 2}, {5, 4}, {9, 8}, {7, 8}, {3, 2}};
      const auto [num, den] = kinds[index % 10];
      const double cx = clef.maxX + 1.4 * u;
      c.digit(num, cx, 6);
      c.digit(den, cx, 2);
      expect.push_back("time:" + std::to_string(num) + "/" + std::to_string(den));
    } else if (cls.ends_with("_rest")) {
      static const std::map<std::string, RestKind> kinds = {{"whole_rest", RestKind::Whole},
                                                            {"half_rest", RestKind::Half},
                                                            {"quarter_rest", RestKind::Quarter},
                                                            {"eighth_rest", RestKind::Eighth}};
      const RestKind kind = kinds.at(cls);
      c.rest(kind, body);
      expect.push_back("rest:" + std::string(to_string(kind)));
    } else if (cls == "beamed_pair") {
      const int p1 = pick(rng, 0, 3);
      const int p2 = pick(rng, 0, 3);
      NoteSpec spec;
      spec.blobFill = pick(rng, 0, 1) == 1;
      const DrawnNote a = c.note(body, p1, spec);
      const DrawnNote b = c.note(body + pickx(rng, 2.4, 3.0) * u, p2, spec);
      c.beam(a, b);
      expect.push_back(note_expect(p1, 0.5));
      expect.push_back(note_expect(p2, 0.5));
    } else if (cls.starts_with("note_")) {
      NoteSpec spec;
      spec.blobFill = pick(rng, 0, 1) == 1;
      int pos = pick(rng, 0, 8);
      double beats = 1.0;
      if (cls == "note_whole") {
        spec.filled = false;
        spec.stem = false;
        beats = 4.0;
      } else if (cls == "note_half") {
        spec.filled = false;
        beats = 2.0;
      } else if (cls == "note_eighth") {
        spec.flag = true;
        beats = 0.5;
      } else if (cls == "note_dotted") {
        spec.dot = true;
        spec.filled = pick(rng, 0, 1) == 1;
        beats = spec.filled ? 1.5 : 3.0;
      } else if (cls == "note_ledger") {
        static const int positions[] = {10, 11, 12, -2, -3, -4};
        pos = positions[index % 6];
      } else if (cls == "note_sharp") {
        spec.accidental = Accidental::Sharp;
      } else if (cls == "note_flat") {
        spec.accidental = Accidental::Flat;
      } else if (cls != "note_quarter") {
        throw Error(ErrorCode::OutOfRange, "unknown corpus class " + cls);
      }
      c.note(body, pos, spec);
      expect.push_back(note_expect(pos, beats, spec.accidental));
    } else {
      throw Error(ErrorCode::OutOfRange, "unknown corpus class " + cls);
    }
  }
  Sketch s = c.sketch();
  s.label = cls;
  s.expect = std::move(expect);
  return s;
}

const std::vector<std::string>& template_classes() {
  static const std::vector<std::string> classes = {
      "bass_clef", "digit_0", "digit_1", "digit_2", "digit_3", "digit_4", "digit_5", "digit_6",
      "digit_7", "digit_8", "digit_9", "eighth_rest", "flat", "quarter_rest", "sharp",
      "treble_clef"};
  return classes;
}

Sketch template_capture(const std::string& label, int index, PenOptions options) {
  Composer c(seed_for(label, index, 0x7E4D1A7EULL), options);
  StaffLayout layout;
  layout.step = 30.0 * pickx(c.rng(), 0.9, 1.1);
  c.set_layout(layout);
  c.glyph(label, 100.0);
  Sketch s = c.sketch();
  s.label = label;
  return s;
}

}  // namespace notesketch::synth
