// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "notesketch/error.hpp"
#include "notesketch/evaluation.hpp"
#include "notesketch/grading.hpp"
#include "notesketch/lesson.hpp"
#include "notesketch/notes.hpp"
#include "notesketch/scene.hpp"
#include "notesketch/sketch_io.hpp"
#include "notesketch/staff.hpp"
#include "notesketch/symbolic.hpp"
#include "notesketch/synth.hpp"
#include "notesketch/template_matcher.hpp"
#include "random_scene.hpp"

using namespace notesketch;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Records the first failure; later ones only bump the count.
class Failures {
 public:
  void add(const std::string& what) {
    if (count_++ == 0) first_ = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (count_ == 0) return {true, summary};
    return {false, std::to_string(count_) + " failure(s), first: " + first_};
  }

 private:
  int count_ = 0;
  std::string first_;
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << v;
  return os.str();
}

std::shared_ptr<const TemplateLibrary> library() {
  static const auto lib = std::make_shared<const TemplateLibrary>(
      load_template_library(data_dir() / "templates" / "library.json"));
  return lib;
}

// --- 1: similarity score -----------------------------------------------------

Outcome score_points() {
  struct Case {
    double d, size, expected, tolerance;
  };
  const Case cases[] = {{1.0, 250.0, 1.0, 0.0},
                        {0.0, 250.0, 0.999717, 1e-6},
                        {354.5534, 250.0, 0.9, 1e-6}};
  Failures f;
  std::string got;
  for (const Case& c : cases) {
    const double s = similarity_score(c.d, c.size);
    got += (got.empty() ? "" : ", ") + fmt(s);
    if (std::abs(s - c.expected) > c.tolerance) {
      f.add("score(" + fmt(c.d, 4) + ") = " + fmt(s, 9) + ", expected " + fmt(c.expected));
    }
  }
  return f.outcome("scores " + got);
}

// --- 2: match() against brute force -----------------------------------------

double exact_hausdorff(const PointSet& a, const PointSet& b) {
  auto directed = [](const PointSet& from, const PointSet& to) {
    double worst = 0.0;
    for (const Point& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& q : to) {
        const double dx = p.x - q.x;
        const double dy = p.y - q.y;
        best = std::min(best, dx * dx + dy * dy);
      }
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

MatchResult brute_force(const std::vector<Stroke>& strokes, const TemplateLibrary& lib) {
  const PointSet cloud = normalize_multistroke(strokes, lib.size());
  MatchResult best;
  best.distance = std::numeric_limits<double>::infinity();
  for (const auto& [label, templates] : lib.classes()) {
    for (std::size_t i = 0; i < templates.size(); ++i) {
      const double d = exact_hausdorff(cloud, templates[i].points);
      // classes() iterates labels in order, so strict < keeps the first
      // label and index on ties
      if (d < best.distance) {
        best.label = label;
        best.distance = d;
        best.templateIndex = static_cast<int>(i);
      }
    }
  }
  return best;
}

std::vector<Stroke> random_scribble(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> strokeCount(1, 3);
  std::uniform_int_distribution<int> pointCount(3, 30);
  std::uniform_real_distribution<double> coord(0.0, 120.0);
  std::normal_distribution<double> stepNoise(0.0, 8.0);
  std::vector<Stroke> out;
  const int n = strokeCount(rng);
  for (int s = 0; s < n; ++s) {
    std::vector<Point> pts;
    Point p{coord(rng), coord(rng), std::nullopt};
    const int m = pointCount(rng);
    for (int i = 0; i < m; ++i) {
      pts.push_back(p);
      p.x += stepNoise(rng);
      p.y += stepNoise(rng);
    }
    out.push_back(make_stroke(s + 1, std::move(pts)));
  }
  return out;
}

Outcome matcher_agrees() {
  const auto& lib = *library();
  std::mt19937_64 rng(2024);
  const auto& classes = synth::template_classes();
  Failures f;
  int agreed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 200; ++i) {
    std::vector<Stroke> strokes;
    if (i % 2 == 0) {
      const std::string& label = classes[rng() % classes.size()];
      strokes = synth::template_capture(label, 500 + i).strokes;
    } else {
      strokes = random_scribble(rng);
    }
    const MatchResult fast = match(strokes, lib);
    const MatchResult slow = brute_force(strokes, lib);
    if (fast.label == slow.label && fast.templateIndex == slow.templateIndex &&
        std::abs(fast.distance - slow.distance) <= 1e-9 * std::max(1.0, slow.distance)) {
      ++agreed;
    } else {
      f.add("input " + std::to_string(i) + ": match " + fast.label + "#" +
            std::to_string(fast.templateIndex) + " d=" + fmt(fast.distance) + ", brute force " +
            slow.label + "#" + std::to_string(slow.templateIndex) + " d=" + fmt(slow.distance));
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= 10.0) f.add("took " + fmt(seconds, 2) + " s");
  return f.outcome(std::to_string(agreed) + "/200 agree");
}

// --- 3: corpus accuracy -----------------------------------------------------

Outcome corpus_accuracy() {
  const auto start = std::chrono::steady_clock::now();
  const EvalResult r = evaluate_corpus(data_dir() / "corpus", library());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Failures f;
  auto accuracy = [&](const std::vector<std::string>& classes) {
    ClassStats sum;
    for (const std::string& c : classes) {
      auto it = r.perClass.find(c);
      if (it == r.perClass.end()) {
        f.add("corpus has no class " + c);
        continue;
      }
      sum.total += it->second.total;
      sum.correct += it->second.correct;
    }
    return sum.accuracy();
  };
  const double overall = r.overall_accuracy();
  const double staffBar = accuracy({"staff", "bar_single", "bar_double"});
  const double clefs = accuracy({"treble_clef", "bass_clef"});
  if (overall < 0.95) f.add("overall " + fmt(overall, 3));
  if (staffBar < 0.99) f.add("staff/bar " + fmt(staffBar, 3));
  if (clefs < 0.90) f.add("clefs " + fmt(clefs, 3));
  if (seconds >= 60.0) f.add("took " + fmt(seconds, 2) + " s");
  return f.outcome("overall " + fmt(overall, 3) + " over " + std::to_string(r.total()) +
                   ", staff/bar " + fmt(staffBar, 3) + ", clefs " + fmt(clefs, 3));
}

// --- 4: staff assembly ------------------------------------------------------

Stroke drawn_line(std::mt19937_64& rng, int id, double x0, double x1, double yMid, double slope) {
  std::normal_distribution<double> jitter(0.0, 0.4);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> amplitude(0.0, 1.5);
  const double a = amplitude(rng);
  const double ph = phase(rng);
  const double xc = (x0 + x1) / 2.0;
  std::vector<Point> pts;
  const int n = 80;
  for (int i = 0; i < n; ++i) {
    const double x = x0 + (x1 - x0) * i / (n - 1);
    const double y = yMid + slope * (x - xc) + a * std::sin(ph + 6.0 * x / (x1 - x0)) + jitter(rng);
    pts.push_back({x, y, std::nullopt});
  }
  return make_stroke(id, std::move(pts));
}

double mean_y(const Stroke& s) {
  double sum = 0.0;
  for (const Point& p : s.points) sum += p.y;
  return sum / s.points.size();
}

// Drawing constraints: straightness above 0.95, end-to-end slope below
// 0.05, spanning at least 95% of the canvas.
bool within_constraints(const Stroke& s) {
  const Point& a = s.points.front();
  const Point& b = s.points.back();
  double minX = a.x, maxX = a.x;
  for (const Point& p : s.points) {
    minX = std::min(minX, p.x);
    maxX = std::max(maxX, p.x);
  }
  return straightness(s.points) > 0.95 && std::abs(b.y - a.y) / std::abs(b.x - a.x) < 0.05 &&
         (maxX - minX) / 1200.0 >= 0.95;
}

Outcome staff_assembly() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> gapDist(18.0, 40.0);
  std::uniform_real_distribution<double> jitterDist(-0.15, 0.15);
  std::uniform_real_distribution<double> tiltDist(-0.045, 0.045);
  std::uniform_real_distribution<double> lineSlopeDist(-0.004, 0.004);
  std::uniform_real_distribution<double> startDist(5.0, 30.0);
  std::uniform_real_distribution<double> endDist(1170.0, 1195.0);
  std::uniform_real_distribution<double> topDist(120.0, 260.0);
  const RecognitionConfig config;
  Failures f;
  double worstStepError = 0.0;
  int redrawn = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 500; ++trial) {
    const std::string at = "staff " + std::to_string(trial) + ": ";
    const double gap = gapDist(rng);
    const double tilt = tiltDist(rng);
    double y = topDist(rng);
    std::vector<Stroke> lines;
    for (int i = 0; i < 5; ++i) {
      if (i > 0) y += gap * (1.0 + jitterDist(rng));
      Stroke line = drawn_line(rng, i + 1, startDist(rng), endDist(rng), y, tilt + lineSlopeDist(rng));
      while (!within_constraints(line)) {
        ++redrawn;
        line = drawn_line(rng, i + 1, startDist(rng), endDist(rng), y, tilt + lineSlopeDist(rng));
      }
      lines.push_back(std::move(line));
    }
    std::vector<StaffLineCandidate> candidates;
    for (const Stroke& s : lines) {
      if (auto c = classify_staff_line(s, 1200.0, config)) candidates.push_back(*c);
    }
    if (candidates.size() != 5) {
      f.add(at + std::to_string(candidates.size()) + " of 5 lines classified");
      continue;
    }
    StaffModel staff;
    try {
      staff = assemble_staff(candidates, config);
    } catch (const Error& e) {
      f.add(at + e.what());
      continue;
    }
    for (int i = 1; i < 5; ++i) {
      const double d = staff.lineYs[i] - staff.lineYs[i - 1];
      if (std::abs(d - staff.step) > 1e-9 * staff.step) {
        f.add(at + "uneven gap " + fmt(d, 9) + " vs step " + fmt(staff.step, 9));
      }
    }
    const double drawnSpacing = (mean_y(lines[4]) - mean_y(lines[0])) / 4.0;
    const double error = std::abs(staff.step - drawnSpacing) / drawnSpacing;
    worstStepError = std::max(worstStepError, error);
    if (error > 0.05) f.add(at + "step " + fmt(staff.step) + " vs drawn spacing " + fmt(drawnSpacing));

    std::vector<StaffLineCandidate> again;
    for (int i = 0; i < 5; ++i) {
      StaffLineCandidate c = candidates[i];
      c.meanY = staff.lineYs[i];
      c.minX = staff.left;
      c.maxX = staff.right;
      again.push_back(c);
    }
    if (!(assemble_staff(again, config) == staff)) f.add(at + "assembly is not idempotent");
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= 10.0) f.add("took " + fmt(seconds, 2) + " s");
  return f.outcome("500 staves (" + std::to_string(redrawn) + " lines redrawn), worst step error " +
                   fmt(100.0 * worstStepError, 2) + "%");
}

// --- 5: duration and pitch tables -------------------------------------------

// Expected beats written out rule by rule.
std::optional<double> expected_beats(bool filled, int stems, int flags, int beams, int dots) {
  if (stems > 1 || flags > 1 || dots > 1) return std::nullopt;
  double base;
  if (!filled && stems == 0 && flags == 0 && beams == 0) base = 4.0;        // whole
  else if (!filled && stems == 1 && flags == 0 && beams == 0) base = 2.0;   // half
  else if (filled && stems == 1 && flags == 0 && beams == 0) base = 1.0;    // quarter
  else if (filled && stems == 1 && (flags + beams) >= 1) base = 0.5;        // eighth
  else return std::nullopt;
  return dots == 1 ? base * 1.5 : base;
}

std::string expected_pitch(Clef clef, int position) {
  static const char* letters = "CDEFGAB";
  // diatonic index of the bottom line: E4 or G2
  const int bottom = clef == Clef::Treble ? 4 * 7 + 2 : 2 * 7 + 4;
  const int index = bottom + position;
  return std::string(1, letters[index % 7]) + std::to_string(index / 7);
}

Outcome tables() {
  Failures f;
  int rows = 0;
  for (int filled = 0; filled <= 1; ++filled) {
    for (int stems = 0; stems <= 2; ++stems) {
      for (int flags = 0; flags <= 2; ++flags) {
        for (int beams = 0; beams <= 1; ++beams) {
          for (int dots = 0; dots <= 2; ++dots) {
            ++rows;
            const NoteShape shape{filled == 1, stems, flags, beams, dots};
            const auto got = duration_beats(shape);
            const auto want = expected_beats(filled == 1, stems, flags, beams, dots);
            if (got != want) {
              f.add("filled=" + std::to_string(filled) + " stems=" + std::to_string(stems) +
                    " flags=" + std::to_string(flags) + " beams=" + std::to_string(beams) +
                    " dots=" + std::to_string(dots) + ": got " +
                    (got ? fmt(*got, 2) : std::string("none")) + ", want " +
                    (want ? fmt(*want, 2) : std::string("none")));
            }
          }
        }
      }
    }
  }
  int pitches = 0;
  for (Clef clef : {Clef::Treble, Clef::Bass}) {
    for (int p = -4; p <= 12; ++p) {
      ++pitches;
      const std::string got = pitch_name(clef, p);
      const std::string want = expected_pitch(clef, p);
      if (got != want) {
        f.add(std::string(to_string(clef)) + " " + std::to_string(p) + ": " + got + " vs " + want);
      }
    }
  }
  return f.outcome(std::to_string(rows) + " duration rows, " + std::to_string(pitches) +
                   " pitches, 0 mismatches");
}

// --- 6: grading truth table -------------------------------------------------

bool complete_answer(const SymbolicScene& s) {
  bool note = false, bar = false;
  for (const Element& e : s.elements) {
    note = note || (e.kind == ElementKind::Note && !e.pitch.empty() && e.durationBeats);
    bar = bar || e.kind == ElementKind::Bar;
  }
  return s.staff && s.clef && !s.key.empty() && s.time && note && bar;
}

// The answer changed in exactly the aspect one criterion looks at.
SymbolicScene perturb(SymbolicScene s, Criterion c) {
  switch (c) {
    case Criterion::Staff:
      s.staff.reset();
      break;
    case Criterion::Clef:
      s.clef = *s.clef == Clef::Treble ? Clef::Bass : Clef::Treble;
      break;
    case Criterion::KeySignature:
      s.key.front().accidental =
          s.key.front().accidental == Accidental::Sharp ? Accidental::Flat : Accidental::Sharp;
      break;
    case Criterion::TimeSignature:
      // same beats per measure in another unit
      s.time->numerator *= 2;
      s.time->denominator *= 2;
      break;
    case Criterion::Duration:
      for (Element& e : s.elements) {
        if (e.kind == ElementKind::Note) {
          e.position += 1;
          e.pitch = pitch_name(*s.clef, e.position);
          break;
        }
      }
      break;
    case Criterion::Measure:
      for (Element& e : s.elements) {
        if (e.kind == ElementKind::Bar) {
          e.bar = e.bar == BarKind::Single ? BarKind::Double : BarKind::Single;
          break;
        }
      }
      break;
  }
  return s;
}

Outcome grading_truth_table() {
  Failures f;
  std::optional<SymbolicScene> answer;
  std::string source;
  for (const CatalogEntry& e : load_catalog(data_dir() / "lessons")) {
    for (const Question& q : e.lesson.questions) {
      if (!answer && complete_answer(q.answer)) {
        answer = q.answer;
        source = e.id + " question " + std::to_string(q.number);
      }
    }
  }
  if (!answer) {
    f.add("no bundled answer exercises every criterion");
    return f.outcome("");
  }
  int evaluations = 0;
  auto run = [&](const SymbolicScene& drawn, unsigned wrongBits, const std::string& name) {
    const Feedback full = evaluate(drawn, *answer, CriteriaFlags{});
    for (unsigned mask = 1; mask < 64; ++mask) {
      ++evaluations;
      const Feedback fb = evaluate(drawn, *answer, CriteriaFlags::from_mask(mask));
      const bool expectCorrect = (mask & wrongBits) == 0;
      if (fb.correct != expectCorrect) {
        f.add(name + " mask " + std::to_string(mask) + ": correct=" + (fb.correct ? "yes" : "no"));
      }
      std::size_t k = 0;
      for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        if (!(mask & (1u << i))) continue;
        if (k >= fb.results.size() || fb.results[k].criterion != kCriteria[i]) {
          f.add(name + " mask " + std::to_string(mask) + ": results out of order");
          break;
        }
        const bool expectPass = !(wrongBits & (1u << i));
        if (fb.results[k].passed != expectPass) {
          f.add(name + " mask " + std::to_string(mask) + ": " +
                std::string(to_string(kCriteria[i])) + " flipped");
        }
        if (!(fb.results[k] == full.results[i])) {
          f.add(name + " mask " + std::to_string(mask) + ": " +
                std::string(to_string(kCriteria[i])) + " differs from the all-enabled result");
        }
        ++k;
      }
      if (k != fb.results.size()) f.add(name + " mask " + std::to_string(mask) + ": extra results");
    }
  };
  run(*answer, 0, "answer itself");
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    run(perturb(*answer, kCriteria[i]), 1u << i, std::string(to_string(kCriteria[i])));
  }
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    for (std::size_t j = i + 1; j < kCriteria.size(); ++j) {
      run(perturb(perturb(*answer, kCriteria[i]), kCriteria[j]), (1u << i) | (1u << j),
          std::string(to_string(kCriteria[i])) + "+" + std::string(to_string(kCriteria[j])));
    }
  }
  return f.outcome(std::to_string(evaluations) + " evaluations on " + source);
}

// --- 7: scene XML round trip ------------------------------------------------

Outcome round_trip() {
  Failures f;
  int scenes = 0;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir() / "lessons" / "answers")) {
    if (entry.path().extension() != ".xml") continue;
    ++scenes;
    const SymbolicScene s = deserialize_scene(read_text_file(entry.path()));
    const std::string xml = serialize_scene(s);
    if (!(deserialize_scene(xml) == s) || serialize_scene(deserialize_scene(xml)) != xml) {
      f.add(entry.path().filename().string());
    }
  }
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 100; ++i) {
    ++scenes;
    const SymbolicScene s = notesketch::testing::random_scene(rng);
    if (!(deserialize_scene(serialize_scene(s)) == s)) f.add("random scene " + std::to_string(i));
  }
  return f.outcome(std::to_string(scenes) + " scenes");
}

// --- 8: add/undo/clear fuzz -------------------------------------------------

Outcome partition_fuzz() {
  std::mt19937_64 rng(8);
  const auto& classes = synth::corpus_classes();
  std::vector<Stroke> pool;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (int i = 0; i < 3; ++i) {
      for (const Stroke& s : synth::corpus_sample(classes[c], 100 + i).strokes) pool.push_back(s);
    }
  }
  for (int i = 0; i < 100; ++i) {
    for (Stroke s : random_scribble(rng)) {
      for (Point& p : s.points) {
        p.x += 300.0;
        p.y += 150.0;
      }
      pool.push_back(std::move(s));
    }
  }

  Recognizer r(library());
  Failures f;
  int nextId = 1;
  int adds = 0, undos = 0, clears = 0;
  std::uniform_int_distribution<int> op(0, 99);
  for (int i = 0; i < 10000; ++i) {
    const int roll = op(rng);
    try {
      if (roll < 72) {
        Stroke s = pool[rng() % pool.size()];
        s.id = nextId++;
        r.add_stroke(std::move(s));
        ++adds;
      } else if (roll < 97) {
        try {
          r.undo();
          ++undos;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NothingToUndo || !r.scene().rawStrokes.empty()) throw;
        }
      } else {
        r.clear();
        ++clears;
      }
    } catch (const std::exception& e) {
      f.add("operation " + std::to_string(i) + " threw: " + e.what());
    }
    const std::string violation = check_partition(r.scene());
    if (!violation.empty()) f.add("operation " + std::to_string(i) + ": " + violation);
  }
  return f.outcome(std::to_string(adds) + " adds, " + std::to_string(undos) + " undos, " +
                   std::to_string(clears) + " clears");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"similarity score reference points", score_points},
      {"match agrees with brute-force Hausdorff", matcher_agrees},
      {"corpus recognition accuracy", corpus_accuracy},
      {"random staff assembly", staff_assembly},
      {"duration and pitch tables", tables},
      {"grading truth table", grading_truth_table},
      {"scene XML round trip", round_trip},
      {"add/undo/clear partition fuzz", partition_fuzz},
  };
  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%d] %s: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", index, c.name,
                o.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!o.passed) ++failed;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
