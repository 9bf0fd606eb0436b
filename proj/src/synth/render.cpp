#include <cmath>
#include <cstdio>
#include <sstream>

#include "notesketch/synth.hpp"

namespace notesketch::synth {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

struct Frame {
  double top = 200.0;
  double step = 30.0;
  double left = 20.0;
  double right = 1180.0;
  double y(int position) const { return top + 4 * step - position * step / 2.0; }
};

const char* kStroke = R"( stroke="#111" fill="none" stroke-width="2")";

void text(std::ostringstream& out, double x, double y, double size, const std::string& s) {
  out << "  <text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << num(size)
      << "\" font-family=\"serif\" text-anchor=\"middle\">" << s << "</text>\n";
}

void line(std::ostringstream& out, double x0, double y0, double x1, double y1, double width = 2) {
  out << "  <line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1) << "\" y2=\""
      << num(y1) << "\" stroke=\"#111\" stroke-width=\"" << num(width) << "\"/>\n";
}

void note(std::ostringstream& out, const Frame& f, const Element& e) {
  const double u = f.step;
  const double cx = e.x;
  const double cy = f.y(e.position);
  const double beats = e.durationBeats.value_or(1.0);
  const bool filled = beats <= 1.5;
  const bool stem = beats < 4.0;
  // ledger lines
  for (int p = 10; p <= e.position; p += 2) line(out, cx - 0.9 * u, f.y(p), cx + 0.9 * u, f.y(p));
  for (int p = -2; p >= e.position; p -= 2) line(out, cx - 0.9 * u, f.y(p), cx + 0.9 * u, f.y(p));
  out << "  <ellipse cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" rx=\"" << num(0.62 * u)
      << "\" ry=\"" << num(0.45 * u) << "\" transform=\"rotate(-20 " << num(cx) << " " << num(cy)
      << ")\"" << (filled ? R"( fill="#111")" : kStroke) << "/>\n";
  if (stem) {
    const bool up = e.position < 4;
    const double sx = up ? cx + 0.58 * u : cx - 0.58 * u;
    const double ey = up ? cy - 3.3 * u : cy + 3.3 * u;
    line(out, sx, cy, sx, ey);
    if (beats == 0.5 || beats == 0.75) {
      const double dir = up ? 1.0 : -1.0;
      out << "  <path d=\"M" << num(sx) << " " << num(ey) << " q" << num(0.9 * u) << " "
          << num(dir * 0.9 * u) << " " << num(0.6 * u) << " " << num(dir * 2.0 * u) << "\""
          << kStroke << "/>\n";
    }
  }
  const bool dotted = beats == 0.75 || beats == 1.5 || beats == 3.0 || beats == 6.0;
  if (dotted) {
    const double dy = e.position % 2 == 0 ? -0.5 * u : 0.0;
    out << "  <circle cx=\"" << num(cx + 1.0 * u) << "\" cy=\"" << num(cy + dy) << "\" r=\""
        << num(0.12 * u) << "\" fill=\"#111\"/>\n";
  }
  if (e.accidental) {
    text(out, cx - 1.4 * u, cy + 0.45 * u, 1.8 * u,
         *e.accidental == Accidental::Sharp ? "&#x266F;" : "&#x266D;");
  }
}

void rest(std::ostringstream& out, const Frame& f, const Element& e) {
  const double u = f.step;
  switch (e.rest) {
    case RestKind::Whole:
      out << "  <rect x=\"" << num(e.x - 0.6 * u) << "\" y=\"" << num(f.y(6)) << "\" width=\""
          << num(1.2 * u) << "\" height=\"" << num(0.5 * u) << "\" fill=\"#111\"/>\n";
      break;
    case RestKind::Half:
      out << "  <rect x=\"" << num(e.x - 0.6 * u) << "\" y=\"" << num(f.y(4) - 0.5 * u)
          << "\" width=\"" << num(1.2 * u) << "\" height=\"" << num(0.5 * u)
          << "\" fill=\"#111\"/>\n";
      break;
    case RestKind::Quarter:
      text(out, e.x, f.y(4) + 0.9 * u, 3.0 * u, "&#x1D13D;");
      break;
    case RestKind::Eighth:
      text(out, e.x, f.y(4) + 0.6 * u, 3.0 * u, "&#x1D13E;");
      break;
  }
}

}  // namespace

std::string render_svg(const SymbolicScene& scene) {
  Frame f;
  if (scene.staff) {
    f.top = scene.staff->lineYs.front();
    f.step = scene.staff->step;
  }
  const double u = f.step;
  const double y0 = f.top - 5.0 * u;
  const double height = 14.0 * u;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 " << num(y0) << " 1200 "
      << num(height) << "\" width=\"1200\" height=\"" << num(height) << "\">\n";
  out << "  <rect x=\"0\" y=\"" << num(y0) << "\" width=\"1200\" height=\"" << num(height)
      << "\" fill=\"white\"/>\n";
  if (scene.staff) {
    for (int i = 0; i < 5; ++i) line(out, f.left, f.top + i * u, f.right, f.top + i * u, 1.5);
  }
  double x = 70.0;
  if (scene.clef == Clef::Treble) text(out, x, f.y(0) + 1.2 * u, 6.5 * u, "&#x1D11E;");
  if (scene.clef == Clef::Bass) text(out, x, f.y(6) + 1.3 * u, 3.8 * u, "&#x1D122;");
  x += 2.2 * u;
  for (const KeyAccidental& k : scene.key) {
    text(out, x, f.y(k.position) + 0.45 * u, 1.8 * u,
         k.accidental == Accidental::Sharp ? "&#x266F;" : "&#x266D;");
    x += 0.9 * u;
  }
  if (scene.time) {
    x += 0.6 * u;
    text(out, x, f.y(4) - 0.15 * u, 2.2 * u, std::to_string(scene.time->numerator));
    text(out, x, f.y(0) - 0.15 * u, 2.2 * u, std::to_string(scene.time->denominator));
  }
  for (const Element& e : scene.elements) {
    switch (e.kind) {
      case ElementKind::Note: note(out, f, e); break;
      case ElementKind::Rest: rest(out, f, e); break;
      case ElementKind::Bar:
        line(out, e.x, f.top, e.x, f.top + 4 * u, 2);
        if (e.bar == BarKind::Double) line(out, e.x + 0.3 * u, f.top, e.x + 0.3 * u, f.top + 4 * u, 4);
        break;
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace notesketch::synth
