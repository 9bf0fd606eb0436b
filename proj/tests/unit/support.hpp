#pragma once

#include <cmath>
#include <filesystem>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "notesketch/geometry.hpp"
#include "notesketch/sketch_io.hpp"
#include "notesketch/template_matcher.hpp"

namespace notesketch::testing {

inline std::shared_ptr<const TemplateLibrary> bundled_library() {
  static const auto library = std::make_shared<const TemplateLibrary>(
      load_template_library(data_dir() / "templates" / "library.json"));
  return library;
}

inline Stroke segment(int id, Point a, Point b, int n = 20) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    pts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
  }
  return make_stroke(id, std::move(pts));
}

inline Stroke ellipse(int id, Point c, double rx, double ry, int n = 40) {
  std::vector<Point> pts;
  for (int i = 0; i <= n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    pts.push_back({c.x + rx * std::cos(a), c.y + ry * std::sin(a)});
  }
  return make_stroke(id, std::move(pts));
}

// Five lines across a 1200-wide canvas with the given top and gap.
inline std::vector<Stroke> staff_strokes(double top = 200.0, double gap = 30.0, int firstId = 1) {
  std::vector<Stroke> out;
  for (int i = 0; i < 5; ++i) {
    out.push_back(segment(firstId + i, {20.0, top + i * gap}, {1180.0, top + i * gap}, 60));
  }
  return out;
}

// A scratch directory removed when the object goes away.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("notesketch-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace notesketch::testing

namespace doctest {

template <>
struct StringMaker<std::vector<std::string>> {
  static String convert(const std::vector<std::string>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
    return (out + "]").c_str();
  }
};

template <>
struct StringMaker<std::vector<int>> {
  static String convert(const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
    return (out + "]").c_str();
  }
};

}  // namespace doctest
