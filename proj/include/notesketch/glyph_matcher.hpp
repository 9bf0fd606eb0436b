#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "notesketch/config.hpp"
#include "notesketch/template_matcher.hpp"

namespace notesketch {

namespace labels {
inline const std::vector<std::string> kClefs = {"bass_clef", "treble_clef"};
inline const std::vector<std::string> kAccidentals = {"flat", "sharp"};
inline const std::vector<std::string> kDigits = {"digit_0", "digit_1", "digit_2", "digit_3",
                                                 "digit_4", "digit_5", "digit_6", "digit_7",
                                                 "digit_8", "digit_9"};
inline const std::vector<std::string> kRests = {"eighth_rest", "quarter_rest"};
}  // namespace labels

// Match results keyed by the sorted stroke ids of the candidate group. Stroke
// ids are unique within a scene, so entries stay valid until a stroke is
// removed (see forget()).
class MatchMemo {
 public:
  std::optional<MatchResult> find(const std::vector<int>& key) const;
  void store(std::vector<int> key, MatchResult result);
  void forget(int strokeId);
  void clear();
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::vector<int>, MatchResult> entries_;
};

// Library lookup shared by the template-based classifiers. best() matches
// against the whole library; matching_check() accepts when the winner falls
// in the requested family and passes both the score and distance gates.
class GlyphMatcher {
 public:
  explicit GlyphMatcher(const TemplateLibrary& library, std::shared_ptr<MatchMemo> memo = nullptr)
      : library_(&library), memo_(std::move(memo)) {}

  MatchResult best(std::span<const Stroke> strokes) const;
  std::optional<MatchResult> matching_check(std::span<const Stroke> strokes,
                                            std::span<const std::string> family,
                                            const RecognitionConfig& config) const;
  const TemplateLibrary& library() const { return *library_; }

 private:
  const TemplateLibrary* library_;
  std::shared_ptr<MatchMemo> memo_;
};

}  // namespace notesketch
