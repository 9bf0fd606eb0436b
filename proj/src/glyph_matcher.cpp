#include "notesketch/glyph_matcher.hpp"

#include <algorithm>

#include "notesketch/error.hpp"

namespace notesketch {

std::optional<MatchResult> MatchMemo::find(const std::vector<int>& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void MatchMemo::store(std::vector<int> key, MatchResult result) {
  std::lock_guard lock(mutex_);
  entries_.insert_or_assign(std::move(key), std::move(result));
}

void MatchMemo::forget(int strokeId) {
  std::lock_guard lock(mutex_);
  std::erase_if(entries_, [strokeId](const auto& entry) {
    return std::find(entry.first.begin(), entry.first.end(), strokeId) != entry.first.end();
  });
}

void MatchMemo::clear() {
  std::lock_guard lock(mutex_);
  entries_.clear();
}

std::size_t MatchMemo::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

MatchResult GlyphMatcher::best(std::span<const Stroke> strokes) const {
  if (!memo_) return match(strokes, *library_);
  std::vector<int> key;
  key.reserve(strokes.size());
  for (const Stroke& s : strokes) key.push_back(s.id);
  std::sort(key.begin(), key.end());
  if (auto hit = memo_->find(key)) return *hit;
  MatchResult result = match(strokes, *library_);
  memo_->store(std::move(key), result);
  return result;
}

std::optional<MatchResult> GlyphMatcher::matching_check(std::span<const Stroke> strokes,
                                                        std::span<const std::string> family,
                                                        const RecognitionConfig& config) const {
  MatchResult m;
  try {
    m = best(strokes);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateStroke) return std::nullopt;
    throw;
  }
  if (std::find(family.begin(), family.end(), m.label) == family.end()) return std::nullopt;
  if (!(m.score > config.scoreThreshold)) return std::nullopt;
  if (m.distance > config.maxMatchDistance) return std::nullopt;
  return m;
}

}  // namespace notesketch
