#include "tutorsynth/matcher.h"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace tutorsynth {

double Jaccard(const TokenSet& a, const TokenSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  const std::size_t unique = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(unique);
}

MatchState::MatchState(std::shared_ptr<const Tutorial> tutorial, double threshold)
    : tutorial_(std::move(tutorial)), threshold_(threshold) {
  if (!tutorial_ || tutorial_->steps.empty())
    throw std::invalid_argument("tutorial has no steps");
  if (threshold_ < 0.0 || threshold_ > 1.0)
    throw std::invalid_argument("threshold must be within [0, 1]");
}

MatchResult MatchState::Resolve(const ScreenSnapshot& snapshot) {
  double best = -1.0;
  std::vector<std::size_t> tied;
  for (const auto& step : tutorial_->steps) {
    if (!step.has_visuals || !step.primary) continue;
    double score = Jaccard(snapshot.element_texts, step.primary->pre_screen_tokens);
    for (const auto& alt : step.alternatives)
      score = std::max(score, Jaccard(snapshot.element_texts, alt.pre_screen_tokens));
    if (score > best) {
      best = score;
      tied.assign(1, step.index);
    } else if (score == best) {
      tied.push_back(step.index);
    }
  }

  MatchResult result;
  result.similarity = std::max(best, 0.0);
  result.current_step = last_viewed_;
  if (!tied.empty() && best >= threshold_) {
    // Prefer progress: the first tied step at or after the last viewed one.
    auto forward = std::find_if(tied.begin(), tied.end(),
                                [&](std::size_t i) { return i >= last_viewed_; });
    result.current_step = forward != tied.end() ? *forward : tied.front();
    result.matched = true;
    last_viewed_ = result.current_step;
  }
  history_.push_back(MatchHistoryEntry{SnapshotDigest(snapshot.element_texts),
                                       result.current_step, result.similarity});
  return result;
}

HighlightSignal Highlight(std::size_t prev_step, std::size_t current_step) {
  return HighlightSignal{current_step, current_step != prev_step, kHighlightFadeMs};
}

std::string SnapshotDigest(const TokenSet& tokens) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&](unsigned char c) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  };
  for (const auto& t : tokens) {
    for (char c : t) feed(static_cast<unsigned char>(c));
    feed(0);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace tutorsynth
