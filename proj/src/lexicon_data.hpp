#pragma once

#include <cstddef>

namespace cbdetect {
namespace detail {

extern const char* const kStopWords[];
extern const std::size_t kStopWordCount;

extern const char* const kSlang[];
extern const std::size_t kSlangCount;

struct WeightedWord {
  const char* word;
  double weight;
};
extern const WeightedWord kSentiment[];
extern const std::size_t kSentimentCount;

struct TaggedWord {
  const char* word;
  const char* tag;
};
extern const TaggedWord kTaggerLexicon[];
extern const std::size_t kTaggerLexiconCount;

}  // namespace detail
}  // namespace cbdetect
