#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialoglab/conversation.hpp"

namespace dialoglab {

// Sparse named-feature vector. Absent entries read as 0.
struct FeatureVector {
    std::map<std::string, double> entries;

    double get(const std::string& name) const {
        auto it = entries.find(name);
        return it == entries.end() ? 0.0 : it->second;
    }
    void set(std::string name, double value) { entries[std::move(name)] = value; }
    void bump(const std::string& name, double delta) { entries[name] += delta; }

    bool operator==(const FeatureVector&) const = default;
};

// Lowercase, split on whitespace, detach leading/trailing punctuation as
// separate tokens; internal apostrophes stay ("you're"). The <link> and
// <img> placeholders stay whole.
std::vector<std::string> tokenize(std::string_view text);

inline constexpr std::array<std::string_view, 10> kEmotionTags{
    "anger", "anticipation", "disgust", "fear",     "joy",
    "negative", "positive",  "sadness", "surprise", "trust"};

// Word -> emotion-tag set, loaded from the flat NRC layout:
// word<TAB>category<TAB>0|1. Lookups are case-insensitive.
class EmotionLexicon {
public:
    static EmotionLexicon load(const std::string& path);
    static EmotionLexicon from_stream(std::istream& in, const std::string& origin);

    void add(std::string word, std::string_view tag);
    // Bitmask over kEmotionTags; 0 when the word is unknown.
    std::uint16_t tags_for(const std::string& lowercased_word) const;
    std::size_t size() const { return words_.size(); }

private:
    std::map<std::string, std::uint16_t> words_;
};

// Deterministic token -> index map over the training split.
class Vocabulary {
public:
    static Vocabulary build(const std::vector<Conversation>& corpus, int min_count);
    static Vocabulary from_counts(const std::map<std::string, int>& counts, int min_count);

    bool contains(const std::string& token) const { return index_.count(token) > 0; }
    std::size_t size() const { return index_.size(); }
    const std::map<std::string, int>& index() const { return index_; }

private:
    std::map<std::string, int> index_;
};

struct ExtractOptions {
    bool bow_include_punct = true;     // keep punctuation unigrams in the bag
    bool speaker_feature = false;      // emit ref:speaker_agent
    std::int64_t response_cap = 86400; // clamp for temporal:response_secs
};

// One turn -> sparse features: bow:*, punct:*, temporal:*, ref:*, emo:*,
// cue:*. `prev_turn_ts` empty means first turn (response time 0). When a
// vocabulary is given, out-of-vocabulary unigrams are dropped.
FeatureVector extract_turn_features(const Turn& turn, std::optional<std::int64_t> prev_turn_ts,
                                    const EmotionLexicon& lexicon, const Vocabulary* vocab,
                                    const ExtractOptions& opts = {});

// Whole conversation, response times wired to the actual previous turn.
std::vector<FeatureVector> extract_conversation_features(const Conversation& conv,
                                                         const EmotionLexicon& lexicon,
                                                         const Vocabulary* vocab,
                                                         const ExtractOptions& opts = {});

}  // namespace dialoglab
