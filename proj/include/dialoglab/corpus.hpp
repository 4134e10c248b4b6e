#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dialoglab/conversation.hpp"

namespace dialoglab {

// Replaces company aliases with "Agent", customer handles with "Customer",
// URL tokens with "<link>" and image tokens with "<img>". Everything else
// is preserved byte for byte. Idempotent.
std::string anonymize(const std::string& raw_text,
                      const std::vector<std::string>& company_aliases,
                      const std::vector<std::string>& customer_handles);

enum class RejectReason {
    Malformed,
    MultipleSpeakersPerSide,
    NonAlternating,
    TurnCount,
    WordCount,
    TruncatedTurn,
};

std::string_view reject_reason_code(RejectReason reason);

struct FilterDecision {
    bool accepted = false;
    std::optional<RejectReason> reason;

    static FilterDecision accept() { return {true, std::nullopt}; }
    static FilterDecision reject(RejectReason r) { return {false, r}; }

    bool operator==(const FilterDecision&) const = default;
};

// Applies the ingestion rules in a fixed order and reports the first
// violation: malformed, multiple-speakers-per-side, non-alternating,
// turn-count (5..10), word-count (>= 70), truncated-turn.
FilterDecision preprocess_filter(const Conversation& conv);

// Total whitespace-delimited tokens over all turns.
int count_words(const Conversation& conv);

nlohmann::json conversation_to_json(const Conversation& conv);
// `origin` names the source (file + line) in error messages.
Conversation conversation_from_json(const nlohmann::json& j, const std::string& origin);

std::vector<Conversation> parse_corpus(std::istream& in, const std::string& origin);
std::vector<Conversation> load_corpus(const std::string& path);
void save_corpus(const std::vector<Conversation>& corpus, const std::string& path);
std::string format_corpus(const std::vector<Conversation>& corpus);  // JSONL text

}  // namespace dialoglab
