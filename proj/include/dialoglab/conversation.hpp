#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dialoglab/acts.hpp"

namespace dialoglab {

enum class Speaker : std::uint8_t { Customer, Agent };

std::string_view speaker_name(Speaker s);
std::optional<Speaker> parse_speaker(std::string_view name);

// The three conversation-level questions put to annotators.
enum class OutcomeQuestion : std::uint8_t { Frustration, Satisfaction, Resolution };
inline constexpr int kOutcomeQuestionCount = 3;
inline constexpr std::array<OutcomeQuestion, 3> kOutcomeQuestions{
    OutcomeQuestion::Frustration, OutcomeQuestion::Satisfaction, OutcomeQuestion::Resolution};

// JSON keys: frustrated / satisfied / resolved.
std::string_view outcome_question_key(OutcomeQuestion q);
std::optional<OutcomeQuestion> parse_outcome_question(std::string_view key);

enum class Answer : std::uint8_t { Agree, Disagree, CantTell };
std::string_view answer_name(Answer a);
std::optional<Answer> parse_answer(std::string_view name);

enum class TriState : std::uint8_t { Yes, No, None };
std::string_view tristate_name(TriState t);
std::optional<TriState> parse_tristate(std::string_view name);

// Per-question annotator answers, indexed by OutcomeQuestion.
struct OutcomeVotes {
    std::array<std::vector<Answer>, kOutcomeQuestionCount> votes;

    bool operator==(const OutcomeVotes&) const = default;
};

struct Turn {
    int index = 0;  // 1-based position in the conversation
    Speaker speaker = Speaker::Customer;
    std::string text;       // post-anonymization UTF-8
    std::int64_t ts = 0;    // seconds since epoch
    std::optional<std::string> handle;  // raw speaker id, used by the speaker filter
    std::optional<std::vector<ActSet>> annotator_votes;  // one ActSet per annotator
    std::optional<ActSet> gold_acts;                     // majority labels

    bool operator==(const Turn&) const = default;
};

struct Conversation {
    std::string id;
    std::string company;
    std::vector<Turn> turns;
    std::optional<OutcomeVotes> outcome_votes;
    std::optional<std::array<TriState, kOutcomeQuestionCount>> outcome_majority;

    bool operator==(const Conversation&) const = default;
};

}  // namespace dialoglab
