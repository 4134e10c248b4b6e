#include "dialoglab/conversation.hpp"

namespace dialoglab {

std::string_view speaker_name(Speaker s) {
    return s == Speaker::Customer ? "customer" : "agent";
}

std::optional<Speaker> parse_speaker(std::string_view name) {
    if (name == "customer") return Speaker::Customer;
    if (name == "agent") return Speaker::Agent;
    return std::nullopt;
}

std::string_view outcome_question_key(OutcomeQuestion q) {
    switch (q) {
        case OutcomeQuestion::Frustration: return "frustrated";
        case OutcomeQuestion::Satisfaction: return "satisfied";
        case OutcomeQuestion::Resolution: return "resolved";
    }
    return "";
}

std::optional<OutcomeQuestion> parse_outcome_question(std::string_view key) {
    if (key == "frustrated") return OutcomeQuestion::Frustration;
    if (key == "satisfied") return OutcomeQuestion::Satisfaction;
    if (key == "resolved") return OutcomeQuestion::Resolution;
    return std::nullopt;
}

std::string_view answer_name(Answer a) {
    switch (a) {
        case Answer::Agree: return "agree";
        case Answer::Disagree: return "disagree";
        case Answer::CantTell: return "cant_tell";
    }
    return "";
}

std::optional<Answer> parse_answer(std::string_view name) {
    if (name == "agree") return Answer::Agree;
    if (name == "disagree") return Answer::Disagree;
    if (name == "cant_tell") return Answer::CantTell;
    return std::nullopt;
}

std::string_view tristate_name(TriState t) {
    switch (t) {
        case TriState::Yes: return "yes";
        case TriState::No: return "no";
        case TriState::None: return "none";
    }
    return "";
}

std::optional<TriState> parse_tristate(std::string_view name) {
    if (name == "yes") return TriState::Yes;
    if (name == "no") return TriState::No;
    if (name == "none") return TriState::None;
    return std::nullopt;
}

}  // namespace dialoglab
