#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string_view>

namespace dialoglab {

enum class ActCategory : std::uint8_t {
    Greeting,
    Statement,
    Request,
    Question,
    Answer,
    SocialAct,
};

// The 24 fine-grained customer-service dialogue acts, six top-level
// categories. Enum order is the canonical order used everywhere.
enum class Act : std::uint8_t {
    GreetingOpening,
    GreetingClosing,
    StatementInfo,
    StatementExprPos,
    StatementExprNeg,
    StatementComplaint,
    StatementOffer,
    StatementSuggestion,
    StatementPromise,
    StatementSarcasm,
    StatementOther,
    RequestHelp,
    RequestInfo,
    RequestOther,
    QuestionYesNo,
    QuestionWh,
    QuestionOpen,
    AnswerYes,
    AnswerNo,
    AnswerAck,
    AnswerOther,
    SocialActThanks,
    SocialActApology,
    SocialActDownplayer,
};

inline constexpr int kActCount = 24;

const std::array<Act, kActCount>& all_acts();

// Stable string id, e.g. Act::StatementComplaint -> "statement_complaint".
std::string_view act_name(Act act);
std::optional<Act> parse_act(std::string_view name);

ActCategory act_category(Act act);
std::string_view category_name(ActCategory category);

// Multi-label annotation of one turn. Ordered by enum value.
using ActSet = std::set<Act>;

}  // namespace dialoglab
