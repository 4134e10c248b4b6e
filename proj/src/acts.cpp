#include "dialoglab/acts.hpp"

#include <unordered_map>

namespace dialoglab {

namespace {

struct ActInfo {
    Act act;
    ActCategory category;
    std::string_view name;
};

constexpr std::array<ActInfo, kActCount> kActs{{
    {Act::GreetingOpening, ActCategory::Greeting, "greeting_opening"},
    {Act::GreetingClosing, ActCategory::Greeting, "greeting_closing"},
    {Act::StatementInfo, ActCategory::Statement, "statement_info"},
    {Act::StatementExprPos, ActCategory::Statement, "statement_expr_pos"},
    {Act::StatementExprNeg, ActCategory::Statement, "statement_expr_neg"},
    {Act::StatementComplaint, ActCategory::Statement, "statement_complaint"},
    {Act::StatementOffer, ActCategory::Statement, "statement_offer"},
    {Act::StatementSuggestion, ActCategory::Statement, "statement_suggestion"},
    {Act::StatementPromise, ActCategory::Statement, "statement_promise"},
    {Act::StatementSarcasm, ActCategory::Statement, "statement_sarcasm"},
    {Act::StatementOther, ActCategory::Statement, "statement_other"},
    {Act::RequestHelp, ActCategory::Request, "request_help"},
    {Act::RequestInfo, ActCategory::Request, "request_info"},
    {Act::RequestOther, ActCategory::Request, "request_other"},
    {Act::QuestionYesNo, ActCategory::Question, "question_yesno"},
    {Act::QuestionWh, ActCategory::Question, "question_wh"},
    {Act::QuestionOpen, ActCategory::Question, "question_open"},
    {Act::AnswerYes, ActCategory::Answer, "answer_yes"},
    {Act::AnswerNo, ActCategory::Answer, "answer_no"},
    {Act::AnswerAck, ActCategory::Answer, "answer_ack"},
    {Act::AnswerOther, ActCategory::Answer, "answer_other"},
    {Act::SocialActThanks, ActCategory::SocialAct, "socialact_thanks"},
    {Act::SocialActApology, ActCategory::SocialAct, "socialact_apology"},
    {Act::SocialActDownplayer, ActCategory::SocialAct, "socialact_downplayer"},
}};

}  // namespace

const std::array<Act, kActCount>& all_acts() {
    static const std::array<Act, kActCount> acts = [] {
        std::array<Act, kActCount> a{};
        for (int i = 0; i < kActCount; ++i) a[i] = kActs[i].act;
        return a;
    }();
    return acts;
}

std::string_view act_name(Act act) { return kActs[static_cast<std::size_t>(act)].name; }

std::optional<Act> parse_act(std::string_view name) {
    static const std::unordered_map<std::string_view, Act> index = [] {
        std::unordered_map<std::string_view, Act> m;
        for (const auto& info : kActs) m.emplace(info.name, info.act);
        return m;
    }();
    auto it = index.find(name);
    if (it == index.end()) return std::nullopt;
    return it->second;
}

ActCategory act_category(Act act) { return kActs[static_cast<std::size_t>(act)].category; }

std::string_view category_name(ActCategory category) {
    switch (category) {
        case ActCategory::Greeting: return "greeting";
        case ActCategory::Statement: return "statement";
        case ActCategory::Request: return "request";
        case ActCategory::Question: return "question";
        case ActCategory::Answer: return "answer";
        case ActCategory::SocialAct: return "socialact";
    }
    return "";
}

}  // namespace dialoglab
