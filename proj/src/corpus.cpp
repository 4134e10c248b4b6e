#include "dialoglab/corpus.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "dialoglab/error.hpp"

namespace dialoglab {

namespace {

void replace_all(std::string& text, const std::string& pattern, const std::string& replacement) {
    if (pattern.empty()) return;
    std::size_t pos = 0;
    while ((pos = text.find(pattern, pos)) != std::string::npos) {
        text.replace(pos, pattern.size(), replacement);
        pos += replacement.size();
    }
}

bool is_image_token(std::string_view token) {
    return token.find("pic.twitter.com") != std::string_view::npos;
}

bool is_link_token(std::string_view token) {
    return token.starts_with("http://") || token.starts_with("https://") ||
           token.find("t.co/") != std::string_view::npos ||
           token.find("twitter.com/") != std::string_view::npos;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Turn text cut off mid-tweet: trailing "..." or U+2026 followed by <link>.
bool ends_truncated(const std::string& text) {
    std::size_t end = text.size();
    while (end > 0 && is_space(text[end - 1])) --end;
    const std::string_view link = "<link>";
    if (end < link.size() || std::string_view(text).substr(end - link.size(), link.size()) != link)
        return false;
    end -= link.size();
    while (end > 0 && is_space(text[end - 1])) --end;
    std::string_view head = std::string_view(text).substr(0, end);
    return head.ends_with("...") || head.ends_with("\xE2\x80\xA6");
}

}  // namespace

std::string anonymize(const std::string& raw_text,
                      const std::vector<std::string>& company_aliases,
                      const std::vector<std::string>& customer_handles) {
    std::string text = raw_text;
    for (const auto& alias : company_aliases) replace_all(text, alias, "Agent");
    for (const auto& handle : customer_handles) replace_all(text, handle, "Customer");

    // Token pass for links and images; whitespace is preserved exactly.
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (is_space(text[i])) {
            out.push_back(text[i++]);
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        std::string_view token(text.data() + start, i - start);
        if (is_image_token(token)) {
            out += "<img>";
        } else if (is_link_token(token)) {
            out += "<link>";
        } else {
            out += token;
        }
    }
    return out;
}

std::string_view reject_reason_code(RejectReason reason) {
    switch (reason) {
        case RejectReason::Malformed: return "malformed";
        case RejectReason::MultipleSpeakersPerSide: return "multiple-speakers-per-side";
        case RejectReason::NonAlternating: return "non-alternating";
        case RejectReason::TurnCount: return "turn-count";
        case RejectReason::WordCount: return "word-count";
        case RejectReason::TruncatedTurn: return "truncated-turn";
    }
    return "";
}

int count_words(const Conversation& conv) {
    int words = 0;
    for (const auto& turn : conv.turns) {
        bool in_token = false;
        for (char c : turn.text) {
            if (is_space(c)) {
                in_token = false;
            } else if (!in_token) {
                in_token = true;
                ++words;
            }
        }
    }
    return words;
}

FilterDecision preprocess_filter(const Conversation& conv) {
    // Structural damage first: empty turns, empty text, bad timestamps.
    if (conv.turns.empty()) return FilterDecision::reject(RejectReason::Malformed);
    std::int64_t prev_ts = -1;
    for (const auto& turn : conv.turns) {
        if (turn.text.empty() || turn.ts < 0 || (prev_ts >= 0 && turn.ts < prev_ts))
            return FilterDecision::reject(RejectReason::Malformed);
        prev_ts = turn.ts;
    }

    // More than one distinct handle on either side.
    for (Speaker side : {Speaker::Customer, Speaker::Agent}) {
        std::optional<std::string> seen;
        for (const auto& turn : conv.turns) {
            if (turn.speaker != side || !turn.handle) continue;
            if (seen && *seen != *turn.handle)
                return FilterDecision::reject(RejectReason::MultipleSpeakersPerSide);
            seen = *turn.handle;
        }
    }

    for (std::size_t i = 1; i < conv.turns.size(); ++i) {
        if (conv.turns[i].speaker == conv.turns[i - 1].speaker)
            return FilterDecision::reject(RejectReason::NonAlternating);
    }

    if (conv.turns.size() < 5 || conv.turns.size() > 10)
        return FilterDecision::reject(RejectReason::TurnCount);

    if (count_words(conv) < 70) return FilterDecision::reject(RejectReason::WordCount);

    for (const auto& turn : conv.turns) {
        if (ends_truncated(turn.text)) return FilterDecision::reject(RejectReason::TruncatedTurn);
    }

    return FilterDecision::accept();
}

namespace {

using nlohmann::json;

json act_set_to_json(const ActSet& acts) {
    json arr = json::array();
    for (Act a : acts) arr.push_back(std::string(act_name(a)));
    return arr;
}

ActSet act_set_from_json(const json& arr, const std::string& origin) {
    if (!arr.is_array()) throw ValidationError(origin + ": act set must be an array");
    ActSet acts;
    for (const auto& v : arr) {
        if (!v.is_string()) throw ValidationError(origin + ": act must be a string");
        auto act = parse_act(v.get<std::string>());
        if (!act) throw ValidationError(origin + ": unknown act '" + v.get<std::string>() + "'");
        acts.insert(*act);
    }
    return acts;
}

const json& require(const json& j, const char* key, const std::string& origin) {
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(origin + ": missing field '" + key + "'");
    return *it;
}

}  // namespace

json conversation_to_json(const Conversation& conv) {
    json j;
    j["id"] = conv.id;
    j["company"] = conv.company;
    json turns = json::array();
    bool any_votes = false;
    bool any_gold = false;
    for (const auto& turn : conv.turns) {
        json t;
        t["speaker"] = std::string(speaker_name(turn.speaker));
        t["text"] = turn.text;
        t["ts"] = turn.ts;
        if (turn.handle) t["handle"] = *turn.handle;
        turns.push_back(std::move(t));
        any_votes |= turn.annotator_votes.has_value();
        any_gold |= turn.gold_acts.has_value();
    }
    j["turns"] = std::move(turns);
    if (any_votes) {
        json votes = json::array();
        for (const auto& turn : conv.turns) {
            json per_annotator = json::array();
            if (turn.annotator_votes) {
                for (const auto& set : *turn.annotator_votes) per_annotator.push_back(act_set_to_json(set));
            }
            votes.push_back(std::move(per_annotator));
        }
        j["votes"] = std::move(votes);
    }
    if (any_gold) {
        json gold = json::array();
        for (const auto& turn : conv.turns)
            gold.push_back(turn.gold_acts ? act_set_to_json(*turn.gold_acts) : json::array());
        j["gold_acts"] = std::move(gold);
    }
    if (conv.outcome_votes) {
        json ov;
        for (OutcomeQuestion q : kOutcomeQuestions) {
            json arr = json::array();
            for (Answer a : conv.outcome_votes->votes[static_cast<int>(q)])
                arr.push_back(std::string(answer_name(a)));
            ov[std::string(outcome_question_key(q))] = std::move(arr);
        }
        j["outcome_votes"] = std::move(ov);
    }
    if (conv.outcome_majority) {
        json om;
        for (OutcomeQuestion q : kOutcomeQuestions)
            om[std::string(outcome_question_key(q))] =
                std::string(tristate_name((*conv.outcome_majority)[static_cast<int>(q)]));
        j["outcome_majority"] = std::move(om);
    }
    return j;
}

Conversation conversation_from_json(const json& j, const std::string& origin) {
    if (!j.is_object()) throw ValidationError(origin + ": conversation must be a JSON object");
    Conversation conv;
    const json& id = require(j, "id", origin);
    if (!id.is_string()) throw ValidationError(origin + ": 'id' must be a string");
    conv.id = id.get<std::string>();
    const json& company = require(j, "company", origin);
    if (!company.is_string()) throw ValidationError(origin + ": 'company' must be a string");
    conv.company = company.get<std::string>();

    const json& turns = require(j, "turns", origin);
    if (!turns.is_array() || turns.empty())
        throw ValidationError(origin + ": 'turns' must be a non-empty array");
    int index = 0;
    for (const auto& t : turns) {
        Turn turn;
        turn.index = ++index;
        const json& speaker = require(t, "speaker", origin);
        if (!speaker.is_string())
            throw ValidationError(origin + ": turn 'speaker' must be a string");
        auto s = parse_speaker(speaker.get<std::string>());
        if (!s)
            throw ValidationError(origin + ": bad speaker '" + speaker.get<std::string>() +
                                  "' (expected customer|agent)");
        turn.speaker = *s;
        const json& text = require(t, "text", origin);
        if (!text.is_string()) throw ValidationError(origin + ": turn 'text' must be a string");
        turn.text = text.get<std::string>();
        const json& ts = require(t, "ts", origin);
        if (!ts.is_number_integer())
            throw ValidationError(origin + ": turn 'ts' must be an integer");
        turn.ts = ts.get<std::int64_t>();
        if (t.contains("handle")) {
            if (!t["handle"].is_string())
                throw ValidationError(origin + ": turn 'handle' must be a string");
            turn.handle = t["handle"].get<std::string>();
        }
        conv.turns.push_back(std::move(turn));
    }

    if (j.contains("votes")) {
        const json& votes = j["votes"];
        if (!votes.is_array() || votes.size() != conv.turns.size())
            throw ValidationError(origin + ": 'votes' must have one entry per turn");
        std::size_t annotators = 0;
        for (std::size_t i = 0; i < votes.size(); ++i) {
            if (!votes[i].is_array())
                throw ValidationError(origin + ": 'votes' entries must be arrays");
            std::vector<ActSet> per_annotator;
            for (const auto& set : votes[i]) per_annotator.push_back(act_set_from_json(set, origin));
            if (i == 0) {
                annotators = per_annotator.size();
            } else if (per_annotator.size() != annotators) {
                throw ValidationError(origin + ": turn " + std::to_string(i + 1) +
                                      " has a different annotator count");
            }
            conv.turns[i].annotator_votes = std::move(per_annotator);
        }
    }

    if (j.contains("gold_acts")) {
        const json& gold = j["gold_acts"];
        if (!gold.is_array() || gold.size() != conv.turns.size())
            throw ValidationError(origin + ": 'gold_acts' must have one entry per turn");
        for (std::size_t i = 0; i < gold.size(); ++i)
            conv.turns[i].gold_acts = act_set_from_json(gold[i], origin);
    }

    if (j.contains("outcome_votes")) {
        const json& ov = j["outcome_votes"];
        if (!ov.is_object()) throw ValidationError(origin + ": 'outcome_votes' must be an object");
        OutcomeVotes votes;
        for (OutcomeQuestion q : kOutcomeQuestions) {
            std::string key(outcome_question_key(q));
            const json& arr = require(ov, key.c_str(), origin);
            if (!arr.is_array())
                throw ValidationError(origin + ": outcome votes for '" + key + "' must be an array");
            for (const auto& v : arr) {
                if (!v.is_string())
                    throw ValidationError(origin + ": outcome vote must be a string");
                auto a = parse_answer(v.get<std::string>());
                if (!a)
                    throw ValidationError(origin + ": bad outcome vote '" + v.get<std::string>() +
                                          "' (expected agree|disagree|cant_tell)");
                votes.votes[static_cast<int>(q)].push_back(*a);
            }
        }
        conv.outcome_votes = std::move(votes);
    }

    if (j.contains("outcome_majority")) {
        const json& om = j["outcome_majority"];
        if (!om.is_object())
            throw ValidationError(origin + ": 'outcome_majority' must be an object");
        std::array<TriState, kOutcomeQuestionCount> majority{};
        for (OutcomeQuestion q : kOutcomeQuestions) {
            std::string key(outcome_question_key(q));
            const json& v = require(om, key.c_str(), origin);
            if (!v.is_string())
                throw ValidationError(origin + ": outcome majority must be a string");
            auto t = parse_tristate(v.get<std::string>());
            if (!t)
                throw ValidationError(origin + ": bad outcome majority '" + v.get<std::string>() + "'");
            majority[static_cast<int>(q)] = *t;
        }
        conv.outcome_majority = majority;
    }

    return conv;
}

std::vector<Conversation> parse_corpus(std::istream& in, const std::string& origin) {
    std::vector<Conversation> corpus;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        bool blank = true;
        for (char c : line)
            if (!is_space(c)) { blank = false; break; }
        if (blank) continue;
        std::string where = origin + ":" + std::to_string(line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(where + ": invalid JSON: " + e.what());
        }
        corpus.push_back(conversation_from_json(j, where));
    }
    return corpus;
}

std::vector<Conversation> load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open corpus file: " + path);
    return parse_corpus(in, path);
}

std::string format_corpus(const std::vector<Conversation>& corpus) {
    std::string out;
    for (const auto& conv : corpus) {
        out += conversation_to_json(conv).dump();
        out += '\n';
    }
    return out;
}

void save_corpus(const std::vector<Conversation>& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write corpus file: " + path);
    out << format_corpus(corpus);
}

}  // namespace dialoglab
