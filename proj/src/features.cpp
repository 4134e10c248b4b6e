#include "dialoglab/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dialoglab/error.hpp"

namespace dialoglab {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string lowercase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool all_punct(const std::string& token) {
    return std::all_of(token.begin(), token.end(), is_punct);
}

void split_raw_token(const std::string& raw, std::vector<std::string>& out) {
    if (raw == "<link>" || raw == "<img>") {
        out.push_back(raw);
        return;
    }
    std::size_t begin = 0, end = raw.size();
    std::vector<std::string> leading, trailing;
    while (begin < end && is_punct(raw[begin])) leading.emplace_back(1, raw[begin++]);
    while (end > begin && is_punct(raw[end - 1])) trailing.emplace_back(1, raw[--end]);
    for (auto& t : leading) out.push_back(std::move(t));
    if (end > begin) out.push_back(raw.substr(begin, end - begin));
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) out.push_back(std::move(*it));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::string lower = lowercase(text);
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < lower.size()) {
        while (i < lower.size() && is_space(lower[i])) ++i;
        std::size_t start = i;
        while (i < lower.size() && !is_space(lower[i])) ++i;
        if (i > start) split_raw_token(lower.substr(start, i - start), tokens);
    }
    return tokens;
}

EmotionLexicon EmotionLexicon::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open lexicon file: " + path);
    return from_stream(in, path);
}

EmotionLexicon EmotionLexicon::from_stream(std::istream& in, const std::string& origin) {
    EmotionLexicon lex;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string word, tag, flag;
        if (!std::getline(fields, word, '\t') || !std::getline(fields, tag, '\t') ||
            !std::getline(fields, flag)) {
            throw ValidationError(origin + ":" + std::to_string(line_no) +
                                  ": expected word<TAB>category<TAB>0|1");
        }
        if (flag != "0" && flag != "1")
            throw ValidationError(origin + ":" + std::to_string(line_no) + ": flag must be 0 or 1");
        if (flag == "0") continue;
        bool known = std::any_of(kEmotionTags.begin(), kEmotionTags.end(),
                                 [&](std::string_view t) { return t == tag; });
        if (!known)
            throw ValidationError(origin + ":" + std::to_string(line_no) + ": unknown category '" +
                                  tag + "'");
        lex.add(lowercase(word), tag);
    }
    return lex;
}

void EmotionLexicon::add(std::string word, std::string_view tag) {
    for (std::size_t i = 0; i < kEmotionTags.size(); ++i) {
        if (kEmotionTags[i] == tag) {
            words_[lowercase(word)] |= static_cast<std::uint16_t>(1u << i);
            return;
        }
    }
    throw ValidationError("unknown emotion category '" + std::string(tag) + "'");
}

std::uint16_t EmotionLexicon::tags_for(const std::string& word) const {
    auto it = words_.find(word);
    return it == words_.end() ? 0 : it->second;
}

Vocabulary Vocabulary::build(const std::vector<Conversation>& corpus, int min_count) {
    std::map<std::string, int> counts;
    for (const auto& conv : corpus)
        for (const auto& turn : conv.turns)
            for (const auto& token : tokenize(turn.text)) ++counts[token];
    return from_counts(counts, min_count);
}

Vocabulary Vocabulary::from_counts(const std::map<std::string, int>& counts, int min_count) {
    Vocabulary vocab;
    int next = 0;
    for (const auto& [token, count] : counts)
        if (count >= min_count) vocab.index_.emplace(token, next++);
    return vocab;
}

namespace {

const std::set<std::string_view> kOpeningWords{"hi", "hello", "greetings", "hey"};
const std::set<std::string_view> kClosingWords{"bye", "goodbye"};
const std::set<std::string_view> kYesNoStarters{"do", "did", "can",  "could", "would", "will",
                                                "is", "are", "was",  "were",  "have",  "has"};
const std::set<std::string_view> kWhStarters{"who", "what", "where", "when", "why", "how"};
const std::set<std::string_view> kYesWords{"yes", "yeah", "yep"};
const std::set<std::string_view> kNoWords{"no", "nope", "nah"};
const std::set<std::string_view> kSecondPerson{"you", "your", "you're"};

// First token of each sentence, sentences split on . ? !
std::vector<std::string> sentence_starters(std::string_view text) {
    std::vector<std::string> starters;
    std::string sentence;
    auto flush = [&] {
        auto tokens = tokenize(sentence);
        if (!tokens.empty()) starters.push_back(tokens.front());
        sentence.clear();
    };
    for (char c : text) {
        if (c == '.' || c == '?' || c == '!') {
            flush();
        } else {
            sentence.push_back(c);
        }
    }
    flush();
    return starters;
}

}  // namespace

FeatureVector extract_turn_features(const Turn& turn, std::optional<std::int64_t> prev_turn_ts,
                                    const EmotionLexicon& lexicon, const Vocabulary* vocab,
                                    const ExtractOptions& opts) {
    FeatureVector fv;

    std::int64_t response = 0;
    if (prev_turn_ts) response = std::max<std::int64_t>(0, turn.ts - *prev_turn_ts);
    response = std::min(response, opts.response_cap);
    fv.set("temporal:response_secs", static_cast<double>(response));
    fv.set("temporal:log_response", std::log1p(static_cast<double>(response)));

    auto tokens = tokenize(turn.text);
    for (const auto& token : tokens) {
        if (!opts.bow_include_punct && all_punct(token)) continue;
        if (vocab && !vocab->contains(token)) continue;
        fv.set("bow:" + token, 1.0);
    }

    if (turn.text.find('?') != std::string::npos) fv.set("punct:question_mark", 1.0);
    if (turn.text.find('!') != std::string::npos) fv.set("punct:exclamation", 1.0);

    bool second_person = false;
    std::array<int, kEmotionTags.size()> emotion_counts{};
    bool thanks = false, apology = false;
    bool opening = false, closing = false;
    for (const auto& token : tokens) {
        if (kSecondPerson.count(token)) second_person = true;
        if (kOpeningWords.count(token)) opening = true;
        if (kClosingWords.count(token)) closing = true;
        if (token.rfind("thank", 0) == 0) thanks = true;
        if (token == "sorry" || token.rfind("apolog", 0) == 0) apology = true;
        std::uint16_t mask = lexicon.tags_for(token);
        for (std::size_t i = 0; i < kEmotionTags.size(); ++i)
            if (mask & (1u << i)) ++emotion_counts[i];
    }
    if (second_person) fv.set("ref:second_person", 1.0);
    for (std::size_t i = 0; i < kEmotionTags.size(); ++i)
        if (emotion_counts[i] > 0)
            fv.set("emo:" + std::string(kEmotionTags[i]), static_cast<double>(emotion_counts[i]));

    if (opening) fv.set("cue:opening", 1.0);
    if (closing) fv.set("cue:closing", 1.0);
    if (thanks) fv.set("cue:thanks", 1.0);
    if (apology) fv.set("cue:apology", 1.0);

    for (const auto& starter : sentence_starters(turn.text)) {
        if (kYesNoStarters.count(starter)) fv.set("cue:yesno_question", 1.0);
        if (kWhStarters.count(starter)) fv.set("cue:wh_question", 1.0);
    }

    if (!tokens.empty()) {
        if (kYesWords.count(tokens.front())) fv.set("cue:yes_answer", 1.0);
        if (kNoWords.count(tokens.front())) fv.set("cue:no_answer", 1.0);
    }

    if (opts.speaker_feature && turn.speaker == Speaker::Agent) fv.set("ref:speaker_agent", 1.0);

    return fv;
}

std::vector<FeatureVector> extract_conversation_features(const Conversation& conv,
                                                         const EmotionLexicon& lexicon,
                                                         const Vocabulary* vocab,
                                                         const ExtractOptions& opts) {
    std::vector<FeatureVector> features;
    features.reserve(conv.turns.size());
    std::optional<std::int64_t> prev_ts;
    for (const auto& turn : conv.turns) {
        features.push_back(extract_turn_features(turn, prev_ts, lexicon, vocab, opts));
        prev_ts = turn.ts;
    }
    return features;
}

}  // namespace dialoglab
