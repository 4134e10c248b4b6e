#include "dialoglab/experiment.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "dialoglab/annotation.hpp"
#include "dialoglab/error.hpp"
#include "dialoglab/rng.hpp"

namespace dialoglab {

std::string_view speaker_mode_name(SpeakerMode mode) {
    switch (mode) {
        case SpeakerMode::AllTurns: return "all";
        case SpeakerMode::CustomerOnly: return "customer";
        case SpeakerMode::AgentOnly: return "agent";
    }
    return "";
}

std::optional<SpeakerMode> parse_speaker_mode(std::string_view name) {
    if (name == "all") return SpeakerMode::AllTurns;
    if (name == "customer") return SpeakerMode::CustomerOnly;
    if (name == "agent") return SpeakerMode::AgentOnly;
    return std::nullopt;
}

std::string_view learner_name(Learner learner) {
    switch (learner) {
        case Learner::Sequential: return "seq";
        case Learner::NaiveBayes: return "nb";
        case Learner::LinearLargeMargin: return "svm";
    }
    return "";
}

std::optional<Learner> parse_learner(std::string_view name) {
    if (name == "seq") return Learner::Sequential;
    if (name == "nb") return Learner::NaiveBayes;
    if (name == "svm") return Learner::LinearLargeMargin;
    return std::nullopt;
}

SplitSpec SplitSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ValidationError("bad split '" + text + "' (expected random:SEED or company:NAME)");
    std::string head = text.substr(0, colon);
    std::string tail = text.substr(colon + 1);
    SplitSpec spec;
    if (head == "random") {
        spec.kind = Kind::Random7030;
        try {
            spec.seed = std::stoull(tail);
        } catch (const std::exception&) {
            throw ValidationError("bad split seed '" + tail + "'");
        }
    } else if (head == "company") {
        spec.kind = Kind::ByCompany;
        if (tail.empty()) throw ValidationError("split company name is empty");
        spec.company = tail;
    } else {
        throw ValidationError("bad split '" + text + "' (expected random:SEED or company:NAME)");
    }
    return spec;
}

std::string SplitSpec::to_string() const {
    if (kind == Kind::Random7030) return "random:" + std::to_string(seed);
    return "company:" + company;
}

std::pair<std::vector<const Conversation*>, std::vector<const Conversation*>> split_corpus(
    const std::vector<Conversation>& corpus, const SplitSpec& split) {
    std::vector<const Conversation*> train, test;
    if (split.kind == SplitSpec::Kind::Random7030) {
        std::vector<std::size_t> order(corpus.size());
        std::iota(order.begin(), order.end(), 0);
        Rng rng(split.seed);
        rng.shuffle(order);
        const std::size_t train_count = corpus.size() * 7 / 10;
        for (std::size_t i = 0; i < order.size(); ++i)
            (i < train_count ? train : test).push_back(&corpus[order[i]]);
    } else {
        std::set<std::string> companies;
        for (const auto& conv : corpus) {
            companies.insert(conv.company);
            (conv.company == split.company ? test : train).push_back(&conv);
        }
        if (test.empty()) {
            std::ostringstream msg;
            msg << "unknown company '" << split.company << "'; available:";
            for (const auto& c : companies) msg << ' ' << c;
            throw ValidationError(msg.str());
        }
    }
    return {std::move(train), std::move(test)};
}

namespace {

bool turn_selected(const Turn& turn, SpeakerMode mode) {
    switch (mode) {
        case SpeakerMode::AllTurns: return true;
        case SpeakerMode::CustomerOnly: return turn.speaker == Speaker::Customer;
        case SpeakerMode::AgentOnly: return turn.speaker == Speaker::Agent;
    }
    return true;
}

std::vector<ActSet> conversation_gold(const Conversation& conv, int threshold) {
    std::vector<ActSet> gold;
    gold.reserve(conv.turns.size());
    bool need_votes = false;
    for (const auto& turn : conv.turns)
        if (!turn.gold_acts) need_votes = true;
    if (!need_votes) {
        for (const auto& turn : conv.turns) gold.push_back(*turn.gold_acts);
        return gold;
    }
    std::vector<std::vector<ActSet>> votes;
    for (const auto& turn : conv.turns) {
        if (!turn.annotator_votes)
            throw ValidationError("conversation '" + conv.id + "' has neither gold acts nor votes");
        votes.push_back(*turn.annotator_votes);
    }
    return majority_vote(votes, threshold).per_turn_acts;
}

}  // namespace

std::vector<PreparedConversation> prepare_conversations(
    const std::vector<const Conversation*>& convs, SpeakerMode mode, const EmotionLexicon& lexicon,
    const Vocabulary* vocab, int majority_threshold, const ExtractOptions& opts) {
    std::vector<PreparedConversation> prepared;
    prepared.reserve(convs.size());
    for (const Conversation* conv : convs) {
        auto all_features = extract_conversation_features(*conv, lexicon, vocab, opts);
        auto gold = conversation_gold(*conv, majority_threshold);
        PreparedConversation p;
        p.conv = conv;
        for (std::size_t i = 0; i < conv->turns.size(); ++i) {
            if (!turn_selected(conv->turns[i], mode)) continue;
            p.features.push_back(std::move(all_features[i]));
            p.gold.push_back(gold[i]);
            p.turn_indices.push_back(conv->turns[i].index);
        }
        if (!p.features.empty()) prepared.push_back(std::move(p));
    }
    return prepared;
}

namespace {

Vocabulary build_mode_vocabulary(const std::vector<const Conversation*>& train, SpeakerMode mode,
                                 int min_count) {
    std::map<std::string, int> counts;
    for (const Conversation* conv : train)
        for (const auto& turn : conv->turns) {
            if (!turn_selected(turn, mode)) continue;
            for (const auto& token : tokenize(turn.text)) ++counts[token];
        }
    return Vocabulary::from_counts(counts, min_count);
}

}  // namespace

ExperimentResult run_experiment(const std::vector<Conversation>& corpus,
                                const EmotionLexicon& lexicon, const ExperimentConfig& config) {
    if (corpus.empty()) throw ValidationError("run_experiment: empty corpus");
    const ClassSet& set = class_set(config.class_set);

    auto [train_convs, test_convs] = split_corpus(corpus, config.split);
    Vocabulary vocab = build_mode_vocabulary(train_convs, config.mode, config.vocab_min_count);

    auto train = prepare_conversations(train_convs, config.mode, lexicon, &vocab,
                                       config.majority_threshold, config.extract);
    auto test = prepare_conversations(test_convs, config.mode, lexicon, &vocab,
                                      config.majority_threshold, config.extract);
    if (train.empty()) throw ValidationError("run_experiment: no training turns after filtering");

    ExperimentResult result;
    result.train_conversations = train.size();
    result.test_conversations = test.size();

    std::vector<std::vector<char>> pred_rows;
    std::vector<ActSet> gold_acts;
    for (const auto& p : test)
        for (const auto& g : p.gold) gold_acts.push_back(g);

    if (config.learner == Learner::Sequential) {
        std::vector<SequenceExample> examples;
        examples.reserve(train.size());
        for (auto& p : train) examples.push_back(SequenceExample{p.features, p.gold});
        SequenceActModel model = train_sequential(set, examples, config.seq);
        model.mode = std::string(speaker_mode_name(config.mode));
        model.vocabulary_note = "vocab_size=" + std::to_string(vocab.size()) +
                                " min_count=" + std::to_string(config.vocab_min_count);
        for (const auto& p : test) {
            auto preds = predict_conversation(model, p.features);
            for (auto& tp : preds) pred_rows.push_back(std::move(tp.states));
        }
        result.model = std::move(model);
    } else {
        std::vector<const FeatureVector*> xs;
        std::vector<std::vector<char>> ys;
        for (const auto& p : train)
            for (std::size_t i = 0; i < p.features.size(); ++i) {
                xs.push_back(&p.features[i]);
                ys.push_back(gold_row(set, p.gold[i]));
            }
        BaselineKind kind = config.learner == Learner::NaiveBayes ? BaselineKind::NaiveBayes
                                                                  : BaselineKind::LinearLargeMargin;
        MultiLabelBaseline model = train_baseline(kind, set, xs, ys, config.hinge);
        for (const auto& p : test)
            for (const auto& x : p.features) {
                std::vector<char> row(set.labels.size(), 0);
                for (std::size_t l = 0; l < set.labels.size(); ++l)
                    row[l] = model.predict(l, x) ? 1 : 0;
                pred_rows.push_back(std::move(row));
            }
    }

    result.eval = evaluate(pred_rows, gold_acts, set);
    return result;
}

}  // namespace dialoglab
