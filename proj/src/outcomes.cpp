#include "dialoglab/outcomes.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "dialoglab/annotation.hpp"
#include "dialoglab/error.hpp"
#include "dialoglab/rng.hpp"

namespace dialoglab {

std::string_view position_name(Position p) {
    switch (p) {
        case Position::Start: return "start";
        case Position::Mid: return "mid";
        case Position::End: return "end";
    }
    return "";
}

std::optional<Position> parse_position(std::string_view name) {
    if (name == "start") return Position::Start;
    if (name == "mid") return Position::Mid;
    if (name == "end") return Position::End;
    return std::nullopt;
}

Position position_bin(int turn_index) {
    if (turn_index >= 1 && turn_index <= 3) return Position::Start;
    if (turn_index >= 4 && turn_index <= 6) return Position::Mid;
    if (turn_index >= 7 && turn_index <= 10) return Position::End;
    throw ValidationError("turn index " + std::to_string(turn_index) +
                          " outside the 1..10 position bins");
}

std::string outcome_polarity_name(OutcomeQuestion q, bool positive) {
    switch (q) {
        case OutcomeQuestion::Satisfaction: return positive ? "satisfied" : "unsatisfied";
        case OutcomeQuestion::Resolution: return positive ? "resolved" : "unresolved";
        case OutcomeQuestion::Frustration: return positive ? "frustrated" : "not_frustrated";
    }
    return "";
}

bool outcome_desirable(OutcomeQuestion q, bool positive) {
    return q == OutcomeQuestion::Frustration ? !positive : positive;
}

OutcomeLabels build_outcome_labels(const std::vector<Conversation>& corpus) {
    OutcomeLabels labels;
    for (const auto& conv : corpus) {
        if (!conv.outcome_votes) {
            std::cerr << "[dialoglab] warning: conversation '" << conv.id
                      << "' has no outcome votes; skipped\n";
            continue;
        }
        for (OutcomeQuestion q : kOutcomeQuestions) {
            const int qi = static_cast<int>(q);
            const auto& answers = conv.outcome_votes->votes[qi];
            if (answers.empty()) {
                ++labels.dropped_count[qi];
                continue;
            }
            switch (majority_answer(answers)) {
                case TriState::Yes:
                    labels.by_question[qi][conv.id] = true;
                    ++labels.positive_count[qi];
                    break;
                case TriState::No:
                    labels.by_question[qi][conv.id] = false;
                    ++labels.negative_count[qi];
                    break;
                case TriState::None:
                    ++labels.dropped_count[qi];
                    break;
            }
        }
    }
    return labels;
}

namespace {

std::string_view feature_family(const std::string& name) {
    auto colon = name.find(':');
    return std::string_view(name).substr(0, colon == std::string::npos ? name.size() : colon);
}

}  // namespace

FeatureVector conversation_best_features(std::span<const FeatureVector> turn_features) {
    FeatureVector out;
    if (turn_features.empty()) return out;
    const double n = static_cast<double>(turn_features.size());
    for (const auto& turn : turn_features) {
        for (const auto& [name, value] : turn.entries) {
            auto family = feature_family(name);
            if (family == "emo") {
                out.bump(name, value);
            } else if (family == "temporal") {
                out.bump(name, value / n);
            } else {
                auto it = out.entries.find(name);
                if (it == out.entries.end() || it->second < value) out.entries[name] = value;
            }
        }
    }
    return out;
}

std::vector<std::string> predicted_primary_acts(const SequenceActModel& model,
                                                std::span<const FeatureVector> turn_features) {
    auto preds = predict_conversation(model, turn_features);
    std::vector<std::string> acts;
    acts.reserve(preds.size());
    for (const auto& pred : preds) {
        std::size_t best = 0;
        for (std::size_t l = 1; l < pred.margins.size(); ++l) {
            if (pred.margins[l] > pred.margins[best] ||
                (pred.margins[l] == pred.margins[best] &&
                 model.label_names[l] < model.label_names[best]))
                best = l;
        }
        acts.push_back(model.label_names[best]);
    }
    return acts;
}

FeatureVector conversation_act_features(std::span<const FeatureVector> turn_features,
                                        const SequenceActModel& model) {
    if (static_cast<int>(turn_features.size()) > model.max_chain_length)
        throw ValidationError("conversation has " + std::to_string(turn_features.size()) +
                              " turns but the model supports chains up to " +
                              std::to_string(model.max_chain_length));
    FeatureVector out;
    auto acts = predicted_primary_acts(model, turn_features);
    for (std::size_t i = 0; i < acts.size(); ++i)
        out.set("act=" + acts[i] + ":turn_" + std::to_string(i + 1), 1.0);
    return out;
}

std::string_view outcome_feature_kind_name(OutcomeFeatureKind kind) {
    return kind == OutcomeFeatureKind::BestFeatures ? "best" : "acts";
}

namespace {

double weighted_binary_f(std::span<const char> pred, std::span<const char> gold) {
    long tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] && gold[i]) ++tp;
        else if (pred[i] && !gold[i]) ++fp;
        else if (!pred[i] && gold[i]) ++fn;
        else ++tn;
    }
    auto f1 = [](long tp_, long fp_, long fn_) {
        double p = tp_ + fp_ > 0 ? static_cast<double>(tp_) / (tp_ + fp_) : 0.0;
        double r = tp_ + fn_ > 0 ? static_cast<double>(tp_) / (tp_ + fn_) : 0.0;
        return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    };
    const long support_pos = tp + fn;
    const long support_neg = fp + tn;
    if (support_pos + support_neg == 0) return 0.0;
    // negative class scored as its own one-vs-rest task
    double f_pos = f1(tp, fp, fn);
    double f_neg = f1(tn, fn, fp);
    return (support_pos * f_pos + support_neg * f_neg) /
           static_cast<double>(support_pos + support_neg);
}

}  // namespace

OutcomeCVResult train_outcome(const OutcomeDataset& dataset, int folds, const HingeConfig& config) {
    if (dataset.features.size() != dataset.labels.size())
        throw ValidationError("train_outcome: features and labels differ in length");
    if (folds < 2) throw ValidationError("train_outcome: need at least 2 folds");
    if (dataset.positive_count == 0 || dataset.negative_count == 0)
        throw ValidationError("train_outcome: dataset has a single class for outcome '" +
                              std::string(outcome_question_key(dataset.outcome)) + "'");

    const std::size_t n = dataset.features.size();
    std::vector<int> fold_of(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(config.seed);
    rng.shuffle(order);
    for (std::size_t i = 0; i < n; ++i) fold_of[order[i]] = static_cast<int>(i % folds);

    OutcomeCVResult result;
    for (int f = 0; f < folds; ++f) {
        std::vector<const FeatureVector*> train_x;
        std::vector<char> train_y;
        std::vector<std::size_t> test_idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (fold_of[i] == f) {
                test_idx.push_back(i);
            } else {
                train_x.push_back(&dataset.features[i]);
                train_y.push_back(dataset.labels[i]);
            }
        }
        if (test_idx.empty() || train_x.empty()) continue;
        HingeConfig fold_config = config;
        fold_config.seed = config.seed * 7919ULL + static_cast<std::uint64_t>(f);
        LinearModel model = train_linear_hinge(train_x, train_y, fold_config);
        std::vector<char> pred, gold;
        for (std::size_t i : test_idx) {
            pred.push_back(model.predict(dataset.features[i]) ? 1 : 0);
            gold.push_back(dataset.labels[i]);
        }
        result.fold_f.push_back(weighted_binary_f(pred, gold));
    }
    if (result.fold_f.empty()) throw ValidationError("train_outcome: all folds were empty");
    result.mean_weighted_f =
        std::accumulate(result.fold_f.begin(), result.fold_f.end(), 0.0) / result.fold_f.size();

    std::vector<const FeatureVector*> all_x;
    for (const auto& x : dataset.features) all_x.push_back(&x);
    result.final_model = train_linear_hinge(all_x, dataset.labels, config);
    return result;
}

std::vector<ActionableRule> extract_rules(const std::map<std::string, double>& weights,
                                          OutcomeQuestion outcome, int top_k) {
    struct GroupKey {
        std::string act;
        Position position;
        bool operator<(const GroupKey& other) const {
            if (act != other.act) return act < other.act;
            return static_cast<int>(position) < static_cast<int>(other.position);
        }
    };
    std::map<GroupKey, double> groups;
    bool any_act_feature = false;
    for (const auto& [name, weight] : weights) {
        if (name.rfind("act=", 0) != 0) continue;
        auto colon = name.find(":turn_");
        if (colon == std::string::npos)
            throw ValidationError("malformed act feature '" + name + "'");
        any_act_feature = true;
        std::string act = name.substr(4, colon - 4);
        int turn = 0;
        try {
            turn = std::stoi(name.substr(colon + 6));
        } catch (const std::exception&) {
            throw ValidationError("malformed act feature '" + name + "'");
        }
        groups[GroupKey{std::move(act), position_bin(turn)}] += weight;
    }
    if (!any_act_feature)
        throw ValidationError("extract_rules: model has no act=<label>:turn_<k> features");

    std::vector<ActionableRule> positives, negatives;
    for (const auto& [key, weight] : groups) {
        if (weight == 0.0) continue;
        ActionableRule rule;
        if (key.act == "other") {
            rule.act = ClassLabel{};
        } else {
            auto act = parse_act(key.act);
            if (!act) throw ValidationError("unknown act '" + key.act + "' in rule feature");
            rule.act = ClassLabel{*act};
        }
        rule.position = key.position;
        rule.outcome = outcome;
        rule.positive = weight > 0.0;
        rule.weight = weight;
        (weight > 0.0 ? positives : negatives).push_back(std::move(rule));
    }
    auto by_magnitude = [](const ActionableRule& a, const ActionableRule& b) {
        if (std::abs(a.weight) != std::abs(b.weight)) return std::abs(a.weight) > std::abs(b.weight);
        if (a.act.name() != b.act.name()) return a.act.name() < b.act.name();
        return static_cast<int>(a.position) < static_cast<int>(b.position);
    };
    std::sort(positives.begin(), positives.end(), by_magnitude);
    std::sort(negatives.begin(), negatives.end(), by_magnitude);
    if (static_cast<int>(positives.size()) > top_k) positives.resize(top_k);
    if (static_cast<int>(negatives.size()) > top_k) negatives.resize(top_k);

    std::vector<ActionableRule> rules;
    rules.reserve(positives.size() + negatives.size());
    for (auto& r : positives) rules.push_back(std::move(r));
    for (auto& r : negatives) rules.push_back(std::move(r));
    std::sort(rules.begin(), rules.end(), by_magnitude);
    return rules;
}

void attach_rule_examples(std::vector<ActionableRule>& rules,
                          const std::vector<Conversation>& corpus,
                          const std::vector<std::vector<std::string>>& predicted_acts) {
    if (corpus.size() != predicted_acts.size())
        throw ValidationError("attach_rule_examples: corpus and predictions differ in length");
    for (auto& rule : rules) {
        if (!rule.example.empty()) continue;
        for (std::size_t c = 0; c < corpus.size() && rule.example.empty(); ++c) {
            for (std::size_t t = 0; t < predicted_acts[c].size(); ++t) {
                if (predicted_acts[c][t] != rule.act.name()) continue;
                int index = corpus[c].turns[t].index;
                if (index > 10) continue;
                if (position_bin(index) != rule.position) continue;
                rule.example = corpus[c].turns[t].text;
                break;
            }
        }
    }
}

}  // namespace dialoglab
