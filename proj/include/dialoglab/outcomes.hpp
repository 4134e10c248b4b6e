#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dialoglab/baseline.hpp"
#include "dialoglab/conversation.hpp"
#include "dialoglab/seqmodel.hpp"

namespace dialoglab {

// Conversation position bins: start = turns 1-3, mid = 4-6, end = 7-10.
enum class Position { Start, Mid, End };
std::string_view position_name(Position p);
std::optional<Position> parse_position(std::string_view name);
Position position_bin(int turn_index);  // throws outside 1..10

// "satisfied", "unresolved", "not_frustrated", ...
std::string outcome_polarity_name(OutcomeQuestion q, bool positive);
// Satisfied, resolved and not-frustrated are the desirable outcomes.
bool outcome_desirable(OutcomeQuestion q, bool positive);

struct OutcomeLabels {
    // conversation id -> true (agree majority) / false (disagree majority);
    // conversations without a strict majority or with cant_tell are absent.
    std::array<std::map<std::string, bool>, kOutcomeQuestionCount> by_question;
    std::array<int, kOutcomeQuestionCount> positive_count{};
    std::array<int, kOutcomeQuestionCount> negative_count{};
    std::array<int, kOutcomeQuestionCount> dropped_count{};
};

OutcomeLabels build_outcome_labels(const std::vector<Conversation>& corpus);

// Turn features folded to a conversation vector: binary families (bow,
// punct, ref, cue) by max, count families (emo) by sum, temporal by mean.
FeatureVector conversation_best_features(std::span<const FeatureVector> turn_features);

// Per-turn most probable act under the real-time decoder: the label with
// the maximum margin, ties to the canonically first name.
std::vector<std::string> predicted_primary_acts(const SequenceActModel& model,
                                                std::span<const FeatureVector> turn_features);

// One binary feature per turn, "act=<label>:turn_<k>", carrying the label
// with the maximum real-time margin (ties to the canonically first name).
FeatureVector conversation_act_features(std::span<const FeatureVector> turn_features,
                                        const SequenceActModel& model);

enum class OutcomeFeatureKind { BestFeatures, DialogueActs };
std::string_view outcome_feature_kind_name(OutcomeFeatureKind kind);

struct OutcomeDataset {
    OutcomeQuestion outcome = OutcomeQuestion::Satisfaction;
    OutcomeFeatureKind feature_kind = OutcomeFeatureKind::BestFeatures;
    std::vector<std::string> ids;
    std::vector<FeatureVector> features;
    std::vector<char> labels;  // 1 = positive (agree) outcome
    int positive_count = 0;
    int negative_count = 0;
};

struct OutcomeCVResult {
    double mean_weighted_f = 0.0;
    std::vector<double> fold_f;
    LinearModel final_model;  // trained on all data, used for rule mining
};

// Deterministic k-fold CV with a weighted binary F measure per fold, plus a
// final model over the full dataset. Errors on single-class data.
OutcomeCVResult train_outcome(const OutcomeDataset& dataset, int folds, const HingeConfig& config);

struct ActionableRule {
    ClassLabel act;
    Position position = Position::Start;
    OutcomeQuestion outcome = OutcomeQuestion::Satisfaction;
    bool positive = true;   // polarity on the outcome question
    double weight = 0.0;    // summed group weight (signed)
    std::string example;    // optional sample turn text
};

// Groups act=<label>:turn_<k> weights by (act, position bin); emits the
// top_k positive and top_k negative groups, descending |weight|.
std::vector<ActionableRule> extract_rules(const std::map<std::string, double>& weights,
                                          OutcomeQuestion outcome, int top_k);

// Attaches an example turn text to each rule: the first turn in the corpus
// whose predicted act and position match.
void attach_rule_examples(std::vector<ActionableRule>& rules,
                          const std::vector<Conversation>& corpus,
                          const std::vector<std::vector<std::string>>& predicted_acts);

}  // namespace dialoglab
