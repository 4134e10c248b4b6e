#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dialoglab/classset.hpp"
#include "dialoglab/features.hpp"

namespace dialoglab {

// Binary linear chain for one label. State 1 = label present. The node
// score of state 1 is emission . x + bias; state 0 scores zero. init and
// trans add the start / previous-state transition scores.
struct LabelChain {
    std::map<std::string, double> emission;
    double bias = 0.0;
    std::array<double, 2> init{0.0, 0.0};
    std::array<std::array<double, 2>, 2> trans{{{0.0, 0.0}, {0.0, 0.0}}};

    double emission_score(const FeatureVector& x) const;
};

// Highest-scoring full state sequence; ties resolve toward state 0.
std::vector<int> viterbi_path(const LabelChain& chain, std::span<const FeatureVector> turns);

// Viterbi with a Hamming cost bonus on states that differ from gold,
// used by the large-margin training updates.
std::vector<int> viterbi_path_cost_augmented(const LabelChain& chain,
                                             std::span<const FeatureVector> turns,
                                             std::span<const int> gold, double cost_weight);

struct GreedyStep {
    int state = 0;
    double margin = 0.0;  // score(present) - score(absent) at commit time
};

// Real-time decoding: each turn is decided from the committed prefix only
// and never revised. Ties commit to absent.
std::vector<GreedyStep> greedy_commit_path(const LabelChain& chain,
                                           std::span<const FeatureVector> turns);

struct SeqTrainConfig {
    int epochs = 10;
    std::uint64_t seed = 1;
    double cost_weight = 1.0;
    bool learn_transitions = true;
};

struct SequenceActModel {
    int format_version = 1;
    std::string class_set_name;
    std::vector<std::string> label_names;  // class-set order, catch-all included
    std::vector<LabelChain> chains;
    SeqTrainConfig hyper;
    std::string mode = "all";
    int max_chain_length = 10;
    std::string vocabulary_note;

    std::size_t label_count() const { return label_names.size(); }
    const ClassSet& resolve_class_set() const;
};

// One training conversation: per-turn features and per-turn gold acts.
struct SequenceExample {
    std::vector<FeatureVector> features;
    std::vector<ActSet> gold;
};

// Per-label cost-augmented averaged structured perceptron. Deterministic
// given seed and data order.
SequenceActModel train_sequential(const ClassSet& set, const std::vector<SequenceExample>& data,
                                  const SeqTrainConfig& config);

struct TurnPrediction {
    std::vector<char> states;    // per label
    std::vector<double> margins; // per label
};

std::vector<TurnPrediction> predict_conversation(const SequenceActModel& model,
                                                 std::span<const FeatureVector> turns);

// Prediction for the last turn of the prefix; earlier turns stay committed.
TurnPrediction predict_realtime(const SequenceActModel& model,
                                std::span<const FeatureVector> prefix);

nlohmann::json model_to_json(const SequenceActModel& model);
SequenceActModel model_from_json(const nlohmann::json& j, const std::string& origin);
void save_model(const SequenceActModel& model, const std::string& path);
SequenceActModel load_model(const std::string& path);

}  // namespace dialoglab
