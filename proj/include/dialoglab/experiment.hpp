#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dialoglab/baseline.hpp"
#include "dialoglab/conversation.hpp"
#include "dialoglab/eval.hpp"
#include "dialoglab/seqmodel.hpp"

namespace dialoglab {

enum class SpeakerMode { AllTurns, CustomerOnly, AgentOnly };
std::string_view speaker_mode_name(SpeakerMode mode);
std::optional<SpeakerMode> parse_speaker_mode(std::string_view name);

enum class Learner { Sequential, NaiveBayes, LinearLargeMargin };
std::string_view learner_name(Learner learner);
std::optional<Learner> parse_learner(std::string_view name);

struct SplitSpec {
    enum class Kind { Random7030, ByCompany };
    Kind kind = Kind::Random7030;
    std::uint64_t seed = 0;
    std::string company;

    // "random:SEED" or "company:NAME"
    static SplitSpec parse(const std::string& text);
    std::string to_string() const;
};

// Deterministic train/test partition; ByCompany holds out the named company
// and errors with the available tags when it is unknown.
std::pair<std::vector<const Conversation*>, std::vector<const Conversation*>> split_corpus(
    const std::vector<Conversation>& corpus, const SplitSpec& split);

struct ExperimentConfig {
    ClassSetKind class_set = ClassSetKind::SixClass;
    SpeakerMode mode = SpeakerMode::AllTurns;
    SplitSpec split;
    Learner learner = Learner::Sequential;
    SeqTrainConfig seq;
    HingeConfig hinge;
    int vocab_min_count = 1;
    int majority_threshold = 3;
    ExtractOptions extract;
};

struct ExperimentResult {
    EvalResult eval;
    std::size_t train_conversations = 0;
    std::size_t test_conversations = 0;
    std::optional<SequenceActModel> model;  // sequential learner only
};

// Full harness: resolve gold from votes where needed, split, build the
// vocabulary on the training fold, extract features, train the selected
// learner, and score the held-out fold. In speaker modes only that
// speaker's turns are trained on and scored, with the chain running over
// those turns alone.
ExperimentResult run_experiment(const std::vector<Conversation>& corpus,
                                const EmotionLexicon& lexicon, const ExperimentConfig& config);

// Per-conversation feature/gold rows used by the harness and the CLI.
struct PreparedConversation {
    const Conversation* conv = nullptr;
    std::vector<FeatureVector> features;  // selected turns only
    std::vector<ActSet> gold;
    std::vector<int> turn_indices;        // original 1-based indices
};

std::vector<PreparedConversation> prepare_conversations(
    const std::vector<const Conversation*>& convs, SpeakerMode mode, const EmotionLexicon& lexicon,
    const Vocabulary* vocab, int majority_threshold, const ExtractOptions& opts);

}  // namespace dialoglab
