#pragma once

#include <array>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "dialoglab/conversation.hpp"

namespace dialoglab {

struct MajorityResult {
    std::vector<ActSet> per_turn_acts;
    int unlabeled_turn_count = 0;
    std::array<TriState, kOutcomeQuestionCount> per_question_majority{TriState::None, TriState::None,
                                                                      TriState::None};
};

// An act is gold for a turn iff at least `threshold` annotators selected it
// (3-of-5 by default). Every turn must carry the same annotator count.
MajorityResult majority_vote(const std::vector<std::vector<ActSet>>& votes_per_turn, int threshold);

// Strict majority (> half) over agree/disagree/cant_tell; TriState::None when
// there is no strict majority or the majority answer is cant_tell.
TriState majority_answer(const std::vector<Answer>& votes);

// Fleiss' kappa over an item x category count matrix. Every row must sum to
// the same rater count n >= 2. Throws ValidationError when expected agreement
// is 1 (all mass in a single category), where kappa is undefined.
double fleiss_kappa(const std::vector<std::vector<int>>& item_category_counts);

// One binary item per (turn, label) pair: [votes-for, votes-against].
std::vector<std::vector<int>> binary_label_items(const std::vector<std::vector<ActSet>>& votes_per_turn);
std::vector<std::vector<int>> binary_label_items_for(const std::vector<std::vector<ActSet>>& votes_per_turn,
                                                     Act label);

enum class KappaBin { Slight, Fair, Moderate, Substantial, AlmostPerfect };
std::string_view kappa_bin_name(KappaBin bin);
// Landis-Koch ranges: <=0.20 slight, <=0.40 fair, <=0.60 moderate,
// <=0.80 substantial, above that almost perfect.
KappaBin kappa_bin(double kappa);

// Per-annotator SUBS/MAJ ratio: of all majority acts over the turns the
// annotator saw, the fraction they personally selected. 1.0 when MAJ = 0.
std::vector<double> annotator_quality(const std::vector<std::vector<ActSet>>& votes_per_turn,
                                      const MajorityResult& majority);

struct PairShare {
    Act first = Act::GreetingOpening;   // canonical-name order within the pair
    Act second = Act::GreetingOpening;
    int count = 0;
    double percent = 0.0;  // of multi-label turns
};
// Unordered act pairs across turns with >= 2 majority acts, descending by
// share, ties broken by canonical pair names.
std::vector<PairShare> cooccurrence_pairs(const MajorityResult& majority);

struct LabelShare {
    Act act = Act::GreetingOpening;
    int turn_count = 0;
    double percent_of_turns = 0.0;        // may sum past 100 across labels
    double percent_of_annotations = 0.0;  // sums to 100 up to rounding
};
std::vector<LabelShare> label_distribution(const MajorityResult& majority);

struct AgreementReport {
    int turn_count = 0;
    int annotator_count = 0;
    int unlabeled_turn_count = 0;
    int multi_label_turn_count = 0;
    double overall_kappa = 0.0;
    std::map<Act, double> per_label_kappa;  // labels with undefined kappa omitted
    std::map<Act, KappaBin> kappa_bins;
    std::array<std::optional<double>, kOutcomeQuestionCount> per_question_kappa;
    std::vector<double> annotator_ratios;
    std::vector<LabelShare> distribution;
    std::vector<PairShare> pairs;
};

// Flattens turn votes across the corpus. Throws when a conversation lacks
// votes or annotator counts disagree.
std::vector<std::vector<ActSet>> collect_votes(const std::vector<Conversation>& corpus);

MajorityResult corpus_majority(const std::vector<Conversation>& corpus, int threshold);

// Fills gold_acts and outcome_majority in place from the annotator votes.
void aggregate_corpus(std::vector<Conversation>& corpus, int threshold);

AgreementReport agreement_report(const std::vector<Conversation>& corpus, int threshold);

}  // namespace dialoglab
