#include "dialoglab/annotation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dialoglab/error.hpp"

namespace dialoglab {

MajorityResult majority_vote(const std::vector<std::vector<ActSet>>& votes_per_turn, int threshold) {
    if (threshold < 1) throw ValidationError("majority threshold must be >= 1");
    MajorityResult result;
    std::size_t annotators = votes_per_turn.empty() ? 0 : votes_per_turn.front().size();
    for (std::size_t t = 0; t < votes_per_turn.size(); ++t) {
        if (votes_per_turn[t].size() != annotators)
            throw ValidationError("ragged annotator votes at turn " + std::to_string(t + 1));
        std::array<int, kActCount> counts{};
        for (const auto& set : votes_per_turn[t])
            for (Act a : set) ++counts[static_cast<std::size_t>(a)];
        ActSet majority;
        for (Act a : all_acts())
            if (counts[static_cast<std::size_t>(a)] >= threshold) majority.insert(a);
        if (majority.empty()) ++result.unlabeled_turn_count;
        result.per_turn_acts.push_back(std::move(majority));
    }
    return result;
}

TriState majority_answer(const std::vector<Answer>& votes) {
    int agree = 0, disagree = 0, cant = 0;
    for (Answer a : votes) {
        if (a == Answer::Agree) ++agree;
        else if (a == Answer::Disagree) ++disagree;
        else ++cant;
    }
    const int need = static_cast<int>(votes.size()) / 2 + 1;
    if (agree >= need) return TriState::Yes;
    if (disagree >= need) return TriState::No;
    return TriState::None;  // tie or cant_tell majority
}

double fleiss_kappa(const std::vector<std::vector<int>>& items) {
    if (items.empty()) throw ValidationError("fleiss_kappa: no items");
    const std::size_t categories = items.front().size();
    if (categories < 2) throw ValidationError("fleiss_kappa: need at least two categories");
    long raters = 0;
    for (int c : items.front()) raters += c;
    if (raters < 2) throw ValidationError("fleiss_kappa: need at least two raters");

    double p_bar_sum = 0.0;
    std::vector<double> category_mass(categories, 0.0);
    for (const auto& row : items) {
        if (row.size() != categories)
            throw ValidationError("fleiss_kappa: ragged category counts");
        long row_sum = 0;
        double sq = 0.0;
        for (std::size_t c = 0; c < categories; ++c) {
            if (row[c] < 0) throw ValidationError("fleiss_kappa: negative count");
            row_sum += row[c];
            sq += static_cast<double>(row[c]) * row[c];
            category_mass[c] += row[c];
        }
        if (row_sum != raters)
            throw ValidationError("fleiss_kappa: rater count differs across items");
        p_bar_sum += (sq - raters) / (static_cast<double>(raters) * (raters - 1));
    }

    const double n_items = static_cast<double>(items.size());
    double p_e = 0.0;
    for (double mass : category_mass) {
        double p = mass / (n_items * raters);
        p_e += p * p;
    }
    if (p_e >= 1.0)
        throw ValidationError("fleiss_kappa: undefined (all votes in a single category)");
    const double p_bar = p_bar_sum / n_items;
    return (p_bar - p_e) / (1.0 - p_e);
}

std::vector<std::vector<int>> binary_label_items(const std::vector<std::vector<ActSet>>& votes_per_turn) {
    std::vector<std::vector<int>> items;
    items.reserve(votes_per_turn.size() * kActCount);
    for (const auto& turn_votes : votes_per_turn) {
        const int raters = static_cast<int>(turn_votes.size());
        std::array<int, kActCount> counts{};
        for (const auto& set : turn_votes)
            for (Act a : set) ++counts[static_cast<std::size_t>(a)];
        for (Act a : all_acts()) {
            int yes = counts[static_cast<std::size_t>(a)];
            items.push_back({yes, raters - yes});
        }
    }
    return items;
}

std::vector<std::vector<int>> binary_label_items_for(const std::vector<std::vector<ActSet>>& votes_per_turn,
                                                     Act label) {
    std::vector<std::vector<int>> items;
    items.reserve(votes_per_turn.size());
    for (const auto& turn_votes : votes_per_turn) {
        int yes = 0;
        for (const auto& set : turn_votes) yes += set.count(label) ? 1 : 0;
        items.push_back({yes, static_cast<int>(turn_votes.size()) - yes});
    }
    return items;
}

std::string_view kappa_bin_name(KappaBin bin) {
    switch (bin) {
        case KappaBin::Slight: return "slight";
        case KappaBin::Fair: return "fair";
        case KappaBin::Moderate: return "moderate";
        case KappaBin::Substantial: return "substantial";
        case KappaBin::AlmostPerfect: return "almost_perfect";
    }
    return "";
}

KappaBin kappa_bin(double kappa) {
    if (kappa <= 0.20) return KappaBin::Slight;
    if (kappa <= 0.40) return KappaBin::Fair;
    if (kappa <= 0.60) return KappaBin::Moderate;
    if (kappa <= 0.80) return KappaBin::Substantial;
    return KappaBin::AlmostPerfect;
}

std::vector<double> annotator_quality(const std::vector<std::vector<ActSet>>& votes_per_turn,
                                      const MajorityResult& majority) {
    if (votes_per_turn.size() != majority.per_turn_acts.size())
        throw ValidationError("annotator_quality: votes and majority differ in turn count");
    const std::size_t annotators = votes_per_turn.empty() ? 0 : votes_per_turn.front().size();
    std::vector<long> subs(annotators, 0);
    long maj_total = 0;
    for (std::size_t t = 0; t < votes_per_turn.size(); ++t) {
        if (votes_per_turn[t].size() != annotators)
            throw ValidationError("annotator_quality: ragged votes at turn " + std::to_string(t + 1));
        const ActSet& maj = majority.per_turn_acts[t];
        maj_total += static_cast<long>(maj.size());
        for (std::size_t a = 0; a < annotators; ++a)
            for (Act act : maj) subs[a] += votes_per_turn[t][a].count(act) ? 1 : 0;
    }
    std::vector<double> ratios(annotators, 1.0);
    if (maj_total > 0)
        for (std::size_t a = 0; a < annotators; ++a)
            ratios[a] = static_cast<double>(subs[a]) / static_cast<double>(maj_total);
    return ratios;
}

std::vector<PairShare> cooccurrence_pairs(const MajorityResult& majority) {
    std::map<std::pair<Act, Act>, int> counts;
    int multi_turns = 0;
    for (const auto& acts : majority.per_turn_acts) {
        if (acts.size() < 2) continue;
        ++multi_turns;
        std::vector<Act> sorted(acts.begin(), acts.end());
        std::sort(sorted.begin(), sorted.end(),
                  [](Act a, Act b) { return act_name(a) < act_name(b); });
        for (std::size_t i = 0; i < sorted.size(); ++i)
            for (std::size_t j = i + 1; j < sorted.size(); ++j)
                ++counts[{sorted[i], sorted[j]}];
    }
    std::vector<PairShare> pairs;
    for (const auto& [pair, count] : counts) {
        PairShare share;
        share.first = pair.first;
        share.second = pair.second;
        share.count = count;
        share.percent = 100.0 * count / multi_turns;
        pairs.push_back(share);
    }
    std::sort(pairs.begin(), pairs.end(), [](const PairShare& a, const PairShare& b) {
        if (a.count != b.count) return a.count > b.count;
        if (act_name(a.first) != act_name(b.first)) return act_name(a.first) < act_name(b.first);
        return act_name(a.second) < act_name(b.second);
    });
    return pairs;
}

std::vector<LabelShare> label_distribution(const MajorityResult& majority) {
    std::array<int, kActCount> turn_counts{};
    long total_labels = 0;
    for (const auto& acts : majority.per_turn_acts) {
        for (Act a : acts) ++turn_counts[static_cast<std::size_t>(a)];
        total_labels += static_cast<long>(acts.size());
    }
    const int total_turns = static_cast<int>(majority.per_turn_acts.size());
    std::vector<LabelShare> shares;
    for (Act a : all_acts()) {
        int count = turn_counts[static_cast<std::size_t>(a)];
        if (count == 0) continue;
        LabelShare share;
        share.act = a;
        share.turn_count = count;
        share.percent_of_turns = 100.0 * count / total_turns;
        share.percent_of_annotations = 100.0 * count / static_cast<double>(total_labels);
        shares.push_back(share);
    }
    std::sort(shares.begin(), shares.end(), [](const LabelShare& a, const LabelShare& b) {
        if (a.turn_count != b.turn_count) return a.turn_count > b.turn_count;
        return act_name(a.act) < act_name(b.act);
    });
    return shares;
}

std::vector<std::vector<ActSet>> collect_votes(const std::vector<Conversation>& corpus) {
    std::vector<std::vector<ActSet>> votes;
    std::size_t annotators = 0;
    for (const auto& conv : corpus) {
        for (const auto& turn : conv.turns) {
            if (!turn.annotator_votes)
                throw ValidationError("conversation '" + conv.id + "' turn " +
                                      std::to_string(turn.index) + " has no annotator votes");
            if (annotators == 0) annotators = turn.annotator_votes->size();
            if (turn.annotator_votes->size() != annotators)
                throw ValidationError("conversation '" + conv.id +
                                      "': annotator count differs from the rest of the corpus");
            votes.push_back(*turn.annotator_votes);
        }
    }
    return votes;
}

MajorityResult corpus_majority(const std::vector<Conversation>& corpus, int threshold) {
    return majority_vote(collect_votes(corpus), threshold);
}

void aggregate_corpus(std::vector<Conversation>& corpus, int threshold) {
    for (auto& conv : corpus) {
        std::vector<std::vector<ActSet>> votes;
        for (const auto& turn : conv.turns) {
            if (!turn.annotator_votes)
                throw ValidationError("conversation '" + conv.id + "' turn " +
                                      std::to_string(turn.index) + " has no annotator votes");
            votes.push_back(*turn.annotator_votes);
        }
        MajorityResult maj = majority_vote(votes, threshold);
        for (std::size_t t = 0; t < conv.turns.size(); ++t)
            conv.turns[t].gold_acts = maj.per_turn_acts[t];
        if (conv.outcome_votes) {
            std::array<TriState, kOutcomeQuestionCount> outcome{};
            for (OutcomeQuestion q : kOutcomeQuestions)
                outcome[static_cast<int>(q)] =
                    majority_answer(conv.outcome_votes->votes[static_cast<int>(q)]);
            conv.outcome_majority = outcome;
        }
    }
}

AgreementReport agreement_report(const std::vector<Conversation>& corpus, int threshold) {
    AgreementReport report;
    auto votes = collect_votes(corpus);
    MajorityResult majority = majority_vote(votes, threshold);

    report.turn_count = static_cast<int>(votes.size());
    report.annotator_count = votes.empty() ? 0 : static_cast<int>(votes.front().size());
    report.unlabeled_turn_count = majority.unlabeled_turn_count;
    for (const auto& acts : majority.per_turn_acts)
        if (acts.size() > 1) ++report.multi_label_turn_count;

    report.overall_kappa = fleiss_kappa(binary_label_items(votes));
    for (Act a : all_acts()) {
        try {
            double k = fleiss_kappa(binary_label_items_for(votes, a));
            report.per_label_kappa[a] = k;
            report.kappa_bins[a] = kappa_bin(k);
        } catch (const ValidationError&) {
            // Label never voted (or always voted): kappa undefined, skip.
        }
    }

    // Question-level agreement, binary over the "agree" answer.
    for (OutcomeQuestion q : kOutcomeQuestions) {
        std::vector<std::vector<int>> items;
        for (const auto& conv : corpus) {
            if (!conv.outcome_votes) continue;
            const auto& answers = conv.outcome_votes->votes[static_cast<int>(q)];
            if (answers.empty()) continue;
            int agree = 0;
            for (Answer a : answers) agree += a == Answer::Agree ? 1 : 0;
            items.push_back({agree, static_cast<int>(answers.size()) - agree});
        }
        if (!items.empty()) {
            try {
                report.per_question_kappa[static_cast<int>(q)] = fleiss_kappa(items);
            } catch (const ValidationError&) {
            }
        }
    }

    report.annotator_ratios = annotator_quality(votes, majority);
    report.distribution = label_distribution(majority);
    report.pairs = cooccurrence_pairs(majority);
    return report;
}

}  // namespace dialoglab
