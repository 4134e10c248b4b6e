#include "dialoglab/eval.hpp"

#include "dialoglab/error.hpp"

namespace dialoglab {

EvalResult evaluate_matrix(std::span<const std::vector<char>> predictions,
                           std::span<const std::vector<char>> gold, const ClassSet& set) {
    if (predictions.size() != gold.size())
        throw ValidationError("evaluate: prediction and gold turn counts differ (" +
                              std::to_string(predictions.size()) + " vs " +
                              std::to_string(gold.size()) + ")");
    const std::size_t n_labels = set.labels.size();
    EvalResult result;
    result.turn_count = static_cast<long>(predictions.size());
    result.per_label.resize(n_labels);

    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i].size() != n_labels || gold[i].size() != n_labels)
            throw ValidationError("evaluate: row width does not match the class set");
        for (std::size_t l = 0; l < n_labels; ++l) {
            LabelMetrics& m = result.per_label[l];
            bool p = predictions[i][l] != 0;
            bool g = gold[i][l] != 0;
            if (p && g) ++m.tp;
            else if (p && !g) ++m.fp;
            else if (!p && g) ++m.fn;
            else ++m.tn;
        }
    }

    double weighted_sum = 0.0;
    long support_sum = 0;
    for (std::size_t l = 0; l < n_labels; ++l) {
        LabelMetrics& m = result.per_label[l];
        m.label = std::string(set.labels[l].name());
        m.support = m.tp + m.fn;
        m.precision = (m.tp + m.fp) > 0 ? static_cast<double>(m.tp) / (m.tp + m.fp) : 0.0;
        m.recall = m.support > 0 ? static_cast<double>(m.tp) / m.support : 0.0;
        m.f1 = (m.precision + m.recall) > 0.0
                   ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
                   : 0.0;
        weighted_sum += static_cast<double>(m.support) * m.f1;
        support_sum += m.support;
    }
    result.weighted_f_macro = support_sum > 0 ? weighted_sum / static_cast<double>(support_sum) : 0.0;
    return result;
}

EvalResult evaluate(std::span<const std::vector<char>> predictions,
                    std::span<const ActSet> gold_acts, const ClassSet& set) {
    std::vector<std::vector<char>> gold;
    gold.reserve(gold_acts.size());
    for (const auto& acts : gold_acts) gold.push_back(gold_row(set, acts));
    return evaluate_matrix(predictions, gold, set);
}

}  // namespace dialoglab
