#pragma once

#include <span>
#include <string>
#include <vector>

#include "dialoglab/acts.hpp"
#include "dialoglab/classset.hpp"

namespace dialoglab {

struct LabelMetrics {
    std::string label;
    long tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    long support = 0;  // gold positives
};

struct EvalResult {
    std::vector<LabelMetrics> per_label;  // class-set order
    double weighted_f_macro = 0.0;        // support-weighted mean of per-label F1
    long turn_count = 0;
};

// Aggregated turns x N binary matrices. Zero-denominator metrics read 0.
EvalResult evaluate_matrix(std::span<const std::vector<char>> predictions,
                           std::span<const std::vector<char>> gold, const ClassSet& set);

// Gold acts are reduced through gold_row() first.
EvalResult evaluate(std::span<const std::vector<char>> predictions,
                    std::span<const ActSet> gold_acts, const ClassSet& set);

}  // namespace dialoglab
