#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dialoglab/classset.hpp"
#include "dialoglab/features.hpp"

namespace dialoglab {

struct LinearModel {
    std::map<std::string, double> weights;
    double bias = 0.0;

    double score(const FeatureVector& x) const;
    // Ties go to the negative class.
    bool predict(const FeatureVector& x) const { return score(x) > 0.0; }
};

struct HingeConfig {
    double lambda = 1e-4;
    int epochs = 10;
    std::uint64_t seed = 1;
    double eta0 = 0.1;
};

// Regularized hinge loss by seeded stochastic subgradient descent with
// iterate averaging; the returned model is the averaged one. The optional
// callback sees the averaged snapshot after every epoch.
LinearModel train_linear_hinge(std::span<const FeatureVector* const> xs, std::span<const char> ys,
                               const HingeConfig& config,
                               const std::function<void(int, const LinearModel&)>& on_epoch = {});

// Multinomial Naive Bayes with add-one smoothing; features must be >= 0.
struct NaiveBayesModel {
    double log_prior[2] = {0.0, 0.0};
    std::map<std::string, double> log_lik[2];
    double unseen_log_lik[2] = {0.0, 0.0};
    bool constant = false;  // degenerate single-class training data
    bool constant_value = false;

    double score(const FeatureVector& x, int cls) const;
    bool predict(const FeatureVector& x) const;
};

NaiveBayesModel train_naive_bayes(std::span<const FeatureVector* const> xs, std::span<const char> ys);

enum class BaselineKind { NaiveBayes, LinearLargeMargin };

// One independent binary model per class-set label; no sequence information.
struct MultiLabelBaseline {
    BaselineKind kind = BaselineKind::LinearLargeMargin;
    std::vector<LinearModel> linear;
    std::vector<NaiveBayesModel> bayes;

    bool predict(std::size_t label_idx, const FeatureVector& x) const;
};

// gold_rows[i][l] is the binary gold for turn i, label l (see gold_row()).
MultiLabelBaseline train_baseline(BaselineKind kind, const ClassSet& set,
                                  std::span<const FeatureVector* const> xs,
                                  std::span<const std::vector<char>> gold_rows,
                                  const HingeConfig& config);

}  // namespace dialoglab
