#include "dialoglab/baseline.hpp"

#include <cmath>
#include <iostream>
#include <numeric>

#include "dialoglab/error.hpp"
#include "dialoglab/rng.hpp"

namespace dialoglab {

double LinearModel::score(const FeatureVector& x) const {
    double s = bias;
    for (const auto& [name, value] : x.entries) {
        auto it = weights.find(name);
        if (it != weights.end()) s += it->second * value;
    }
    return s;
}

namespace {

// Sparse averaged-SGD state. Raw weights carry a global scale factor so the
// L2 shrink is O(1); averages accumulate lazily per feature against the
// running sum of scales.
struct AveragedSgd {
    std::map<std::string, double> raw;      // effective weight = raw * scale
    std::map<std::string, double> acc;      // sum over steps of effective weight
    std::map<std::string, double> acc_mark; // scale-sum at last catch-up
    double scale = 1.0;
    double scale_sum = 0.0;  // sum of `scale` after each completed step
    double bias = 0.0;
    double bias_acc = 0.0;
    long steps = 0;

    void catch_up(const std::string& name) {
        double& mark = acc_mark[name];
        auto it = raw.find(name);
        if (it != raw.end()) acc[name] += it->second * (scale_sum - mark);
        mark = scale_sum;
    }

    void add(const std::string& name, double delta) {
        catch_up(name);
        raw[name] += delta / scale;
    }

    void end_step() {
        scale_sum += scale;
        bias_acc += bias;
        ++steps;
    }

    LinearModel averaged() const {
        LinearModel model;
        if (steps == 0) return model;
        for (const auto& [name, w] : raw) {
            double mark = 0.0;
            auto it = acc_mark.find(name);
            if (it != acc_mark.end()) mark = it->second;
            double total = w * (scale_sum - mark);
            auto ait = acc.find(name);
            if (ait != acc.end()) total += ait->second;
            if (total != 0.0) model.weights[name] = total / static_cast<double>(steps);
        }
        model.bias = bias_acc / static_cast<double>(steps);
        return model;
    }
};

}  // namespace

LinearModel train_linear_hinge(std::span<const FeatureVector* const> xs, std::span<const char> ys,
                               const HingeConfig& config,
                               const std::function<void(int, const LinearModel&)>& on_epoch) {
    if (xs.size() != ys.size()) throw ValidationError("train_linear_hinge: x/y size mismatch");
    if (xs.empty()) throw ValidationError("train_linear_hinge: empty training set");

    long positives = std::accumulate(ys.begin(), ys.end(), 0L);
    if (positives == 0 || positives == static_cast<long>(ys.size())) {
        LinearModel constant;
        constant.bias = positives == 0 ? -1.0 : 1.0;
        return constant;
    }

    AveragedSgd sgd;
    Rng rng(config.seed);
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);

    long t = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t idx : order) {
            ++t;
            const double eta = config.eta0 / (1.0 + config.eta0 * config.lambda * t);
            const FeatureVector& x = *xs[idx];
            const double y = ys[idx] ? 1.0 : -1.0;

            double s = sgd.bias;
            for (const auto& [name, value] : x.entries) {
                auto it = sgd.raw.find(name);
                if (it != sgd.raw.end()) s += it->second * sgd.scale * value;
            }

            sgd.scale *= 1.0 - eta * config.lambda;
            if (y * s < 1.0) {
                for (const auto& [name, value] : x.entries) sgd.add(name, eta * y * value);
                sgd.bias += eta * y;  // bias is not regularized
            }
            sgd.end_step();
        }
        if (on_epoch) on_epoch(epoch, sgd.averaged());
    }
    return sgd.averaged();
}

double NaiveBayesModel::score(const FeatureVector& x, int cls) const {
    double s = log_prior[cls];
    for (const auto& [name, value] : x.entries) {
        auto it = log_lik[cls].find(name);
        if (it != log_lik[cls].end()) s += value * it->second;
        // feature unseen in training: skipped for both classes
    }
    return s;
}

bool NaiveBayesModel::predict(const FeatureVector& x) const {
    if (constant) return constant_value;
    return score(x, 1) > score(x, 0);
}

NaiveBayesModel train_naive_bayes(std::span<const FeatureVector* const> xs, std::span<const char> ys) {
    if (xs.size() != ys.size()) throw ValidationError("train_naive_bayes: x/y size mismatch");
    if (xs.empty()) throw ValidationError("train_naive_bayes: empty training set");

    NaiveBayesModel model;
    long counts[2] = {0, 0};
    std::map<std::string, double> mass[2];
    double total[2] = {0.0, 0.0};
    std::map<std::string, char> vocab;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        int cls = ys[i] ? 1 : 0;
        ++counts[cls];
        for (const auto& [name, value] : xs[i]->entries) {
            if (value < 0.0)
                throw ValidationError("train_naive_bayes: negative feature value for '" + name + "'");
            mass[cls][name] += value;
            total[cls] += value;
            vocab[name] = 1;
        }
    }
    if (counts[0] == 0 || counts[1] == 0) {
        model.constant = true;
        model.constant_value = counts[1] > 0;
        return model;
    }

    const double v = static_cast<double>(vocab.size());
    for (int cls = 0; cls < 2; ++cls) {
        model.log_prior[cls] = std::log(static_cast<double>(counts[cls]) / xs.size());
        model.unseen_log_lik[cls] = std::log(1.0 / (total[cls] + v));
        for (const auto& [name, _] : vocab) {
            double m = 0.0;
            auto it = mass[cls].find(name);
            if (it != mass[cls].end()) m = it->second;
            model.log_lik[cls][name] = std::log((m + 1.0) / (total[cls] + v));
        }
    }
    return model;
}

bool MultiLabelBaseline::predict(std::size_t label_idx, const FeatureVector& x) const {
    if (kind == BaselineKind::NaiveBayes) return bayes[label_idx].predict(x);
    return linear[label_idx].predict(x);
}

MultiLabelBaseline train_baseline(BaselineKind kind, const ClassSet& set,
                                  std::span<const FeatureVector* const> xs,
                                  std::span<const std::vector<char>> gold_rows,
                                  const HingeConfig& config) {
    if (xs.size() != gold_rows.size())
        throw ValidationError("train_baseline: features and gold rows differ in length");
    MultiLabelBaseline model;
    model.kind = kind;
    for (std::size_t l = 0; l < set.labels.size(); ++l) {
        std::vector<char> ys(xs.size());
        long positives = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            ys[i] = gold_rows[i][l];
            positives += ys[i];
        }
        if (positives == 0)
            std::cerr << "[dialoglab] warning: label '" << set.labels[l].name()
                      << "' has no positive training examples; using an always-negative model\n";
        if (kind == BaselineKind::NaiveBayes) {
            model.bayes.push_back(train_naive_bayes(xs, ys));
        } else {
            HingeConfig per_label = config;
            per_label.seed = config.seed * 1000003ULL + l;
            model.linear.push_back(train_linear_hinge(xs, ys, per_label));
        }
    }
    return model;
}

}  // namespace dialoglab
