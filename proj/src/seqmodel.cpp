#include "dialoglab/seqmodel.hpp"

#include <fstream>
#include <numeric>

#include "dialoglab/error.hpp"
#include "dialoglab/rng.hpp"

namespace dialoglab {

double LabelChain::emission_score(const FeatureVector& x) const {
    double s = bias;
    for (const auto& [name, value] : x.entries) {
        auto it = emission.find(name);
        if (it != emission.end()) s += it->second * value;
    }
    return s;
}

namespace {

std::vector<int> viterbi_impl(const LabelChain& chain, std::span<const FeatureVector> turns,
                              std::span<const int> gold, double cost_weight) {
    const std::size_t n = turns.size();
    if (n == 0) return {};
    std::vector<std::array<double, 2>> best(n);
    std::vector<std::array<int, 2>> back(n);

    auto node = [&](std::size_t i, int s) {
        double score = s == 1 ? chain.emission_score(turns[i]) : 0.0;
        if (!gold.empty() && s != gold[i]) score += cost_weight;
        return score;
    };

    for (int s = 0; s < 2; ++s) best[0][s] = chain.init[s] + node(0, s);
    for (std::size_t i = 1; i < n; ++i) {
        for (int s = 0; s < 2; ++s) {
            // previous state 0 first so ties keep the absent backpointer
            double from0 = best[i - 1][0] + chain.trans[0][s];
            double from1 = best[i - 1][1] + chain.trans[1][s];
            if (from1 > from0) {
                best[i][s] = from1 + node(i, s);
                back[i][s] = 1;
            } else {
                best[i][s] = from0 + node(i, s);
                back[i][s] = 0;
            }
        }
    }

    std::vector<int> path(n);
    path[n - 1] = best[n - 1][1] > best[n - 1][0] ? 1 : 0;
    for (std::size_t i = n - 1; i > 0; --i) path[i - 1] = back[i][path[i]];
    return path;
}

}  // namespace

std::vector<int> viterbi_path(const LabelChain& chain, std::span<const FeatureVector> turns) {
    return viterbi_impl(chain, turns, {}, 0.0);
}

std::vector<int> viterbi_path_cost_augmented(const LabelChain& chain,
                                             std::span<const FeatureVector> turns,
                                             std::span<const int> gold, double cost_weight) {
    if (gold.size() != turns.size())
        throw ValidationError("cost-augmented decode: gold length mismatch");
    return viterbi_impl(chain, turns, gold, cost_weight);
}

std::vector<GreedyStep> greedy_commit_path(const LabelChain& chain,
                                           std::span<const FeatureVector> turns) {
    std::vector<GreedyStep> steps;
    steps.reserve(turns.size());
    int prev = 0;
    for (std::size_t i = 0; i < turns.size(); ++i) {
        double present = chain.emission_score(turns[i]);
        double absent = 0.0;
        if (i == 0) {
            present += chain.init[1];
            absent += chain.init[0];
        } else {
            present += chain.trans[prev][1];
            absent += chain.trans[prev][0];
        }
        GreedyStep step;
        step.margin = present - absent;
        step.state = step.margin > 0.0 ? 1 : 0;
        prev = step.state;
        steps.push_back(step);
    }
    return steps;
}

namespace {

// Averaged-perceptron accumulator for one label chain. Sparse emissions use
// lazy catch-up against the step counter; the handful of dense parameters
// accumulate every step.
struct ChainTrainer {
    LabelChain raw;
    std::map<std::string, double> emission_acc;
    std::map<std::string, long> emission_mark;
    double bias_acc = 0.0;
    std::array<double, 2> init_acc{0.0, 0.0};
    std::array<std::array<double, 2>, 2> trans_acc{{{0.0, 0.0}, {0.0, 0.0}}};
    long steps = 0;

    void add_emission(const std::string& name, double delta) {
        long& mark = emission_mark[name];
        emission_acc[name] += raw.emission[name] * static_cast<double>(steps - mark);
        mark = steps;
        raw.emission[name] += delta;
    }

    void end_step() {
        ++steps;
        bias_acc += raw.bias;
        for (int s = 0; s < 2; ++s) init_acc[s] += raw.init[s];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) trans_acc[a][b] += raw.trans[a][b];
    }

    LabelChain averaged() const {
        LabelChain avg;
        if (steps == 0) return avg;
        const double n = static_cast<double>(steps);
        for (const auto& [name, w] : raw.emission) {
            long mark = 0;
            auto it = emission_mark.find(name);
            if (it != emission_mark.end()) mark = it->second;
            double total = w * static_cast<double>(steps - mark);
            auto ait = emission_acc.find(name);
            if (ait != emission_acc.end()) total += ait->second;
            if (total != 0.0) avg.emission[name] = total / n;
        }
        avg.bias = bias_acc / n;
        for (int s = 0; s < 2; ++s) avg.init[s] = init_acc[s] / n;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) avg.trans[a][b] = trans_acc[a][b] / n;
        return avg;
    }
};

LabelChain train_label_chain(const ClassSet& set, const ClassLabel& label,
                             const std::vector<SequenceExample>& data,
                             const SeqTrainConfig& config, std::uint64_t seed) {
    // gold state sequences for this label
    std::vector<std::vector<int>> gold;
    gold.reserve(data.size());
    for (const auto& example : data) {
        std::vector<int> states(example.gold.size());
        for (std::size_t i = 0; i < example.gold.size(); ++i)
            states[i] = label_applies(set, label, example.gold[i]) ? 1 : 0;
        gold.push_back(std::move(states));
    }

    ChainTrainer trainer;
    Rng rng(seed);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t idx : order) {
            const auto& example = data[idx];
            const auto& y = gold[idx];
            if (example.features.empty()) {
                trainer.end_step();
                continue;
            }
            std::vector<int> decoded = viterbi_path_cost_augmented(
                trainer.raw, example.features, y, config.cost_weight);
            if (decoded != y) {
                for (std::size_t i = 0; i < y.size(); ++i) {
                    if (y[i] != decoded[i]) {
                        const double dir = y[i] == 1 ? 1.0 : -1.0;
                        for (const auto& [name, value] : example.features[i].entries)
                            trainer.add_emission(name, dir * value);
                        trainer.raw.bias += dir;
                    }
                }
                if (config.learn_transitions) {
                    trainer.raw.init[y[0]] += 1.0;
                    trainer.raw.init[decoded[0]] -= 1.0;
                    for (std::size_t i = 1; i < y.size(); ++i) {
                        trainer.raw.trans[y[i - 1]][y[i]] += 1.0;
                        trainer.raw.trans[decoded[i - 1]][decoded[i]] -= 1.0;
                    }
                }
            }
            trainer.end_step();
        }
    }
    return trainer.averaged();
}

}  // namespace

const ClassSet& SequenceActModel::resolve_class_set() const {
    auto kind = parse_class_set(class_set_name);
    if (!kind) throw ValidationError("model names unknown class set '" + class_set_name + "'");
    return class_set(*kind);
}

SequenceActModel train_sequential(const ClassSet& set, const std::vector<SequenceExample>& data,
                                  const SeqTrainConfig& config) {
    if (data.empty()) throw ValidationError("train_sequential: empty training set");
    for (const auto& example : data)
        if (example.features.size() != example.gold.size())
            throw ValidationError("train_sequential: features and gold differ in turn count");

    SequenceActModel model;
    model.class_set_name = set.name;
    model.hyper = config;
    for (std::size_t l = 0; l < set.labels.size(); ++l) {
        model.label_names.emplace_back(set.labels[l].name());
        model.chains.push_back(
            train_label_chain(set, set.labels[l], data, config, config.seed * 1000003ULL + l));
    }
    return model;
}

std::vector<TurnPrediction> predict_conversation(const SequenceActModel& model,
                                                 std::span<const FeatureVector> turns) {
    std::vector<TurnPrediction> preds(turns.size());
    for (auto& p : preds) {
        p.states.resize(model.label_count());
        p.margins.resize(model.label_count());
    }
    for (std::size_t l = 0; l < model.chains.size(); ++l) {
        auto steps = greedy_commit_path(model.chains[l], turns);
        for (std::size_t i = 0; i < steps.size(); ++i) {
            preds[i].states[l] = static_cast<char>(steps[i].state);
            preds[i].margins[l] = steps[i].margin;
        }
    }
    return preds;
}

TurnPrediction predict_realtime(const SequenceActModel& model,
                                std::span<const FeatureVector> prefix) {
    if (prefix.empty()) throw ValidationError("predict_realtime: empty prefix");
    auto preds = predict_conversation(model, prefix);
    return preds.back();
}

nlohmann::json model_to_json(const SequenceActModel& model) {
    nlohmann::json j;
    j["format"] = "dialoglab-actmodel";
    j["version"] = model.format_version;
    j["class_set"] = model.class_set_name;
    j["mode"] = model.mode;
    j["max_chain_length"] = model.max_chain_length;
    j["vocabulary_note"] = model.vocabulary_note;
    j["hyper"] = {{"epochs", model.hyper.epochs},
                  {"seed", model.hyper.seed},
                  {"cost_weight", model.hyper.cost_weight},
                  {"learn_transitions", model.hyper.learn_transitions}};
    nlohmann::json labels = nlohmann::json::array();
    for (std::size_t l = 0; l < model.chains.size(); ++l) {
        const LabelChain& chain = model.chains[l];
        nlohmann::json entry;
        entry["name"] = model.label_names[l];
        entry["bias"] = chain.bias;
        entry["init"] = {chain.init[0], chain.init[1]};
        entry["trans"] = {{chain.trans[0][0], chain.trans[0][1]},
                          {chain.trans[1][0], chain.trans[1][1]}};
        entry["emission"] = chain.emission;  // std::map keeps keys sorted
        labels.push_back(std::move(entry));
    }
    j["labels"] = std::move(labels);
    return j;
}

SequenceActModel model_from_json(const nlohmann::json& j, const std::string& origin) {
    if (!j.is_object() || j.value("format", "") != "dialoglab-actmodel")
        throw ValidationError(origin + ": not a dialoglab act model file");
    SequenceActModel model;
    model.format_version = j.value("version", 0);
    if (model.format_version != 1)
        throw ValidationError(origin + ": unsupported model version " +
                              std::to_string(model.format_version));
    model.class_set_name = j.at("class_set").get<std::string>();
    model.mode = j.value("mode", "all");
    model.max_chain_length = j.value("max_chain_length", 10);
    model.vocabulary_note = j.value("vocabulary_note", "");
    const auto& hyper = j.at("hyper");
    model.hyper.epochs = hyper.at("epochs").get<int>();
    model.hyper.seed = hyper.at("seed").get<std::uint64_t>();
    model.hyper.cost_weight = hyper.at("cost_weight").get<double>();
    model.hyper.learn_transitions = hyper.at("learn_transitions").get<bool>();
    for (const auto& entry : j.at("labels")) {
        model.label_names.push_back(entry.at("name").get<std::string>());
        LabelChain chain;
        chain.bias = entry.at("bias").get<double>();
        chain.init = {entry.at("init")[0].get<double>(), entry.at("init")[1].get<double>()};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) chain.trans[a][b] = entry.at("trans")[a][b].get<double>();
        for (const auto& [name, value] : entry.at("emission").items())
            chain.emission[name] = value.get<double>();
        model.chains.push_back(std::move(chain));
    }
    if (model.chains.empty()) throw ValidationError(origin + ": model has no labels");
    return model;
}

void save_model(const SequenceActModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write model file: " + path);
    out << model_to_json(model).dump(2) << '\n';
}

SequenceActModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": invalid JSON: " + e.what());
    }
    return model_from_json(j, path);
}

}  // namespace dialoglab
