#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "hyperego/egonet.hpp"
#include "hyperego/features.hpp"
#include "hyperego/mlp.hpp"

namespace hyperego {

struct LabeledExample {
    /// FeatureVector::values(), possibly projected to a feature subset.
    std::vector<double> features;
    /// 1 = true order, 0 = shuffled.
    int label = 0;
    NodeId ego_id = 0;
    EgoKind kind = EgoKind::star;
};

/// Per-feature standardization fitted on training rows. Zero-variance
/// features get scale 1.
struct Normalizer {
    std::vector<double> mean;
    std::vector<double> scale;

    static Normalizer fit(std::span<const LabeledExample> examples);
    std::vector<double> apply(std::span<const double> x) const;
};

struct OrderingModel {
    EgoKind kind = EgoKind::star;
    mlp::Network network;
    Normalizer normalizer;
    std::uint64_t seed = 0;

    std::vector<std::size_t> architecture() const { return network.architecture(); }
    std::size_t input_size() const { return network.input_size(); }
};

struct TrainConfig {
    /// {100, 24} for the large datasets, {12, 6} for the small email set;
    /// empty gives the logistic-regression baseline.
    std::vector<std::size_t> hidden_sizes{100, 24};
    double learning_rate = 1e-3;
    std::size_t minibatch = 200;
    std::size_t max_epochs = 200;
    /// Epoch-loss improvement below this counts as no progress.
    double tolerance = 1e-4;
    /// Consecutive no-progress epochs tolerated before stopping.
    std::size_t patience = 10;
    double l2 = 1e-4;
    std::uint64_t seed = 0;
};

/// Uniform non-identity shuffle with ordinals re-indexed 1..m.
/// Throws ContractError for m < 2.
std::vector<Simplex> shuffle_ego(std::span<const Simplex> ordering, std::uint64_t seed);

/// One positive (true order) and one negative (shuffled) example per ego.
/// Throws ContractError on empty input or on egos of a different kind.
std::vector<LabeledExample> make_training_set(std::span<const EgoNetwork> egos, EgoKind kind, std::uint64_t seed);

/// Keeps only the given feature columns (single-feature ablation etc).
std::vector<LabeledExample> select_features(std::span<const LabeledExample> examples,
                                            std::span<const std::size_t> columns);

/// Minimizes binary cross-entropy with minibatch Adam. Throws TrainingError
/// when fewer than two examples or only one label is present.
OrderingModel train(std::span<const LabeledExample> examples, const TrainConfig& cfg);

/// Probability that `features` come from a correctly ordered ego-network.
/// Throws SchemaMismatchError on a dimension mismatch.
double predict_proba(const OrderingModel& model, std::span<const double> features);
inline double predict_proba(const OrderingModel& model, const FeatureVector& f) {
    auto v = f.values();
    return predict_proba(model, v);
}

/// Fraction classified correctly at threshold 0.5.
double accuracy(const OrderingModel& model, std::span<const LabeledExample> examples);

struct CrossValidationReport {
    std::vector<double> fold_accuracy;
    double mean = 0.0;
    double stddev = 0.0;
};

/// k-fold cross-validation with ego-grouped folds. Throws ContractError when
/// k < 2 or there are fewer distinct egos than folds.
CrossValidationReport cross_validate(std::span<const LabeledExample> examples, std::size_t k,
                                     const TrainConfig& cfg);

/// Accuracy on another dataset's examples with no retraining. Throws
/// SchemaMismatchError unless kind and feature width match the model.
double transfer_evaluate(const OrderingModel& model, std::span<const LabeledExample> examples);

/// Versioned text format; doubles are written with 17 significant digits.
void save_model(std::ostream& out, const OrderingModel& model);
OrderingModel load_model(std::istream& in);

void write_examples_csv(std::ostream& out, std::span<const LabeledExample> examples);

}  // namespace hyperego
