#include "hyperego/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "hyperego/error.hpp"
#include "hyperego/random.hpp"

namespace hyperego {

std::vector<Simplex> shuffle_ego(std::span<const Simplex> ordering, std::uint64_t seed) {
    if (ordering.size() < 2) {
        throw ContractError("cannot shuffle an ordering of fewer than 2 simplices");
    }
    Rng rng(seed);
    auto perm = random_nonidentity_permutation(ordering.size(), rng);
    std::vector<Simplex> out;
    out.reserve(ordering.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        out.push_back(ordering[perm[i]]);
        out.back().ordinal_time = static_cast<std::int64_t>(i + 1);
    }
    return out;
}

std::vector<LabeledExample> make_training_set(std::span<const EgoNetwork> egos, EgoKind kind, std::uint64_t seed) {
    if (egos.empty()) {
        throw ContractError("no ego-networks to build a training set from");
    }
    std::vector<LabeledExample> out;
    out.reserve(2 * egos.size());
    for (std::size_t i = 0; i < egos.size(); ++i) {
        const auto& ego = egos[i];
        if (ego.kind != kind) {
            throw ContractError("ego " + std::to_string(ego.ego) + " is " + std::string(to_string(ego.kind)) +
                                ", expected " + std::string(to_string(kind)));
        }
        out.push_back({featurize(ego).values(), 1, ego.ego, kind});
        auto shuffled = shuffle_ego(ego.simplices, derive_seed(seed, i));
        out.push_back({featurize(SetSequence(shuffled), kind, ego.ego).values(), 0, ego.ego, kind});
    }
    return out;
}

std::vector<LabeledExample> select_features(std::span<const LabeledExample> examples,
                                            std::span<const std::size_t> columns) {
    std::vector<LabeledExample> out;
    out.reserve(examples.size());
    for (const auto& ex : examples) {
        LabeledExample p = ex;
        p.features.clear();
        for (std::size_t c : columns) {
            if (c >= ex.features.size()) {
                throw SchemaMismatchError("feature column " + std::to_string(c) + " out of range");
            }
            p.features.push_back(ex.features[c]);
        }
        out.push_back(std::move(p));
    }
    return out;
}

Normalizer Normalizer::fit(std::span<const LabeledExample> examples) {
    Normalizer norm;
    if (examples.empty()) {
        return norm;
    }
    const std::size_t d = examples.front().features.size();
    norm.mean.assign(d, 0.0);
    norm.scale.assign(d, 0.0);
    const auto n = static_cast<double>(examples.size());
    for (const auto& ex : examples) {
        for (std::size_t j = 0; j < d; ++j) norm.mean[j] += ex.features[j];
    }
    for (auto& m : norm.mean) m /= n;
    for (const auto& ex : examples) {
        for (std::size_t j = 0; j < d; ++j) {
            double diff = ex.features[j] - norm.mean[j];
            norm.scale[j] += diff * diff;
        }
    }
    for (auto& s : norm.scale) {
        s = std::sqrt(s / n);
        if (s == 0.0) s = 1.0;
    }
    return norm;
}

std::vector<double> Normalizer::apply(std::span<const double> x) const {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = (x[j] - mean[j]) / scale[j];
    }
    return out;
}

OrderingModel train(std::span<const LabeledExample> examples, const TrainConfig& cfg) {
    if (examples.size() < 2) {
        throw TrainingError("need at least 2 examples to train, got " + std::to_string(examples.size()));
    }
    const bool has_pos = std::any_of(examples.begin(), examples.end(), [](const auto& e) { return e.label == 1; });
    const bool has_neg = std::any_of(examples.begin(), examples.end(), [](const auto& e) { return e.label == 0; });
    if (!has_pos || !has_neg) {
        throw TrainingError("training set contains a single class");
    }
    if (cfg.minibatch == 0 || cfg.max_epochs == 0 || cfg.learning_rate <= 0.0) {
        throw TrainingError("training configuration values must be positive");
    }
    const std::size_t d = examples.front().features.size();
    for (const auto& ex : examples) {
        if (ex.features.size() != d) {
            throw SchemaMismatchError("examples have inconsistent feature widths");
        }
    }

    OrderingModel model;
    model.kind = examples.front().kind;
    model.seed = cfg.seed;
    model.normalizer = Normalizer::fit(examples);

    const std::size_t n = examples.size();
    std::vector<double> rows;
    rows.reserve(n * d);
    std::vector<int> labels;
    labels.reserve(n);
    for (const auto& ex : examples) {
        auto z = model.normalizer.apply(ex.features);
        rows.insert(rows.end(), z.begin(), z.end());
        labels.push_back(ex.label);
    }

    Rng rng(cfg.seed);
    model.network = mlp::init_network(d, cfg.hidden_sizes, rng);
    mlp::Adam adam(model.network, cfg.learning_rate);
    mlp::Gradient grad;

    const std::size_t batch = std::min(cfg.minibatch, n);
    auto order = identity_permutation(n);
    std::vector<double> batch_rows;
    std::vector<int> batch_labels;
    double best_loss = std::numeric_limits<double>::infinity();
    std::size_t stalled = 0;

    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < n; start += batch) {
            const std::size_t stop = std::min(start + batch, n);
            batch_rows.clear();
            batch_labels.clear();
            for (std::size_t k = start; k < stop; ++k) {
                const std::size_t idx = order[k];
                batch_rows.insert(batch_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(idx * d),
                                  rows.begin() + static_cast<std::ptrdiff_t>((idx + 1) * d));
                batch_labels.push_back(labels[idx]);
            }
            double loss = mlp::loss_and_gradient(model.network, batch_rows, batch_labels, cfg.l2, grad);
            epoch_loss += loss * static_cast<double>(stop - start);
            adam.step(model.network, grad);
        }
        epoch_loss /= static_cast<double>(n);
        if (epoch_loss > best_loss - cfg.tolerance) {
            if (++stalled > cfg.patience) {
                break;
            }
        } else {
            stalled = 0;
        }
        best_loss = std::min(best_loss, epoch_loss);
    }
    return model;
}

double predict_proba(const OrderingModel& model, std::span<const double> features) {
    if (features.size() != model.input_size()) {
        throw SchemaMismatchError("model expects " + std::to_string(model.input_size()) + " features, got " +
                                  std::to_string(features.size()));
    }
    auto z = model.normalizer.apply(features);
    return mlp::sigmoid(mlp::logit(model.network, z));
}

double accuracy(const OrderingModel& model, std::span<const LabeledExample> examples) {
    if (examples.empty()) {
        return 0.0;
    }
    std::size_t correct = 0;
    for (const auto& ex : examples) {
        int predicted = predict_proba(model, ex.features) >= 0.5 ? 1 : 0;
        correct += predicted == ex.label ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(examples.size());
}

CrossValidationReport cross_validate(std::span<const LabeledExample> examples, std::size_t k,
                                     const TrainConfig& cfg) {
    if (k < 2) {
        throw ContractError("cross-validation needs at least 2 folds");
    }
    std::vector<NodeId> egos;
    std::map<NodeId, std::size_t> seen;
    for (const auto& ex : examples) {
        if (seen.emplace(ex.ego_id, 0).second) {
            egos.push_back(ex.ego_id);
        }
    }
    if (egos.size() < k) {
        throw ContractError("only " + std::to_string(egos.size()) + " egos for " + std::to_string(k) + " folds");
    }
    Rng rng(derive_seed(cfg.seed, 0xf01d));
    std::shuffle(egos.begin(), egos.end(), rng);
    for (std::size_t i = 0; i < egos.size(); ++i) {
        seen[egos[i]] = i % k;
    }

    CrossValidationReport report;
    for (std::size_t fold = 0; fold < k; ++fold) {
        std::vector<LabeledExample> train_set;
        std::vector<LabeledExample> test_set;
        for (const auto& ex : examples) {
            (seen[ex.ego_id] == fold ? test_set : train_set).push_back(ex);
        }
        auto model = train(train_set, cfg);
        report.fold_accuracy.push_back(accuracy(model, test_set));
    }
    const auto n = static_cast<double>(k);
    report.mean = std::accumulate(report.fold_accuracy.begin(), report.fold_accuracy.end(), 0.0) / n;
    double var = 0.0;
    for (double a : report.fold_accuracy) var += (a - report.mean) * (a - report.mean);
    report.stddev = std::sqrt(var / n);
    return report;
}

double transfer_evaluate(const OrderingModel& model, std::span<const LabeledExample> examples) {
    for (const auto& ex : examples) {
        if (ex.kind != model.kind || ex.features.size() != model.input_size()) {
            throw SchemaMismatchError("examples do not match the model's feature schema (" +
                                      std::string(to_string(model.kind)) + ", " +
                                      std::to_string(model.input_size()) + " features)");
        }
    }
    return accuracy(model, examples);
}

namespace {

constexpr const char* kModelMagic = "hyperego-ordering-model";
constexpr int kModelVersion = 1;

void write_row(std::ostream& out, const char* tag, const std::vector<double>& values) {
    out << tag;
    for (double v : values) out << ' ' << v;
    out << '\n';
}

std::vector<double> read_row(std::istream& in, const std::string& tag, std::size_t count) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("<model>", 0, "missing '" + tag + "' row");
    }
    std::istringstream ls(line);
    std::string got;
    ls >> got;
    if (got != tag) {
        throw ParseError("<model>", 0, "expected '" + tag + "' row, got '" + got + "'");
    }
    std::vector<double> values(count);
    for (auto& v : values) {
        if (!(ls >> v)) {
            throw ParseError("<model>", 0, "short '" + tag + "' row");
        }
    }
    return values;
}

}  // namespace

void save_model(std::ostream& out, const OrderingModel& model) {
    auto old = out.precision(17);
    out << kModelMagic << ' ' << kModelVersion << '\n';
    out << "kind " << to_string(model.kind) << '\n';
    out << "seed " << model.seed << '\n';
    out << "architecture";
    for (auto w : model.architecture()) out << ' ' << w;
    out << '\n';
    write_row(out, "mean", model.normalizer.mean);
    write_row(out, "scale", model.normalizer.scale);
    for (const auto& layer : model.network.layers) {
        write_row(out, "weights", layer.weights);
        write_row(out, "bias", layer.bias);
    }
    out.precision(old);
}

OrderingModel load_model(std::istream& in) {
    std::string line;
    std::string magic;
    int version = 0;
    if (!std::getline(in, line) || !(std::istringstream(line) >> magic >> version) || magic != kModelMagic) {
        throw ParseError("<model>", 1, "not an ordering model file");
    }
    if (version != kModelVersion) {
        throw SchemaMismatchError("unsupported model version " + std::to_string(version));
    }
    OrderingModel model;
    std::string tag;
    std::string kind;
    if (!std::getline(in, line) || !(std::istringstream(line) >> tag >> kind) || tag != "kind") {
        throw ParseError("<model>", 2, "expected 'kind'");
    }
    model.kind = parse_ego_kind(kind);
    if (!std::getline(in, line) || !(std::istringstream(line) >> tag >> model.seed) || tag != "seed") {
        throw ParseError("<model>", 3, "expected 'seed'");
    }
    if (!std::getline(in, line)) {
        throw ParseError("<model>", 4, "expected 'architecture'");
    }
    std::istringstream as(line);
    as >> tag;
    std::vector<std::size_t> arch;
    std::size_t w = 0;
    while (as >> w) arch.push_back(w);
    if (tag != "architecture" || arch.size() < 2 || arch.back() != 1) {
        throw ParseError("<model>", 4, "malformed architecture");
    }
    model.normalizer.mean = read_row(in, "mean", arch.front());
    model.normalizer.scale = read_row(in, "scale", arch.front());
    for (std::size_t li = 0; li + 1 < arch.size(); ++li) {
        mlp::DenseLayer layer;
        layer.in = arch[li];
        layer.out = arch[li + 1];
        layer.weights = read_row(in, "weights", layer.in * layer.out);
        layer.bias = read_row(in, "bias", layer.out);
        model.network.layers.push_back(std::move(layer));
    }
    return model;
}

void write_examples_csv(std::ostream& out, std::span<const LabeledExample> examples) {
    if (examples.empty()) {
        return;
    }
    const auto names = feature_names(examples.front().kind);
    out << "ego,kind,label";
    for (std::size_t j = 0; j < examples.front().features.size(); ++j) {
        out << ',' << (j < names.size() ? names[j] : "f" + std::to_string(j));
    }
    out << '\n';
    auto old = out.precision(17);
    for (const auto& ex : examples) {
        out << ex.ego_id << ',' << to_string(ex.kind) << ',' << ex.label;
        for (double v : ex.features) out << ',' << v;
        out << '\n';
    }
    out.precision(old);
}

}  // namespace hyperego
