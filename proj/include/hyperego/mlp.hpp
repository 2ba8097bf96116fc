#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperego/random.hpp"

namespace hyperego::mlp {

/// Fully connected layer; weights are row-major (out x in).
struct DenseLayer {
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    double& w(std::size_t row, std::size_t col) { return weights[row * in + col]; }
    double w(std::size_t row, std::size_t col) const { return weights[row * in + col]; }
};

/// ReLU hidden layers and a single sigmoid output unit. With no hidden
/// layers this is plain logistic regression.
struct Network {
    std::vector<DenseLayer> layers;

    /// Layer widths including input and the single output.
    std::vector<std::size_t> architecture() const;
    std::size_t input_size() const { return layers.empty() ? 0 : layers.front().in; }
    std::size_t parameter_count() const;
};

/// Weights and biases uniform in ±sqrt(6 / (fan_in + fan_out)).
Network init_network(std::size_t inputs, std::span<const std::size_t> hidden, Rng& rng);

/// Output logit for one (already normalized) input row.
double logit(const Network& net, std::span<const double> x);
double sigmoid(double z);

/// Same shapes as the network, holding d(loss)/d(parameter).
using Gradient = Network;
Gradient zero_like(const Network& net);

/// Mean binary cross-entropy over the rows plus (l2 / 2n) * sum of squared
/// weights (biases unpenalized). `rows` is n x input_size, row-major.
/// Gradients are written into `grad` (overwritten).
double loss_and_gradient(const Network& net, std::span<const double> rows, std::span<const int> labels,
                         double l2, Gradient& grad);

/// Adaptive-moment optimizer state.
class Adam {
public:
    Adam(const Network& net, double learning_rate, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
    void step(Network& net, const Gradient& grad);

private:
    double lr_, beta1_, beta2_, eps_;
    std::uint64_t t_ = 0;
    Network m_, v_;
};

}  // namespace hyperego::mlp
