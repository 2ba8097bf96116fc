#include "hyperego/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hyperego::mlp {

std::vector<std::size_t> Network::architecture() const {
    std::vector<std::size_t> arch;
    if (layers.empty()) {
        return arch;
    }
    arch.push_back(layers.front().in);
    for (const auto& l : layers) {
        arch.push_back(l.out);
    }
    return arch;
}

std::size_t Network::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) {
        n += l.weights.size() + l.bias.size();
    }
    return n;
}

Network init_network(std::size_t inputs, std::span<const std::size_t> hidden, Rng& rng) {
    Network net;
    std::size_t fan_in = inputs;
    auto add_layer = [&](std::size_t fan_out) {
        DenseLayer layer;
        layer.in = fan_in;
        layer.out = fan_out;
        double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-bound, bound);
        layer.weights.resize(fan_in * fan_out);
        layer.bias.resize(fan_out);
        for (auto& w : layer.weights) w = dist(rng);
        for (auto& b : layer.bias) b = dist(rng);
        net.layers.push_back(std::move(layer));
        fan_in = fan_out;
    };
    for (std::size_t h : hidden) {
        add_layer(h);
    }
    add_layer(1);
    return net;
}

double sigmoid(double z) {
    if (z >= 0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
    return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

void dense_forward(const DenseLayer& layer, std::span<const double> x, std::vector<double>& y) {
    y.assign(layer.bias.begin(), layer.bias.end());
    for (std::size_t r = 0; r < layer.out; ++r) {
        const double* row = layer.weights.data() + r * layer.in;
        double acc = 0.0;
        for (std::size_t c = 0; c < layer.in; ++c) {
            acc += row[c] * x[c];
        }
        y[r] += acc;
    }
}

}  // namespace

double logit(const Network& net, std::span<const double> x) {
    std::vector<double> cur(x.begin(), x.end());
    std::vector<double> next;
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        dense_forward(net.layers[li], cur, next);
        if (li + 1 < net.layers.size()) {
            for (auto& v : next) v = std::max(v, 0.0);
        }
        std::swap(cur, next);
    }
    return cur[0];
}

Gradient zero_like(const Network& net) {
    Gradient g = net;
    for (auto& l : g.layers) {
        std::fill(l.weights.begin(), l.weights.end(), 0.0);
        std::fill(l.bias.begin(), l.bias.end(), 0.0);
    }
    return g;
}

double loss_and_gradient(const Network& net, std::span<const double> rows, std::span<const int> labels, double l2,
                         Gradient& grad) {
    const std::size_t n = labels.size();
    const std::size_t in = net.input_size();
    const std::size_t depth = net.layers.size();
    grad = zero_like(net);

    // activations[0] is the input; activations[k] the post-ReLU output of layer k-1.
    std::vector<std::vector<double>> activations(depth + 1);
    std::vector<double> delta;
    std::vector<double> prev_delta;
    double loss = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        activations[0].assign(rows.begin() + static_cast<std::ptrdiff_t>(i * in),
                              rows.begin() + static_cast<std::ptrdiff_t>((i + 1) * in));
        for (std::size_t li = 0; li < depth; ++li) {
            dense_forward(net.layers[li], activations[li], activations[li + 1]);
            if (li + 1 < depth) {
                for (auto& v : activations[li + 1]) v = std::max(v, 0.0);
            }
        }
        const double z = activations[depth][0];
        const double y = labels[i];
        loss += softplus(z) - y * z;

        delta.assign(1, sigmoid(z) - y);
        for (std::size_t li = depth; li-- > 0;) {
            const auto& layer = net.layers[li];
            auto& g = grad.layers[li];
            const auto& a = activations[li];
            for (std::size_t r = 0; r < layer.out; ++r) {
                g.bias[r] += delta[r];
                double* grow = g.weights.data() + r * layer.in;
                for (std::size_t c = 0; c < layer.in; ++c) {
                    grow[c] += delta[r] * a[c];
                }
            }
            if (li == 0) {
                break;
            }
            prev_delta.assign(layer.in, 0.0);
            for (std::size_t r = 0; r < layer.out; ++r) {
                const double* row = layer.weights.data() + r * layer.in;
                for (std::size_t c = 0; c < layer.in; ++c) {
                    prev_delta[c] += row[c] * delta[r];
                }
            }
            // ReLU derivative, taken as 0 at the kink.
            for (std::size_t c = 0; c < layer.in; ++c) {
                if (a[c] <= 0.0) prev_delta[c] = 0.0;
            }
            std::swap(delta, prev_delta);
        }
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    double penalty = 0.0;
    for (std::size_t li = 0; li < depth; ++li) {
        auto& g = grad.layers[li];
        const auto& layer = net.layers[li];
        for (std::size_t k = 0; k < g.weights.size(); ++k) {
            penalty += layer.weights[k] * layer.weights[k];
            g.weights[k] = g.weights[k] * inv_n + l2 * inv_n * layer.weights[k];
        }
        for (auto& b : g.bias) b *= inv_n;
    }
    return loss * inv_n + 0.5 * l2 * inv_n * penalty;
}

Adam::Adam(const Network& net, double learning_rate, double beta1, double beta2, double eps)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(eps), m_(zero_like(net)), v_(zero_like(net)) {}

void Adam::step(Network& net, const Gradient& grad) {
    ++t_;
    const double lr_t = lr_ * std::sqrt(1.0 - std::pow(beta2_, static_cast<double>(t_))) /
                        (1.0 - std::pow(beta1_, static_cast<double>(t_)));
    auto update = [&](std::vector<double>& p, const std::vector<double>& g, std::vector<double>& m,
                      std::vector<double>& v) {
        for (std::size_t k = 0; k < p.size(); ++k) {
            m[k] = beta1_ * m[k] + (1.0 - beta1_) * g[k];
            v[k] = beta2_ * v[k] + (1.0 - beta2_) * g[k] * g[k];
            p[k] -= lr_t * m[k] / (std::sqrt(v[k]) + eps_);
        }
    };
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        update(net.layers[li].weights, grad.layers[li].weights, m_.layers[li].weights, v_.layers[li].weights);
        update(net.layers[li].bias, grad.layers[li].bias, m_.layers[li].bias, v_.layers[li].bias);
    }
}

}  // namespace hyperego::mlp
