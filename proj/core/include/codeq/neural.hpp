#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include <Eigen/Core>

#include "codeq/core.hpp"

namespace codeq {

enum class Activation { logistic, linear };

/// Single-hidden-layer feed-forward network shape.
struct Topology {
  std::size_t inputs = 1;
  std::size_t hidden = 1;
  std::size_t outputs = 1;
  Activation hidden_activation = Activation::logistic;
  Activation output_activation = Activation::linear;

  std::size_t weight_count() const noexcept { return inputs * hidden + hidden * outputs; }
  std::size_t bias_count() const noexcept { return hidden + outputs; }

  /// Throws invalid_size when any layer is empty.
  void validate() const;
};

/// Weights plus biases: the search-space dimension for a topology.
std::size_t param_count(const Topology& topology);

struct DecodedNetwork {
  Topology topology;
  Eigen::MatrixXd input_hidden;   // hidden x inputs
  Eigen::VectorXd hidden_bias;    // hidden
  Eigen::MatrixXd hidden_output;  // outputs x hidden
  Eigen::VectorXd output_bias;    // outputs
};

/// Flat layout:
///   [input->hidden weights, row-major by hidden neuron |
///    hidden->output weights, row-major by output neuron |
///    hidden biases | output biases]
DecodedNetwork decode(const ParameterVector& params, const Topology& topology);
ParameterVector flatten(const DecodedNetwork& net);

double activate(Activation a, double z) noexcept;

Eigen::VectorXd forward(const DecodedNetwork& net, const Eigen::VectorXd& x);

/// Forward pass over a batch, one sample per row.
Eigen::MatrixXd forward_batch(const DecodedNetwork& net, const Eigen::MatrixXd& inputs);

/// Mean over samples of the per-sample summed squared output error.
double mse_fitness(const ParameterVector& params, const Topology& topology,
                   const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets);

/// Fraction of rows whose argmax output (lowest index on ties) equals the label.
double accuracy(const ParameterVector& params, const Topology& topology,
                const Eigen::MatrixXd& inputs, std::span<const int> labels);

/// Training objective over shared, immutable data.
Objective make_mse_objective(const Topology& topology, const Bounds& bounds,
                             std::shared_ptr<const Eigen::MatrixXd> inputs,
                             std::shared_ptr<const Eigen::MatrixXd> targets);

}  // namespace codeq
