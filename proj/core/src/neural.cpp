#include "codeq/neural.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace codeq {
namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void apply_activation(Activation a, Eigen::MatrixXd& m) {
  if (a == Activation::logistic) m = (1.0 + (-m.array()).exp()).inverse().matrix();
}

void check_batch(const Topology& t, const Eigen::MatrixXd& inputs) {
  if (static_cast<std::size_t>(inputs.cols()) != t.inputs) {
    throw Error(Errc::dimension_mismatch, "inputs have " + std::to_string(inputs.cols()) +
                                              " columns, network expects " +
                                              std::to_string(t.inputs));
  }
}

}  // namespace

void Topology::validate() const {
  if (inputs == 0 || hidden == 0 || outputs == 0) {
    throw Error(Errc::invalid_size, "every layer needs at least one neuron");
  }
}

std::size_t param_count(const Topology& topology) {
  topology.validate();
  return topology.weight_count() + topology.bias_count();
}

DecodedNetwork decode(const ParameterVector& params, const Topology& t) {
  const std::size_t expected = param_count(t);
  if (static_cast<std::size_t>(params.size()) != expected) {
    throw Error(Errc::length_mismatch, "parameter vector has " + std::to_string(params.size()) +
                                           " entries, topology needs " + std::to_string(expected));
  }
  const double* p = params.data();
  DecodedNetwork net;
  net.topology = t;
  net.input_hidden = Eigen::Map<const RowMajor>(p, idx(t.hidden), idx(t.inputs));
  p += t.inputs * t.hidden;
  net.hidden_output = Eigen::Map<const RowMajor>(p, idx(t.outputs), idx(t.hidden));
  p += t.hidden * t.outputs;
  net.hidden_bias = Eigen::Map<const Eigen::VectorXd>(p, idx(t.hidden));
  p += t.hidden;
  net.output_bias = Eigen::Map<const Eigen::VectorXd>(p, idx(t.outputs));
  return net;
}

ParameterVector flatten(const DecodedNetwork& net) {
  const Topology& t = net.topology;
  ParameterVector out(idx(param_count(t)));
  double* p = out.data();
  Eigen::Map<RowMajor>(p, idx(t.hidden), idx(t.inputs)) = net.input_hidden;
  p += t.inputs * t.hidden;
  Eigen::Map<RowMajor>(p, idx(t.outputs), idx(t.hidden)) = net.hidden_output;
  p += t.hidden * t.outputs;
  Eigen::Map<Eigen::VectorXd>(p, idx(t.hidden)) = net.hidden_bias;
  p += t.hidden;
  Eigen::Map<Eigen::VectorXd>(p, idx(t.outputs)) = net.output_bias;
  return out;
}

double activate(Activation a, double z) noexcept {
  return a == Activation::logistic ? 1.0 / (1.0 + std::exp(-z)) : z;
}

Eigen::VectorXd forward(const DecodedNetwork& net, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != net.topology.inputs) {
    throw Error(Errc::dimension_mismatch, "input has " + std::to_string(x.size()) +
                                              " components, network expects " +
                                              std::to_string(net.topology.inputs));
  }
  Eigen::MatrixXd batch = x.transpose();
  return forward_batch(net, batch).row(0).transpose();
}

Eigen::MatrixXd forward_batch(const DecodedNetwork& net, const Eigen::MatrixXd& inputs) {
  check_batch(net.topology, inputs);
  Eigen::MatrixXd hidden = inputs * net.input_hidden.transpose();
  hidden.rowwise() += net.hidden_bias.transpose();
  apply_activation(net.topology.hidden_activation, hidden);

  Eigen::MatrixXd out = hidden * net.hidden_output.transpose();
  out.rowwise() += net.output_bias.transpose();
  apply_activation(net.topology.output_activation, out);
  return out;
}

double mse_fitness(const ParameterVector& params, const Topology& topology,
                   const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets) {
  if (inputs.rows() == 0) throw Error(Errc::empty_dataset, "no samples");
  if (inputs.rows() != targets.rows() ||
      static_cast<std::size_t>(targets.cols()) != topology.outputs) {
    throw Error(Errc::dimension_mismatch, "targets do not match inputs or output layer");
  }
  const Eigen::MatrixXd out = forward_batch(decode(params, topology), inputs);
  return (out - targets).squaredNorm() / static_cast<double>(inputs.rows());
}

double accuracy(const ParameterVector& params, const Topology& topology,
                const Eigen::MatrixXd& inputs, std::span<const int> labels) {
  if (inputs.rows() == 0) throw Error(Errc::empty_dataset, "no samples");
  if (topology.outputs < 2 || static_cast<std::size_t>(inputs.rows()) != labels.size()) {
    throw Error(Errc::dimension_mismatch, "accuracy needs >= 2 outputs and one label per row");
  }
  const Eigen::MatrixXd out = forward_batch(decode(params, topology), inputs);
  std::size_t hits = 0;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    Eigen::Index arg = 0;
    for (Eigen::Index c = 1; c < out.cols(); ++c) {
      if (out(r, c) > out(r, arg)) arg = c;
    }
    if (arg == labels[static_cast<std::size_t>(r)]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

Objective make_mse_objective(const Topology& topology, const Bounds& bounds,
                             std::shared_ptr<const Eigen::MatrixXd> inputs,
                             std::shared_ptr<const Eigen::MatrixXd> targets) {
  check_batch(topology, *inputs);
  if (inputs->rows() == 0) throw Error(Errc::empty_dataset, "no training samples");
  return Objective(param_count(topology), bounds,
                   [topology, inputs = std::move(inputs), targets = std::move(targets)](
                       const ParameterVector& x) { return mse_fitness(x, topology, *inputs, *targets); });
}

}  // namespace codeq
