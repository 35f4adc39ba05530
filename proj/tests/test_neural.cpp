#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "codeq/neural.hpp"

using namespace codeq;

namespace {

ParameterVector vec(std::initializer_list<double> v) {
  ParameterVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Topology topo(std::size_t in, std::size_t hid, std::size_t out, Activation o = Activation::linear) {
  Topology t;
  t.inputs = in;
  t.hidden = hid;
  t.outputs = out;
  t.output_activation = o;
  return t;
}

ParameterVector random_params(RngStream& rng, std::size_t n, double bound = 10.0) {
  ParameterVector v(static_cast<Eigen::Index>(n));
  for (double& x : v) x = rng.uniform(-bound, bound);
  return v;
}

Eigen::MatrixXd random_matrix(RngStream& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.uniform();
  }
  return m;
}

}  // namespace

TEST_CASE("param_count") {
  CHECK(param_count(topo(13, 5, 1)) == 76);
  CHECK(param_count(topo(4, 5, 3)) == 43);
  CHECK(param_count(topo(1, 1, 1)) == 4);
  CHECK(topo(4, 5, 3).weight_count() == 35);
  CHECK(topo(4, 5, 3).bias_count() == 8);
  CHECK_THROWS_AS(param_count(topo(0, 5, 1)), Error);
}

TEST_CASE("decode layout") {
  SUBCASE("all zeros") {
    const DecodedNetwork net = decode(ParameterVector::Zero(43), topo(4, 5, 3));
    CHECK(net.input_hidden.isZero());
    CHECK(net.hidden_output.isZero());
    CHECK(net.hidden_bias.isZero());
    CHECK(net.output_bias.isZero());
  }
  SUBCASE("(1,1,1) takes weight, weight, bias, bias") {
    const DecodedNetwork net = decode(vec({1, 2, 3, 4}), topo(1, 1, 1));
    CHECK(net.input_hidden(0, 0) == 1);
    CHECK(net.hidden_output(0, 0) == 2);
    CHECK(net.hidden_bias[0] == 3);
    CHECK(net.output_bias[0] == 4);
  }
  SUBCASE("input weights are row-major by hidden neuron") {
    ParameterVector v(param_count(topo(2, 3, 2)));
    std::iota(v.begin(), v.end(), 0.0);
    const DecodedNetwork net = decode(v, topo(2, 3, 2));
    CHECK(net.input_hidden(0, 1) == 1);
    CHECK(net.input_hidden(1, 0) == 2);
    CHECK(net.input_hidden(2, 1) == 5);
    CHECK(net.hidden_output(0, 2) == 8);
    CHECK(net.hidden_output(1, 0) == 9);
    CHECK(net.hidden_bias[2] == 14);
    CHECK(net.output_bias[1] == 16);
  }
  SUBCASE("wrong length") {
    try {
      decode(ParameterVector::Zero(42), topo(4, 5, 3));
      FAIL("expected length-mismatch");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::length_mismatch);
    }
  }
}

TEST_CASE("flatten inverts decode on random topologies") {
  RngStream rng(2024);
  for (int t = 0; t < 20; ++t) {
    const Topology tp = topo(1 + rng.below(15), 1 + rng.below(12), 1 + rng.below(5));
    for (int k = 0; k < 50; ++k) {
      const ParameterVector v = random_params(rng, param_count(tp), 1e3);
      REQUIRE(flatten(decode(v, tp)) == v);
    }
  }
}

TEST_CASE("forward pass") {
  SUBCASE("zero parameters with linear output give zero") {
    const DecodedNetwork net = decode(ParameterVector::Zero(43), topo(4, 5, 3));
    CHECK(forward(net, Eigen::VectorXd::Constant(4, 3.7)).isZero());
  }
  SUBCASE("(1,1,1) with unit weights and zero biases at x = 0") {
    const DecodedNetwork net = decode(vec({1, 1, 0, 0}), topo(1, 1, 1));
    CHECK(forward(net, Eigen::VectorXd::Zero(1))[0] == 0.5);
  }
  SUBCASE("(2,2,1) matches an independent high-precision computation") {
    // W1 = [[0.5, -1], [2, 0.25]], W2 = [1.5, -0.7], b1 = [0.1, -0.3], b2 = 0.2,
    // x = (1, 2). Reference values computed at 40 significant digits.
    const ParameterVector p = vec({0.5, -1, 2, 0.25, 1.5, -0.7, 0.1, -0.3, 0.2});
    Eigen::VectorXd x(2);
    x << 1, 2;
    const double linear = forward(decode(p, topo(2, 2, 1)), x)[0];
    CHECK(std::abs(linear - (-0.1334504904540930193)) < 1e-12);
    const double logistic = forward(decode(p, topo(2, 2, 1, Activation::logistic)), x)[0];
    CHECK(std::abs(logistic - 0.4666868023722633505) < 1e-12);
  }
  SUBCASE("input size is checked") {
    const DecodedNetwork net = decode(ParameterVector::Zero(4), topo(1, 1, 1));
    CHECK_THROWS_AS(forward(net, Eigen::VectorXd::Zero(2)), Error);
  }
  SUBCASE("logistic outputs stay in (0, 1) and everything stays finite") {
    RngStream rng(5);
    const Topology tp = topo(4, 5, 3, Activation::logistic);
    for (int k = 0; k < 200; ++k) {
      const DecodedNetwork net = decode(random_params(rng, param_count(tp)), tp);
      const Eigen::MatrixXd out = forward_batch(net, random_matrix(rng, 10, 4) * 20.0);
      REQUIRE(out.allFinite());
      REQUIRE((out.array() >= 0.0).all());
      REQUIRE((out.array() <= 1.0).all());
    }
  }
}

TEST_CASE("forward_batch agrees with per-sample forward") {
  RngStream rng(31);
  const Topology tp = topo(3, 4, 2, Activation::logistic);
  const ParameterVector p = random_params(rng, param_count(tp), 3.0);
  const DecodedNetwork net = decode(p, tp);
  const Eigen::MatrixXd X = random_matrix(rng, 7, 3);
  const Eigen::MatrixXd batch = forward_batch(net, X);
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    const Eigen::VectorXd single = forward(net, X.row(r).transpose());
    for (Eigen::Index c = 0; c < 2; ++c) CHECK(batch(r, c) == doctest::Approx(single[c]).epsilon(1e-14));
  }
}

TEST_CASE("mse_fitness") {
  SUBCASE("exact predictions give zero") {
    // (1,1,1) linear net: output = w2 * logistic(w1 x + b1) + b2; w2 = 0, b2 = 3.
    const ParameterVector p = vec({1, 0, 0, 3});
    const Eigen::MatrixXd X = Eigen::MatrixXd::Random(5, 1);
    CHECK(mse_fitness(p, topo(1, 1, 1), X, Eigen::MatrixXd::Constant(5, 1, 3.0)) == 0.0);
  }
  SUBCASE("errors 1 and 2 average to 2.5") {
    const ParameterVector p = vec({1, 0, 0, 0});
    Eigen::MatrixXd X(2, 1);
    X << 0, 0;
    Eigen::MatrixXd Y(2, 1);
    Y << 1, -2;
    CHECK(mse_fitness(p, topo(1, 1, 1), X, Y) == 2.5);
  }
  SUBCASE("zero network against one-hot targets matches the constant-predictor error") {
    RngStream rng(4);
    const Eigen::MatrixXd X = random_matrix(rng, 30, 4);
    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(30, 3);
    for (Eigen::Index r = 0; r < 30; ++r) Y(r, r % 3) = 1.0;
    // Linear output predicts 0: each row misses its single 1 by 1.
    CHECK(mse_fitness(ParameterVector::Zero(43), topo(4, 5, 3), X, Y) == doctest::Approx(1.0));
    // Logistic output predicts 0.5 everywhere: 3 * 0.25 per row.
    CHECK(mse_fitness(ParameterVector::Zero(43), topo(4, 5, 3, Activation::logistic), X, Y) ==
          doctest::Approx(0.75));
  }
  SUBCASE("invariant under joint row permutation and whole-set duplication") {
    RngStream rng(8);
    const Topology tp = topo(3, 4, 2);
    const ParameterVector p = random_params(rng, param_count(tp), 2.0);
    const Eigen::MatrixXd X = random_matrix(rng, 9, 3);
    const Eigen::MatrixXd Y = random_matrix(rng, 9, 2);
    const double base = mse_fitness(p, tp, X, Y);

    Eigen::PermutationMatrix<Eigen::Dynamic> perm(9);
    perm.setIdentity();
    std::reverse(perm.indices().data(), perm.indices().data() + 9);
    CHECK(mse_fitness(p, tp, perm * X, perm * Y) == doctest::Approx(base).epsilon(1e-13));

    Eigen::MatrixXd X2(18, 3);
    X2 << X, X;
    Eigen::MatrixXd Y2(18, 2);
    Y2 << Y, Y;
    CHECK(mse_fitness(p, tp, X2, Y2) == doctest::Approx(base).epsilon(1e-13));
  }
  SUBCASE("error cases") {
    const ParameterVector p = ParameterVector::Zero(4);
    CHECK_THROWS_AS(mse_fitness(p, topo(1, 1, 1), Eigen::MatrixXd(0, 1), Eigen::MatrixXd(0, 1)),
                    Error);
    CHECK_THROWS_AS(mse_fitness(p, topo(1, 1, 1), Eigen::MatrixXd::Zero(3, 1),
                                Eigen::MatrixXd::Zero(2, 1)),
                    Error);
  }
}

TEST_CASE("accuracy") {
  // (2, 2, 2) net whose outputs copy the inputs closely enough for argmax.
  const Topology tp = topo(2, 2, 2);
  const ParameterVector ident = vec({10, 0, 0, 10, 1, 0, 0, 1, -5, -5, 0, 0});
  Eigen::MatrixXd X(4, 2);
  X << 1, 0, 0, 1, 1, 0, 0, 1;
  const std::vector<int> labels{0, 1, 0, 1};
  CHECK(accuracy(ident, tp, X, labels) == 1.0);

  SUBCASE("constant network picks class 0 on ties") {
    const Topology t3 = topo(2, 2, 3);
    Eigen::MatrixXd X6 = Eigen::MatrixXd::Zero(6, 2);
    const std::vector<int> balanced{0, 1, 2, 0, 1, 2};
    CHECK(accuracy(ParameterVector::Zero(param_count(t3)), t3, X6, balanced) ==
          doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("empty rows are an error") {
    CHECK_THROWS_AS(accuracy(ident, tp, Eigen::MatrixXd(0, 2), std::vector<int>{}), Error);
  }
}

TEST_CASE("make_mse_objective wraps mse_fitness") {
  RngStream rng(12);
  const Topology tp = topo(2, 3, 1);
  auto X = std::make_shared<const Eigen::MatrixXd>(random_matrix(rng, 6, 2));
  auto Y = std::make_shared<const Eigen::MatrixXd>(random_matrix(rng, 6, 1));
  const Objective f = make_mse_objective(tp, Bounds(-10, 10), X, Y);
  CHECK(f.dim() == param_count(tp));
  const ParameterVector p = random_params(rng, f.dim());
  CHECK(f(p) == mse_fitness(p, tp, *X, *Y));
}
