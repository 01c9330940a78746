// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "afc/funcref.hpp"
#include "afc/table.hpp"

namespace afc::nn {

/// Feature matrix is samples x dim. Split tags are deterministic: every
/// fourth row (index 3 mod 4) is test, the rest train, so a dataset CSV needs
/// no split column to reproduce the split.
struct Dataset {
  int num_classes = 0;
  Eigen::MatrixXd features;
  std::vector<int> labels;

  int dim() const { return static_cast<int>(features.cols()); }
  long size() const { return static_cast<long>(features.rows()); }
  bool is_test(long i) const { return i % 4 == 3; }
  std::vector<long> split_indices(bool test) const;
};

struct SyntheticConfig {
  int classes = 3;
  int dim = 2;
  long samples = 1200;
  double radius = 2.5;        // blob center distance from origin
  double noise = 0.55;        // per-coordinate standard deviation
  int blobs_per_class = 2;    // antipodal blobs make the classes non-convex
};

/// Gaussian blob classes, byte-for-byte reproducible from the seed.
Dataset make_synthetic(uint64_t seed, const SyntheticConfig& cfg = {});

/// CSV with header f0,...,f{D-1},label.
std::string dataset_csv(const Dataset& ds);
Dataset parse_dataset_csv(std::string_view text);

/// Multilayer perceptron; weights[l] is (out x in) for layer l, hidden layers
/// use `activation`, the output layer is linear (softmax applied by the loss).
struct Mlp {
  ActivationSpec activation;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  int input_dim() const { return static_cast<int>(weights.front().cols()); }
  int output_dim() const { return static_cast<int>(weights.back().rows()); }
  std::vector<int> layer_sizes() const;
};

/// Uniform Glorot initialization from one deterministic stream.
Mlp make_mlp(int input_dim, const std::vector<int>& hidden, int classes,
             const ActivationSpec& act, uint64_t seed);

struct TrainConfig {
  int epochs = 80;
  int batch = 32;
  double lr = 0.08;
  uint64_t seed = 1;  // shuffling stream
};

struct TrainResult {
  double final_loss = 0.0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
};

/// Minibatch SGD with softmax cross-entropy. Throws std::runtime_error if the
/// loss stops being finite.
TrainResult train(Mlp& model, const Dataset& ds, const TrainConfig& cfg);

double evaluate(const Mlp& model, const Dataset& ds, bool test_split);

struct Gradients {
  std::vector<Eigen::MatrixXd> dw;
  std::vector<Eigen::VectorXd> db;
  double loss = 0.0;
};

/// Mean cross-entropy loss and its gradients over the batch (rows of x).
Gradients loss_and_gradients(const Mlp& model, const Eigen::MatrixXd& x,
                             const std::vector<int>& labels);

struct QuantizedForward {
  std::vector<Eigen::MatrixXd> hidden;  // post-activation, on the output grid
  Eigen::MatrixXd logits;
};

/// Forward pass with every hidden activation replaced by the bit-accurate
/// table evaluation. Weights and sums stay in floating point; only the
/// nonlinearity output is quantized, as in a drop-in circuit swap.
QuantizedForward forward_quantized(const Mlp& model, const Eigen::MatrixXd& x,
                                   const QuantizedFunctionTable& t);

double evaluate_quantized(const Mlp& model, const Dataset& ds,
                          const QuantizedFunctionTable& t, bool test_split);

/// Precision variant named <kind>_<out_bits>_<in_bits>, e.g. tanh_7_4 is a
/// 7-bit output, 4-bit input tanh table. tanh maps to U1.x on both sides,
/// selu/elu to a U2.x input.
struct Variant {
  ActivationKind kind = ActivationKind::tanh;
  FixedPointFormat in_fmt;
  FixedPointFormat out_fmt;
  std::string name() const;
};

Variant parse_variant(std::string_view name);

struct SweepRow {
  Variant variant;
  double float_accuracy = 0.0;
  double quant_accuracy = 0.0;
  double delta_points = 0.0;  // (quant - float) * 100
};

/// Accuracy before/after swapping each variant in, on the test split.
std::vector<SweepRow> sweep(const Mlp& model, const Dataset& ds,
                            const std::vector<Variant>& variants,
                            SamplingConvention convention = {});

std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Checkpoint round-trip; doubles are stored losslessly.
std::string model_json(const Mlp& model);
Mlp parse_model_json(std::string_view text);

}  // namespace afc::nn
