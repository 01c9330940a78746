// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/nn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "afc/text.hpp"

namespace afc::nn {

using json = nlohmann::json;

std::vector<long> Dataset::split_indices(bool test) const {
  std::vector<long> idx;
  for (long i = 0; i < size(); ++i)
    if (is_test(i) == test) idx.push_back(i);
  return idx;
}

Dataset make_synthetic(uint64_t seed, const SyntheticConfig& cfg) {
  if (cfg.classes < 2 || cfg.dim < 2 || cfg.blobs_per_class < 1)
    throw std::invalid_argument("need >= 2 classes, >= 2 dims, >= 1 blob");
  if (cfg.samples < cfg.classes * 8)
    throw std::invalid_argument("too few samples for the class count");

  int slots = cfg.classes * cfg.blobs_per_class;
  std::vector<Eigen::VectorXd> centers(slots,
                                       Eigen::VectorXd::Zero(cfg.dim));
  // Blob b of class c takes slot c + b*classes, so the blobs of one class sit
  // on opposite sides of the ring and no class is linearly separable.
  for (int c = 0; c < cfg.classes; ++c) {
    for (int b = 0; b < cfg.blobs_per_class; ++b) {
      int slot = c + b * cfg.classes;
      double angle = 2.0 * M_PI * slot / slots;
      centers[slot](0) = cfg.radius * std::cos(angle);
      centers[slot](1) = cfg.radius * std::sin(angle);
    }
  }

  Dataset ds;
  ds.num_classes = cfg.classes;
  ds.features.resize(cfg.samples, cfg.dim);
  ds.labels.resize(cfg.samples);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (long i = 0; i < cfg.samples; ++i) {
    int c = static_cast<int>(i % cfg.classes);
    int b = static_cast<int>((i / cfg.classes) % cfg.blobs_per_class);
    const Eigen::VectorXd& center = centers[c + b * cfg.classes];
    for (int d = 0; d < cfg.dim; ++d)
      ds.features(i, d) = center(d) + cfg.noise * gauss(rng);
    ds.labels[i] = c;
  }
  return ds;
}

std::string dataset_csv(const Dataset& ds) {
  std::string s;
  for (int d = 0; d < ds.dim(); ++d) s += "f" + std::to_string(d) + ",";
  s += "label\n";
  for (long i = 0; i < ds.size(); ++i) {
    for (int d = 0; d < ds.dim(); ++d)
      s += fmt_double(ds.features(i, d)) + ",";
    s += std::to_string(ds.labels[i]) + "\n";
  }
  return s;
}

Dataset parse_dataset_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    size_t end = eol == std::string_view::npos ? text.size() : eol;
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    pos = end + 1;
  }
  if (lines.size() < 2)
    throw std::invalid_argument("dataset csv needs a header and rows");

  auto split = [](std::string_view line) {
    std::vector<std::string_view> cells;
    size_t p = 0;
    while (true) {
      size_t comma = line.find(',', p);
      if (comma == std::string_view::npos) {
        cells.push_back(line.substr(p));
        break;
      }
      cells.push_back(line.substr(p, comma - p));
      p = comma + 1;
    }
    return cells;
  };

  auto header = split(lines[0]);
  if (header.size() < 2 || header.back() != "label")
    throw std::invalid_argument("dataset header must be f0,...,label");
  int dim = static_cast<int>(header.size()) - 1;
  for (int d = 0; d < dim; ++d)
    if (header[d] != "f" + std::to_string(d))
      throw std::invalid_argument("dataset header must be f0,...,label");

  Dataset ds;
  long rows = static_cast<long>(lines.size()) - 1;
  ds.features.resize(rows, dim);
  ds.labels.resize(rows);
  int max_label = 0;
  for (long i = 0; i < rows; ++i) {
    auto cells = split(lines[i + 1]);
    if (static_cast<int>(cells.size()) != dim + 1)
      throw std::invalid_argument("dataset row " + std::to_string(i + 2) +
                                  " has wrong column count");
    for (int d = 0; d < dim; ++d)
      ds.features(i, d) = std::stod(std::string(cells[d]));
    int label = std::stoi(std::string(cells[dim]));
    if (label < 0 || label > 4096)
      throw std::invalid_argument("bad label on row " + std::to_string(i + 2));
    ds.labels[i] = label;
    max_label = std::max(max_label, label);
  }
  ds.num_classes = max_label + 1;
  return ds;
}

std::vector<int> Mlp::layer_sizes() const {
  std::vector<int> sizes{input_dim()};
  for (const auto& w : weights) sizes.push_back(static_cast<int>(w.rows()));
  return sizes;
}

Mlp make_mlp(int input_dim, const std::vector<int>& hidden, int classes,
             const ActivationSpec& act, uint64_t seed) {
  if (input_dim < 1 || classes < 2)
    throw std::invalid_argument("bad layer sizes");
  Mlp m;
  m.activation = act;
  std::vector<int> sizes{input_dim};
  for (int h : hidden) {
    if (h < 1) throw std::invalid_argument("bad hidden size");
    sizes.push_back(h);
  }
  sizes.push_back(classes);
  std::mt19937_64 rng(seed);
  for (size_t l = 0; l + 1 < sizes.size(); ++l) {
    int in = sizes[l], out = sizes[l + 1];
    double bound = std::sqrt(6.0 / (in + out));
    std::uniform_real_distribution<double> uni(-bound, bound);
    Eigen::MatrixXd w(out, in);
    for (int r = 0; r < out; ++r)
      for (int c = 0; c < in; ++c) w(r, c) = uni(rng);
    m.weights.push_back(std::move(w));
    m.biases.push_back(Eigen::VectorXd::Zero(out));
  }
  return m;
}

namespace {

struct Forward {
  std::vector<Eigen::MatrixXd> pre;   // per hidden layer
  std::vector<Eigen::MatrixXd> post;  // activations, post[0] is the input
  Eigen::MatrixXd logits;
};

Forward forward_pass(const Mlp& m, const Eigen::MatrixXd& x) {
  Forward f;
  f.post.push_back(x);
  Eigen::MatrixXd a = x;
  size_t layers = m.weights.size();
  for (size_t l = 0; l + 1 < layers; ++l) {
    Eigen::MatrixXd z = a * m.weights[l].transpose();
    z.rowwise() += m.biases[l].transpose();
    f.pre.push_back(z);
    a = z.unaryExpr([&m](double v) { return m.activation(v); });
    f.post.push_back(a);
  }
  f.logits = a * m.weights.back().transpose();
  f.logits.rowwise() += m.biases.back().transpose();
  return f;
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd p = logits;
  for (long i = 0; i < p.rows(); ++i) {
    double mx = p.row(i).maxCoeff();
    p.row(i) = (p.row(i).array() - mx).exp();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

double batch_accuracy(const Eigen::MatrixXd& logits,
                      const std::vector<int>& labels) {
  long correct = 0;
  for (long i = 0; i < logits.rows(); ++i) {
    Eigen::Index arg;
    logits.row(i).maxCoeff(&arg);
    if (static_cast<int>(arg) == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(logits.rows());
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& x,
                            const std::vector<long>& idx) {
  Eigen::MatrixXd out(static_cast<long>(idx.size()), x.cols());
  for (size_t i = 0; i < idx.size(); ++i) out.row(i) = x.row(idx[i]);
  return out;
}

std::vector<int> gather_labels(const std::vector<int>& labels,
                               const std::vector<long>& idx) {
  std::vector<int> out(idx.size());
  for (size_t i = 0; i < idx.size(); ++i) out[i] = labels[idx[i]];
  return out;
}

}  // namespace

Gradients loss_and_gradients(const Mlp& m, const Eigen::MatrixXd& x,
                             const std::vector<int>& labels) {
  if (static_cast<long>(labels.size()) != x.rows())
    throw std::invalid_argument("label count does not match batch");
  Forward f = forward_pass(m, x);
  long batch = x.rows();
  Eigen::MatrixXd p = softmax_rows(f.logits);

  Gradients g;
  g.loss = 0.0;
  for (long i = 0; i < batch; ++i) {
    int y = labels[i];
    if (y < 0 || y >= f.logits.cols())
      throw std::invalid_argument("label out of range");
    g.loss -= std::log(std::max(p(i, y), 1e-300));
  }
  g.loss /= static_cast<double>(batch);

  Eigen::MatrixXd delta = p;
  for (long i = 0; i < batch; ++i) delta(i, labels[i]) -= 1.0;
  delta /= static_cast<double>(batch);

  size_t layers = m.weights.size();
  g.dw.resize(layers);
  g.db.resize(layers);
  for (size_t l = layers; l-- > 0;) {
    g.dw[l] = delta.transpose() * f.post[l];
    g.db[l] = delta.colwise().sum().transpose();
    if (l > 0) {
      Eigen::MatrixXd da = delta * m.weights[l];
      Eigen::MatrixXd dz = f.pre[l - 1].unaryExpr(
          [&m](double v) { return m.activation.derivative(v); });
      delta = da.cwiseProduct(dz);
    }
  }
  return g;
}

TrainResult train(Mlp& m, const Dataset& ds, const TrainConfig& cfg) {
  if (cfg.epochs < 0 || cfg.batch < 1)
    throw std::invalid_argument("bad training configuration");
  auto train_idx = ds.split_indices(false);
  std::mt19937_64 rng(cfg.seed);
  double last_loss = 0.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(train_idx.begin(), train_idx.end(), rng);
    double epoch_loss = 0.0;
    long batches = 0;
    for (size_t at = 0; at < train_idx.size(); at += cfg.batch) {
      size_t end = std::min(at + cfg.batch, train_idx.size());
      std::vector<long> batch(train_idx.begin() + at, train_idx.begin() + end);
      Eigen::MatrixXd x = gather_rows(ds.features, batch);
      std::vector<int> y = gather_labels(ds.labels, batch);
      Gradients g = loss_and_gradients(m, x, y);
      if (!std::isfinite(g.loss))
        throw std::runtime_error("training diverged (non-finite loss)");
      for (size_t l = 0; l < m.weights.size(); ++l) {
        m.weights[l] -= cfg.lr * g.dw[l];
        m.biases[l] -= cfg.lr * g.db[l];
      }
      epoch_loss += g.loss;
      ++batches;
    }
    last_loss = batches > 0 ? epoch_loss / batches : 0.0;
  }
  TrainResult r;
  r.final_loss = last_loss;
  r.train_accuracy = evaluate(m, ds, false);
  r.test_accuracy = evaluate(m, ds, true);
  return r;
}

double evaluate(const Mlp& m, const Dataset& ds, bool test_split) {
  auto idx = ds.split_indices(test_split);
  if (idx.empty()) return 0.0;
  Eigen::MatrixXd x = gather_rows(ds.features, idx);
  Forward f = forward_pass(m, x);
  return batch_accuracy(f.logits, gather_labels(ds.labels, idx));
}

QuantizedForward forward_quantized(const Mlp& m, const Eigen::MatrixXd& x,
                                   const QuantizedFunctionTable& t) {
  QuantizedForward qf;
  Eigen::MatrixXd a = x;
  size_t layers = m.weights.size();
  for (size_t l = 0; l + 1 < layers; ++l) {
    Eigen::MatrixXd z = a * m.weights[l].transpose();
    z.rowwise() += m.biases[l].transpose();
    a = z.unaryExpr([&t](double v) { return reference_eval(v, t); });
    qf.hidden.push_back(a);
  }
  qf.logits = a * m.weights.back().transpose();
  qf.logits.rowwise() += m.biases.back().transpose();
  return qf;
}

double evaluate_quantized(const Mlp& m, const Dataset& ds,
                          const QuantizedFunctionTable& t, bool test_split) {
  auto idx = ds.split_indices(test_split);
  if (idx.empty()) return 0.0;
  Eigen::MatrixXd x = gather_rows(ds.features, idx);
  QuantizedForward f = forward_quantized(m, x, t);
  return batch_accuracy(f.logits, gather_labels(ds.labels, idx));
}

std::string Variant::name() const {
  return to_string(kind) + "_" + std::to_string(out_fmt.total_bits()) + "_" +
         std::to_string(in_fmt.total_bits());
}

Variant parse_variant(std::string_view name) {
  size_t u1 = name.find('_');
  if (u1 == std::string_view::npos)
    throw std::invalid_argument("variant must be <kind>_<out_bits>_<in_bits>");
  size_t u2 = name.find('_', u1 + 1);
  if (u2 == std::string_view::npos)
    throw std::invalid_argument("variant must be <kind>_<out_bits>_<in_bits>");
  Variant v;
  v.kind = parse_activation(name.substr(0, u1));
  int out_bits = std::stoi(std::string(name.substr(u1 + 1, u2 - u1 - 1)));
  int in_bits = std::stoi(std::string(name.substr(u2 + 1)));
  if (out_bits < 2 || out_bits > 16 || in_bits < 1 || in_bits > 16)
    throw std::invalid_argument("variant bit counts must be 2..16");
  switch (v.kind) {
    case ActivationKind::tanh:
      v.in_fmt = {1, in_bits - 1};
      v.out_fmt = {1, out_bits - 1};
      break;
    case ActivationKind::selu:
    case ActivationKind::elu:
      if (in_bits < 3)
        throw std::invalid_argument("selu/elu variants need >= 3 input bits");
      v.in_fmt = {2, in_bits - 2};
      v.out_fmt = {1, out_bits - 1};
      break;
    default:
      throw std::invalid_argument("variants support tanh, selu and elu");
  }
  if (!v.in_fmt.valid() || !v.out_fmt.valid())
    throw std::invalid_argument("variant formats out of range");
  return v;
}

std::vector<SweepRow> sweep(const Mlp& m, const Dataset& ds,
                            const std::vector<Variant>& variants,
                            SamplingConvention convention) {
  double base = evaluate(m, ds, true);
  std::vector<SweepRow> rows;
  for (const Variant& v : variants) {
    if (v.kind != m.activation.kind)
      throw std::invalid_argument("variant " + v.name() +
                                  " does not match the model activation " +
                                  to_string(m.activation.kind));
    ActivationSpec f = m.activation;
    QuantizedFunctionTable t =
        build_table(f, v.in_fmt, v.out_fmt, convention);
    SweepRow row;
    row.variant = v;
    row.float_accuracy = base;
    row.quant_accuracy = evaluate_quantized(m, ds, t, true);
    row.delta_points = (row.quant_accuracy - row.float_accuracy) * 100.0;
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string s = "variant,in_fmt,out_fmt,float_acc,quant_acc,delta_points\n";
  for (const auto& r : rows) {
    s += r.variant.name();
    s += "," + to_string(r.variant.in_fmt);
    s += "," + to_string(r.variant.out_fmt);
    s += "," + fmt_fixed(r.float_accuracy, 4);
    s += "," + fmt_fixed(r.quant_accuracy, 4);
    s += "," + fmt_fixed(r.delta_points, 2);
    s += "\n";
  }
  return s;
}

std::string model_json(const Mlp& m) {
  json j;
  j["format_version"] = 1;
  j["activation"] = {{"kind", to_string(m.activation.kind)},
                     {"alpha", m.activation.alpha},
                     {"lambda", m.activation.lambda}};
  j["layer_sizes"] = m.layer_sizes();
  json weights = json::array();
  json biases = json::array();
  for (size_t l = 0; l < m.weights.size(); ++l) {
    const auto& w = m.weights[l];
    json flat = json::array();
    for (long r = 0; r < w.rows(); ++r)
      for (long c = 0; c < w.cols(); ++c) flat.push_back(w(r, c));
    weights.push_back(std::move(flat));
    json b = json::array();
    for (long r = 0; r < m.biases[l].size(); ++r)
      b.push_back(m.biases[l](r));
    biases.push_back(std::move(b));
  }
  j["weights"] = std::move(weights);
  j["biases"] = std::move(biases);
  return j.dump(2) + "\n";
}

Mlp parse_model_json(std::string_view text) {
  json j = json::parse(text);
  if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
    throw std::invalid_argument("unsupported model format version");
  Mlp m;
  m.activation.kind =
      parse_activation(j["activation"]["kind"].get<std::string>());
  m.activation.alpha = j["activation"]["alpha"].get<double>();
  m.activation.lambda = j["activation"]["lambda"].get<double>();
  auto sizes = j["layer_sizes"].get<std::vector<int>>();
  if (sizes.size() < 2) throw std::invalid_argument("bad layer sizes");
  const json& weights = j["weights"];
  const json& biases = j["biases"];
  if (weights.size() != sizes.size() - 1 || biases.size() != sizes.size() - 1)
    throw std::invalid_argument("layer count mismatch");
  for (size_t l = 0; l + 1 < sizes.size(); ++l) {
    long in = sizes[l], out = sizes[l + 1];
    const json& flat = weights[l];
    if (static_cast<long>(flat.size()) != in * out)
      throw std::invalid_argument("weight size mismatch at layer " +
                                  std::to_string(l));
    Eigen::MatrixXd w(out, in);
    for (long r = 0; r < out; ++r)
      for (long c = 0; c < in; ++c)
        w(r, c) = flat[r * in + c].get<double>();
    const json& bj = biases[l];
    if (static_cast<long>(bj.size()) != out)
      throw std::invalid_argument("bias size mismatch at layer " +
                                  std::to_string(l));
    Eigen::VectorXd b(out);
    for (long r = 0; r < out; ++r) b(r) = bj[r].get<double>();
    m.weights.push_back(std::move(w));
    m.biases.push_back(std::move(b));
  }
  return m;
}

}  // namespace afc::nn
