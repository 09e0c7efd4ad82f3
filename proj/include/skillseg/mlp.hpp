// Copyright 2026 The skillseg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "skillseg/core_model.hpp"
#include "skillseg/error.hpp"
#include "skillseg/io.hpp"
#include "skillseg/pose_ingest.hpp"
#include "skillseg/prob_sequence.hpp"
#include "skillseg/rng.hpp"

namespace skillseg {

enum class Activation { kLeakyReLU, kReLU, kSigmoid, kTanh, kSiLU };

inline constexpr double kLeakySlope = 0.01;

inline std::string_view activation_tag(Activation a) {
  switch (a) {
    case Activation::kLeakyReLU: return "leaky_relu";
    case Activation::kReLU: return "relu";
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kTanh: return "tanh";
    case Activation::kSiLU: return "silu";
  }
  return "unknown";
}

inline std::optional<Activation> activation_from_tag(std::string_view tag) {
  for (Activation a : {Activation::kLeakyReLU, Activation::kReLU, Activation::kSigmoid,
                       Activation::kTanh, Activation::kSiLU}) {
    if (activation_tag(a) == tag) return a;
  }
  return std::nullopt;
}

template <class T>
T activate(Activation a, T x) {
  switch (a) {
    case Activation::kLeakyReLU: return x >= 0 ? x : T(kLeakySlope) * x;
    case Activation::kReLU: return x > 0 ? x : T(0);
    case Activation::kSigmoid: return T(1) / (T(1) + std::exp(-x));
    case Activation::kTanh: return std::tanh(x);
    case Activation::kSiLU: return x / (T(1) + std::exp(-x));
  }
  return x;
}

inline double activate_grad(Activation a, double x) {
  switch (a) {
    case Activation::kLeakyReLU: return x >= 0 ? 1.0 : kLeakySlope;
    case Activation::kReLU: return x > 0 ? 1.0 : 0.0;
    case Activation::kSigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-x));
      return s * (1.0 - s);
    }
    case Activation::kTanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::kSiLU: {
      const double s = 1.0 / (1.0 + std::exp(-x));
      return s + x * s * (1.0 - s);
    }
  }
  return 1.0;
}

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
};

/// Fully connected classifier: every layer but the last is followed by the
/// activation; the last feeds a softmax.
struct MlpModel {
  std::vector<int> layer_dims;
  std::vector<DenseLayer> layers;
  Activation activation = Activation::kLeakyReLU;

  int input_dim() const { return layer_dims.front(); }
  int output_dim() const { return layer_dims.back(); }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
    return n;
  }
};

inline std::vector<int> default_layer_dims() { return {kNumFeatures, 256, 128, 64, kNumClasses}; }

struct TrainConfig {
  int batch_size = 512;
  int epochs = 500;
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;
  Activation activation = Activation::kLeakyReLU;
  std::vector<int> layer_dims = default_layer_dims();

  void validate() const {
    require(batch_size >= 1, "batch_size must be >= 1");
    require(epochs >= 1, "epochs must be >= 1");
    require(learning_rate > 0 && beta1 > 0 && beta1 < 1 && beta2 > 0 && beta2 < 1 && adam_eps > 0,
            "learning rate and Adam parameters must be positive (betas < 1)");
  }
};

/// Kaiming-uniform weights (bound sqrt(6 / fan_in)) and fan-in scaled bias.
inline MlpModel init_mlp(const std::vector<int>& dims, Activation activation, std::uint64_t seed) {
  require(dims.size() >= 2, "layer_dims needs at least input and output sizes");
  for (int d : dims) require(d >= 1, "layer widths must be positive");
  MlpModel m;
  m.layer_dims = dims;
  m.activation = activation;
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int in = dims[l];
    const int out = dims[l + 1];
    const double w_bound = std::sqrt(6.0 / in);
    const double b_bound = 1.0 / std::sqrt(static_cast<double>(in));
    DenseLayer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd(out)};
    for (int r = 0; r < out; ++r)
      for (int c = 0; c < in; ++c) layer.weight(r, c) = uniform_real(rng, -w_bound, w_bound);
    for (int r = 0; r < out; ++r) layer.bias(r) = uniform_real(rng, -b_bound, b_bound);
    m.layers.push_back(std::move(layer));
  }
  return m;
}

inline MlpModel init_mlp(const TrainConfig& cfg) { return init_mlp(cfg.layer_dims, cfg.activation, cfg.seed); }

namespace detail {

/// Column-wise softmax, max-shifted.
inline Eigen::MatrixXd softmax_columns(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd p(logits.rows(), logits.cols());
  for (Eigen::Index c = 0; c < logits.cols(); ++c) {
    const double mx = logits.col(c).maxCoeff();
    p.col(c) = (logits.col(c).array() - mx).exp().matrix();
    p.col(c) /= p.col(c).sum();
  }
  return p;
}

/// Per-column cross entropy from logits: logsumexp(z) - z_y.
inline double cross_entropy(const Eigen::MatrixXd& logits, std::span<const ClassId> labels, Eigen::Index col) {
  const double mx = logits.col(col).maxCoeff();
  const double lse = mx + std::log((logits.col(col).array() - mx).exp().sum());
  return lse - logits(labels[static_cast<std::size_t>(col)], col);
}

struct ForwardCache {
  std::vector<Eigen::MatrixXd> pre;   // pre-activations per layer
  std::vector<Eigen::MatrixXd> post;  // post[0] = input, post[l+1] = activated output of layer l
};

inline Eigen::MatrixXd forward_logits(const MlpModel& m, const Eigen::MatrixXd& x, ForwardCache* cache) {
  Eigen::MatrixXd a = x;
  if (cache) {
    cache->pre.clear();
    cache->post.assign(1, x);
  }
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    Eigen::MatrixXd z = m.layers[l].weight * a;
    z.colwise() += m.layers[l].bias;
    const bool last = l + 1 == m.layers.size();
    if (cache) cache->pre.push_back(z);
    if (last) {
      a = std::move(z);
    } else {
      a = z.unaryExpr([act = m.activation](double v) { return activate(act, v); });
    }
    if (cache && !last) cache->post.push_back(a);
  }
  return a;
}

/// Mean cross-entropy gradients over the columns of x.
inline double backward(const MlpModel& m, const Eigen::MatrixXd& x, std::span<const ClassId> labels,
                       std::vector<DenseLayer>& grads) {
  ForwardCache cache;
  const Eigen::MatrixXd logits = forward_logits(m, x, &cache);
  const auto batch = static_cast<double>(x.cols());
  double loss = 0;
  for (Eigen::Index c = 0; c < x.cols(); ++c) loss += cross_entropy(logits, labels, c);

  Eigen::MatrixXd delta = softmax_columns(logits);
  for (Eigen::Index c = 0; c < x.cols(); ++c) delta(labels[static_cast<std::size_t>(c)], c) -= 1.0;
  delta /= batch;

  grads.resize(m.layers.size());
  for (std::size_t l = m.layers.size(); l-- > 0;) {
    grads[l].weight = delta * cache.post[l].transpose();
    grads[l].bias = delta.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd upstream = m.layers[l].weight.transpose() * delta;
    const Eigen::MatrixXd& z = cache.pre[l - 1];
    delta = upstream.cwiseProduct(z.unaryExpr([act = m.activation](double v) { return activate_grad(act, v); }));
  }
  return loss / batch;
}

inline void check_input(const MlpModel& m, std::size_t n) {
  if (n != static_cast<std::size_t>(m.input_dim()))
    fail(ErrorKind::kInvalidArgument, "dimension mismatch: model expects " + std::to_string(m.input_dim()) +
                                          " features, got " + std::to_string(n));
}

}  // namespace detail

/// Class probabilities for one feature vector.
inline std::vector<double> forward(const MlpModel& m, std::span<const double> features) {
  detail::check_input(m, features.size());
  Eigen::MatrixXd x = Eigen::Map<const Eigen::VectorXd>(features.data(), static_cast<Eigen::Index>(features.size()));
  const Eigen::MatrixXd p = detail::softmax_columns(detail::forward_logits(m, x, nullptr));
  return {p.data(), p.data() + p.size()};
}

/// Training set stored one sample per column.
struct LabeledFrames {
  Eigen::MatrixXd features;  // input_dim x n
  std::vector<ClassId> labels;

  std::size_t size() const { return labels.size(); }
};

/// Frames of `seq` paired with the per-frame labels of `gt`; lengths must match.
inline void append_labeled(LabeledFrames& data, const FeatureSequence& seq, const LabelSequence& gt) {
  require(seq.size() == gt.size(), "features and annotation disagree on frame count for " + seq.video_id);
  const Eigen::Index old = data.features.cols();
  data.features.conservativeResize(kNumFeatures, old + static_cast<Eigen::Index>(seq.size()));
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (int f = 0; f < kNumFeatures; ++f) data.features(f, old + static_cast<Eigen::Index>(i)) = seq.frames[i][f];
  }
  data.labels.insert(data.labels.end(), gt.labels.begin(), gt.labels.end());
}

struct TrainResult {
  MlpModel model;
  std::vector<double> loss_history;  // sample-weighted mean loss per epoch
};

/// Mini-batch Adam on mean cross-entropy. Batches are drawn from a per-epoch
/// shuffle seeded by cfg.seed; the trailing partial batch is kept.
inline TrainResult train(MlpModel model, const LabeledFrames& data, const TrainConfig& cfg) {
  cfg.validate();
  if (data.size() == 0) fail(ErrorKind::kInvalidArgument, "empty dataset");
  require(data.features.cols() == static_cast<Eigen::Index>(data.size()), "feature/label count mismatch");
  detail::check_input(model, static_cast<std::size_t>(data.features.rows()));
  for (ClassId y : data.labels)
    require(y >= 0 && y < model.output_dim(), "label out of range: " + std::to_string(y));

  std::vector<DenseLayer> m1, m2, grads;
  for (const auto& l : model.layers) {
    m1.push_back({Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()), Eigen::VectorXd::Zero(l.bias.size())});
  }
  m2 = m1;

  Rng rng(cfg.seed);
  std::vector<std::size_t> order(data.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainResult result;
  result.loss_history.reserve(static_cast<std::size_t>(cfg.epochs));
  long step = 0;
  Eigen::MatrixXd xb;
  std::vector<ClassId> yb;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle(std::span<std::size_t>(order), rng);
    double epoch_loss = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end = std::min(order.size(), begin + static_cast<std::size_t>(cfg.batch_size));
      xb.resize(data.features.rows(), static_cast<Eigen::Index>(end - begin));
      yb.resize(end - begin);
      for (std::size_t i = begin; i < end; ++i) {
        xb.col(static_cast<Eigen::Index>(i - begin)) = data.features.col(static_cast<Eigen::Index>(order[i]));
        yb[i - begin] = data.labels[order[i]];
      }
      const double loss = detail::backward(model, xb, yb, grads);
      epoch_loss += loss * static_cast<double>(end - begin);

      ++step;
      const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
      auto update = [&](auto& param, auto& mom, auto& vel, const auto& g) {
        mom = cfg.beta1 * mom + (1.0 - cfg.beta1) * g;
        vel = cfg.beta2 * vel + (1.0 - cfg.beta2) * g.cwiseAbs2();
        param.array() -= cfg.learning_rate * (mom.array() / c1) / ((vel.array() / c2).sqrt() + cfg.adam_eps);
      };
      for (std::size_t l = 0; l < model.layers.size(); ++l) {
        update(model.layers[l].weight, m1[l].weight, m2[l].weight, grads[l].weight);
        update(model.layers[l].bias, m1[l].bias, m2[l].bias, grads[l].bias);
      }
    }
    result.loss_history.push_back(epoch_loss / static_cast<double>(data.size()));
  }
  result.model = std::move(model);
  return result;
}

/// Probabilities for every column of `x`, returned as a ProbSequence.
inline ProbSequence predict_batch(const MlpModel& m, const Eigen::MatrixXd& x) {
  detail::check_input(m, static_cast<std::size_t>(x.rows()));
  require(m.output_dim() <= kNumClasses, "model has more outputs than classes");
  const Eigen::MatrixXd p = detail::softmax_columns(detail::forward_logits(m, x, nullptr));
  ProbSequence out(0, m.output_dim());
  for (Eigen::Index c = 0; c < p.cols(); ++c) out.append_row({p.col(c).data(), static_cast<std::size_t>(p.rows())});
  return out;
}

inline ProbSequence predict_sequence(const MlpModel& m, const FeatureSequence& seq) {
  detail::check_input(m, kNumFeatures);
  Eigen::MatrixXd x(kNumFeatures, static_cast<Eigen::Index>(seq.size()));
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (int f = 0; f < kNumFeatures; ++f) x(f, static_cast<Eigen::Index>(i)) = seq.frames[i][f];
  return predict_batch(m, x);
}

/// Mean cross-entropy of the model on `data`.
inline double evaluate_loss(const MlpModel& m, const LabeledFrames& data) {
  const Eigen::MatrixXd logits = detail::forward_logits(m, data.features, nullptr);
  double loss = 0;
  for (Eigen::Index c = 0; c < logits.cols(); ++c) loss += detail::cross_entropy(logits, data.labels, c);
  return loss / static_cast<double>(data.size());
}

/// Max relative error between backprop gradients and central differences
/// over every parameter, for one labelled sample. The finite-difference
/// probe runs in long double: in double, the quotient at step 1e-5 carries
/// about 1e-11 of cancellation noise, enough to swamp gradients near 1e-8.
inline double gradient_check(const MlpModel& m, std::span<const double> features, ClassId label, double step = 1e-5) {
  detail::check_input(m, features.size());
  require(label >= 0 && label < m.output_dim(), "label out of range");
  const Eigen::MatrixXd x =
      Eigen::Map<const Eigen::VectorXd>(features.data(), static_cast<Eigen::Index>(features.size()));
  const std::vector<ClassId> y{label};
  std::vector<DenseLayer> grads;
  detail::backward(m, x, y, grads);

  using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  std::vector<MatL> w;
  std::vector<VecL> b;
  for (const auto& layer : m.layers) {
    w.push_back(layer.weight.cast<long double>());
    b.push_back(layer.bias.cast<long double>());
  }
  const VecL xl = x.col(0).cast<long double>();
  auto loss_at = [&]() {
    VecL a = xl;
    for (std::size_t l = 0; l < w.size(); ++l) {
      VecL z = w[l] * a + b[l];
      a = l + 1 == w.size() ? z : VecL(z.unaryExpr([act = m.activation](long double v) { return activate(act, v); }));
    }
    const long double top = a.maxCoeff();
    return top + std::log((a.array() - top).exp().sum()) - a(label);
  };
  double worst = 0;
  const long double h = step;
  auto check = [&](long double& param, double analytic) {
    const long double saved = param;
    param = saved + h;
    const long double up = loss_at();
    param = saved - h;
    const long double down = loss_at();
    param = saved;
    const auto numeric = static_cast<double>((up - down) / (2 * h));
    const double rel = std::abs(analytic - numeric) / std::max(1e-8, std::abs(analytic) + std::abs(numeric));
    worst = std::max(worst, rel);
  };
  for (std::size_t l = 0; l < w.size(); ++l) {
    for (Eigen::Index i = 0; i < w[l].size(); ++i) check(w[l].data()[i], grads[l].weight.data()[i]);
    for (Eigen::Index i = 0; i < b[l].size(); ++i) check(b[l].data()[i], grads[l].bias.data()[i]);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Model file (JSON, version 1):
//   {"format": "skillseg-mlp", "version": 1, "activation": tag,
//    "layer_dims": [...], "weights": [[row-major out x in], ...],
//    "biases": [[...], ...], "train_config": {...}}

inline constexpr int kModelFormatVersion = 1;

inline nlohmann::json train_config_to_json(const TrainConfig& c) {
  return {{"batch_size", c.batch_size},       {"epochs", c.epochs},   {"learning_rate", c.learning_rate},
          {"beta1", c.beta1},                 {"beta2", c.beta2},     {"adam_eps", c.adam_eps},
          {"seed", c.seed},                   {"activation", std::string(activation_tag(c.activation))},
          {"layer_dims", c.layer_dims}};
}

inline void save_model(const io::fs::path& path, const MlpModel& m, const std::optional<TrainConfig>& cfg = {}) {
  nlohmann::json weights = nlohmann::json::array();
  nlohmann::json biases = nlohmann::json::array();
  for (const auto& l : m.layers) {
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(l.weight.size()));
    for (Eigen::Index r = 0; r < l.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weight.cols(); ++c) w.push_back(l.weight(r, c));
    weights.push_back(std::move(w));
    biases.push_back(std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size()));
  }
  nlohmann::json j = {{"format", "skillseg-mlp"},
                      {"version", kModelFormatVersion},
                      {"activation", std::string(activation_tag(m.activation))},
                      {"layer_dims", m.layer_dims},
                      {"weights", weights},
                      {"biases", biases}};
  if (cfg) j["train_config"] = train_config_to_json(*cfg);
  io::write_atomic(path, j.dump() + "\n");
}

inline MlpModel load_model(const io::fs::path& path) {
  const std::string ctx = path.string();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(io::read_text(path));
  } catch (const nlohmann::json::parse_error&) {
    fail(ErrorKind::kSchema, ctx + ": corrupt model file");
  }
  if (!j.is_object() || j.value("format", "") != "skillseg-mlp")
    fail(ErrorKind::kSchema, ctx + ": not a skillseg model file");
  const int version = io::field<int>(j, "version", ctx);
  if (version != kModelFormatVersion)
    fail(ErrorKind::kSchema, ctx + ": unsupported model version " + std::to_string(version));
  const auto tag = io::field<std::string>(j, "activation", ctx);
  const auto act = activation_from_tag(tag);
  if (!act) fail(ErrorKind::kSchema, ctx + ": unsupported activation '" + tag + "'");

  MlpModel m;
  m.activation = *act;
  m.layer_dims = io::field<std::vector<int>>(j, "layer_dims", ctx);
  const auto weights = io::field<std::vector<std::vector<double>>>(j, "weights", ctx);
  const auto biases = io::field<std::vector<std::vector<double>>>(j, "biases", ctx);
  if (m.layer_dims.size() < 2 || weights.size() != m.layer_dims.size() - 1 || biases.size() != weights.size())
    fail(ErrorKind::kSchema, ctx + ": layer count mismatch");
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const int in = m.layer_dims[l];
    const int out = m.layer_dims[l + 1];
    if (in < 1 || out < 1 || weights[l].size() != static_cast<std::size_t>(in) * out ||
        biases[l].size() != static_cast<std::size_t>(out))
      fail(ErrorKind::kSchema, ctx + ": layer " + std::to_string(l) + " has inconsistent shape");
    DenseLayer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd(out)};
    for (int r = 0; r < out; ++r)
      for (int c = 0; c < in; ++c) layer.weight(r, c) = weights[l][static_cast<std::size_t>(r) * in + c];
    for (int r = 0; r < out; ++r) layer.bias(r) = biases[l][static_cast<std::size_t>(r)];
    m.layers.push_back(std::move(layer));
  }
  return m;
}

/// "epoch,mean_loss" with 1-based epochs.
inline std::string loss_history_csv(std::span<const double> history) {
  std::string out = "epoch,mean_loss\n";
  char buf[64];
  for (std::size_t i = 0; i < history.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.10g\n", i + 1, history[i]);
    out += buf;
  }
  return out;
}

}  // namespace skillseg
