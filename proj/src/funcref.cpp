// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/funcref.hpp"

#include <cmath>
#include <stdexcept>

namespace afc {

double tanh_exact(double x) { return std::tanh(x); }

double sigmoid_exact(double x) {
  // Split to avoid overflow in exp for large |x|.
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  double e = std::exp(x);
  return e / (1.0 + e);
}

double elu(double x, double a) {
  return x >= 0.0 ? x : a * std::expm1(x);
}

double selu(double x, double a, double l) { return l * elu(x, a); }

double exp_pow2_approx(double x) { return std::exp2(1.44 * x); }

double sigmoid_pow2_approx(double x, double coeff) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp2(-coeff * x));
  double e = std::exp2(coeff * x);
  return e / (1.0 + e);
}

double tanh_pow2_approx(double x, double coeff) {
  return 1.0 - 2.0 * sigmoid_pow2_approx(-2.0 * x, coeff);
}

double tanh_taylor(double x, int order) {
  if (order != 1 && order != 3 && order != 5)
    throw std::invalid_argument("tanh Taylor order must be 1, 3 or 5");
  double x2 = x * x;
  double y = x;
  if (order >= 3) y -= x * x2 / 3.0;
  if (order >= 5) y += 2.0 * x * x2 * x2 / 15.0;
  return y;
}

bool tanh_small_input(double x) { return std::fabs(x) < 0.39; }

double taylor_exp(double x, int order, double x0) {
  if (order < 0 || order > 30)
    throw std::invalid_argument("exp Taylor order must be in [0, 30]");
  double d = x - x0;
  double term = std::exp(x0);
  double sum = term;
  for (int k = 1; k <= order; ++k) {
    term *= d / k;
    sum += term;
  }
  return sum;
}

double ActivationSpec::operator()(double x) const {
  switch (kind) {
    case ActivationKind::tanh: return tanh_exact(x);
    case ActivationKind::sigmoid: return sigmoid_exact(x);
    case ActivationKind::elu: return elu(x, alpha);
    case ActivationKind::selu: return selu(x, alpha, lambda);
    case ActivationKind::exp: return std::exp(x);
    case ActivationKind::custom:
      if (!custom_fn) throw std::logic_error("custom activation without fn");
      return custom_fn(x);
  }
  throw std::logic_error("unknown activation kind");
}

double ActivationSpec::derivative(double x) const {
  switch (kind) {
    case ActivationKind::tanh: {
      double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case ActivationKind::sigmoid: {
      double s = sigmoid_exact(x);
      return s * (1.0 - s);
    }
    case ActivationKind::elu:
      return x >= 0.0 ? 1.0 : alpha * std::exp(x);
    case ActivationKind::selu:
      return x >= 0.0 ? lambda : lambda * alpha * std::exp(x);
    case ActivationKind::exp: return std::exp(x);
    case ActivationKind::custom:
      if (!custom_derivative)
        throw std::logic_error("custom activation without derivative");
      return custom_derivative(x);
  }
  throw std::logic_error("unknown activation kind");
}

ActivationKind parse_activation(std::string_view name) {
  if (name == "tanh") return ActivationKind::tanh;
  if (name == "sigmoid") return ActivationKind::sigmoid;
  if (name == "elu") return ActivationKind::elu;
  if (name == "selu") return ActivationKind::selu;
  if (name == "exp") return ActivationKind::exp;
  if (name == "custom") return ActivationKind::custom;
  throw std::invalid_argument("unknown activation '" + std::string(name) +
                              "'");
}

std::string to_string(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::tanh: return "tanh";
    case ActivationKind::sigmoid: return "sigmoid";
    case ActivationKind::elu: return "elu";
    case ActivationKind::selu: return "selu";
    case ActivationKind::exp: return "exp";
    case ActivationKind::custom: return "custom";
  }
  return "?";
}

}  // namespace afc
