// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <string_view>

namespace afc {

inline constexpr double kDefaultAlpha = 1.6733;
inline constexpr double kDefaultLambda = 1.0507;

enum class ActivationKind { tanh, sigmoid, elu, selu, exp, custom };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// An activation function together with its parameters. operator() evaluates
/// the exact real-valued form; derivative() is used by the training loop.
struct ActivationSpec {
  ActivationKind kind = ActivationKind::tanh;
  double alpha = kDefaultAlpha;
  double lambda = kDefaultLambda;

  // kind == custom only. Custom functions must declare the domain and range
  // they are defined on so downstream format checks can validate them.
  std::function<double(double)> custom_fn;
  std::function<double(double)> custom_derivative;
  Interval custom_domain;
  Interval custom_range;

  double operator()(double x) const;
  double derivative(double x) const;
};

double tanh_exact(double x);
double sigmoid_exact(double x);
double elu(double x, double a = kDefaultAlpha);
double selu(double x, double a = kDefaultAlpha, double l = kDefaultLambda);

/// 2^(1.44 x), the power-of-two replacement for e^x.
double exp_pow2_approx(double x);

/// 1 / (1 + 2^(-coeff x)). The hardware-friendly default uses coeff = 1.5;
/// coeff = 1.44 gives the closer fit.
double sigmoid_pow2_approx(double x, double coeff = 1.5);
double tanh_pow2_approx(double x, double coeff = 1.5);

/// Odd polynomial x - x^3/3 + 2 x^5/15. `order` keeps the terms of degree
/// <= order (1, 3 or 5).
double tanh_taylor(double x, int order = 5);

/// True where tanh(x) ~ x holds to within 0.02.
bool tanh_small_input(double x);

/// Truncated Taylor polynomial of e^x about x0, degree `order`.
double taylor_exp(double x, int order, double x0 = 0.0);

ActivationKind parse_activation(std::string_view name);
std::string to_string(ActivationKind kind);

}  // namespace afc
