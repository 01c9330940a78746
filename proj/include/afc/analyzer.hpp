// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "afc/netlist.hpp"
#include "afc/table.hpp"

namespace afc {

enum class Method {
  combinational,
  rom_y,
  rom_kb,
  taylor,
  pow2_approx,
  taylor5_lut,
  exact_ref,
};

Method parse_method(std::string_view name);
std::string to_string(Method m);

/// Methods reported by default for a function kind.
std::vector<Method> default_methods(ActivationKind kind);

/// True when the method evaluates the quantized table itself. Polynomial
/// methods never do; the rom baselines do only for the wrapped kinds (tanh,
/// selu, elu), falling back to interval segmentation elsewhere.
bool method_needs_table(Method m, ActivationKind kind);

/// Mean of |approx(x) - exact(x)| over n uniform deterministic samples of
/// [iv.lo, iv.hi), expressed in percent. Sample i sits at
/// lo + (i + 0.5) / n * (hi - lo), so the stream is identical across runs.
double average_error(const std::function<double(double)>& approx,
                     const std::function<double(double)>& exact, Interval iv,
                     long n);

double max_error(const std::function<double(double)>& approx,
                 const std::function<double(double)>& exact, Interval iv,
                 long n);

enum class KbFit { secant, least_squares };

/// Per-segment linear model stored by the slope/intercept ROM. k and b are
/// the fitted reals; k_q and b_q the values actually stored, quantized onto
/// the word grid.
struct KbSegment {
  double x0 = 0.0;
  double k = 0.0, b = 0.0;
  double k_q = 0.0, b_q = 0.0;
};

/// Segments for the table's magnitude core: secant through the exact curve
/// at consecutive grid points (b anchored at the left endpoint after slope
/// quantization), or a per-segment least-squares line.
std::vector<KbSegment> build_kb_segments(const QuantizedFunctionTable& t,
                                         const KbWordFormat& kb,
                                         KbFit fit = KbFit::secant);

struct AnalyzerConfig {
  Interval interval;        // empty => default for the kind
  long n = 100000;
  SamplingConvention convention;
  bool fold_lambda = true;
  int taylor_order = 5;
  double pow2_coeff = 1.5;  // sigmoid/tanh exponent coefficient
  KbWordFormat kb;          // zero frac_bits => default_kb_format(out_fmt)
  KbFit kb_fit = KbFit::secant;
};

struct ErrorReport {
  Method method = Method::exact_ref;
  SamplingConvention convention;
  double average_error_percent = 0.0;
  double max_abs_error = 0.0;
  long samples = 0;
  CostReport cost;
};

/// Evaluator for one method against the given table (methods that need one).
std::function<double(double)> method_eval(Method m, const ActivationSpec& f,
                                          const QuantizedFunctionTable& t,
                                          const AnalyzerConfig& cfg);

/// Error and cost for each method over the same interval and sample stream.
/// combinational and rom_y run the identical table evaluation and therefore
/// report the identical average error.
std::vector<ErrorReport> compare_methods(const ActivationSpec& f,
                                         FixedPointFormat in_fmt,
                                         FixedPointFormat out_fmt,
                                         const std::vector<Method>& methods,
                                         const AnalyzerConfig& cfg = {});

/// CSV with one row per method: method,convention,avg_error_pct,max_abs_error,
/// samples, the cost columns and the area ratio against the combinational row.
std::string error_report_csv(const std::vector<ErrorReport>& reports);

struct ConventionResult {
  SamplingConvention convention;
  double average_error_percent = 0.0;
};

/// Table-quantization error for every sampling convention, sorted by
/// distance from target_ae (NaN target keeps convention order).
std::vector<ConventionResult> convention_sweep(const ActivationSpec& f,
                                               FixedPointFormat in_fmt,
                                               FixedPointFormat out_fmt,
                                               Interval iv, long n,
                                               double target_ae);

/// CSV of x,exact,approx,abs_error rows for plotting one method's curve.
std::string error_curve_csv(const std::function<double(double)>& approx,
                            const std::function<double(double)>& exact,
                            Interval iv, long points);

/// Default analysis interval: the wrapper's table region for wrapped kinds,
/// [-1, 1] for exp and sigmoid, the declared domain for custom functions.
Interval default_interval(const ActivationSpec& f, FixedPointFormat in_fmt);

}  // namespace afc
