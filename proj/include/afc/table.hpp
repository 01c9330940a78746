// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "afc/fixed_point.hpp"
#include "afc/funcref.hpp"

namespace afc {

enum class DomainPoint { left_edge, midpoint, nearest_grid };
enum class RangeMode { floor, round };

/// Where a table entry samples its input segment and how the sampled value is
/// quantized. left_edge and midpoint treat code c as the segment
/// [c, c+1) * step with inputs truncated onto the grid; nearest_grid centers
/// the segments on the grid points and rounds inputs to the nearest code.
struct SamplingConvention {
  DomainPoint domain_point = DomainPoint::left_edge;
  RangeMode range_mode = RangeMode::round;
  bool operator==(const SamplingConvention&) const = default;
};

std::array<SamplingConvention, 6> all_conventions();
std::string to_string(const SamplingConvention& c);
SamplingConvention parse_convention(std::string_view text);

enum class RegionKind { odd_symmetric_saturating, negative_exp_saturating, plain };

enum class Region { saturate_hi, saturate_lo, linear_branch, table_branch };

/// Piecewise structure wrapped around the tabulated core.
///
/// odd_symmetric_saturating: f(-x) = -f(x); the table covers [0, breakpoint)
/// and |x| >= breakpoint saturates to +-saturation.
/// negative_exp_saturating: x >= 0 is the linear branch gain * x; the table
/// covers (-breakpoint, 0); x <= -breakpoint saturates to -saturation.
/// plain: table only, inputs clamp onto [0, max_value].
struct RegionSpec {
  RegionKind kind = RegionKind::plain;
  double breakpoint = 0.0;  // magnitude of the table/saturation boundary
  double saturation = 0.0;  // magnitude of the saturated output value
  double linear_gain = 1.0;
};

Region classify_region(double x, const RegionSpec& spec);

/// A quantized lookup table plus the wrapper needed to evaluate it over the
/// full input range. entries[c] is the output magnitude code for input
/// magnitude code c.
struct QuantizedFunctionTable {
  ActivationKind kind = ActivationKind::custom;
  double alpha = kDefaultAlpha;
  double lambda = kDefaultLambda;
  bool lambda_folded = true;

  FixedPointFormat in_fmt;
  FixedPointFormat out_fmt;
  SamplingConvention convention;
  RegionSpec region;
  std::vector<uint32_t> entries;

  uint32_t num_inputs() const { return in_fmt.total_bits(); }
  uint32_t num_outputs() const { return out_fmt.total_bits(); }
};

/// Tabulates f over the input format. For selu/elu the negative-branch
/// magnitude lambda * alpha * (1 - e^-t) is stored with lambda folded in
/// unless fold_lambda is false. Throws std::domain_error when a quantized
/// output exceeds the output format (the message names the offending code)
/// and std::invalid_argument for format/domain mismatches.
QuantizedFunctionTable build_table(const ActivationSpec& f,
                                   FixedPointFormat in_fmt,
                                   FixedPointFormat out_fmt,
                                   SamplingConvention convention = {},
                                   bool fold_lambda = true);

/// True when the wrapper routes some input through table entry `code`;
/// unreachable entries are free don't-cares for minimization.
bool code_reaches_table(const QuantizedFunctionTable& t, uint32_t code);

/// Output magnitude code of the saturation value.
uint32_t saturation_code(const QuantizedFunctionTable& t);

/// Linear-branch gain as a fixed-point multiplier on the output grid,
/// round(gain * 2^out_frac).
uint32_t linear_gain_code(const QuantizedFunctionTable& t);

/// Bit-accurate model of the emitted circuit: returns the signed output code
/// (value * 2^out_frac). The linear branch computes
/// (linear_gain_code * floor(x * 2^in_frac)) >> in_frac in integers, exactly
/// as the shift-add network does.
int64_t reference_eval_code(double x, const QuantizedFunctionTable& t);

/// reference_eval_code scaled back to a real value.
double reference_eval(double x, const QuantizedFunctionTable& t);

/// CSV dump: code,x,fx,entry,y per row with a header line.
std::string table_csv(const QuantizedFunctionTable& t);

}  // namespace afc
