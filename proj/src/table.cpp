// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/table.hpp"

#include <cmath>
#include <stdexcept>

#include "afc/text.hpp"

namespace afc {
namespace {

// Quantized code as a real number, without saturation, so overflow is
// detectable before the clamp.
double quantize_raw(double v, int frac_bits, RangeMode mode) {
  double scaled = std::ldexp(v, frac_bits);
  return mode == RangeMode::floor ? std::floor(scaled)
                                  : std::floor(scaled + 0.5);
}

// The nonnegative magnitude curve the table stores, over t >= 0.
double magnitude_function(const ActivationSpec& f, bool fold_lambda,
                          double t) {
  switch (f.kind) {
    case ActivationKind::tanh: return std::tanh(t);
    case ActivationKind::sigmoid: return sigmoid_exact(t);
    case ActivationKind::exp: return std::exp(t);
    case ActivationKind::elu:
    case ActivationKind::selu: {
      double l = f.kind == ActivationKind::elu ? 1.0 : f.lambda;
      double mag = -f.alpha * std::expm1(-t);  // alpha (1 - e^-t)
      return fold_lambda ? l * mag : mag;
    }
    case ActivationKind::custom: return f.custom_fn(t);
  }
  throw std::logic_error("unknown activation kind");
}

RegionSpec make_region(const ActivationSpec& f, bool fold_lambda,
                       const FixedPointFormat& in_fmt) {
  RegionSpec r;
  switch (f.kind) {
    case ActivationKind::tanh:
      r.kind = RegionKind::odd_symmetric_saturating;
      r.breakpoint = std::ldexp(1.0, in_fmt.int_bits);
      r.saturation = 1.0;  // asymptote
      r.linear_gain = 1.0;
      break;
    case ActivationKind::elu:
    case ActivationKind::selu: {
      double l = f.kind == ActivationKind::elu ? 1.0 : f.lambda;
      r.kind = RegionKind::negative_exp_saturating;
      r.breakpoint = in_fmt.max_value();
      r.saturation = (fold_lambda ? l : 1.0) * f.alpha;  // asymptote
      r.linear_gain = l;
      break;
    }
    default:
      r.kind = RegionKind::plain;
      r.breakpoint = in_fmt.max_value();
      r.saturation = 0.0;
      r.linear_gain = 1.0;
      break;
  }
  return r;
}

RoundMode input_round_mode(const SamplingConvention& c) {
  return c.domain_point == DomainPoint::nearest_grid ? RoundMode::round
                                                     : RoundMode::floor;
}

RoundMode output_round_mode(const SamplingConvention& c) {
  return c.range_mode == RangeMode::floor ? RoundMode::floor
                                          : RoundMode::round;
}

// Scale a stored code by the external lambda multiplier when the table was
// built without folding it in.
int64_t apply_gain(const QuantizedFunctionTable& t, int64_t code) {
  if (t.lambda_folded || t.region.kind != RegionKind::negative_exp_saturating)
    return code;
  int64_t gain = linear_gain_code(t);
  return (gain * code) >> t.out_fmt.frac_bits;
}

}  // namespace

std::array<SamplingConvention, 6> all_conventions() {
  return {{{DomainPoint::left_edge, RangeMode::floor},
           {DomainPoint::left_edge, RangeMode::round},
           {DomainPoint::midpoint, RangeMode::floor},
           {DomainPoint::midpoint, RangeMode::round},
           {DomainPoint::nearest_grid, RangeMode::floor},
           {DomainPoint::nearest_grid, RangeMode::round}}};
}

std::string to_string(const SamplingConvention& c) {
  std::string s;
  switch (c.domain_point) {
    case DomainPoint::left_edge: s = "left_edge"; break;
    case DomainPoint::midpoint: s = "midpoint"; break;
    case DomainPoint::nearest_grid: s = "nearest_grid"; break;
  }
  s += c.range_mode == RangeMode::floor ? ",floor" : ",round";
  return s;
}

SamplingConvention parse_convention(std::string_view text) {
  size_t comma = text.find(',');
  if (comma == std::string_view::npos)
    throw std::invalid_argument("bad convention '" + std::string(text) +
                                "', expected <domain_point>,<range_mode>");
  std::string_view dp = text.substr(0, comma);
  std::string_view rm = text.substr(comma + 1);
  SamplingConvention c;
  if (dp == "left_edge") c.domain_point = DomainPoint::left_edge;
  else if (dp == "midpoint") c.domain_point = DomainPoint::midpoint;
  else if (dp == "nearest_grid") c.domain_point = DomainPoint::nearest_grid;
  else
    throw std::invalid_argument("bad domain point '" + std::string(dp) + "'");
  if (rm == "floor") c.range_mode = RangeMode::floor;
  else if (rm == "round") c.range_mode = RangeMode::round;
  else
    throw std::invalid_argument("bad range mode '" + std::string(rm) + "'");
  return c;
}

Region classify_region(double x, const RegionSpec& spec) {
  switch (spec.kind) {
    case RegionKind::odd_symmetric_saturating:
      if (x >= spec.breakpoint) return Region::saturate_hi;
      if (x <= -spec.breakpoint) return Region::saturate_lo;
      return Region::table_branch;
    case RegionKind::negative_exp_saturating:
      if (x <= -spec.breakpoint) return Region::saturate_lo;
      if (x < 0.0) return Region::table_branch;
      return Region::linear_branch;
    case RegionKind::plain: return Region::table_branch;
  }
  throw std::logic_error("unknown region kind");
}

QuantizedFunctionTable build_table(const ActivationSpec& f,
                                   FixedPointFormat in_fmt,
                                   FixedPointFormat out_fmt,
                                   SamplingConvention convention,
                                   bool fold_lambda) {
  if (!in_fmt.valid() || !out_fmt.valid())
    throw std::invalid_argument("invalid fixed-point format");
  if (f.kind == ActivationKind::custom) {
    if (!f.custom_fn)
      throw std::invalid_argument("custom activation needs a function");
    if (f.custom_domain.lo > 0.0 || f.custom_domain.hi < in_fmt.max_value())
      throw std::invalid_argument(
          "custom domain does not cover [0, " +
          fmt_double(in_fmt.max_value()) + "]");
  }

  QuantizedFunctionTable t;
  t.kind = f.kind;
  t.alpha = f.alpha;
  t.lambda = f.lambda;
  t.lambda_folded = fold_lambda;
  t.in_fmt = in_fmt;
  t.out_fmt = out_fmt;
  t.convention = convention;
  t.region = make_region(f, fold_lambda, in_fmt);

  double step = in_fmt.step();
  double offset =
      convention.domain_point == DomainPoint::midpoint ? 0.5 : 0.0;
  t.entries.resize(in_fmt.num_codes());
  for (uint32_t c = 0; c < in_fmt.num_codes(); ++c) {
    double rep = (c + offset) * step;
    double v = magnitude_function(f, fold_lambda, rep);
    if (v < 0.0)
      throw std::invalid_argument("negative magnitude at code " +
                                  std::to_string(c));
    double raw = quantize_raw(v, out_fmt.frac_bits, convention.range_mode);
    if (raw > static_cast<double>(out_fmt.max_code()))
      throw std::domain_error(
          "output overflow at code " + std::to_string(c) + ": value " +
          fmt_double(v) + " does not fit " + to_string(out_fmt));
    t.entries[c] = raw <= 0.0 ? 0u : static_cast<uint32_t>(raw);
  }
  return t;
}

bool code_reaches_table(const QuantizedFunctionTable& t, uint32_t code) {
  double mag = decode(code, t.in_fmt);
  double x =
      t.region.kind == RegionKind::negative_exp_saturating ? -mag : mag;
  return classify_region(x, t.region) == Region::table_branch;
}

uint32_t saturation_code(const QuantizedFunctionTable& t) {
  return encode(t.region.saturation, t.out_fmt,
                output_round_mode(t.convention));
}

uint32_t linear_gain_code(const QuantizedFunctionTable& t) {
  double scaled = std::ldexp(t.region.linear_gain, t.out_fmt.frac_bits);
  return static_cast<uint32_t>(std::floor(scaled + 0.5));
}

int64_t reference_eval_code(double x, const QuantizedFunctionTable& t) {
  switch (classify_region(x, t.region)) {
    case Region::saturate_hi:
      return apply_gain(t, saturation_code(t));
    case Region::saturate_lo:
      return -apply_gain(t, saturation_code(t));
    case Region::linear_branch: {
      int64_t gain = linear_gain_code(t);
      int64_t xq = static_cast<int64_t>(
          std::floor(std::ldexp(x, t.in_fmt.frac_bits)));
      return (gain * xq) >> t.in_fmt.frac_bits;
    }
    case Region::table_branch: {
      bool neg = false;
      double mag = x;
      switch (t.region.kind) {
        case RegionKind::odd_symmetric_saturating:
          neg = x < 0.0;
          mag = std::fabs(x);
          break;
        case RegionKind::negative_exp_saturating:
          neg = true;
          mag = -x;
          break;
        case RegionKind::plain:
          mag = x < 0.0 ? 0.0 : x;
          break;
      }
      uint32_t c = encode(mag, t.in_fmt, input_round_mode(t.convention));
      int64_t y = apply_gain(t, t.entries[c]);
      return neg ? -y : y;
    }
  }
  throw std::logic_error("unknown region");
}

double reference_eval(double x, const QuantizedFunctionTable& t) {
  return std::ldexp(static_cast<double>(reference_eval_code(x, t)),
                    -t.out_fmt.frac_bits);
}

std::string table_csv(const QuantizedFunctionTable& t) {
  std::string s = "code,x,fx,entry,y\n";
  ActivationSpec f;
  f.kind = t.kind;
  f.alpha = t.alpha;
  f.lambda = t.lambda;
  double step = t.in_fmt.step();
  double offset =
      t.convention.domain_point == DomainPoint::midpoint ? 0.5 : 0.0;
  for (uint32_t c = 0; c < t.entries.size(); ++c) {
    double rep = (c + offset) * step;
    double v = t.kind == ActivationKind::custom
                   ? decode(t.entries[c], t.out_fmt)
                   : magnitude_function(f, t.lambda_folded, rep);
    s += std::to_string(c) + "," + fmt_double(rep) + "," + fmt_double(v) +
         "," + std::to_string(t.entries[c]) + "," +
         fmt_double(decode(t.entries[c], t.out_fmt)) + "\n";
  }
  return s;
}

}  // namespace afc
