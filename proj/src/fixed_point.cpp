// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/fixed_point.hpp"

#include <cmath>
#include <stdexcept>

namespace afc {

double FixedPointFormat::step() const { return std::ldexp(1.0, -frac_bits); }

double FixedPointFormat::max_value() const { return max_code() * step(); }

bool FixedPointFormat::valid() const {
  return int_bits >= 0 && frac_bits >= 0 && total_bits() >= 1 &&
         total_bits() <= 16;
}

FixedPointFormat parse_format(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("bad fixed-point format '" +
                                std::string(text) +
                                "', expected U<int>.<frac> with 1..16 bits");
  };
  if (text.size() < 4 || (text[0] != 'U' && text[0] != 'u')) fail();
  size_t dot = text.find('.');
  if (dot == std::string_view::npos || dot == 1 || dot + 1 == text.size())
    fail();
  int ib = 0, fb = 0;
  for (size_t i = 1; i < dot; ++i) {
    if (text[i] < '0' || text[i] > '9') fail();
    ib = ib * 10 + (text[i] - '0');
    if (ib > 16) fail();
  }
  for (size_t i = dot + 1; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') fail();
    fb = fb * 10 + (text[i] - '0');
    if (fb > 16) fail();
  }
  FixedPointFormat fmt{ib, fb};
  if (!fmt.valid()) fail();
  return fmt;
}

std::string to_string(const FixedPointFormat& fmt) {
  return "U" + std::to_string(fmt.int_bits) + "." +
         std::to_string(fmt.frac_bits);
}

std::string to_string(RoundMode mode) {
  switch (mode) {
    case RoundMode::floor: return "floor";
    case RoundMode::round: return "round";
    case RoundMode::ceil: return "ceil";
  }
  return "?";
}

RoundMode parse_round_mode(std::string_view text) {
  if (text == "floor") return RoundMode::floor;
  if (text == "round") return RoundMode::round;
  if (text == "ceil") return RoundMode::ceil;
  throw std::invalid_argument("bad round mode '" + std::string(text) + "'");
}

uint32_t encode(double x, const FixedPointFormat& fmt, RoundMode mode) {
  if (!fmt.valid()) throw std::invalid_argument("invalid fixed-point format");
  if (!(x > 0.0)) return 0;  // negatives and NaN clamp to zero
  double scaled = std::ldexp(x, fmt.frac_bits);
  double q;
  switch (mode) {
    case RoundMode::floor: q = std::floor(scaled); break;
    case RoundMode::round: q = std::floor(scaled + 0.5); break;  // ties up
    case RoundMode::ceil: q = std::ceil(scaled); break;
    default: q = 0.0; break;
  }
  if (q <= 0.0) return 0;
  if (q >= static_cast<double>(fmt.max_code())) return fmt.max_code();
  return static_cast<uint32_t>(q);
}

double decode(uint32_t code, const FixedPointFormat& fmt) {
  if (!fmt.valid()) throw std::invalid_argument("invalid fixed-point format");
  if (code > fmt.max_code())
    throw std::out_of_range("code " + std::to_string(code) +
                            " out of range for " + to_string(fmt));
  return std::ldexp(static_cast<double>(code), -fmt.frac_bits);
}

SignedValue encode_signed(double x, const FixedPointFormat& fmt,
                          RoundMode mode) {
  // Round-to-nearest on the signed line maps to magnitude rounding with the
  // tie direction flipped on the negative side; floor/ceil swap roles there.
  if (std::isnan(x) || x >= 0.0) return {false, encode(x, fmt, mode)};
  RoundMode mag_mode = mode;
  if (mode == RoundMode::floor) mag_mode = RoundMode::ceil;
  else if (mode == RoundMode::ceil) mag_mode = RoundMode::floor;
  uint32_t mag;
  if (mode == RoundMode::round) {
    double scaled = std::ldexp(-x, fmt.frac_bits);
    double q = std::ceil(scaled - 0.5);  // ties toward +inf on the value line
    if (q <= 0.0) mag = 0;
    else if (q >= static_cast<double>(fmt.max_code())) mag = fmt.max_code();
    else mag = static_cast<uint32_t>(q);
  } else {
    mag = encode(-x, fmt, mag_mode);
  }
  return {mag != 0, mag};
}

double decode(const SignedValue& v, const FixedPointFormat& fmt) {
  double mag = decode(v.magnitude, fmt);
  return v.negative ? -mag : mag;
}

}  // namespace afc
