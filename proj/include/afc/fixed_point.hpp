// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace afc {

enum class RoundMode { floor, round, ceil };

/// Unsigned magnitude fixed-point format with int_bits.frac_bits layout.
/// Total width must lie in [1, 16]; the value of code c is exactly
/// c * 2^-frac_bits.
struct FixedPointFormat {
  int int_bits = 0;
  int frac_bits = 0;

  int total_bits() const { return int_bits + frac_bits; }
  uint32_t num_codes() const { return 1u << total_bits(); }
  uint32_t max_code() const { return num_codes() - 1; }
  double step() const;
  double max_value() const;
  bool valid() const;
  bool operator==(const FixedPointFormat&) const = default;
};

/// Parses "U<int>.<frac>", e.g. "U1.6". Throws std::invalid_argument on
/// malformed text or widths outside [1, 16].
FixedPointFormat parse_format(std::string_view text);
std::string to_string(const FixedPointFormat& fmt);

std::string to_string(RoundMode mode);
RoundMode parse_round_mode(std::string_view text);

/// Quantizes a nonnegative value onto the format grid and saturates at the
/// format maximum. RoundMode::round breaks ties upward. Negative inputs and
/// NaN clamp to code 0.
uint32_t encode(double x, const FixedPointFormat& fmt, RoundMode mode);

/// Exact value of a code. Throws std::out_of_range for codes outside the
/// format.
double decode(uint32_t code, const FixedPointFormat& fmt);

/// Sign-magnitude pair; magnitude uses the unsigned grid and zero is kept
/// non-negative.
struct SignedValue {
  bool negative = false;
  uint32_t magnitude = 0;
  bool operator==(const SignedValue&) const = default;
};

SignedValue encode_signed(double x, const FixedPointFormat& fmt, RoundMode mode);
double decode(const SignedValue& v, const FixedPointFormat& fmt);

}  // namespace afc
