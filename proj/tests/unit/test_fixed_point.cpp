// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "afc/fixed_point.hpp"

using namespace afc;

TEST_SUITE("fixed_point") {

TEST_CASE("format parse and print") {
  FixedPointFormat f = parse_format("U1.6");
  CHECK(f.int_bits == 1);
  CHECK(f.frac_bits == 6);
  CHECK(f.total_bits() == 7);
  CHECK(f.num_codes() == 128);
  CHECK(f.max_code() == 127);
  CHECK(f.step() == 1.0 / 64);
  CHECK(to_string(f) == "U1.6");

  CHECK(parse_format("U2.3").max_value() == 3.875);
  CHECK(parse_format("U0.4") == FixedPointFormat{0, 4});
  CHECK(parse_format("U16.0").total_bits() == 16);

  CHECK_THROWS_AS(parse_format("1.6"), std::invalid_argument);
  CHECK_THROWS_AS(parse_format("U16"), std::invalid_argument);
  CHECK_THROWS_AS(parse_format("U1x6"), std::invalid_argument);
  CHECK_THROWS_AS(parse_format("U9.8"), std::invalid_argument);  // 17 bits
  CHECK_THROWS_AS(parse_format("U0.0"), std::invalid_argument);  // empty
  CHECK_THROWS_AS(parse_format("U1.6a"), std::invalid_argument);
}

TEST_CASE("encode rounds and saturates") {
  FixedPointFormat f{1, 6};
  double t = std::tanh(0.5);  // * 64 = 29.575...
  CHECK(encode(t, f, RoundMode::round) == 30);
  CHECK(encode(t, f, RoundMode::floor) == 29);
  CHECK(encode(t, f, RoundMode::ceil) == 30);

  CHECK(encode(29.5 / 64, f, RoundMode::round) == 30);  // ties go up
  CHECK(encode(1.0, f, RoundMode::round) == 64);
  CHECK(encode(10.0, f, RoundMode::floor) == 127);
  CHECK(encode(-0.25, f, RoundMode::round) == 0);
  CHECK(encode(std::nan(""), f, RoundMode::round) == 0);
  CHECK(encode(0.0, f, RoundMode::ceil) == 0);
}

TEST_CASE("decode is exact and range checked") {
  FixedPointFormat f{1, 6};
  CHECK(decode(30u, f) == 0.46875);
  CHECK(decode(0u, f) == 0.0);
  CHECK(decode(127u, f) == 127.0 / 64);
  CHECK_THROWS_AS(decode(128u, f), std::out_of_range);
}

TEST_CASE("signed encode mirrors the grid") {
  FixedPointFormat f{1, 6};
  CHECK(encode_signed(0.46875, f, RoundMode::round) ==
        SignedValue{false, 30});
  CHECK(encode_signed(-0.46875, f, RoundMode::round) ==
        SignedValue{true, 30});
  CHECK(decode(SignedValue{true, 30}, f) == -0.46875);

  // Ties round toward +inf on the value line: -29.5/64 lands on -29.
  CHECK(encode_signed(-29.5 / 64, f, RoundMode::round) ==
        SignedValue{true, 29});
  // floor/ceil swap roles on the negative side.
  CHECK(encode_signed(-0.001, f, RoundMode::floor) == SignedValue{true, 1});
  CHECK(encode_signed(-0.001, f, RoundMode::ceil) == SignedValue{false, 0});
  CHECK(encode_signed(-10.0, f, RoundMode::round) == SignedValue{true, 127});
  CHECK(encode_signed(0.0, f, RoundMode::round).negative == false);
}

}  // TEST_SUITE
