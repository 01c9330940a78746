// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace afc {

/// A product term over `width` inputs. Bit i of `mask` marks input i as
/// bound; bit i of `value` gives its polarity. mask == 0 is the universal
/// cube. The text form is MSB first over {0,1,-}, so input width-1 prints
/// leftmost.
struct Cube {
  uint16_t width = 0;
  uint16_t mask = 0;
  uint16_t value = 0;  // only bits inside mask may be set

  bool contains_minterm(uint32_t m) const {
    return (static_cast<uint16_t>(m) & mask) == value;
  }
  /// True when every minterm of o lies inside this cube.
  bool contains(const Cube& o) const {
    return (mask & ~o.mask) == 0 && ((o.value ^ value) & mask) == 0;
  }
  bool intersects(const Cube& o) const {
    return ((value ^ o.value) & (mask & o.mask)) == 0;
  }
  int literal_count() const;
  uint32_t num_minterms() const;
  std::string to_string() const;

  bool operator==(const Cube& o) const {
    return width == o.width && mask == o.mask && value == o.value;
  }
  /// Lexicographic order of the text form ('-' < '0' < '1').
  std::strong_ordering operator<=>(const Cube& o) const;
};

Cube cube_from_string(std::string_view text);
Cube minterm_cube(uint32_t m, int width);

/// Sum of products for one output.
struct SopCover {
  int width = 0;
  int output = 0;
  std::vector<Cube> cubes;

  bool eval(uint32_t minterm) const;
  int literal_count() const;
  bool operator==(const SopCover&) const = default;
};

/// Multi-output cover with shared products. outputs[j] lists, in ascending
/// order, the indices of the products feeding output j (bit j of eval()).
struct PlaCover {
  int num_inputs = 0;
  int num_outputs = 0;
  std::vector<Cube> products;
  std::vector<std::vector<int>> outputs;

  uint32_t eval(uint32_t input_code) const;
  SopCover output_cover(int j) const;

  /// Sorts products lexicographically, merges duplicates and drops products
  /// feeding no output. Emission relies on this order being applied first.
  void canonicalize();

  bool operator==(const PlaCover&) const = default;
};

}  // namespace afc
