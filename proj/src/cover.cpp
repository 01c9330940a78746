// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/cover.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace afc {

int Cube::literal_count() const { return std::popcount(mask); }

uint32_t Cube::num_minterms() const {
  return 1u << (width - literal_count());
}

std::string Cube::to_string() const {
  std::string s(width, '-');
  for (int i = 0; i < width; ++i) {
    uint16_t bit = static_cast<uint16_t>(1u << i);
    if (mask & bit) s[width - 1 - i] = (value & bit) ? '1' : '0';
  }
  return s;
}

std::strong_ordering Cube::operator<=>(const Cube& o) const {
  if (auto c = width <=> o.width; c != 0) return c;
  for (int i = width - 1; i >= 0; --i) {
    uint16_t bit = static_cast<uint16_t>(1u << i);
    int a = (mask & bit) ? ((value & bit) ? 2 : 1) : 0;
    int b = (o.mask & bit) ? ((o.value & bit) ? 2 : 1) : 0;
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

Cube cube_from_string(std::string_view text) {
  if (text.empty() || text.size() > 16)
    throw std::invalid_argument("cube width must be 1..16");
  Cube c;
  c.width = static_cast<uint16_t>(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    uint16_t bit = static_cast<uint16_t>(1u << (text.size() - 1 - i));
    switch (text[i]) {
      case '-': break;
      case '0': c.mask |= bit; break;
      case '1': c.mask |= bit; c.value |= bit; break;
      default:
        throw std::invalid_argument("bad cube character '" +
                                    std::string(1, text[i]) + "'");
    }
  }
  return c;
}

Cube minterm_cube(uint32_t m, int width) {
  Cube c;
  c.width = static_cast<uint16_t>(width);
  c.mask = static_cast<uint16_t>((1u << width) - 1);
  c.value = static_cast<uint16_t>(m) & c.mask;
  return c;
}

bool SopCover::eval(uint32_t minterm) const {
  for (const Cube& c : cubes)
    if (c.contains_minterm(minterm)) return true;
  return false;
}

int SopCover::literal_count() const {
  int n = 0;
  for (const Cube& c : cubes) n += c.literal_count();
  return n;
}

uint32_t PlaCover::eval(uint32_t input_code) const {
  uint32_t out = 0;
  for (int j = 0; j < num_outputs; ++j) {
    for (int p : outputs[j]) {
      if (products[p].contains_minterm(input_code)) {
        out |= 1u << j;
        break;
      }
    }
  }
  return out;
}

SopCover PlaCover::output_cover(int j) const {
  SopCover s;
  s.width = num_inputs;
  s.output = j;
  for (int p : outputs[j]) s.cubes.push_back(products[p]);
  return s;
}

void PlaCover::canonicalize() {
  // Merge identical products, keeping the union of their output sets.
  std::map<Cube, std::vector<char>> merged;
  for (int j = 0; j < num_outputs; ++j) {
    for (int p : outputs[j]) {
      auto& cols = merged[products[p]];
      cols.resize(num_outputs, 0);
      cols[j] = 1;
    }
  }
  products.clear();
  outputs.assign(num_outputs, {});
  for (const auto& [cube, cols] : merged) {
    int idx = static_cast<int>(products.size());
    products.push_back(cube);
    for (int j = 0; j < num_outputs; ++j)
      if (cols[j]) outputs[j].push_back(idx);
  }
}

}  // namespace afc
