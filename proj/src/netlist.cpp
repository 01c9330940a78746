// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/netlist.hpp"

#include <algorithm>
#include <bit>

#include "afc/text.hpp"

namespace afc {
namespace {

int ceil_log2(int n) {
  if (n <= 1) return 0;
  return std::bit_width(static_cast<unsigned>(n - 1));
}

}  // namespace

uint32_t eval(const PlaNetlist& n, uint32_t input_code) {
  return n.cover.eval(input_code);
}

CostReport cost(const PlaCover& cover) {
  CostReport r;
  r.product_count = static_cast<int>(cover.products.size());
  int max_and = 0;
  uint16_t complemented = 0;
  for (const Cube& c : cover.products) {
    int lits = c.literal_count();
    r.literal_count += lits;
    max_and = std::max(max_and, lits);
    complemented |= static_cast<uint16_t>(c.mask & ~c.value);
    if (lits >= 2) r.gate_equiv_area += lits - 1;
  }
  int max_or = 0;
  for (const auto& fanin : cover.outputs) {
    int f = static_cast<int>(fanin.size());
    r.or_input_count += f;
    max_or = std::max(max_or, f);
    if (f >= 2) r.gate_equiv_area += f - 1;
  }
  r.inverter_count = std::popcount(complemented);
  r.gate_equiv_area += r.inverter_count;
  r.depth_levels = ceil_log2(max_and) + ceil_log2(max_or);
  return r;
}

KbWordFormat default_kb_format(const FixedPointFormat& out_fmt) {
  return {1, out_fmt.frac_bits + 4};
}

CostReport rom_cost(const QuantizedFunctionTable& t, RomKind kind,
                    const KbWordFormat& kb) {
  CostReport r;
  long rows = std::max(32L, static_cast<long>(t.in_fmt.num_codes()));
  if (kind == RomKind::values) {
    r.rom_bits = rows * t.out_fmt.total_bits();
    r.cycles = 1;
  } else {
    KbWordFormat w = kb.frac_bits > 0 ? kb : default_kb_format(t.out_fmt);
    r.rom_bits = rows * 2L * w.width();
    r.cycles = 2;
  }
  // One gate equivalent per stored bit; decode and sense are not modeled.
  r.gate_equiv_area = r.rom_bits;
  return r;
}

std::string cost_csv_header() {
  return "name,product_count,literal_count,or_input_count,inverter_count,"
         "gate_equiv_area,depth_levels,rom_bits,cycles\n";
}

std::string cost_csv_row(const std::string& name, const CostReport& c) {
  std::string s = name;
  s += "," + std::to_string(c.product_count);
  s += "," + std::to_string(c.literal_count);
  s += "," + std::to_string(c.or_input_count);
  s += "," + std::to_string(c.inverter_count);
  s += "," + std::to_string(c.gate_equiv_area);
  s += "," + std::to_string(c.depth_levels);
  s += "," + std::to_string(c.rom_bits);
  s += "," + std::to_string(c.cycles);
  s += "\n";
  return s;
}

std::string cost_table(
    const std::vector<std::pair<std::string, CostReport>>& rows) {
  const char* cols[] = {"name",     "products", "literals", "or_inputs",
                        "inverters", "area_ge",  "depth",    "rom_bits",
                        "cycles"};
  std::vector<std::vector<std::string>> cells;
  cells.emplace_back(cols, cols + 9);
  for (const auto& [name, c] : rows) {
    cells.push_back({name, std::to_string(c.product_count),
                     std::to_string(c.literal_count),
                     std::to_string(c.or_input_count),
                     std::to_string(c.inverter_count),
                     std::to_string(c.gate_equiv_area),
                     std::to_string(c.depth_levels),
                     std::to_string(c.rom_bits), std::to_string(c.cycles)});
  }
  std::vector<size_t> w(9, 0);
  for (const auto& row : cells)
    for (size_t i = 0; i < 9; ++i) w[i] = std::max(w[i], row[i].size());
  std::string out;
  for (const auto& row : cells) {
    for (size_t i = 0; i < 9; ++i) {
      std::string cell = row[i];
      cell.resize(w[i], ' ');
      out += cell;
      out += i + 1 < 9 ? "  " : "";
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += "\n";
  }
  return out;
}

}  // namespace afc
