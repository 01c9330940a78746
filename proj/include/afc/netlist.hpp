// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "afc/cover.hpp"
#include "afc/table.hpp"

namespace afc {

/// Technology-independent cost figures. gate_equiv_area counts an f-input
/// gate as f-1 two-input gate equivalents plus one inverter per distinct
/// complemented input column; ROM area uses one gate equivalent per stored
/// bit. depth_levels is ceil(log2 of the widest AND) + ceil(log2 of the
/// widest OR).
struct CostReport {
  int product_count = 0;
  int literal_count = 0;
  int or_input_count = 0;
  int inverter_count = 0;
  long gate_equiv_area = 0;
  int depth_levels = 0;
  long rom_bits = 0;
  int cycles = 0;
};

/// A minimized two-level circuit for one table: the product plane plus the
/// wrapper description needed for emission and evaluation.
struct PlaNetlist {
  std::string name;
  QuantizedFunctionTable table;
  PlaCover cover;
};

/// Output codes of the product plane; must equal table.entries[code].
uint32_t eval(const PlaNetlist& n, uint32_t input_code);

CostReport cost(const PlaCover& cover);
inline CostReport cost(const PlaNetlist& n) { return cost(n.cover); }

enum class RomKind { values, slope_intercept };

/// Signed fixed-point word layout for stored slopes/intercepts:
/// 1 sign + int_bits + frac_bits.
struct KbWordFormat {
  int int_bits = 1;
  int frac_bits = 0;
  int width() const { return 1 + int_bits + frac_bits; }
};

KbWordFormat default_kb_format(const FixedPointFormat& out_fmt);

/// Cost of the ROM baselines over the same input format. Address decode is
/// not modeled; rows are floored at 32. RomKind::values stores the output
/// word per row (1 cycle); slope_intercept stores a k and b word per row
/// (2 cycles: fetch, then multiply-add).
CostReport rom_cost(const QuantizedFunctionTable& t, RomKind kind,
                    const KbWordFormat& kb = {});

std::string cost_csv_header();
std::string cost_csv_row(const std::string& name, const CostReport& c);

/// Fixed-width human readable table for a set of named reports.
std::string cost_table(
    const std::vector<std::pair<std::string, CostReport>>& rows);

}  // namespace afc
