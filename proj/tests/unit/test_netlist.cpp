// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "afc/minimize.hpp"
#include "afc/netlist.hpp"

using namespace afc;

namespace {

QuantizedFunctionTable make_table(ActivationKind k, FixedPointFormat in,
                                  FixedPointFormat out) {
  ActivationSpec s;
  s.kind = k;
  return build_table(s, in, out);
}

}  // namespace

TEST_SUITE("netlist") {

TEST_CASE("gate-equivalent area by hand") {
  PlaCover p;
  p.num_inputs = 3;
  p.num_outputs = 2;
  p.products = {cube_from_string("11-"), cube_from_string("-01")};
  p.outputs = {{0, 1}, {1}};
  CostReport c = cost(p);
  CHECK(c.product_count == 2);
  CHECK(c.literal_count == 4);      // two 2-literal products
  CHECK(c.or_input_count == 3);     // y0 takes two products, y1 one
  CHECK(c.inverter_count == 1);     // only the middle column is complemented
  // ANDs: (2-1)+(2-1); OR: (2-1); inverter: 1
  CHECK(c.gate_equiv_area == 4);
  CHECK(c.depth_levels == 2);
  CHECK(c.rom_bits == 0);
  CHECK(c.cycles == 0);
}

TEST_CASE("single-literal products cost no AND gate") {
  PlaCover p;
  p.num_inputs = 2;
  p.num_outputs = 1;
  p.products = {cube_from_string("1-")};
  p.outputs = {{0}};
  CostReport c = cost(p);
  CHECK(c.gate_equiv_area == 0);
  CHECK(c.depth_levels == 0);
}

TEST_CASE("rom proxies floor the row count at 32") {
  QuantizedFunctionTable tanh = make_table(ActivationKind::tanh, {1, 3},
                                           {1, 6});
  CostReport romy = rom_cost(tanh, RomKind::values);
  CHECK(romy.rom_bits == 32 * 7);  // 16 codes floored to 32 rows
  CHECK(romy.gate_equiv_area == 224);
  CHECK(romy.cycles == 1);

  QuantizedFunctionTable selu = make_table(ActivationKind::selu, {2, 3},
                                           {1, 7});
  CostReport romy2 = rom_cost(selu, RomKind::values);
  CHECK(romy2.rom_bits == 32 * 8);

  // slope/intercept: two words of 1 sign + 1 int + (frac+4) frac per row
  CostReport kb = rom_cost(selu, RomKind::slope_intercept);
  CHECK(default_kb_format(selu.out_fmt).width() == 13);
  CHECK(kb.rom_bits == 32 * 2 * 13);
  CHECK(kb.cycles == 2);

  CostReport kb8 = rom_cost(selu, RomKind::slope_intercept, {1, 8});
  CHECK(kb8.rom_bits == 32 * 2 * 10);
}

TEST_CASE("combinational planes beat the value rom for the defaults") {
  QuantizedFunctionTable tanh = make_table(ActivationKind::tanh, {1, 3},
                                           {1, 6});
  CostReport comb = cost(minimize_table(tanh));
  CHECK(comb.gate_equiv_area < rom_cost(tanh, RomKind::values).gate_equiv_area);
  CHECK(comb.cycles == 0);

  QuantizedFunctionTable selu = make_table(ActivationKind::selu, {2, 3},
                                           {1, 7});
  CostReport comb2 = cost(minimize_table(selu));
  CHECK(comb2.gate_equiv_area <
        rom_cost(selu, RomKind::values).gate_equiv_area);
}

TEST_CASE("csv and table forms agree") {
  QuantizedFunctionTable t = make_table(ActivationKind::tanh, {1, 3}, {1, 6});
  CostReport c = cost(minimize_table(t));
  std::string header = cost_csv_header();
  CHECK(header.find("gate_equiv_area") != std::string::npos);
  std::string row = cost_csv_row("combinational", c);
  CHECK(row.find("combinational," + std::to_string(c.product_count) + ",") ==
        0);
  std::string table = cost_table({{"combinational", c}});
  CHECK(table.find("area_ge") != std::string::npos);
  CHECK(table.find("combinational") != std::string::npos);
}

}  // TEST_SUITE
