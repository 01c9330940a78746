// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "afc/netlist.hpp"

namespace afc {

/// Signed two's-complement port widths for the wrapped circuit. The input
/// carries the table's fraction bits plus enough integer bits to reach past
/// the breakpoint; the output covers the saturation value and the linear
/// branch maximum.
int verilog_input_width(const QuantizedFunctionTable& t);
int verilog_output_width(const QuantizedFunctionTable& t);

/// Canonical signed digit decomposition of k: minimal list of (shift, sign)
/// terms, highest shift first, such that k = sum sign * 2^shift.
std::vector<std::pair<int, int>> csd_digits(uint32_t k);

/// Purely combinational Verilog-2001 module: sign/saturation wrapper around
/// the AND/OR planes, plus the shift-add linear branch where the region has
/// one. No clocks and no behavioral blocks. Deterministic text.
std::string emit_verilog(const PlaNetlist& n, std::string_view module_name = {});

/// Registered lookup-table module over the same table. RomKind::values reads
/// the output word in one cycle; RomKind::slope_intercept reads k and b and
/// multiplies in a second cycle.
std::string emit_rom_verilog(const QuantizedFunctionTable& t, RomKind kind,
                             std::string_view module_name,
                             const KbWordFormat& kb = {});

/// Self-checking testbench for emit_verilog output: drives every input code
/// of the signed port and compares against golden outputs baked in from the
/// bit-accurate reference model.
std::string emit_testbench(const PlaNetlist& n, std::string_view module_name = {});

}  // namespace afc
