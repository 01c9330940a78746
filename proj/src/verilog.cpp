// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/verilog.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "afc/analyzer.hpp"

namespace afc {
namespace {

int bits_for(int64_t v) {
  return v <= 0 ? 1 : 64 - std::countl_zero(static_cast<uint64_t>(v));
}

// Maximum value the linear branch can produce over the signed input port.
int64_t linear_max(const QuantizedFunctionTable& t, int input_width) {
  int64_t xmax = (1ll << (input_width - 1)) - 1;
  int64_t gain = linear_gain_code(t);
  return (gain * xmax) >> t.in_fmt.frac_bits;
}

std::string sdec(int width, int64_t v) {
  std::string lit = std::to_string(width) + "'sd" + std::to_string(v < 0 ? -v : v);
  return v < 0 ? "-" + lit : lit;
}

std::string udec(int width, uint64_t v) {
  return std::to_string(width) + "'d" + std::to_string(v);
}

std::string product_expr(const Cube& c) {
  if (c.mask == 0) return "1'b1";
  std::string s;
  for (int i = c.width - 1; i >= 0; --i) {
    uint16_t bit = static_cast<uint16_t>(1u << i);
    if (!(c.mask & bit)) continue;
    if (!s.empty()) s += " & ";
    if (!(c.value & bit)) s += "~";
    s += "t[" + std::to_string(i) + "]";
  }
  return s;
}

std::string csd_sum(const std::string& operand,
                    const std::vector<std::pair<int, int>>& digits) {
  std::string s;
  for (size_t i = 0; i < digits.size(); ++i) {
    auto [shift, sign] = digits[i];
    if (i == 0) {
      if (sign < 0) s += "-";
    } else {
      s += sign > 0 ? " + " : " - ";
    }
    s += "(" + operand + " <<< " + std::to_string(shift) + ")";
  }
  return s.empty() ? operand + " * 0" : s;
}

void emit_planes(std::string& s, const PlaCover& cover) {
  for (size_t p = 0; p < cover.products.size(); ++p)
    s += "  wire p" + std::to_string(p + 1) + " = " +
         product_expr(cover.products[p]) + ";\n";
  s += "\n";
  int m = cover.num_outputs;
  s += "  wire [" + std::to_string(m - 1) + ":0] f;\n";
  for (int j = 0; j < m; ++j) {
    std::string rhs;
    for (int p : cover.outputs[j]) {
      if (!rhs.empty()) rhs += " | ";
      rhs += "p" + std::to_string(p + 1);
    }
    if (rhs.empty()) rhs = "1'b0";
    s += "  assign f[" + std::to_string(j) + "] = " + rhs + ";\n";
  }
  s += "\n";
}

std::string header_comment(const QuantizedFunctionTable& t,
                           std::string_view name) {
  std::string s;
  s += "// " + std::string(name) + ": " + to_string(t.kind) +
       " activation, input " + to_string(t.in_fmt) + ", output " +
       to_string(t.out_fmt) + "\n";
  s += "// two-level AND/OR core, " + to_string(t.convention) +
       " sampling\n";
  return s;
}

}  // namespace

int verilog_input_width(const QuantizedFunctionTable& t) {
  int n = t.in_fmt.total_bits();
  return t.region.kind == RegionKind::plain ? n : n + 2;
}

int verilog_output_width(const QuantizedFunctionTable& t) {
  int m = t.out_fmt.total_bits();
  switch (t.region.kind) {
    case RegionKind::plain: return m;
    case RegionKind::odd_symmetric_saturating: return m + 1;
    case RegionKind::negative_exp_saturating: {
      int64_t sat = saturation_code(t);
      if (!t.lambda_folded)
        sat = (static_cast<int64_t>(linear_gain_code(t)) * sat) >>
              t.out_fmt.frac_bits;
      int64_t lmax = linear_max(t, verilog_input_width(t));
      return 1 + std::max(bits_for(std::max(sat, lmax)), m);
    }
  }
  throw std::logic_error("unknown region kind");
}

std::vector<std::pair<int, int>> csd_digits(uint32_t k) {
  std::vector<std::pair<int, int>> digits;
  int64_t v = k;
  int pos = 0;
  while (v != 0) {
    if (v & 1) {
      int d = 2 - static_cast<int>(v & 3);  // +1 or -1
      digits.emplace_back(pos, d);
      v -= d;
    }
    v >>= 1;
    ++pos;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::string emit_verilog(const PlaNetlist& n, std::string_view module_name) {
  const QuantizedFunctionTable& t = n.table;
  std::string name(module_name.empty() ? n.name : module_name);
  int N = t.in_fmt.total_bits();
  int M = t.out_fmt.total_bits();
  int IW = verilog_input_width(t);
  int OW = verilog_output_width(t);
  int IF = t.in_fmt.frac_bits;
  int OF = t.out_fmt.frac_bits;

  std::string s = header_comment(t, name);

  if (t.region.kind == RegionKind::plain) {
    s += "module " + name + " (\n";
    s += "    input  wire [" + std::to_string(N - 1) + ":0] x,\n";
    s += "    output wire [" + std::to_string(M - 1) + ":0] y\n";
    s += ");\n";
    s += "  wire [" + std::to_string(N - 1) + ":0] t = x;\n\n";
    emit_planes(s, n.cover);
    s += "  assign y = f;\n";
    s += "endmodule\n";
    return s;
  }

  s += "module " + name + " (\n";
  s += "    input  wire signed [" + std::to_string(IW - 1) + ":0] x,\n";
  s += "    output wire signed [" + std::to_string(OW - 1) + ":0] y\n";
  s += ");\n";

  if (t.region.kind == RegionKind::odd_symmetric_saturating) {
    int64_t bp_code = 1ll << N;  // breakpoint magnitude on the input grid
    s += "  localparam signed [" + std::to_string(IW - 1) + ":0] BP = " +
         sdec(IW, bp_code) + ";\n";
    s += "  localparam signed [" + std::to_string(OW - 1) + ":0] SAT = " +
         sdec(OW, saturation_code(t)) + ";\n\n";
    s += "  wire neg = x[" + std::to_string(IW - 1) + "];\n";
    s += "  wire sat = neg ? (x <= -BP) : (x >= BP);\n";
    s += "  wire [" + std::to_string(IW - 1) +
         ":0] mag = neg ? (~x + 1'b1) : x;\n";
    s += "  wire [" + std::to_string(N - 1) + ":0] t = mag[" +
         std::to_string(N - 1) + ":0];\n\n";
    emit_planes(s, n.cover);
    s += "  wire signed [" + std::to_string(OW - 1) + ":0] val = sat ? SAT : "
         "$signed({" + std::to_string(OW - M) + "'b0, f});\n";
    s += "  assign y = neg ? (-val) : val;\n";
    s += "endmodule\n";
    return s;
  }

  // negative_exp_saturating: table on x < 0, shift-add linear branch on
  // x >= 0, saturation below the breakpoint.
  int64_t bp_code = t.in_fmt.max_code();
  int64_t gain = linear_gain_code(t);
  auto digits = csd_digits(static_cast<uint32_t>(gain));
  int LW = IW + bits_for(gain) + 1;
  int64_t sat = saturation_code(t);
  if (!t.lambda_folded) sat = (gain * sat) >> OF;

  s += "  localparam signed [" + std::to_string(IW - 1) + ":0] BP = " +
       sdec(IW, bp_code) + ";\n";
  s += "  localparam signed [" + std::to_string(OW - 1) + ":0] SAT = " +
       sdec(OW, sat) + ";\n\n";
  s += "  wire neg = x[" + std::to_string(IW - 1) + "];\n";
  s += "  wire sat_lo = neg & (x <= -BP);\n";
  s += "  wire [" + std::to_string(IW - 1) + ":0] mag = ~x + 1'b1;\n";
  s += "  wire [" + std::to_string(N - 1) + ":0] t = mag[" +
       std::to_string(N - 1) + ":0];\n\n";
  emit_planes(s, n.cover);

  s += "  // linear branch: (" + std::to_string(gain) + " * x) >>> " +
       std::to_string(IF) + ", multiplier in signed-digit form\n";
  s += "  wire signed [" + std::to_string(LW - 1) + ":0] xw = {{" +
       std::to_string(LW - IW) + "{x[" + std::to_string(IW - 1) +
       "]}}, x};\n";
  s += "  wire signed [" + std::to_string(LW - 1) + ":0] acc = " +
       csd_sum("xw", digits) + ";\n";
  s += "  wire signed [" + std::to_string(LW - 1) + ":0] lin = acc >>> " +
       std::to_string(IF) + ";\n";
  s += "  wire signed [" + std::to_string(OW - 1) + ":0] ylin = lin[" +
       std::to_string(OW - 1) + ":0];\n\n";

  if (t.lambda_folded) {
    s += "  wire signed [" + std::to_string(OW - 1) + ":0] ytab = $signed({" +
         std::to_string(OW - M) + "'b0, f});\n";
  } else {
    // External gain on the stored word.
    int GW = M + bits_for(gain) + 1;
    s += "  wire signed [" + std::to_string(GW - 1) + ":0] fw = $signed({" +
         std::to_string(GW - M) + "'b0, f});\n";
    s += "  wire signed [" + std::to_string(GW - 1) + ":0] facc = " +
         csd_sum("fw", digits) + ";\n";
    s += "  wire signed [" + std::to_string(GW - 1) + ":0] fsc = facc >>> " +
         std::to_string(OF) + ";\n";
    s += "  wire signed [" + std::to_string(OW - 1) + ":0] ytab = fsc[" +
         std::to_string(OW - 1) + ":0];\n";
  }
  s += "  wire signed [" + std::to_string(OW - 1) +
       ":0] yneg = sat_lo ? (-SAT) : (-ytab);\n";
  s += "  assign y = neg ? yneg : ylin;\n";
  s += "endmodule\n";
  return s;
}

std::string emit_rom_verilog(const QuantizedFunctionTable& t, RomKind kind,
                             std::string_view module_name,
                             const KbWordFormat& kb) {
  std::string name(module_name);
  if (name.empty())
    name = to_string(t.kind) + (kind == RomKind::values ? "_rom" : "_rom_kb");
  int N = t.in_fmt.total_bits();
  int M = t.out_fmt.total_bits();
  std::string s;

  if (kind == RomKind::values) {
    s += "// " + name + ": registered value table, " + std::to_string(N) +
         " address bits, " + std::to_string(M) + "-bit data\n";
    s += "module " + name + " (\n";
    s += "    input  wire clk,\n";
    s += "    input  wire [" + std::to_string(N - 1) + ":0] addr,\n";
    s += "    output reg  [" + std::to_string(M - 1) + ":0] data\n";
    s += ");\n";
    s += "  always @(posedge clk) begin\n";
    s += "    case (addr)\n";
    for (uint32_t c = 0; c < t.entries.size(); ++c)
      s += "      " + udec(N, c) + ": data <= " + udec(M, t.entries[c]) +
           ";\n";
    s += "      default: data <= " + udec(M, 0) + ";\n";
    s += "    endcase\n";
    s += "  end\n";
    s += "endmodule\n";
    return s;
  }

  // The magnitude input carries 4 extra fraction bits; the top bits address
  // the segment and the multiply sees the full-precision value.
  constexpr int kGuard = 4;
  KbWordFormat w = kb.frac_bits > 0 ? kb : default_kb_format(t.out_fmt);
  auto segs = build_kb_segments(t, w);
  int KW = w.width();
  int XW = N + kGuard;
  int IF = t.in_fmt.frac_bits + kGuard;
  int OF = t.out_fmt.frac_bits;
  int YW = KW + XW + 2;
  int shift = w.frac_bits + IF - OF;

  s += "// " + name + ": two-cycle slope/intercept table, " +
       std::to_string(KW) + "-bit words with " + std::to_string(w.frac_bits) +
       " fraction bits\n";
  s += "module " + name + " (\n";
  s += "    input  wire clk,\n";
  s += "    input  wire [" + std::to_string(XW - 1) + ":0] xmag,\n";
  s += "    output reg  signed [" + std::to_string(YW - 1) + ":0] y\n";
  s += ");\n";
  s += "  wire [" + std::to_string(N - 1) + ":0] addr = xmag[" +
       std::to_string(XW - 1) + ":" + std::to_string(kGuard) + "];\n";
  s += "  reg signed [" + std::to_string(KW - 1) + ":0] k;\n";
  s += "  reg signed [" + std::to_string(KW - 1) + ":0] b;\n";
  s += "  reg [" + std::to_string(XW - 1) + ":0] xr;\n";
  s += "  always @(posedge clk) begin\n";
  s += "    xr <= xmag;\n";
  s += "    case (addr)\n";
  for (size_t i = 0; i < segs.size(); ++i) {
    int64_t kc = std::llround(std::ldexp(segs[i].k_q, w.frac_bits));
    int64_t bc = std::llround(std::ldexp(segs[i].b_q, w.frac_bits));
    s += "      " + udec(N, static_cast<uint32_t>(i)) + ": begin k <= " +
         sdec(KW, kc) + "; b <= " + sdec(KW, bc) + "; end\n";
  }
  s += "      default: begin k <= " + sdec(KW, 0) + "; b <= " + sdec(KW, 0) +
       "; end\n";
  s += "    endcase\n";
  s += "    y <= (k * $signed({1'b0, xr}) + (b <<< " + std::to_string(IF) +
       ")) >>> " + std::to_string(shift) + ";\n";
  s += "  end\n";
  s += "endmodule\n";
  return s;
}

std::string emit_testbench(const PlaNetlist& n, std::string_view module_name) {
  const QuantizedFunctionTable& t = n.table;
  std::string dut(module_name.empty() ? n.name : module_name);
  std::string name = dut + "_tb";
  bool plain = t.region.kind == RegionKind::plain;
  int IW = verilog_input_width(t);
  int OW = verilog_output_width(t);
  long vectors = 1l << IW;

  std::string s;
  s += "// " + name + ": drives every input code of " + dut +
       " against the reference model\n";
  s += "`timescale 1ns/1ps\n";
  s += "module " + name + ";\n";
  if (plain) {
    s += "  reg [" + std::to_string(IW - 1) + ":0] x;\n";
    s += "  wire [" + std::to_string(OW - 1) + ":0] y;\n";
    s += "  reg [" + std::to_string(OW - 1) + ":0] expected [0:" +
         std::to_string(vectors - 1) + "];\n";
  } else {
    s += "  reg signed [" + std::to_string(IW - 1) + ":0] x;\n";
    s += "  wire signed [" + std::to_string(OW - 1) + ":0] y;\n";
    s += "  reg signed [" + std::to_string(OW - 1) + ":0] expected [0:" +
         std::to_string(vectors - 1) + "];\n";
  }
  s += "  integer i;\n";
  s += "  integer errors;\n\n";
  s += "  " + dut + " dut (.x(x), .y(y));\n\n";
  s += "  initial begin\n";
  for (long u = 0; u < vectors; ++u) {
    long signed_code = u;
    if (!plain && u >= vectors / 2) signed_code = u - vectors;
    double xreal = std::ldexp(static_cast<double>(signed_code),
                              -t.in_fmt.frac_bits);
    int64_t golden = reference_eval_code(xreal, t);
    s += "    expected[" + std::to_string(u) + "] = " +
         (plain ? udec(OW, static_cast<uint64_t>(golden)) : sdec(OW, golden)) +
         ";\n";
  }
  s += "    errors = 0;\n";
  s += "    for (i = 0; i < " + std::to_string(vectors) +
       "; i = i + 1) begin\n";
  s += "      x = i;\n";
  s += "      #1;\n";
  s += "      if (y !== expected[i]) begin\n";
  s += "        $display(\"FAIL %0d: x=%0d y=%0d expected=%0d\", i, x, y, "
       "expected[i]);\n";
  s += "        errors = errors + 1;\n";
  s += "      end\n";
  s += "    end\n";
  s += "    if (errors == 0) $display(\"PASS " + dut + ": " +
       std::to_string(vectors) + " vectors\");\n";
  s += "    else $display(\"FAIL " + dut + ": %0d errors\", errors);\n";
  s += "    $finish;\n";
  s += "  end\n";
  s += "endmodule\n";
  return s;
}

}  // namespace afc
