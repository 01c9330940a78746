// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "afc/analyzer.hpp"

using namespace afc;
using doctest::Approx;

namespace {

ActivationSpec spec_of(ActivationKind k) {
  ActivationSpec s;
  s.kind = k;
  return s;
}

const FixedPointFormat kIn13{1, 3}, kOut16{1, 6};
const FixedPointFormat kIn23{2, 3}, kOut17{1, 7};

}  // namespace

TEST_SUITE("analyzer") {

TEST_CASE("method names round trip") {
  for (Method m : {Method::combinational, Method::rom_y, Method::rom_kb,
                   Method::taylor, Method::pow2_approx, Method::taylor5_lut,
                   Method::exact_ref})
    CHECK(parse_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_method("cordic"), std::invalid_argument);
  CHECK(method_needs_table(Method::combinational, ActivationKind::exp));
  CHECK(method_needs_table(Method::rom_y, ActivationKind::tanh));
  CHECK(!method_needs_table(Method::rom_y, ActivationKind::exp));
  CHECK(!method_needs_table(Method::taylor, ActivationKind::tanh));
}

TEST_CASE("average error of the identity is zero") {
  auto id = [](double x) { return x; };
  CHECK(average_error(id, id, {-1.0, 1.0}, 1000) == 0.0);
  auto off = [](double x) { return x + 0.01; };
  CHECK(average_error(off, id, {-1.0, 1.0}, 1000) == Approx(1.0));
  CHECK(max_error(off, id, {-1.0, 1.0}, 1000) == Approx(0.01));
  CHECK_THROWS_AS(average_error(id, id, {0.0, 1.0}, 0),
                  std::invalid_argument);
}

TEST_CASE("default intervals") {
  CHECK(default_interval(spec_of(ActivationKind::tanh), kIn13).lo == -2.0);
  CHECK(default_interval(spec_of(ActivationKind::tanh), kIn13).hi == 2.0);
  CHECK(default_interval(spec_of(ActivationKind::selu), kIn23).lo == -3.875);
  CHECK(default_interval(spec_of(ActivationKind::selu), kIn23).hi == 0.0);
  CHECK(default_interval(spec_of(ActivationKind::exp), kIn13).lo == -1.0);
}

TEST_CASE("combinational and value rom report the identical error") {
  AnalyzerConfig cfg;
  cfg.n = 20000;
  auto reports =
      compare_methods(spec_of(ActivationKind::tanh), kIn13, kOut16,
                      {Method::combinational, Method::rom_y, Method::rom_kb,
                       Method::exact_ref},
                      cfg);
  REQUIRE(reports.size() == 4);
  CHECK(reports[0].average_error_percent == reports[1].average_error_percent);
  CHECK(reports[0].max_abs_error == reports[1].max_abs_error);
  // the slope/intercept rom interpolates and lands well under the value rom
  CHECK(reports[2].average_error_percent < reports[1].average_error_percent);
  CHECK(reports[2].average_error_percent > 0.0);
  CHECK(reports[3].average_error_percent == 0.0);
  // table quantization error for the default convention sits near 3.1
  CHECK(reports[0].average_error_percent > 2.5);
  CHECK(reports[0].average_error_percent < 3.6);
  // cost columns: plane for the first, rom proxies for the next two
  CHECK(reports[0].cost.product_count == 19);
  CHECK(reports[1].cost.rom_bits == 224);
  CHECK(reports[2].cost.cycles == 2);
}

TEST_CASE("selu errors follow the same ordering") {
  AnalyzerConfig cfg;
  cfg.n = 20000;
  auto reports =
      compare_methods(spec_of(ActivationKind::selu), kIn23, kOut17,
                      {Method::combinational, Method::rom_y, Method::rom_kb,
                       Method::pow2_approx},
                      cfg);
  CHECK(reports[0].average_error_percent == reports[1].average_error_percent);
  CHECK(reports[2].average_error_percent < reports[1].average_error_percent);
  CHECK(reports[0].average_error_percent > 1.5);
  CHECK(reports[0].average_error_percent < 4.0);
  CHECK(reports[3].average_error_percent > 0.0);
  CHECK(reports[3].average_error_percent < 15.0);
}

TEST_CASE("taylor error grows with distance from the origin") {
  AnalyzerConfig near;
  near.n = 4000;
  near.interval = {-0.5, 0.5};
  near.taylor_order = 1;
  auto r1 = compare_methods(spec_of(ActivationKind::tanh), kIn13, kOut16,
                            {Method::taylor}, near);
  near.taylor_order = 5;
  auto r5 = compare_methods(spec_of(ActivationKind::tanh), kIn13, kOut16,
                            {Method::taylor}, near);
  CHECK(r1[0].average_error_percent > r5[0].average_error_percent);
  CHECK(r1[0].average_error_percent > 0.5);
  CHECK(r1[0].average_error_percent < 1.5);

  AnalyzerConfig far = near;
  far.taylor_order = 5;
  far.interval = {-2.0, 2.0};
  auto rfar = compare_methods(spec_of(ActivationKind::tanh), kIn13, kOut16,
                              {Method::taylor}, far);
  CHECK(rfar[0].average_error_percent > 10.0);
}

TEST_CASE("taylor5 lut blends three regimes") {
  AnalyzerConfig cfg;
  cfg.n = 20000;
  auto reports = compare_methods(spec_of(ActivationKind::tanh), kIn13, kOut16,
                                 {Method::taylor5_lut}, cfg);
  CHECK(reports[0].average_error_percent > 0.0);
  CHECK(reports[0].average_error_percent < 5.0);
  // 21 bridge rows of 7 bits
  CHECK(reports[0].cost.rom_bits == 21 * 7);
}

TEST_CASE("plain kinds use interval segmentation") {
  AnalyzerConfig cfg;
  cfg.n = 20000;
  // exp does not fit U1.6 as a table, but the segmented baselines still run
  auto reports = compare_methods(spec_of(ActivationKind::exp), kIn13, kOut16,
                                 {Method::rom_y, Method::rom_kb}, cfg);
  CHECK(reports[0].average_error_percent > 3.0);
  CHECK(reports[0].average_error_percent < 15.0);
  CHECK(reports[1].average_error_percent < reports[0].average_error_percent);
}

TEST_CASE("kb segments anchor the left endpoint") {
  QuantizedFunctionTable t =
      build_table(spec_of(ActivationKind::tanh), kIn13, kOut16);
  auto segs = build_kb_segments(t, {});
  REQUIRE(segs.size() == 16);
  CHECK(segs[0].x0 == 0.0);
  CHECK(segs[0].b_q == 0.0);
  CHECK(segs[0].k == Approx(std::tanh(0.125) / 0.125));
  // quantized slopes stay on the word grid
  KbWordFormat w = default_kb_format(kOut16);
  for (const KbSegment& s : segs) {
    double scaled = std::ldexp(s.k_q, w.frac_bits);
    CHECK(scaled == std::floor(scaled));
  }
  auto ls = build_kb_segments(t, {}, KbFit::least_squares);
  bool differs = false;
  for (size_t i = 0; i < segs.size(); ++i)
    if (ls[i].k != segs[i].k) differs = true;
  CHECK(differs);
}

TEST_CASE("convention sweep orders by distance to the target") {
  auto results = convention_sweep(spec_of(ActivationKind::tanh), kIn13,
                                  kOut16, {}, 20000, 4.19);
  REQUIRE(results.size() == 6);
  for (size_t i = 1; i < results.size(); ++i) {
    double a = std::fabs(results[i - 1].average_error_percent - 4.19);
    double b = std::fabs(results[i].average_error_percent - 4.19);
    CHECK(a <= b);
  }
  // closest hits the left_edge,floor table
  CHECK(results[0].convention ==
        SamplingConvention{DomainPoint::left_edge, RangeMode::floor});
  CHECK(std::fabs(results[0].average_error_percent - 4.19) < 1.0);

  // NaN target keeps the declaration order
  auto plainr = convention_sweep(spec_of(ActivationKind::tanh), kIn13, kOut16,
                                 {}, 2000, std::nan(""));
  CHECK(plainr[0].convention ==
        SamplingConvention{DomainPoint::left_edge, RangeMode::floor});
  CHECK(plainr[1].convention ==
        SamplingConvention{DomainPoint::left_edge, RangeMode::round});
}

TEST_CASE("report csv carries the area ratio") {
  AnalyzerConfig cfg;
  cfg.n = 2000;
  auto reports = compare_methods(spec_of(ActivationKind::tanh), kIn13, kOut16,
                                 {Method::combinational, Method::rom_y}, cfg);
  std::string csv = error_report_csv(reports);
  CHECK(csv.find("method,convention,avg_error_pct,max_abs_error,samples,") ==
        0);
  CHECK(csv.find("area_ratio") != std::string::npos);
  CHECK(csv.find("combinational,\"left_edge,round\",") != std::string::npos);
  CHECK(csv.find("rom_y,\"left_edge,round\",") != std::string::npos);
  // ratio of the rom row = 224 / comb area, present with three decimals
  size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == 3);
}

TEST_CASE("error curve csv samples the interval") {
  auto id = [](double x) { return x; };
  auto off = [](double x) { return x + 0.5; };
  std::string csv = error_curve_csv(off, id, {0.0, 1.0}, 4);
  CHECK(csv.find("x,exact,approx,abs_error\n") == 0);
  CHECK(csv.find("0.125,0.125,0.625,0.5\n") != std::string::npos);
}

}  // TEST_SUITE
