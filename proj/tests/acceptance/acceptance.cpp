// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0
//
// Release gate for the whole pipeline. Each numbered criterion prints one
// [PASS]/[FAIL] line; the exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "afc/analyzer.hpp"
#include "afc/minimize.hpp"
#include "afc/netlist.hpp"
#include "afc/nn.hpp"
#include "afc/pla_io.hpp"
#include "afc/table.hpp"
#include "afc/text.hpp"

using namespace afc;

namespace {

// Floor for the float tanh baseline on the default synthetic task,
// fixed from a calibration run of this binary (observed 0.9667).
constexpr double kFloatBaselineFloor = 0.93;

int g_failures = 0;

void report(int idx, bool ok, const std::string& detail) {
  std::printf("[%s] %d. %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
  if (!ok) ++g_failures;
}

ActivationSpec make_spec(ActivationKind kind) {
  ActivationSpec s;
  s.kind = kind;
  return s;
}

QuantizedFunctionTable tanh_table(SamplingConvention conv = {}) {
  return build_table(make_spec(ActivationKind::tanh), parse_format("U1.3"),
                     parse_format("U1.6"), conv);
}

QuantizedFunctionTable selu_table(SamplingConvention conv = {}) {
  return build_table(make_spec(ActivationKind::selu), parse_format("U2.3"),
                     parse_format("U1.7"), conv);
}

long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

// Independent minimum-cover size oracle: breadth-first search over coverage
// bitmasks using every implicant of the onset (not just primes).
int brute_force_cover_size(const std::vector<uint32_t>& onset, int width) {
  if (onset.empty()) return 0;
  uint32_t num_codes = 1u << width;
  std::vector<int> index(num_codes, -1);
  for (size_t i = 0; i < onset.size(); ++i)
    index[onset[i]] = static_cast<int>(i);

  std::vector<uint32_t> covers;  // coverage bitmask per implicant
  for (uint32_t mask = 0; mask < num_codes; ++mask) {
    for (uint32_t value = mask;; value = (value - 1) & mask) {
      Cube c{static_cast<uint16_t>(width), static_cast<uint16_t>(mask),
             static_cast<uint16_t>(value)};
      uint32_t bits = 0;
      bool inside = true;
      for (uint32_t m = 0; m < num_codes && inside; ++m) {
        if (!c.contains_minterm(m)) continue;
        if (index[m] < 0)
          inside = false;
        else
          bits |= 1u << index[m];
      }
      if (inside) covers.push_back(bits);
      if (value == 0) break;
    }
  }

  uint32_t full = onset.size() == 32 ? 0xffffffffu
                                     : (1u << onset.size()) - 1;
  std::vector<int8_t> dist(static_cast<size_t>(full) + 1, -1);
  std::vector<uint32_t> queue{0};
  dist[0] = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    uint32_t state = queue[head];
    if (state == full) return dist[state];
    for (uint32_t c : covers) {
      uint32_t next = state | c;
      if (dist[next] < 0) {
        dist[next] = static_cast<int8_t>(dist[state] + 1);
        queue.push_back(next);
      }
    }
  }
  return -1;  // unreachable: single-minterm cubes always complete the cover
}

std::vector<uint32_t> random_onset(std::mt19937_64& rng, int width) {
  std::vector<uint32_t> onset;
  for (uint32_t m = 0; m < (1u << width); ++m)
    if (rng() & 1) onset.push_back(m);
  return onset;
}

bool adjacent_pairs_covered(const SopCover& cover,
                            const std::vector<uint32_t>& onset, int width) {
  std::vector<bool> on(1u << width, false);
  for (uint32_t m : onset) on[m] = true;
  for (uint32_t a : onset) {
    for (int bit = 0; bit < width; ++bit) {
      uint32_t b = a ^ (1u << bit);
      if (a > b || !on[b]) continue;
      bool joint = false;
      for (const Cube& c : cover.cubes)
        if (c.contains_minterm(a) && c.contains_minterm(b)) {
          joint = true;
          break;
        }
      if (!joint) return false;
    }
  }
  return true;
}

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  int checked = 0;
  for (const QuantizedFunctionTable& t : {tanh_table(), selu_table()}) {
    PlaCover plane = minimize_table(t);
    for (uint32_t code = 0; code < t.entries.size(); ++code) {
      ok = ok && plane.eval(code) == t.entries[code];
      ++checked;
    }
  }
  long ms = ms_since(t0);
  ok = ok && ms < 1000;
  report(1, ok,
         "exhaustive equivalence: plane output matches the table on all " +
             std::to_string(checked) + " input codes (tanh 16 + selu 32), " +
             std::to_string(ms) + " ms");
}

void criterion_2() {
  std::string tanh_counts, selu_counts;
  int tanh_best = 1 << 16, selu_best = 1 << 16;
  for (SamplingConvention conv : all_conventions()) {
    int nt = static_cast<int>(minimize_table(tanh_table(conv)).products.size());
    int ns = static_cast<int>(minimize_table(selu_table(conv)).products.size());
    tanh_best = std::min(tanh_best, nt);
    selu_best = std::min(selu_best, ns);
    tanh_counts += (tanh_counts.empty() ? "" : "/") + std::to_string(nt);
    selu_counts += (selu_counts.empty() ? "" : "/") + std::to_string(ns);
  }
  bool ok = tanh_best <= 19 && selu_best <= 56;
  report(2, ok,
         "shared product counts per convention (le,f le,r mid,f mid,r ng,f "
         "ng,r): tanh " +
             tanh_counts + " (bound 19), selu " + selu_counts +
             " (bound 56)");
}

void criterion_3() {
  const long n = 100000;
  auto tanh_sweep =
      convention_sweep(make_spec(ActivationKind::tanh), parse_format("U1.3"),
                       parse_format("U1.6"), {-2.0, 2.0}, n, 4.19);
  auto selu_sweep =
      convention_sweep(make_spec(ActivationKind::selu), parse_format("U2.3"),
                       parse_format("U1.7"), {-3.875, 0.0}, n, 2.22);
  double tanh_dist = std::fabs(tanh_sweep[0].average_error_percent - 4.19);
  double selu_dist = std::fabs(selu_sweep[0].average_error_percent - 2.22);

  AnalyzerConfig cfg;
  cfg.n = n;
  std::vector<Method> methods{Method::combinational, Method::rom_y,
                              Method::rom_kb};
  auto tanh_rep = compare_methods(make_spec(ActivationKind::tanh),
                                  parse_format("U1.3"), parse_format("U1.6"),
                                  methods, cfg);
  auto selu_rep = compare_methods(make_spec(ActivationKind::selu),
                                  parse_format("U2.3"), parse_format("U1.7"),
                                  methods, cfg);
  bool ordering = true;
  for (const auto& rep : {tanh_rep, selu_rep}) {
    ordering = ordering &&
               rep[0].average_error_percent == rep[1].average_error_percent &&
               rep[2].average_error_percent < rep[1].average_error_percent;
  }
  bool ok = tanh_dist <= 1.0 && selu_dist <= 1.0 && ordering;
  report(3, ok,
         "average error: closest convention " +
             to_string(tanh_sweep[0].convention) + " gives " +
             fmt_fixed(tanh_sweep[0].average_error_percent, 2) +
             "% (target 4.19) for tanh, " +
             to_string(selu_sweep[0].convention) + " gives " +
             fmt_fixed(selu_sweep[0].average_error_percent, 2) +
             "% (target 2.22) for selu; combinational == rom_y and rom_kb < "
             "rom_y for both");
}

void criterion_4() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  bool ok = true;
  int agreed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int width = 1 + static_cast<int>(rng() % 4);
    std::vector<uint32_t> onset = random_onset(rng, width);
    auto primes = prime_implicants(onset, {}, width);
    SopCover cover = minimum_cover(primes, onset, width);
    bool valid = true;
    std::vector<bool> on(1u << width, false);
    for (uint32_t m : onset) on[m] = true;
    for (uint32_t m = 0; m < (1u << width); ++m)
      valid = valid && cover.eval(m) == on[m];
    int oracle = brute_force_cover_size(onset, width);
    bool match = valid && static_cast<int>(cover.cubes.size()) == oracle;
    ok = ok && match;
    agreed += match;
  }
  long ms = ms_since(t0);
  ok = ok && ms < 30000;
  report(4, ok,
         "minimizer optimality: exact cover matched the brute-force minimum "
         "on " +
             std::to_string(agreed) + "/200 random functions, " +
             std::to_string(ms) + " ms");
}

void criterion_5() {
  bool ok = true;
  MinimizeOptions opts;
  opts.hazard_free = true;
  for (const QuantizedFunctionTable& t : {tanh_table(), selu_table()}) {
    PlaCover plane = minimize_table(t, opts);
    for (uint32_t code = 0; code < t.entries.size(); ++code)
      ok = ok && plane.eval(code) == t.entries[code];
    for (int bit = 0; bit < static_cast<int>(t.num_outputs()); ++bit) {
      auto onset = output_onset(t, bit);
      ok = ok && adjacent_pairs_covered(plane.output_cover(bit), onset,
                                        static_cast<int>(t.num_inputs()));
    }
  }
  std::mt19937_64 rng(5);
  int clean = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<uint32_t> onset = random_onset(rng, 5);
    auto primes = prime_implicants(onset, {}, 5);
    SopCover cover = minimum_cover(primes, onset, 5);
    SopCover hz = hazard_free_augment(cover, onset, 5);
    bool preserved = true;
    std::vector<bool> on(32, false);
    for (uint32_t m : onset) on[m] = true;
    for (uint32_t m = 0; m < 32; ++m)
      preserved = preserved && hz.eval(m) == on[m];
    bool pass = preserved && adjacent_pairs_covered(hz, onset, 5);
    ok = ok && pass;
    clean += pass;
  }
  report(5, ok,
         "hazard freeness: every adjacent onset pair shares a cube in the "
         "tanh and selu covers and in " +
             std::to_string(clean) + "/100 random 5-input functions");
}

void criterion_6() {
  std::mt19937_64 rng(7);
  bool ok = true;
  int round_tripped = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int width = 1 + static_cast<int>(rng() % 6);
    int nout = 1 + static_cast<int>(rng() % 6);
    PlaCover c;
    c.num_inputs = width;
    c.num_outputs = nout;
    int np = trial == 0 ? 0 : 1 + static_cast<int>(rng() % 10);
    for (int p = 0; p < np; ++p) {
      uint16_t mask = static_cast<uint16_t>(rng() & ((1u << width) - 1));
      uint16_t value = static_cast<uint16_t>(rng() & mask);
      c.products.push_back(Cube{static_cast<uint16_t>(width), mask, value});
    }
    c.outputs.assign(nout, {});
    for (int p = 0; p < np; ++p) {
      bool used = false;
      for (int j = 0; j < nout; ++j)
        if (rng() & 1) {
          c.outputs[j].push_back(p);
          used = true;
        }
      if (!used)
        c.outputs[rng() % static_cast<uint64_t>(nout)].push_back(p);
    }
    for (auto& col : c.outputs) std::sort(col.begin(), col.end());
    c.canonicalize();
    bool match = parse_pla(emit_pla(c)) == c;
    ok = ok && match;
    round_tripped += match;
  }
  report(6, ok,
         "pla round trip: parse(emit(cover)) is structurally equal for " +
             std::to_string(round_tripped) + "/100 random covers");
}

void criterion_7() {
  bool ok = true;
  std::string detail;
  for (const QuantizedFunctionTable& t : {tanh_table(), selu_table()}) {
    CostReport comb = cost(minimize_table(t));
    CostReport romy = rom_cost(t, RomKind::values);
    CostReport romkb = rom_cost(t, RomKind::slope_intercept);
    ok = ok && comb.gate_equiv_area < romy.gate_equiv_area &&
         comb.gate_equiv_area < romkb.gate_equiv_area && comb.cycles == 0 &&
         romy.cycles == 1 && romkb.cycles == 2;
    std::string name = t.kind == ActivationKind::tanh ? "tanh" : "selu";
    detail += (detail.empty() ? "" : "; ") + name + " " +
              std::to_string(comb.gate_equiv_area) + " GE vs rom_y " +
              std::to_string(romy.gate_equiv_area) + " (x" +
              fmt_fixed(static_cast<double>(romy.gate_equiv_area) /
                            static_cast<double>(comb.gate_equiv_area),
                        2) +
              ") and rom_kb " + std::to_string(romkb.gate_equiv_area);
  }
  report(7, ok,
         "cost direction: combinational area beats both rom proxies at 0 "
         "cycles vs 1/2 (" +
             detail + ")");
}

void criterion_8() {
  nn::Dataset ds = nn::make_synthetic(42, {});
  nn::Mlp model = nn::make_mlp(ds.dim(), {16}, ds.num_classes,
                               make_spec(ActivationKind::tanh), 1);
  nn::TrainResult r = nn::train(model, ds, {});
  auto rows = nn::sweep(model, ds,
                        {nn::parse_variant("tanh_5_4"),
                         nn::parse_variant("tanh_7_4"),
                         nn::parse_variant("tanh_7_6")});
  double d54 = rows[0].delta_points;
  double d76 = rows[2].delta_points;
  bool ok = r.test_accuracy >= kFloatBaselineFloor &&
            std::fabs(d76) <= 2.0 && d76 >= d54 - 0.5;
  report(8, ok,
         "nn swap: float test accuracy " + fmt_fixed(r.test_accuracy, 4) +
             " (floor " + fmt_fixed(kFloatBaselineFloor, 2) +
             "), tanh_7_6 delta " + fmt_fixed(d76, 2) +
             " points (|bound| 2.0), tanh_5_4 delta " + fmt_fixed(d54, 2) +
             " (trend bound d76 >= d54 - 0.5)");
}

void criterion_9() {
  nn::Dataset ds = nn::make_synthetic(42, {});
  Eigen::MatrixXd x = ds.features.topRows(16);
  std::vector<int> y(ds.labels.begin(), ds.labels.begin() + 16);
  bool ok = true;
  double worst = 0.0;
  for (ActivationKind kind : {ActivationKind::tanh, ActivationKind::selu}) {
    nn::Mlp m = nn::make_mlp(ds.dim(), {6}, ds.num_classes, make_spec(kind), 3);
    nn::Gradients g = nn::loss_and_gradients(m, x, y);
    std::mt19937_64 rng(9);
    const double h = 1e-5;
    for (int probe = 0; probe < 10; ++probe) {
      size_t l = rng() % m.weights.size();
      long r = static_cast<long>(rng() % m.weights[l].rows());
      long c = static_cast<long>(rng() % m.weights[l].cols());
      double saved = m.weights[l](r, c);
      m.weights[l](r, c) = saved + h;
      double up = nn::loss_and_gradients(m, x, y).loss;
      m.weights[l](r, c) = saved - h;
      double dn = nn::loss_and_gradients(m, x, y).loss;
      m.weights[l](r, c) = saved;
      double numeric = (up - dn) / (2 * h);
      double denom = std::max({std::fabs(numeric), std::fabs(g.dw[l](r, c)),
                               1e-6});
      double rel = std::fabs(g.dw[l](r, c) - numeric) / denom;
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-4;
    }
  }
  report(9, ok,
         "gradient check: analytic vs central differences agree on 10 "
         "coordinates per net (tanh and selu), worst relative error " +
             fmt_double(worst));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::printf("%d/9 criteria passed\n", 9 - g_failures);
  return g_failures;
}
