// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0

#include "afc/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "afc/minimize.hpp"
#include "afc/text.hpp"

namespace afc {
namespace {

double clampq(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

double quantize_word(double v, int frac_bits, int width) {
  double scaled = std::ldexp(v, frac_bits);
  double q = std::floor(scaled + 0.5);
  double lim_hi = std::ldexp(1.0, width - 1) - 1;
  double lim_lo = -std::ldexp(1.0, width - 1);
  return std::ldexp(clampq(q, lim_lo, lim_hi), -frac_bits);
}

RoundMode range_round_mode(const SamplingConvention& c) {
  return c.range_mode == RangeMode::floor ? RoundMode::floor
                                          : RoundMode::round;
}

// Exact magnitude curve the table approximates (lambda folding applied).
std::function<double(double)> magnitude_curve(const QuantizedFunctionTable& t) {
  switch (t.kind) {
    case ActivationKind::tanh:
      return [](double x) { return std::tanh(x); };
    case ActivationKind::sigmoid:
      return [](double x) { return sigmoid_exact(x); };
    case ActivationKind::exp:
      return [](double x) { return std::exp(x); };
    case ActivationKind::elu:
    case ActivationKind::selu: {
      double l = t.kind == ActivationKind::elu ? 1.0 : t.lambda;
      double scale = t.lambda_folded ? l : 1.0;
      double a = t.alpha;
      return [scale, a](double x) { return -scale * a * std::expm1(-x); };
    }
    case ActivationKind::custom: {
      // Only the stored entries are known for custom tables.
      QuantizedFunctionTable copy = t;
      return [copy](double x) {
        uint32_t c = encode(x, copy.in_fmt, RoundMode::floor);
        return decode(copy.entries[c], copy.out_fmt);
      };
    }
  }
  throw std::logic_error("unknown activation kind");
}

// Interval-segmented lookup for kinds without a magnitude wrapper; stores
// the unquantized sample per row (pure segmentation error).
std::function<double(double)> interval_rom_eval(const ActivationSpec& f,
                                                FixedPointFormat in_fmt,
                                                Interval iv,
                                                SamplingConvention conv) {
  long rows = in_fmt.num_codes();
  double h = iv.length() / static_cast<double>(rows);
  std::vector<double> table(rows);
  double offset = conv.domain_point == DomainPoint::midpoint ? 0.5 : 0.0;
  for (long i = 0; i < rows; ++i) table[i] = f(iv.lo + (i + offset) * h);
  bool nearest = conv.domain_point == DomainPoint::nearest_grid;
  return [table, iv, h, nearest, rows](double x) {
    double u = (x - iv.lo) / h;
    double idx = nearest ? std::floor(u + 0.5) : std::floor(u);
    long i = static_cast<long>(clampq(idx, 0.0, static_cast<double>(rows - 1)));
    return table[i];
  };
}

std::function<double(double)> interval_kb_eval(const ActivationSpec& f,
                                               FixedPointFormat in_fmt,
                                               Interval iv,
                                               const KbWordFormat& kb) {
  long rows = in_fmt.num_codes();
  double h = iv.length() / static_cast<double>(rows);
  std::vector<double> ks(rows), bs(rows);
  for (long i = 0; i < rows; ++i) {
    double x0 = iv.lo + i * h;
    double k = (f(x0 + h) - f(x0)) / h;
    double kq = quantize_word(k, kb.frac_bits, kb.width());
    ks[i] = kq;
    bs[i] = quantize_word(f(x0) - kq * x0, kb.frac_bits, kb.width());
  }
  return [ks, bs, iv, h, rows](double x) {
    double u = std::floor((x - iv.lo) / h);
    long i = static_cast<long>(clampq(u, 0.0, static_cast<double>(rows - 1)));
    return ks[i] * x + bs[i];
  };
}

// Slope/intercept evaluation behind the same region wrapper as the table:
// the segment index comes from the input grid, the multiply sees the full
// precision input, the sum is quantized onto the output grid.
std::function<double(double)> wrapped_kb_eval(const QuantizedFunctionTable& t,
                                              const std::vector<KbSegment>& segs) {
  QuantizedFunctionTable tbl = t;
  std::vector<double> ks(segs.size()), bs(segs.size());
  for (size_t i = 0; i < segs.size(); ++i) {
    ks[i] = segs[i].k_q;
    bs[i] = segs[i].b_q;
  }
  return [tbl, ks, bs](double x) -> double {
    switch (classify_region(x, tbl.region)) {
      case Region::saturate_hi:
        return decode(saturation_code(tbl), tbl.out_fmt);
      case Region::saturate_lo:
        return -decode(saturation_code(tbl), tbl.out_fmt);
      case Region::linear_branch: {
        int64_t gain = linear_gain_code(tbl);
        int64_t xq = static_cast<int64_t>(
            std::floor(std::ldexp(x, tbl.in_fmt.frac_bits)));
        return std::ldexp(
            static_cast<double>((gain * xq) >> tbl.in_fmt.frac_bits),
            -tbl.out_fmt.frac_bits);
      }
      case Region::table_branch: {
        bool neg = false;
        double mag = x;
        if (tbl.region.kind == RegionKind::odd_symmetric_saturating) {
          neg = x < 0.0;
          mag = std::fabs(x);
        } else if (tbl.region.kind == RegionKind::negative_exp_saturating) {
          neg = true;
          mag = -x;
        } else if (mag < 0.0) {
          mag = 0.0;
        }
        double fidx = std::floor(std::ldexp(mag, tbl.in_fmt.frac_bits));
        long i = static_cast<long>(
            clampq(fidx, 0.0, static_cast<double>(ks.size() - 1)));
        double y = ks[i] * mag + bs[i];
        uint32_t code = encode(y, tbl.out_fmt,
                               tbl.convention.range_mode == RangeMode::floor
                                   ? RoundMode::floor
                                   : RoundMode::round);
        double v = decode(code, tbl.out_fmt);
        return neg ? -v : v;
      }
    }
    return 0.0;
  };
}

std::function<double(double)> taylor5_lut_eval(const ActivationSpec& f,
                                               const QuantizedFunctionTable& t) {
  if (f.kind != ActivationKind::tanh)
    throw std::invalid_argument("taylor5_lut applies to tanh only");
  // x below 0.39 (where tanh(x) ~ x), saturation above 2.90, a small
  // quantized lookup bridging the band between.
  double lo = 0.39, hi = 2.90;
  double step = t.in_fmt.step();
  long rows = static_cast<long>(std::ceil((hi - lo) / step));
  std::vector<double> table(rows);
  double offset =
      t.convention.domain_point == DomainPoint::midpoint ? 0.5 : 0.0;
  for (long i = 0; i < rows; ++i) {
    double v = std::tanh(lo + (i + offset) * step);
    table[i] = decode(encode(v, t.out_fmt, range_round_mode(t.convention)),
                      t.out_fmt);
  }
  return [lo, hi, step, table, rows](double x) {
    double mag = std::fabs(x);
    double sign = x < 0.0 ? -1.0 : 1.0;
    if (mag < lo) return x;
    if (mag >= hi) return sign;
    long i = static_cast<long>(
        clampq(std::floor((mag - lo) / step), 0.0,
               static_cast<double>(rows - 1)));
    return sign * table[i];
  };
}

long taylor5_lut_rows(const QuantizedFunctionTable& t) {
  return static_cast<long>(std::ceil((2.90 - 0.39) / t.in_fmt.step()));
}

bool wrapped_kind(ActivationKind k) {
  return k == ActivationKind::tanh || k == ActivationKind::selu ||
         k == ActivationKind::elu;
}

}  // namespace

Method parse_method(std::string_view name) {
  if (name == "combinational") return Method::combinational;
  if (name == "rom_y") return Method::rom_y;
  if (name == "rom_kb") return Method::rom_kb;
  if (name == "taylor") return Method::taylor;
  if (name == "pow2_approx") return Method::pow2_approx;
  if (name == "taylor5_lut") return Method::taylor5_lut;
  if (name == "exact_ref") return Method::exact_ref;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::combinational: return "combinational";
    case Method::rom_y: return "rom_y";
    case Method::rom_kb: return "rom_kb";
    case Method::taylor: return "taylor";
    case Method::pow2_approx: return "pow2_approx";
    case Method::taylor5_lut: return "taylor5_lut";
    case Method::exact_ref: return "exact_ref";
  }
  return "?";
}

bool method_needs_table(Method m, ActivationKind kind) {
  switch (m) {
    case Method::combinational:
    case Method::taylor5_lut:
      return true;
    case Method::rom_y:
    case Method::rom_kb:
      return wrapped_kind(kind);
    default:
      return false;
  }
}

std::vector<Method> default_methods(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::tanh:
      return {Method::combinational, Method::rom_y, Method::rom_kb,
              Method::taylor, Method::pow2_approx, Method::taylor5_lut};
    case ActivationKind::selu:
    case ActivationKind::elu:
      return {Method::combinational, Method::rom_y, Method::rom_kb,
              Method::pow2_approx};
    case ActivationKind::sigmoid:
      return {Method::rom_y, Method::rom_kb, Method::pow2_approx};
    case ActivationKind::exp:
      return {Method::rom_y, Method::rom_kb, Method::taylor,
              Method::pow2_approx};
    case ActivationKind::custom:
      return {Method::combinational, Method::rom_y, Method::rom_kb};
  }
  return {};
}

double average_error(const std::function<double(double)>& approx,
                     const std::function<double(double)>& exact, Interval iv,
                     long n) {
  if (n <= 0) throw std::invalid_argument("sample count must be positive");
  double sum = 0.0;
  double len = iv.length();
  for (long i = 0; i < n; ++i) {
    double x = iv.lo + (i + 0.5) / static_cast<double>(n) * len;
    sum += std::fabs(approx(x) - exact(x));
  }
  return sum / static_cast<double>(n) * 100.0;
}

double max_error(const std::function<double(double)>& approx,
                 const std::function<double(double)>& exact, Interval iv,
                 long n) {
  if (n <= 0) throw std::invalid_argument("sample count must be positive");
  double worst = 0.0;
  double len = iv.length();
  for (long i = 0; i < n; ++i) {
    double x = iv.lo + (i + 0.5) / static_cast<double>(n) * len;
    worst = std::max(worst, std::fabs(approx(x) - exact(x)));
  }
  return worst;
}

std::vector<KbSegment> build_kb_segments(const QuantizedFunctionTable& t,
                                         const KbWordFormat& kb,
                                         KbFit fit) {
  KbWordFormat w = kb.frac_bits > 0 ? kb : default_kb_format(t.out_fmt);
  auto g = magnitude_curve(t);
  double step = t.in_fmt.step();
  std::vector<KbSegment> segs(t.in_fmt.num_codes());
  for (uint32_t i = 0; i < segs.size(); ++i) {
    double x0 = i * step;
    KbSegment s;
    s.x0 = x0;
    if (fit == KbFit::secant) {
      s.k = (g(x0 + step) - g(x0)) / step;
      s.k_q = quantize_word(s.k, w.frac_bits, w.width());
      s.b = g(x0) - s.k_q * x0;  // anchor the left endpoint after k rounding
      s.b_q = quantize_word(s.b, w.frac_bits, w.width());
    } else {
      // Least squares line over the segment, from dense samples.
      constexpr int kPts = 65;
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (int p = 0; p < kPts; ++p) {
        double x = x0 + step * p / (kPts - 1);
        double y = g(x);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
      }
      double det = kPts * sxx - sx * sx;
      s.k = (kPts * sxy - sx * sy) / det;
      s.b = (sy - s.k * sx) / kPts;
      s.k_q = quantize_word(s.k, w.frac_bits, w.width());
      s.b_q = quantize_word(s.b, w.frac_bits, w.width());
    }
    segs[i] = s;
  }
  return segs;
}

Interval default_interval(const ActivationSpec& f, FixedPointFormat in_fmt) {
  switch (f.kind) {
    case ActivationKind::tanh: {
      double bp = std::ldexp(1.0, in_fmt.int_bits);
      return {-bp, bp};
    }
    case ActivationKind::selu:
    case ActivationKind::elu:
      return {-in_fmt.max_value(), 0.0};
    case ActivationKind::sigmoid:
    case ActivationKind::exp:
      return {-1.0, 1.0};
    case ActivationKind::custom:
      return f.custom_domain;
  }
  return {0.0, 1.0};
}

std::function<double(double)> method_eval(Method m, const ActivationSpec& f,
                                          const QuantizedFunctionTable& t,
                                          const AnalyzerConfig& cfg) {
  Interval iv = cfg.interval.length() > 0.0 ? cfg.interval
                                            : default_interval(f, t.in_fmt);
  switch (m) {
    case Method::combinational: {
      QuantizedFunctionTable tbl = t;
      return [tbl](double x) { return reference_eval(x, tbl); };
    }
    case Method::rom_y: {
      if (wrapped_kind(f.kind)) {
        QuantizedFunctionTable tbl = t;
        return [tbl](double x) { return reference_eval(x, tbl); };
      }
      return interval_rom_eval(f, t.in_fmt, iv, cfg.convention);
    }
    case Method::rom_kb: {
      if (wrapped_kind(f.kind))
        return wrapped_kb_eval(t, build_kb_segments(t, cfg.kb, cfg.kb_fit));
      KbWordFormat w =
          cfg.kb.frac_bits > 0 ? cfg.kb : default_kb_format(t.out_fmt);
      return interval_kb_eval(f, t.in_fmt, iv, w);
    }
    case Method::taylor: {
      int order = cfg.taylor_order;
      if (f.kind == ActivationKind::tanh)
        return [order](double x) { return tanh_taylor(x, order); };
      if (f.kind == ActivationKind::exp)
        return [order](double x) { return taylor_exp(x, order); };
      throw std::invalid_argument("taylor method not available for " +
                                  to_string(f.kind));
    }
    case Method::pow2_approx: {
      double coeff = cfg.pow2_coeff;
      switch (f.kind) {
        case ActivationKind::tanh:
          return [coeff](double x) { return tanh_pow2_approx(x, coeff); };
        case ActivationKind::sigmoid:
          return [coeff](double x) { return sigmoid_pow2_approx(x, coeff); };
        case ActivationKind::exp:
          return [](double x) { return exp_pow2_approx(x); };
        case ActivationKind::selu:
        case ActivationKind::elu: {
          double l = f.kind == ActivationKind::elu ? 1.0 : f.lambda;
          double a = f.alpha;
          return [l, a](double x) {
            return x >= 0.0 ? l * x : l * a * (exp_pow2_approx(x) - 1.0);
          };
        }
        default:
          throw std::invalid_argument("pow2_approx not available for " +
                                      to_string(f.kind));
      }
    }
    case Method::taylor5_lut: return taylor5_lut_eval(f, t);
    case Method::exact_ref: {
      ActivationSpec copy = f;
      return [copy](double x) { return copy(x); };
    }
  }
  throw std::logic_error("unknown method");
}

std::vector<ErrorReport> compare_methods(const ActivationSpec& f,
                                         FixedPointFormat in_fmt,
                                         FixedPointFormat out_fmt,
                                         const std::vector<Method>& methods,
                                         const AnalyzerConfig& cfg) {
  Interval iv = cfg.interval.length() > 0.0 ? cfg.interval
                                            : default_interval(f, in_fmt);
  bool needs_table = false;
  for (Method m : methods)
    if (method_needs_table(m, f.kind)) needs_table = true;
  QuantizedFunctionTable table;
  if (needs_table)
    table = build_table(f, in_fmt, out_fmt, cfg.convention, cfg.fold_lambda);
  else {
    table.in_fmt = in_fmt;
    table.out_fmt = out_fmt;
    table.convention = cfg.convention;
  }

  std::vector<ErrorReport> reports;
  for (Method m : methods) {
    ErrorReport r;
    r.method = m;
    r.convention = cfg.convention;
    r.samples = cfg.n;
    auto eval = method_eval(m, f, table, cfg);
    auto exact = [&f](double x) { return f(x); };
    r.average_error_percent = average_error(eval, exact, iv, cfg.n);
    r.max_abs_error = max_error(eval, exact, iv, cfg.n);
    switch (m) {
      case Method::combinational:
        r.cost = cost(minimize_table(table));
        break;
      case Method::rom_y:
        r.cost = rom_cost(table, RomKind::values);
        break;
      case Method::rom_kb:
        r.cost = rom_cost(table, RomKind::slope_intercept, cfg.kb);
        break;
      case Method::taylor5_lut: {
        long rows = taylor5_lut_rows(table);
        r.cost.rom_bits = rows * out_fmt.total_bits();
        r.cost.gate_equiv_area = r.cost.rom_bits;
        r.cost.cycles = 1;
        break;
      }
      default:
        break;  // polynomial methods carry no table cost
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

std::string error_report_csv(const std::vector<ErrorReport>& reports) {
  std::string s =
      "method,convention,avg_error_pct,max_abs_error,samples,product_count,"
      "literal_count,or_input_count,inverter_count,gate_equiv_area,"
      "depth_levels,rom_bits,cycles,area_ratio\n";
  long comb_area = 0;
  for (const auto& r : reports)
    if (r.method == Method::combinational) comb_area = r.cost.gate_equiv_area;
  for (const auto& r : reports) {
    s += to_string(r.method);
    s += ",\"" + to_string(r.convention) + "\"";
    s += "," + fmt_double(r.average_error_percent);
    s += "," + fmt_double(r.max_abs_error);
    s += "," + std::to_string(r.samples);
    s += "," + std::to_string(r.cost.product_count);
    s += "," + std::to_string(r.cost.literal_count);
    s += "," + std::to_string(r.cost.or_input_count);
    s += "," + std::to_string(r.cost.inverter_count);
    s += "," + std::to_string(r.cost.gate_equiv_area);
    s += "," + std::to_string(r.cost.depth_levels);
    s += "," + std::to_string(r.cost.rom_bits);
    s += "," + std::to_string(r.cost.cycles);
    if (comb_area > 0 && r.cost.gate_equiv_area > 0)
      s += "," + fmt_fixed(static_cast<double>(r.cost.gate_equiv_area) /
                               static_cast<double>(comb_area),
                           3);
    else
      s += ",";
    s += "\n";
  }
  return s;
}

std::vector<ConventionResult> convention_sweep(const ActivationSpec& f,
                                               FixedPointFormat in_fmt,
                                               FixedPointFormat out_fmt,
                                               Interval iv, long n,
                                               double target_ae) {
  Interval use = iv.length() > 0.0 ? iv : default_interval(f, in_fmt);
  std::vector<ConventionResult> results;
  for (const SamplingConvention& conv : all_conventions()) {
    QuantizedFunctionTable t = build_table(f, in_fmt, out_fmt, conv);
    auto eval = [&t](double x) { return reference_eval(x, t); };
    auto exact = [&f](double x) { return f(x); };
    results.push_back({conv, average_error(eval, exact, use, n)});
  }
  if (!std::isnan(target_ae)) {
    std::stable_sort(results.begin(), results.end(),
                     [target_ae](const ConventionResult& a,
                                 const ConventionResult& b) {
                       return std::fabs(a.average_error_percent - target_ae) <
                              std::fabs(b.average_error_percent - target_ae);
                     });
  }
  return results;
}

std::string error_curve_csv(const std::function<double(double)>& approx,
                            const std::function<double(double)>& exact,
                            Interval iv, long points) {
  std::string s = "x,exact,approx,abs_error\n";
  for (long i = 0; i < points; ++i) {
    double x = iv.lo + (i + 0.5) / static_cast<double>(points) * iv.length();
    double e = exact(x);
    double a = approx(x);
    s += fmt_double(x) + "," + fmt_double(e) + "," + fmt_double(a) + "," +
         fmt_double(std::fabs(a - e)) + "\n";
  }
  return s;
}

}  // namespace afc
