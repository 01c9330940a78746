// Copyright (C) 2026 the afc authors
// SPDX-License-Identifier: Apache-2.0
//
// afc: compile activation functions into two-level combinational circuits,
// compare them against lookup and polynomial baselines, and swap the
// quantized forms into small neural networks.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "afc/analyzer.hpp"
#include "afc/minimize.hpp"
#include "afc/netlist.hpp"
#include "afc/nn.hpp"
#include "afc/pla_io.hpp"
#include "afc/text.hpp"
#include "afc/verilog.hpp"

namespace fs = std::filesystem;
using namespace afc;

namespace {

FixedPointFormat parse_fmt_flag(const std::string& s, const char* flag) {
  try {
    return parse_format(s);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(flag) + ": " + e.what());
  }
}

SamplingConvention parse_conv_flag(const std::string& s, const char* flag) {
  try {
    return parse_convention(s);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(flag) + ": " + e.what());
  }
}

Interval parse_interval_flag(const std::string& s, const char* flag) {
  size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument(std::string(flag) +
                                ": expected <lo>:<hi>, got '" + s + "'");
  try {
    Interval iv{std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
    if (!(iv.lo < iv.hi))
      throw std::invalid_argument("lo must be below hi");
    return iv;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string(flag) +
                                ": expected <lo>:<hi>, got '" + s + "'");
  }
}

std::string default_out_dir() {
  const char* env = std::getenv("AFC_OUT_DIR");
  return env && *env ? env : ".";
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
  std::cout << "wrote " << path.string() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FunctionOptions {
  std::string function;
  std::string in_fmt, out_fmt;
  std::string convention = "left_edge,round";
  double alpha = kDefaultAlpha;
  double lambda = kDefaultLambda;
  bool no_fold_lambda = false;
};

void add_function_options(CLI::App* cmd, FunctionOptions& o) {
  cmd->add_option("function", o.function,
                  "activation: tanh, sigmoid, elu, selu or exp")
      ->required();
  cmd->add_option("--in-fmt", o.in_fmt,
                  "input magnitude format U<int>.<frac> (default per function)");
  cmd->add_option("--out-fmt", o.out_fmt,
                  "output magnitude format U<int>.<frac> (default per function)");
  cmd->add_option("--convention", o.convention,
                  "table sampling: <left_edge|midpoint|nearest_grid>,<floor|round>")
      ->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "elu/selu alpha")
      ->capture_default_str();
  cmd->add_option("--lambda", o.lambda, "selu lambda")
      ->capture_default_str();
  cmd->add_flag("--no-fold-lambda", o.no_fold_lambda,
                "keep the lambda multiply outside the stored table");
}

struct ResolvedFunction {
  ActivationSpec spec;
  FixedPointFormat in_fmt;
  FixedPointFormat out_fmt;
  SamplingConvention convention;
  bool fold_lambda = true;
};

ResolvedFunction resolve_function(const FunctionOptions& o) {
  ResolvedFunction r;
  r.spec.kind = parse_activation(o.function);
  if (r.spec.kind == ActivationKind::custom)
    throw std::invalid_argument(
        "function: custom tables are only available through the library");
  r.spec.alpha = o.alpha;
  r.spec.lambda = o.lambda;
  bool wide = r.spec.kind == ActivationKind::selu ||
              r.spec.kind == ActivationKind::elu;
  std::string in_default = wide ? "U2.3" : "U1.3";
  std::string out_default = wide ? "U1.7" : "U1.6";
  r.in_fmt = parse_fmt_flag(o.in_fmt.empty() ? in_default : o.in_fmt,
                            "--in-fmt");
  r.out_fmt = parse_fmt_flag(o.out_fmt.empty() ? out_default : o.out_fmt,
                             "--out-fmt");
  r.convention = parse_conv_flag(o.convention, "--convention");
  r.fold_lambda = !o.no_fold_lambda;
  return r;
}

std::string default_name(const ResolvedFunction& r) {
  return to_string(r.spec.kind) + "_" +
         std::to_string(r.out_fmt.total_bits()) + "_" +
         std::to_string(r.in_fmt.total_bits());
}

MinimizeOptions minimize_options(const std::string& dc_policy,
                                 bool hazard_free, bool force_exact,
                                 bool force_greedy) {
  MinimizeOptions opts;
  if (dc_policy == "none") opts.dc_policy = DontCarePolicy::none;
  else if (dc_policy == "out_of_region")
    opts.dc_policy = DontCarePolicy::out_of_region;
  else
    throw std::invalid_argument("--dc-policy: expected none or out_of_region");
  opts.hazard_free = hazard_free;
  if (force_exact && force_greedy)
    throw std::invalid_argument("--exact and --greedy are mutually exclusive");
  if (force_exact) opts.exact = true;
  if (force_greedy) opts.exact = false;
  return opts;
}

int cmd_gen(const FunctionOptions& fo, const std::string& name_opt,
            const std::string& out_dir, const std::string& dc_policy,
            bool hazard_free, bool force_exact, bool force_greedy,
            bool emit_rom, int kb_frac) {
  ResolvedFunction r = resolve_function(fo);
  QuantizedFunctionTable table =
      build_table(r.spec, r.in_fmt, r.out_fmt, r.convention, r.fold_lambda);
  MinimizeOptions opts =
      minimize_options(dc_policy, hazard_free, force_exact, force_greedy);
  PlaNetlist netlist;
  netlist.name = name_opt.empty() ? default_name(r) : name_opt;
  netlist.table = table;
  netlist.cover = minimize_table(table, opts);

  // The planes must reproduce every non-don't-care table entry.
  for (uint32_t c = 0; c < table.entries.size(); ++c) {
    if (opts.dc_policy == DontCarePolicy::out_of_region &&
        !code_reaches_table(table, c))
      continue;
    if (netlist.cover.eval(c) != table.entries[c])
      throw std::runtime_error("internal check failed at input code " +
                               std::to_string(c));
  }

  fs::path dir(out_dir);
  fs::create_directories(dir);
  write_file(dir / (netlist.name + ".pla"), emit_pla(netlist.cover));
  write_file(dir / (netlist.name + ".v"), emit_verilog(netlist));
  write_file(dir / (netlist.name + "_tb.v"), emit_testbench(netlist));
  write_file(dir / "table.csv", table_csv(table));

  KbWordFormat kb = kb_frac > 0 ? KbWordFormat{1, kb_frac} : KbWordFormat{};
  CostReport comb = cost(netlist.cover);
  CostReport romy = rom_cost(table, RomKind::values);
  CostReport romkb = rom_cost(table, RomKind::slope_intercept, kb);
  std::string cost_csv = cost_csv_header();
  cost_csv += cost_csv_row("combinational", comb);
  cost_csv += cost_csv_row("rom_y", romy);
  cost_csv += cost_csv_row("rom_kb", romkb);
  write_file(dir / "cost.csv", cost_csv);

  if (emit_rom) {
    write_file(dir / (netlist.name + "_rom.v"),
               emit_rom_verilog(table, RomKind::values, netlist.name + "_rom"));
    write_file(dir / (netlist.name + "_rom_kb.v"),
               emit_rom_verilog(table, RomKind::slope_intercept,
                                netlist.name + "_rom_kb", kb));
  }

  std::cout << cost_table({{"combinational", comb},
                           {"rom_y", romy},
                           {"rom_kb", romkb}});
  return 0;
}

int cmd_check(const FunctionOptions& fo, const std::string& pla_path,
              const std::string& dc_policy, bool hazard_free) {
  ResolvedFunction r = resolve_function(fo);
  QuantizedFunctionTable table =
      build_table(r.spec, r.in_fmt, r.out_fmt, r.convention, r.fold_lambda);
  MinimizeOptions opts = minimize_options(dc_policy, hazard_free, false, false);

  PlaCover cover;
  try {
    cover = parse_pla(read_file(pla_path));
  } catch (const PlaParseError& e) {
    std::cerr << pla_path << ": " << e.what() << "\n";
    return 2;
  }
  if (cover.num_inputs != static_cast<int>(table.num_inputs()) ||
      cover.num_outputs != static_cast<int>(table.num_outputs())) {
    std::cerr << pla_path << ": plane is " << cover.num_inputs << "x"
              << cover.num_outputs << " but the table needs "
              << table.num_inputs() << "x" << table.num_outputs() << "\n";
    return 2;
  }

  std::vector<char> is_dc(table.entries.size(), 0);
  if (opts.dc_policy == DontCarePolicy::out_of_region) {
    for (uint32_t c = 0; c < table.entries.size(); ++c)
      if (!code_reaches_table(table, c)) is_dc[c] = 1;
  }

  long checked = 0;
  for (uint32_t c = 0; c < table.entries.size(); ++c) {
    if (is_dc[c]) continue;
    uint32_t got = cover.eval(c);
    if (got != table.entries[c]) {
      std::cerr << "mismatch at input code " << c << ": plane gives " << got
                << ", table has " << table.entries[c] << "\n";
      return 2;
    }
    ++checked;
  }

  if (hazard_free) {
    for (int j = 0; j < cover.num_outputs; ++j) {
      std::vector<uint32_t> onset;
      for (uint32_t c : output_onset(table, j))
        if (!is_dc[c]) onset.push_back(c);
      if (!is_hazard_free(cover.output_cover(j), onset,
                          cover.num_inputs)) {
        std::cerr << "output " << j
                  << " has an uncovered adjacent onset pair\n";
        return 2;
      }
    }
  }

  std::cout << "ok: " << checked << " input codes verified against "
            << to_string(r.spec.kind) << " " << to_string(r.in_fmt) << " -> "
            << to_string(r.out_fmt) << "\n";
  return 0;
}

int cmd_error(const FunctionOptions& fo, const std::string& methods_opt,
              const std::string& interval_opt, long samples,
              bool sweep_conventions, double target_ae, int taylor_order,
              double pow2_coeff, int kb_frac, const std::string& kb_fit,
              const std::string& out_path, const std::string& curve_method,
              const std::string& curve_path, long curve_points) {
  ResolvedFunction r = resolve_function(fo);
  AnalyzerConfig cfg;
  cfg.convention = r.convention;
  cfg.fold_lambda = r.fold_lambda;
  cfg.n = samples;
  cfg.taylor_order = taylor_order;
  cfg.pow2_coeff = pow2_coeff;
  if (kb_frac > 0) cfg.kb = {1, kb_frac};
  if (kb_fit == "secant") cfg.kb_fit = KbFit::secant;
  else if (kb_fit == "least_squares") cfg.kb_fit = KbFit::least_squares;
  else
    throw std::invalid_argument("--kb-fit: expected secant or least_squares");
  if (!interval_opt.empty())
    cfg.interval = parse_interval_flag(interval_opt, "--interval");
  Interval iv = cfg.interval.length() > 0.0
                    ? cfg.interval
                    : default_interval(r.spec, r.in_fmt);

  if (sweep_conventions) {
    auto results = convention_sweep(r.spec, r.in_fmt, r.out_fmt, iv, cfg.n,
                                    target_ae);
    std::string csv = "convention,avg_error_pct";
    bool with_target = !std::isnan(target_ae);
    if (with_target) csv += ",delta_vs_target";
    csv += "\n";
    for (const auto& res : results) {
      csv += "\"" + to_string(res.convention) + "\"," +
             fmt_fixed(res.average_error_percent, 4);
      if (with_target)
        csv += "," + fmt_fixed(res.average_error_percent - target_ae, 4);
      csv += "\n";
    }
    if (out_path.empty()) std::cout << csv;
    else write_file(out_path, csv);
    if (with_target)
      std::cout << "closest to target " << fmt_fixed(target_ae, 2) << ": "
                << to_string(results.front().convention) << " at "
                << fmt_fixed(results.front().average_error_percent, 4)
                << "\n";
    return 0;
  }

  std::vector<Method> methods;
  if (methods_opt.empty()) {
    methods = default_methods(r.spec.kind);
  } else {
    std::stringstream ss{methods_opt};
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        methods.push_back(parse_method(item));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("--methods: ") + e.what());
      }
    }
  }

  auto reports = compare_methods(r.spec, r.in_fmt, r.out_fmt, methods, cfg);
  std::string csv = error_report_csv(reports);
  if (out_path.empty()) std::cout << csv;
  else write_file(out_path, csv);

  if (!curve_path.empty()) {
    Method cm = curve_method.empty() ? methods.front()
                                     : parse_method(curve_method);
    QuantizedFunctionTable table;
    if (method_needs_table(cm, r.spec.kind)) {
      table = build_table(r.spec, r.in_fmt, r.out_fmt, cfg.convention,
                          cfg.fold_lambda);
    } else {
      table.in_fmt = r.in_fmt;
      table.out_fmt = r.out_fmt;
      table.convention = cfg.convention;
    }
    auto approx = method_eval(cm, r.spec, table, cfg);
    auto exact = [&r](double x) { return r.spec(x); };
    write_file(curve_path, error_curve_csv(approx, exact, iv, curve_points));
  }
  return 0;
}

ActivationSpec activation_from_flags(const std::string& name, double alpha,
                                     double lambda) {
  ActivationSpec spec;
  spec.kind = parse_activation(name);
  if (spec.kind == ActivationKind::custom || spec.kind == ActivationKind::exp)
    throw std::invalid_argument(
        "--activation: training supports tanh, sigmoid, elu and selu");
  spec.alpha = alpha;
  spec.lambda = lambda;
  return spec;
}

int cmd_nn_make_data(uint64_t seed, int classes, int dim, long samples,
                     double radius, double noise, int blobs,
                     const std::string& out_path) {
  nn::SyntheticConfig cfg;
  cfg.classes = classes;
  cfg.dim = dim;
  cfg.samples = samples;
  cfg.radius = radius;
  cfg.noise = noise;
  cfg.blobs_per_class = blobs;
  nn::Dataset ds = nn::make_synthetic(seed, cfg);
  write_file(out_path, nn::dataset_csv(ds));
  std::cout << "samples " << ds.size() << ", classes " << ds.num_classes
            << ", dim " << ds.dim() << ", test rows "
            << ds.split_indices(true).size() << "\n";
  return 0;
}

int cmd_nn_train(const std::string& data_path, const std::string& activation,
                 double alpha, double lambda, std::vector<int> hidden,
                 int epochs, int batch, double lr, uint64_t seed,
                 const std::string& out_path) {
  nn::Dataset ds = nn::parse_dataset_csv(read_file(data_path));
  ActivationSpec act = activation_from_flags(activation, alpha, lambda);
  if (hidden.empty()) hidden = {16};
  nn::Mlp model = nn::make_mlp(ds.dim(), hidden, ds.num_classes, act, seed);
  nn::TrainConfig cfg;
  cfg.epochs = epochs;
  cfg.batch = batch;
  cfg.lr = lr;
  cfg.seed = seed;
  nn::TrainResult res = nn::train(model, ds, cfg);
  std::cout << "final loss " << fmt_fixed(res.final_loss, 4)
            << ", train accuracy " << fmt_fixed(res.train_accuracy, 4)
            << ", test accuracy " << fmt_fixed(res.test_accuracy, 4) << "\n";
  if (!out_path.empty()) write_file(out_path, nn::model_json(model));
  return 0;
}

int cmd_nn_eval(const std::string& model_path, const std::string& data_path,
                const std::string& variant_opt,
                const std::string& convention) {
  nn::Mlp model = nn::parse_model_json(read_file(model_path));
  nn::Dataset ds = nn::parse_dataset_csv(read_file(data_path));
  double base = nn::evaluate(model, ds, true);
  std::cout << "float test accuracy " << fmt_fixed(base, 4) << "\n";
  if (!variant_opt.empty()) {
    nn::Variant v;
    try {
      v = nn::parse_variant(variant_opt);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("--variant: ") + e.what());
    }
    auto rows = nn::sweep(model, ds, {v},
                          parse_conv_flag(convention, "--convention"));
    std::cout << "quantized " << v.name() << " test accuracy "
              << fmt_fixed(rows[0].quant_accuracy, 4) << " (delta "
              << fmt_fixed(rows[0].delta_points, 2) << " points)\n";
  }
  return 0;
}

int cmd_nn_sweep(const std::string& model_path, const std::string& data_path,
                 const std::string& variants_opt,
                 const std::string& convention,
                 const std::string& out_path) {
  nn::Mlp model = nn::parse_model_json(read_file(model_path));
  nn::Dataset ds = nn::parse_dataset_csv(read_file(data_path));
  std::vector<nn::Variant> variants;
  std::string list = variants_opt;
  if (list.empty()) {
    switch (model.activation.kind) {
      case ActivationKind::tanh: list = "tanh_5_4,tanh_7_4,tanh_7_6"; break;
      case ActivationKind::selu: list = "selu_8_5,selu_10_7"; break;
      case ActivationKind::elu: list = "elu_8_5,elu_10_7"; break;
      default:
        throw std::invalid_argument(
            "--variants: no defaults for this activation, pass a list");
    }
  }
  std::stringstream ss{list};
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      variants.push_back(nn::parse_variant(item));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("--variants: ") + e.what());
    }
  }
  auto rows = nn::sweep(model, ds, variants,
                        parse_conv_flag(convention, "--convention"));
  std::string csv = nn::sweep_csv(rows);
  if (out_path.empty()) std::cout << csv;
  else {
    write_file(out_path, csv);
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"activation function circuit compiler"};
  app.set_config("--config", "", "read options from a config file");
  app.set_version_flag("--version", "afc 0.1.0");
  app.require_subcommand(1);
  int rc = 0;

  // gen
  auto* gen = app.add_subcommand(
      "gen", "tabulate, minimize and emit PLA/Verilog for a function");
  static FunctionOptions gen_fo;
  add_function_options(gen, gen_fo);
  static std::string gen_name, gen_dc = "none";
  static std::string gen_out_dir = default_out_dir();
  static bool gen_hazard = false, gen_exact = false, gen_greedy = false;
  static bool gen_rom = false;
  static int gen_kb_frac = 0;
  gen->add_option("--name", gen_name, "module/file base name");
  gen->add_option("--out-dir", gen_out_dir,
                  "output directory (default: AFC_OUT_DIR or .)");
  gen->add_option("--dc-policy", gen_dc, "none or out_of_region")
      ->capture_default_str();
  gen->add_flag("--hazard-free", gen_hazard,
                "add consensus products for single-input transitions");
  gen->add_flag("--exact", gen_exact, "force the exact cover search");
  gen->add_flag("--greedy", gen_greedy, "force the greedy cover heuristic");
  gen->add_flag("--emit-rom", gen_rom,
                "also write the value and slope/intercept table modules");
  gen->add_option("--kb-frac", gen_kb_frac,
                  "slope/intercept word fraction bits (default out_frac+4)");
  gen->callback([&]() {
    rc = cmd_gen(gen_fo, gen_name, gen_out_dir, gen_dc, gen_hazard, gen_exact,
                 gen_greedy, gen_rom, gen_kb_frac);
  });

  // check
  auto* check = app.add_subcommand(
      "check", "verify a PLA file against a regenerated table");
  static FunctionOptions check_fo;
  add_function_options(check, check_fo);
  static std::string check_pla, check_dc = "none";
  static bool check_hazard = false;
  check->add_option("--pla", check_pla, "PLA file to verify")->required();
  check->add_option("--dc-policy", check_dc, "none or out_of_region")
      ->capture_default_str();
  check->add_flag("--hazard-free", check_hazard,
                  "also require joint cover of adjacent onset pairs");
  check->callback([&]() {
    rc = cmd_check(check_fo, check_pla, check_dc, check_hazard);
  });

  // error
  auto* err = app.add_subcommand(
      "error", "average error and cost report across methods");
  static FunctionOptions err_fo;
  add_function_options(err, err_fo);
  static std::string err_methods, err_interval, err_out, err_curve_method,
      err_curve;
  static long err_samples = 100000, err_curve_points = 512;
  static bool err_sweep = false;
  static double err_target = std::nan("");
  static int err_taylor = 5, err_kb_frac = 0;
  static double err_pow2 = 1.5;
  static std::string err_kb_fit = "secant";
  err->add_option("--methods", err_methods,
                  "comma list: combinational,rom_y,rom_kb,taylor,pow2_approx,"
                  "taylor5_lut,exact_ref (default per function)");
  err->add_option("--interval", err_interval,
                  "analysis interval <lo>:<hi> (default per function)");
  err->add_option("--samples", err_samples, "sample count")
      ->capture_default_str();
  err->add_flag("--sweep-conventions", err_sweep,
                "report the table error for every sampling convention");
  err->add_option("--target-ae", err_target,
                  "sort the convention sweep by distance to this error");
  err->add_option("--taylor-order", err_taylor, "taylor method order")
      ->capture_default_str();
  err->add_option("--pow2-coeff", err_pow2,
                  "exponent coefficient for the power-of-two forms")
      ->capture_default_str();
  err->add_option("--kb-frac", err_kb_frac,
                  "slope/intercept word fraction bits (default out_frac+4)");
  err->add_option("--kb-fit", err_kb_fit, "secant or least_squares")
      ->capture_default_str();
  err->add_option("--out", err_out, "write the CSV report here");
  err->add_option("--curve-method", err_curve_method,
                  "method for --curve (default: first method)");
  err->add_option("--curve", err_curve, "write an x,exact,approx,error CSV");
  err->add_option("--curve-points", err_curve_points, "curve sample count")
      ->capture_default_str();
  err->callback([&]() {
    rc = cmd_error(err_fo, err_methods, err_interval, err_samples, err_sweep,
                   err_target, err_taylor, err_pow2, err_kb_frac, err_kb_fit,
                   err_out, err_curve_method, err_curve, err_curve_points);
  });

  // nn
  auto* nncmd = app.add_subcommand("nn", "small network swap harness");
  nncmd->require_subcommand(1);

  auto* mk = nncmd->add_subcommand("make-data", "write a synthetic dataset");
  static uint64_t mk_seed = 42;
  static int mk_classes = 3, mk_dim = 2, mk_blobs = 2;
  static long mk_samples = 1200;
  static double mk_radius = 2.5, mk_noise = 0.55;
  static std::string mk_out = "dataset.csv";
  mk->add_option("--seed", mk_seed, "rng seed")->capture_default_str();
  mk->add_option("--classes", mk_classes, "class count")
      ->capture_default_str();
  mk->add_option("--dim", mk_dim, "feature dimensions")
      ->capture_default_str();
  mk->add_option("--samples", mk_samples, "row count")->capture_default_str();
  mk->add_option("--radius", mk_radius, "blob ring radius")
      ->capture_default_str();
  mk->add_option("--noise", mk_noise, "per-coordinate sigma")
      ->capture_default_str();
  mk->add_option("--blobs", mk_blobs, "blobs per class")
      ->capture_default_str();
  mk->add_option("--out", mk_out, "output CSV path")->capture_default_str();
  mk->callback([&]() {
    rc = cmd_nn_make_data(mk_seed, mk_classes, mk_dim, mk_samples, mk_radius,
                          mk_noise, mk_blobs, mk_out);
  });

  auto* tr = nncmd->add_subcommand("train", "train the float model");
  static std::string tr_data, tr_act = "tanh", tr_out = "model.json";
  static double tr_alpha = kDefaultAlpha, tr_lambda = kDefaultLambda;
  static std::vector<int> tr_hidden;
  static int tr_epochs = 80, tr_batch = 32;
  static double tr_lr = 0.08;
  static uint64_t tr_seed = 1;
  tr->add_option("--data", tr_data, "dataset CSV")->required();
  tr->add_option("--activation", tr_act, "hidden activation")
      ->capture_default_str();
  tr->add_option("--alpha", tr_alpha, "elu/selu alpha")->capture_default_str();
  tr->add_option("--lambda", tr_lambda, "selu lambda")->capture_default_str();
  tr->add_option("--hidden", tr_hidden, "hidden layer sizes (default 16)");
  tr->add_option("--epochs", tr_epochs, "training epochs")
      ->capture_default_str();
  tr->add_option("--batch", tr_batch, "minibatch size")->capture_default_str();
  tr->add_option("--lr", tr_lr, "learning rate")->capture_default_str();
  tr->add_option("--seed", tr_seed, "init/shuffle seed")
      ->capture_default_str();
  tr->add_option("--out", tr_out, "model checkpoint path")
      ->capture_default_str();
  tr->callback([&]() {
    rc = cmd_nn_train(tr_data, tr_act, tr_alpha, tr_lambda, tr_hidden,
                      tr_epochs, tr_batch, tr_lr, tr_seed, tr_out);
  });

  auto* ev = nncmd->add_subcommand("eval", "evaluate a checkpoint");
  static std::string ev_model, ev_data, ev_variant;
  static std::string ev_conv = "left_edge,round";
  ev->add_option("--model", ev_model, "model checkpoint")->required();
  ev->add_option("--data", ev_data, "dataset CSV")->required();
  ev->add_option("--variant", ev_variant,
                 "also evaluate with this quantized variant, e.g. tanh_7_6");
  ev->add_option("--convention", ev_conv, "table sampling convention")
      ->capture_default_str();
  ev->callback(
      [&]() { rc = cmd_nn_eval(ev_model, ev_data, ev_variant, ev_conv); });

  auto* sw = nncmd->add_subcommand(
      "sweep", "accuracy before/after the quantized swap, per variant");
  static std::string sw_model, sw_data, sw_variants, sw_out;
  static std::string sw_conv = "left_edge,round";
  sw->add_option("--model", sw_model, "model checkpoint")->required();
  sw->add_option("--data", sw_data, "dataset CSV")->required();
  sw->add_option("--variants", sw_variants,
                 "comma list of variants (default per activation)");
  sw->add_option("--convention", sw_conv, "table sampling convention")
      ->capture_default_str();
  sw->add_option("--out", sw_out, "write the sweep CSV here");
  sw->callback([&]() {
    rc = cmd_nn_sweep(sw_model, sw_data, sw_variants, sw_conv, sw_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
