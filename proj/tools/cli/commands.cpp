// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>

#include "CLI11.hpp"
#include "adalut/analysis.hpp"
#include "adalut/io/lut_files.hpp"
#include "adalut/io/png_io.hpp"
#include "adalut/pipeline.hpp"
#include "json.hpp"

namespace adalut::cli {

using nlohmann::json;

namespace {

void emit(const json& j, const std::string& out_path, std::ostream& out) {
  const std::string text = j.dump(2);
  if (out_path.empty()) {
    out << text << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw IoError("cannot open for writing: " + out_path);
  f << text << '\n';
}

json metric(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ImageU8 as_u8(const io::PngImage& img) {
  if (const auto* p = std::get_if<ImageU8>(&img)) return *p;
  return to_u8(std::get<ImageU16>(img));
}

ImageF random_image(int h, int w, std::uint64_t seed) {
  ImageF img(h, w);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(0.0f, 1.0f);
  for (float& v : img.data()) v = dist(rng);
  return img;
}

double percentile(std::vector<double> sorted, double q) {
  std::sort(sorted.begin(), sorted.end());
  const std::size_t rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

std::pair<int, int> resolution_size(const std::string& name) {
  if (name == "480p") return {480, 640};
  if (name == "720p") return {720, 1280};
  if (name == "4k") return {2160, 3840};
  if (name == "8k") return {4320, 7680};
  throw CLI::ValidationError("resolution", "unknown resolution '" + name + "' (480p, 720p, 4k, 8k)");
}

int cmd_enhance(const EnhanceArgs& args, std::ostream& out) {
  if (args.fixed_point && args.interp == Interpolator::tetrahedral)
    throw CLI::ValidationError("--interp", "the fixed-point path only implements trilinear interpolation");
  const Exec exec{args.threads};
  const io::PngImage input = io::read_png(args.input);
  const WeightBundle bundle = load_weight_bundle(args.weights);
  const ImageF x = io::to_float(input);
  const PredictedLuts luts = predict_luts(x, bundle, exec);

  if (!args.dump_luts.empty()) {
    io::write_lut1d(args.dump_luts + "_1d.txt", luts.lut1d);
    io::write_cube(args.dump_luts + "_3d.cube", luts.lut3d, "adalut predicted 3D LUT");
  }

  if (args.fixed_point) {
    const ImageU8 x8 = as_u8(input);
    const Lut1DQ q1 = quantize_lut1d(luts.lut1d);
    const Lut3DQ q3 = quantize_lut3d(luts.lut3d);
    if (!args.dump_intermediate.empty()) io::write_png(args.dump_intermediate, apply_lut1d_fixed(q1, x8, exec));
    io::write_png(args.output, apply_cascade_fixed(q1, q3, x8, exec));
  } else {
    if (!args.dump_intermediate.empty()) io::write_png(args.dump_intermediate, to_u16(apply_lut1d(luts.lut1d, x, exec)));
    io::write_png(args.output, to_u8(apply_cascade(luts.lut1d, luts.lut3d, x, args.interp, exec)));
  }

  emit({{"output", args.output},
        {"mode", args.fixed_point ? "fixed" : "float"},
        {"interpolator", args.interp == Interpolator::tetrahedral ? "tetrahedral" : "trilinear"},
        {"input_bit_depth", io::bit_depth(input)},
        {"context_length", luts.context.values.size()},
        {"lut1d_monotone", is_monotone(luts.lut1d)}},
       "", out);
  return kOk;
}

int cmd_apply_lut(const ApplyLutArgs& args, std::ostream& out) {
  const Exec exec{args.threads};
  ImageF img = io::to_float(io::read_png(args.input));
  if (!args.lut1d.empty()) img = apply_lut1d(io::read_lut1d(args.lut1d), img, exec);
  if (!args.lut3d.empty()) img = apply_lut3d(io::read_cube(args.lut3d), img, args.interp, exec);
  io::write_png(args.output, to_u8(img));
  emit({{"output", args.output}, {"lut1d", !args.lut1d.empty()}, {"lut3d", !args.lut3d.empty()}}, "", out);
  return kOk;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out) {
  const ImageF img = io::to_float(io::read_png(args.input));
  std::optional<ImageF> ref;
  if (!args.reference.empty()) ref = io::to_float(io::read_png(args.reference));
  const AnalysisReport report = analyze(img, args.lut3d_size, ref ? &*ref : nullptr);
  emit(json::parse(to_json(report)), args.out, out);
  return kOk;
}

int cmd_metrics(const MetricsArgs& args, std::ostream& out) {
  const io::PngImage pred = io::read_png(args.pred);
  const io::PngImage gt = io::read_png(args.gt);
  const ImageF pf = io::to_float(pred), gf = io::to_float(gt);
  double p = 0.0;
  if (pred.index() == 0 && gt.index() == 0)
    p = psnr(std::get<ImageU8>(pred), std::get<ImageU8>(gt));
  else if (pred.index() == 1 && gt.index() == 1)
    p = psnr(std::get<ImageU16>(pred), std::get<ImageU16>(gt));
  else
    p = psnr(pf, gf);
  emit({{"psnr", metric(p)}, {"ssim", ssim(pf, gf)}, {"delta_e", delta_e_ab(pf, gf)}}, args.out, out);
  return kOk;
}

BenchReport run_benchmark(const BenchConfig& config) {
  const auto [h, w] = resolution_size(config.resolution);
  const Exec exec{config.threads};
  const WeightBundle bundle =
      config.weights.empty() ? make_random_bundle(config.hp, config.seed) : load_weight_bundle(config.weights);
  const ImageF xf = random_image(h, w, config.seed);
  const ImageU8 x8 = to_u8(xf);
  const PredictedLuts luts = predict_luts(xf, bundle, exec);
  const Lut1DQ q1 = quantize_lut1d(luts.lut1d);
  const Lut3DQ q3 = quantize_lut3d(luts.lut3d);

  // Returns a checksum so the optimizer keeps the work.
  auto run_once = [&]() -> std::size_t {
    if (config.luts_only)
      return config.fixed ? apply_cascade_fixed(q1, q3, x8, exec).pixel_count()
                          : apply_cascade(luts.lut1d, luts.lut3d, xf, Interpolator::trilinear, exec).pixel_count();
    return config.fixed ? enhance_fixed(x8, bundle, exec).pixel_count()
                        : enhance(xf, bundle, Interpolator::trilinear, exec).pixel_count();
  };

  BenchReport report;
  report.resolution = config.resolution;
  report.width = w;
  report.height = h;
  report.mode = config.fixed ? "fixed" : "float";
  report.stage = config.luts_only ? "luts_only" : "full";
  report.warmup = config.warmup;
  std::size_t sink = 0;
  for (int i = 0; i < config.warmup; ++i) sink += run_once();
  for (int i = 0; i < config.iterations; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    sink += run_once();
    const auto t1 = std::chrono::steady_clock::now();
    report.samples_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  if (sink == 0 && config.iterations > 0) throw Error("benchmark produced no output");
  if (!report.samples_ms.empty()) {
    const auto& s = report.samples_ms;
    report.mean_ms = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    report.median_ms = percentile(s, 0.5);
    report.p95_ms = percentile(s, 0.95);
    report.min_ms = *std::min_element(s.begin(), s.end());
    report.max_ms = *std::max_element(s.begin(), s.end());
  }
  return report;
}

std::string to_json(const BenchReport& r) {
  json j = {{"resolution", r.resolution},
            {"width", r.width},
            {"height", r.height},
            {"mode", r.mode},
            {"stage", r.stage},
            {"warmup", r.warmup},
            {"iterations", r.samples_ms.size()},
            {"mean_ms", r.mean_ms},
            {"median_ms", r.median_ms},
            {"p95_ms", r.p95_ms},
            {"min_ms", r.min_ms},
            {"max_ms", r.max_ms},
            {"samples_ms", r.samples_ms},
            {"note", "compute only: PNG decode/encode excluded; images are seeded random"}};
  return j.dump(2);
}

int cmd_bench(const BenchConfig& config, const std::string& out_path, std::ostream& out) {
  emit(json::parse(to_json(run_benchmark(config))), out_path, out);
  return kOk;
}

int cmd_quantize(const QuantizeArgs& args, std::ostream& out) {
  const WeightBundle bundle = load_weight_bundle(args.input);
  const WeightBundle quantized = quantize_bundle(bundle);
  save_weight_bundle(quantized, args.output);

  auto accounting = [&](Accounting a) {
    const double before = bundle.equivalent_parameter_count(a);
    const double after = quantized.equivalent_parameter_count(a);
    return json{{"original", before}, {"equivalent", after}, {"reduction_percent", 100.0 * (before - after) / before}};
  };
  emit({{"output", args.output},
        {"convention", "float32 parameter = 1, 8-bit parameter = 1/4"},
        {"all_parameters", accounting(Accounting::all_parameters)},
        {"weights_only", accounting(Accounting::weights_only)}},
       "", out);
  return kOk;
}

int cmd_make_bundle(const MakeBundleArgs& args, std::ostream& out) {
  WeightBundle bundle;
  if (args.kind == "identity")
    bundle = make_identity_bundle(args.hp);
  else if (args.kind == "random")
    bundle = make_random_bundle(args.hp, args.seed);
  else if (args.kind == "zero")
    bundle = WeightBundle(args.hp);
  else
    throw CLI::ValidationError("--kind", "expected identity, random or zero");
  save_weight_bundle(bundle, args.output);
  const auto counts = bundle.parameter_counts();
  emit({{"output", args.output},
        {"parameters", counts.total},
        {"parameters_weights_only", counts.weights_only},
        {"backbone", counts.backbone},
        {"generators", counts.generators}},
       "", out);
  return kOk;
}

int cmd_dump_manifest(const std::string& bundle_path, std::ostream& out) {
  const WeightBundle bundle = load_weight_bundle(bundle_path);
  json manifest = json::parse(manifest_json(bundle));
  const auto counts = bundle.parameter_counts();
  manifest["parameter_count"] = {{"all_parameters", counts.total}, {"weights_only", counts.weights_only}};
  out << manifest.dump(2) << '\n';
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"adalut: image-adaptive 1D/3D LUT colour enhancement engine"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for pixel kernels")->check(CLI::PositiveNumber);

  const std::map<std::string, Interpolator> interp_map{{"trilinear", Interpolator::trilinear},
                                                       {"tetrahedral", Interpolator::tetrahedral}};

  EnhanceArgs enhance_args;
  auto* enhance = app.add_subcommand("enhance", "Predict LUTs for an image and apply them");
  enhance->add_option("input", enhance_args.input, "Input PNG (8 or 16 bit)")->required();
  enhance->add_option("-w,--weights", enhance_args.weights, ".sepw weight bundle")->required();
  enhance->add_option("-o,--output", enhance_args.output, "Output 8-bit PNG")->required();
  enhance->add_flag("--fixed-point", enhance_args.fixed_point, "Apply LUTs with 8-bit fixed-point arithmetic");
  enhance->add_option("--interp", enhance_args.interp, "trilinear | tetrahedral")
      ->transform(CLI::CheckedTransformer(interp_map, CLI::ignore_case));
  enhance->add_option("--dump-luts", enhance_args.dump_luts, "Write <prefix>_1d.txt and <prefix>_3d.cube");
  enhance->add_option("--dump-intermediate", enhance_args.dump_intermediate, "Write the 1D-transformed image");

  ApplyLutArgs apply_args;
  auto* apply = app.add_subcommand("apply-lut", "Apply LUT files (1D then 3D) to an image");
  apply->add_option("input", apply_args.input, "Input PNG")->required();
  apply->add_option("--lut1d", apply_args.lut1d, "SEPLUT1D text file");
  apply->add_option("--lut3d", apply_args.lut3d, ".cube file");
  apply->add_option("-o,--output", apply_args.output, "Output 8-bit PNG")->required();
  apply->add_option("--interp", apply_args.interp, "trilinear | tetrahedral")
      ->transform(CLI::CheckedTransformer(interp_map, CLI::ignore_case));

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Cell utilization, histogram statistics, chi-square");
  analyze_cmd->add_option("input", analyze_args.input, "Input PNG")->required();
  analyze_cmd->add_option("--reference", analyze_args.reference, "Reference PNG for comparison statistics");
  analyze_cmd->add_option("--lut-size", analyze_args.lut3d_size, "3D LUT size S_t")->check(CLI::Range(2, 256));
  analyze_cmd->add_option("--out", analyze_args.out, "Write the JSON report here instead of stdout");

  MetricsArgs metrics_args;
  auto* metrics = app.add_subcommand("metrics", "PSNR, SSIM and delta E_ab between two images");
  metrics->add_option("pred", metrics_args.pred, "Predicted PNG")->required();
  metrics->add_option("gt", metrics_args.gt, "Ground-truth PNG")->required();
  metrics->add_option("--out", metrics_args.out, "Write the JSON report here instead of stdout");

  BenchConfig bench_cfg;
  std::string bench_mode = "float", bench_stage = "full", bench_out;
  auto* bench = app.add_subcommand("bench", "Time the pipeline on seeded random images");
  bench->add_option("--resolution", bench_cfg.resolution, "480p | 720p | 4k | 8k")
      ->check(CLI::IsMember({"480p", "720p", "4k", "8k"}));
  bench->add_option("--iterations", bench_cfg.iterations, "Timed iterations")->check(CLI::PositiveNumber);
  bench->add_option("--warmup", bench_cfg.warmup, "Untimed warm-up iterations")->check(CLI::NonNegativeNumber);
  bench->add_option("--mode", bench_mode, "float | fixed")->check(CLI::IsMember({"float", "fixed"}));
  bench->add_option("--stage", bench_stage, "full | luts_only")->check(CLI::IsMember({"full", "luts_only"}));
  bench->add_option("-w,--weights", bench_cfg.weights, "Bundle to time (default: seeded random m=6, S=9, K=3)");
  bench->add_option("--seed", bench_cfg.seed, "Seed for the image and random weights");
  bench->add_option("--out", bench_out, "Write the JSON report here instead of stdout");

  QuantizeArgs quant_args;
  auto* quantize = app.add_subcommand("quantize", "8-bit post-training quantization of the LUT generators");
  quantize->add_option("input", quant_args.input, "Input .sepw")->required();
  quantize->add_option("output", quant_args.output, "Output .sepw")->required();

  MakeBundleArgs make_args;
  auto* make = app.add_subcommand("make-bundle", "Write an identity, zero or random weight bundle");
  make->add_option("--kind", make_args.kind, "identity | zero | random")
      ->check(CLI::IsMember({"identity", "zero", "random"}));
  make->add_option("--m", make_args.hp.m, "Channel multiplier")->check(CLI::PositiveNumber);
  make->add_option("--s-o", make_args.hp.lut1d_size, "1D LUT size")->check(CLI::Range(2, 4096));
  make->add_option("--s-t", make_args.hp.lut3d_size, "3D LUT size")->check(CLI::Range(2, 64));
  make->add_option("--k", make_args.hp.rank, "Rank of the 3D generator")->check(CLI::PositiveNumber);
  make->add_option("--leaky-slope", make_args.hp.leaky_slope, "LeakyReLU negative slope");
  make->add_option("--seed", make_args.seed, "Seed for --kind random");
  make->add_option("-o,--output", make_args.output, "Output .sepw")->required();

  std::string manifest_path;
  auto* dump = app.add_subcommand("dump-manifest", "Print the manifest of a .sepw bundle");
  dump->add_option("bundle", manifest_path, "Input .sepw")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    enhance_args.threads = threads;
    apply_args.threads = threads;
    bench_cfg.threads = threads;
    bench_cfg.fixed = bench_mode == "fixed";
    bench_cfg.luts_only = bench_stage == "luts_only";
    if (*enhance) return cmd_enhance(enhance_args, out);
    if (*apply) return cmd_apply_lut(apply_args, out);
    if (*analyze_cmd) return cmd_analyze(analyze_args, out);
    if (*metrics) return cmd_metrics(metrics_args, out);
    if (*bench) return cmd_bench(bench_cfg, bench_out, out);
    if (*quantize) return cmd_quantize(quant_args, out);
    if (*make) return cmd_make_bundle(make_args, out);
    if (*dump) return cmd_dump_manifest(manifest_path, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "model error: " << e.what() << '\n';
    return kModelError;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"adalut"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace adalut::cli
