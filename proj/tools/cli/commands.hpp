// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adalut/interp.hpp"
#include "adalut/weights.hpp"

namespace adalut::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIoError = 2,
  kModelError = 3,
};

struct EnhanceArgs {
  std::string input;
  std::string weights;
  std::string output;
  bool fixed_point = false;
  Interpolator interp = Interpolator::trilinear;
  std::string dump_luts;          ///< prefix; writes <prefix>_1d.txt and <prefix>_3d.cube
  std::string dump_intermediate;  ///< PNG path for the 1D-transformed image
  int threads = 1;
};

struct ApplyLutArgs {
  std::string input;
  std::string lut1d;
  std::string lut3d;
  std::string output;
  Interpolator interp = Interpolator::trilinear;
  int threads = 1;
};

struct AnalyzeArgs {
  std::string input;
  std::string reference;
  int lut3d_size = 33;
  std::string out;
};

struct MetricsArgs {
  std::string pred;
  std::string gt;
  std::string out;
};

struct BenchConfig {
  std::string resolution = "480p";
  int iterations = 100;
  int warmup = 3;
  bool fixed = false;
  bool luts_only = false;
  std::string weights;  ///< empty: seeded random bundle built from `hp`
  Hyperparams hp{6, 9, 9, 3};
  std::uint64_t seed = 2022;
  int threads = 1;
};

struct BenchReport {
  std::string resolution;
  int width = 0;
  int height = 0;
  std::string mode;
  std::string stage;
  int warmup = 0;
  std::vector<double> samples_ms;
  double mean_ms = 0, median_ms = 0, p95_ms = 0, min_ms = 0, max_ms = 0;
};

struct QuantizeArgs {
  std::string input;
  std::string output;
};

struct MakeBundleArgs {
  std::string kind = "identity";
  Hyperparams hp;
  std::uint64_t seed = 0;
  std::string output;
};

/// Named benchmark resolutions: 480p, 720p, 4k, 8k.
std::pair<int, int> resolution_size(const std::string& name);

BenchReport run_benchmark(const BenchConfig& config);
std::string to_json(const BenchReport& report);

int cmd_enhance(const EnhanceArgs& args, std::ostream& out);
int cmd_apply_lut(const ApplyLutArgs& args, std::ostream& out);
int cmd_analyze(const AnalyzeArgs& args, std::ostream& out);
int cmd_metrics(const MetricsArgs& args, std::ostream& out);
int cmd_bench(const BenchConfig& config, const std::string& out_path, std::ostream& out);
int cmd_quantize(const QuantizeArgs& args, std::ostream& out);
int cmd_make_bundle(const MakeBundleArgs& args, std::ostream& out);
int cmd_dump_manifest(const std::string& bundle_path, std::ostream& out);

/// Parses argv, dispatches, and maps exceptions to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adalut::cli
