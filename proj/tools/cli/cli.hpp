#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "specbisect/primitives/error_model.hpp"

namespace specbisect::cli {

enum ExitCode : int { ok = 0, precondition = 2, nonconvergence = 3, io = 4 };

// Everything needed to reproduce a run; serialized into every stats JSON.
struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = 0;
  int mantissa_bits = 53;
  std::map<std::string, std::string> flags;
};

nlohmann::json to_json(const RunConfig& rc);

struct EighArgs {
  std::string input, out_u, out_d, stats;
  double eps = 1e-6, theta = 0.25;
  bool boost = false;
  bool enforce_gate = false;
  bool parallel = false;
};
struct SignArgs {
  std::string input, trace, output;
  double eps = 1e-8;
  std::optional<double> b;
  std::optional<double> a_inv_norm;
};
struct DeflateArgs {
  std::string input, output;
  std::size_t rank = 1;
};
struct RasterArgs {
  std::string scheme = "ns", out;
  double xmin = -2.5, xmax = 2.5, ymin = -2.5, ymax = 2.5, tol = 1e-15;
  std::size_t grid = 400;
  int max_iter = 200;
};
struct LowerBoundArgs {
  std::size_t n = 16;
  double eps = 1e-2;
  std::string json;
};
struct PrecisionArgs {
  double eps = 1e-15, theta = 0.5;
  std::size_t n = 4000;
  bool sweep = false;
  std::string json;
};
struct BenchArgs {
  std::vector<std::size_t> sizes;
  double eps = 1e-6, theta = 0.25;
  int seeds = 1;
  std::string output;
};

// Each command writes its human-readable summary to `out` and throws specbisect errors on
// failure; exit_code_for maps them.
void run_eigh(const RunConfig& rc, const EighArgs& a, std::ostream& out);
void run_sign(const RunConfig& rc, const SignArgs& a, std::ostream& out);
void run_deflate(const RunConfig& rc, const DeflateArgs& a, std::ostream& out);
void run_raster(const RunConfig& rc, const RasterArgs& a, std::ostream& out);
void run_lower_bound(const RunConfig& rc, const LowerBoundArgs& a, std::ostream& out);
void run_precision_report(const RunConfig& rc, const PrecisionArgs& a, std::ostream& out);
void run_bench(const RunConfig& rc, const BenchArgs& a, std::ostream& out);

int exit_code_for(const std::exception& e);

struct PrecisionRow {
  double eps = 0, theta = 0;
  std::size_t n = 0;
  int sufficient = 0;  // eigh_precision under the frozen error model
  int necessary = 0;   // necessary_bits
};
PrecisionRow precision_row(double eps, double theta, std::size_t n,
                           const ErrorModel& em = ErrorModel::frozen());
std::vector<PrecisionRow> precision_sweep(double theta);
void write_precision_table(std::ostream& os, const std::vector<PrecisionRow>& rows);
nlohmann::json to_json(const PrecisionRow& r);

struct BenchRow {
  std::size_t n = 0;
  int seed = 0;
  std::uint64_t real_ops = 0, complex_mul = 0, complex_add = 0;
  double seconds = 0;
  std::size_t node_count = 0;
  int max_depth = 0;
};
std::vector<BenchRow> bench(const std::vector<std::size_t>& sizes, double eps, double theta,
                            int seeds, int mantissa_bits, std::uint64_t seed);
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);
// Least-squares slope of log(mean real_ops) against log n; NaN with fewer than two sizes.
double flop_slope(const std::vector<BenchRow>& rows);

}  // namespace specbisect::cli
