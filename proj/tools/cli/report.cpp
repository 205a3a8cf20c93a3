#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "cli.hpp"
#include "specbisect/analysis/generators.hpp"
#include "specbisect/analysis/lower_bound.hpp"
#include "specbisect/eigh/eigh.hpp"
#include "specbisect/fparith/field.hpp"

namespace specbisect::cli {

PrecisionRow precision_row(double eps, double theta, std::size_t n, const ErrorModel& em) {
  return {eps, theta, n, eigh_precision(eps, theta, n, em), analysis::necessary_bits(eps, n)};
}

std::vector<PrecisionRow> precision_sweep(double theta) {
  std::vector<PrecisionRow> rows;
  for (std::size_t n = 16; n <= 4096; n *= 2)
    for (int e = 3; e <= 15; e += 3) rows.push_back(precision_row(std::pow(10.0, -e), theta, n));
  return rows;
}

void write_precision_table(std::ostream& os, const std::vector<PrecisionRow>& rows) {
  os << std::setw(8) << "eps" << std::setw(7) << "theta" << std::setw(7) << "n" << std::setw(12)
     << "sufficient" << std::setw(11) << "necessary" << std::setw(6) << "gap" << '\n';
  for (const auto& r : rows)
    os << std::setw(8) << std::setprecision(2) << r.eps << std::setw(7) << r.theta << std::setw(7)
       << r.n << std::setw(12) << r.sufficient << std::setw(11) << r.necessary << std::setw(6)
       << r.sufficient - r.necessary << '\n';
}

nlohmann::json to_json(const PrecisionRow& r) {
  return {{"eps", r.eps},
          {"theta", r.theta},
          {"n", r.n},
          {"sufficient_bits", r.sufficient},
          {"necessary_bits", r.necessary},
          {"gap", r.sufficient - r.necessary}};
}

std::vector<BenchRow> bench(const std::vector<std::size_t>& sizes, double eps, double theta,
                            int seeds, int mantissa_bits, std::uint64_t seed) {
  std::vector<BenchRow> rows;
  fp::PrecisionConfig cfg(mantissa_bits);
  for (std::size_t n : sizes)
    for (int s = 0; s < seeds; ++s) {
      RngState gen{seed + static_cast<std::uint64_t>(s), 1ull << 40};
      auto a = analysis::gue(n, gen);
      fp::FlopCounter fc;
      BenchRow row;
      row.n = n;
      row.seed = s;
      auto t0 = std::chrono::steady_clock::now();
      fp::with_field(cfg, &fc, [&](const auto& f) {
        auto m = from_complex_double(f, n, n, a, true);
        auto run = eigh(f, m, eps, theta, RngState{seed + static_cast<std::uint64_t>(s), 0});
        row.node_count = run.stats.node_count;
        row.max_depth = run.stats.max_depth;
      });
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.real_ops = fc.real_ops;
      row.complex_mul = fc.complex_mul;
      row.complex_add = fc.complex_add;
      rows.push_back(row);
    }
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "n,seed,real_ops,complex_mul,complex_add,wall_seconds,node_count,max_depth\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.seed << ',' << r.real_ops << ',' << r.complex_mul << ','
       << r.complex_add << ',' << r.seconds << ',' << r.node_count << ',' << r.max_depth << '\n';
}

double flop_slope(const std::vector<BenchRow>& rows) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    double sum = 0;
    while (j < rows.size() && rows[j].n == rows[i].n) sum += static_cast<double>(rows[j++].real_ops);
    pts.emplace_back(std::log(static_cast<double>(rows[i].n)), std::log(sum / (j - i)));
    i = j;
  }
  if (pts.size() < 2) return std::nan("");
  double mx = 0, my = 0;
  for (auto [x, y] : pts) mx += x, my += y;
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) sxy += (x - mx) * (y - my), sxx += (x - mx) * (x - mx);
  return sxy / sxx;
}

}  // namespace specbisect::cli
