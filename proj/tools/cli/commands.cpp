#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "cli.hpp"
#include "specbisect/analysis/certificates.hpp"
#include "specbisect/analysis/generators.hpp"
#include "specbisect/analysis/lower_bound.hpp"
#include "specbisect/analysis/raster.hpp"
#include "specbisect/deflate/deflate.hpp"
#include "specbisect/eigh/eigh.hpp"
#include "specbisect/errors.hpp"
#include "specbisect/fparith/field.hpp"
#include "specbisect/primitives/matrix_io.hpp"
#include "specbisect/sign/sign.hpp"

namespace specbisect::cli {

using nlohmann::json;

json to_json(const RunConfig& rc) {
  return json{{"subcommand", rc.subcommand},
              {"seed", rc.seed},
              {"mantissa_bits", rc.mantissa_bits},
              {"flags", rc.flags}};
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  return os;
}

void finish(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write to " + path + " failed");
}

void write_json(const std::string& path, const json& j) {
  auto os = open_out(path);
  os << j.dump(2) << '\n';
  finish(os, path);
}

json node_json(const NodeRecord& r) {
  json j{{"index", r.index},   {"depth", r.depth},     {"n", r.n},
         {"r", r.r},           {"eps", r.eps},         {"ell", r.ell},
         {"kind", to_string(r.kind)},
         {"delta", r.delta},   {"eta", r.eta},         {"c", r.c},
         {"w", r.w},           {"k_plus", r.k_plus},   {"k_minus", r.k_minus},
         {"sign_iterations", r.sign_iterations}};
  if (!std::isnan(r.a_norm)) j["a_norm"] = r.a_norm;
  return j;
}

json stats_json(const RecursionStats& s) {
  json nodes = json::array();
  for (const auto& r : s.nodes) nodes.push_back(node_json(r));
  return json{{"node_count", s.node_count},
              {"max_depth", s.max_depth},
              {"deflate_count", s.deflate_count},
              {"nodes", nodes}};
}

template <class F>
SoftMatrix diagonal_out(const F& f, const std::vector<typename F::real>& d) {
  SoftMatrix m(d.size(), 1);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, 0) = {f.to_soft(d[i]), fp::SoftFloat{}};
  return m;
}

}  // namespace

void run_eigh(const RunConfig& rc, const EighArgs& a, std::ostream& out) {
  SoftMatrix in = read_matrix_file(a.input);
  fp::PrecisionConfig cfg(rc.mantissa_bits);
  fp::with_field(cfg, nullptr, [&](const auto& f) {
    auto m = from_soft(f, in);
    const int gate = eigh_precision(a.eps, a.theta, m.rows);
    if (rc.mantissa_bits < gate) {
      if (a.enforce_gate)
        throw PreconditionError("eigh: " + std::to_string(rc.mantissa_bits) +
                                " mantissa bits is below the precision gate of " +
                                std::to_string(gate));
      std::cerr << "warning: " << rc.mantissa_bits << " mantissa bits is below the precision gate of "
                << gate << "; the guarantee does not apply\n";
    }
    EighOptions opt;
    opt.parallel = a.parallel;
    RngState rng{rc.seed, 0};
    json j{{"config", to_json(rc)}, {"precision_gate_bits", gate}};
    SoftMatrix u, d;
    if (a.boost) {
      auto run = eigh_boosted(f, m, a.eps, a.theta, rng, opt);
      u = to_soft(f, run.result.u);
      d = diagonal_out(f, run.result.d);
      j["stats"] = stats_json(run.stats);
      j["attempts"] = run.attempts;
      j["residual_estimates"] = run.residual_estimates;
      j["outside_theorem_regime"] = run.result.outside_theorem_regime;
      j["residual_bound_target"] = run.result.residual_bound_target;
      out << "eigh: n=" << m.rows << " attempts=" << run.attempts
          << " nodes=" << run.stats.node_count << " depth=" << run.stats.max_depth << '\n';
    } else {
      auto run = eigh(f, m, a.eps, a.theta, rng, opt);
      u = to_soft(f, run.result.u);
      d = diagonal_out(f, run.result.d);
      j["stats"] = stats_json(run.stats);
      j["outside_theorem_regime"] = run.result.outside_theorem_regime;
      j["residual_bound_target"] = run.result.residual_bound_target;
      out << "eigh: n=" << m.rows << " nodes=" << run.stats.node_count
          << " depth=" << run.stats.max_depth << '\n';
    }
    write_matrix_file(a.out_u, u);
    write_matrix_file(a.out_d, d);
    if (!a.stats.empty()) write_json(a.stats, j);
  });
}

void run_sign(const RunConfig& rc, const SignArgs& a, std::ostream& out) {
  SoftMatrix in = read_matrix_file(a.input);
  if (!in.square() || in.rows == 0) throw DimensionError("sign: nonempty square input required");
  fp::PrecisionConfig cfg(rc.mantissa_bits);
  fp::with_field(cfg, nullptr, [&](const auto& f) {
    auto m = from_soft(f, in);
    SignParams p;
    p.epsilon = a.eps;
    p.b = a.b ? *a.b : f.to_double(estimate_b(f, m));
    if (a.a_inv_norm) {
      p.a_inv_norm = *a.a_inv_norm;
    } else {
      auto e = analysis::fast_eigh(to_complex_double(f, m), m.rows);
      double lo = std::numeric_limits<double>::infinity();
      for (double x : e.eigenvalues) lo = std::min(lo, std::fabs(x));
      if (!(lo > 0)) throw DomainError("sign: input is singular");
      p.a_inv_norm = 1 / lo;
    }
    auto res = sign_matrix(f, m, p);
    const auto& tr = res.trace;
    auto os = open_out(a.trace);
    os << "k,norm_Ak,stop_metric\n" << std::setprecision(17);
    for (std::size_t k = 0; k < tr.iterates_norm.size(); ++k) {
      os << k << ',' << tr.iterates_norm[k] << ',';
      if (k > 0) os << tr.stop_metric[k - 1];
      os << '\n';
    }
    finish(os, a.trace);
    if (!a.output.empty()) write_matrix_file(a.output, to_soft(f, res.s));
    out << "sign: n=" << m.rows << " iterations=" << tr.iterations
        << " threshold=" << tr.threshold << " N_SIGN=" << tr.n_sign << '\n';
  });
}

void run_deflate(const RunConfig& rc, const DeflateArgs& a, std::ostream& out) {
  SoftMatrix in = read_matrix_file(a.input);
  fp::PrecisionConfig cfg(rc.mantissa_bits);
  fp::with_field(cfg, nullptr, [&](const auto& f) {
    auto q = deflate(f, from_soft(f, in), a.rank, RngState{rc.seed, 0});
    write_matrix_file(a.output, to_soft(f, q));
    out << "deflate: " << shape_string(q.rows, q.cols) << '\n';
  });
}

void run_raster(const RunConfig&, const RasterArgs& a, std::ostream& out) {
  using namespace analysis;
  auto r = convergence_raster(parse_scheme(a.scheme), a.xmin, a.xmax, a.ymin, a.ymax, a.grid,
                              a.tol, a.max_iter);
  auto os = open_out(a.out);
  const bool pgm = a.out.size() >= 4 && a.out.compare(a.out.size() - 4, 4, ".pgm") == 0;
  if (pgm)
    write_raster_pgm(os, r);
  else
    write_raster_csv(os, r);
  finish(os, a.out);
  std::size_t converged = 0;
  for (int c : r.counts) converged += c <= a.max_iter;
  out << "raster: " << to_string(r.scheme) << ' ' << a.grid << 'x' << a.grid
      << " converged=" << converged << '/' << r.counts.size() << '\n';
}

void run_lower_bound(const RunConfig& rc, const LowerBoundArgs& a, std::ostream& out) {
  using namespace analysis;
  const std::size_t n = a.n;
  auto h = hadamard(n);
  fp::PrecisionConfig cfg(rc.mantissa_bits);
  LowerBoundReport rep = fp::with_field(cfg, nullptr, [&](const auto& f) {
    auto m = from_complex_double(f, n, n, h, true);
    auto run = eigh(f, m, a.eps, 0.5, RngState{rc.seed, 0});
    std::vector<double> d;
    for (const auto& x : run.result.d) d.push_back(f.to_double(x));
    return lower_bound_demo(n, f.unit_roundoff(), to_complex_double(f, run.result.u), d, a.eps);
  });
  out << std::setprecision(6) << "lower-bound: n=" << n << " u=2^-" << rep.mantissa_bits
      << " sign=" << (rep.sign > 0 ? '+' : '-') << " fl_identity=" << rep.fl_identity << '\n'
      << "  ||A - UDU*||  = " << rep.residual_a << '\n'
      << "  ||A' - UDU*|| = " << rep.residual_perturbed << "  (>= un/4 = " << rep.lower_bound
      << ")\n"
      << "  target eps||A|| = " << rep.target << "; bits required " << rep.bits_required
      << (rep.precision_sufficient ? " (satisfied)" : " (not satisfied)") << '\n';
  if (!a.json.empty())
    write_json(a.json, json{{"config", to_json(rc)},
                            {"n", rep.n},
                            {"u", rep.u},
                            {"mantissa_bits", rep.mantissa_bits},
                            {"sign", rep.sign},
                            {"fl_identity", rep.fl_identity},
                            {"residual_a", rep.residual_a},
                            {"residual_perturbed", rep.residual_perturbed},
                            {"lower_bound", rep.lower_bound},
                            {"eps", rep.eps},
                            {"target", rep.target},
                            {"bits_required", rep.bits_required},
                            {"necessary_bits", necessary_bits(a.eps, n)},
                            {"precision_sufficient", rep.precision_sufficient}});
}

void run_precision_report(const RunConfig& rc, const PrecisionArgs& a, std::ostream& out) {
  if (!(a.eps > 0 && a.eps < 1) || !(a.theta > 0 && a.theta < 1) || a.n < 1)
    throw DomainError("precision-report: need eps, theta in (0, 1) and n >= 1");
  std::vector<PrecisionRow> rows{precision_row(a.eps, a.theta, a.n)};
  if (a.sweep) {
    auto s = precision_sweep(a.theta);
    rows.insert(rows.end(), s.begin(), s.end());
  }
  write_precision_table(out, rows);
  out << "note: published figures at eps=1e-15, n=4000 are 92 bits sufficient and 59 necessary\n";
  if (!a.json.empty()) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    write_json(a.json, json{{"config", to_json(rc)}, {"rows", arr}});
  }
}

void run_bench(const RunConfig& rc, const BenchArgs& a, std::ostream& out) {
  auto rows = bench(a.sizes, a.eps, a.theta, a.seeds, rc.mantissa_bits, rc.seed);
  if (a.output.empty()) {
    write_bench_csv(out, rows);
  } else {
    auto os = open_out(a.output);
    write_bench_csv(os, rows);
    finish(os, a.output);
  }
  double s = flop_slope(rows);
  if (!std::isnan(s)) std::cerr << "log-log flop slope: " << s << '\n';
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return io;
  if (dynamic_cast<const NonConvergenceError*>(&e) || dynamic_cast<const InvariantError*>(&e))
    return nonconvergence;
  return precondition;
}

}  // namespace specbisect::cli
