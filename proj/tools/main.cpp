#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli/cli.hpp"
#include "specbisect/errors.hpp"

using namespace specbisect::cli;

namespace {

struct Common {
  std::uint64_t seed = 0;
  int mantissa = 53;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "RNG seed")->envname("SPECBISECT_SEED");
  sub->add_option("--mantissa", c.mantissa, "mantissa bits t, 8..128")
      ->check(CLI::Range(8, 128));
  static std::string config_path;
  sub->add_option("--config", config_path, "key=value file supplying any flag; command-line flags win");
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

// Expands `--config FILE` into `--key=value` arguments for keys not given on the command
// line. Blank lines, `#` comments and `[section]` headers are skipped; quotes are stripped.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  std::set<std::string> given;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      --i;
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
      args.erase(args.begin() + i);
      --i;
    } else if (a.rfind("--", 0) == 0) {
      given.insert(a.substr(2, a.find('=') - 2));
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw specbisect::IoError("cannot open config file " + path);
  std::vector<std::string> extra;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw specbisect::IoError("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (val.size() >= 2 && (val.front() == '"' || val.front() == '\'') && val.back() == val.front())
      val = val.substr(1, val.size() - 2);
    if (!given.count(key)) extra.push_back("--" + key + "=" + val);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

RunConfig make_config(const CLI::App* sub, const Common& c) {
  RunConfig rc;
  rc.subcommand = sub->get_name();
  rc.seed = c.seed;
  rc.mantissa_bits = c.mantissa;
  for (const CLI::Option* o : sub->get_options()) {
    if (o->count() == 0 || o->get_single_name() == "help" || o->get_single_name() == "config")
      continue;
    std::string v;
    for (const auto& r : o->results()) v += (v.empty() ? "" : ",") + r;
    rc.flags[o->get_single_name()] = v;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian diagonalization by spectral bisection at configurable precision"};
  app.require_subcommand(1);
  Common common;

  EighArgs ea;
  auto* eigh = app.add_subcommand("eigh", "eigendecomposition U, D of a Hermitian matrix");
  eigh->add_option("--input", ea.input)->required();
  eigh->add_option("--eps", ea.eps)->required();
  eigh->add_option("--theta", ea.theta)->required();
  eigh->add_flag("--boost", ea.boost, "retry until the residual check passes");
  eigh->add_flag("--enforce-gate", ea.enforce_gate, "fail when t is below the precision gate");
  eigh->add_flag("--parallel", ea.parallel, "recurse on both halves concurrently");
  eigh->add_option("--out-u", ea.out_u)->required();
  eigh->add_option("--out-d", ea.out_d)->required();
  eigh->add_option("--stats", ea.stats);

  SignArgs sa;
  auto* sign = app.add_subcommand("sign", "Newton-Schulz matrix sign");
  sign->add_option("--input", sa.input)->required();
  sign->add_option("--eps", sa.eps)->required();
  sign->add_option("--b", sa.b, "bound on ||A|| (default ||A||_F)");
  sign->add_option("--a-inv-norm", sa.a_inv_norm, "bound on ||A^-1|| (default computed)");
  sign->add_option("--trace", sa.trace)->required();
  sign->add_option("--output", sa.output);

  DeflateArgs da;
  auto* defl = app.add_subcommand("deflate", "orthonormal basis for the range of a projector");
  defl->add_option("--input", da.input)->required();
  defl->add_option("--rank", da.rank)->required();
  defl->add_option("--output", da.output)->required();

  RasterArgs ra;
  auto* raster = app.add_subcommand("raster", "scalar convergence raster");
  raster->add_option("--scheme", ra.scheme)->check(CLI::IsMember({"newton", "ns", "newton-schulz"}));
  raster->add_option("--xmin", ra.xmin);
  raster->add_option("--xmax", ra.xmax);
  raster->add_option("--ymin", ra.ymin);
  raster->add_option("--ymax", ra.ymax);
  raster->add_option("--grid", ra.grid);
  raster->add_option("--tol", ra.tol);
  raster->add_option("--max-iter", ra.max_iter);
  raster->add_option("--out", ra.out, "output path; .pgm writes an image, anything else CSV")
      ->required();

  LowerBoundArgs la;
  auto* lb = app.add_subcommand("lower-bound", "precision lower bound on a Hadamard matrix");
  lb->add_option("--n", la.n);
  lb->add_option("--eps", la.eps);
  lb->add_option("--json", la.json);

  PrecisionArgs pa;
  auto* pr = app.add_subcommand("precision-report", "sufficient and necessary mantissa bits");
  pr->add_option("--eps", pa.eps);
  pr->add_option("--theta", pa.theta);
  pr->add_option("--n", pa.n);
  pr->add_flag("--sweep", pa.sweep, "append the n x eps sweep table");
  pr->add_option("--json", pa.json);

  BenchArgs ba;
  auto* bn = app.add_subcommand("bench", "flop counts and wall time of eigh on GUE inputs");
  bn->add_option("--sizes", ba.sizes)->delimiter(',');
  bn->add_option("--eps", ba.eps);
  bn->add_option("--theta", ba.theta);
  bn->add_option("--seeds", ba.seeds)->check(CLI::PositiveNumber);
  bn->add_option("--output", ba.output);

  for (auto* s : {eigh, sign, defl, raster, lb, pr, bn}) add_common(s, common);

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(std::move(args));
  } catch (const specbisect::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : precondition;
  }

  CLI::App* sub = app.get_subcommands().front();
  RunConfig rc = make_config(sub, common);
  try {
    if (sub == eigh) run_eigh(rc, ea, std::cout);
    else if (sub == sign) run_sign(rc, sa, std::cout);
    else if (sub == defl) run_deflate(rc, da, std::cout);
    else if (sub == raster) run_raster(rc, ra, std::cout);
    else if (sub == lb) run_lower_bound(rc, la, std::cout);
    else if (sub == pr) run_precision_report(rc, pa, std::cout);
    else run_bench(rc, ba, std::cout);
  } catch (const specbisect::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return ok;
}
