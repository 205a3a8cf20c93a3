#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "specbisect/deflate/deflate.hpp"
#include "specbisect/errors.hpp"
#include "specbisect/primitives/error_model.hpp"
#include "specbisect/primitives/mm.hpp"
#include "specbisect/primitives/norms.hpp"
#include "specbisect/primitives/sampling.hpp"
#include "specbisect/sign/sign.hpp"

namespace specbisect {

template <class R>
struct RecursionParams {
  R r0{};    // initial size, >= ||A||
  R r{};     // window size, >= ||A||
  R eps{};   // target accuracy
  int ell = 20;
  double rho = 0;  // failure parameter
  int depth = 0;
};

struct NodeRecord {
  enum class Kind { single, collapsed, pass_plus, pass_minus, split };

  std::uint64_t index = 0;  // preorder slot, also selects the node's RNG block
  int depth = 0;
  std::size_t n = 0;
  double r = 0, eps = 0;
  int ell = 0;
  Kind kind = Kind::single;
  double delta = 0, eta = 0, c = 0;
  double w = 0;  // theta R / (2 n_x n d), analysis only
  int k_plus = 0, k_minus = 0;
  int sign_iterations = 0;
  double a_norm = std::numeric_limits<double>::quiet_NaN();  // ||A_x||, when recorded
};

const char* to_string(NodeRecord::Kind k);

struct RecursionStats {
  std::size_t node_count = 0;
  int max_depth = 0;
  std::size_t deflate_count = 0;
  std::vector<NodeRecord> nodes;  // preorder
};

template <class R>
struct EighResult {
  Matrix<R> u;
  std::vector<R> d;
  double residual_bound_target = 0;  // eps (R0 + R)
  double sv_window = 0;              // eps / 3
  bool outside_theorem_regime = false;
  int precision_gate_bits = 0;       // eigh_precision at the root parameters (0 if not computed)
};

template <class R>
struct EighRun {
  EighResult<R> result;
  RecursionStats stats;
};

struct EighOptions {
  bool record_norms = false;  // spectral norm of every node input, in double
  bool parallel = false;      // recurse on the two sides concurrently (no flop counter only)
  std::size_t parallel_min = 24;
  std::function<void(const NodeRecord&)> observer;
};

// Sufficient bits:
// ceil(lg(1/eps) + lg max(n^1.5 mu_QR, n^2 c_N, n^4.5 mu_MM) + 2 lg lg(1/eps)
//      + 1.5 lg(1/theta) + lg lg(n lg(1/eps) / theta) + 23).
int eigh_precision(double eps, double theta, std::size_t n,
                   const ErrorModel& em = ErrorModel::frozen());

// ceil(lg(1/eps)) + 5
int root_ell(double eps);

// Step-10 sign tolerance: (3/4) (rho^(1/2) eta / n) (1/3) / (12 sqrt2 + 6 sqrt(log(4/rho)/n)).
double node_delta(double rho, double eta, std::size_t n);

// Theorem regime: eps < 2^-15 and 16 n e^(-7.4 n) < theta < 1.
bool in_theorem_regime(double eps, double theta, std::size_t n);

namespace detail {

template <class F>
class EighSolver {
 public:
  using R = typename F::real;
  using M = Matrix<R>;

  EighSolver(const F& f, std::size_t n_root, int ell_root, double rho, RngState rng,
             const EighOptions& opt, const ErrorModel& em)
      : f_(f), n_root_(n_root), ell_root_(ell_root), d_max_(ell_root + 2), rho_(rho), rng_(rng),
        opt_(opt), em_(em) {}

  // Words of the stream reserved per node: the shift plus two deflations of size <= n_root.
  std::uint64_t block() const { return kUnifWords + 2 * deflate_words(n_root_); }
  // Preorder slots reserved for a subtree of size n rooted at `depth`: at most n nodes per
  // level and at most d_max - depth + 1 levels.
  std::uint64_t capacity(std::size_t n, int depth) const {
    return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(d_max_ - depth + 1);
  }

  std::pair<M, std::vector<R>> run(const M& a, const R& r0, const R& r, const R& eps, int ell,
                                   int depth, std::uint64_t index) {
    if (depth > d_max_)
      throw InvariantError("eigh: recursion depth " + std::to_string(depth) + " exceeds " +
                           std::to_string(d_max_));
    const std::size_t n = a.rows;
    NodeRecord rec;
    rec.index = index;
    rec.depth = depth;
    rec.n = n;
    rec.r = f_.to_double(r);
    rec.eps = f_.to_double(eps);
    rec.ell = ell;
    if (opt_.record_norms) rec.a_norm = hermitian_spectral_norm(to_complex_double(f_, a), n);

    if (n == 1) {
      rec.kind = NodeRecord::Kind::single;
      push(rec);
      M u = identity(f_, 1);
      return {u, std::vector<R>{a(0, 0).re}};
    }
    if (!f_.less(f_.mul(eps, r0), r)) {
      rec.kind = NodeRecord::Kind::collapsed;
      push(rec);
      return {identity(f_, n), std::vector<R>(n, f_.zero())};
    }

    const R eps_c = f_.mul_ratio(eps, ell - 1, ell);
    const R r_c = f_.mul_ratio(r, ell + 4, 2 * static_cast<std::int64_t>(ell));
    rec.eta = f_.to_double(eps_c) / (5.0 * ell);
    rec.delta = node_delta(rho_, rec.eta, n);
    rec.w = 2 * rho_ * rec.r / (static_cast<double>(n) * ell_root_);

    RngState node_rng = rng_.advanced(index * block());
    RngState shift_rng = node_rng;
    const R c = unif(f_, f_.div(r, f_.from_int(ell)), shift_rng);
    rec.c = f_.to_double(c);

    M shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i).re = f_.sub(a(i, i).re, c);
    shifted.hermitian = true;

    SignParams sp{rec.delta, 2 * rec.r, 2 / rec.w};
    auto sres = sign_matrix(f_, shifted, sp, em_, false);
    rec.sign_iterations = sres.trace.iterations;
    const M& b = sres.s;

    M p_plus(n, n), p_minus(n, n);
    const R one = f_.from_int(1);
    R tr_plus = f_.zero(), tr_minus = f_.zero();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) {
          p_plus(i, i).re = f_.half(f_.add(one, b(i, i).re));
          p_minus(i, i).re = f_.half(f_.sub(one, b(i, i).re));
          tr_plus = f_.add(tr_plus, p_plus(i, i).re);
          tr_minus = f_.add(tr_minus, p_minus(i, i).re);
        } else {
          p_plus(i, j) = fp::chalf(f_, b(i, j));
          p_minus(i, j) = fp::chalf(f_, fp::cneg(f_, b(i, j)));
        }
      }
    p_plus.hermitian = p_minus.hermitian = true;
    const std::int64_t k_plus = F::round_half_away(tr_plus);
    const std::int64_t k_minus = F::round_half_away(tr_minus);
    rec.k_plus = static_cast<int>(k_plus);
    rec.k_minus = static_cast<int>(k_minus);
    if (k_plus < 0 || k_minus < 0 || k_plus + k_minus != static_cast<std::int64_t>(n))
      throw InvariantError("eigh: k+ = " + std::to_string(k_plus) + ", k- = " +
                           std::to_string(k_minus) + " at a node of size " + std::to_string(n));

    const R half_r = f_.half(r);
    if (k_plus == static_cast<std::int64_t>(n) || k_minus == static_cast<std::int64_t>(n)) {
      const bool plus = k_plus == static_cast<std::int64_t>(n);
      rec.kind = plus ? NodeRecord::Kind::pass_plus : NodeRecord::Kind::pass_minus;
      push(rec);
      M a_next = a;
      for (std::size_t i = 0; i < n; ++i)
        a_next(i, i).re = plus ? f_.sub(a(i, i).re, half_r) : f_.add(a(i, i).re, half_r);
      auto [u, d] = run(a_next, r0, r_c, eps_c, ell + 1, depth + 1, index + 1);
      for (auto& x : d) x = plus ? f_.add(x, half_r) : f_.sub(x, half_r);
      return {std::move(u), std::move(d)};
    }

    rec.kind = NodeRecord::Kind::split;
    push(rec);
    const std::size_t kp = static_cast<std::size_t>(k_plus), km = static_cast<std::size_t>(k_minus);
    RngState deflate_plus = node_rng.advanced(kUnifWords);
    RngState deflate_minus = node_rng.advanced(kUnifWords + deflate_words(n_root_));
    const std::uint64_t index_plus = index + 1;
    const std::uint64_t index_minus = index + 1 + capacity(kp, depth + 1);

    auto side = [&, this](const M& p, std::size_t k, RngState g, bool plus, std::uint64_t idx) {
      M q = deflate(f_, p, k, g, nullptr, em_);
      M c_side = mm(f_, mm_adjoint_left(f_, q, a), q, MmOutput::hermitian);
      for (std::size_t i = 0; i < k; ++i)
        c_side(i, i).re = plus ? f_.sub(c_side(i, i).re, half_r) : f_.add(c_side(i, i).re, half_r);
      auto [u, d] = run(c_side, r0, r_c, eps_c, ell + 1, depth + 1, idx);
      M w = mm(f_, q, u);
      for (auto& x : d) x = plus ? f_.add(x, half_r) : f_.sub(x, half_r);
      return std::pair<M, std::vector<R>>{std::move(w), std::move(d)};
    };

    std::pair<M, std::vector<R>> plus_side, minus_side;
    if (opt_.parallel && f_.counter() == nullptr && n >= opt_.parallel_min) {
      auto fut = std::async(std::launch::async,
                            [&] { return side(p_plus, kp, deflate_plus, true, index_plus); });
      try {
        minus_side = side(p_minus, km, deflate_minus, false, index_minus);
      } catch (...) {
        fut.wait();
        throw;
      }
      plus_side = fut.get();
    } else {
      plus_side = side(p_plus, kp, deflate_plus, true, index_plus);
      minus_side = side(p_minus, km, deflate_minus, false, index_minus);
    }

    M u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < kp; ++j) u(i, j) = plus_side.first(i, j);
      for (std::size_t j = 0; j < km; ++j) u(i, kp + j) = minus_side.first(i, j);
    }
    std::vector<R> d = std::move(plus_side.second);
    d.insert(d.end(), minus_side.second.begin(), minus_side.second.end());
    return {std::move(u), std::move(d)};
  }

  RecursionStats stats() {
    RecursionStats s;
    s.nodes = records_;
    std::sort(s.nodes.begin(), s.nodes.end(),
              [](const NodeRecord& x, const NodeRecord& y) { return x.index < y.index; });
    s.node_count = s.nodes.size();
    for (const auto& r : s.nodes) {
      s.max_depth = std::max(s.max_depth, r.depth);
      if (r.kind == NodeRecord::Kind::split) ++s.deflate_count;
    }
    return s;
  }

 private:
  void push(const NodeRecord& rec) {
    std::lock_guard<std::mutex> lock(mu_);
    records_.push_back(rec);
    if (opt_.observer) opt_.observer(rec);
  }

  const F& f_;
  std::size_t n_root_;
  int ell_root_;
  int d_max_;
  double rho_;
  RngState rng_;
  const EighOptions& opt_;
  const ErrorModel& em_;
  std::mutex mu_;
  std::vector<NodeRecord> records_;
};

template <class F>
void check_eigh_input(const Matrix<typename F::real>& a) {
  if (!a.square() || a.rows == 0) throw DimensionError("eigh: nonempty square input required");
  if (!is_exactly_hermitian(a)) throw PreconditionError("eigh: input must be exactly Hermitian");
}

// Words a node tree of root size n can consume, including the boosting residual check.
inline std::uint64_t eigh_stream_words(std::size_t n, int ell_root) {
  std::uint64_t block = kUnifWords + 2 * deflate_words(n);
  return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(ell_root + 3) * block;
}

}  // namespace detail

// The recursion with caller-supplied parameters; p.ell is also taken as the root depth
// budget (recursion deeper than p.ell + 2 is an invariant violation).
template <class F>
EighRun<typename F::real> eigh_internal(const F& f, const Matrix<typename F::real>& a,
                                        const RecursionParams<typename F::real>& p, RngState rng,
                                        const EighOptions& opt = {},
                                        const ErrorModel& em = ErrorModel::frozen()) {
  detail::check_eigh_input<F>(a);
  if (!(p.rho > 0 && p.rho < 1)) throw DomainError("eigh: rho must lie in (0, 1)");
  const double eps = f.to_double(p.eps);
  if (!(eps > 0 && eps < 1)) throw DomainError("eigh: eps must lie in (0, 1)");
  if (p.ell < 1) throw DomainError("eigh: ell must be positive");
  detail::EighSolver<F> solver(f, a.rows, p.ell, p.rho, rng, opt, em);
  auto [u, d] = solver.run(a, p.r0, p.r, p.eps, p.ell, p.depth, 0);
  EighRun<typename F::real> out;
  out.result.u = std::move(u);
  out.result.d = std::move(d);
  out.result.residual_bound_target = eps * (f.to_double(p.r0) + f.to_double(p.r));
  out.result.sv_window = eps / 3;
  out.stats = solver.stats();
  return out;
}

// Root call: R0 = R = ||A||_F, ell = ceil(lg(1/eps)) + 5, rho = theta/(4n).
template <class F>
EighRun<typename F::real> eigh(const F& f, const Matrix<typename F::real>& a, double eps,
                               double theta, RngState rng, const EighOptions& opt = {},
                               const ErrorModel& em = ErrorModel::frozen()) {
  detail::check_eigh_input<F>(a);
  if (!(eps > 0 && eps < 1)) throw DomainError("eigh: eps must lie in (0, 1)");
  if (!(theta > 0 && theta < 1)) throw DomainError("eigh: theta must lie in (0, 1)");
  const std::size_t n = a.rows;
  RecursionParams<typename F::real> p;
  p.r0 = p.r = estimate_b(f, a);
  p.eps = f.from_double(eps);
  p.ell = root_ell(eps);
  p.rho = theta / (4.0 * static_cast<double>(n));
  auto out = eigh_internal(f, a, p, rng, opt, em);
  out.result.outside_theorem_regime = !in_theorem_regime(eps, theta, n);
  out.result.precision_gate_bits = eigh_precision(eps, theta, n, em);
  return out;
}

// max over `samples` random unit vectors x of ||(U D U* - A) x||, using matrix-vector
// products only.
template <class F>
double residual_check(const F& f, const Matrix<typename F::real>& a,
                      const EighResult<typename F::real>& res, RngState rng, int samples = 32) {
  using R = typename F::real;
  using C = fp::Cplx<R>;
  const std::size_t n = a.rows;
  if (res.u.rows != n || res.u.cols != n || res.d.size() != n)
    throw DimensionError("residual_check: decomposition does not match the matrix");
  const Matrix<R> u_adj = adjoint(res.u);
  auto norm = [&](const std::vector<C>& v) {
    R s = f.zero();
    for (const auto& z : v) s = f.add(s, fp::cabs2(f, z));
    return f.sqrt(s);
  };
  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    std::vector<C> x(n);
    for (auto& z : x) z = normal(f, rng);
    R nx = norm(x);
    if (f.is_zero(nx)) continue;
    for (auto& z : x) z = {f.div(z.re, nx), f.div(z.im, nx)};
    auto y = matvec(f, u_adj, x);
    for (std::size_t i = 0; i < n; ++i) y[i] = {f.mul(res.d[i], y[i].re), f.mul(res.d[i], y[i].im)};
    y = matvec(f, res.u, y);
    auto ax = matvec(f, a, x);
    for (std::size_t i = 0; i < n; ++i) y[i] = fp::csub(f, y[i], ax[i]);
    worst = std::max(worst, f.to_double(norm(y)));
  }
  return worst;
}

template <class R>
struct BoostedRun {
  EighResult<R> result;
  RecursionStats stats;
  int attempts = 0;
  std::vector<double> residual_estimates;  // one per completed attempt
  std::vector<std::string> failures;       // one per failed attempt
};

// Repeats eigh with theta = 1/2 on disjoint stretches of the stream, up to
// ceil(lg(1/theta')) + 1 times, and returns the first result whose residual_check is at most
// 1.5 eps ||A||. `tamper` runs on every attempt's result before the check.
template <class F>
BoostedRun<typename F::real> eigh_boosted(
    const F& f, const Matrix<typename F::real>& a, double eps, double theta_prime, RngState rng,
    const EighOptions& opt = {}, const ErrorModel& em = ErrorModel::frozen(),
    const std::function<void(int, EighResult<typename F::real>&)>& tamper = {}) {
  detail::check_eigh_input<F>(a);
  if (!(theta_prime > 0 && theta_prime < 1))
    throw DomainError("eigh_boosted: theta' must lie in (0, 1)");
  const int max_attempts = static_cast<int>(std::ceil(std::log2(1 / theta_prime))) + 1;
  const int samples = 32;
  const std::uint64_t stride =
      detail::eigh_stream_words(a.rows, root_ell(eps)) + samples * kNormalWords * a.rows;
  const double a_norm = f.to_double(estimate_b(f, a));
  BoostedRun<typename F::real> out;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    out.attempts = attempt;
    RngState at = rng.advanced(static_cast<std::uint64_t>(attempt - 1) * stride);
    try {
      auto run = eigh(f, a, eps, 0.5, at, opt, em);
      if (tamper) tamper(attempt, run.result);
      double est = residual_check(f, a, run.result,
                                  at.advanced(detail::eigh_stream_words(a.rows, root_ell(eps))),
                                  samples);
      out.residual_estimates.push_back(est);
      if (est <= 1.5 * eps * a_norm) {
        out.result = std::move(run.result);
        out.stats = std::move(run.stats);
        return out;
      }
      out.failures.push_back("residual estimate " + std::to_string(est) + " above target");
    } catch (const NonConvergenceError& e) {
      out.failures.push_back(e.what());
    } catch (const InvariantError& e) {
      out.failures.push_back(e.what());
    }
  }
  throw NonConvergenceError("eigh_boosted: all " + std::to_string(max_attempts) +
                            " attempts failed");
}

}  // namespace specbisect
