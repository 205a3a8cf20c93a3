#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "specbisect/errors.hpp"
#include "specbisect/fparith/field.hpp"
#include "specbisect/primitives/error_model.hpp"
#include "specbisect/primitives/matrix_io.hpp"
#include "specbisect/primitives/mm.hpp"
#include "specbisect/primitives/norms.hpp"
#include "specbisect/primitives/qr.hpp"
#include "specbisect/primitives/sampling.hpp"
#include "support/checks.hpp"

using namespace specbisect;
using namespace testsupport;

namespace {

template <class F>
Matrix<typename F::real> diag(const F& f, std::initializer_list<double> d) {
  Matrix<typename F::real> m(d.size(), d.size());
  std::size_t i = 0;
  for (double x : d) m(i, i).re = f.from_double(x), ++i;
  return m;
}

}  // namespace

TEST_CASE("mm: identity and exact diagonal products") {
  fp::PrecisionConfig cfg(24);
  fp::HwField f(cfg);
  RngState rng{7, 0};
  auto x = random_matrix(f, 5, 5, rng);
  CHECK(mm(f, identity(f, 5), x).data == x.data);
  CHECK(mm(f, x, identity(f, 5)).data == x.data);
  auto d = diag(f, {2, -3});
  auto sq = mm(f, d, d);
  CHECK(sq.data == diag(f, {4, 9}).data);
  CHECK_THROWS_AS(mm(f, Matrix<double>(2, 3), Matrix<double>(2, 3)), DimensionError);
}

TEST_CASE("mm: flop count is T_MM") {
  fp::PrecisionConfig cfg(30);
  for (std::size_t n : {1, 2, 3, 7, 16}) {
    fp::FlopCounter c;
    fp::HwField f(cfg, &c);
    RngState rng{n, 0};
    auto a = random_matrix(f, n, n, rng), b = random_matrix(f, n, n, rng);
    c.reset();
    mm(f, a, b);
    CHECK(c.real_ops == ErrorModel::t_mm(n));
    CHECK(c.complex_mul == n * n * n);
    CHECK(c.complex_add == n * n * (n - 1));
  }
}

TEST_CASE("mm: Gram products are exactly Hermitian") {
  for (int t : {24, 53, 90}) {
    fp::PrecisionConfig cfg(t);
    fp::with_field(cfg, nullptr, [&](auto f) {
      RngState rng{static_cast<std::uint64_t>(t), 0};
      auto x = random_matrix(f, 6, 6, rng);
      auto g = mm_adjoint_left(f, x, x, MmOutput::hermitian);
      CHECK(is_exactly_hermitian(g));
      CHECK(g.hermitian);
      // The upper triangle equals the general product's.
      auto full = mm_adjoint_left(f, x, x);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i + 1; j < 6; ++j) CHECK(g(i, j) == full(i, j));
      return 0;
    });
  }
}

TEST_CASE("mm: contract against a quad-precision product") {
  ErrorModel em;
  for (int t : {24, 53}) {
    fp::PrecisionConfig cfg(t);
    fp::HwField f(cfg);
    double u = cfg.unit_roundoff();
    for (std::size_t n : {2, 4, 8, 16, 32}) {
      const int trials = n <= 8 ? 1000 : (n == 16 ? 300 : 100);
      double worst = 0;
      RngState rng{1000u + n, static_cast<std::uint64_t>(t) << 32};
      for (int k = 0; k < trials; ++k) {
        auto a = random_matrix(f, n, n, rng), b = random_matrix(f, n, n, rng);
        auto c = mm(f, a, b);
        QMat qa = to_quad(f, a), qb = to_quad(f, b), qc = to_quad(f, c);
        QMat exact = qmul(qa, qb, n, n, n);
        for (std::size_t e = 0; e < exact.size(); ++e) exact[e] = qc[e] - exact[e];
        double err = spectral(to_eigen(exact, n, n));
        double scale = spectral(to_eigen(f, a)) * spectral(to_eigen(f, b)) * u;
        worst = std::max(worst, err / scale);
      }
      INFO("t=" << t << " n=" << n << " worst ratio " << worst);
      CHECK(worst <= em.mu_mm(static_cast<double>(n)));
      MESSAGE("measured mu_MM t=" << t << " n=" << n << ": " << worst);
    }
  }
}

TEST_CASE("qr: fixed examples") {
  fp::PrecisionConfig cfg(53);
  fp::HwField f(cfg);
  auto [q1, r1] = qr(f, identity(f, 3));
  CHECK(q1.data == identity(f, 3).data);
  CHECK(r1.data == identity(f, 3).data);
  auto d = diag(f, {4, 1});
  auto [q2, r2] = qr(f, d);
  CHECK(q2.data == identity(f, 2).data);
  CHECK(r2.data == d.data);
  auto neg = diag(f, {-4, 1});
  auto [q3, r3] = qr(f, neg);
  CHECK(q3(0, 0).re == -1.0);
  CHECK(r3(0, 0).re == 4.0);
  // Rank-deficient input is allowed.
  Matrix<double> z(3, 3);
  auto [q4, r4] = qr(f, z);
  CHECK(q4.data == identity(f, 3).data);
  CHECK(r4.data == z.data);
  CHECK_THROWS_AS(qr(f, Matrix<double>(2, 3)), DimensionError);
}

TEST_CASE("qr: contract on random inputs, diagonal of R real nonnegative") {
  ErrorModel em;
  for (int t : {24, 53}) {
    fp::PrecisionConfig cfg(t);
    fp::HwField f(cfg);
    double u = cfg.unit_roundoff();
    for (std::size_t n : {2, 4, 8, 16, 32}) {
      const int trials = n <= 8 ? 1000 : (n == 16 ? 200 : 60);
      double worst_orth = 0, worst_back = 0;
      RngState rng{2000u + n, static_cast<std::uint64_t>(t) << 32};
      for (int k = 0; k < trials; ++k) {
        auto a = random_matrix(f, n, n, rng);
        auto [q, r] = qr(f, a);
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(r(i, i).im == 0.0);
          CHECK(r(i, i).re >= 0.0);
          for (std::size_t j = 0; j < i; ++j) CHECK(r(i, j) == fp::Cplx<double>{});
        }
        QMat qq = to_quad(f, q), qr_ = to_quad(f, r), qa = to_quad(f, a);
        QMat gram = qmul(qq, qq, n, n, n, true);
        for (std::size_t i = 0; i < n; ++i) gram[i * n + i].re -= 1;
        QMat back = qmul(qq, qr_, n, n, n);
        for (std::size_t e = 0; e < back.size(); ++e) back[e] = back[e] - qa[e];
        worst_orth = std::max(worst_orth, spectral(to_eigen(gram, n, n)) / u);
        worst_back = std::max(worst_back, spectral(to_eigen(back, n, n)) /
                                              (u * spectral(to_eigen(f, a))));
      }
      double mu = em.mu_qr(static_cast<double>(n));
      INFO("t=" << t << " n=" << n);
      CHECK(worst_orth <= 4 * mu);
      CHECK(worst_back <= 2 * mu);
      MESSAGE("measured QR ratios t=" << t << " n=" << n << ": orth " << worst_orth << ", back "
                                      << worst_back);
    }
  }
}

TEST_CASE("qr: thin Q equals the leading columns of the full factor") {
  for (int t : {40, 100}) {
    fp::PrecisionConfig cfg(t);
    fp::with_field(cfg, nullptr, [&](auto f) {
      RngState rng{static_cast<std::uint64_t>(t), 5};
      auto a = random_matrix(f, 7, 7, rng);
      auto full = qr(f, a);
      for (std::size_t r : {1, 3, 6, 7}) {
        // Only the first r columns of A enter.
        auto thin = qr(f, columns(a, 0, r), r);
        CHECK(thin.q.data == columns(full.q, 0, r).data);
      }
      return 0;
    });
  }
}

TEST_CASE("qr: flop count is T_QR on generic input") {
  fp::PrecisionConfig cfg(53);
  for (std::size_t n : {1, 2, 5, 9, 20}) {
    fp::FlopCounter c;
    fp::HwField f(cfg, &c);
    RngState rng{n, 1};
    auto a = random_matrix(f, n, n, rng);
    c.reset();
    qr(f, a);
    CHECK(c.real_ops == ErrorModel::t_qr(n));
  }
  // Convexity of both counts.
  for (std::uint64_t n = 2; n < 200; ++n) {
    CHECK(ErrorModel::t_mm(n + 1) + ErrorModel::t_mm(n - 1) >= 2 * ErrorModel::t_mm(n));
    CHECK(ErrorModel::t_qr(n + 1) + ErrorModel::t_qr(n - 1) >= 2 * ErrorModel::t_qr(n));
  }
}

TEST_CASE("error model defaults") {
  ErrorModel em = ErrorModel::frozen();
  CHECK(em.mu_mm(1) == 10);
  CHECK(em.mu_mm(5) == 10);
  CHECK(em.mu_mm(64) == 128);
  CHECK(em.mu_qr(4) == doctest::Approx(240));
  CHECK(em.c_n() == 2);
  for (double n = 1; n < 1e5; n *= 1.7) CHECK(em.mu_mm(n) >= 10);
  CHECK(ErrorModel::t_mm(4) == 8 * 64 - 2 * 16);
}

TEST_CASE("unif: range, mean, endpoint and determinism") {
  for (int t : {16, 53, 113}) {
    fp::PrecisionConfig cfg(t);
    fp::with_field(cfg, nullptr, [&](auto f) {
      auto s = f.from_int(1);
      CHECK(f.to_double(f.from_soft(unif_sample(f.to_soft(s), 0, 0, cfg))) == -1.0);
      RngState rng{99, 0};
      const int count = t == 113 ? 20000 : 100000;
      double sum = 0;
      bool in_range = true;
      for (int k = 0; k < count; ++k) {
        double v = f.to_double(unif(f, s, rng));
        in_range = in_range && v >= -1.0 && v <= 1.0;
        sum += v;
      }
      CHECK(in_range);
      CHECK(std::fabs(sum / count) <= 3.0 / std::sqrt(3.0 * count));
      CHECK(rng.counter == static_cast<std::uint64_t>(count) * kUnifWords);
      RngState a{5, 17}, b{5, 17};
      CHECK(unif(f, s, a) == unif(f, s, b));
      return 0;
    });
  }
  fp::PrecisionConfig cfg(20);
  fp::HwField f(cfg);
  auto s = f.from_double(0.375);
  RngState rng{3, 0};
  for (int k = 0; k < 10000; ++k) {
    double v = unif(f, s, rng);
    REQUIRE(std::fabs(v) <= 0.375);
  }
  CHECK_THROWS_AS(unif_sample(fp::SoftFloat{}, 1, 2, cfg), DomainError);
}

TEST_CASE("normal: second moment, symmetry and determinism") {
  for (int t : {24, 53, 100}) {
    fp::PrecisionConfig cfg(t);
    fp::with_field(cfg, nullptr, [&](auto f) {
      RngState rng{2024, 0};
      const int count = t == 100 ? 20000 : 100000;
      double m2 = 0, mre = 0, mim = 0, m2re = 0;
      for (int k = 0; k < count; ++k) {
        auto z = normal(f, rng);
        double re = f.to_double(z.re), im = f.to_double(z.im);
        m2 += re * re + im * im;
        m2re += re * re;
        mre += re;
        mim += im;
      }
      CHECK(std::fabs(m2 / count - 1) <= 5 / std::sqrt(static_cast<double>(count)));
      CHECK(std::fabs(m2re / count - 0.5) <= 5 / std::sqrt(static_cast<double>(count)));
      CHECK(std::fabs(mre / count) <= 5 * std::sqrt(0.5 / count));
      CHECK(std::fabs(mim / count) <= 5 * std::sqrt(0.5 / count));
      CHECK(rng.counter == static_cast<std::uint64_t>(count) * kNormalWords);
      RngState a{11, 400}, b{11, 400};
      for (int k = 0; k < 50; ++k) CHECK(normal(f, a) == normal(f, b));
      return 0;
    });
  }
}

TEST_CASE("norms: examples and power iteration accuracy") {
  fp::PrecisionConfig cfg(53);
  fp::HwField f(cfg);
  auto n1 = norms(f, identity(f, 3));
  CHECK(n1.spectral == doctest::Approx(1).epsilon(1e-12));
  CHECK(n1.frobenius == std::sqrt(3.0));
  CHECK(n1.max_entry == 1);
  auto n2 = norms(f, diag(f, {3, -4}));
  CHECK(n2.spectral == doctest::Approx(4).epsilon(1e-6));
  CHECK(n2.frobenius == 5);
  CHECK(n2.max_entry == 4);
  RngState rng{42, 0};
  for (int k = 0; k < 20; ++k) {
    auto a = random_matrix(f, 8, 8, rng);
    double oracle = spectral(to_eigen(f, a));
    CHECK(norms(f, a).spectral == doctest::Approx(oracle).epsilon(1e-6));
  }
  // Power iteration on a well separated spectrum.
  auto d = diag(f, {1, -0.5, 0.25});
  CHECK(spectral_norm_power(to_complex_double(f, d), 3, 3) == doctest::Approx(1).epsilon(1e-12));
  fp::SoftField sf(fp::PrecisionConfig(100));
  auto s2 = norms(sf, diag(sf, {3, -4}));
  CHECK(s2.frobenius == 5);
  CHECK(s2.max_entry == 4);
}

TEST_CASE("matrix io: bit-exact round trip and errors") {
  fp::PrecisionConfig cfg(117);
  fp::SoftField f(cfg);
  RngState rng{8, 0};
  SoftMatrix a(4, 3);
  for (auto& z : a.data) z = normal(f, rng);
  std::stringstream ss;
  write_matrix(ss, a);
  SoftMatrix b = read_matrix(ss);
  CHECK(b.rows == 4);
  CHECK(b.cols == 3);
  CHECK(b.data == a.data);

  auto h = mm_adjoint_left(f, a, a, MmOutput::hermitian);
  std::stringstream hs;
  write_matrix(hs, h);
  SoftMatrix h2 = read_matrix(hs);
  CHECK(h2.hermitian);
  CHECK(h2.data == h.data);

  std::stringstream sparse("2 2 0\n1 0 0x1.8p+1 -0x1p-3\n");
  SoftMatrix s = read_matrix(sparse);
  CHECK(fp::to_double(s(1, 0).re) == 3.0);
  CHECK(fp::to_double(s(1, 0).im) == -0.125);
  CHECK(s(0, 0).re.is_zero());

  for (const char* bad : {"", "2 2\n", "2 2 0\n0 5 0x1p0 0x0p0\n", "2 2 0\n0 0 1.0 0x0p0\n",
                          "2 2 0\n0 0 0x1p0 0x0p0\n0 0 0x1p0 0x0p0\n",
                          "2 2 1\n0 1 0x1p0 0x0p0\n"}) {
    std::stringstream in(bad);
    CHECK_THROWS_AS(read_matrix(in), IoError);
  }
  CHECK_THROWS_AS(read_matrix_file("/nonexistent/m.txt"), IoError);

  std::stringstream csv;
  write_matrix_csv(csv, s);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "i,j,re_hex,im_hex,re,im");
}
