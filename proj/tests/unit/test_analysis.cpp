#include <cmath>
#include <sstream>

#include "doctest.h"
#include "specbisect/analysis/certificates.hpp"
#include "specbisect/analysis/generators.hpp"
#include "specbisect/analysis/lower_bound.hpp"
#include "specbisect/analysis/oracle.hpp"
#include "specbisect/analysis/raster.hpp"
#include "specbisect/eigh/eigh.hpp"
#include "support/checks.hpp"

using namespace specbisect;
using namespace specbisect::analysis;

TEST_CASE("oracle_eigh: small exact cases") {
  CVec d{3, 0, 0, 0, -1, 0, 0, 0, 2};
  auto e = oracle_eigh(d, 3);
  CHECK(e.eigenvalues == std::vector<double>{-1, 2, 3});
  CHECK(e.ortho_defect <= 1e-40);

  CVec x{0, 1, 1, 0};
  auto s = oracle_eigh(x, 2);
  CHECK(s.eigenvalues[0] == -1);
  CHECK(s.eigenvalues[1] == 1);
  const double r = 1 / std::sqrt(2.0);
  // Column for +1 is (1, 1)/sqrt2 and for -1 is (1, -1)/sqrt2, up to phase.
  CHECK(std::abs(std::abs(s.eigenvectors[0 * 2 + 1]) - r) <= 2e-16);
  CHECK(std::abs(s.eigenvectors[0 * 2 + 1] - s.eigenvectors[1 * 2 + 1]) <= 1e-16);
  CHECK(std::abs(s.eigenvectors[0 * 2 + 0] + s.eigenvectors[1 * 2 + 0]) <= 1e-16);
}

TEST_CASE("oracle_eigh: random 16x16 self-consistency") {
  RngState rng{2024, 0};
  for (int k = 0; k < 3; ++k) {
    auto a = gue(16, rng);
    auto e = oracle_eigh(a, 16);
    CHECK(e.ortho_defect <= 1e-40);
    CHECK(e.residual <= 1e-40);
    auto fast = fast_eigh(a, 16);
    for (std::size_t i = 0; i < 16; ++i)
      CHECK(std::fabs(e.eigenvalues[i] - fast.eigenvalues[i]) <= 1e-13);
  }
}

TEST_CASE("oracle_sign and pseudospectrum gap") {
  auto s = oracle_sign(CVec{5, 0, 0, -2}, 2);
  CHECK(s == CVec{1, 0, 0, -1});
  CHECK_THROWS_AS(oracle_sign(CVec{1, 0, 0, 0}, 2), DomainError);
  CHECK(oracle_pseudospectrum_gap({1, 3}, 2) == 1);

  // c not in Lambda_w(A), i.e. sigma_min(A - cI) > w, exactly when the gap exceeds w.
  RngState rng{99, 0};
  int compared = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 6;
    auto a = gue(n, rng);
    double c = 2 * next_unit_double(rng) - 1;
    double w = 0.3 * next_unit_double(rng);
    auto e = oracle_eigh(a, n);
    double gap = oracle_pseudospectrum_gap(e.eigenvalues, c);
    if (std::fabs(gap - w) < 1e-10) continue;
    CVec shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted[i * n + i] -= c;
    double smin = singular_values(shifted, n, n).back();
    CHECK((smin > w) == (gap > w));
    ++compared;
  }
  CHECK(compared >= 95);
}

TEST_CASE("necessary_bits and hadamard") {
  CHECK(necessary_bits(0x1p-50, 1024) == 53);
  CHECK(necessary_bits(1e-15, 4000) == 54);
  CHECK_THROWS_AS(hadamard(12), DomainError);
  auto h = hadamard(8);
  auto sv = singular_values(h, 8, 8);
  for (double s : sv) CHECK(s == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("lower_bound_demo at n = 16, u = 2^-10") {
  const std::size_t n = 16;
  const double u = 0x1p-10, eps = 1e-2;
  fp::PrecisionConfig cfg(10);
  fp::HwField f(cfg);
  auto a = from_complex_double(f, n, n, hadamard(n), true);
  auto run = eigh(f, a, eps, 0.5, RngState{12, 0});
  std::vector<double> d;
  for (double x : run.result.d) d.push_back(x);
  auto rep = lower_bound_demo(n, u, to_complex_double(f, run.result.u), d, eps);
  CHECK(rep.mantissa_bits == 10);
  CHECK(rep.fl_identity);
  CHECK(rep.lower_bound == 0x1p-8);
  CHECK(rep.residual_perturbed >= rep.lower_bound);
  CHECK(rep.target == doctest::Approx(0.04));
  CHECK(rep.bits_required == doctest::Approx(std::log2(100.0)));

  // Any decomposition at all, including an exact one.
  auto ex = oracle_eigh(hadamard(n), n);
  auto exact = lower_bound_demo(n, u, ex.eigenvectors, ex.eigenvalues, eps);
  CHECK(exact.residual_a <= 1e-13);
  CHECK(exact.residual_perturbed >= exact.lower_bound);
}

TEST_CASE("convergence raster: examples") {
  for (auto s : {Scheme::newton, Scheme::newton_schulz}) {
    CHECK(iterations_to_converge(s, 1, 0, 1e-15, 200) == 0);
    CHECK(iterations_to_converge(s, -1, 0, 1e-15, 200) == 0);
  }
  CHECK(iterations_to_converge(Scheme::newton, 0, 0, 1e-15, 200) == 201);
  CHECK(iterations_to_converge(Scheme::newton_schulz, 0.1, 0.3, 1e-15, 200) == 201);
  CHECK(iterations_to_converge(Scheme::newton_schulz, 2.3, 0, 1e-15, 200) == 201);
  CHECK(iterations_to_converge(Scheme::newton_schulz, 2.2, 0, 1e-15, 200) <= 200);
  CHECK(iterations_to_converge(Scheme::newton, 0.1, 2, 1e-15, 200) <= 200);
  CHECK(parse_scheme("ns") == Scheme::newton_schulz);
  CHECK_THROWS_AS(parse_scheme("halley"), DomainError);
  CHECK_THROWS_AS(convergence_raster(Scheme::newton, -1, 1, -1, 1, 1, 1e-15, 10), DomainError);
}

TEST_CASE("convergence raster: symmetry and the real interval") {
  for (auto s : {Scheme::newton, Scheme::newton_schulz}) {
    auto r = convergence_raster(s, -2.5, 2.5, -2.5, 2.5, 101, 1e-15, 200);
    const std::size_t g = r.grid;
    for (std::size_t i = 0; i < g; ++i) {
      CHECK(r.x(i) == -r.x(g - 1 - i));
      for (std::size_t j = 0; j < g; ++j) {
        REQUIRE(r.at(i, j) == r.at(g - 1 - i, g - 1 - j));  // -z
        REQUIRE(r.at(i, j) == r.at(g - 1 - i, j));          // conj z
      }
    }
  }
  // Newton-Schulz converges on (-sqrt5, sqrt5) \ {0}.
  const double s5 = std::sqrt(5.0);
  for (int k = 1; k < 2000; ++k) {
    double x = s5 * k / 2000.0;
    REQUIRE(iterations_to_converge(Scheme::newton_schulz, x, 0, 1e-15, 200) <= 200);
    REQUIRE(iterations_to_converge(Scheme::newton_schulz, -x, 0, 1e-15, 200) <= 200);
  }
  CHECK(iterations_to_converge(Scheme::newton_schulz, 1e-9, 0, 1e-15, 200) <= 200);
}

TEST_CASE("convergence raster: writers") {
  auto r = convergence_raster(Scheme::newton, -1, 1, -1, 1, 3, 1e-15, 50);
  std::ostringstream csv, pgm;
  write_raster_csv(csv, r);
  write_raster_pgm(pgm, r);
  CHECK(csv.str().rfind("x,y,iterations\n", 0) == 0);
  CHECK(csv.str().find("\n-1,-1,") != std::string::npos);
  CHECK(pgm.str().size() == std::string("P5\n3 3\n255\n").size() + 9);
  // The centre point is 0: no convergence, drawn black.
  CHECK(r.at(1, 1) == 51);
  CHECK(pgm.str().back() != 0);
  CHECK(pgm.str()[std::string("P5\n3 3\n255\n").size() + 4] == 0);
}
