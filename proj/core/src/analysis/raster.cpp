#include "specbisect/analysis/raster.hpp"

#include <cmath>
#include <ostream>

#include "specbisect/errors.hpp"

namespace specbisect::analysis {

Scheme parse_scheme(const std::string& s) {
  if (s == "newton") return Scheme::newton;
  if (s == "ns" || s == "newton_schulz" || s == "newton-schulz") return Scheme::newton_schulz;
  throw DomainError("unknown scheme '" + s + "'");
}

const char* to_string(Scheme s) { return s == Scheme::newton ? "newton" : "newton_schulz"; }

double grid_point(double lo, double hi, std::size_t grid, std::size_t k) {
  const double c = (lo + hi) / 2;
  const double h = (hi - lo) / (2 * static_cast<double>(grid - 1));
  const double m = 2 * static_cast<double>(k) - static_cast<double>(grid - 1);
  return c + h * m;
}

int iterations_to_converge(Scheme s, double x, double y, double tol, int max_iter) {
  // Real arithmetic written so that z -> -z and z -> conj(z) map every intermediate to
  // its exact image.
  auto converged = [&] { return std::hypot(x * x - y * y - 1, 2 * x * y) < tol; };
  for (int k = 0; k <= max_iter; ++k) {
    if (converged()) return k;
    if (k == max_iter) break;
    if (s == Scheme::newton) {
      const double m = x * x + y * y;
      if (m == 0) return max_iter + 1;
      x = (x + x / m) / 2;
      y = (y - y / m) / 2;
    } else {
      const double x2 = x * x - y * y, y2 = 2 * x * y;
      const double x3 = x2 * x - y2 * y, y3 = x2 * y + y2 * x;
      x = (3 * x - x3) / 2;
      y = (3 * y - y3) / 2;
    }
    if (!std::isfinite(x) || !std::isfinite(y) || std::hypot(x, y) > 1e150) break;
  }
  return max_iter + 1;
}

Raster convergence_raster(Scheme s, double xmin, double xmax, double ymin, double ymax,
                          std::size_t grid, double tol, int max_iter) {
  if (grid < 2) throw DomainError("convergence_raster: grid must be at least 2");
  if (!(xmax > xmin && ymax > ymin)) throw DomainError("convergence_raster: empty region");
  if (!(tol > 0) || max_iter < 0) throw DomainError("convergence_raster: bad tolerance or cap");
  Raster r{s, grid, xmin, xmax, ymin, ymax, tol, max_iter, std::vector<int>(grid * grid)};
  for (std::size_t row = 0; row < grid; ++row)
    for (std::size_t col = 0; col < grid; ++col)
      r.counts[row * grid + col] = iterations_to_converge(s, r.x(col), r.y(row), tol, max_iter);
  return r;
}

void write_raster_csv(std::ostream& os, const Raster& r) {
  os << "x,y,iterations\n";
  os.precision(17);
  for (std::size_t row = 0; row < r.grid; ++row)
    for (std::size_t col = 0; col < r.grid; ++col)
      os << r.x(col) << ',' << r.y(row) << ',' << r.at(row, col) << '\n';
}

void write_raster_pgm(std::ostream& os, const Raster& r) {
  os << "P5\n" << r.grid << ' ' << r.grid << "\n255\n";
  for (std::size_t k = 0; k < r.grid; ++k) {
    const std::size_t row = r.grid - 1 - k;
    for (std::size_t col = 0; col < r.grid; ++col) {
      int c = r.at(row, col);
      unsigned char v = c > r.max_iter ? 0 : static_cast<unsigned char>(255 - (200 * c) / std::max(1, r.max_iter));
      os.put(static_cast<char>(v));
    }
  }
}

}  // namespace specbisect::analysis
