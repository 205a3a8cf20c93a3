#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace specbisect::analysis {

enum class Scheme { newton, newton_schulz };

Scheme parse_scheme(const std::string& s);  // "newton", "ns" or "newton_schulz"
const char* to_string(Scheme s);

// Grid point k of `grid` points on [lo, hi]: c + h (2k - (grid - 1)) with c the midpoint and
// h = (hi - lo) / (2 (grid - 1)). A grid symmetric about 0 is exactly symmetric.
double grid_point(double lo, double hi, std::size_t grid, std::size_t k);

// Iterations of z <- (z + 1/z)/2 (newton) or z <- (3z - z^3)/2 (newton_schulz) until
// |z^2 - 1| < tol; max_iter + 1 means no convergence (including z = 0 under newton and
// blow-up).
int iterations_to_converge(Scheme s, double re, double im, double tol, int max_iter);

struct Raster {
  Scheme scheme = Scheme::newton;
  std::size_t grid = 0;
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0, tol = 0;
  int max_iter = 0;
  std::vector<int> counts;  // row r (y index, ymin first) times grid + column (x index)

  int at(std::size_t row, std::size_t col) const { return counts[row * grid + col]; }
  double x(std::size_t col) const { return grid_point(xmin, xmax, grid, col); }
  double y(std::size_t row) const { return grid_point(ymin, ymax, grid, row); }
};

Raster convergence_raster(Scheme s, double xmin, double xmax, double ymin, double ymax,
                          std::size_t grid, double tol, int max_iter);

// CSV with header x,y,iterations.
void write_raster_csv(std::ostream& os, const Raster& r);
// Binary PGM; brighter means fewer iterations, black means no convergence. Top row is ymax.
void write_raster_pgm(std::ostream& os, const Raster& r);

}  // namespace specbisect::analysis
